"""Parity game data model, PGSolver I/O, generators, and strategy checking.

A parity game is a finite directed graph without sinks, a partition of the
vertices between the players Even and Odd, and a priority in {1..d} (d even)
on every vertex.  Successor lists keep their construction order, which is
also the deterministic tie-break order everywhere in this package.
"""

from __future__ import annotations

import itertools
import random
from dataclasses import dataclass, field

import numpy as np

EVEN = 0
ODD = 1

PLAYER_NAMES = {EVEN: "Even", ODD: "Odd"}


class ParityGameError(ValueError):
    """Malformed game or game description."""


class PGSolverSyntaxError(ParityGameError):
    """Syntax error in a PGSolver-format file, with the offending line."""

    def __init__(self, message: str, line: int):
        super().__init__(f"line {line}: {message}")
        self.line = line


def opponent(player: int) -> int:
    return 1 - player


@dataclass
class ParityGame:
    """Immutable parity game over vertices 0..n-1.

    ``priority`` holds the normalized priorities in {1..d}; if the source
    file used different values (e.g. priority 0), the originals are kept in
    ``original_priority`` for round-tripping.
    """

    owner: np.ndarray          # uint8, EVEN or ODD per vertex
    priority: np.ndarray       # int32, in {1..d}
    succ_indptr: np.ndarray    # int32, length n+1
    succ_indices: np.ndarray   # int32, concatenated successor lists
    d: int
    names: list | None = None
    original_priority: np.ndarray | None = None
    _pred: tuple | None = field(default=None, repr=False, compare=False)

    @classmethod
    def from_lists(cls, owners, priorities, successors, names=None,
                   original_priorities=None, d=None):
        n = len(owners)
        if len(priorities) != n or len(successors) != n:
            raise ParityGameError("owners/priorities/successors length mismatch")
        indptr = np.zeros(n + 1, np.int32)
        flat = []
        for v, succs in enumerate(successors):
            if len(succs) == 0:
                raise ParityGameError(f"vertex {v} is a sink")
            for u in succs:
                if not (0 <= u < n):
                    raise ParityGameError(
                        f"vertex {v} has out-of-range successor {u}")
                flat.append(u)
            indptr[v + 1] = len(flat)
        priority = np.asarray(priorities, np.int32)
        if n and priority.min() < 1:
            raise ParityGameError("priorities must be >= 1 after normalization")
        if d is None:
            d = _round_up_even(int(priority.max()) if n else 0)
        if d % 2 != 0:
            raise ParityGameError("d must be even")
        if n and int(priority.max()) > d:
            raise ParityGameError("priority exceeds d")
        orig = None
        if original_priorities is not None:
            orig = np.asarray(original_priorities, np.int32)
        return cls(owner=np.asarray(owners, np.uint8),
                   priority=priority,
                   succ_indptr=indptr,
                   succ_indices=np.asarray(flat, np.int32),
                   d=int(d), names=list(names) if names else None,
                   original_priority=orig)

    @property
    def n(self) -> int:
        return len(self.owner)

    @property
    def m(self) -> int:
        return len(self.succ_indices)

    def successors(self, v: int):
        return self.succ_indices[self.succ_indptr[v]:self.succ_indptr[v + 1]]

    def edges(self):
        for v in range(self.n):
            for u in self.successors(v):
                yield (v, int(u))

    @property
    def pred(self):
        """CSR predecessor lists (pred_indptr, pred_indices), cached."""
        if self._pred is None:
            n = self.n
            counts = np.zeros(n + 1, np.int32)
            for u in self.succ_indices:
                counts[u + 1] += 1
            indptr = np.cumsum(counts, dtype=np.int32)
            indices = np.empty(self.m, np.int32)
            fill = indptr[:-1].copy()
            for v in range(n):
                for u in self.successors(v):
                    indices[fill[u]] = v
                    fill[u] += 1
            object.__setattr__(self, "_pred", (indptr, indices))
        return self._pred

    def validate(self):
        """Re-check all structural invariants, raising on violation."""
        n = self.n
        if n == 0:
            return
        for v in range(n):
            if self.succ_indptr[v + 1] - self.succ_indptr[v] < 1:
                raise ParityGameError(f"vertex {v} is a sink")
        if self.succ_indices.size and (self.succ_indices.min() < 0
                                       or self.succ_indices.max() >= n):
            raise ParityGameError("successor index out of range")
        if self.priority.min() < 1 or self.priority.max() > self.d:
            raise ParityGameError("priority out of {1..d}")
        if self.d % 2 != 0:
            raise ParityGameError("d must be even")

    def same_model(self, other: "ParityGame") -> bool:
        """Structural equality on the internal model (names included)."""
        return (self.n == other.n and self.d == other.d
                and np.array_equal(self.owner, other.owner)
                and np.array_equal(self.priority, other.priority)
                and np.array_equal(self.succ_indptr, other.succ_indptr)
                and np.array_equal(self.succ_indices, other.succ_indices)
                and (self.names or None) == (other.names or None))

    def canonical_key(self):
        return (self.n, tuple(self.owner.tolist()),
                tuple(self.priority.tolist()),
                tuple(self.succ_indptr.tolist()),
                tuple(self.succ_indices.tolist()))


def _round_up_even(p: int) -> int:
    if p <= 0:
        return 0
    return p if p % 2 == 0 else p + 1


@dataclass
class PositionalStrategy:
    """A positional strategy: at least one edge per own vertex, every edge
    of the opponent's vertices included."""

    player: int
    edges: set  # of (u, v) pairs

    def validate(self, game: ParityGame):
        for v in range(game.n):
            succs = set(int(u) for u in game.successors(v))
            chosen = {u for (w, u) in self.edges if w == v}
            if not chosen <= succs:
                raise ParityGameError(
                    f"strategy uses nonexistent edge from {v}")
            if game.owner[v] == self.player:
                if not chosen:
                    raise ParityGameError(
                        f"strategy gives no move at own vertex {v}")
            else:
                if chosen != succs:
                    raise ParityGameError(
                        f"strategy drops opponent edge at vertex {v}")


@dataclass
class WinningPartition:
    even_wins: frozenset
    odd_wins: frozenset
    even_strategy: PositionalStrategy | None = None
    odd_strategy: PositionalStrategy | None = None

    def validate(self, game: ParityGame):
        if self.even_wins | self.odd_wins != frozenset(range(game.n)) \
                or self.even_wins & self.odd_wins:
            raise ParityGameError("winning sets do not partition V")

    def key(self):
        return (tuple(sorted(self.even_wins)), tuple(sorted(self.odd_wins)))


# ---------------------------------------------------------------------------
# PGSolver format

def parse_pgsolver(text: str | bytes) -> ParityGame:
    """Parse a PGSolver-format game description.

    Grammar: optional header ``parity <maxid>;`` followed by records
    ``<id> <priority> <owner> <succ>,<succ>,... ["name"];`` with owner 0
    for Even and 1 for Odd.  Priorities below 1 are shifted up by 2 (a
    parity- and winner-preserving move) until the minimum is at least 1;
    originals are retained for round-tripping.
    """
    if isinstance(text, bytes):
        text = text.decode("utf-8")
    records = {}
    order = []
    lineno = 0
    for raw in text.splitlines():
        lineno += 1
        line = raw.strip()
        if not line or line.startswith("%"):
            continue
        if line.startswith("parity"):
            if not line.endswith(";"):
                raise PGSolverSyntaxError("header missing ';'", lineno)
            continue
        if not line.endswith(";"):
            raise PGSolverSyntaxError("record missing ';'", lineno)
        body = line[:-1].strip()
        name = None
        if '"' in body:
            try:
                body, rest = body.split('"', 1)
                name = rest.rsplit('"', 1)[0]
            except ValueError:
                raise PGSolverSyntaxError("unterminated name", lineno)
        parts = body.split()
        if len(parts) != 4:
            raise PGSolverSyntaxError(
                f"expected '<id> <priority> <owner> <succs>', got {body!r}",
                lineno)
        try:
            vid = int(parts[0])
            prio = int(parts[1])
            owner = int(parts[2])
        except ValueError:
            raise PGSolverSyntaxError("non-integer field", lineno)
        if owner not in (0, 1):
            raise PGSolverSyntaxError(f"owner must be 0 or 1, got {owner}",
                                      lineno)
        succ_field = parts[3].strip()
        if not succ_field:
            raise PGSolverSyntaxError(f"vertex {vid} is a sink", lineno)
        try:
            succs = [int(s) for s in succ_field.split(",") if s != ""]
        except ValueError:
            raise PGSolverSyntaxError("bad successor list", lineno)
        if not succs:
            raise PGSolverSyntaxError(f"vertex {vid} is a sink", lineno)
        if vid in records:
            raise PGSolverSyntaxError(f"duplicate vertex id {vid}", lineno)
        records[vid] = (prio, owner, succs, name, lineno)
        order.append(vid)

    if not records:
        return ParityGame.from_lists([], [], [], d=0)

    ids = sorted(records)
    index = {vid: i for i, vid in enumerate(ids)}
    owners, prios, succs_all, names = [], [], [], []
    any_name = False
    for vid in ids:
        prio, owner, succs, name, lno = records[vid]
        for s in succs:
            if s not in index:
                raise PGSolverSyntaxError(
                    f"dangling successor id {s}", lno)
        owners.append(owner)
        prios.append(prio)
        succs_all.append([index[s] for s in succs])
        names.append(name if name is not None else "")
        any_name = any_name or name is not None

    original = list(prios)
    shift = 0
    while min(prios) < 1:
        prios = [p + 2 for p in prios]
        shift += 2
    game = ParityGame.from_lists(
        owners, prios, succs_all,
        names=names if any_name else None,
        original_priorities=original if shift else None)
    return game


def normalization_notes(game: ParityGame) -> list:
    """Human-readable notes about priority normalization done at parse time."""
    if game.original_priority is None:
        return []
    shift = int(game.priority[0]) - int(game.original_priority[0]) \
        if game.n else 0
    return [f"priorities shifted by +{shift} to make them positive; "
            f"d = {game.d}"]


def serialize_pgsolver(game: ParityGame, round_trip: bool = True) -> str:
    """Emit PGSolver text.  With ``round_trip`` the recorded original
    priorities are used, so parse . serialize is the identity on files this
    package wrote."""
    lines = [f"parity {max(game.n - 1, 0)};"]
    prios = game.priority
    if round_trip and game.original_priority is not None:
        prios = game.original_priority
    for v in range(game.n):
        succs = ",".join(str(int(u)) for u in game.successors(v))
        name = ""
        if game.names and game.names[v]:
            name = f' "{game.names[v]}"'
        lines.append(f"{v} {int(prios[v])} {int(game.owner[v])} {succs}{name};")
    return "\n".join(lines) + "\n"


# ---------------------------------------------------------------------------
# Generators

def random_game(n: int, max_out_degree: int, max_priority: int,
                seed: int) -> ParityGame:
    """Seed-deterministic random game with 1..max_out_degree distinct
    successors per vertex and uniform owners/priorities."""
    if n < 1 or max_out_degree < 1 or max_priority < 1:
        raise ParityGameError("n, max_out_degree, max_priority must be >= 1")
    rng = random.Random(seed)
    owners, prios, succs = [], [], []
    for _ in range(n):
        owners.append(rng.randrange(2))
        prios.append(rng.randint(1, max_priority))
        k = rng.randint(1, min(max_out_degree, n))
        succs.append(rng.sample(range(n), k))
    return ParityGame.from_lists(owners, prios, succs)


def enumerate_tiny_games(n: int, max_out_degree: int, max_priority: int,
                         cap: int = 10_000_000):
    """Yield every game with exactly n vertices, nonempty successor sets of
    size <= max_out_degree (canonically sorted), and all owner/priority
    assignments.  Raises if the search space exceeds ``cap``."""
    succ_sets = []
    for k in range(1, min(max_out_degree, n) + 1):
        succ_sets.extend(itertools.combinations(range(n), k))
    per_vertex = 2 * max_priority * len(succ_sets)
    total = per_vertex ** n
    if total > cap:
        raise ParityGameError(
            f"enumeration space {total} exceeds cap {cap}")
    vertex_choices = list(itertools.product(
        range(2), range(1, max_priority + 1), succ_sets))
    for combo in itertools.product(vertex_choices, repeat=n):
        owners = [c[0] for c in combo]
        prios = [c[1] for c in combo]
        succs = [list(c[2]) for c in combo]
        yield ParityGame.from_lists(owners, prios, succs)


# ---------------------------------------------------------------------------
# Subgames

def subgame(game: ParityGame, keep) -> tuple:
    """Induced subgame on ``keep`` (an iterable of vertex ids).

    Returns ``(sub, to_parent)`` where ``to_parent[i]`` is the parent id of
    the i-th subgame vertex.  Creating a sink (a kept vertex losing all its
    successors) raises: callers are expected to pass attractor-closed
    complements.
    """
    keep_sorted = sorted(set(int(v) for v in keep))
    index = {v: i for i, v in enumerate(keep_sorted)}
    owners, prios, succs = [], [], []
    for v in keep_sorted:
        row = [index[int(u)] for u in game.successors(v) if int(u) in index]
        if not row:
            raise ParityGameError(
                f"subgame would make vertex {v} a sink")
        owners.append(int(game.owner[v]))
        prios.append(int(game.priority[v]))
        succs.append(row)
    names = None
    if game.names:
        names = [game.names[v] for v in keep_sorted]
    sub = ParityGame.from_lists(owners, prios, succs, names=names, d=game.d)
    return sub, np.asarray(keep_sorted, np.int32)


# ---------------------------------------------------------------------------
# Strategy verification

@dataclass
class Verdict:
    ok: bool
    reason: str = ""

    def __bool__(self):
        return self.ok


def _strategy_adjacency(game: ParityGame, strategy: PositionalStrategy):
    adj = [[] for _ in range(game.n)]
    for (u, v) in strategy.edges:
        adj[u].append(v)
    for row in adj:
        row.sort()
    return adj


def _reachable(adj, sources):
    seen = set(sources)
    stack = list(sources)
    while stack:
        v = stack.pop()
        for u in adj[v]:
            if u not in seen:
                seen.add(u)
                stack.append(u)
    return seen


def _sccs(vertices, adj):
    """Iterative Tarjan over the given vertex subset."""
    vset = set(vertices)
    index = {}
    low = {}
    onstack = set()
    stack = []
    sccs = []
    counter = [0]
    for root in vertices:
        if root in index:
            continue
        work = [(root, iter([u for u in adj[root] if u in vset]))]
        index[root] = low[root] = counter[0]
        counter[0] += 1
        stack.append(root)
        onstack.add(root)
        while work:
            v, it = work[-1]
            advanced = False
            for u in it:
                if u not in index:
                    index[u] = low[u] = counter[0]
                    counter[0] += 1
                    stack.append(u)
                    onstack.add(u)
                    work.append((u, iter([w for w in adj[u] if w in vset])))
                    advanced = True
                    break
                elif u in onstack:
                    low[v] = min(low[v], index[u])
            if advanced:
                continue
            work.pop()
            if work:
                pv = work[-1][0]
                low[pv] = min(low[pv], low[v])
            if low[v] == index[v]:
                comp = []
                while True:
                    w = stack.pop()
                    onstack.discard(w)
                    comp.append(w)
                    if w == v:
                        break
                sccs.append(comp)
    return sccs


def verify_strategy_wins(game: ParityGame, strategy: PositionalStrategy,
                         claimed) -> Verdict:
    """PASS iff every cycle reachable from ``claimed`` in the strategy
    subgraph has a maximal priority of the strategy player's parity.

    Checked per opposing-parity priority p: look for a cycle inside the
    reachable vertices of priority <= p that passes through a priority-p
    vertex.
    """
    strategy.validate(game)
    claimed = set(int(v) for v in claimed)
    adj = _strategy_adjacency(game, strategy)
    reach = _reachable(adj, claimed)
    bad_parity = opponent(strategy.player)  # priorities p with p % 2 == 1-player...
    for p in range(1, game.d + 1):
        if p % 2 != (0 if bad_parity == EVEN else 1):
            continue
        sub = [v for v in reach if game.priority[v] <= p]
        for comp in _sccs(sub, adj):
            has_p = any(game.priority[v] == p for v in comp)
            if not has_p:
                continue
            cyclic = len(comp) > 1 or comp[0] in adj[comp[0]]
            if cyclic:
                return Verdict(False,
                               f"cycle with maximal odd-for-player priority "
                               f"{p} through {sorted(comp)}")
    return Verdict(True)
