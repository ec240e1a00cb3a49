"""Parity game solvers built around attractor-decomposition lifting."""

from .game import (EVEN, ODD, ParityGame, ParityGameError, PositionalStrategy,
                   WinningPartition, opponent, parse_pgsolver,
                   serialize_pgsolver, random_game, enumerate_tiny_games,
                   subgame, verify_strategy_wins)

__all__ = [
    "EVEN", "ODD", "ParityGame", "ParityGameError", "PositionalStrategy",
    "WinningPartition", "opponent", "parse_pgsolver", "serialize_pgsolver",
    "random_game", "enumerate_tiny_games", "subgame", "verify_strategy_wins",
]

__version__ = "0.1.0"
