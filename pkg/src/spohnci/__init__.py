"""Exact computation on conditional-independence equilibrium curves of
n-player binary games: defining equations, curve invariants, universality
encodings, and 3-player solvers.  See README.md for an overview."""

__version__ = "0.1.0"

from .equations import ci_polynomial, ci_system, nash_polynomial  # noqa: F401
from .euler import invariants_summary, invariants_table  # noqa: F401
from .games import Game, game_from_json, game_to_json, new_game, random_game  # noqa: F401
from .poly import MultiPoly  # noqa: F401
