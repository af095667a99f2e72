"""Exact n-player binary games: payoff tensors, JSON files, random sampling."""

from __future__ import annotations

import itertools
import random
from dataclasses import dataclass, field
from fractions import Fraction

from .poly import format_rational, parse_rational

Profile = tuple  # tuple of n indices, each 1 or 2


class GameFormatError(ValueError):
    """Malformed game data (wrong lengths, bad profiles, float payoffs)."""


def all_profiles(n: int) -> list[Profile]:
    """All 2^n pure strategy profiles, last index fastest."""
    return list(itertools.product((1, 2), repeat=n))


def _check_profile(n: int, profile) -> Profile:
    profile = tuple(profile)
    if len(profile) != n or any(j not in (1, 2) for j in profile):
        raise GameFormatError(f"invalid profile {profile} for n={n}")
    return profile


@dataclass(frozen=True)
class PayoffTensor:
    """One player's 2 x ... x 2 payoff table with exact rational entries."""

    n: int
    values: dict = field(compare=True)

    def __post_init__(self):
        if set(self.values) != set(all_profiles(self.n)):
            raise GameFormatError(f"tensor must have exactly 2^{self.n} entries")

    def __getitem__(self, profile) -> Fraction:
        return self.values[_check_profile(self.n, profile)]

    def is_constant(self) -> bool:
        vals = set(self.values.values())
        return len(vals) <= 1


@dataclass(frozen=True)
class Game:
    """An n-player binary game, n >= 2; immutable and safe to share."""

    n: int
    tensors: tuple

    def __post_init__(self):
        if self.n < 2:
            raise GameFormatError("a game needs at least 2 players")
        if len(self.tensors) != self.n:
            raise GameFormatError("need one payoff tensor per player")
        for t in self.tensors:
            if t.n != self.n:
                raise GameFormatError("tensor dimension mismatch")

    def payoff(self, i: int, profile) -> Fraction:
        """Payoff of player i (1-based) at the given pure profile."""
        if not 1 <= i <= self.n:
            raise IndexError(f"player index {i} out of range")
        return self.tensors[i - 1][profile]


def new_game(n: int, payoff_lists) -> Game:
    """Build a game from n lists of 2^n rationals in canonical order.

    Canonical order is row-major with the last index fastest (the order of
    all_profiles).  Entries may be ints, Fractions or 'p/q' strings; floats
    are rejected.
    """
    if n < 2:
        raise GameFormatError("a game needs at least 2 players")
    payoff_lists = list(payoff_lists)
    if len(payoff_lists) != n:
        raise GameFormatError(f"expected {n} payoff lists, got {len(payoff_lists)}")
    profiles = all_profiles(n)
    tensors = []
    for entries in payoff_lists:
        entries = list(entries)
        if len(entries) != 2**n:
            raise GameFormatError(
                f"payoff list has {len(entries)} entries, expected {2**n}"
            )
        try:
            values = {p: parse_rational(v) for p, v in zip(profiles, entries)}
        except TypeError as exc:
            raise GameFormatError(str(exc)) from exc
        tensors.append(PayoffTensor(n, values))
    return Game(n, tuple(tensors))


def game_from_labeled(n: int, labeled_lists) -> Game:
    """Build a game from explicit profile labels, one dict-like list per player.

    Each entry is a (label, value) pair where the label is a string like "121"
    or an index tuple.  Guards against transcription slips: duplicate or
    missing labels are errors.
    """
    tensors = []
    for entries in labeled_lists:
        values = {}
        for label, v in entries:
            profile = _parse_label(n, label)
            if profile in values:
                raise GameFormatError(f"duplicate profile label {label!r}")
            values[profile] = parse_rational(v)
        if set(values) != set(all_profiles(n)):
            missing = set(all_profiles(n)) - set(values)
            raise GameFormatError(f"missing profiles: {sorted(missing)}")
        tensors.append(PayoffTensor(n, values))
    return Game(n, tuple(tensors))


def _parse_label(n: int, label) -> Profile:
    if isinstance(label, str):
        label = tuple(int(c) for c in label)
    return _check_profile(n, label)


def random_game(n: int, seed: int, bound: int) -> Game:
    """Deterministic-for-seed game with integer payoffs in [-bound, bound].

    Constant tensors are resampled so every player has a nonzero payoff
    spread; the result is a pure function of (n, seed, bound).
    """
    if n < 2:
        raise GameFormatError("a game needs at least 2 players")
    if bound < 1:
        raise ValueError("bound must be >= 1")
    rng = random.Random(seed)
    profiles = all_profiles(n)
    tensors = []
    for _ in range(n):
        while True:
            values = {
                p: Fraction(rng.randint(-bound, bound)) for p in profiles
            }
            tensor = PayoffTensor(n, values)
            if not tensor.is_constant():
                tensors.append(tensor)
                break
    return Game(n, tuple(tensors))


# ---- JSON format ---------------------------------------------------------


def game_to_json(game: Game) -> dict:
    payoffs = []
    for tensor in game.tensors:
        payoffs.append(
            [
                {
                    "profile": "".join(str(j) for j in p),
                    "value": format_rational(tensor[p]),
                }
                for p in all_profiles(game.n)
            ]
        )
    return {"players": game.n, "payoffs": payoffs}


def game_from_json(data: dict) -> Game:
    try:
        n = int(data["players"])
        payoffs = data["payoffs"]
    except (KeyError, TypeError) as exc:
        raise GameFormatError(f"malformed game JSON: {exc}") from exc
    if len(payoffs) != n:
        raise GameFormatError(f"expected {n} payoff tables, got {len(payoffs)}")
    labeled = []
    positional = []
    for table in payoffs:
        if isinstance(table, dict):
            # positional form: {"order": "rowMajorLastFastest", "values": [...]}
            if table.get("order") != "rowMajorLastFastest":
                raise GameFormatError(f"unknown order {table.get('order')!r}")
            positional.append(table["values"])
        else:
            labeled.append([(item["profile"], item["value"]) for item in table])
    if labeled and positional:
        raise GameFormatError("mixing labeled and positional payoff tables")
    if positional:
        return new_game(n, positional)
    return game_from_labeled(n, labeled)
