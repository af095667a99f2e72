from fractions import Fraction

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from spohnci.games import (
    GameFormatError,
    all_profiles,
    game_from_json,
    game_from_labeled,
    game_to_json,
    new_game,
    random_game,
)


def test_all_profiles_order():
    assert all_profiles(2) == [(1, 1), (1, 2), (2, 1), (2, 2)]
    assert len(all_profiles(5)) == 32


def test_new_game_and_payoff():
    g = new_game(2, [[1, 2, 3, 4], ["1/2", 0, -1, 7]])
    assert g.payoff(1, (2, 1)) == 3
    assert g.payoff(2, (1, 1)) == Fraction(1, 2)
    with pytest.raises(IndexError):
        g.payoff(3, (1, 1))


def test_new_game_rejects_floats_and_bad_shapes():
    with pytest.raises(GameFormatError):
        new_game(2, [[1, 2, 3, 0.5], [0, 0, 0, 0]])
    with pytest.raises(GameFormatError):
        new_game(2, [[1, 2, 3]])
    with pytest.raises(GameFormatError):
        new_game(1, [[1, 2]])


def test_labeled_guards():
    labels = ["11", "12", "21", "22"]
    table = list(zip(labels, [1, 2, 3, 4]))
    g = game_from_labeled(2, [table, table])
    assert g.payoff(1, (1, 2)) == 2
    with pytest.raises(GameFormatError):
        game_from_labeled(2, [table + [("11", 9)], table])
    with pytest.raises(GameFormatError):
        game_from_labeled(2, [table[:3], table])


@given(st.integers(2, 4), st.integers(0, 50))
@settings(max_examples=30, deadline=None)
def test_random_game_deterministic_and_spread(n, seed):
    g1 = random_game(n, seed, 9)
    g2 = random_game(n, seed, 9)
    assert g1 == g2
    for t in g1.tensors:
        assert not t.is_constant()
        assert all(abs(t[p]) <= 9 for p in all_profiles(n))


@given(st.integers(2, 4), st.integers(0, 20))
@settings(max_examples=25, deadline=None)
def test_json_roundtrip(n, seed):
    g = random_game(n, seed, 5)
    assert game_from_json(game_to_json(g)) == g


def test_positional_json_form():
    data = {
        "players": 2,
        "payoffs": [
            {"order": "rowMajorLastFastest", "values": [1, 2, 3, 4]},
            {"order": "rowMajorLastFastest", "values": ["1/3", 0, 0, 1]},
        ],
    }
    g = game_from_json(data)
    assert g.payoff(2, (1, 1)) == Fraction(1, 3)
    data["payoffs"][0]["order"] = "columnMajor"
    with pytest.raises(GameFormatError):
        game_from_json(data)
