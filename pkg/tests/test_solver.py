from fractions import Fraction

import pytest

from spohnci.equations import DegenerateGame
from spohnci.games import new_game, random_game
from spohnci.solver import (
    EquilibriumPoint,
    Tolerance,
    classify,
    eliminant_degree3,
    fiber_sample3,
    gradient_check,
    jacobian_spot_check,
    totally_mixed_nash3,
)

from conftest import nash_oracle3


def test_tolerance_validation():
    with pytest.raises(ValueError):
        Tolerance(eps=0.0)


@pytest.mark.parametrize("seed", [1, 2, 3, 5, 8])
def test_nash_count_matches_oracle(seed):
    game = random_game(3, seed, 9)
    points = totally_mixed_nash3(game)
    oracle = nash_oracle3(game)
    assert len(points) == len(oracle), (seed, oracle)
    for pt, ref in zip(points, oracle):
        assert abs(pt.sigma[0] - ref[0]) < 1e-6
        assert float(pt.residuals["maxSpohn"]) < 1e-9
        assert pt.flags["onSpohn"] and pt.flags["onSegre"]


def test_reference_game_real_solutions_empty(example_game3):
    assert totally_mixed_nash3(example_game3) == []
    assert nash_oracle3(example_game3) == []


def test_reference_game_complex_pair(example_game3):
    points = totally_mixed_nash3(example_game3, include_complex=True)
    assert len(points) == 2
    a, b = (complex(pt.sigma[0]) for pt in points)
    assert abs(a - b.conjugate()) < 1e-9  # a conjugate pair
    assert abs(a.imag) > 0.1
    for pt in points:
        assert float(pt.residuals["maxSpohn"]) < 1e-9
        assert pt.flags["onSpohn"] and pt.flags["onSegre"]
        assert not pt.flags["inSimplex"]


def test_degenerate_game_raises():
    zero = new_game(3, [[0] * 8] * 3)
    with pytest.raises(DegenerateGame):
        totally_mixed_nash3(zero)
    with pytest.raises(DegenerateGame):
        fiber_sample3(zero, [Fraction(1)])
    with pytest.raises(DegenerateGame):
        eliminant_degree3(zero)


def test_classify_exact_point():
    # independent uniform tensor: on the Segre variety, inside the simplex
    game = random_game(3, 4, 9)
    p = tuple(Fraction(1, 8) for _ in range(8))
    pt = EquilibriumPoint((Fraction(1),), (Fraction(1),) * 4, p, {}, {})
    residuals, flags = classify(game, pt)
    assert residuals["maxFlattening"] == 0
    assert flags["onSegre"] and flags["inSimplex"]


def test_fiber_sampling_lands_on_curve(example_game3):
    grid = [Fraction(k, 2) for k in range(-4, 5)]
    points = fiber_sample3(example_game3, grid)
    assert len(points) >= 20
    for pt in points:
        assert pt.flags["onSpohn"] and pt.flags["onSegre"]
        assert pt.tau[3] == 1.0


def test_degree_witness(example_game3):
    assert eliminant_degree3(example_game3, seed=1) == 8
    assert eliminant_degree3(example_game3, seed=7) == 8
    for seed in range(1, 4):
        assert eliminant_degree3(random_game(3, seed, 9), seed=seed) == 8


def test_jacobian_corank_one(example_game3):
    grid = [Fraction(k, 2) for k in range(-4, 5)]
    points = fiber_sample3(example_game3, grid)
    report = jacobian_spot_check(example_game3, points)
    assert report["checked"] >= 20
    assert report["allCorank1"]
    assert report["corank1Count"] == report["checked"]


def test_gradient_agreement(example_game3):
    assignment = {
        ("s", 1, 1): 0.37,
        ("t", 1, 1): -0.81,
        ("t", 1, 2): 0.44,
        ("t", 2, 1): 1.23,
        ("t", 2, 2): 1.0,
    }
    assert gradient_check(example_game3, assignment) < 1e-5
