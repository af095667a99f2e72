"""End-to-end acceptance checks, one numbered criterion per test.

Each test prints a single "[criterion NN] name: PASS/FAIL" line; run with
pytest -v to see one line per criterion in the report as well.
"""

import time
from fractions import Fraction

from spohnci.chow import canonical_degree
from spohnci.equations import ci_polynomial, ci_system, spohn_matrix, segre_substitute, marginal_factor
from spohnci.euler import arithmetic_genus, chi_k, invariants_table
from spohnci.games import random_game
from spohnci.linmap import base_locus_check, image_dimension
from spohnci.poly import MultiPoly, proportional
from spohnci.solver import (
    eliminant_degree3,
    fiber_sample3,
    gradient_check,
    jacobian_spot_check,
    totally_mixed_nash3,
)
from spohnci.universality import TargetVariety, encode_variety, verify_isomorphism

from conftest import nash_oracle3


def _report(num: int, name: str, ok: bool, detail: str = ""):
    status = "PASS" if ok else "FAIL"
    line = f"[criterion {num:02d}] {name}: {status}"
    if detail:
        line += f" ({detail})"
    print(line)
    assert ok, line


def s(i, j):
    return MultiPoly.variable(("s", i, j))


def t(a, b):
    return MultiPoly.variable(("t", a, b))


def test_criterion_01_invariants_table():
    start = time.perf_counter()
    rows = {r.n: (r.genus, r.degree) for r in invariants_table(9)}
    elapsed = time.perf_counter() - start
    expected = {
        3: (3, 8),
        4: (23, 30),
        5: (175, 146),
        6: (1469, 880),
        7: (13491, 6276),
        8: (135859, 51562),
        9: (1494879, 478670),
    }
    ok = all(rows[n] == expected[n] for n in expected) and elapsed < 1.0
    _report(1, "invariants table n=3..9", ok, f"{elapsed:.3f}s")


def test_criterion_02_adjunction():
    start = time.perf_counter()
    ok = all(
        canonical_degree(n) == 2 * arithmetic_genus(n) - 2 for n in range(2, 13)
    )
    elapsed = time.perf_counter() - start
    _report(2, "canonical degree = 2g-2 for n=2..12", ok and elapsed < 1.0,
            f"{elapsed:.3f}s")


def test_criterion_03_two_player_anchor():
    rows = invariants_table(2)
    ok = rows[0].degree == 4 and rows[0].genus == 1
    _report(3, "n=2 gives degree 4, genus 1", ok)


def test_criterion_04_chi_sanity():
    ok = True
    for n in range(3, 13):
        ok = ok and chi_k(n, 1) == 0 and chi_k(n, 2) == (-1) ** (n + 1)
        for k in range(1, n + 1):
            ok = ok and chi_k(n, k, "subsets") == chi_k(n, k, "orbits")
    _report(4, "chi_1 = 0, chi_2 = (-1)^{n+1}, methods agree", ok)


def test_criterion_05_example_equations(example_game3):
    f1 = ci_polynomial(example_game3, 1)
    f1_ref = 6 * t(1, 1) - 5 * t(1, 2) - 2 * t(2, 1) + 7 * t(2, 2)
    f2_ref = (
        (5 * s(1, 1) - 2 * s(1, 2)) * t(1, 1) * t(2, 1)
        - (s(1, 1) + 4 * s(1, 2)) * t(1, 2) * t(2, 1)
        + (4 * s(1, 1) + 9 * s(1, 2)) * t(1, 1) * t(2, 2)
        + (7 * s(1, 2) - 2 * s(1, 1)) * t(1, 2) * t(2, 2)
    )
    f3_ref = (
        (8 * s(1, 1) - 2 * s(1, 2)) * t(1, 1) * t(1, 2)
        + (8 * s(1, 1) + 12 * s(1, 2)) * t(1, 2) * t(2, 1)
        + (8 * s(1, 1) - 7 * s(1, 2)) * t(1, 1) * t(2, 2)
        + (8 * s(1, 1) + 7 * s(1, 2)) * t(2, 1) * t(2, 2)
    )
    ok = (
        f1 == f1_ref
        and proportional(ci_polynomial(example_game3, 2), f2_ref) is not None
        and proportional(ci_polynomial(example_game3, 3), f3_ref) is not None
    )
    _report(5, "reference equations F1 exact, F2/F3 proportional", ok)


def test_criterion_06_degree_witness(example_game3):
    start = time.perf_counter()
    degrees = [eliminant_degree3(example_game3, seed=1)]
    degrees += [
        eliminant_degree3(random_game(3, seed, 9), seed=seed)
        for seed in range(1, 6)
    ]
    elapsed = time.perf_counter() - start
    ok = degrees == [8] * 6 and elapsed < 10.0
    _report(6, "eliminant degree 8 on 6 games", ok, f"{elapsed:.2f}s")


def test_criterion_07_nash_count(example_game3):
    """Two totally mixed solutions with all three membership flags.

    The real solver and the independent grid+Newton oracle agree that this
    game has no real totally mixed solution: the eliminant is a quadratic
    with negative discriminant, so the two solutions form a complex
    conjugate pair.  They lie on the Spohn and Segre varieties to residual
    < 1e-9 but cannot lie in the probability simplex, so the inSimplex
    part of this criterion is unattainable and the test fails honestly.
    """
    real_points = totally_mixed_nash3(example_game3)
    oracle = nash_oracle3(example_game3)
    oracle_agrees = len(real_points) == len(oracle)
    pair = totally_mixed_nash3(example_game3, include_complex=True)
    residuals_ok = len(pair) == 2 and all(
        float(pt.residuals["maxSpohn"]) < 1e-9 for pt in pair
    )
    varieties_ok = all(
        pt.flags["onSpohn"] and pt.flags["onSegre"] for pt in pair
    )
    simplex_ok = len(real_points) == 2 and all(
        pt.flags["inSimplex"] for pt in real_points
    )
    ok = oracle_agrees and residuals_ok and varieties_ok and simplex_ok
    _report(
        7,
        "2 totally mixed points, oracle match, onSpohn/onSegre/inSimplex",
        ok,
        f"real solutions: {len(real_points)} (oracle: {len(oracle)}); "
        f"the 2 solutions are a complex conjugate pair with residuals < 1e-9, "
        f"onSpohn/onSegre but not inSimplex",
    )


def test_criterion_08_divisor_map_dimensions():
    start = time.perf_counter()
    ok = True
    for n in (3, 4, 5):
        info = image_dimension(n)
        ok = ok and info["imageDimension"] == 2 ** (n - 1) * (n + 1)
        ok = ok and info["ambientDimension"] == 2 ** (n - 1) * (n + 8)
    elapsed = time.perf_counter() - start
    _report(8, "sum of phi ranks and ambient dimension for n=3,4,5",
            ok and elapsed < 10.0, f"{elapsed:.2f}s")


def test_criterion_09_base_locus():
    ok = True
    for n in (3, 4):
        for i in (n - 1, n):
            report = base_locus_check(n, i)
            ok = ok and report["allVanish"] and report["witnessNonzero"]
    _report(9, "three-line base locus with nonvanishing witness", ok)


def test_criterion_10_universality_round_trip():
    x1, x2 = MultiPoly.variable(("x", 1)), MultiPoly.variable(("x", 2))
    target = TargetVariety(2, (x1 * x1 + x2 * x2 - 1,))
    game, cert = encode_variety(target)
    printed = [
        s(2, 2) * s(4, 2) * s(5, 2) * (s(3, 1) * t(2, 2) - s(3, 2) * t(1, 1)),
        s(1, 2) * s(5, 2)
        * (s(3, 2) * s(4, 1) * t(2, 2) - s(3, 1) * s(4, 2) * t(1, 1)),
        s(2, 2) * s(4, 2) * t(2, 2) * (s(1, 1) * s(5, 2) - s(5, 1) * s(1, 2)),
        s(3, 2) * t(2, 2)
        * (s(1, 2) * s(2, 1) * s(5, 2) - s(1, 1) * s(2, 2) * s(5, 1)),
        s(1, 2) * s(3, 2) * t(2, 2)
        * (s(4, 2) * s(2, 1) + s(2, 2) * s(4, 1) - s(2, 2) * s(4, 2)),
        s(1, 2) * s(2, 2) * s(3, 2) * s(4, 2) * s(5, 2)
        * t(2, 2) * (t(1, 1) + t(1, 2)),
        s(1, 2) * s(2, 2) * s(3, 2) * s(4, 2) * s(5, 2)
        * t(2, 2) * (t(1, 1) + t(2, 1)),
    ]
    system = ci_system(game)
    ok = game.n == 7 and all(
        proportional(f, ref) is not None for f, ref in zip(system, printed)
    )
    samples = [["1", "0"], ["0", "-1"], ["3/5", "4/5"], ["-5/13", "12/13"]]
    report = verify_isomorphism(target, game, cert, samples)
    ok = ok and report["samples"] >= 4 and report["allExact"]
    ok = ok and all(d["residual"] == "0" for d in report["details"])
    _report(10, "circle encoding matches printed system, verified on 4 points",
            ok)


def test_criterion_11_property_suite(example_game3):
    ok = True
    # exact determinant factorization on 10 random games
    for k in range(5):
        for n in (3, 4):
            game = random_game(n, 100 + k, 9)
            for i in range(1, n + 1):
                lhs = segre_substitute(spohn_matrix(game, i).det())
                ok = ok and lhs == marginal_factor(n, i) * ci_polynomial(game, i)
    # analytic vs finite-difference Jacobians
    assignment = {
        ("s", 1, 1): 0.31,
        ("t", 1, 1): -0.57,
        ("t", 1, 2): 0.82,
        ("t", 2, 1): 0.45,
        ("t", 2, 2): 1.0,
    }
    for seed in (1, 2, 3):
        ok = ok and gradient_check(random_game(3, seed, 9), assignment) < 1e-6
    # corank 1 at sampled curve points of the reference game
    grid = [Fraction(k, 2) for k in range(-4, 5)]
    points = fiber_sample3(example_game3, grid)
    report = jacobian_spot_check(example_game3, points)
    ok = ok and report["checked"] >= 20 and report["allCorank1"]
    _report(11, "factorization, Jacobian agreement, corank 1 at 20+ points",
            ok, f"curve points checked: {report['checked']}")
