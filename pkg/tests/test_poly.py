from fractions import Fraction

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from spohnci.poly import (
    MultiPoly,
    NotMultiHomogeneous,
    parse_rational,
    parse_var,
    poly_from_json,
    poly_to_json,
    proportional,
    var_name,
)

VARS = [("s", 1, 1), ("s", 1, 2), ("t", 1, 1), ("t", 2, 2), ("x", 1)]


@st.composite
def polys(draw):
    n_terms = draw(st.integers(0, 5))
    p = MultiPoly.zero()
    for _ in range(n_terms):
        coeff = Fraction(draw(st.integers(-9, 9)), draw(st.integers(1, 5)))
        pairs = [
            (v, draw(st.integers(0, 2))) for v in draw(st.permutations(VARS))[:3]
        ]
        p = p + MultiPoly.monomial(pairs, coeff)
    return p


@given(polys(), polys(), polys())
@settings(max_examples=60, deadline=None)
def test_ring_axioms(p, q, r):
    assert p + q == q + p
    assert p * q == q * p
    assert (p + q) + r == p + (q + r)
    assert (p * q) * r == p * (q * r)
    assert p * (q + r) == p * q + p * r
    assert p + MultiPoly.zero() == p
    assert p * MultiPoly.constant(1) == p
    assert p - p == MultiPoly.zero()


@given(polys(), polys())
@settings(max_examples=40, deadline=None)
def test_evaluate_is_homomorphism(p, q):
    point = {v: Fraction(k - 2, 3) for k, v in enumerate(VARS)}
    assert (p + q).evaluate(point) == p.evaluate(point) + q.evaluate(point)
    assert (p * q).evaluate(point) == p.evaluate(point) * q.evaluate(point)


@given(polys(), polys())
@settings(max_examples=40, deadline=None)
def test_derivative_leibniz(p, q):
    v = ("t", 1, 1)
    lhs = (p * q).derivative(v)
    rhs = p.derivative(v) * q + p * q.derivative(v)
    assert lhs == rhs


@given(polys())
@settings(max_examples=40, deadline=None)
def test_json_roundtrip(p):
    assert poly_from_json(poly_to_json(p)) == p


@given(polys(), st.integers(-5, 5).filter(bool))
@settings(max_examples=40, deadline=None)
def test_proportional_detects_scalars(p, c):
    assert proportional(p.scale(c), p) == (Fraction(c) if p else Fraction(1))


def test_proportional_rejects_non_multiples():
    t11 = MultiPoly.variable(("t", 1, 1))
    t12 = MultiPoly.variable(("t", 1, 2))
    assert proportional(t11, t12) is None
    assert proportional(t11 + t12, t11) is None
    assert proportional(t11, MultiPoly.zero()) is None
    assert proportional(MultiPoly.zero(), MultiPoly.zero()) == 1


def test_substitute_then_evaluate():
    s = MultiPoly.variable(("s", 1, 1))
    t = MultiPoly.variable(("t", 1, 1))
    p = s * s + 2 * t
    q = p.substitute({("s", 1, 1): t + 1})
    point = {("t", 1, 1): Fraction(3)}
    assert q.evaluate(point) == (3 + 1) ** 2 + 2 * 3


def test_dehomogenize_sets_chart_coordinates():
    p = MultiPoly.variable(("s", 1, 2)) * MultiPoly.variable(("t", 2, 2))
    assert p.dehomogenize() == MultiPoly.constant(1)


def test_block_degree():
    p = MultiPoly.monomial([(("s", 1, 1), 1), (("t", 1, 1), 2)])
    assert p.block_degree(3) == (1, 2)
    with pytest.raises(NotMultiHomogeneous):
        (p + MultiPoly.variable(("t", 1, 1))).block_degree(3)


def test_parse_rational_boundary():
    assert parse_rational("3/7") == Fraction(3, 7)
    assert parse_rational(-4) == Fraction(-4)
    with pytest.raises(TypeError):
        parse_rational(0.5)
    with pytest.raises(TypeError):
        parse_rational(True)


@pytest.mark.parametrize(
    "name", ["s1_1", "s12_2", "t21", "p112", "x3", "u2"]
)
def test_var_name_roundtrip(name):
    assert var_name(parse_var(name)) == name
