import json
from fractions import Fraction

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from spohnci.equations import ci_polynomial, nash_polynomial
from spohnci.games import random_game
from spohnci.poly import MultiPoly, proportional
from spohnci.universality import (
    EncodingCertificate,
    TargetVariety,
    TransportFailure,
    certificate_from_json,
    certificate_to_json,
    decode_open_subset,
    encode_product_r1,
    encode_variety,
    target_from_json,
    target_to_json,
    verify_isomorphism,
)


def x(i):
    return MultiPoly.variable(("x", i))


def circle_target() -> TargetVariety:
    return TargetVariety(2, (x(1) * x(1) + x(2) * x(2) - 1,))


def test_target_validation():
    with pytest.raises(ValueError):
        TargetVariety(1, (x(1),))  # m must be < n
    with pytest.raises(ValueError):
        TargetVariety(2, (MultiPoly.zero(),))
    with pytest.raises(ValueError):
        TargetVariety(2, (MultiPoly.variable(("t", 1, 1)),))


def test_target_json_roundtrip():
    target = circle_target()
    again = target_from_json(target_to_json(target))
    assert again.n == 2 and again.polys == target.polys


@given(st.integers(0, 50), st.integers(2, 3))
@settings(max_examples=10, deadline=None)
def test_product_r1_equations(seed, n):
    """Each output equation is the input's Nash form times tau_22 exactly."""
    game = random_game(n, seed, 7)
    out, cert = encode_product_r1(game)
    assert out.n == n + 2
    assert cert.kind == "productR1"
    assert all(c == 1 for c in cert.scalars)
    t22 = MultiPoly.variable(("t", 2, 2))
    for i in range(1, n + 1):
        assert ci_polynomial(out, i) == nash_polynomial(game, i) * t22


def test_circle_encoding_layout():
    game, cert = encode_variety(circle_target())
    assert game.n == 7
    assert cert.kind == "variety"
    assert cert.players == 7
    assert all(c == 1 for c in cert.scalars)
    assert cert.dictionary["x1"] == "s5_1"
    assert cert.dictionary["x2"] == "t11"
    assert cert.slots[-2:] == (("tauForm", 1), ("tauForm", 2))


def test_circle_verify_exact_points():
    target = circle_target()
    game, cert = encode_variety(target)
    samples = [
        ["1", "0"],
        ["0", "1"],
        ["3/5", "4/5"],
        ["-5/13", "12/13"],
        ["-20/29", "-21/29"],
    ]
    report = verify_isomorphism(target, game, cert, samples)
    assert report["samples"] == 5
    assert report["allExact"]
    assert all(d["residual"] == "0" for d in report["details"])


def test_verify_rejects_points_off_the_variety():
    target = circle_target()
    game, cert = encode_variety(target)
    with pytest.raises(ValueError, match="not on the variety"):
        verify_isomorphism(target, game, cert, [["1", "1"]])


def test_verify_detects_tampered_certificate():
    target = TargetVariety(
        3, (x(2) - x(1) * x(1), x(3) - x(1) * x(1) * x(1))
    )
    game, cert = encode_variety(target)
    tampered = EncodingCertificate(
        kind=cert.kind,
        players=cert.players,
        permutation=tuple(reversed(cert.permutation)),
        substitution=cert.substitution,
        blocks=cert.blocks,
        slots=cert.slots,
        dictionary=cert.dictionary,
        scalars=cert.scalars,
    )
    with pytest.raises(TransportFailure):
        verify_isomorphism(target, game, tampered, [["2", "4", "8"]])


def test_line_in_the_plane():
    target = TargetVariety(2, (x(1),))
    game, cert = encode_variety(target)
    eqs = [f for f in decode_open_subset(game) if f]
    samples = [["0", "5"], ["0", "-2/3"], ["0", "0"], ["0", "7/4"]]
    report = verify_isomorphism(target, game, cert, samples)
    assert report["allExact"]
    assert eqs  # the line is cut out by at least one nonzero equation


def test_twisted_cubic():
    target = TargetVariety(
        3, (x(2) - x(1) * x(1), x(3) - x(1) * x(1) * x(1))
    )
    game, cert = encode_variety(target)
    samples = [
        [str(t), str(t * t), str(t**3)]
        for t in (Fraction(0), Fraction(1), Fraction(-2), Fraction(1, 2))
    ]
    report = verify_isomorphism(target, game, cert, samples)
    assert report["samples"] == 4 and report["allExact"]


def test_certificate_json_roundtrip():
    _, cert = encode_variety(circle_target())
    data = json.loads(json.dumps(certificate_to_json(cert)))
    assert certificate_from_json(data) == cert
