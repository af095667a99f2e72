"""Spohn matrices, Nash polynomials and the one-edge CI defining equations.

For an n-player binary game the conditional-independence model of the
one-edge graphical model (edge between the last two players) is the Segre
variety (P^1)^{n-2} x P^3.  Pulling the 2x2 determinants of the Spohn
matrices back through the Segre parametrization and stripping the common
positive factors leaves n defining polynomials F_1..F_n:

  * for i <= n-2, a payoff-difference form, multilinear in the other sigma
    blocks and linear in tau;
  * for i in {n-1, n}, a 2x2 determinant, linear in every sigma block and
    quadratic in tau.

Determinants expand as entry(1,1)*entry(2,2) - entry(1,2)*entry(2,1), rows
taken top to bottom.  Equations are canonical only up to a nonzero scalar;
use poly.proportional for comparisons against other conventions.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass
from fractions import Fraction

from .games import Game, all_profiles
from .poly import MultiPoly


class DegenerateGame(ValueError):
    """A defining polynomial vanished identically where genericity is needed."""


def _sigma(i: int, j: int) -> MultiPoly:
    return MultiPoly.variable(("s", i, j))


def _tau(a: int, b: int) -> MultiPoly:
    return MultiPoly.variable(("t", a, b))


def _pvar(profile) -> MultiPoly:
    return MultiPoly.variable(("p", tuple(profile)))


@dataclass(frozen=True)
class SpohnMatrix:
    """2x2 matrix of linear forms in p-variables for one player.

    Column 1 holds the marginals p_{+..+k+..+}, column 2 the conditional
    payoff sums; row k corresponds to the pure strategy k of player i.
    """

    i: int
    entries: tuple  # ((m11, m12), (m21, m22)) of MultiPoly

    def det(self) -> MultiPoly:
        (a, b), (c, d) = self.entries
        return a * d - b * c


def spohn_matrix(game: Game, i: int) -> SpohnMatrix:
    if not 1 <= i <= game.n:
        raise IndexError(f"player index {i} out of range")
    rows = []
    for k in (1, 2):
        marginal = MultiPoly.zero()
        payoff_sum = MultiPoly.zero()
        for profile in all_profiles(game.n):
            if profile[i - 1] != k:
                continue
            marginal = marginal + _pvar(profile)
            payoff_sum = payoff_sum + _pvar(profile).scale(game.payoff(i, profile))
        rows.append((marginal, payoff_sum))
    return SpohnMatrix(i, tuple(rows))


def nash_polynomial(game: Game, i: int) -> MultiPoly:
    """Multilinear Nash form G_i on (P^1)^n in sigma-blocks 1..n (block i absent)."""
    if not 1 <= i <= game.n:
        raise IndexError(f"player index {i} out of range")
    n = game.n
    out = MultiPoly.zero()
    for rest in itertools.product((1, 2), repeat=n - 1):
        hi = rest[: i - 1] + (2,) + rest[i - 1 :]
        lo = rest[: i - 1] + (1,) + rest[i - 1 :]
        coeff = game.payoff(i, hi) - game.payoff(i, lo)
        if not coeff:
            continue
        others = [k for k in range(1, n + 1) if k != i]
        mono = MultiPoly.monomial([(("s", k, j), 1) for k, j in zip(others, rest)], coeff)
        out = out + mono
    return out


def _segre_monomial(n: int, profile) -> MultiPoly:
    pairs = [(("s", l, profile[l - 1]), 1) for l in range(1, n - 1)]
    pairs.append((("t", profile[n - 2], profile[n - 1]), 1))
    return MultiPoly.monomial(pairs)


def segre_substitute(p: MultiPoly) -> MultiPoly:
    """Substitute every p-variable by its Segre monomial sigma...tau."""
    mapping = {}
    for v in p.variables():
        if v[0] == "p":
            profile = v[1]
            mapping[v] = _segre_monomial(len(profile), profile)
    return p.substitute(mapping)


def ci_polynomial(game: Game, i: int) -> MultiPoly:
    """Defining polynomial F_i of the Spohn CI variety in sigma/tau variables.

    For n = 2 the CI model is all of P^3, so the determinant of M_i in
    p-variables is returned unchanged.  The zero polynomial is allowed and
    signals a degenerate (non-generic) game.
    """
    n = game.n
    if not 1 <= i <= n:
        raise IndexError(f"player index {i} out of range")
    if n == 2:
        return spohn_matrix(game, i).det()
    if i <= n - 2:
        out = MultiPoly.zero()
        for rest in itertools.product((1, 2), repeat=n - 1):
            hi = rest[: i - 1] + (2,) + rest[i - 1 :]
            lo = rest[: i - 1] + (1,) + rest[i - 1 :]
            coeff = game.payoff(i, hi) - game.payoff(i, lo)
            if not coeff:
                continue
            pairs = []
            pos = 0
            for l in range(1, n - 1):
                if l == i:
                    continue
                pairs.append((("s", l, rest[pos]), 1))
                pos += 1
            pairs.append((("t", rest[n - 3], rest[n - 2]), 1))
            out = out + MultiPoly.monomial(pairs, coeff)
        return out
    # i in {n-1, n}: 2x2 determinant in sigma/tau variables
    if i == n - 1:
        left = (_tau(1, 1) + _tau(1, 2), _tau(2, 1) + _tau(2, 2))
    else:
        left = (_tau(1, 1) + _tau(2, 1), _tau(1, 2) + _tau(2, 2))
    rights = []
    for k in (1, 2):
        acc = MultiPoly.zero()
        for sig in itertools.product((1, 2), repeat=n - 2):
            for j in (1, 2):
                if i == n - 1:
                    profile = sig + (k, j)
                    tau = ("t", k, j)
                else:
                    profile = sig + (j, k)
                    tau = ("t", j, k)
                coeff = game.payoff(i, profile)
                if not coeff:
                    continue
                pairs = [(("s", l + 1, sig[l]), 1) for l in range(n - 2)]
                pairs.append((tau, 1))
                acc = acc + MultiPoly.monomial(pairs, coeff)
        rights.append(acc)
    return left[0] * rights[1] - rights[0] * left[1]


def ci_system(game: Game) -> list[MultiPoly]:
    return [ci_polynomial(game, i) for i in range(1, game.n + 1)]


def degenerate_players(game: Game) -> list[int]:
    """Players whose defining polynomial vanishes identically."""
    return [i for i, f in enumerate(ci_system(game), start=1) if not f]


@dataclass(frozen=True)
class CoefficientForm:
    """Families A, B, C, D of F_{n-1} or F_n indexed by sigma index tuples."""

    i: int
    A: dict
    B: dict
    C: dict
    D: dict

    def check_identity(self) -> bool:
        return all(
            self.D[j] == self.B[j] + self.C[j] - self.A[j] for j in self.A
        )


def coefficient_form(game: Game, i: int) -> CoefficientForm:
    n = game.n
    if n < 3 or i not in (n - 1, n):
        raise ValueError("coefficient forms exist for players n-1 and n with n >= 3")
    A, B, C, D = {}, {}, {}, {}
    for j in itertools.product((1, 2), repeat=n - 2):
        if i == n - 1:
            # last two indices are (j_{n-1}, j_n) with j_{n-1} the own strategy
            A[j] = game.payoff(i, j + (2, 1)) - game.payoff(i, j + (1, 1))
            B[j] = game.payoff(i, j + (2, 1)) - game.payoff(i, j + (1, 2))
            C[j] = game.payoff(i, j + (2, 2)) - game.payoff(i, j + (1, 1))
            D[j] = game.payoff(i, j + (2, 2)) - game.payoff(i, j + (1, 2))
        else:
            A[j] = game.payoff(i, j + (1, 2)) - game.payoff(i, j + (1, 1))
            B[j] = game.payoff(i, j + (1, 2)) - game.payoff(i, j + (2, 1))
            C[j] = game.payoff(i, j + (2, 2)) - game.payoff(i, j + (1, 1))
            D[j] = game.payoff(i, j + (2, 2)) - game.payoff(i, j + (2, 1))
    form = CoefficientForm(i, A, B, C, D)
    assert form.check_identity()
    return form


def marginal_factor(n: int, i: int) -> MultiPoly:
    """The positive factor split off det M_i under the Segre substitution."""
    out = MultiPoly.constant(1)
    if i <= n - 2:
        for l in range(1, n - 1):
            if l != i:
                out = out * (_sigma(l, 1) + _sigma(l, 2))
        tau_sum = MultiPoly.zero()
        for a in (1, 2):
            for b in (1, 2):
                tau_sum = tau_sum + _tau(a, b)
        out = out * (_sigma(i, 1) * _sigma(i, 2)) * tau_sum
    else:
        for l in range(1, n - 1):
            out = out * (_sigma(l, 1) + _sigma(l, 2))
    return out
