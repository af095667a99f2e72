"""Numerical and exact computation on the 3-player Nash CI curve.

Everything here is specific to n = 3, where the curve lives in P^1 x P^3 and
every elimination step is a resultant of two small polynomials:

  * totally_mixed_nash3: the bilinear Nash system collapses to a univariate
    of degree at most 2 under two resultants; roots are isolated exactly and
    polished with Newton in floating point;
  * fiber_sample3: over each value of the P^1 coordinate, the linear
    equation cuts a plane in P^3 and the two conics meet it in at most four
    points, found through a degree-4 resultant;
  * eliminant_degree3: a random hyperplane section, eliminated down to one
    variable, witnesses the degree of the curve (8 for generic games);
  * jacobian_spot_check: SVD of the 3x4 affine Jacobian as numerical
    smoothness evidence (corank 1 expected along a curve).

Elimination and resultants are exact over the rationals; floating point is
used only for polishing and reporting.
"""

from __future__ import annotations

import logging
import random
from dataclasses import dataclass, field
from fractions import Fraction
from itertools import combinations

import numpy as np
import sympy as sp

from .equations import DegenerateGame, ci_system, nash_polynomial, spohn_matrix
from .games import Game, all_profiles
from .poly import MultiPoly, var_name

logger = logging.getLogger(__name__)


class EliminationCollapse(RuntimeError):
    """A resultant vanished identically: the solution set has positive dimension."""


class DegenerateFiber(RuntimeError):
    """A fiber contains a curve instead of finitely many points."""


class UnluckyHyperplane(RuntimeError):
    """Repeated random hyperplanes all produced a degree drop."""


@dataclass(frozen=True)
class Tolerance:
    eps: float = 1e-9
    newton_iters: int = 50

    def __post_init__(self):
        if self.eps <= 0:
            raise ValueError("eps must be positive")


@dataclass(frozen=True)
class EquilibriumPoint:
    """A point of the affine chart sigma_2 = tau_22 = 1 with its Segre image.

    p lists the induced 2^3 tensor in the order of all_profiles(3); residuals
    and flags come from classify.
    """

    sigma: tuple
    tau: tuple  # (tau11, tau12, tau21, tau22); tau22 = 1
    p: tuple
    residuals: dict = field(compare=False)
    flags: dict = field(compare=False)


_T = [("t", 1, 1), ("t", 1, 2), ("t", 2, 1), ("t", 2, 2)]
_S1 = ("s", 1, 1)


def _sym(v) -> sp.Symbol:
    return sp.Symbol(var_name(v))


def _to_sympy(poly: MultiPoly):
    total = sp.Integer(0)
    for m, c in poly.terms.items():
        term = sp.Rational(c.numerator, c.denominator)
        for v, e in m:
            term *= _sym(v) ** e
        total += term
    return sp.expand(total)


def _segre_point(sigma1, tau) -> tuple:
    """The 2^3 tensor of the chart point: p_{j1 j2 j3} = sigma_{j1} tau_{j2 j3}."""
    exact = isinstance(sigma1, (Fraction, int))
    s = (sigma1, 1 if exact else 1.0)
    t = {(1, 1): tau[0], (1, 2): tau[1], (2, 1): tau[2], (2, 2): tau[3]}
    return tuple(s[p[0] - 1] * t[p[1], p[2]] for p in all_profiles(3))


def _scaled_norm(poly: MultiPoly, magnitudes: dict) -> float:
    """1-norm of the coefficients weighted by the monomial magnitudes."""
    total = 0.0
    for m, c in poly.terms.items():
        val = abs(float(c))
        for v, e in m:
            val *= abs(complex(magnitudes[v])) ** e
        total += val
    return total


def _eval_num(poly: MultiPoly, assignment: dict):
    """Numeric evaluation accepting float or complex coordinate values."""
    total = 0.0
    for m, c in poly.terms.items():
        val = float(c)
        for v, e in m:
            val *= assignment[v] ** e
        total += val
    return total


def _evaluate(poly: MultiPoly, assignment: dict, exact: bool):
    if exact:
        return poly.evaluate(assignment)
    return _eval_num(poly, assignment)


# ---- classification -------------------------------------------------------


def classify(game: Game, point: EquilibriumPoint, tol: Tolerance = Tolerance()):
    """Residuals and membership flags of a candidate point.

    onSpohn: all Spohn matrix determinants vanish to scaled tolerance;
    onSegre: all 2x2 minors of the (1 | 23) flattening vanish; inSimplex:
    the normalized tensor is strictly positive.  Exact rational coordinates
    are classified exactly (residual 0 means 0).
    """
    if game.n != 3:
        raise ValueError("classification is implemented for 3-player games")
    profiles = all_profiles(3)
    exact = all(isinstance(x, (Fraction, int)) for x in point.p)
    assignment = {("p", prof): val for prof, val in zip(profiles, point.p)}
    magnitudes = dict(assignment)

    max_spohn = 0 if exact else 0.0
    on_spohn = True
    for i in (1, 2, 3):
        det = spohn_matrix(game, i).det()
        value = abs(_evaluate(det, assignment, exact))
        scale = max(_scaled_norm(det, magnitudes), 1.0)
        max_spohn = max(max_spohn, value)
        if float(value) > tol.eps * scale:
            on_spohn = False

    max_minor = 0 if exact else 0.0
    on_segre = True
    cols = [prof[1:] for prof in profiles[:4]]
    for (a, b) in combinations(cols, 2):
        minor = (
            MultiPoly.variable(("p", (1,) + a)) * MultiPoly.variable(("p", (2,) + b))
            - MultiPoly.variable(("p", (1,) + b)) * MultiPoly.variable(("p", (2,) + a))
        )
        value = abs(_evaluate(minor, assignment, exact))
        scale = max(_scaled_norm(minor, magnitudes), 1.0)
        max_minor = max(max_minor, value)
        if float(value) > tol.eps * scale:
            on_segre = False

    if exact:
        total = sum(point.p)
        in_simplex = bool(total) and all(x / total > 0 for x in point.p)
    else:
        vals = [complex(x) for x in point.p]
        total = sum(vals)
        real = abs(total) > 0 and all(
            abs(v.imag) <= tol.eps * max(1.0, abs(v)) for v in vals
        )
        in_simplex = real and all((v / total).real > tol.eps for v in vals)
    residuals = {"maxSpohn": max_spohn, "maxFlattening": max_minor}
    flags = {"onSpohn": on_spohn, "onSegre": on_segre, "inSimplex": in_simplex}
    return residuals, flags


def _make_point(game: Game, sigma1, tau, tol: Tolerance) -> EquilibriumPoint:
    p = _segre_point(sigma1, tau)
    stub = EquilibriumPoint((sigma1,), tuple(tau), p, {}, {})
    residuals, flags = classify(game, stub, tol)
    return EquilibriumPoint((sigma1,), tuple(tau), p, residuals, flags)


# ---- totally mixed Nash equilibria ---------------------------------------


def totally_mixed_nash3(game: Game, tol: Tolerance = Tolerance(),
                        include_complex: bool = False) -> list:
    """All real solutions of the dehomogenized Nash system, at most 2.

    Two resultants collapse the three bilinear equations to a univariate of
    degree <= 2; real roots are isolated exactly and back-substituted, then
    polished with Newton.  Points are flagged, not filtered: check inSimplex
    for totally mixed equilibria.  With include_complex the full solution
    set over the complex numbers is returned (complex points are never
    inSimplex); the count never exceeds 2 either way.
    """
    if game.n != 3:
        raise ValueError("implemented for 3-player games")
    G = [nash_polynomial(game, i).dehomogenize() for i in (1, 2, 3)]
    if not all(G):
        raise DegenerateGame(
            f"Nash polynomial vanishes for players "
            f"{[i for i, g in enumerate(G, 1) if not g]}"
        )
    s1, s2, s3 = (sp.Symbol(f"s{i}_1") for i in (1, 2, 3))
    g1, g2, g3 = (_to_sympy(g) for g in G)  # g1(s2,s3), g2(s1,s3), g3(s1,s2)
    r12 = sp.resultant(g1, g2, s3)
    eliminant = sp.expand(sp.resultant(r12, g3, s2))
    if eliminant == 0:
        raise EliminationCollapse("Nash eliminant vanishes identically")
    poly = sp.Poly(eliminant, s1)
    if poly.degree() == 0:
        return []
    roots = poly.all_roots() if include_complex else sp.real_roots(poly)
    points = []
    for root in roots:
        s1v = complex(root.evalf(30))
        s2v = _solve_linear(g3.subs(s1, sp.sympify(s1v)), s2)
        if s2v is None:
            continue
        s3v = _solve_linear(g1.subs(s2, sp.nsimplify(s2v, rational=False)), s3)
        if s3v is None:
            s3v = _solve_linear(g2.subs(s1, sp.sympify(s1v)), s3)
        if s3v is None:
            continue
        vec = _newton_polish(G, [_S1, ("s", 2, 1), ("s", 3, 1)], [s1v, s2v, s3v], tol)
        s1v, s2v, s3v = (_tidy(z) for z in vec)
        tau = (s2v * s3v, s2v, s3v, 1.0)
        points.append(_make_point(game, s1v, tau, tol))
    points.sort(key=lambda pt: (complex(pt.sigma[0]).real, complex(pt.sigma[0]).imag))
    return _dedupe(points, tol)


def _tidy(z: complex):
    return z.real if abs(z.imag) < 1e-12 * max(1.0, abs(z)) else z


def _solve_linear(expr, var):
    p = sp.Poly(sp.expand(expr), var)
    if p.degree() != 1:
        return None
    a, b = p.all_coeffs()
    if abs(complex(a)) < 1e-300:
        return None
    return complex((-b / a).evalf(30))


def _newton_polish(system, variables, start, tol: Tolerance):
    jac = [[f.derivative(v) for v in variables] for f in system]
    x = np.array(start, dtype=complex)
    for _ in range(tol.newton_iters):
        assign = dict(zip(variables, x))
        fx = np.array([_eval_num(f, assign) for f in system])
        if np.max(np.abs(fx)) < 1e-15:
            break
        J = np.array([[_eval_num(d, assign) for d in row] for row in jac])
        try:
            step = np.linalg.solve(J, fx)
        except np.linalg.LinAlgError:
            break
        x = x - step
        if np.max(np.abs(step)) < 1e-15:
            break
    return list(x)


def _dedupe(points, tol: Tolerance):
    out = []
    for pt in points:
        if any(
            all(
                abs(complex(a) - complex(b)) < 1e-6
                for a, b in zip(pt.sigma + pt.tau, q.sigma + q.tau)
            )
            for q in out
        ):
            continue
        out.append(pt)
    return out


# ---- fiber sampling -------------------------------------------------------


def fiber_sample3(game: Game, t_grid, tol: Tolerance = Tolerance()) -> list:
    """Sample the CI curve over given values of the P^1 coordinate.

    In the chart tau_22 = 1, the linear equation expresses one tau variable
    through the other two; the remaining two conics meet in at most four
    real points per fiber, found via an exact degree-4 resultant.
    Degenerate fibers (a whole curve over one t) are skipped with a warning.
    """
    if game.n != 3:
        raise ValueError("implemented for 3-player games")
    F = ci_system(game)
    zeros = [i for i, f in enumerate(F, 1) if not f]
    if zeros:
        raise DegenerateGame(f"defining polynomial vanishes for players {zeros}")
    f1 = F[0].dehomogenize()  # linear in tau11, tau12, tau21 plus a constant
    tau_vars = _T[:3]
    coeffs = {v: f1.coefficient(((v, 1),)) for v in tau_vars}
    const = f1.coefficient(())
    solved = next((v for v in tau_vars if coeffs[v]), None)
    if solved is None:
        return []  # the linear equation misses the whole chart
    others = [v for v in tau_vars if v != solved]
    expr = MultiPoly.constant(-Fraction(const) / coeffs[solved])
    for v in others:
        expr = expr + MultiPoly.variable(v).scale(-Fraction(coeffs[v]) / coeffs[solved])

    u, w = (_sym(v) for v in others)
    points = []
    for t in t_grid:
        t = Fraction(t)
        sub = {_S1: MultiPoly.constant(t), solved: expr}
        q2 = F[1].dehomogenize().substitute(sub)
        q3 = F[2].dehomogenize().substitute(sub)
        e2, e3 = _to_sympy(q2), _to_sympy(q3)
        res = sp.expand(sp.resultant(e2, e3, w))
        if res == 0:
            logger.warning("degenerate fiber at t=%s: skipped", t)
            continue
        poly = sp.Poly(res, u)
        if poly.degree() == 0:
            continue
        fiber = []
        for root in sp.real_roots(poly):
            uv = float(root.evalf(30))
            for wv in _conic_roots(e2, e3, u, w, uv, tol):
                values = {others[0]: uv, others[1]: wv, ("t", 2, 2): 1.0, _S1: float(t)}
                values[solved] = expr.evaluate_float(values)
                tau = tuple(values[v] for v in _T[:3]) + (1.0,)
                fiber.append(_make_point(game, float(t), tau, tol))
        fiber.sort(key=lambda pt: pt.tau)
        points.extend(_dedupe(fiber, tol))
    return points


def _conic_roots(e2, e3, u, w, uv, tol: Tolerance):
    """Real w-roots of e2 at u = uv that also satisfy e3 to scaled tolerance."""
    p2 = sp.Poly(e2.subs(u, sp.Float(uv, 30)), w)
    coeffs = [float(c) for c in p2.all_coeffs()]
    if all(abs(c) < 1e-300 for c in coeffs):
        return []
    roots = np.roots(coeffs) if len(coeffs) > 1 else []
    out = []
    scale3 = max(sum(abs(float(c)) for c in sp.Poly(e3, u, w).coeffs()), 1.0)
    scale3 *= max(1.0, abs(uv)) ** 2
    for r in roots:
        if abs(r.imag) > 1e-8 * max(1.0, abs(r)):
            continue
        wv = float(r.real)
        resid = abs(complex(e3.subs({u: uv, w: wv})))
        if resid <= max(tol.eps, 1e-7) * scale3 * max(1.0, abs(wv)) ** 2:
            out.append(wv)
    return out


# ---- degree witness -------------------------------------------------------


def eliminant_degree3(game: Game, seed: int = 1, expected: int = 8) -> int:
    """Degree of the eliminant of a random hyperplane section of the curve.

    A random rational hyperplane in the 8 tensor coordinates is pulled back
    through the Segre map; together with the linear equation it cuts a line
    in each P^3 fiber, and substituting the line into the two conics leaves
    two binary quadratics whose resultant is a univariate polynomial in the
    P^1 chart coordinate.  Its degree witnesses the curve degree.  Retries
    with fresh hyperplanes on degree drops; UnluckyHyperplane after 5.
    """
    if game.n != 3:
        raise ValueError("implemented for 3-player games")
    F = ci_system(game)
    zeros = [i for i, f in enumerate(F, 1) if not f]
    if zeros:
        raise DegenerateGame(f"defining polynomial vanishes for players {zeros}")
    rng = random.Random(seed)
    t = sp.Symbol("s1_1")
    tau_syms = [_sym(v) for v in _T]
    f1_row = [_to_sympy(F[0]).coeff(sym) for sym in tau_syms]
    seen = []
    for _ in range(5):
        h = _random_hyperplane(rng)
        h_row = [sp.expand(_to_sympy(h).subs(sp.Symbol("s1_2"), 1)).coeff(sym)
                 for sym in tau_syms]
        basis, pivot_minor = _kernel_basis(f1_row, h_row, t)
        if basis is None:
            seen.append(None)
            continue
        uu, ww = sp.symbols("uu ww")
        line = [uu * a + ww * b for a, b in zip(basis[0], basis[1])]
        subs = {sym: val for sym, val in zip(tau_syms, line)}
        q2 = sp.expand(_to_sympy(F[1]).subs(sp.Symbol("s1_2"), 1).subs(subs))
        q3 = sp.expand(_to_sympy(F[2]).subs(sp.Symbol("s1_2"), 1).subs(subs))
        res = sp.expand(sp.resultant(q2.subs(ww, 1), q3.subs(ww, 1), uu))
        if res == 0:
            seen.append(None)
            continue
        # the line parametrization degenerates where its pivot minor
        # vanishes, contributing an exact extraneous factor minor^4
        eliminant, remainder = sp.div(
            sp.Poly(res, t), sp.Poly(pivot_minor**4, t)
        )
        if remainder != 0:
            seen.append(None)
            continue
        eliminant = eliminant.primitive()[1]
        degree = eliminant.degree()
        if degree == expected:
            return degree
        seen.append(degree)
    raise UnluckyHyperplane(
        f"no hyperplane reached degree {expected} in 5 attempts; saw {seen}"
    )


def _kernel_basis(row1, row2, t):
    """Two polynomial kernel vectors of the 2x4 matrix [row1; row2].

    Built from 2x2 minors: with a nonzero pivot minor m_ab, the vectors
    supported on columns {a, b, c} and {a, b, d} have entries
    (m_bc, -m_ac, m_ab).  Returns (basis, pivot_minor) or (None, None).
    """
    minor = {}
    for a in range(4):
        for b in range(4):
            minor[a, b] = sp.expand(row1[a] * row2[b] - row1[b] * row2[a])
    pivot = next(
        ((a, b) for a in range(4) for b in range(a + 1, 4) if minor[a, b] != 0),
        None,
    )
    if pivot is None:
        return None, None
    a, b = pivot
    rest = [c for c in range(4) if c not in pivot]
    basis = []
    for c in rest:
        vec = [sp.Integer(0)] * 4
        vec[a] = minor[b, c]
        vec[b] = -minor[a, c]
        vec[c] = minor[a, b]
        basis.append(vec)
    return basis, minor[a, b]


def _random_hyperplane(rng: random.Random) -> MultiPoly:
    from .equations import segre_substitute

    while True:
        h = MultiPoly.zero()
        for prof in all_profiles(3):
            h = h + MultiPoly.variable(("p", prof)).scale(rng.randint(-9, 9))
        if h:
            return segre_substitute(h)


# ---- Jacobian spot-check --------------------------------------------------


def jacobian_spot_check(game: Game, points, tol: Tolerance = Tolerance()) -> dict:
    """SVD of the affine 3x4 Jacobian at each point as smoothness evidence.

    Points whose residual exceeds the scaled tolerance are excluded and
    reported; at the rest the singular values are recorded and corank 1 is
    checked: the kernel is one-dimensional (the tangent line) exactly when
    all three singular values stay away from zero.
    """
    if game.n != 3:
        raise ValueError("implemented for 3-player games")
    F = [f.dehomogenize() for f in ci_system(game)]
    variables = [_S1] + _T[:3]
    jac = [[f.derivative(v) for v in variables] for f in F]
    details = []
    corank_ok = 0
    excluded = 0
    for pt in points:
        assign = {
            _S1: float(pt.sigma[0]),
            _T[0]: float(pt.tau[0]),
            _T[1]: float(pt.tau[1]),
            _T[2]: float(pt.tau[2]),
            _T[3]: 1.0,
        }
        resid = 0.0
        for f in F:
            scale = max(_scaled_norm(f, assign), 1.0)
            resid = max(resid, abs(f.evaluate_float(assign)) / scale)
        if resid > max(tol.eps, 1e-7):
            excluded += 1
            details.append({"point": pt.sigma + pt.tau, "residual": resid,
                            "excluded": True})
            continue
        J = np.array(
            [[d.evaluate_float(assign) for d in row] for row in jac], dtype=float
        )
        sv = np.linalg.svd(J, compute_uv=False)
        top = max(sv[0], 1.0)
        is_corank1 = bool(sv[-1] > 1e-6 * top)
        corank_ok += is_corank1
        details.append(
            {
                "point": pt.sigma + pt.tau,
                "residual": resid,
                "singularValues": [float(s) for s in sv],
                "smallestTwo": [float(sv[-1]), float(sv[-2])],
                "corank1": bool(is_corank1),
            }
        )
    return {
        "checked": len(points) - excluded,
        "excluded": excluded,
        "corank1Count": corank_ok,
        "allCorank1": corank_ok == len(points) - excluded,
        "details": details,
    }


def gradient_check(game: Game, assignment: dict, step: float = 1e-7) -> float:
    """Max absolute difference between analytic and central-difference
    gradients of the dehomogenized system at a chart point."""
    F = [f.dehomogenize() for f in ci_system(game)]
    variables = [_S1] + _T[:3]
    worst = 0.0
    for f in F:
        for v in variables:
            analytic = f.derivative(v).evaluate_float(assignment)
            hi = dict(assignment)
            lo = dict(assignment)
            hi[v] = assignment[v] + step
            lo[v] = assignment[v] - step
            fd = (f.evaluate_float(hi) - f.evaluate_float(lo)) / (2 * step)
            worst = max(worst, abs(analytic - fd))
    return worst
