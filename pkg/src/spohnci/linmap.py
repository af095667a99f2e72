"""Linear maps from payoff tensors to equation coefficients, exact ranks,
preimages and the symbolic base-locus verification.

phi_i sends a payoff table X^(i) (a vector in Q^{2^n}) to the coefficient
vector of F_i in the monomial basis of the space of multidegree-matching
forms.  Ranks are computed fraction-free (Bareiss), so there is no numerical
rank ambiguity.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass
from fractions import Fraction
from math import lcm

from .equations import ci_polynomial
from .games import Game, PayoffTensor, all_profiles
from .poly import Monomial, MultiPoly, var_name


class NotInImage(ValueError):
    """A target polynomial violates the linear relations cutting the image."""


def basis_monomials(n: int, i: int) -> list[Monomial]:
    """Monomial basis of V_i, the forms of the multidegree of F_i."""
    if n < 3 or not 1 <= i <= n:
        raise ValueError(f"invalid (n, i) = ({n}, {i})")
    out = []
    if i <= n - 2:
        sigma_blocks = [l for l in range(1, n - 1) if l != i]
        for choice in itertools.product((1, 2), repeat=len(sigma_blocks)):
            for a in (1, 2):
                for b in (1, 2):
                    pairs = [(("s", l, j), 1) for l, j in zip(sigma_blocks, choice)]
                    pairs.append((("t", a, b), 1))
                    out.append(next(iter(MultiPoly.monomial(pairs).terms)))
    else:
        tau_vars = [("t", a, b) for a in (1, 2) for b in (1, 2)]
        tau_monos = []
        for k, v in enumerate(tau_vars):
            for w in tau_vars[k:]:
                tau_monos.append([(v, 2)] if v == w else [(v, 1), (w, 1)])
        for choice in itertools.product((1, 2), repeat=n - 2):
            for tm in tau_monos:
                pairs = [(("s", l + 1, j), 1) for l, j in enumerate(choice)]
                pairs.extend(tm)
                out.append(next(iter(MultiPoly.monomial(pairs).terms)))
    return out


@dataclass(frozen=True)
class LinearMapMatrix:
    """Matrix of phi_i: rows = basis monomials of V_i, cols = payoff entries."""

    n: int
    i: int
    rows: tuple  # basis monomials
    cols: tuple  # profiles
    entries: tuple  # tuple of row tuples of Fraction


def phi_matrix(n: int, i: int) -> LinearMapMatrix:
    if n < 3:
        raise ValueError("phi matrices are defined for n >= 3")
    rows = basis_monomials(n, i)
    cols = all_profiles(n)
    row_index = {m: r for r, m in enumerate(rows)}
    entries = [[Fraction(0)] * len(cols) for _ in rows]
    zero = {p: Fraction(0) for p in cols}
    zero_tensor = PayoffTensor(n, dict(zero))
    for c, profile in enumerate(cols):
        values = dict(zero)
        values[profile] = Fraction(1)
        tensors = [zero_tensor] * n
        tensors[i - 1] = PayoffTensor(n, values)
        f = ci_polynomial(Game(n, tuple(tensors)), i)
        for m, coeff in f.terms.items():
            entries[row_index[m]][c] += coeff
    return LinearMapMatrix(
        n, i, tuple(rows), tuple(cols), tuple(tuple(r) for r in entries)
    )


def apply_phi(matrix: LinearMapMatrix, tensor: PayoffTensor) -> list[Fraction]:
    vec = [tensor[p] for p in matrix.cols]
    return [sum(e * x for e, x in zip(row, vec)) for row in matrix.entries]


def coefficient_vector(matrix: LinearMapMatrix, poly: MultiPoly) -> list[Fraction]:
    """Coefficients of a polynomial in the row basis of the matrix.

    Raises NotInImage when the polynomial has a monomial outside the basis
    (wrong multidegree).
    """
    known = set(matrix.rows)
    for m in poly.terms:
        if m not in known:
            raise NotInImage(
                f"monomial {_monomial_str(m)} is not of the multidegree of V_{matrix.i}"
            )
    return [poly.coefficient(m) for m in matrix.rows]


# ---- exact linear algebra -------------------------------------------------


def exact_rank(matrix) -> int:
    """Rank over Q via fraction-free (Bareiss) elimination on integer rows."""
    if isinstance(matrix, LinearMapMatrix):
        rows = [list(r) for r in matrix.entries]
    else:
        rows = [[Fraction(x) for x in r] for r in matrix]
    if not rows:
        return 0
    m = []
    for r in rows:
        scale = lcm(*(x.denominator for x in r)) if r else 1
        m.append([int(x * scale) for x in r])
    n_rows, n_cols = len(m), len(m[0])
    rank = 0
    prev = 1
    row = 0
    for col in range(n_cols):
        pivot = next((r for r in range(row, n_rows) if m[r][col]), None)
        if pivot is None:
            continue
        m[row], m[pivot] = m[pivot], m[row]
        for r in range(row + 1, n_rows):
            for c in range(col + 1, n_cols):
                m[r][c] = (m[row][col] * m[r][c] - m[r][col] * m[row][c]) // prev
            m[r][col] = 0
        prev = m[row][col]
        row += 1
        rank += 1
        if row == n_rows:
            break
    return rank


def solve_exact(rows, rhs, col_order=None):
    """One exact solution of rows * x = rhs, or an inconsistency certificate.

    Returns (solution, None) with free variables at zero, or (None, residual)
    where residual is a (row_combo, value) pair: a left null vector of the
    matrix whose dot product with rhs is the nonzero value.  col_order biases
    which columns become pivots (earlier entries preferred).
    """
    n_rows = len(rows)
    n_cols = len(rows[0]) if rows else 0
    # augment with the identity to track row combinations, then the rhs
    a = [
        [Fraction(x) for x in row]
        + [Fraction(1) if k == r else Fraction(0) for k in range(n_rows)]
        + [Fraction(b)]
        for r, (row, b) in enumerate(zip(rows, rhs))
    ]
    order = list(col_order) if col_order is not None else list(range(n_cols))
    pivots = []
    row = 0
    for col in order:
        pivot = next((r for r in range(row, n_rows) if a[r][col]), None)
        if pivot is None:
            continue
        a[row], a[pivot] = a[pivot], a[row]
        pv = a[row][col]
        a[row] = [x / pv for x in a[row]]
        for r in range(n_rows):
            if r != row and a[r][col]:
                f = a[r][col]
                a[r] = [x - f * y for x, y in zip(a[r], a[row])]
        pivots.append((row, col))
        row += 1
        if row == n_rows:
            break
    for r in range(row, n_rows):
        if a[r][-1]:
            return None, (tuple(a[r][n_cols:-1]), a[r][-1])
    x = [Fraction(0)] * n_cols
    for r, col in pivots:
        x[col] = a[r][-1]
    return x, None


# ---- dimensions -----------------------------------------------------------


def expected_rank(n: int, i: int) -> int:
    return 2 ** (n - 1) if i <= n - 2 else 3 * 2 ** (n - 2)


def image_dimension(n: int) -> dict:
    """Per-player ranks of phi_i, their sum, and the ambient dimension.

    The sum must equal 2^{n-1} (n+1); a mismatch means an implementation bug,
    so it is asserted rather than reported.
    """
    ranks = [exact_rank(phi_matrix(n, i)) for i in range(1, n + 1)]
    total = sum(ranks)
    closed_form = 2 ** (n - 1) * (n + 1)
    if total != closed_form:
        raise AssertionError(
            f"sum of ranks {total} disagrees with closed form {closed_form}"
        )
    return {
        "n": n,
        "ranks": ranks,
        "imageDimension": total,
        "ambientDimension": 2 ** (n - 1) * (n + 8),
    }


# ---- preimages ------------------------------------------------------------


def _monomial_str(m: Monomial) -> str:
    return "*".join(var_name(v) + (f"^{e}" if e > 1 else "") for v, e in m)


def solve_preimage(n: int, targets) -> Game:
    """A game whose defining polynomials are exactly the given targets.

    Each target must be multi-homogeneous of the multidegree of V_i or zero.
    Raises NotInImage (with the violated linear condition) when no payoff
    table maps to a target.  The particular solution prefers payoff support
    on profiles with early indices equal to 2, mirroring hand-built tables.
    """
    targets = list(targets)
    if len(targets) != n:
        raise ValueError(f"expected {n} target polynomials")
    tensors = []
    for i, target in enumerate(targets, start=1):
        matrix = phi_matrix(n, i)
        if not target:
            tensors.append(
                PayoffTensor(n, {p: Fraction(0) for p in matrix.cols})
            )
            continue
        b = coefficient_vector(matrix, target)
        # prefer pivots on profiles with many leading 2s
        order = sorted(
            range(len(matrix.cols)),
            key=lambda c: (sum(1 for j in matrix.cols[c] if j == 1), matrix.cols[c]),
        )
        x, residual = solve_exact(matrix.entries, b, col_order=order)
        if x is None:
            combo, value = residual
            relation = " + ".join(
                f"({c})*coeff({_monomial_str(m)})"
                for c, m in zip(combo, matrix.rows)
                if c
            )
            raise NotInImage(
                f"target {i} not in the image of phi_{i}: every image "
                f"polynomial satisfies {relation} = 0, but the target "
                f"gives {value}"
            )
        tensors.append(PayoffTensor(n, dict(zip(matrix.cols, x))))
    return Game(n, tuple(tensors))


# ---- base locus -----------------------------------------------------------


def _tau_poly(coeffs: dict) -> MultiPoly:
    out = MultiPoly.zero()
    for (a, b), c in coeffs.items():
        out = out + MultiPoly.monomial([(("t", a, b), 1)], c)
    return out


def base_locus_generators(i_kind: str) -> list[MultiPoly]:
    """The three quadrics spanning the tau factor of the image of phi_i.

    i_kind is "n-1" or "n".  They correspond to the coefficient choices
    [A:B:C] in {[1:0:0], [0:1:0], [0:0:1]} with D = B + C - A.
    """
    t = lambda a, b: MultiPoly.variable(("t", a, b))
    if i_kind == "n-1":
        return [
            t(1, 1) * t(2, 1) - t(1, 2) * t(2, 2),
            t(1, 2) * (t(2, 1) + t(2, 2)),
            t(2, 2) * (t(1, 1) + t(1, 2)),
        ]
    if i_kind == "n":
        return [
            t(1, 1) * t(1, 2) - t(2, 1) * t(2, 2),
            t(2, 1) * (t(1, 2) + t(2, 2)),
            t(2, 2) * (t(1, 1) + t(2, 1)),
        ]
    raise ValueError(f"unknown kind {i_kind!r}")


def base_locus_lines(i_kind: str) -> list[dict]:
    """Parametrizations of the three base-locus lines in P^3.

    Each line is a substitution tau variable -> linear form in the parameters
    u1, u2.
    """
    u1 = MultiPoly.variable(("u", 1))
    u2 = MultiPoly.variable(("u", 2))
    zero = MultiPoly.zero()
    if i_kind == "n-1":
        return [
            {("t", 1, 1): zero, ("t", 1, 2): zero, ("t", 2, 1): u1, ("t", 2, 2): u2},
            {("t", 2, 1): zero, ("t", 2, 2): zero, ("t", 1, 1): u1, ("t", 1, 2): u2},
            {("t", 1, 1): u1, ("t", 1, 2): -u1, ("t", 2, 1): u2, ("t", 2, 2): -u2},
        ]
    if i_kind == "n":
        return [
            {("t", 1, 1): zero, ("t", 2, 1): zero, ("t", 1, 2): u1, ("t", 2, 2): u2},
            {("t", 1, 2): zero, ("t", 2, 2): zero, ("t", 1, 1): u1, ("t", 2, 1): u2},
            {("t", 1, 1): u1, ("t", 2, 1): -u1, ("t", 1, 2): u2, ("t", 2, 2): -u2},
        ]
    raise ValueError(f"unknown kind {i_kind!r}")


def base_locus_check(n: int, i: int) -> dict:
    """Verify symbolically that the base locus of phi_i's linear system is the
    three lines: every generator vanishes identically on every line, and some
    generator is nonzero at a rational witness point off their union."""
    if n < 3 or i not in (n - 1, n):
        raise ValueError("base locus is computed for players n-1 and n, n >= 3")
    kind = "n-1" if i == n - 1 else "n"
    gens = base_locus_generators(kind)
    lines = base_locus_lines(kind)
    vanishing = [
        [not gen.substitute(line) for gen in gens] for line in lines
    ]
    witness = {
        ("t", 1, 1): Fraction(1),
        ("t", 1, 2): Fraction(2),
        ("t", 2, 1): Fraction(3),
        ("t", 2, 2): Fraction(5),
    }
    witness_values = [gen.evaluate(witness) for gen in gens]
    return {
        "n": n,
        "player": i,
        "generators": [str(g) for g in gens],
        "linesVanish": vanishing,
        "allVanish": all(all(row) for row in vanishing),
        "witnessPoint": [1, 2, 3, 5],
        "witnessValues": [str(v) for v in witness_values],
        "witnessNonzero": any(witness_values),
    }
