"""Euler characteristics of line bundles on (P^1)^{n-2} x P^3, genus, Table rows.

chi is multiplicative over the product factors (Kunneth):

    chi(O(d_1,..,d_{n-1})) = prod_{i<=n-2} (d_i + 1) * binom(d_{n-1}+3, 3)

with the binomial read as the cubic polynomial (d+1)(d+2)(d+3)/6, valid for
negative twists as well.  The Euler characteristic of the curve comes from the
Koszul resolution of the complete intersection: an alternating sum of chi over
sums of the defining divisors.  The genus is 1 - chi, using that the curve is
connected (h^0 = 1).
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass
from math import comb

from .chow import canonical_degree, curve_degree


def chi_line_bundle(degrees) -> int:
    """chi of O(d_1,..,d_{n-1}); sigma twists first, tau twist last."""
    degrees = tuple(int(d) for d in degrees)
    if not degrees:
        raise ValueError("need at least the tau twist")
    d_tau = degrees[-1]
    num = (d_tau + 1) * (d_tau + 2) * (d_tau + 3)
    assert num % 6 == 0
    chi = num // 6
    for d in degrees[:-1]:
        chi *= d + 1
    return chi


def divisor_degrees(n: int, i: int) -> tuple[int, ...]:
    """Multidegree of the i-th defining divisor, length n-1."""
    if not 1 <= i <= n:
        raise ValueError(f"player index {i} out of range")
    if i <= n - 2:
        d = [1] * (n - 1)
        d[i - 1] = 0
    else:
        d = [1] * (n - 2) + [2]
    return tuple(d)


def divisor_sum_bundle(n: int, subset) -> tuple[int, ...]:
    """Twists of O(-sum of D_i over the subset)."""
    subset = sorted(set(subset))
    if not subset:
        raise ValueError("subset must be nonempty")
    total = [0] * (n - 1)
    for i in subset:
        for k, d in enumerate(divisor_degrees(n, i)):
            total[k] += d
    return tuple(-d for d in total)


def chi_k(n: int, k: int, method: str = "orbits") -> int:
    """chi of the k-th Koszul term, summed over all k-subsets of divisors.

    method="subsets" enumerates every subset; method="orbits" groups subsets
    by how many of the last two (tau-quadratic) divisors they contain and
    multiplies by orbit sizes.  The two agree; both are kept as a
    cross-check.
    """
    if not 1 <= k <= n:
        raise ValueError(f"k={k} out of range for n={n}")
    if method == "subsets":
        return sum(
            chi_line_bundle(divisor_sum_bundle(n, subset))
            for subset in itertools.combinations(range(1, n + 1), k)
        )
    if method != "orbits":
        raise ValueError(f"unknown method {method!r}")
    total = 0
    for b in range(0, min(2, k) + 1):  # b = chosen divisors among {n-1, n}
        a = k - b  # chosen sigma-type divisors
        if a > n - 2 or a < 0:
            continue
        mult = comb(n - 2, a) * (2 if b == 1 else 1)
        # unchosen sigma blocks get twist -(a+b), chosen ones -(a+b-1)
        degrees = (-(k),) * (n - 2 - a) + (-(k - 1),) * a + (-(a + 2 * b),)
        total += mult * chi_line_bundle(degrees)
    return total


def euler_characteristic(n: int) -> int:
    """chi(O) of the Nash CI curve: 1 + sum_k (-1)^k chi_k."""
    if n < 2:
        raise ValueError("n must be >= 2")
    return 1 + sum((-1) ** k * chi_k(n, k) for k in range(1, n + 1))


def arithmetic_genus(n: int) -> int:
    return 1 - euler_characteristic(n)


@dataclass(frozen=True)
class CurveInvariants:
    n: int
    degree: int
    genus: int
    euler_char: int


def invariants_table(n_max: int) -> list[CurveInvariants]:
    if n_max < 2:
        raise ValueError("n_max must be >= 2")
    rows = []
    for n in range(2, n_max + 1):
        chi = euler_characteristic(n)
        rows.append(CurveInvariants(n, curve_degree(n), 1 - chi, chi))
    return rows


def invariants_summary(n: int) -> dict:
    g = arithmetic_genus(n)
    return {
        "n": n,
        "degree": curve_degree(n),
        "genus": g,
        "canonicalDegree": canonical_degree(n),
        "eulerCharacteristic": 1 - g,
    }
