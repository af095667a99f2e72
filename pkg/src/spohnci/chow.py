"""Arithmetic in the Chow ring Z[x_1..x_{n-1}] / (x_1^2,..,x_{n-2}^2, x_{n-1}^4).

This is the intersection ring of (P^1)^{n-2} x P^3.  Classes are stored as a
dense coefficient array over the 4 * 2^{n-2} surviving monomials; products
truncate exponents beyond the caps.  Coefficients are Python ints, so nothing
overflows for large n.
"""

from __future__ import annotations

from dataclasses import dataclass


def _caps(n: int) -> tuple[int, ...]:
    return (2,) * (n - 2) + (4,)  # exponent i lives in range(cap_i)


def _size(n: int) -> int:
    return 4 * 2 ** (n - 2)


def _index(caps, expo) -> int:
    idx = 0
    for c, e in zip(caps, expo):
        idx = idx * c + e
    return idx


def _exponents(caps):
    out = [()]
    for c in caps:
        out = [e + (k,) for e in out for k in range(c)]
    return out


@dataclass(frozen=True)
class ChowClass:
    n: int
    coeffs: tuple

    def __post_init__(self):
        if self.n < 2:
            raise ValueError("n must be >= 2")
        if len(self.coeffs) != _size(self.n):
            raise ValueError("coefficient array has wrong length")

    @staticmethod
    def zero(n: int) -> "ChowClass":
        return ChowClass(n, (0,) * _size(n))

    @staticmethod
    def one(n: int) -> "ChowClass":
        c = [0] * _size(n)
        c[0] = 1
        return ChowClass(n, tuple(c))

    @staticmethod
    def generator(n: int, k: int) -> "ChowClass":
        """The class x_k, 1 <= k <= n-1."""
        if not 1 <= k <= n - 1:
            raise ValueError(f"generator index {k} out of range")
        caps = _caps(n)
        expo = [0] * (n - 1)
        expo[k - 1] = 1
        c = [0] * _size(n)
        c[_index(caps, expo)] = 1
        return ChowClass(n, tuple(c))

    def coefficient(self, expo) -> int:
        return self.coeffs[_index(_caps(self.n), tuple(expo))]

    def __add__(self, other: "ChowClass") -> "ChowClass":
        if self.n != other.n:
            raise ValueError("mismatched player counts")
        return ChowClass(self.n, tuple(a + b for a, b in zip(self.coeffs, other.coeffs)))

    def __sub__(self, other: "ChowClass") -> "ChowClass":
        if self.n != other.n:
            raise ValueError("mismatched player counts")
        return ChowClass(self.n, tuple(a - b for a, b in zip(self.coeffs, other.coeffs)))

    def scale(self, c: int) -> "ChowClass":
        return ChowClass(self.n, tuple(c * a for a in self.coeffs))

    def __mul__(self, other: "ChowClass") -> "ChowClass":
        return chow_mul(self, other)

    def __pow__(self, k: int) -> "ChowClass":
        out = ChowClass.one(self.n)
        for _ in range(k):
            out = chow_mul(out, self)
        return out


def chow_mul(a: ChowClass, b: ChowClass) -> ChowClass:
    if a.n != b.n:
        raise ValueError("mismatched player counts")
    n = a.n
    caps = _caps(n)
    expos = _exponents(caps)
    out = [0] * _size(n)
    nz_a = [(e, c) for e, c in zip(expos, a.coeffs) if c]
    nz_b = [(e, c) for e, c in zip(expos, b.coeffs) if c]
    for ea, ca in nz_a:
        for eb, cb in nz_b:
            prod = tuple(x + y for x, y in zip(ea, eb))
            if any(e >= c for e, c in zip(prod, caps)):
                continue  # x_i^2 = 0, x_{n-1}^4 = 0
            out[_index(caps, prod)] += ca * cb
    return ChowClass(n, tuple(out))


def divisor_class(n: int, i: int) -> ChowClass:
    """First Chern class of the i-th defining divisor of the Nash CI curve."""
    if not 1 <= i <= n:
        raise ValueError(f"player index {i} out of range")
    out = ChowClass.zero(n)
    if i <= n - 2:
        for k in range(1, n):
            if k != i:
                out = out + ChowClass.generator(n, k)
    else:
        out = ChowClass.generator(n, n - 1).scale(2)
        for k in range(1, n - 1):
            out = out + ChowClass.generator(n, k)
    return out


def hyperplane_class(n: int) -> ChowClass:
    out = ChowClass.zero(n)
    for k in range(1, n):
        out = out + ChowClass.generator(n, k)
    return out


def _top_coefficient(cls: ChowClass) -> int:
    """Coefficient of x_1...x_{n-2} x_{n-1}^3, the point class."""
    expo = (1,) * (cls.n - 2) + (3,)
    return cls.coefficient(expo)


def curve_degree(n: int) -> int:
    """Degree of the Nash CI curve in P^{2^n - 1}."""
    if n < 2:
        raise ValueError("n must be >= 2")
    prod = ChowClass.one(n)
    for i in range(1, n + 1):
        prod = prod * divisor_class(n, i)
    prod = prod * hyperplane_class(n)
    return _top_coefficient(prod)


def canonical_degree(n: int) -> int:
    """Degree of the dualizing sheaf of the curve, i.e. 2 * genus - 2.

    Computed by the adjunction route: the product of all divisor classes with
    the restriction class (n-3) * sum of sigma generators + (n-2) * x_{n-1}.
    """
    if n < 2:
        raise ValueError("n must be >= 2")
    prod = ChowClass.one(n)
    for i in range(1, n + 1):
        prod = prod * divisor_class(n, i)
    omega = ChowClass.generator(n, n - 1).scale(n - 2)
    for k in range(1, n - 1):
        omega = omega + ChowClass.generator(n, k).scale(n - 3)
    prod = prod * omega
    return _top_coefficient(prod)
