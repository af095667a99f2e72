"""Sparse multivariate polynomials over exact rationals with blocked variables.

Variables are tagged tuples:

    ("s", i, j)   sigma^(i)_j, the j-th homogeneous coordinate of the i-th P^1
                  factor (j in {1, 2})
    ("t", a, b)   tau_{a,b}, coordinates of the P^3 factor (a, b in {1, 2})
    ("p", prof)   p_{j_1...j_n}, a probability tensor entry; prof is a tuple
                  of indices in {1, 2}
    ("x", i)      ambient affine coordinate x_i (universality targets)
    ("u", i)      auxiliary parameters (line parametrizations)

A monomial is a sorted tuple of (var, exponent) pairs with positive exponents,
and a polynomial is a mapping from monomials to nonzero Fractions.  Everything
is immutable and exact; floats are rejected at the parsing boundary.
"""

from __future__ import annotations

from fractions import Fraction
from typing import Iterable, Mapping

_KIND_RANK = {"s": 0, "t": 1, "p": 2, "x": 3, "u": 4}

Var = tuple
Monomial = tuple  # sorted tuple of (Var, int) pairs


class NotMultiHomogeneous(ValueError):
    """Terms of a polynomial disagree on some per-block degree."""


def var_key(v: Var):
    kind = v[0]
    return (_KIND_RANK[kind],) + tuple(v[1:])


def var_name(v: Var) -> str:
    kind = v[0]
    if kind == "s":
        return f"s{v[1]}_{v[2]}"
    if kind == "t":
        return f"t{v[1]}{v[2]}"
    if kind == "p":
        return "p" + "".join(str(j) for j in v[1])
    if kind == "x":
        return f"x{v[1]}"
    if kind == "u":
        return f"u{v[1]}"
    raise ValueError(f"unknown variable kind {kind!r}")


def parse_var(name: str) -> Var:
    if name.startswith("s") and "_" in name:
        block, idx = name[1:].split("_")
        return ("s", int(block), int(idx))
    if name.startswith("t") and len(name) == 3:
        return ("t", int(name[1]), int(name[2]))
    if name.startswith("p"):
        return ("p", tuple(int(c) for c in name[1:]))
    if name.startswith("x"):
        return ("x", int(name[1:]))
    if name.startswith("u"):
        return ("u", int(name[1:]))
    raise ValueError(f"cannot parse variable name {name!r}")


def parse_rational(value) -> Fraction:
    """Exact rational from an int or a 'p' / 'p/q' string.  Floats are refused."""
    if isinstance(value, bool):
        raise TypeError("booleans are not payoffs")
    if isinstance(value, int):
        return Fraction(value)
    if isinstance(value, Fraction):
        return value
    if isinstance(value, float):
        raise TypeError("floats are not accepted; pass exact rationals as strings")
    if isinstance(value, str):
        return Fraction(value)
    raise TypeError(f"cannot interpret {value!r} as an exact rational")


def format_rational(q: Fraction) -> str:
    return str(q)


def _make_monomial(pairs: Iterable[tuple[Var, int]]) -> Monomial:
    merged: dict[Var, int] = {}
    for v, e in pairs:
        if e < 0:
            raise ValueError("negative exponent")
        if e:
            merged[v] = merged.get(v, 0) + e
    return tuple(sorted(merged.items(), key=lambda ve: var_key(ve[0])))


def _mul_monomials(m1: Monomial, m2: Monomial) -> Monomial:
    return _make_monomial(list(m1) + list(m2))


class MultiPoly:
    """Immutable sparse polynomial with Fraction coefficients."""

    __slots__ = ("terms",)

    def __init__(self, terms: Mapping[Monomial, Fraction] | None = None):
        clean = {}
        if terms:
            for m, c in terms.items():
                c = Fraction(c)
                if c:
                    clean[m] = c
        object.__setattr__(self, "terms", clean)

    def __setattr__(self, *a):  # pragma: no cover
        raise AttributeError("MultiPoly is immutable")

    # ---- constructors -------------------------------------------------

    @staticmethod
    def zero() -> "MultiPoly":
        return MultiPoly()

    @staticmethod
    def constant(c) -> "MultiPoly":
        c = Fraction(c)
        return MultiPoly({(): c}) if c else MultiPoly()

    @staticmethod
    def variable(v: Var) -> "MultiPoly":
        return MultiPoly({((v, 1),): Fraction(1)})

    @staticmethod
    def monomial(pairs: Iterable[tuple[Var, int]], coeff=1) -> "MultiPoly":
        return MultiPoly({_make_monomial(pairs): Fraction(coeff)})

    # ---- ring operations ----------------------------------------------

    def __add__(self, other) -> "MultiPoly":
        other = _coerce(other)
        terms = dict(self.terms)
        for m, c in other.terms.items():
            terms[m] = terms.get(m, Fraction(0)) + c
        return MultiPoly(terms)

    __radd__ = __add__

    def __neg__(self) -> "MultiPoly":
        return MultiPoly({m: -c for m, c in self.terms.items()})

    def __sub__(self, other) -> "MultiPoly":
        return self + (-_coerce(other))

    def __rsub__(self, other) -> "MultiPoly":
        return _coerce(other) + (-self)

    def __mul__(self, other) -> "MultiPoly":
        other = _coerce(other)
        terms: dict[Monomial, Fraction] = {}
        for m1, c1 in self.terms.items():
            for m2, c2 in other.terms.items():
                m = _mul_monomials(m1, m2)
                terms[m] = terms.get(m, Fraction(0)) + c1 * c2
        return MultiPoly(terms)

    __rmul__ = __mul__

    def scale(self, c) -> "MultiPoly":
        c = Fraction(c)
        return MultiPoly({m: c * q for m, q in self.terms.items()})

    def __eq__(self, other) -> bool:
        if isinstance(other, (int, Fraction)):
            other = MultiPoly.constant(other)
        if not isinstance(other, MultiPoly):
            return NotImplemented
        return self.terms == other.terms

    def __hash__(self):
        return hash(frozenset(self.terms.items()))

    def __bool__(self) -> bool:
        return bool(self.terms)

    # ---- queries -------------------------------------------------------

    def variables(self) -> set:
        vs = set()
        for m in self.terms:
            for v, _ in m:
                vs.add(v)
        return vs

    def coefficient(self, monomial: Monomial) -> Fraction:
        return self.terms.get(monomial, Fraction(0))

    def degree_in(self, vars_of_block: set) -> int:
        """Maximum total exponent over the given variables across all terms."""
        best = 0
        for m in self.terms:
            d = sum(e for v, e in m if v in vars_of_block)
            best = max(best, d)
        return best

    # ---- evaluation and substitution -----------------------------------

    def evaluate(self, assignment: Mapping[Var, Fraction]) -> Fraction:
        total = Fraction(0)
        for m, c in self.terms.items():
            val = c
            for v, e in m:
                if v not in assignment:
                    raise KeyError(f"no value for variable {var_name(v)}")
                val *= Fraction(assignment[v]) ** e
            total += val
        return total

    def evaluate_float(self, assignment: Mapping[Var, float]) -> float:
        total = 0.0
        for m, c in self.terms.items():
            val = float(c)
            for v, e in m:
                val *= float(assignment[v]) ** e
            total += val
        return total

    def substitute(self, mapping: Mapping[Var, "MultiPoly"]) -> "MultiPoly":
        """Replace each mapped variable by a polynomial; others stay put."""
        out = MultiPoly.zero()
        for m, c in self.terms.items():
            factor = MultiPoly.constant(c)
            for v, e in m:
                rep = mapping.get(v)
                if rep is None:
                    rep = MultiPoly.variable(v)
                for _ in range(e):
                    factor = factor * rep
            out = out + factor
        return out

    def derivative(self, v: Var) -> "MultiPoly":
        terms: dict[Monomial, Fraction] = {}
        for m, c in self.terms.items():
            md = dict(m)
            e = md.get(v, 0)
            if not e:
                continue
            md[v] = e - 1
            mm = _make_monomial(md.items())
            terms[mm] = terms.get(mm, Fraction(0)) + c * e
        return MultiPoly(terms)

    def dehomogenize(self) -> "MultiPoly":
        """Affine chart sigma^(i)_2 = 1 for all i and tau_{2,2} = 1."""
        mapping = {}
        for v in self.variables():
            if v[0] == "s" and v[2] == 2:
                mapping[v] = MultiPoly.constant(1)
            elif v == ("t", 2, 2):
                mapping[v] = MultiPoly.constant(1)
        return self.substitute(mapping)

    # ---- structure ------------------------------------------------------

    def block_degree(self, n: int) -> tuple[int, ...]:
        """Per-block degrees (d_1..d_{n-1}) of a multi-homogeneous polynomial.

        Blocks are the sigma blocks 1..n-2 followed by the tau block.  Raises
        NotMultiHomogeneous if two terms disagree on any block degree, and
        ValueError on the zero polynomial.
        """
        if not self.terms:
            raise ValueError("block degree of the zero polynomial is undefined")
        degs = None
        for m in self.terms:
            d = [0] * (n - 1)
            for v, e in m:
                if v[0] == "s":
                    if not (1 <= v[1] <= n - 2):
                        raise ValueError(f"sigma block {v[1]} out of range for n={n}")
                    d[v[1] - 1] += e
                elif v[0] == "t":
                    d[n - 2] += e
                else:
                    raise ValueError(f"variable {var_name(v)} has no block")
            d = tuple(d)
            if degs is None:
                degs = d
            elif degs != d:
                raise NotMultiHomogeneous(f"terms of degree {degs} and {d}")
        return degs

    # ---- printing --------------------------------------------------------

    def sorted_terms(self) -> list[tuple[Monomial, Fraction]]:
        def key(item):
            m, _ = item
            total = sum(e for _, e in m)
            return (total, tuple((var_key(v), e) for v, e in m))

        return sorted(self.terms.items(), key=key)

    def __str__(self) -> str:
        if not self.terms:
            return "0"
        parts = []
        for m, c in self.sorted_terms():
            mon = "*".join(
                var_name(v) if e == 1 else f"{var_name(v)}^{e}" for v, e in m
            )
            if not mon:
                parts.append(str(c))
            elif c == 1:
                parts.append(mon)
            elif c == -1:
                parts.append(f"-{mon}")
            else:
                parts.append(f"{c}*{mon}")
        out = parts[0]
        for p in parts[1:]:
            out += f" - {p[1:]}" if p.startswith("-") else f" + {p}"
        return out

    __repr__ = __str__


def _coerce(value) -> MultiPoly:
    if isinstance(value, MultiPoly):
        return value
    if isinstance(value, (int, Fraction)):
        return MultiPoly.constant(value)
    raise TypeError(f"cannot coerce {value!r} to MultiPoly")


def proportional(p: MultiPoly, q: MultiPoly) -> Fraction | None:
    """The scalar c with p = c*q, if any.

    Returns None when no nonzero scalar works.  By convention (0, 0) gives 1;
    (p, 0) with p nonzero gives None.
    """
    if not q.terms:
        return Fraction(1) if not p.terms else None
    if not p.terms:
        return None
    if set(p.terms) != set(q.terms):
        return None
    items = iter(q.terms.items())
    m0, c0 = next(items)
    ratio = p.terms[m0] / c0
    for m, c in q.terms.items():
        if p.terms[m] != ratio * c:
            return None
    return ratio


# ---- JSON (de)serialization ---------------------------------------------


def poly_to_json(p: MultiPoly) -> list:
    out = []
    for m, c in p.sorted_terms():
        out.append(
            {"coeff": format_rational(c), "vars": {var_name(v): e for v, e in m}}
        )
    return out


def poly_from_json(data: list) -> MultiPoly:
    terms: dict[Monomial, Fraction] = {}
    for item in data:
        c = parse_rational(item["coeff"])
        m = _make_monomial(
            (parse_var(name), int(e)) for name, e in item.get("vars", {}).items()
        )
        terms[m] = terms.get(m, Fraction(0)) + c
    return MultiPoly(terms)
