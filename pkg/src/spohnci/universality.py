"""Constructive universality encoders.

Two constructions turn arbitrary polynomial data into games:

  * encode_product_r1: any n-player game becomes an (n+2)-player game whose
    distinguished affine open subset is the input's Nash-form zero set times
    an affine line;
  * encode_variety: any real affine variety in R^n cut out by m < n
    polynomials becomes a (delta+n+1)-player game whose distinguished affine
    open subset is isomorphic to the variety, where delta is the sum over
    variables of their maximal degrees.

The second construction introduces chain variables sigma^(i,j) representing
the powers x_i^j, places each defining equation at a player slot whose own
variable block it avoids (a bipartite matching problem, solved explicitly),
homogenizes by padding with sigma_2 and tau_22 factors, and realizes the
resulting coefficient vectors as payoff tables through solve_preimage.
verify_isomorphism transports rational sample points through the certificate
dictionary and checks every game equation vanishes exactly.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass
from fractions import Fraction

from .equations import ci_polynomial, ci_system
from .games import Game, PayoffTensor, all_profiles
from .linmap import solve_preimage
from .matching import maximum_matching
from .poly import MultiPoly, parse_rational, poly_from_json, poly_to_json, var_name


class MatchingFailure(RuntimeError):
    """No slot relabeling avoids every equation's own variable block."""


class TransportFailure(RuntimeError):
    """A transported sample point fails to satisfy a game equation."""


_T11 = ("t", 1, 1)
_T12 = ("t", 1, 2)
_T21 = ("t", 2, 1)
_T22 = ("t", 2, 2)


@dataclass(frozen=True)
class TargetVariety:
    """A real affine variety in R^n cut out by m < n polynomials in x_1..x_n."""

    n: int
    polys: tuple

    def __post_init__(self):
        if len(self.polys) >= self.n:
            raise ValueError(
                f"need strictly fewer polynomials than variables: "
                f"m={len(self.polys)}, n={self.n}"
            )
        for k, g in enumerate(self.polys, start=1):
            if not g:
                raise ValueError(f"polynomial {k} is zero")
            for v in g.variables():
                if v[0] != "x" or not 1 <= v[1] <= self.n:
                    raise ValueError(
                        f"polynomial {k} uses {var_name(v)}, not an ambient variable"
                    )

    @property
    def m(self) -> int:
        return len(self.polys)

    def variable_degree(self, i: int) -> int:
        """Maximal degree of x_i across the defining polynomials."""
        return max(g.degree_in({("x", i)}) for g in self.polys)

    def degree_profile(self) -> tuple:
        return tuple(self.variable_degree(i) for i in range(1, self.n + 1))


def target_to_json(target: TargetVariety) -> dict:
    return {
        "vars": [f"x{i}" for i in range(1, target.n + 1)],
        "polys": [poly_to_json(g) for g in target.polys],
    }


def target_from_json(data: dict) -> TargetVariety:
    names = list(data["vars"])
    if names != [f"x{i}" for i in range(1, len(names) + 1)]:
        raise ValueError("vars must be x1..xn in order")
    polys = tuple(poly_from_json(item) for item in data["polys"])
    return TargetVariety(len(names), polys)


@dataclass(frozen=True)
class EncodingCertificate:
    """Everything needed to replay or audit an encoding.

    blocks describes each sigma block of the output: ("chain", p, j) for the
    j-th power chain of the variable at position p, or ("base", p).  slots
    says which equation sits at each player slot.  permutation maps positions
    to original ambient variables (position n is the tau coordinate).
    """

    kind: str  # "productR1" or "variety"
    players: int
    permutation: tuple
    substitution: str
    blocks: tuple
    slots: tuple
    dictionary: dict
    scalars: tuple


def certificate_to_json(cert: EncodingCertificate) -> dict:
    return {
        "kind": cert.kind,
        "players": cert.players,
        "permutation": list(cert.permutation),
        "substitution": cert.substitution,
        "blocks": [list(b) for b in cert.blocks],
        "slots": [list(s) for s in cert.slots],
        "dictionary": dict(cert.dictionary),
        "scalars": [str(c) for c in cert.scalars],
    }


def certificate_from_json(data: dict) -> EncodingCertificate:
    return EncodingCertificate(
        kind=data["kind"],
        players=int(data["players"]),
        permutation=tuple(int(p) for p in data["permutation"]),
        substitution=data["substitution"],
        blocks=tuple(tuple(b) for b in data["blocks"]),
        slots=tuple(tuple(s) for s in data["slots"]),
        dictionary=dict(data["dictionary"]),
        scalars=tuple(Fraction(c) for c in data["scalars"]),
    )


# ---- product-with-a-line encoder ------------------------------------------


def encode_product_r1(game: Game):
    """An (n+2)-player game whose open subset is the input's zero set x R^1.

    Player i <= n keeps the input payoffs on profiles ending in (2, 2) and
    zero elsewhere; the two new players get the indicator of the all-2s
    profile, which makes their equations the linear tau forms
    tau_11 + tau_12 and tau_11 + tau_21 after dehomogenizing.
    """
    n = game.n
    N = n + 2
    profiles = all_profiles(N)
    all_twos = (2,) * N
    tensors = []
    for i in range(1, n + 1):
        values = {
            p: game.payoff(i, p[:n]) if p[n:] == (2, 2) else Fraction(0)
            for p in profiles
        }
        tensors.append(PayoffTensor(N, values))
    indicator = PayoffTensor(
        N, {p: Fraction(1 if p == all_twos else 0) for p in profiles}
    )
    tensors.extend([indicator, indicator])
    out = Game(N, tuple(tensors))

    dictionary = {f"x{i}": f"s{i}_1" for i in range(1, n + 1)}
    dictionary["r"] = "t11"
    slots = tuple(("payoff", i) for i in range(1, n + 1)) + (
        ("tauForm", 1),
        ("tauForm", 2),
    )
    scalars = _roundtrip_scalars(out, _expected_product_r1(game))
    cert = EncodingCertificate(
        kind="productR1",
        players=N,
        permutation=tuple(range(1, n + 1)),
        substitution="",
        blocks=tuple(("base", p) for p in range(1, n + 1)),
        slots=slots,
        dictionary=dictionary,
        scalars=scalars,
    )
    return out, cert


def _expected_product_r1(game: Game) -> list[MultiPoly]:
    from .equations import nash_polynomial

    n = game.n
    t22 = MultiPoly.variable(_T22)
    expected = [nash_polynomial(game, i) * t22 for i in range(1, n + 1)]
    expected.append(_tau_form_poly(1, n))
    expected.append(_tau_form_poly(2, n))
    return expected


def _tau_form_poly(k: int, n_blocks: int) -> MultiPoly:
    other = MultiPoly.variable(_T12 if k == 1 else _T21)
    f = (MultiPoly.variable(_T11) + other) * MultiPoly.variable(_T22)
    for b in range(1, n_blocks + 1):
        f = f * MultiPoly.variable(("s", b, 2))
    return f


def _roundtrip_scalars(game: Game, expected) -> tuple:
    from .poly import proportional

    scalars = []
    for i, exp in enumerate(expected, start=1):
        ratio = proportional(ci_polynomial(game, i), exp)
        if ratio is None:
            raise AssertionError(f"equation {i} is not proportional to its design")
        scalars.append(ratio)
    return tuple(scalars)


# ---- variety encoder ------------------------------------------------------


@dataclass(frozen=True)
class _Plan:
    """One candidate encoding layout before slot assignment."""

    n: int
    m: int
    permutation: tuple  # position p holds ambient variable permutation[p-1]
    substitution: str
    degrees: tuple  # chain length per position
    delta: int
    blocks: tuple  # block labels, index b-1
    equations: tuple  # (label, MultiPoly) for the sigma-slot equations


def _build_plan(target: TargetVariety, permutation, substitution) -> _Plan:
    n = target.n
    degrees = tuple(
        target.variable_degree(permutation[p - 1]) for p in range(1, n + 1)
    )
    delta = sum(degrees)
    offsets = [0]
    for d in degrees:
        offsets.append(offsets[-1] + d)
    blocks = []
    for p in range(1, n + 1):
        for j in range(1, degrees[p - 1] + 1):
            blocks.append(("chain", p, j))
    for p in range(1, n):
        blocks.append(("base", p))

    def chain_var(p: int, j: int) -> MultiPoly:
        return MultiPoly.variable(("s", offsets[p - 1] + j, 1))

    def base_var(p: int) -> MultiPoly:
        if p == n:
            return MultiPoly.variable(_T11)
        return MultiPoly.variable(("s", delta + p, 1))

    equations = []
    for p in range(1, n + 1):
        for j in range(1, degrees[p - 1] + 1):
            prev = chain_var(p, j - 1) if j > 1 else MultiPoly.constant(1)
            equations.append((("chain", p, j), chain_var(p, j) - base_var(p) * prev))
    position_of = {permutation[p - 1]: p for p in range(1, n + 1)}
    for k, g in enumerate(target.polys, start=1):
        out = MultiPoly.zero()
        for mono, coeff in g.terms.items():
            factor = MultiPoly.constant(coeff)
            for v, e in mono:
                p = position_of[v[1]]
                if e == 1 and (substitution == "baseVariable" or degrees[p - 1] == 0):
                    factor = factor * base_var(p)
                else:
                    factor = factor * chain_var(p, e)
            out = out + factor
        equations.append((("target", k), out))
    for k in range(target.m + 1, n):
        equations.append((("zero", k), MultiPoly.zero()))
    return _Plan(
        n, target.m, tuple(permutation), substitution, degrees, delta,
        tuple(blocks), tuple(equations),
    )


def _equation_blocks(poly: MultiPoly) -> set:
    return {v[1] for v in poly.variables() if v[0] == "s"}


def _assign_slots(plan: _Plan):
    """Slot -> equation-index bijection avoiding own blocks, or None.

    Tries the cyclic layout first (each variable's chain equations at the
    next chain-bearing variable's slots, targets right after the chains),
    then falls back to maximum bipartite matching.
    """
    n_slots = plan.delta + plan.n - 1
    eq_blocks = [_equation_blocks(p) for _, p in plan.equations]
    offsets = [0]
    for d in plan.degrees:
        offsets.append(offsets[-1] + d)
    chain_index = {}
    for idx, (label, _) in enumerate(plan.equations):
        if label[0] == "chain":
            chain_index[label[1:]] = idx

    def valid(assign: dict) -> bool:
        return len(assign) == n_slots and all(
            slot not in eq_blocks[idx] for slot, idx in assign.items()
        )

    active = [p for p in range(1, plan.n + 1) if plan.degrees[p - 1] > 0]
    if all(
        plan.degrees[p - 1] == plan.degrees[q - 1]
        for p, q in zip(active, active[1:] + active[:1])
    ):
        assign = {}
        for a, p in enumerate(active):
            q = active[(a + 1) % len(active)]
            for j in range(1, plan.degrees[p - 1] + 1):
                assign[offsets[q - 1] + j] = chain_index[(p, j)]
        free = iter(
            idx
            for idx, (label, _) in enumerate(plan.equations)
            if label[0] != "chain"
        )
        for slot in range(plan.delta + 1, n_slots + 1):
            assign[slot] = next(free)
        if valid(assign):
            return assign

    adjacency = {
        idx: [s for s in range(1, n_slots + 1) if s not in eq_blocks[idx]]
        for idx in range(len(plan.equations))
    }
    match = maximum_matching(adjacency)
    if len(match) == len(plan.equations):
        assign = {slot: idx for idx, slot in match.items()}
        if valid(assign):
            return assign
    return None


def _homogenize_sigma(poly: MultiPoly, slot: int, n_blocks: int) -> MultiPoly:
    """Pad each monomial to degree 1 in every sigma block except its own slot
    and degree 1 in tau, using sigma_2 and tau_22 factors."""
    out = MultiPoly.zero()
    for mono, coeff in poly.terms.items():
        present = set()
        tau_deg = 0
        for v, e in mono:
            if v[0] == "s":
                present.add(v[1])
            elif v[0] == "t":
                tau_deg += e
        pairs = list(mono)
        for b in range(1, n_blocks + 1):
            if b != slot and b not in present:
                pairs.append((("s", b, 2), 1))
        if tau_deg < 1:
            pairs.append((_T22, 1 - tau_deg))
        out = out + MultiPoly.monomial(pairs, coeff)
    return out


def encode_variety(target: TargetVariety):
    """A (delta+n+1)-player game realizing the target variety.

    Candidate layouts are tried in a deterministic order: ambient variable
    permutations (identity first), each with the plain power-chain
    substitution and then the variant sending degree-1 powers directly to the
    base variable.  The first layout admitting a valid slot assignment wins;
    MatchingFailure is raised when none does.
    """
    n = target.n
    for permutation in itertools.permutations(range(1, n + 1)):
        for substitution in ("chain", "baseVariable"):
            plan = _build_plan(target, permutation, substitution)
            assign = _assign_slots(plan)
            if assign is None:
                continue
            return _realize(target, plan, assign)
    raise MatchingFailure(
        "no slot relabeling avoids every equation's own variable block"
    )


def _realize(target: TargetVariety, plan: _Plan, assign: dict):
    n_blocks = plan.delta + plan.n - 1
    N = plan.delta + plan.n + 1
    system = [
        _homogenize_sigma(plan.equations[assign[slot]][1], slot, n_blocks)
        for slot in range(1, n_blocks + 1)
    ]
    system.append(_tau_form_poly(1, n_blocks))
    system.append(_tau_form_poly(2, n_blocks))
    game = solve_preimage(N, system)

    dictionary = {}
    for p in range(1, plan.n + 1):
        v = plan.permutation[p - 1]
        base_name = "t11" if p == plan.n else f"s{plan.delta + p}_1"
        dictionary[f"x{v}"] = base_name
        offset = sum(plan.degrees[: p - 1])
        for j in range(1, plan.degrees[p - 1] + 1):
            dictionary[f"x{v}^{j}"] = f"s{offset + j}_1"
    slots = tuple(
        plan.equations[assign[s]][0] for s in range(1, n_blocks + 1)
    ) + (("tauForm", 1), ("tauForm", 2))
    scalars = _roundtrip_scalars(game, system)
    cert = EncodingCertificate(
        kind="variety",
        players=N,
        permutation=plan.permutation,
        substitution=plan.substitution,
        blocks=plan.blocks,
        slots=slots,
        dictionary=dictionary,
        scalars=scalars,
    )
    return game, cert


# ---- decoding and verification --------------------------------------------


def decode_open_subset(game: Game) -> list[MultiPoly]:
    """The dehomogenized defining equations on the distinguished affine chart."""
    return [f.dehomogenize() for f in ci_system(game)]


def verify_isomorphism(target: TargetVariety, game: Game, cert: EncodingCertificate,
                       samples) -> dict:
    """Transport rational sample points of the target through the certificate
    and check every dehomogenized game equation vanishes exactly; then read
    the ambient coordinates back and confirm the round trip is the identity.
    """
    if cert.kind != "variety":
        raise ValueError(f"cannot verify a certificate of kind {cert.kind!r}")
    n = target.n
    degrees = tuple(
        target.variable_degree(cert.permutation[p - 1]) for p in range(1, n + 1)
    )
    delta = sum(degrees)
    equations = decode_open_subset(game)
    reports = []
    for raw in samples:
        sample = [parse_rational(x) for x in raw]
        if len(sample) != n:
            raise ValueError(f"sample {raw} has wrong length")
        for k, g in enumerate(target.polys, start=1):
            value = g.evaluate({("x", i): sample[i - 1] for i in range(1, n + 1)})
            if value:
                raise ValueError(
                    f"sample {raw} is not on the variety: polynomial {k} "
                    f"evaluates to {value}"
                )
        position_value = {
            p: sample[cert.permutation[p - 1] - 1] for p in range(1, n + 1)
        }
        assignment = {}
        for b, label in enumerate(cert.blocks, start=1):
            if label[0] == "chain":
                _, p, j = label
                assignment[("s", b, 1)] = position_value[p] ** j
            else:
                assignment[("s", b, 1)] = position_value[label[1]]
            assignment[("s", b, 2)] = Fraction(1)
        v_last = position_value[n]
        assignment[_T11] = v_last
        assignment[_T12] = -v_last
        assignment[_T21] = -v_last
        assignment[_T22] = Fraction(1)
        for slot, eq in enumerate(equations, start=1):
            value = eq.evaluate(assignment)
            if value:
                raise TransportFailure(
                    f"equation at slot {slot} evaluates to {value} "
                    f"on transported sample {raw}"
                )
        recovered = [None] * n
        for p in range(1, n):
            recovered[cert.permutation[p - 1] - 1] = assignment[("s", delta + p, 1)]
        recovered[cert.permutation[n - 1] - 1] = assignment[_T11]
        if recovered != sample:
            raise TransportFailure(
                f"reverse transport gave {recovered}, expected {sample}"
            )
        reports.append(
            {
                "sample": [str(x) for x in sample],
                "equationsChecked": len(equations),
                "residual": "0",
                "roundTrip": "identity",
            }
        )
    return {"samples": len(reports), "allExact": True, "details": reports}
