"""Command-line front end: JSON in, JSON/CSV/markdown out, Macaulay2 export.

Every subcommand prints a deterministic payload for fixed inputs and seeds.
Domain errors are reported as {"error": ...} with exit code 1; usage errors
exit with code 2 (argparse).  SPOHNCI_THREADS caps the worker count for the
parallel table computation.
"""

from __future__ import annotations

import argparse
import csv
import io
import json
import os
import sys
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass
from fractions import Fraction

from .equations import DegenerateGame, ci_system, degenerate_players
from .euler import invariants_summary, invariants_table
from .games import Game, GameFormatError, game_from_json, all_profiles
from .linmap import NotInImage, base_locus_check, image_dimension
from .poly import poly_to_json, var_name
from .solver import (
    DegenerateFiber,
    EliminationCollapse,
    Tolerance,
    UnluckyHyperplane,
    eliminant_degree3,
    fiber_sample3,
    jacobian_spot_check,
    totally_mixed_nash3,
)
from .universality import (
    MatchingFailure,
    TransportFailure,
    certificate_from_json,
    certificate_to_json,
    encode_variety,
    target_from_json,
    verify_isomorphism,
)

_DOMAIN_ERRORS = (
    GameFormatError,
    DegenerateGame,
    DegenerateFiber,
    EliminationCollapse,
    UnluckyHyperplane,
    NotInImage,
    MatchingFailure,
    TransportFailure,
    ValueError,
    KeyError,
    OSError,
    json.JSONDecodeError,
)


@dataclass(frozen=True)
class CommandResult:
    command: str
    payload: dict
    exit_code: int
    text: str | None = None  # non-JSON output (csv, markdown, scripts)


def max_workers() -> int:
    raw = os.environ.get("SPOHNCI_THREADS", "")
    if raw.strip():
        return max(1, int(raw))
    return min(4, os.cpu_count() or 1)


def _load_game(path: str) -> Game:
    with open(path) as fh:
        return game_from_json(json.load(fh))


def _jsonable(x):
    if isinstance(x, Fraction):
        return str(x)
    if isinstance(x, complex):
        return {"re": x.real, "im": x.imag}
    if isinstance(x, float):
        return x
    if isinstance(x, dict):
        return {str(k): _jsonable(v) for k, v in x.items()}
    if isinstance(x, (list, tuple)):
        return [_jsonable(v) for v in x]
    if hasattr(x, "item") and not isinstance(x, (int, float, str, bool)):
        return _jsonable(x.item())  # numpy scalars
    return x


def _point_payload(pt) -> dict:
    return {
        "sigma": _jsonable(pt.sigma),
        "tau": _jsonable(pt.tau),
        "p": _jsonable(pt.p),
        "residuals": _jsonable(pt.residuals),
        "flags": pt.flags,
    }


# ---- subcommand handlers --------------------------------------------------


def _cmd_equations(args) -> CommandResult:
    game = _load_game(args.game)
    eqs = ci_system(game)
    if args.dehomogenize:
        eqs = [f.dehomogenize() for f in eqs]
    payload = {
        "players": game.n,
        "dehomogenized": bool(args.dehomogenize),
        "equations": [
            {"player": i, "text": str(f), "terms": poly_to_json(f)}
            for i, f in enumerate(eqs, start=1)
        ],
        "degeneratePlayers": degenerate_players(game),
    }
    return CommandResult("equations", payload, 0)


def _cmd_invariants(args) -> CommandResult:
    return CommandResult("invariants", invariants_summary(args.n), 0)


def _cmd_table(args) -> CommandResult:
    ns = list(range(2, args.max_n + 1))
    with ThreadPoolExecutor(max_workers=max_workers()) as pool:
        rows = list(pool.map(invariants_summary, ns))
    if args.format == "json":
        return CommandResult("table", {"rows": rows}, 0)
    if args.format == "csv":
        buf = io.StringIO()
        writer = csv.writer(buf)
        for r in rows:
            writer.writerow([r["n"], r["genus"], r["degree"]])
        return CommandResult("table", {"rows": rows}, 0, text=buf.getvalue().rstrip("\n"))
    lines = ["| n | genus | degree |", "| --- | --- | --- |"]
    lines += [f"| {r['n']} | {r['genus']} | {r['degree']} |" for r in rows]
    return CommandResult("table", {"rows": rows}, 0, text="\n".join(lines))


def _cmd_rank(args) -> CommandResult:
    return CommandResult("rank", image_dimension(args.n), 0)


def _cmd_base_locus(args) -> CommandResult:
    reports = [base_locus_check(args.n, args.n - 1), base_locus_check(args.n, args.n)]
    ok = all(r["allVanish"] and r["witnessNonzero"] for r in reports)
    return CommandResult("base-locus", {"n": args.n, "verified": ok, "reports": reports}, 0)


def _cmd_encode(args) -> CommandResult:
    with open(args.target) as fh:
        target = target_from_json(json.load(fh))
    game, cert = encode_variety(target)
    from .games import game_to_json

    with open(args.output, "w") as fh:
        json.dump(game_to_json(game), fh, indent=2)
        fh.write("\n")
    payload = {
        "players": game.n,
        "gameFile": args.output,
        "certificate": certificate_to_json(cert),
    }
    if args.certificate:
        with open(args.certificate, "w") as fh:
            json.dump(certificate_to_json(cert), fh, indent=2)
            fh.write("\n")
        payload["certificateFile"] = args.certificate
    return CommandResult("encode", payload, 0)


def _cmd_verify(args) -> CommandResult:
    with open(args.target) as fh:
        target = target_from_json(json.load(fh))
    game = _load_game(args.game)
    with open(args.certificate) as fh:
        cert = certificate_from_json(json.load(fh))
    with open(args.samples) as fh:
        samples = json.load(fh)
    report = verify_isomorphism(target, game, cert, samples)
    return CommandResult("verify", report, 0)


def _cmd_nash(args) -> CommandResult:
    game = _load_game(args.game)
    tol = Tolerance(eps=args.eps)
    points = totally_mixed_nash3(game, tol, include_complex=args.include_complex)
    payload = {
        "count": len(points),
        "includeComplex": bool(args.include_complex),
        "points": [_point_payload(pt) for pt in points],
    }
    return CommandResult("nash", payload, 0)


def _parse_grid(spec: str):
    parts = spec.split(":")
    if len(parts) != 3:
        raise ValueError("grid must be a:b:steps")
    a, b = Fraction(parts[0]), Fraction(parts[1])
    steps = int(parts[2])
    if steps < 1:
        raise ValueError("steps must be >= 1")
    if steps == 1:
        return [a]
    return [a + (b - a) * k / (steps - 1) for k in range(steps)]


def _cmd_sample(args) -> CommandResult:
    game = _load_game(args.game)
    grid = _parse_grid(args.grid)
    points = fiber_sample3(game, grid, Tolerance(eps=args.eps))
    payload = {"gridSize": len(grid), "count": len(points),
               "points": [_point_payload(pt) for pt in points]}
    if args.csv:
        profiles = ["".join(map(str, p)) for p in all_profiles(3)]
        with open(args.csv, "w", newline="") as fh:
            writer = csv.writer(fh)
            writer.writerow(
                ["t", "tau11", "tau12", "tau21", "tau22"]
                + [f"p{s}" for s in profiles]
                + ["maxSpohn", "maxFlattening", "onSpohn", "onSegre", "inSimplex"]
            )
            for pt in points:
                writer.writerow(
                    [float(pt.sigma[0])]
                    + [float(x) for x in pt.tau]
                    + [float(x) for x in pt.p]
                    + [float(pt.residuals["maxSpohn"]),
                       float(pt.residuals["maxFlattening"]),
                       int(pt.flags["onSpohn"]), int(pt.flags["onSegre"]),
                       int(pt.flags["inSimplex"])]
                )
        payload["csvFile"] = args.csv
    return CommandResult("sample", payload, 0)


def _cmd_degree_witness(args) -> CommandResult:
    game = _load_game(args.game)
    degree = eliminant_degree3(game, seed=args.seed)
    return CommandResult("degree-witness", {"degree": degree, "seed": args.seed}, 0)


def _cmd_jacobian(args) -> CommandResult:
    game = _load_game(args.game)
    grid = _parse_grid(args.grid)
    points = fiber_sample3(game, grid, Tolerance(eps=args.eps))
    report = jacobian_spot_check(game, points, Tolerance(eps=args.eps))
    return CommandResult("jacobian", report, 0)


def _cmd_export_m2(args) -> CommandResult:
    game = _load_game(args.game)
    script = export_macaulay2(game)
    if args.output:
        with open(args.output, "w") as fh:
            fh.write(script)
        return CommandResult("export-m2", {"scriptFile": args.output}, 0)
    return CommandResult("export-m2", {}, 0, text=script)


# ---- Macaulay2 export -----------------------------------------------------


def _m2_name(v) -> str:
    if v[0] == "s":
        return f"s{v[1]}{v[2]}"
    if v[0] == "t":
        return f"t{v[1]}{v[2]}"
    if v[0] == "p":
        return "p" + "".join(str(j) for j in v[1])
    raise ValueError(f"no Macaulay2 name for {var_name(v)}")


def _m2_poly(f) -> str:
    parts = []
    for m, c in f.sorted_terms():
        mono = "*".join(
            _m2_name(v) if e == 1 else f"{_m2_name(v)}^{e}" for v, e in m
        )
        coeff = f"({c.numerator}/{c.denominator})" if c.denominator != 1 else str(c)
        parts.append(coeff if not mono else f"{coeff}*{mono}")
    return " + ".join(parts).replace("+ -", "- ")


def export_macaulay2(game: Game) -> str:
    """A standalone Macaulay2 script computing dim, degree and genus of the
    curve cut out by the game's defining equations (external cross-check)."""
    bad = degenerate_players(game)
    if bad:
        raise DegenerateGame(f"defining polynomial vanishes for players {bad}")
    n = game.n
    eqs = ci_system(game)
    profiles = all_profiles(n)
    p_names = ", ".join("p" + "".join(map(str, p)) for p in profiles)
    lines = ["-- conditional-independence equilibrium curve of a binary game",
             f"-- players: {n}"]
    if n == 2:
        lines.append(f"P = QQ[{p_names}];")
        gens = ", ".join(_m2_poly(f) for f in eqs)
        lines.append(f"J = ideal({gens});")
    else:
        s_names = [f"s{i}{j}" for i in range(1, n - 1) for j in (1, 2)]
        t_names = ["t11", "t12", "t21", "t22"]
        degrees = []
        for i in range(1, n - 1):
            unit = [0] * (n - 1)
            unit[i - 1] = 1
            degrees += [f"{{{','.join(map(str, unit))}}}"] * 2
        tau_unit = [0] * (n - 1)
        tau_unit[-1] = 1
        degrees += [f"{{{','.join(map(str, tau_unit))}}}"] * 4
        lines.append(
            f"S = QQ[{', '.join(s_names + t_names)}, "
            f"Degrees => {{{', '.join(degrees)}}}];"
        )
        gens = ", ".join(_m2_poly(f) for f in eqs)
        lines.append(f"I = ideal({gens});")
        lines.append(f"P = QQ[{p_names}];")
        images = ", ".join(
            "p" + "".join(map(str, p)) + " => "
            + "*".join([f"s{l}{p[l - 1]}" for l in range(1, n - 1)]
                       + [f"t{p[n - 2]}{p[n - 1]}"])
            for p in profiles
        )
        lines.append(f"segre = map(S, P, {{{images}}});")
        lines.append("J = preimage(segre, I);")
    lines += [
        "C = Proj(P/J);",
        '<< "dim = " << dim C << endl;',
        '<< "degree = " << degree C << endl;',
        '<< "genus = " << genus C << endl;',
        "",
    ]
    return "\n".join(lines)


# ---- argument parsing and dispatch ---------------------------------------


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="spohnci",
        description="Equilibrium curves of binary games: equations, "
        "invariants, encodings and numerical samples.",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("equations", help="defining polynomials of a game")
    p.add_argument("game")
    p.add_argument("--dehomogenize", action="store_true")

    p = sub.add_parser("invariants", help="degree, genus, Euler characteristic")
    p.add_argument("--n", type=int, required=True)

    p = sub.add_parser("table", help="invariants for n = 2..N")
    p.add_argument("--max-n", type=int, required=True)
    p.add_argument("--format", choices=["json", "csv", "markdown"], default="json")

    p = sub.add_parser("rank", help="ranks of the payoff-to-coefficient maps")
    p.add_argument("--n", type=int, required=True)

    p = sub.add_parser("base-locus", help="verify the base locus of the tau systems")
    p.add_argument("--n", type=int, required=True)

    p = sub.add_parser("encode", help="encode a variety as a game")
    p.add_argument("target")
    p.add_argument("-o", "--output", required=True)
    p.add_argument("--certificate")

    p = sub.add_parser("verify", help="verify an encoding on sample points")
    p.add_argument("target")
    p.add_argument("game")
    p.add_argument("certificate")
    p.add_argument("--samples", required=True)

    p = sub.add_parser("nash", help="totally mixed Nash solutions (3 players)")
    p.add_argument("game")
    p.add_argument("--eps", type=float, default=1e-9)
    p.add_argument("--include-complex", action="store_true")

    p = sub.add_parser("sample", help="sample the curve over a grid (3 players)")
    p.add_argument("game")
    p.add_argument("--grid", default="-2:2:21")
    p.add_argument("--csv")
    p.add_argument("--eps", type=float, default=1e-9)

    p = sub.add_parser("degree-witness", help="hyperplane-section degree (3 players)")
    p.add_argument("game")
    p.add_argument("--seed", type=int, default=1)

    p = sub.add_parser("jacobian", help="numerical smoothness evidence (3 players)")
    p.add_argument("game")
    p.add_argument("--grid", default="-2:2:21")
    p.add_argument("--eps", type=float, default=1e-9)

    p = sub.add_parser("export-m2", help="Macaulay2 cross-check script")
    p.add_argument("game")
    p.add_argument("-o", "--output")
    return parser


_HANDLERS = {
    "equations": _cmd_equations,
    "invariants": _cmd_invariants,
    "table": _cmd_table,
    "rank": _cmd_rank,
    "base-locus": _cmd_base_locus,
    "encode": _cmd_encode,
    "verify": _cmd_verify,
    "nash": _cmd_nash,
    "sample": _cmd_sample,
    "degree-witness": _cmd_degree_witness,
    "jacobian": _cmd_jacobian,
    "export-m2": _cmd_export_m2,
}


def run_command(argv) -> CommandResult:
    args = build_parser().parse_args(argv)
    try:
        return _HANDLERS[args.command](args)
    except _DOMAIN_ERRORS as exc:
        return CommandResult(args.command, {"error": str(exc)}, 1)


def main(argv=None) -> int:
    result = run_command(sys.argv[1:] if argv is None else argv)
    if result.text is not None:
        print(result.text)
    else:
        print(json.dumps(_jsonable(result.payload), indent=2))
    return result.exit_code


if __name__ == "__main__":
    sys.exit(main())
