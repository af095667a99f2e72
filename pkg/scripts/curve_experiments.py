#!/usr/bin/env python3
"""Degree witness, solution count and smoothness evidence for a 3-player game.

Usage: python3 scripts/curve_experiments.py [game.json]

Defaults to the reference game shipped with the tests.
"""

import json
import pathlib
import sys
from fractions import Fraction

from spohnci.games import game_from_json
from spohnci.solver import (
    eliminant_degree3,
    fiber_sample3,
    jacobian_spot_check,
    totally_mixed_nash3,
)

DEFAULT = pathlib.Path(__file__).parent.parent / "tests" / "data" / "game3.json"


def main() -> int:
    path = sys.argv[1] if len(sys.argv) > 1 else str(DEFAULT)
    with open(path) as fh:
        game = game_from_json(json.load(fh))
    print(f"game: {path}")
    print(f"hyperplane-section eliminant degree: {eliminant_degree3(game)}")
    real = totally_mixed_nash3(game)
    both = totally_mixed_nash3(game, include_complex=True)
    print(f"totally mixed solutions: {len(real)} real, {len(both)} over C")
    for pt in both:
        print(f"  s1 = {pt.sigma[0]}, flags = {pt.flags}")
    grid = [Fraction(k, 2) for k in range(-4, 5)]
    points = fiber_sample3(game, grid)
    report = jacobian_spot_check(game, points)
    print(f"sampled {len(points)} curve points over {len(grid)} fibers; "
          f"corank 1 at {report['corank1Count']}/{report['checked']}")
    return 0


if __name__ == "__main__":
    sys.exit(main())
