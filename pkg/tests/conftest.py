import json
import pathlib

import numpy as np
import pytest

from spohnci.equations import nash_polynomial
from spohnci.games import Game, game_from_json

DATA = pathlib.Path(__file__).parent / "data"


@pytest.fixture(scope="session")
def example_game3() -> Game:
    """The reference 3-player game used throughout the examples."""
    with open(DATA / "game3.json") as fh:
        return game_from_json(json.load(fh))


@pytest.fixture(scope="session")
def example_game3_path() -> str:
    return str(DATA / "game3.json")


def nash_oracle3(game: Game, grid=None, tol: float = 1e-9) -> list:
    """Independent brute-force Nash solver: Newton from a grid of real starts.

    Returns the deduplicated real solutions (s1, s2, s3) of the dehomogenized
    Nash system, sorted by s1.
    """
    G = [nash_polynomial(game, i).dehomogenize() for i in (1, 2, 3)]
    variables = [("s", 1, 1), ("s", 2, 1), ("s", 3, 1)]
    jac = [[f.derivative(v) for v in variables] for f in G]
    if grid is None:
        grid = np.linspace(-3.0, 3.0, 7)
    found = []
    for a in grid:
        for b in grid:
            for c in grid:
                x = np.array([a, b, c], dtype=float)
                for _ in range(80):
                    assign = dict(zip(variables, x))
                    fx = np.array([f.evaluate_float(assign) for f in G])
                    if np.max(np.abs(fx)) < 1e-13:
                        break
                    J = np.array(
                        [[d.evaluate_float(assign) for d in row] for row in jac]
                    )
                    try:
                        step = np.linalg.solve(J, fx)
                    except np.linalg.LinAlgError:
                        break
                    x = x - step
                    if np.max(np.abs(step)) < 1e-14:
                        break
                else:
                    continue
                assign = dict(zip(variables, x))
                resid = max(abs(f.evaluate_float(assign)) for f in G)
                scale = max(1.0, float(np.max(np.abs(x))) ** 2)
                if resid > tol * scale:
                    continue
                if not any(np.max(np.abs(x - y)) < 1e-6 for y in found):
                    found.append(x)
    return sorted((tuple(x) for x in found), key=lambda v: v[0])
