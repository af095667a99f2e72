#!/usr/bin/env python3
"""Encode the unit circle as a 7-player game and verify the isomorphism.

Prints the defining equations of the resulting game and transports a few
exact rational points of the circle through the certificate.
"""

import sys

from spohnci.equations import ci_system
from spohnci.poly import MultiPoly
from spohnci.universality import TargetVariety, encode_variety, verify_isomorphism


def main() -> int:
    x1 = MultiPoly.variable(("x", 1))
    x2 = MultiPoly.variable(("x", 2))
    target = TargetVariety(2, (x1 * x1 + x2 * x2 - 1,))
    game, cert = encode_variety(target)
    print(f"players: {game.n}")
    print(f"dictionary: {cert.dictionary}")
    for i, f in enumerate(ci_system(game), start=1):
        print(f"F_{i} = {f}")
    samples = [["1", "0"], ["0", "-1"], ["3/5", "4/5"], ["-5/13", "12/13"]]
    report = verify_isomorphism(target, game, cert, samples)
    print(f"verified {report['samples']} rational points, "
          f"allExact={report['allExact']}")
    return 0


if __name__ == "__main__":
    sys.exit(main())
