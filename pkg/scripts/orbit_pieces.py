"""Piece sizes of truncated-orbit decompositions as the depth grows.

    python scripts/orbit_pieces.py --max-depth 7

For the Magnus pair over Q_2 and the equal-characteristic pair over Q(t),
prints how many interior orbit points land in each of the four pieces, and
confirms both reassembly identities at every depth.
"""

import argparse
from fractions import Fraction

from napdec.generators import build_equal_char, build_magnus
from napdec.paradox import build_orbit_decomposition
from napdec.valued_fields import FieldCtx


def main():
    parser = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    parser.add_argument("--max-depth", type=int, default=6)
    args = parser.parse_args()
    cases = [
        ("magnus Q_2", build_magnus(FieldCtx.padic(2), 1, 2, Fraction(1, 2)), (1, 0)),
        ("equal_char Q(t)", build_equal_char(FieldCtx.tadic(0), 1), (1, 1)),
    ]
    print(f"{'certificate':<18}{'depth':>6}{'interior':>10}{'P1':>7}{'P2':>7}{'P3':>7}{'P4':>7}  ok")
    for label, cert, base in cases:
        for depth in range(1, args.max_depth + 1):
            d = build_orbit_decomposition(cert.ctx, cert, base, depth)
            sizes = d.piece_sizes()
            print(f"{label:<18}{depth:>6}{d.interior:>10}"
                  + "".join(f"{sizes[p]:>7}" for p in ("P1", "P2", "P3", "P4"))
                  + f"  {d.ok}")


if __name__ == "__main__":
    main()
