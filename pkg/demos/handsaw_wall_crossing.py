"""Adjoint and fundamental wall-crossing for the A_1 handsaw.

Computes both sides of the adjoint and fundamental wall-crossing formulas for a
few framings at a random prime-field point and prints the verdicts.

    python3 demos/handsaw_wall_crossing.py [order]
"""

import sys

from artifact import handsaw as hs
from artifact.handsaw import MINUS, PLUS, HandsawConfig


def main(order: int = 5) -> None:
    for r0, r1 in [(1, 0), (1, 1), (2, 1), (1, 2)]:
        cfg = HandsawConfig(r0, r1)
        ctx = hs.hs_context(cfg, order, seed=1)
        zp = hs.hs_z_adj_explicit(cfg, PLUS, order, ctx)
        zm = hs.hs_z_adj_explicit(cfg, MINUS, order, ctx)
        adj = hs.verify_main1(cfg, order, ctx)
        fund = hs.verify_main2(cfg, order, ctx)
        print(f"(r0, r1) = ({r0}, {r1})")
        print(f"  Z+ p^1 coefficient: {zp[(1,)]}")
        print(f"  Z- p^1 coefficient: {zm[(1,)]}")
        print(f"  adjoint wall-crossing to order {order}: {adj.verdict}")
        print(f"  fundamental wall-crossing to order {order}: {fund.verdict}")


if __name__ == "__main__":
    main(int(sys.argv[1]) if len(sys.argv) > 1 else 5)
