"""Ratio of the stable and co-stable chainsaw partition functions.

For framing (2, 1) the ratio Z / Z-check is compared with the infinite product
Phi and with the tabulated form F_3(t p_1) / F_3(t p_2).

    python3 demos/chainsaw_ratio.py [order]
"""

import sys

from artifact import chainsaw as cs
from artifact.scalars import sample_context


def main(order: int = 4) -> None:
    r = (2, 1)
    ctx = sample_context(2, r, order, seed=3)
    Z = cs.z_adj(ctx, order, cs.STABLE)
    Zc = cs.z_adj(ctx, order, cs.COSTABLE)
    ratio = Z / Zc
    print(f"framing {r}, total p-order {order}")
    for v in sorted(ratio.coeffs):
        if sum(v) <= 2:
            print(f"  [p^{v}] Z/Z-check = {ratio[v]}")
    print("  equals Phi:", ratio == cs.phi_ratio(2, r, order, ctx))
    print("  equals the tabulated product:", cs.verify_example_table(r, order, ctx).passed)


if __name__ == "__main__":
    main(int(sys.argv[1]) if len(sys.argv) > 1 else 4)
