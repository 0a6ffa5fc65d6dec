"""Nekrasov factors in exact arithmetic.

Evaluates the row and box forms of N^{(k|N)}_{lam,mu}(u) at rational points and
lists the (q, kappa) exponents of the factors 1 - u q^a kappa^b.
"""

from fractions import Fraction

from artifact.nekrasov import box_exponents, nek_box, nek_row, row_exponents
from artifact.scalars import Mode, sample_context


def main() -> None:
    ctx = sample_context(1, (1,), 1, seed=2, mode=Mode.EXACT)
    u = Fraction(3, 5)
    lam, mu = (2, 1), (1,)
    for N in (1, 2):
        for k in range(N):
            rows = sorted(row_exponents(lam, mu, k, N))
            boxes = sorted(box_exponents(lam, mu, k, N))
            print(f"N={N} k={k} lam={lam} mu={mu}")
            print(f"  row exponents: {rows}")
            print(f"  box exponents: {boxes}")
            print(f"  equal values: {nek_row(lam, mu, k, N, u, ctx) == nek_box(lam, mu, k, N, u, ctx)}")


if __name__ == "__main__":
    main()
