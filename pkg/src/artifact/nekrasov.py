"""The Nekrasov factor N^{(k|N)}_{lam,mu}(u | q, kappa) in row and box form.

Both forms are finite products of factors ``1 - u q^a kappa^b``. The exponent
pairs ``(a, b)`` depend only on the partitions, ``k`` and ``N``, so they are
computed once and cached; evaluation then only multiplies field elements.
"""

from __future__ import annotations

from collections import Counter
from functools import lru_cache

from .combinatorics import Partition, arm, boxes, leg, part
from .scalars import GF, PRIME, EvalContext, Scalar, mode_of, one

Exponents = tuple[tuple[int, int], ...]


@lru_cache(maxsize=None)
def row_exponents(lam: Partition, mu: Partition, k: int, N: int) -> Exponents:
    """(q, kappa) exponents of the row form, Pochhammers expanded."""
    out: list[tuple[int, int]] = []
    top = max(len(lam), len(mu))
    for lp in range(1, top + 1):
        d_lam = part(lam, lp) - part(lam, lp + 1)
        d_mu = part(mu, lp) - part(mu, lp + 1)
        for l in range(1, lp + 1):
            if d_lam and (lp - l - k) % N == 0:
                a = -part(mu, l) + part(lam, lp + 1)
                out.extend((a + i, lp - l) for i in range(d_lam))
            if d_mu and (l - lp - 1 - k) % N == 0:
                a = part(lam, l) - part(mu, lp)
                out.extend((a + i, l - lp - 1) for i in range(d_mu))
    return tuple(out)


@lru_cache(maxsize=None)
def box_exponents(lam: Partition, mu: Partition, k: int, N: int) -> Exponents:
    """(q, kappa) exponents of the box form, via arms and legs."""
    out: list[tuple[int, int]] = []
    for b in boxes(lam):
        L = leg(lam, b)
        if (L - k) % N == 0:
            out.append((-arm(mu, b) - 1, L))
    for b in boxes(mu):
        L = leg(mu, b)
        if (-L - 1 - k) % N == 0:
            out.append((arm(lam, b), -L - 1))
    return tuple(out)


@lru_cache(maxsize=4096)
def _gf_pow(base: int, e: int) -> int:
    return pow(base, e, PRIME)


def evaluate_factors(exps: Exponents, u: Scalar, q: Scalar, kappa: Scalar) -> Scalar:
    """prod over (a, b) of (1 - u q^a kappa^b)."""
    if isinstance(u, GF):
        # hot path: plain integer arithmetic modulo the prime
        uv, qv, kv = u.v, GF._lift(q), GF._lift(kappa)
        acc = 1
        for a, b in exps:
            w = uv * _gf_pow(qv, a) % PRIME * _gf_pow(kv, b)
            acc = acc * (1 - w) % PRIME
        return GF(acc)
    acc = one(mode_of(u))
    for a, b in exps:
        acc = acc * (1 - u * q ** a * kappa ** b)
    return acc


def nek_row(lam: Partition, mu: Partition, k: int, N: int, u: Scalar, ctx: EvalContext) -> Scalar:
    """Row-form Nekrasov factor; the authoritative implementation."""
    return evaluate_factors(row_exponents(tuple(lam), tuple(mu), k % N, N), u, ctx.q, ctx.kappa)


def nek_box(lam: Partition, mu: Partition, k: int, N: int, u: Scalar, ctx: EvalContext) -> Scalar:
    """Box-form Nekrasov factor in terms of arm and leg lengths."""
    return evaluate_factors(box_exponents(tuple(lam), tuple(mu), k % N, N), u, ctx.q, ctx.kappa)


def same_factors(lam: Partition, mu: Partition, k: int, N: int) -> bool:
    """Whether both forms expand to the same multiset of factors."""
    return Counter(row_exponents(lam, mu, k % N, N)) == Counter(box_exponents(lam, mu, k % N, N))


def nek_full(lam: Partition, mu: Partition, u: Scalar, ctx: EvalContext) -> Scalar:
    """N^{(0|1)}, the uncolored factor."""
    return nek_row(lam, mu, 0, 1, u, ctx)


__all__ = [
    "row_exponents",
    "box_exponents",
    "evaluate_factors",
    "nek_row",
    "nek_box",
    "same_factors",
    "nek_full",
]
