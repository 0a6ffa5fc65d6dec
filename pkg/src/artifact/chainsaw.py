"""Chainsaw (affine Laumon) partition functions and their identity checks.

Weights are integer exponent vectors over the symbol basis
``(s, kappa, e_k..., mu_k..., nu_k...)`` where ``s`` stands for q^{1/2}, so a
power q^n is stored as s^{2n}. A character is a signed multiset of weights.

Stability is encoded as ``STABLE = -1`` (affine Laumon space, series Z) and
``COSTABLE = +1`` (its dual, series Z-check).
"""

from __future__ import annotations

import itertools
import time
from collections import Counter
from functools import lru_cache
from typing import Iterable, Mapping, Sequence

from .combinatorics import PartitionTuple, dimension_vector, enumerate_tuples
from .nekrasov import nek_row
from .report import Mismatch, VerdictReport, series_mismatch, verdict
from .scalars import (
    EvalContext,
    Key,
    LimitKind,
    Mode,
    Scalar,
    UniRational,
    framing_keys,
    mode_of,
    one,
    poly_mul,
    uni_limit_at_infinity,
    zero,
)
from .series import PSeries, finite_poch, inf_poch, monomials, q_laplacian_shift, theta_shift

STABLE = -1
COSTABLE = 1

Weight = tuple[int, ...]


def vertex(c: int, N: int) -> int:
    """Representative in 1..N of a class in Z/N."""
    return (c - 1) % N + 1


class Basis:
    """Symbol layout for a framing vector ``r``."""

    def __init__(self, r: Sequence[int]):
        self.r = tuple(r)
        self.N = len(self.r)
        self.keys: list[Key] = framing_keys(self.r)
        K = len(self.keys)
        self.e_idx = {k: 2 + n for n, k in enumerate(self.keys)}
        self.mu_idx = {k: 2 + K + n for n, k in enumerate(self.keys)}
        self.nu_idx = {k: 2 + 2 * K + n for n, k in enumerate(self.keys)}
        self.dim = 2 + 3 * K

    def mono(self, s: int = 0, kappa: int = 0, e: Iterable[tuple[Key, int]] = (), mu: Iterable[tuple[Key, int]] = (), nu: Iterable[tuple[Key, int]] = ()) -> Weight:
        w = [0] * self.dim
        w[0], w[1] = s, kappa
        for table, items in ((self.e_idx, e), (self.mu_idx, mu), (self.nu_idx, nu)):
            for k, x in items:
                w[table[k]] += x
        return tuple(w)

    def degree(self, w: Weight) -> int:
        """Gamma_N degree: deg kappa = -1, deg q = 0, deg e_(i,a) = i (mu, nu as e)."""
        d = -w[1]
        for table in (self.e_idx, self.mu_idx, self.nu_idx):
            for k, idx in table.items():
                d += k[0] * w[idx]
        return d % self.N

    def values(self, ctx: EvalContext) -> list[Scalar]:
        vals = [ctx.s, ctx.kappa]
        vals += [ctx.e[k] for k in self.keys]
        vals += [ctx.mu[k] for k in self.keys]
        vals += [ctx.nu[k] for k in self.keys]
        return vals

    def describe(self, w: Weight) -> str:
        names = ["s", "kappa"] + [f"e{k}" for k in self.keys] + [f"mu{k}" for k in self.keys] + [f"nu{k}" for k in self.keys]
        return "*".join(f"{n}^{x}" for n, x in zip(names, w) if x) or "1"


def wmul(a: Weight, b: Weight) -> Weight:
    return tuple(x + y for x, y in zip(a, b))


def winv(a: Weight) -> Weight:
    return tuple(-x for x in a)


class Character:
    """Signed multiset of weights in canonical merged form."""

    __slots__ = ("terms",)

    def __init__(self, terms: Mapping[Weight, int] | None = None):
        self.terms: dict[Weight, int] = {w: m for w, m in (terms or {}).items() if m}

    @classmethod
    def of(cls, weights: Iterable[Weight], mult: int = 1) -> "Character":
        c: Counter = Counter()
        for w in weights:
            c[w] += mult
        return cls(c)

    def __add__(self, other: "Character") -> "Character":
        c = Counter(self.terms)
        for w, m in other.terms.items():
            c[w] += m
        return Character(c)

    def __neg__(self) -> "Character":
        return Character({w: -m for w, m in self.terms.items()})

    def __sub__(self, other: "Character") -> "Character":
        return self + (-other)

    def __mul__(self, other: "Character") -> "Character":
        c: Counter = Counter()
        for a, m in self.terms.items():
            for b, n in other.terms.items():
                c[wmul(a, b)] += m * n
        return Character(c)

    def dual(self) -> "Character":
        return Character({winv(w): m for w, m in self.terms.items()})

    def filter(self, keep) -> "Character":
        return Character({w: m for w, m in self.terms.items() if keep(w)})

    def rank(self) -> int:
        return sum(self.terms.values())

    def __eq__(self, other):
        return isinstance(other, Character) and self.terms == other.terms

    def __hash__(self):
        return hash(frozenset(self.terms.items()))

    def __len__(self):
        return len(self.terms)

    def items(self):
        return self.terms.items()

    def __repr__(self):
        return f"Character({len(self.terms)} weights, rank {self.rank()})"


@lru_cache(maxsize=None)
def _basis(r: tuple[int, ...]) -> Basis:
    return Basis(r)


@lru_cache(maxsize=200000)
def v_decomposition(fp: PartitionTuple, stability: int) -> tuple[tuple[Weight, ...], ...]:
    """Weights of V_c for each color c in 0..N-1.

    Stable: box (l, m) of (i, a) has color i+l-1 and weight e kappa^{1-l} q^{1-m}.
    Co-stable: color i-l and weight e kappa^l q^m.
    """
    B = _basis(fp.r)
    N = fp.N
    out: list[list[Weight]] = [[] for _ in range(N)]
    for key, lam in fp.items():
        i = key[0]
        for l, row in enumerate(lam, start=1):
            for m in range(1, row + 1):
                if stability < 0:
                    c, w = (i + l - 1) % N, B.mono(s=2 * (1 - m), kappa=1 - l, e=[(key, 1)])
                else:
                    c, w = (i - l) % N, B.mono(s=2 * m, kappa=l, e=[(key, 1)])
                out[c].append(w)
    return tuple(tuple(ws) for ws in out)


def _framing(B: Basis) -> Character:
    return Character.of(B.mono(e=[(k, 1)]) for k in B.keys)


@lru_cache(maxsize=200000)
def tangent_character(fp: PartitionTuple, stability: int) -> Character:
    """Degree-0 part of V V^(q + kappa - 1 - q kappa) + W^ V + V^ W kappa q."""
    B = _basis(fp.r)
    V = Character.of(w for ws in v_decomposition(fp, stability) for w in ws)
    W = _framing(B)
    q, k, qk = B.mono(s=2), B.mono(kappa=1), B.mono(s=2, kappa=1)
    jordan = Character({q: 1, k: 1, B.mono(): -1, qk: -1})
    total = V * V.dual() * jordan + W.dual() * V + V.dual() * W * Character({qk: 1})
    return total.filter(lambda w: B.degree(w) == 0)


@lru_cache(maxsize=200000)
def class_character(fp: PartitionTuple, stability: int, cls: str) -> Character:
    """The adjoint or fundamental matter class at a fixed point."""
    B = _basis(fp.r)
    N = fp.N
    Vc = [Character.of(ws) for ws in v_decomposition(fp, stability)]

    def V(c: int) -> Character:
        return Vc[c % N]

    def keys_at(i: int) -> list[Key]:
        return [k for k in B.keys if k[0] == vertex(i, N)]

    out = Character()
    if cls == "adj":
        for c in range(N):
            for key in keys_at(c):
                out = out + V(c) * Character({B.mono(e=[(key, -1)]): 1})
            for key in keys_at(c + 1):
                out = out + V(c).dual() * Character({B.mono(s=2, kappa=1, e=[(key, 1)]): 1})
            out = out + V(c).dual() * V(c + 1) * Character({B.mono(kappa=1): 1, B.mono(s=2, kappa=1): -1})
            out = out + V(c).dual() * V(c) * Character({B.mono(s=2): 1, B.mono(): -1})
    elif cls == "fund":
        for c in range(N):
            for key in keys_at(c):
                out = out + V(c) * Character({B.mono(mu=[(key, -1)]): 1})
            for key in keys_at(c + 1):
                out = out + V(c).dual() * Character({B.mono(s=2, kappa=1, nu=[(key, 1)]): 1})
    else:
        raise ValueError(f"unknown class {cls!r}")
    return out


class Evaluator:
    """Evaluates weights and Euler classes at a context."""

    def __init__(self, B: Basis, ctx: EvalContext):
        self.B = B
        self.ctx = ctx
        self.vals = B.values(ctx)
        self.mode = ctx.mode
        self._cache: dict[Weight, Scalar] = {}

    def value(self, w: Weight) -> Scalar:
        v = self._cache.get(w)
        if v is None:
            v = one(self.mode)
            for x, n in zip(self.vals, w):
                if n:
                    v = v * x ** n
            self._cache[w] = v
        return v

    def eu_t(self, ch: Character, t_val: Scalar) -> Scalar:
        num, den = one(self.mode), one(self.mode)
        for w, m in ch.items():
            f = 1 - t_val / self.value(w)
            if m > 0:
                num = num * f ** m
            else:
                den = den * f ** (-m)
        return num / den


def eu_t(ch: Character, ctx: EvalContext, t_val: Scalar, r: Sequence[int] | None = None) -> Scalar:
    """prod over weights w with multiplicity m of (1 - t / w)^m."""
    return Evaluator(_basis(tuple(r if r is not None else ctx.r)), ctx).eu_t(ch, t_val)


def _check_ctx(N: int, r: Sequence[int], ctx: EvalContext) -> tuple[int, ...]:
    r = tuple(r)
    if len(r) != N or ctx.N != N or tuple(ctx.r) != r:
        raise ValueError("context does not match (N, r)")
    return r


def z_series(N: int, r: Sequence[int], stability: int, cls: str, trunc: int, ctx: EvalContext, t_val: Scalar | None = None) -> PSeries:
    """Sum over fixed points of p^v Eu^t(class)/Eu(T); fund forces t = 1."""
    r = _check_ctx(N, r, ctx)
    ev = Evaluator(_basis(r), ctx)
    t = one(ctx.mode) if cls == "fund" else (ctx.t if t_val is None else t_val)
    coeffs: dict = {}
    o = one(ctx.mode)
    for fp in enumerate_tuples(N, r, trunc):
        T = tangent_character(fp, stability)
        c = ev.eu_t(class_character(fp, stability, cls), t) / ev.eu_t(T, o)
        v = dimension_vector(fp, stability)
        coeffs[v] = coeffs[v] + c if v in coeffs else c
    return PSeries(N, trunc, ctx.mode, coeffs)


def z_adj(ctx: EvalContext, trunc: int, stability: int = STABLE, t_val: Scalar | None = None) -> PSeries:
    return z_series(ctx.N, ctx.r, stability, "adj", trunc, ctx, t_val)


def z_fund(ctx: EvalContext, trunc: int, stability: int = STABLE) -> PSeries:
    return z_series(ctx.N, ctx.r, stability, "fund", trunc, ctx)


# ---------------------------------------------------------------------------
# Nekrasov-product oracles


def tangent_nek_product(fp: PartitionTuple, stability: int, ctx: EvalContext, t_val: Scalar) -> Scalar:
    """Eu^t of the tangent space as a product of Nekrasov factors."""
    acc = one(ctx.mode)
    for (ki, li), (kj, lj) in itertools.product(fp.items(), repeat=2):
        i, j = ki[0], kj[0]
        if stability < 0:
            acc = acc * nek_row(li, lj, j - i, fp.N, t_val * ctx.e[kj] / ctx.e[ki], ctx)
        else:
            acc = acc * nek_row(li, lj, i - j, fp.N, t_val * ctx.e[ki] / ctx.e[kj], ctx)
    return acc


def fund_nek_product(fp: PartitionTuple, ctx: EvalContext) -> Scalar:
    """Eu(fund) on the stable side as a product of Nekrasov factors."""
    acc = one(ctx.mode)
    for (ki, li), (kj, lj) in itertools.product(fp.items(), repeat=2):
        i, j = ki[0], kj[0]
        acc = acc * nek_row(li, (), j - i, fp.N, ctx.mu[kj] / ctx.e[ki], ctx)
        acc = acc * nek_row((), lj, j - i, fp.N, ctx.e[kj] / ctx.nu[ki], ctx)
    return acc


# ---------------------------------------------------------------------------
# products of infinite Pochhammer symbols


def p_monomial(N: int, trunc: int, mode: Mode, coeff: Scalar, idx: Iterable[int]) -> PSeries:
    """coeff * prod p_i over the given vertex indices (taken mod N)."""
    v = [0] * N
    for i in idx:
        v[vertex(i, N) - 1] += 1
    return PSeries.monomial(v, coeff, N, trunc, mode)


def full_product(N: int, trunc: int, mode: Mode, coeff) -> PSeries:
    return p_monomial(N, trunc, mode, coeff, range(1, N + 1))


def phi_factors(N: int, r: Sequence[int], trunc: int, ctx: EvalContext, modulus: str = "total") -> tuple[PSeries, PSeries]:
    """Numerator and denominator of Phi^r(p) as products of triple Pochhammers.

    ``modulus="total"`` uses t^{|r|} p_1...p_N for the middle parameter;
    ``modulus="index"`` uses t^l p_1...p_N with l the product index.
    """
    r = tuple(r)
    mode, q, t = ctx.mode, ctx.q, ctx.t
    num = PSeries.constant(1, N, trunc, mode)
    den = PSeries.constant(1, N, trunc, mode)
    R = lambda i: r[vertex(i, N) - 1]
    for k in range(1, N):
        for l in range(1, N + 1):
            M = full_product(N, trunc, mode, t ** (sum(r) if modulus == "total" else l))
            idx = range(l, l + k)
            a = sum(R(l + j) for j in range(1, k + 1))
            b = sum(R(l + j) for j in range(0, k))
            P = lambda c: p_monomial(N, trunc, mode, c, idx)
            params = [q, M, t]
            num = num * inf_poch(P(q * t ** a), params) * inf_poch(P(t ** (b + 1)), params)
            den = den * inf_poch(P(t ** (a + 1)), params) * inf_poch(P(q * t ** b), params)
    return num, den


def phi_ratio(N: int, r: Sequence[int], trunc: int, ctx: EvalContext, modulus: str = "total") -> PSeries:
    num, den = phi_factors(N, r, trunc, ctx, modulus)
    return num / den


def f_factor(x: PSeries, ell: int, ctx: EvalContext) -> PSeries:
    """F_ell(x) = (q x; q, t^ell P)/(t x; q, t^ell P), P = p_1...p_N."""
    N, trunc, mode = x.n_vars, x.trunc, x.mode
    M = full_product(N, trunc, mode, ctx.t ** ell)
    return inf_poch(x.scale(ctx.q), [ctx.q, M]) / inf_poch(x.scale(ctx.t), [ctx.q, M])


def example_ratio(r: Sequence[int], trunc: int, ctx: EvalContext) -> PSeries:
    """The tabulated closed forms of Z-check/Z for small framings."""
    r = tuple(r)
    N, mode, t = len(r), ctx.mode, ctx.t
    m = lambda c, *idx: p_monomial(N, trunc, mode, c, idx)
    F = lambda x: f_factor(x, sum(r), ctx)
    if r == (2, 1):
        return F(m(t, 1)) / F(m(t, 2))
    if r == (2, 2, 1):
        return F(m(t, 2)) * F(m(t ** 3, 1, 2)) / (F(m(t, 3)) * F(m(t ** 3, 1, 3)))
    if r == (2, 1, 1):
        return F(m(t, 1)) * F(m(t ** 2, 1, 2)) / (F(m(t, 3)) * F(m(t ** 2, 2, 3)))
    if r == (2, 1, 1, 1):
        return (F(m(t, 1)) * F(m(t ** 2, 1, 2)) * F(m(t ** 3, 1, 2, 3))) / (
            F(m(t, 4)) * F(m(t ** 2, 3, 4)) * F(m(t ** 3, 2, 3, 4))
        )
    raise ValueError(f"no tabulated example for r={r}")


def quad_factor(N: int, trunc: int, ctx: EvalContext) -> PSeries:
    """(qtP; q, k^N, tP)(k^N tP; ...)/((t^2 P; ...)(q k^N P; ...))."""
    mode, q, t, kN = ctx.mode, ctx.q, ctx.t, ctx.kappa ** N
    P = lambda c: full_product(N, trunc, mode, c)
    params = [q, kN, P(t)]
    return (inf_poch(P(q * t), params) * inf_poch(P(kN * t), params)) / (
        inf_poch(P(t * t), params) * inf_poch(P(q * kN), params)
    )


def unit_framing_closed_form(N: int, l: int, trunc: int, ctx: EvalContext, shift: int) -> PSeries:
    """prod_k (q P_k; q, tP)/(t P_k; q, tP) times the quad factor.

    ``P_k = p_l p_{l+1} ... p_{l+k-1}`` for ``shift=+1`` and
    ``p_{l-1} p_{l-2} ... p_{l-k}`` for ``shift=-1``.
    """
    mode, q, t = ctx.mode, ctx.q, ctx.t
    M = full_product(N, trunc, mode, t)
    acc = quad_factor(N, trunc, ctx)
    for k in range(1, N):
        idx = [l + j for j in range(k)] if shift > 0 else [l - 1 - j for j in range(k)]
        acc = acc * inf_poch(p_monomial(N, trunc, mode, q, idx), [q, M]) / inf_poch(p_monomial(N, trunc, mode, t, idx), [q, M])
    return acc


def rank_one_closed_form(trunc: int, ctx: EvalContext) -> PSeries:
    """The N = 1, r = (1) adjoint series as a quadruple-product ratio."""
    return quad_factor(1, trunc, ctx)


# ---------------------------------------------------------------------------
# verifications


def _params(ctx: EvalContext, **extra) -> dict:
    out = {"N": ctx.N, "r": list(ctx.r), "mode": ctx.mode.value, "seed": ctx.seed}
    out.update(extra)
    return out


def verify_identity_adj(N: int, r: Sequence[int], trunc: int, ctx: EvalContext, modulus: str = "total", flipped: bool = False) -> VerdictReport:
    """Z = Phi * Z-check, checked as Z * den(Phi) = Z-check * num(Phi).

    ``flipped=True`` checks the opposite orientation Z-check = Phi * Z instead;
    it fails from order 1 on, the series ratio being exactly 1/Phi.
    """
    t0 = time.perf_counter()
    r = _check_ctx(N, r, ctx)
    Z = z_series(N, r, STABLE, "adj", trunc, ctx)
    Zc = z_series(N, r, COSTABLE, "adj", trunc, ctx)
    num, den = phi_factors(N, r, trunc, ctx, modulus)
    top, bottom = (Zc, Z) if flipped else (Z, Zc)
    params = _params(ctx, order=trunc, modulus=modulus, orientation="costable/stable" if flipped else "stable/costable")
    return verdict("thm-adj", params, series_mismatch(top * den, bottom * num), started=t0)


def verify_example_table(r: Sequence[int], trunc: int, ctx: EvalContext) -> VerdictReport:
    """Z/Z-check against the tabulated F-products, as Z = Z-check * ratio."""
    t0 = time.perf_counter()
    r = tuple(r)
    N = len(r)
    Z = z_series(N, r, STABLE, "adj", trunc, ctx)
    Zc = z_series(N, r, COSTABLE, "adj", trunc, ctx)
    ratio = example_ratio(r, trunc, ctx)
    return verdict("thm-adj-table", _params(ctx, order=trunc), series_mismatch(Z, Zc * ratio), kind="conjecture", started=t0)


def verify_phi_table(r: Sequence[int], trunc: int, ctx: EvalContext, modulus: str = "total") -> VerdictReport:
    """Phi^r against the tabulated F-products; no localization involved."""
    t0 = time.perf_counter()
    r = tuple(r)
    phi = phi_ratio(len(r), r, trunc, ctx, modulus)
    return verdict("phi-table", _params(ctx, order=trunc, modulus=modulus), series_mismatch(phi, example_ratio(r, trunc, ctx)), started=t0)


def verify_unit_framing(N: int, l: int, trunc: int, ctx: EvalContext) -> VerdictReport:
    """Both unit-framing series against their closed product forms.

    The stable series Z^{e_l} matches the form built on p_l p_{l+1}...,
    and the co-stable one the form built on p_{l-1} p_{l-2}....
    """
    t0 = time.perf_counter()
    if ctx.r != tuple(1 if i + 1 == l else 0 for i in range(N)):
        raise ValueError("context must carry the unit framing e_l")
    Z = z_series(N, ctx.r, STABLE, "adj", trunc, ctx)
    Zc = z_series(N, ctx.r, COSTABLE, "adj", trunc, ctx)
    mm = series_mismatch(Z, unit_framing_closed_form(N, l, trunc, ctx, +1))
    if mm is None:
        mm = series_mismatch(Zc, unit_framing_closed_form(N, l, trunc, ctx, -1))
    return verdict("conj-adj-1", _params(ctx, order=trunc, l=l), mm, kind="conjecture", started=t0)


def verify_equal_framing(N: int, r: Sequence[int], trunc: int, ctx: EvalContext) -> VerdictReport:
    """Z = Z-check when all r_i coincide."""
    t0 = time.perf_counter()
    r = _check_ctx(N, r, ctx)
    if len(set(r)) != 1:
        raise ValueError("equal-framing check needs r_1 = ... = r_N")
    Z = z_series(N, r, STABLE, "adj", trunc, ctx)
    Zc = z_series(N, r, COSTABLE, "adj", trunc, ctx)
    return verdict("conj-adj-2", _params(ctx, order=trunc), series_mismatch(Z, Zc), kind="conjecture", started=t0)


def verify_rank_one(trunc: int, ctx: EvalContext) -> VerdictReport:
    """N = 1, r = (1): both series equal the quadruple-product closed form."""
    t0 = time.perf_counter()
    if ctx.N != 1 or ctx.r != (1,):
        raise ValueError("rank-one check needs N = 1, r = (1)")
    closed = rank_one_closed_form(trunc, ctx)
    Z = z_series(1, (1,), STABLE, "adj", trunc, ctx)
    Zc = z_series(1, (1,), COSTABLE, "adj", trunc, ctx)
    mm = series_mismatch(Z, closed) or series_mismatch(Zc, closed)
    return verdict("rank-one", _params(ctx, order=trunc), mm, started=t0)


def _product_sum(N: int, trunc: int, mode: Mode, s: Scalar, q: Scalar, base: Sequence[Scalar], shift_sign: int, Zs: PSeries) -> PSeries:
    """sum_l q^{sum l_i l_{i+1}/2} prod (base_i p_i)^{l_i}/(q;q)_{l_i} * theta_{c(l)} q^{-Delta/2} Zs."""
    inner = q_laplacian_shift(Zs, s)
    acc = PSeries(N, trunc, mode)
    for lv in monomials(N, trunc):
        coeff = s ** sum(lv[i] * lv[(i + 1) % N] for i in range(N))
        for i in range(N):
            coeff = coeff * base[i] ** lv[i] / finite_poch(q, q, lv[i])
        c = [shift_sign * (lv[(i + 1) % N] - lv[(i - 1) % N]) for i in range(N)]
        acc = acc + PSeries.monomial(lv, coeff, N, trunc, mode) * theta_shift(inner, c, s)
    return acc


def _prod_over(d: Mapping[Key, Scalar], i: int, mode: Mode) -> Scalar:
    acc = one(mode)
    for k, v in d.items():
        if k[0] == i:
            acc = acc * v
    return acc


def conj_fund_sides(N: int, r: Sequence[int], trunc: int, ctx: EvalContext) -> tuple[PSeries, PSeries]:
    """Both sides of the conjectured fundamental-matter relation."""
    r = _check_ctx(N, r, ctx)
    mode, s, q, kN = ctx.mode, ctx.s, ctx.q, ctx.kappa ** N
    e = [_prod_over(ctx.e, i, mode) for i in range(1, N + 1)]
    mu = [_prod_over(ctx.mu, i, mode) for i in range(1, N + 1)]
    nu = [_prod_over(ctx.nu, i, mode) for i in range(1, N + 1)]
    E, M, V = e[0], mu[0], nu[0]
    for i in range(1, N):
        E, M, V = E * e[i], M * mu[i], V * nu[i]
    Z = z_series(N, r, STABLE, "fund", trunc, ctx)
    Zc = z_series(N, r, COSTABLE, "fund", trunc, ctx)
    lhs_pre = inf_poch(full_product(N, trunc, mode, M / E), [kN])
    rhs_pre = inf_poch(full_product(N, trunc, mode, E / V), [kN])
    lhs_base = [-s * mu[i] / e[i] for i in range(N)]
    rhs_base = [-s * e[(i + 1) % N] / nu[(i + 1) % N] for i in range(N)]
    lhs = lhs_pre * _product_sum(N, trunc, mode, s, q, lhs_base, -1, Z)
    rhs = rhs_pre * _product_sum(N, trunc, mode, s, q, rhs_base, +1, Zc)
    return lhs, rhs


def verify_conj_fund(N: int, r: Sequence[int], trunc: int, ctx: EvalContext) -> VerdictReport:
    t0 = time.perf_counter()
    lhs, rhs = conj_fund_sides(N, r, trunc, ctx)
    return verdict("conj-fund", _params(ctx, order=trunc), series_mismatch(lhs, rhs), kind="conjecture", started=t0)


def rank_one_fund_ratio(trunc: int, ctx: EvalContext) -> tuple[PSeries, PSeries]:
    """(e p/nu; q,k)(q k mu p/e; q,k) and (q k e p/nu; q,k)(mu p/e; q,k) for N = 1."""
    mode, q, k = ctx.mode, ctx.q, ctx.kappa
    e, mu, nu = (_prod_over(d, 1, mode) for d in (ctx.e, ctx.mu, ctx.nu))
    P = lambda c: full_product(1, trunc, mode, c)
    num = inf_poch(P(e / nu), [q, k]) * inf_poch(P(q * k * mu / e), [q, k])
    den = inf_poch(P(q * k * e / nu), [q, k]) * inf_poch(P(mu / e), [q, k])
    return num, den


def reflect_context(ctx: EvalContext) -> EvalContext:
    """Parameters of the dual side: e' = 1/e(-i), mu' = 1/nu(-i), nu' = 1/mu(-i), r'_i = r_{-i}."""
    N = ctx.N
    rv = tuple(ctx.r[vertex(-i, N) - 1] for i in range(1, N + 1))
    o = one(ctx.mode)
    e, mu, nu = {}, {}, {}
    for (i, a) in framing_keys(rv):
        src = (vertex(-i, N), a)
        e[(i, a)] = o / ctx.e[src]
        mu[(i, a)] = o / ctx.nu[src]
        nu[(i, a)] = o / ctx.mu[src]
    return ctx.with_values(r=rv, e=e, mu=mu, nu=nu)


def verify_duality(N: int, r: Sequence[int], v: Sequence[int], ctx: EvalContext) -> bool:
    """Coefficient of p^v in Z-check_fund equals the reflected coefficient of Z_fund.

    The dual side is evaluated at p'_i = p_{-i-1}, so p^v corresponds to the
    exponent w with w_i = v_{-i-1}.
    """
    r = _check_ctx(N, r, ctx)
    v = tuple(v)
    n = sum(v)
    lhs = z_series(N, r, COSTABLE, "fund", n, ctx)[v]
    dual = reflect_context(ctx)
    w = tuple(v[vertex(-i - 1, N) - 1] for i in range(1, N + 1))
    rhs = z_series(N, dual.r, STABLE, "fund", n, dual)[w]
    return lhs == rhs


def verify_duality_report(N: int, r: Sequence[int], trunc: int, ctx: EvalContext) -> VerdictReport:
    t0 = time.perf_counter()
    r = _check_ctx(N, r, ctx)
    lhs = z_series(N, r, COSTABLE, "fund", trunc, ctx)
    dual = reflect_context(ctx)
    rhs = z_series(N, dual.r, STABLE, "fund", trunc, dual)
    perm = [vertex(-i - 1, N) - 1 for i in range(1, N + 1)]
    # rhs monomial p'^w with p'_i = p_{-i-1} is p^v with v_{-i-1} = w_i
    moved = rhs.like({tuple(w[perm.index(j)] for j in range(N)): c for w, c in rhs.coeffs.items()})
    return verdict("duality", _params(ctx, order=trunc), series_mismatch(lhs, moved), started=t0)


# ---------------------------------------------------------------------------
# the e -> infinity limit


def _eu_t_uni(ch: Character, ev: Evaluator, t_val: Scalar, sym: int) -> tuple[list, list]:
    """Eu^t as a ratio of polynomials in the symbol at basis index ``sym``."""
    mode = ev.mode
    z, o = zero(mode), one(mode)
    num, den = [o], [o]
    for w, m in ch.items():
        c = w[sym]
        rest = w[:sym] + (0,) + w[sym + 1:]
        a = t_val / ev.value(rest)
        # 1 - a x^{-c}
        if c == 0:
            fn, fd = [1 - a], [o]
        elif c > 0:
            fn, fd = [-a] + [z] * (c - 1) + [o], [z] * c + [o]
        else:
            fn, fd = [o] + [z] * (-c - 1) + [-a], [o]
        for _ in range(abs(m)):
            if m > 0:
                num, den = poly_mul(num, fn, z), poly_mul(den, fd, z)
            else:
                num, den = poly_mul(num, fd, z), poly_mul(den, fn, z)
    return num, den


def z_adj_uni(ctx: EvalContext, stability: int, trunc: int, new_key: Key) -> dict:
    """Coefficients of Z_adj as rational functions of e at ``new_key``."""
    B = _basis(ctx.r)
    ev = Evaluator(B, ctx)
    sym = B.e_idx[new_key]
    out: dict = {}
    o = one(ctx.mode)
    for fp in enumerate_tuples(ctx.N, ctx.r, trunc):
        T = tangent_character(fp, stability)
        n1, d1 = _eu_t_uni(class_character(fp, stability, "adj"), ev, ctx.t, sym)
        n2, d2 = _eu_t_uni(T, ev, o, sym)
        z = zero(ctx.mode)
        term = UniRational(poly_mul(n1, d2, z), poly_mul(d1, n2, z), ctx.mode)
        v = dimension_vector(fp, stability)
        out[v] = out[v] + term if v in out else term
    return out


def extend_context(ctx: EvalContext, l: int) -> EvalContext:
    """Context with one extra framing at vertex ``l``; its e value is a placeholder."""
    r = list(ctx.r)
    r[l - 1] += 1
    new_key = (l, r[l - 1])
    aux = ctx.aux(f"extend-{l}", 3)
    e, mu, nu = dict(ctx.e), dict(ctx.mu), dict(ctx.nu)
    e[new_key], mu[new_key], nu[new_key] = aux
    keys = framing_keys(r)
    return ctx.with_values(r=tuple(r), e={k: e[k] for k in keys}, mu={k: mu[k] for k in keys}, nu={k: nu[k] for k in keys})


def limit_factorization(N: int, r: Sequence[int], l: int, trunc: int, ctx: EvalContext) -> VerdictReport:
    """lim_{e_new -> inf} Z^{r+e_l} = Z^r(p_l -> t p_l) Z^{e_l}(p_i -> t^{r_{i+1}} p_i), and for Z-check."""
    t0 = time.perf_counter()
    r = _check_ctx(N, r, ctx)
    big = extend_context(ctx, l)
    new_key = (l, big.r[l - 1])
    unit = tuple(1 if i + 1 == l else 0 for i in range(N))
    unit_ctx = ctx.with_values(r=unit, e={(l, 1): big.e[new_key]}, mu={(l, 1): big.mu[new_key]}, nu={(l, 1): big.nu[new_key]})
    t = ctx.t
    mm: Mismatch | None = None
    for stability in (STABLE, COSTABLE):
        coeffs = z_adj_uni(big, stability, trunc, new_key)
        lim: dict = {}
        for v, f in coeffs.items():
            L = uni_limit_at_infinity(f)
            if L.kind is LimitKind.INFINITE:
                raise ArithmeticError(f"coefficient {v} diverges as e -> infinity")
            lim[v] = L.value
        lhs = PSeries(N, trunc, ctx.mode, lim)
        a = z_series(N, r, stability, "adj", trunc, ctx).scale_vars([t if i + 1 == l else one(ctx.mode) for i in range(N)])
        b = z_series(N, unit, stability, "adj", trunc, unit_ctx).scale_vars([t ** r[i % N] for i in range(1, N + 1)])
        mm = series_mismatch(lhs, a * b)
        if mm is not None:
            mm.index = (("stable" if stability < 0 else "costable"),) + tuple(mm.index)
            break
    return verdict("prop-str", _params(ctx, order=trunc, l=l), mm, started=t0)


# ---------------------------------------------------------------------------
# the finite gl_N limit


def upper_matrices(N: int, d: int, weight: int) -> list[tuple]:
    """d-tuples of strictly upper triangular N x N matrices, x-degree <= weight.

    The x-degree of theta is sum theta_ik (k - i); matrices are dicts (i, k) -> n.
    """
    slots = [(a, i, k) for a in range(d) for i in range(1, N + 1) for k in range(i + 1, N + 1)]
    out = []

    def rec(pos: int, left: int, acc: dict):
        if pos == len(slots):
            out.append(tuple(sorted(acc.items())))
            return
        a, i, k = slots[pos]
        for n in range(left // (k - i) + 1):
            if n:
                acc[(a, i, k)] = n
            rec(pos + 1, left - n * (k - i), acc)
            acc.pop((a, i, k), None)

    rec(0, weight, {})
    return out


def c_n(theta: Mapping, N: int, d: int, sv: Mapping[Key, Scalar], q: Scalar, tp: Scalar) -> Scalar:
    """The coefficient c_N(theta | s | q, t') of the finite gl_N function.

    The denominator of the first product is (q^{...} q s_j/s_i; q), which is
    the form that matches the localization sum.
    """
    th = lambda a, i, k: theta.get((a, i, k), 0)
    acc = one(mode_of(q))
    for al in range(d):
        for be in range(d):
            for i in range(1, N + 1):
                for j in range(i, N + 1):
                    for k in range(j, N + 1):
                        n = th(al, i, k)
                        if not n:
                            continue
                        tail = sum(th(al, i, a) - th(be, j, a) for a in range(k + 1, N + 1))
                        ratio = sv[(j, be + 1)] / sv[(i, al + 1)]
                        if i < j:
                            acc = acc * finite_poch(q ** tail * tp * ratio, q, n) / finite_poch(q ** tail * q * ratio, q, n)
                        if j < k:
                            sh = q ** (tail - th(be, j, k))
                            acc = acc * finite_poch(sh * q * ratio / tp, q, n) / finite_poch(sh * ratio, q, n)
    return acc


def gl_n_series(N: int, d: int, trunc: int, ctx: EvalContext) -> PSeries:
    """f^{gl_N}(x | s | q, q/t) as a series in y_m = x_{m+1}/x_m (y_N unused).

    The spectral parameters are read off the context as s_(i,a) = kappa^{i-1} e_(i,a).
    """
    q = ctx.q
    tp = q / ctx.t
    sv = {(i, a): ctx.e[(i, a)] * ctx.kappa ** (i - 1) for (i, a) in ctx.e}
    coeffs: dict = {}
    for theta in upper_matrices(N, d, trunc):
        th = dict(theta)
        v = [0] * N
        for (a, i, k), n in th.items():
            for m in range(i, k):
                v[m - 1] += n
        c = c_n(th, N, d, sv, q, tp)
        v = tuple(v)
        coeffs[v] = coeffs[v] + c if v in coeffs else c
    return PSeries(N, trunc, ctx.mode, coeffs)


def gl_n_limit_check(N: int, d: int, trunc: int, ctx: EvalContext) -> VerdictReport:
    """Z_adj at p_N = 0, p_i = x_{i+1}/(t^d x_i), e = kappa^{-delta} s, against f^{gl_N}."""
    t0 = time.perf_counter()
    if tuple(ctx.r) != (d,) * N:
        raise ValueError("gl_N check needs r = (d, ..., d)")
    Z = z_series(N, ctx.r, STABLE, "adj", trunc, ctx)
    o = one(ctx.mode)
    # drop p_N and absorb the 1/t^d of each p_i
    Zr = Z.like({v: c for v, c in Z.coeffs.items() if v[-1] == 0}).scale_vars([o / ctx.t ** d] * (N - 1) + [o])
    return verdict("gl-n-limit", _params(ctx, order=trunc, d=d), series_mismatch(Zr, gl_n_series(N, d, trunc, ctx)), started=t0)
