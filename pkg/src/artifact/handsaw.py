"""Type A_1 handsaw partition functions and their transformation formulas.

The framing splits as ``J0 = {1..r0}`` and ``J1 = {r0+1..r0+r1}``. Fixed points
of the moduli space with stability ``-`` are vectors ``k`` indexed by ``J0``,
for stability ``+`` by ``J1``. Contexts reuse the chainsaw layout with
``N = 1`` and ``r = (r0 + r1,)``, so the framing key of ``alpha`` is
``(1, alpha)``.
"""

from __future__ import annotations

import itertools
import time
from dataclasses import dataclass
from typing import Sequence

from .chainsaw import Character, Evaluator, _basis
from .report import VerdictReport, series_mismatch, verdict
from .scalars import EvalContext, Key, Mode, Scalar, mode_of, one, sample_context
from .series import PSeries, compositions, finite_poch, inf_poch, q_borel

PLUS = 1
MINUS = -1


@dataclass(frozen=True)
class HandsawConfig:
    r0: int
    r1: int

    def __post_init__(self):
        if self.r0 < 0 or self.r1 < 0 or self.r0 + self.r1 < 1:
            raise ValueError("need r0, r1 >= 0 and r0 + r1 >= 1")

    @property
    def r(self) -> int:
        return self.r0 + self.r1

    @property
    def J0(self) -> list[int]:
        return list(range(1, self.r0 + 1))

    @property
    def J1(self) -> list[int]:
        return list(range(self.r0 + 1, self.r + 1))

    def J(self, stability: int) -> list[int]:
        return self.J1 if stability > 0 else self.J0

    def framing(self) -> tuple[int, ...]:
        return (self.r,)


def key(alpha: int) -> Key:
    return (1, alpha)


def hs_context(cfg: HandsawConfig, trunc: int, seed: int, mode: Mode | str = Mode.PRIME) -> EvalContext:
    """A deterministic admissible context for ``cfg``."""
    return sample_context(1, cfg.framing(), trunc, seed, mode)


def _check(cfg: HandsawConfig, ctx: EvalContext) -> None:
    if ctx.N != 1 or tuple(ctx.r) != cfg.framing():
        raise ValueError("context does not match the handsaw framing")


def hs_fixed_points(cfg: HandsawConfig, stability: int, n: int) -> list[tuple[int, ...]]:
    """Compositions of ``n`` indexed by J1 (stability +) or J0 (stability -)."""
    if n < 0:
        raise ValueError("n must be nonnegative")
    parts = len(cfg.J(stability))
    if parts == 0:
        return [()] if n == 0 else []
    return list(compositions(n, parts))


# ---------------------------------------------------------------------------
# characters


def _mono(cfg: HandsawConfig, qexp: int = 0, e: Sequence[tuple[int, int]] = (), mu: Sequence[tuple[int, int]] = ()):
    B = _basis(cfg.framing())
    return B.mono(s=2 * qexp, e=[(key(a), x) for a, x in e], mu=[(key(a), x) for a, x in mu])


def hs_v_character(cfg: HandsawConfig, stability: int, k: Sequence[int]) -> Character:
    """V at a fixed point: e_a q^i (i = 1..k_a) for +, e_a q^{1-i} for -."""
    J = cfg.J(stability)
    ws = []
    for a, ka in zip(J, k):
        for i in range(1, ka + 1):
            ws.append(_mono(cfg, i if stability > 0 else 1 - i, e=[(a, 1)]))
    return Character.of(ws)


def hs_tangent_raw(cfg: HandsawConfig, stability: int, k: Sequence[int]) -> Character:
    """End(V)(q - 1) + Hom(W0, V) + Hom(V, W1) q, with Hom(A, B) = A^ B."""
    V = hs_v_character(cfg, stability, k)
    W0 = Character.of(_mono(cfg, e=[(a, 1)]) for a in cfg.J0)
    W1 = Character.of(_mono(cfg, e=[(a, 1)]) for a in cfg.J1)
    q = Character({_mono(cfg, 1): 1})
    q_minus_1 = Character({_mono(cfg, 1): 1, _mono(cfg): -1})
    return V.dual() * V * q_minus_1 + W0.dual() * V + V.dual() * W1 * q


def hs_tangent_character(cfg: HandsawConfig, stability: int, k: Sequence[int]) -> Character:
    """The cancelled form of the tangent character.

    For +: sum over a, b in J1 of e_a^-1 e_b q^l with l = k_b - k_a + 1 .. k_b,
    plus sum over a in J0, b in J1 of e_a^-1 e_b q^i with i = 1 .. k_b.
    For - the same with J0 and J1 exchanged and e inverted.
    """
    if stability > 0:
        inner, outer, sign = cfg.J1, cfg.J0, 1
    else:
        inner, outer, sign = cfg.J0, cfg.J1, -1
    kk = dict(zip(inner, k))
    ws = []
    for a in inner:
        for b in inner:
            for l in range(kk[b] - kk[a] + 1, kk[b] + 1):
                ws.append(_mono(cfg, l, e=[(a, -sign), (b, sign)]))
    for a in outer:
        for b in inner:
            for i in range(1, kk[b] + 1):
                ws.append(_mono(cfg, i, e=[(a, -sign), (b, sign)]))
    return Character.of(ws)


def hs_fund_character(cfg: HandsawConfig, stability: int, k: Sequence[int]) -> Character:
    """Sum over a in J0 of V mu_a / q plus sum over a in J1 of V^ q / mu_a."""
    V = hs_v_character(cfg, stability, k)
    out = Character()
    for a in cfg.J0:
        out = out + V * Character({_mono(cfg, -1, mu=[(a, 1)]): 1})
    for a in cfg.J1:
        out = out + V.dual() * Character({_mono(cfg, 1, mu=[(a, -1)]): 1})
    return out


def invert_e(cfg: HandsawConfig, ch: Character) -> Character:
    """Substitute e -> 1/e in every weight."""
    B = _basis(cfg.framing())
    idx = set(B.e_idx.values())
    return Character({tuple(-x if i in idx else x for i, x in enumerate(w)): m for w, m in ch.items()})


def mirror_tangent_check(cfg: HandsawConfig, k: Sequence[int]) -> bool:
    """T+ at k for (r0, r1) equals T- at k for (r1, r0) with e inverted.

    The labels are matched so that J1 of (r0, r1) becomes J0 of (r1, r0), in order.
    """
    swapped = HandsawConfig(cfg.r1, cfg.r0)
    label = {j: cfg.r0 + j for j in range(1, cfg.r1 + 1)}
    label.update({cfg.r1 + j: j for j in range(1, cfg.r0 + 1)})
    B = _basis(cfg.framing())
    perm = {B.e_idx[key(a)]: B.e_idx[key(label[a])] for a in label}
    perm.update({B.mu_idx[key(a)]: B.mu_idx[key(label[a])] for a in label})
    moved = Character()
    for w, m in invert_e(swapped, hs_tangent_character(swapped, MINUS, k)).items():
        v = list(w)
        for src, dst in perm.items():
            v[dst] = w[src]
        moved = moved + Character({tuple(v): m})
    return moved == hs_tangent_character(cfg, PLUS, k)


# ---------------------------------------------------------------------------
# series


def _series(coeffs: dict, trunc: int, mode: Mode) -> PSeries:
    return PSeries(1, trunc, mode, {(n,): c for n, c in coeffs.items()})


def hs_localization(cfg: HandsawConfig, stability: int, cls: str, trunc: int, ctx: EvalContext, t_val: Scalar | None = None) -> PSeries:
    """Sum over fixed points of p^|k| Eu^t(class)/Eu(T); the fund class uses t = 1."""
    _check(cfg, ctx)
    ev = Evaluator(_basis(cfg.framing()), ctx)
    o = one(ctx.mode)
    t = o if cls == "fund" else (ctx.t if t_val is None else t_val)
    coeffs: dict = {}
    for n in range(trunc + 1):
        acc = ctx.zero
        for k in hs_fixed_points(cfg, stability, n):
            T = hs_tangent_character(cfg, stability, k)
            if cls == "adj":
                C = T
            elif cls == "fund":
                C = hs_fund_character(cfg, stability, k)
            else:
                raise ValueError(f"unknown class {cls!r}")
            acc = acc + ev.eu_t(C, t) / ev.eu_t(T, o)
        coeffs[n] = acc
    return _series(coeffs, trunc, ctx.mode)


def _ratio_poch(num: Scalar, den: Scalar, q: Scalar, k: int) -> Scalar:
    return finite_poch(num, q, k) / finite_poch(den, q, k)


def hs_z_adj_explicit(cfg: HandsawConfig, stability: int, trunc: int, ctx: EvalContext, t_val: Scalar | None = None) -> PSeries:
    """The closed hypergeometric sums for the adjoint partition functions."""
    _check(cfg, ctx)
    q = ctx.q
    t = ctx.t if t_val is None else t_val
    e = {a: ctx.e[key(a)] for a in range(1, cfg.r + 1)}
    if stability > 0:
        inner, outer, pw = cfg.J1, cfg.J0, cfg.r0
    else:
        inner, outer, pw = cfg.J0, cfg.J1, cfg.r1
    coeffs: dict = {}
    for n in range(trunc + 1):
        acc = ctx.zero
        for k in hs_fixed_points(cfg, stability, n):
            kk = dict(zip(inner, k))
            term = t ** (pw * n)
            for a in inner:
                for b in inner:
                    # + uses e_a/e_b, - uses e_b/e_a
                    x = e[a] / e[b] if stability > 0 else e[b] / e[a]
                    qk = q ** (-kk[b])
                    term = term * _ratio_poch(t * qk * x, qk * x, q, kk[a])
            for b in inner:
                for a in outer:
                    x = e[b] / e[a] if stability > 0 else e[a] / e[b]
                    term = term * _ratio_poch(q * x / t, q * x, q, kk[b])
            acc = acc + term
        coeffs[n] = acc
    return _series(coeffs, trunc, ctx.mode)


def vandermonde(xs: Sequence[Scalar]) -> Scalar:
    """prod over a < b of (x_a - x_b)."""
    acc = one(mode_of(xs[0])) if xs else 1
    for i, j in itertools.combinations(range(len(xs)), 2):
        acc = acc * (xs[i] - xs[j])
    return acc


def hs_z_fund_hat(cfg: HandsawConfig, stability: int, trunc: int, ctx: EvalContext) -> PSeries:
    """Sum of the Borel-normalized fundamental integrals q^{-n(n+1)/2} I_n p^n."""
    _check(cfg, ctx)
    q = ctx.q
    o = one(ctx.mode)
    e = {a: ctx.e[key(a)] for a in range(1, cfg.r + 1)}
    mu = {a: ctx.mu[key(a)] for a in range(1, cfg.r + 1)}
    em = lambda js: _prod(e[a] * mu[a] for a in js)
    if stability > 0:
        inner = cfg.J1
        base = -(q ** cfg.r0) / em(cfg.J0)
        xs = [e[a] for a in inner]
    else:
        inner = cfg.J0
        base = -em(cfg.J1)
        xs = [o / e[a] for a in inner]
    dv = vandermonde(xs)
    coeffs: dict = {}
    for n in range(trunc + 1):
        acc = ctx.zero
        for k in hs_fixed_points(cfg, stability, n):
            kk = dict(zip(inner, k))
            term = base ** n * vandermonde([x * q ** ki for x, ki in zip(xs, k)]) / dv
            for b in inner:
                for a in range(1, cfg.r + 1):
                    if stability > 0:
                        term = term * _ratio_poch(e[b] * mu[a], q * e[b] / e[a], q, kk[b])
                    else:
                        term = term * _ratio_poch(q / (e[b] * mu[a]), q * e[a] / e[b], q, kk[b])
            acc = acc + term
        coeffs[n] = acc
    return _series(coeffs, trunc, ctx.mode)


def _prod(items) -> Scalar:
    acc = None
    for x in items:
        acc = x if acc is None else acc * x
    return 1 if acc is None else acc


# ---------------------------------------------------------------------------
# prefactors


def double_poch(base: Scalar, trunc: int, ctx: EvalContext) -> PSeries:
    """(base p; q, t)_inf as a truncated series."""
    return inf_poch(PSeries.monomial((1,), base, 1, trunc, ctx.mode), [ctx.q, ctx.t])


def single_poch(base: Scalar, trunc: int, ctx: EvalContext) -> PSeries:
    """(base p; q)_inf as a truncated series."""
    return inf_poch(PSeries.monomial((1,), base, 1, trunc, ctx.mode), [ctx.q])


def main1_factors(cfg: HandsawConfig, trunc: int, ctx: EvalContext) -> tuple[PSeries, PSeries]:
    """Numerator and denominator of the adjoint wall-crossing factor Z+/Z-."""
    q, t, r0, r1 = ctx.q, ctx.t, cfg.r0, cfg.r1
    num = double_poch(q * t ** r0, trunc, ctx) * double_poch(t ** (r1 + 1), trunc, ctx)
    den = double_poch(t ** (r0 + 1), trunc, ctx) * double_poch(q * t ** r1, trunc, ctx)
    return num, den


def main1_prefactor_single(cfg: HandsawConfig, trunc: int, ctx: EvalContext) -> PSeries:
    """The same factor as a finite product of single q-Pochhammers."""
    q, t = ctx.q, ctx.t
    lo, hi = sorted((cfg.r0, cfg.r1))
    acc = PSeries.constant(1, 1, trunc, ctx.mode)
    for s in range(1, hi - lo + 1):
        acc = acc * single_poch(q * t ** (lo + s - 1), trunc, ctx) / single_poch(t ** (lo + s), trunc, ctx)
    return acc if cfg.r1 >= cfg.r0 else acc.inverse()


def _hs_params(cfg: HandsawConfig, ctx: EvalContext, **extra) -> dict:
    out = {"r": [cfg.r0, cfg.r1], "mode": ctx.mode.value, "seed": ctx.seed}
    out.update(extra)
    return out


def verify_explicit_adj(cfg: HandsawConfig, stability: int, trunc: int, ctx: EvalContext) -> VerdictReport:
    t0 = time.perf_counter()
    lhs = hs_z_adj_explicit(cfg, stability, trunc, ctx)
    rhs = hs_localization(cfg, stability, "adj", trunc, ctx)
    return verdict("hs-explicit", _hs_params(cfg, ctx, order=trunc, stability=stability), series_mismatch(lhs, rhs), started=t0)


def verify_explicit_fund(cfg: HandsawConfig, stability: int, trunc: int, ctx: EvalContext) -> VerdictReport:
    t0 = time.perf_counter()
    lhs = hs_z_fund_hat(cfg, stability, trunc, ctx)
    rhs = q_borel(hs_localization(cfg, stability, "fund", trunc, ctx), -1, ctx.q)
    return verdict("hs-explicit-fund", _hs_params(cfg, ctx, order=trunc, stability=stability), series_mismatch(lhs, rhs), started=t0)


def verify_main1(cfg: HandsawConfig, trunc: int, ctx: EvalContext) -> VerdictReport:
    """Z+ den = Z- num for the adjoint wall-crossing factor."""
    t0 = time.perf_counter()
    num, den = main1_factors(cfg, trunc, ctx)
    zp = hs_z_adj_explicit(cfg, PLUS, trunc, ctx)
    zm = hs_z_adj_explicit(cfg, MINUS, trunc, ctx)
    return verdict("main1", _hs_params(cfg, ctx, order=trunc), series_mismatch(zp * den, zm * num), started=t0)


def main2_factors(cfg: HandsawConfig, trunc: int, ctx: EvalContext) -> tuple[PSeries, PSeries]:
    """Numerator and denominator of the fundamental wall-crossing factor."""
    q = ctx.q
    em = lambda js: _prod(ctx.e[key(a)] * ctx.mu[key(a)] for a in js)
    num = single_poch(-em(cfg.J1), trunc, ctx)
    den = single_poch(-(q ** cfg.r0) / em(cfg.J0), trunc, ctx)
    return num, den


def verify_main2(cfg: HandsawConfig, trunc: int, ctx: EvalContext) -> VerdictReport:
    t0 = time.perf_counter()
    num, den = main2_factors(cfg, trunc, ctx)
    ip = hs_z_fund_hat(cfg, PLUS, trunc, ctx)
    im = hs_z_fund_hat(cfg, MINUS, trunc, ctx)
    return verdict("main2", _hs_params(cfg, ctx, order=trunc), series_mismatch(ip * den, im * num), started=t0)


# ---------------------------------------------------------------------------
# multiple basic hypergeometric series


def kajihara_phi(m: int, n: int, a: Sequence[Scalar], x: Sequence[Scalar], b: Sequence[Scalar], c: Sequence[Scalar], u_trunc: int, q: Scalar, u_scale: Scalar = 1) -> PSeries:
    """phi^{m,n}(a; x | b; c; u) truncated in u, with u replaced by u_scale * u."""
    if m < 1 or len(a) != m or len(x) != m or len(b) != n or len(c) != n:
        raise ValueError("parameter lengths do not match (m, n)")
    mode = mode_of(q)
    dv = vandermonde(list(x))
    coeffs: dict = {}
    for N in range(u_trunc + 1):
        acc = 0 * q
        for k in compositions(N, m):
            term = u_scale ** N * vandermonde([xi * q ** ki for xi, ki in zip(x, k)]) / dv
            for al in range(m):
                for be in range(m):
                    term = term * _ratio_poch(a[al] * x[be] / x[al], q * x[be] / x[al], q, k[be])
            for be in range(m):
                for al in range(n):
                    term = term * _ratio_poch(x[be] * b[al], x[be] * c[al], q, k[be])
            acc = acc + term
        coeffs[N] = acc
    return _series(coeffs, u_trunc, mode)


def kajihara_sides(a, x, b, y, c, trunc: int, q: Scalar, u_scale: Scalar = 1) -> tuple[PSeries, PSeries]:
    """Both sides of the Euler transformation, cross-multiplied.

    Returns phi^{m,n}(a; x | b y; c y; u) (u; q) and
    (a b u / c^n; q) phi^{n,m}(c / b; y | c x / a; c x; a b u / c^n).
    """
    m, n = len(a), len(b)
    mode = mode_of(q)
    A, Bp = _prod(a), _prod(b)
    lam = A * Bp * u_scale / c ** n
    lhs = kajihara_phi(m, n, a, x, [bi * yi for bi, yi in zip(b, y)], [c * yi for yi in y], trunc, q, u_scale)
    lhs = lhs * inf_poch(PSeries.monomial((1,), u_scale, 1, trunc, mode), [q])
    if n == 0:
        rhs = PSeries.constant(1, 1, trunc, mode)
    else:
        rhs = kajihara_phi(n, m, [c / bi for bi in b], y, [c * xi / ai for xi, ai in zip(x, a)], [c * xi for xi in x], trunc, q, lam)
    rhs = rhs * inf_poch(PSeries.monomial((1,), lam, 1, trunc, mode), [q])
    return lhs, rhs


def verify_kajihara(m: int, n: int, trunc: int, ctx: EvalContext) -> VerdictReport:
    """The Euler transformation at random parameters drawn from the context seed."""
    t0 = time.perf_counter()
    vals = ctx.aux(f"kajihara-{m}-{n}", 2 * m + 2 * n + 1)
    a, x = vals[:m], vals[m:2 * m]
    b, y = vals[2 * m:2 * m + n], vals[2 * m + n:2 * m + 2 * n]
    c = vals[-1]
    lhs, rhs = kajihara_sides(a, x, b, y, c, trunc, ctx.q)
    params = {"m": m, "n": n, "order": trunc, "mode": ctx.mode.value, "seed": ctx.seed}
    return verdict("kajihara", params, series_mismatch(lhs, rhs), started=t0)


def kajihara_dictionary(cfg: HandsawConfig, ctx: EvalContext) -> dict:
    """Parameters turning the Euler transformation into the fund wall-crossing formula.

    m = r1, n = r0, c = 1, u = -p/b; a = e mu and x = q e on J1; b = e mu/q and
    y = 1/e on J0.
    """
    q, o = ctx.q, one(ctx.mode)
    e = lambda al: ctx.e[key(al)]
    mu = lambda al: ctx.mu[key(al)]
    b = [e(al) * mu(al) / q for al in cfg.J0]
    return {
        "a": [e(al) * mu(al) for al in cfg.J1],
        "x": [q * e(al) for al in cfg.J1],
        "b": b,
        "y": [o / e(al) for al in cfg.J0],
        "c": o,
        "u_scale": -o / _prod(b) if b else -o,
    }


def verify_kajihara_dictionary(cfg: HandsawConfig, trunc: int, ctx: EvalContext) -> VerdictReport:
    """Under the dictionary, phi^{r1,r0} is the + side and phi^{r0,r1} the - side."""
    t0 = time.perf_counter()
    if cfg.r0 < 1 or cfg.r1 < 1:
        raise ValueError("the dictionary needs r0, r1 >= 1")
    d = kajihara_dictionary(cfg, ctx)
    q, c = ctx.q, d["c"]
    lam = _prod(d["a"]) * _prod(d["b"]) * d["u_scale"]
    plus = kajihara_phi(cfg.r1, cfg.r0, d["a"], d["x"], [bi * yi for bi, yi in zip(d["b"], d["y"])], [c * yi for yi in d["y"]], trunc, q, d["u_scale"])
    minus = kajihara_phi(cfg.r0, cfg.r1, [c / bi for bi in d["b"]], d["y"], [c * xi / ai for xi, ai in zip(d["x"], d["a"])], [c * xi for xi in d["x"]], trunc, q, lam)
    mm = series_mismatch(plus, hs_z_fund_hat(cfg, PLUS, trunc, ctx)) or series_mismatch(minus, hs_z_fund_hat(cfg, MINUS, trunc, ctx))
    return verdict("kajihara-dictionary", _hs_params(cfg, ctx, order=trunc), mm, started=t0)


def noumi_f(r1: int, r0: int, x: Sequence[Scalar], y: Sequence[Scalar], tau: Scalar, trunc: int, q: Scalar, p_scale: Scalar = 1) -> PSeries:
    """F_{r1,r0}(x, y; p_scale p) truncated in p."""
    if len(x) != r1 or len(y) != r0:
        raise ValueError("parameter lengths do not match")
    mode = mode_of(q)
    coeffs: dict = {}
    for n in range(trunc + 1):
        acc = 0 * q
        for k in (compositions(n, r1) if r1 else ([()] if n == 0 else [])):
            term = p_scale ** n
            for al in range(r1):
                for be in range(r1):
                    qk = q ** (-k[be])
                    term = term * _ratio_poch(qk * q * x[al] / (tau * x[be]), qk * x[al] / x[be], q, k[al])
            for be in range(r1):
                for al in range(r0):
                    term = term * _ratio_poch(x[be] * y[al], q * x[be] * y[al] / tau, q, k[be])
            acc = acc + term
        coeffs[n] = acc
    return _series(coeffs, trunc, mode)


def noumi_sides(r0: int, r1: int, x, y, tau: Scalar, trunc: int, q: Scalar) -> tuple[PSeries, PSeries]:
    """Both sides of the rank-changing transformation, cross-multiplied (r0 <= r1)."""
    if r0 > r1:
        raise ValueError("need r0 <= r1")
    mode = mode_of(q)
    lhs = noumi_f(r1, r0, x, y, tau, trunc, q, q ** r0 / tau ** r0)
    rhs = noumi_f(r0, r1, y, x, tau, trunc, q, q ** r1 / tau ** r1)
    mono = lambda c: PSeries.monomial((1,), c, 1, trunc, mode)
    for s in range(1, r1 - r0 + 1):
        rhs = rhs * inf_poch(mono(q ** (r0 + s) / tau ** (r0 + s - 1)), [q])
        lhs = lhs * inf_poch(mono(q ** (r0 + s) / tau ** (r0 + s)), [q])
    return lhs, rhs


def verify_lsw_noumi(r0: int, r1: int, trunc: int, ctx: EvalContext) -> VerdictReport:
    t0 = time.perf_counter()
    vals = ctx.aux(f"noumi-{r0}-{r1}", r0 + r1 + 1)
    x, y, tau = vals[:r1], vals[r1:r1 + r0], vals[-1]
    lhs, rhs = noumi_sides(r0, r1, x, y, tau, trunc, ctx.q)
    params = {"r": [r0, r1], "order": trunc, "mode": ctx.mode.value, "seed": ctx.seed}
    return verdict("lsw" if r0 == r1 else "noumi", params, series_mismatch(lhs, rhs), started=t0)


def lemma_elem_sides(x: Sequence[Scalar], k: Sequence[int], q: Scalar) -> tuple[Scalar, Scalar]:
    """Both sides of the Pochhammer inversion used to pass to Vandermonde form."""
    m = len(x)
    if len(k) != m:
        raise ValueError("x and k must have the same length")
    if len(set(x)) != m:
        raise ValueError("x must be pairwise distinct")
    o = one(mode_of(q))
    lhs, rhs = o, o
    K = sum(k)
    for al in range(m):
        for be in range(m):
            lhs = lhs / finite_poch(q ** (-k[be]) * x[al] / x[be], q, k[al])
            rhs = rhs / finite_poch(q * x[al] / x[be], q, k[al])
    rhs = rhs * (-1) ** K * q ** (K * (K + 1) // 2)
    for al, be in itertools.combinations(range(m), 2):
        rhs = rhs * (q ** k[al] * x[al] - q ** k[be] * x[be]) / (x[al] - x[be])
    return lhs, rhs


def lemma_elem_check(x: Sequence[Scalar], k: Sequence[int], q: Scalar) -> bool:
    lhs, rhs = lemma_elem_sides(x, k, q)
    return lhs == rhs


__all__ = [
    "PLUS",
    "MINUS",
    "HandsawConfig",
    "hs_context",
    "hs_fixed_points",
    "hs_v_character",
    "hs_tangent_raw",
    "hs_tangent_character",
    "hs_fund_character",
    "invert_e",
    "mirror_tangent_check",
    "hs_localization",
    "hs_z_adj_explicit",
    "hs_z_fund_hat",
    "vandermonde",
    "double_poch",
    "single_poch",
    "main1_factors",
    "main1_prefactor_single",
    "main2_factors",
    "verify_explicit_adj",
    "verify_explicit_fund",
    "verify_main1",
    "verify_main2",
    "kajihara_phi",
    "kajihara_sides",
    "verify_kajihara",
    "kajihara_dictionary",
    "verify_kajihara_dictionary",
    "noumi_f",
    "noumi_sides",
    "verify_lsw_noumi",
    "lemma_elem_sides",
    "lemma_elem_check",
]
