"""Truncated multigraded power series in p_1..p_N and q-series operators.

Truncation is by total degree: a series with bound ``n`` stores the
coefficients of monomials p^v with |v| <= n only.
"""

from __future__ import annotations

import csv
import io
import json
from functools import lru_cache
from typing import Callable, Iterable, Mapping, Sequence, Union

from .scalars import Mode, Scalar, coerce, mode_of, one, zero

Index = tuple[int, ...]


@lru_cache(maxsize=None)
def monomials(n_vars: int, trunc: int) -> tuple[Index, ...]:
    """All exponent vectors with total degree <= trunc, graded then lexicographic."""
    out: list[Index] = []
    for d in range(trunc + 1):
        out.extend(compositions(d, n_vars))
    return tuple(out)


@lru_cache(maxsize=None)
def compositions(n: int, parts: int) -> tuple[Index, ...]:
    """Weak compositions of ``n`` into ``parts`` nonnegative entries, lexicographically descending."""
    if parts == 0:
        return ((),) if n == 0 else ()
    if parts == 1:
        return ((n,),)
    out = []
    for first in range(n, -1, -1):
        for rest in compositions(n - first, parts - 1):
            out.append((first,) + rest)
    return tuple(out)


class PSeries:
    """Element of K[p_1..p_N] / (monomials of degree > trunc)."""

    __slots__ = ("n_vars", "trunc", "mode", "coeffs")

    def __init__(self, n_vars: int, trunc: int, mode: Mode, coeffs: Mapping[Index, object] | None = None):
        if n_vars < 1 or trunc < 0:
            raise ValueError("need n_vars >= 1 and trunc >= 0")
        self.n_vars = n_vars
        self.trunc = trunc
        self.mode = mode
        self.coeffs: dict[Index, Scalar] = {}
        for v, c in (coeffs or {}).items():
            v = tuple(v)
            if len(v) != n_vars or min(v) < 0:
                raise ValueError(f"bad multi-index {v}")
            if sum(v) > trunc:
                continue
            c = coerce(c, mode)
            if c != 0:
                self.coeffs[v] = c

    # construction helpers

    @classmethod
    def constant(cls, c, n_vars: int, trunc: int, mode: Mode) -> "PSeries":
        return cls(n_vars, trunc, mode, {(0,) * n_vars: c})

    @classmethod
    def monomial(cls, v: Sequence[int], c, n_vars: int, trunc: int, mode: Mode) -> "PSeries":
        return cls(n_vars, trunc, mode, {tuple(v): c})

    @classmethod
    def var(cls, i: int, n_vars: int, trunc: int, mode: Mode, c=1) -> "PSeries":
        """The series c * p_i, with ``i`` zero-based."""
        v = [0] * n_vars
        v[i] = 1
        return cls(n_vars, trunc, mode, {tuple(v): c})

    def like(self, coeffs: Mapping[Index, object] | None = None) -> "PSeries":
        return PSeries(self.n_vars, self.trunc, self.mode, coeffs)

    def one_like(self) -> "PSeries":
        return PSeries.constant(1, self.n_vars, self.trunc, self.mode)

    # inspection

    def __getitem__(self, v: Sequence[int]) -> Scalar:
        return self.coeffs.get(tuple(v), zero(self.mode))

    def constant_term(self) -> Scalar:
        return self[(0,) * self.n_vars]

    def min_degree(self) -> int:
        """Lowest total degree present, or trunc + 1 for the zero series."""
        return min((sum(v) for v in self.coeffs), default=self.trunc + 1)

    def is_zero(self) -> bool:
        return not self.coeffs

    def _check(self, other: "PSeries") -> None:
        if not isinstance(other, PSeries):
            raise TypeError("expected a PSeries")
        if (self.n_vars, self.trunc) != (other.n_vars, other.trunc):
            raise ValueError(
                f"bound mismatch: ({self.n_vars},{self.trunc}) vs ({other.n_vars},{other.trunc})"
            )
        if self.mode is not other.mode:
            raise ValueError("mode mismatch")

    # ring operations

    def _lift(self, other) -> "PSeries":
        if isinstance(other, PSeries):
            self._check(other)
            return other
        return PSeries.constant(other, self.n_vars, self.trunc, self.mode)

    def __add__(self, other):
        o = self._lift(other)
        out = dict(self.coeffs)
        for v, c in o.coeffs.items():
            out[v] = out[v] + c if v in out else c
        return self.like(out)

    __radd__ = __add__

    def __neg__(self):
        return self.like({v: -c for v, c in self.coeffs.items()})

    def __sub__(self, other):
        return self + (-self._lift(other))

    def __rsub__(self, other):
        return self._lift(other) - self

    def scale(self, c) -> "PSeries":
        c = coerce(c, self.mode)
        return self.like({v: x * c for v, x in self.coeffs.items()})

    def __mul__(self, other):
        if not isinstance(other, PSeries):
            return self.scale(other)
        self._check(other)
        n = self.trunc
        out: dict[Index, Scalar] = {}
        b_items = sorted(other.coeffs.items(), key=lambda kv: sum(kv[0]))
        b_deg = [sum(v) for v, _ in b_items]
        for va, ca in self.coeffs.items():
            room = n - sum(va)
            for (vb, cb), db in zip(b_items, b_deg):
                if db > room:
                    break
                w = tuple(x + y for x, y in zip(va, vb))
                prod_ = ca * cb
                out[w] = out[w] + prod_ if w in out else prod_
        return self.like(out)

    def __rmul__(self, other):
        return self.scale(other)

    def __pow__(self, k: int) -> "PSeries":
        if k < 0:
            return self.inverse() ** (-k)
        result = self.one_like()
        base = self
        while k:
            if k & 1:
                result = result * base
            k >>= 1
            if k:
                base = base * base
        return result

    def inverse(self) -> "PSeries":
        """Multiplicative inverse; requires an invertible constant term."""
        a0 = self.constant_term()
        if a0 == 0:
            raise ZeroDivisionError("series with zero constant term is not invertible")
        inv0 = one(self.mode) / a0
        # 1/a = inv0 * sum_k (1 - a*inv0)^k, the tail has positive degree
        tail = self.one_like() - self.scale(inv0)
        acc = self.one_like()
        power = self.one_like()
        for _ in range(self.trunc):
            power = power * tail
            if power.is_zero():
                break
            acc = acc + power
        return acc.scale(inv0)

    def __truediv__(self, other):
        if isinstance(other, PSeries):
            return self * other.inverse()
        return self.scale(one(self.mode) / coerce(other, self.mode))

    def __rtruediv__(self, other):
        return self._lift(other) * self.inverse()

    def __eq__(self, other):
        if not isinstance(other, PSeries):
            return NotImplemented
        if (self.n_vars, self.trunc, self.mode) != (other.n_vars, other.trunc, other.mode):
            return False
        return self.coeffs == other.coeffs

    def __hash__(self):
        return hash((self.n_vars, self.trunc, frozenset(self.coeffs.items())))

    def first_difference(self, other: "PSeries") -> Index | None:
        """Smallest multi-index (graded order) where the two series differ."""
        self._check(other)
        for v in monomials(self.n_vars, self.trunc):
            if self[v] != other[v]:
                return v
        return None

    def exp(self) -> "PSeries":
        """exp of a series with zero constant term."""
        if self.constant_term() != 0:
            raise ValueError("exp needs a zero constant term")
        z = zero(self.mode)
        g: dict[Index, Scalar] = {(0,) * self.n_vars: one(self.mode)}
        f_items = [(v, sum(v), c) for v, c in self.coeffs.items()]
        # Euler operator recursion: |w| g_w = sum_{u+v=w} |u| f_u g_v
        for w in monomials(self.n_vars, self.trunc)[1:]:
            dw = sum(w)
            acc = z
            for u, du, fu in f_items:
                if du > dw:
                    continue
                rest = tuple(a - b for a, b in zip(w, u))
                if min(rest) < 0:
                    continue
                gv = g.get(rest)
                if gv is not None:
                    acc = acc + fu * gv * du
            if acc != 0:
                g[w] = acc / dw
        return self.like(g)

    def log(self) -> "PSeries":
        """log of a series with constant term 1."""
        if self.constant_term() != 1:
            raise ValueError("log needs constant term 1")
        x = self - 1
        acc = self.like()
        power = self.one_like()
        for k in range(1, self.trunc + 1):
            power = power * x
            if power.is_zero():
                break
            term = power.scale(coerce(1, self.mode) / k)
            acc = acc + term if k % 2 else acc - term
        return acc

    # variable manipulations

    def map_monomials(self, fn: Callable[[Index], Scalar]) -> "PSeries":
        """Rescale each coefficient of p^v by fn(v)."""
        return self.like({v: c * fn(v) for v, c in self.coeffs.items()})

    def substitute(self, images: Sequence["PSeries"]) -> "PSeries":
        """Replace p_i by images[i]; each image must have zero constant term."""
        if len(images) != self.n_vars:
            raise ValueError("need one image per variable")
        target = images[0]
        for im in images:
            target._check(im)
            if im.constant_term() != 0:
                raise ValueError("substituted images need zero constant term")
        powers: list[dict[int, PSeries]] = [{0: target.one_like()} for _ in images]

        def pw(i: int, k: int) -> PSeries:
            cache = powers[i]
            if k not in cache:
                cache[k] = pw(i, k - 1) * images[i]
            return cache[k]

        out = target.like()
        for v, c in self.coeffs.items():
            term = target.one_like().scale(c)
            for i, k in enumerate(v):
                if k:
                    term = term * pw(i, k)
            out = out + term
        return out

    def scale_vars(self, factors: Sequence[Scalar]) -> "PSeries":
        """p_i -> factors[i] * p_i."""
        if len(factors) != self.n_vars:
            raise ValueError("need one factor per variable")
        cache: dict[tuple[int, int], Scalar] = {}

        def f(v: Index) -> Scalar:
            acc = one(self.mode)
            for i, k in enumerate(v):
                if k:
                    key = (i, k)
                    if key not in cache:
                        cache[key] = coerce(factors[i], self.mode) ** k
                    acc = acc * cache[key]
            return acc

        return self.map_monomials(f)

    def permute_vars(self, perm: Sequence[int]) -> "PSeries":
        """Variable ``i`` of the result carries exponent v[perm[i]] of the input."""
        return self.like({tuple(v[perm[i]] for i in range(self.n_vars)): c for v, c in self.coeffs.items()})

    def truncate(self, trunc: int) -> "PSeries":
        return PSeries(self.n_vars, trunc, self.mode, self.coeffs)

    # serialization

    def terms(self) -> list[tuple[Index, Scalar]]:
        return sorted(self.coeffs.items())

    def to_json_obj(self) -> dict:
        return {
            "vars": self.n_vars,
            "trunc": self.trunc,
            "mode": self.mode.value,
            "terms": [[*v, str(c)] for v, c in self.terms()],
        }

    def to_json(self) -> str:
        return json.dumps(self.to_json_obj(), separators=(",", ":"))

    def to_csv(self) -> str:
        buf = io.StringIO()
        w = csv.writer(buf, lineterminator="\n")
        w.writerow([f"v{i + 1}" for i in range(self.n_vars)] + ["coeff"])
        for v, c in self.terms():
            w.writerow([*v, str(c)])
        return buf.getvalue()

    def __repr__(self):
        body = " + ".join(f"{c}*p^{v}" for v, c in self.terms()) or "0"
        return f"PSeries[{self.n_vars},{self.trunc}]({body})"


def series_arith(a: PSeries, b: PSeries | None, op: str):
    """Dispatch ``op`` in {add, mul, invert-a, equal} on truncated series."""
    if op == "add":
        return a + b
    if op == "mul":
        return a * b
    if op == "invert-a":
        return a.inverse()
    if op == "equal":
        a._check(b)
        return a == b
    raise ValueError(f"unknown series op {op!r}")


def finite_poch(x: Scalar, q: Scalar, k: int) -> Scalar:
    """(x;q)_k = prod_{i<k} (1 - x q^i)."""
    if k < 0:
        raise ValueError("finite_poch needs k >= 0")
    acc = one(mode_of(x))
    term = x
    for _ in range(k):
        acc = acc * (1 - term)
        term = term * q
    return acc


Param = Union[Scalar, PSeries]


def inf_poch(base: PSeries, params: Iterable[Param]) -> PSeries:
    """prod over i_1..i_k >= 0 of (1 - base * prod_j param_j^{i_j}).

    Computed as exp(-sum_m base^m / (m prod_j (1 - param_j^m))). ``base`` must
    have zero constant term; series parameters need zero constant term too.
    """
    params = list(params)
    if base.constant_term() != 0:
        raise ValueError("inf_poch base must have zero constant term")
    for a in params:
        if isinstance(a, PSeries):
            base._check(a)
            if a.constant_term() != 0:
                raise ValueError("series parameters must have zero constant term")
    mode = base.mode
    log = base.like()
    bm = base.one_like()
    for m in range(1, base.trunc + 1):
        bm = bm * base
        if bm.is_zero():
            break
        term = bm.scale(one(mode) / m)
        for a in params:
            if isinstance(a, PSeries):
                term = term * (base.one_like() - a ** m).inverse()
            else:
                a = coerce(a, mode)
                den = 1 - a ** m
                if den == 0:
                    raise ZeroDivisionError("parameter is a root of unity")
                term = term.scale(one(mode) / den)
        log = log - term
    return log.exp()


def q_borel(f: PSeries, direction: int, q: Scalar) -> PSeries:
    """B^{direction}: p^n -> q^{direction * n(n+1)/2} p^n (one variable only)."""
    if f.n_vars != 1:
        raise ValueError("q-Borel transform is defined on one-variable series")
    if direction not in (1, -1):
        raise ValueError("direction must be +1 or -1")
    return f.map_monomials(lambda v: q ** (direction * v[0] * (v[0] + 1) // 2))


def theta_shift(f: PSeries, c: Sequence[int], s: Scalar) -> PSeries:
    """q^{sum c_i theta_i / 2}: p^v -> s^{sum c_i v_i} p^v."""
    if len(c) != f.n_vars:
        raise ValueError("shift vector length must match n_vars")
    return f.map_monomials(lambda v: s ** sum(ci * vi for ci, vi in zip(c, v)))


def laplacian_form(v: Sequence[int]) -> int:
    """Q(v) = sum v_i^2 - sum v_i v_{i+1}, cyclically."""
    n = len(v)
    return sum(x * x for x in v) - sum(v[i] * v[(i + 1) % n] for i in range(n))


def q_laplacian_shift(f: PSeries, s: Scalar) -> PSeries:
    """q^{-Delta/2}: p^v -> s^{-Q(v)} p^v."""
    return f.map_monomials(lambda v: s ** (-laplacian_form(v)))


def series_from_json(text: str) -> PSeries:
    from .scalars import parse_scalar

    obj = json.loads(text)
    mode = Mode(obj.get("mode", "exact"))
    n = obj["vars"]
    coeffs = {tuple(t[:n]): parse_scalar(t[n], mode) for t in obj["terms"]}
    return PSeries(n, obj["trunc"], mode, coeffs)


def random_series(rng, n_vars: int, trunc: int, mode: Mode, density: float = 0.6) -> PSeries:
    from .scalars import random_scalar

    coeffs = {}
    for v in monomials(n_vars, trunc):
        if rng.random() < density:
            coeffs[v] = random_scalar(rng, mode)
    return PSeries(n_vars, trunc, mode, coeffs)

