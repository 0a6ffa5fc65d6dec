"""Field arithmetic, parameter specialization and univariate rational functions.

Two coefficient fields are supported:

* ``Mode.EXACT``: :class:`fractions.Fraction`, exact rationals in lowest terms.
* ``Mode.PRIME``: :class:`GF`, residues modulo the Mersenne prime 2^61 - 1.

Identities are certified Schwartz-Zippel style: every equivariant parameter is
specialized to a random field element, and a verdict uses several seeds.
"""

from __future__ import annotations

import enum
import hashlib
import random
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Callable, Iterable, Sequence, TypeVar, Union

PRIME = (1 << 61) - 1


class GF:
    """Residue modulo ``PRIME``, always stored in ``[0, PRIME)``."""

    __slots__ = ("v",)

    def __init__(self, v: int = 0):
        self.v = v % PRIME

    @staticmethod
    def _lift(x) -> int:
        if isinstance(x, GF):
            return x.v
        if isinstance(x, int):
            return x % PRIME
        if isinstance(x, Fraction):
            if x.denominator % PRIME == 0:
                raise ZeroDivisionError("denominator vanishes modulo p")
            return x.numerator * pow(x.denominator, -1, PRIME) % PRIME
        return NotImplemented

    def __add__(self, other):
        o = GF._lift(other)
        if o is NotImplemented:
            return o
        r = GF.__new__(GF)
        s = self.v + o
        r.v = s - PRIME if s >= PRIME else s
        return r

    __radd__ = __add__

    def __sub__(self, other):
        o = GF._lift(other)
        if o is NotImplemented:
            return o
        r = GF.__new__(GF)
        s = self.v - o
        r.v = s + PRIME if s < 0 else s
        return r

    def __rsub__(self, other):
        o = GF._lift(other)
        if o is NotImplemented:
            return o
        r = GF.__new__(GF)
        s = o - self.v
        r.v = s + PRIME if s < 0 else s
        return r

    def __mul__(self, other):
        o = GF._lift(other)
        if o is NotImplemented:
            return o
        r = GF.__new__(GF)
        r.v = self.v * o % PRIME
        return r

    __rmul__ = __mul__

    def __neg__(self):
        r = GF.__new__(GF)
        r.v = PRIME - self.v if self.v else 0
        return r

    def __pos__(self):
        return self

    def inverse(self) -> "GF":
        if self.v == 0:
            raise ZeroDivisionError("inverse of zero in GF(2^61-1)")
        r = GF.__new__(GF)
        r.v = pow(self.v, PRIME - 2, PRIME)
        return r

    def __truediv__(self, other):
        o = GF._lift(other)
        if o is NotImplemented:
            return o
        if o == 0:
            raise ZeroDivisionError("division by zero in GF(2^61-1)")
        r = GF.__new__(GF)
        r.v = self.v * pow(o, PRIME - 2, PRIME) % PRIME
        return r

    def __rtruediv__(self, other):
        o = GF._lift(other)
        if o is NotImplemented:
            return o
        return GF(o) / self

    def __pow__(self, n: int):
        if n < 0:
            if self.v == 0:
                raise ZeroDivisionError("negative power of zero")
            return GF(pow(self.v, (PRIME - 2) * (-n), PRIME))
        r = GF.__new__(GF)
        r.v = pow(self.v, n, PRIME)
        return r

    def __eq__(self, other):
        o = GF._lift(other)
        if o is NotImplemented:
            return False
        return self.v == o

    def __ne__(self, other):
        return not self.__eq__(other)

    def __hash__(self):
        return hash(("GF", self.v))

    def __bool__(self):
        return self.v != 0

    def __repr__(self):
        return f"GF({self.v})"

    def __str__(self):
        return str(self.v)


Scalar = Union[Fraction, GF]
T = TypeVar("T")


class Mode(str, enum.Enum):
    EXACT = "exact"
    PRIME = "prime"


def coerce(x, mode: Mode) -> Scalar:
    """Embed an int or Fraction into the field of ``mode``."""
    if mode is Mode.PRIME:
        return x if isinstance(x, GF) else GF(GF._lift(x))
    if isinstance(x, GF):
        raise TypeError("cannot embed a prime-field residue into the rationals")
    return Fraction(x)


def one(mode: Mode) -> Scalar:
    return GF(1) if mode is Mode.PRIME else Fraction(1)


def zero(mode: Mode) -> Scalar:
    return GF(0) if mode is Mode.PRIME else Fraction(0)


def mode_of(x: Scalar) -> Mode:
    return Mode.PRIME if isinstance(x, GF) else Mode.EXACT


def scalar_str(x: Scalar) -> str:
    return str(x)


def parse_scalar(text: str, mode: Mode) -> Scalar:
    return GF(int(text)) if mode is Mode.PRIME else Fraction(text)


def prod(items: Iterable[Scalar], start: Scalar) -> Scalar:
    acc = start
    for x in items:
        acc = acc * x
    return acc


def _rng(seed: int, *labels) -> random.Random:
    # derive an independent stream per (seed, labels); str() keeps it stable across runs
    digest = hashlib.sha256(repr((seed,) + labels).encode()).digest()
    return random.Random(int.from_bytes(digest[:16], "big"))


def random_scalar(rng: random.Random, mode: Mode) -> Scalar:
    """A random nonzero field element.

    Exact mode draws small signed rationals so that coefficients stay readable;
    prime mode draws uniformly from the multiplicative group.
    """
    if mode is Mode.PRIME:
        return GF(rng.randrange(2, PRIME - 1))
    num = rng.randint(2, 60) * rng.choice((1, -1))
    den = rng.randint(2, 61)
    x = Fraction(num, den)
    return x if x not in (0, 1, -1) else Fraction(num + 101, den)


def derive_scalars(seed: int, mode: Mode, label: str, count: int) -> list[Scalar]:
    """Deterministic auxiliary parameters, independent of the context stream."""
    rng = _rng(seed, mode.value, "aux", label)
    return [random_scalar(rng, mode) for _ in range(count)]


class DegenerateContext(RuntimeError):
    """Raised when no admissible specialization is found within the retry budget."""


Key = tuple[int, int]


@dataclass(frozen=True)
class EvalContext:
    """A specialization of every equivariant parameter.

    ``s`` is the value of q^{1/2}; ``e``, ``mu``, ``nu`` are keyed by
    ``(vertex, alpha)`` with vertices ``1..N`` and ``alpha`` in ``1..r_i``.
    """

    mode: Mode
    N: int
    r: tuple[int, ...]
    seed: int
    s: Scalar
    t: Scalar
    kappa: Scalar
    e: dict = field(hash=False)
    mu: dict = field(hash=False)
    nu: dict = field(hash=False)

    @property
    def q(self) -> Scalar:
        return self.s * self.s

    @property
    def one(self) -> Scalar:
        return one(self.mode)

    @property
    def zero(self) -> Scalar:
        return zero(self.mode)

    def keys(self) -> list[Key]:
        return framing_keys(self.r)

    def aux(self, label: str, count: int) -> list[Scalar]:
        return derive_scalars(self.seed, self.mode, label, count)

    def qpow(self, n: int) -> Scalar:
        return self.s ** (2 * n)

    def with_values(self, **changes) -> "EvalContext":
        data = {f: getattr(self, f) for f in self.__dataclass_fields__}
        data.update(changes)
        return EvalContext(**data)


def framing_keys(r: Sequence[int]) -> list[Key]:
    return [(i + 1, a + 1) for i, ri in enumerate(r) for a in range(ri)]


def context_is_admissible(ctx: EvalContext, trunc_bound: int) -> bool:
    values = [ctx.s, ctx.t, ctx.kappa, *ctx.e.values(), *ctx.mu.values(), *ctx.nu.values()]
    if any(v == 0 for v in values):
        return False
    q = ctx.q
    kN = ctx.kappa ** ctx.N
    for j in range(1, 2 * trunc_bound + 3):
        for base in (q, ctx.t, kN):
            if base ** j == 1:
                return False
    es = list(ctx.e.values())
    if len(set(es)) != len(es):
        return False
    return True


def sample_context(
    N: int,
    r: Sequence[int],
    trunc_bound: int,
    seed: int,
    mode: Mode | str = Mode.PRIME,
    retries: int = 32,
) -> EvalContext:
    """Draw a deterministic admissible specialization for ``(N, r)``."""
    mode = Mode(mode)
    if N < 1 or len(r) != N or any(x < 0 for x in r) or trunc_bound < 0:
        raise ValueError(f"bad context request N={N} r={tuple(r)} bound={trunc_bound}")
    keys = framing_keys(r)
    for attempt in range(retries):
        rng = _rng(seed, mode.value, N, tuple(r), attempt)
        s, t, kappa = (random_scalar(rng, mode) for _ in range(3))
        e = {k: random_scalar(rng, mode) for k in keys}
        mu = {k: random_scalar(rng, mode) for k in keys}
        nu = {k: random_scalar(rng, mode) for k in keys}
        ctx = EvalContext(mode, N, tuple(r), seed, s, t, kappa, e, mu, nu)
        if context_is_admissible(ctx, trunc_bound):
            return ctx
    raise DegenerateContext(f"no admissible context after {retries} attempts")


def with_resample(
    compute: Callable[[EvalContext], T],
    N: int,
    r: Sequence[int],
    trunc_bound: int,
    seed: int,
    mode: Mode | str = Mode.PRIME,
    retries: int = 8,
) -> T:
    """Run ``compute`` on a context, redrawing it if a denominator vanishes."""
    for attempt in range(retries):
        ctx = sample_context(N, r, trunc_bound, seed + 7919 * attempt, mode)
        try:
            return compute(ctx)
        except ZeroDivisionError:
            continue
    raise DegenerateContext("every resampled context hit a vanishing denominator")


class PowerCache:
    """Memoized integer powers of a fixed base."""

    __slots__ = ("base", "_cache")

    def __init__(self, base: Scalar):
        self.base = base
        self._cache: dict[int, Scalar] = {}

    def __call__(self, n: int) -> Scalar:
        v = self._cache.get(n)
        if v is None:
            v = self.base ** n
            self._cache[n] = v
        return v


# ---------------------------------------------------------------------------
# univariate rational functions


def _trim(coeffs: list) -> list:
    while len(coeffs) > 1 and coeffs[-1] == 0:
        coeffs.pop()
    return coeffs


def poly_mul(a: Sequence[Scalar], b: Sequence[Scalar], zero_: Scalar) -> list:
    out = [zero_] * (len(a) + len(b) - 1)
    for i, x in enumerate(a):
        if x == 0:
            continue
        for j, y in enumerate(b):
            out[i + j] = out[i + j] + x * y
    return out


def poly_add(a: Sequence[Scalar], b: Sequence[Scalar], zero_: Scalar) -> list:
    n = max(len(a), len(b))
    return [
        (a[i] if i < len(a) else zero_) + (b[i] if i < len(b) else zero_) for i in range(n)
    ]


class UniRational:
    """Quotient of two dense polynomials in one symbol ``x`` (low degree first)."""

    __slots__ = ("num", "den", "mode")

    def __init__(self, num: Sequence[Scalar], den: Sequence[Scalar], mode: Mode):
        self.mode = mode
        z = zero(mode)
        self.num = _trim([coerce(c, mode) for c in num] or [z])
        self.den = _trim([coerce(c, mode) for c in den] or [z])
        if all(c == 0 for c in self.den):
            raise ZeroDivisionError("UniRational with zero denominator")

    @classmethod
    def constant(cls, c, mode: Mode) -> "UniRational":
        return cls([c], [1], mode)

    @classmethod
    def x(cls, mode: Mode) -> "UniRational":
        return cls([0, 1], [1], mode)

    @staticmethod
    def degree(coeffs: Sequence[Scalar]) -> int:
        for i in range(len(coeffs) - 1, -1, -1):
            if coeffs[i] != 0:
                return i
        return -1

    def _wrap(self, other) -> "UniRational":
        if isinstance(other, UniRational):
            return other
        return UniRational.constant(other, self.mode)

    def __add__(self, other):
        o = self._wrap(other)
        z = zero(self.mode)
        if self.den == o.den:
            return UniRational(poly_add(self.num, o.num, z), self.den, self.mode)
        num = poly_add(poly_mul(self.num, o.den, z), poly_mul(o.num, self.den, z), z)
        return UniRational(num, poly_mul(self.den, o.den, z), self.mode)

    __radd__ = __add__

    def __neg__(self):
        return UniRational([-c for c in self.num], self.den, self.mode)

    def __sub__(self, other):
        return self + (-self._wrap(other))

    def __rsub__(self, other):
        return self._wrap(other) - self

    def __mul__(self, other):
        o = self._wrap(other)
        z = zero(self.mode)
        return UniRational(poly_mul(self.num, o.num, z), poly_mul(self.den, o.den, z), self.mode)

    __rmul__ = __mul__

    def __truediv__(self, other):
        o = self._wrap(other)
        if UniRational.degree(o.num) < 0:
            raise ZeroDivisionError("division by the zero rational function")
        z = zero(self.mode)
        return UniRational(poly_mul(self.num, o.den, z), poly_mul(self.den, o.num, z), self.mode)

    def __call__(self, x: Scalar) -> Scalar:
        def horner(cs):
            acc = zero(self.mode)
            for c in reversed(cs):
                acc = acc * x + c
            return acc

        return horner(self.num) / horner(self.den)

    def is_zero(self) -> bool:
        return UniRational.degree(self.num) < 0


class LimitKind(str, enum.Enum):
    FINITE = "finite"
    ZERO = "zero"
    INFINITE = "diverges"


@dataclass(frozen=True)
class Limit:
    kind: LimitKind
    value: Scalar | None = None


def uni_limit_at_infinity(f: UniRational) -> Limit:
    """Limit of ``f(x)`` as ``x`` goes to infinity."""
    dn, dd = UniRational.degree(f.num), UniRational.degree(f.den)
    if dn < dd:
        return Limit(LimitKind.ZERO, zero(f.mode))
    if dn > dd:
        return Limit(LimitKind.INFINITE)
    return Limit(LimitKind.FINITE, f.num[dn] / f.den[dd])


def taylor_coefficients(num: Sequence[Scalar], den: Sequence[Scalar], order: int, mode: Mode) -> list:
    """Power series coefficients at 0 of num/den up to ``order`` (den[0] != 0)."""
    if den[0] == 0:
        raise ZeroDivisionError("pole at the expansion point")
    z = zero(mode)
    inv0 = one(mode) / den[0]
    out: list = []
    for n in range(order + 1):
        acc = num[n] if n < len(num) else z
        for k in range(1, min(n, len(den) - 1) + 1):
            acc = acc - den[k] * out[n - k]
        out.append(acc * inv0)
    return out


def residue_sum(z: Sequence[Scalar], w: Sequence[Scalar]) -> Scalar:
    """-Res_{u=0} - Res_{u=inf} of du/u * prod (1 - u z_k)/(1 - u w_k)."""
    if len(z) != len(w) or not z:
        raise ValueError("z and w must have the same positive length")
    if len(set(w)) != len(w):
        raise ValueError("repeated w values collide as poles")
    if any(x == 0 for x in w):
        raise ValueError("w values must be nonzero")
    mode = mode_of(w[0])
    o = one(mode)
    num, den = [o], [o]
    for zk, wk in zip(z, w):
        num = poly_mul(num, [o, -zk], zero(mode))
        den = poly_mul(den, [o, -wk], zero(mode))
    # at u = 0 the residue of f(u)/u is the constant Taylor coefficient of f
    res0 = taylor_coefficients(num, den, 0, mode)[0]
    # at u = infinity substitute u = 1/v: f(1/v) = rev(num)(v) / rev(den)(v)
    K = len(z)
    rnum = list(reversed(num + [zero(mode)] * (K + 1 - len(num))))
    rden = list(reversed(den + [zero(mode)] * (K + 1 - len(den))))
    # Res_{u=inf} f(u) du/u = -Res_{v=0} f(1/v) dv/v
    res_inf = -taylor_coefficients(rnum, rden, 0, mode)[0]
    return -res0 - res_inf


def residue_sum_check(z: Sequence[Scalar], w: Sequence[Scalar]) -> bool:
    """Whether the residue sum equals prod(z)/prod(w) - 1."""
    mode = mode_of(w[0])
    lhs = residue_sum(z, w)
    rhs = prod(z, one(mode)) / prod(w, one(mode)) - 1
    return lhs == rhs
