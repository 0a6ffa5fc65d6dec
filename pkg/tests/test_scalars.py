import random
from fractions import Fraction

import pytest
from hypothesis import given
from hypothesis import strategies as st

from artifact.scalars import (
    GF,
    PRIME,
    DegenerateContext,
    LimitKind,
    Mode,
    UniRational,
    context_is_admissible,
    parse_scalar,
    random_scalar,
    residue_sum,
    residue_sum_check,
    sample_context,
    taylor_coefficients,
    uni_limit_at_infinity,
)

field_elems = st.integers(min_value=0, max_value=PRIME - 1).map(GF)
fractions = st.fractions(max_denominator=50)


@given(field_elems, field_elems, field_elems)
def test_prime_field_axioms(a, b, c):
    assert (a + b) + c == a + (b + c)
    assert (a * b) * c == a * (b * c)
    assert a * (b + c) == a * b + a * c
    if a != 0:
        assert a * a.inverse() == 1
        assert (b / a) * a == b


@given(fractions, fractions, fractions)
def test_exact_field_axioms(a, b, c):
    assert a * (b + c) == a * b + a * c
    if a != 0:
        assert (b / a) * a == b


def test_prime_field_small_values():
    assert GF(PRIME - 1) + 1 == 0
    assert GF(3) * GF(5) == 15
    assert GF(2) ** -1 * 2 == 1
    with pytest.raises(ZeroDivisionError):
        GF(0).inverse()


def test_parse_round_trip():
    x = GF(123456789)
    assert parse_scalar(str(x), Mode.PRIME) == x
    assert parse_scalar("-3/7", Mode.EXACT) == Fraction(-3, 7)


def test_random_scalars_nonzero():
    rng = random.Random(0)
    for mode in Mode:
        for _ in range(200):
            assert random_scalar(rng, mode) != 0


def test_sample_context_deterministic_and_admissible():
    a = sample_context(1, (1,), 4, 7, Mode.PRIME)
    b = sample_context(1, (1,), 4, 7, Mode.PRIME)
    assert a == b and a.e == b.e and a.mu == b.mu
    assert context_is_admissible(a, 4)
    for j in range(1, 9):
        assert 1 - a.q ** j != 0


def test_sample_context_exact_denominators():
    ctx = sample_context(2, (1, 1), 6, 3, Mode.EXACT)
    vals = list(ctx.e.values()) + list(ctx.mu.values()) + list(ctx.nu.values())
    assert all(v != 0 for v in vals)
    assert len(set(ctx.e.values())) == 2
    for j in range(1, 15):
        for base in (ctx.q, ctx.t, ctx.kappa ** 2):
            assert base ** j != 1


def test_sample_context_rejects_bad_requests():
    with pytest.raises(ValueError):
        sample_context(2, (1,), 3, 1)
    with pytest.raises(ValueError):
        sample_context(1, (-1,), 3, 1)


def test_context_keys_and_with_values():
    ctx = sample_context(2, (2, 1), 2, 1)
    assert ctx.keys() == [(1, 1), (1, 2), (2, 1)]
    other = ctx.with_values(t=ctx.t * 2)
    assert other.t == ctx.t * 2 and other.s == ctx.s


def test_degenerate_context_reported(monkeypatch):
    import artifact.scalars as sc

    monkeypatch.setattr(sc, "context_is_admissible", lambda ctx, bound: False)
    with pytest.raises(DegenerateContext):
        sc.sample_context(1, (1,), 2, 1, Mode.PRIME, retries=3)


def test_uni_limit_examples():
    m = Mode.EXACT
    f = UniRational([1, 3], [2, 1], m)
    lim = uni_limit_at_infinity(f)
    assert lim.kind is LimitKind.FINITE and lim.value == 3
    assert uni_limit_at_infinity(UniRational([1], [1, 1], m)).kind is LimitKind.ZERO
    assert uni_limit_at_infinity(UniRational([1, 0, 1], [-1, 1], m)).kind is LimitKind.INFINITE


def test_unirational_arithmetic():
    m = Mode.EXACT
    x = UniRational.x(m)
    f = (x + 1) / (x - 2)
    assert f(Fraction(5)) == Fraction(6, 3)
    g = f * (x - 2) - x
    assert g(Fraction(7)) == 1


def test_taylor_coefficients_geometric():
    m = Mode.EXACT
    assert taylor_coefficients([1], [1, -2], 4, m) == [1, 2, 4, 8, 16]


def test_residue_examples():
    assert residue_sum_check([Fraction(2)], [Fraction(3)])
    assert residue_sum([Fraction(2)], [Fraction(3)]) == Fraction(-1, 3)
    z = [Fraction(2), Fraction(5)]
    assert residue_sum(z, z) == 0


@given(st.integers(min_value=1, max_value=5), st.integers(min_value=0, max_value=10 ** 6))
def test_residue_random(K, s):
    rng = random.Random(s)
    z = [random_scalar(rng, Mode.PRIME) for _ in range(K)]
    w = []
    while len(w) < K:
        x = random_scalar(rng, Mode.PRIME)
        if x not in w:
            w.append(x)
    assert residue_sum_check(z, w)
