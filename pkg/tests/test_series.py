import random
from fractions import Fraction

import pytest
from hypothesis import given
from hypothesis import strategies as st

from artifact.scalars import Mode
from artifact.series import (
    PSeries,
    compositions,
    finite_poch,
    inf_poch,
    laplacian_form,
    monomials,
    q_borel,
    q_laplacian_shift,
    random_series,
    series_arith,
    series_from_json,
    theta_shift,
)

E = Mode.EXACT
seeds = st.integers(min_value=0, max_value=10 ** 6)


def test_monomial_counts():
    assert len(monomials(2, 3)) == 10
    assert compositions(2, 2) == ((2, 0), (1, 1), (0, 2))
    assert compositions(0, 0) == ((),)


@given(seeds, st.integers(1, 3), st.integers(0, 4))
def test_ring_axioms(s, n, trunc):
    rng = random.Random(s)
    a, b, c = (random_series(rng, n, trunc, Mode.PRIME) for _ in range(3))
    assert (a * b) * c == a * (b * c)
    assert a * (b + c) == a * b + a * c
    assert a * b == b * a


@given(seeds, st.integers(1, 3), st.integers(0, 4))
def test_inverse(s, n, trunc):
    rng = random.Random(s)
    a = random_series(rng, n, trunc, Mode.PRIME) + 1
    if a.constant_term() == 0:
        a = a + 1
    assert a * a.inverse() == a.one_like()


@given(seeds, st.integers(1, 2), st.integers(0, 4))
def test_exp_log_inverse(s, n, trunc):
    rng = random.Random(s)
    a = random_series(rng, n, trunc, Mode.PRIME)
    a = a - a.constant_term()
    assert a.exp().log() == a


def test_inverse_needs_unit():
    with pytest.raises(ZeroDivisionError):
        PSeries.var(0, 1, 3, E).inverse()


def test_bound_mismatch():
    with pytest.raises(ValueError):
        PSeries.constant(1, 1, 3, E) + PSeries.constant(1, 1, 4, E)


def test_geometric_series():
    p = PSeries.var(0, 1, 5, E)
    inv = (1 - p).inverse()
    assert all(inv[(k,)] == 1 for k in range(6))


def test_finite_poch():
    q, x = Fraction(1, 3), Fraction(2, 5)
    assert finite_poch(x, q, 0) == 1
    assert finite_poch(x, q, 2) == (1 - x) * (1 - x * q)


def test_inf_poch_euler_expansion():
    # (x p; q) = sum_k (-x)^k q^{k(k-1)/2} p^k / (q; q)_k
    q = Fraction(2, 7)
    trunc = 5
    p = PSeries.var(0, 1, trunc, E)
    lhs = inf_poch(p.scale(Fraction(3)), [q])
    rhs = p.like({(k,): (-3) ** k * q ** (k * (k - 1) // 2) / finite_poch(q, q, k) for k in range(trunc + 1)})
    assert lhs == rhs


def test_q_binomial_theorem():
    q, a = Fraction(1, 5), Fraction(-4, 3)
    trunc = 5
    p = PSeries.var(0, 1, trunc, E)
    lhs = p.like({(k,): finite_poch(a, q, k) / finite_poch(q, q, k) for k in range(trunc + 1)})
    rhs = inf_poch(p.scale(a), [q]) / inf_poch(p, [q])
    assert lhs == rhs


def test_inf_poch_two_parameters():
    # (x; q, t) / (x t; q, t) = (x; q)
    q, t = Fraction(1, 3), Fraction(2, 7)
    p = PSeries.var(0, 1, 4, E)
    assert inf_poch(p, [q, t]) / inf_poch(p.scale(t), [q, t]) == inf_poch(p, [q])


def test_inf_poch_series_parameter():
    # a series-valued parameter P: (x; q, P) / (x P; q, P) = (x; q)
    q = Fraction(3, 5)
    x = PSeries.var(0, 2, 4, E)
    P = PSeries.var(1, 2, 4, E).scale(Fraction(2))
    assert inf_poch(x, [q, P]) / inf_poch(x * P, [q, P]) == inf_poch(x, [q])


def test_inf_poch_rejects_constant_term():
    with pytest.raises(ValueError):
        inf_poch(PSeries.constant(1, 1, 2, E), [Fraction(1, 2)])


def test_q_borel_round_trip():
    rng = random.Random(1)
    f = random_series(rng, 1, 5, Mode.PRIME)
    q = f[(1,)] + 2
    g = q_borel(f, 1, q)
    assert g[(3,)] == f[(3,)] * q ** 6
    assert q_borel(g, -1, q) == f


def test_theta_and_laplacian_shift():
    s = Fraction(3, 2)
    f = PSeries(2, 3, E, {(1, 0): 1, (1, 1): 1})
    g = theta_shift(f, [2, -1], s)
    assert g[(1, 0)] == s ** 2 and g[(1, 1)] == s
    assert laplacian_form([1, 1]) == 0 and laplacian_form([2, 0]) == 4
    h = q_laplacian_shift(f, s)
    assert h[(1, 0)] == s ** -1


def test_substitute_and_scale_vars():
    f = PSeries(2, 2, E, {(1, 0): 1, (0, 1): 2})
    g = f.scale_vars([Fraction(3), Fraction(5)])
    assert g[(1, 0)] == 3 and g[(0, 1)] == 10
    p1 = PSeries.var(0, 2, 2, E)
    swapped = f.substitute([PSeries.var(1, 2, 2, E), p1])
    assert swapped[(0, 1)] == 1 and swapped[(1, 0)] == 2


def test_json_round_trip_and_csv():
    rng = random.Random(4)
    for mode in Mode:
        f = random_series(rng, 2, 3, mode)
        assert series_from_json(f.to_json()) == f
    f = PSeries.constant(1, 2, 0, E)
    assert f.to_csv().splitlines() == ["v1,v2,coeff", "0,0,1"]
    assert '"terms":[[0,0,"1"]]' in f.to_json()


def test_series_arith_dispatch():
    a = PSeries.constant(2, 1, 2, E)
    assert series_arith(a, a, "add")[(0,)] == 4
    assert series_arith(a, None, "invert-a")[(0,)] == Fraction(1, 2)
    assert series_arith(a, a, "equal")
    with pytest.raises(ValueError):
        series_arith(a, a, "pow")
