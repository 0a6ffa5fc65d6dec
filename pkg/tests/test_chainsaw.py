import pytest

from artifact import chainsaw as cs
from artifact.chainsaw import COSTABLE, STABLE
from artifact.combinatorics import dimension_vector, enumerate_tuples
from artifact.scalars import Mode, sample_context
from artifact.series import PSeries


def fixed_points(N, r, bound):
    return [fp for fp in enumerate_tuples(N, r, bound)]


@pytest.mark.parametrize("N,r", [(1, (1,)), (2, (1, 1)), (2, (2, 1)), (3, (1, 1, 1))])
def test_tangent_rank_constant_per_dimension_vector(N, r):
    for stab in (STABLE, COSTABLE):
        ranks = {}
        for fp in fixed_points(N, r, 4):
            T = cs.tangent_character(fp, stab)
            v = dimension_vector(fp, stab)
            assert ranks.setdefault(v, T.rank()) == T.rank()
            assert all(m > 0 for _, m in T.items())
            # isolated fixed points: no trivial weight
            assert cs._basis(r).mono() not in T.terms


@pytest.mark.parametrize("N,r", [(1, (2,)), (2, (1, 1)), (2, (2, 1)), (3, (1, 1, 1))])
def test_tangent_matches_nekrasov_product(N, r, seed):
    ctx = sample_context(N, r, 4, seed)
    for stab in (STABLE, COSTABLE):
        for fp in fixed_points(N, r, 4):
            T = cs.tangent_character(fp, stab)
            assert cs.eu_t(T, ctx, ctx.t) == cs.tangent_nek_product(fp, stab, ctx, ctx.t)


@pytest.mark.parametrize("N,r", [(2, (1, 1)), (3, (1, 2, 1))])
def test_adjoint_class_is_tangent(N, r):
    for stab in (STABLE, COSTABLE):
        for fp in fixed_points(N, r, 3):
            assert cs.class_character(fp, stab, "adj") == cs.tangent_character(fp, stab)


@pytest.mark.parametrize("N,r", [(1, (1,)), (2, (1, 1)), (3, (1, 1, 1))])
def test_fund_class_matches_nekrasov_product(N, r, seed):
    ctx = sample_context(N, r, 3, seed)
    for fp in fixed_points(N, r, 3):
        ch = cs.class_character(fp, STABLE, "fund")
        assert cs.eu_t(ch, ctx, ctx.one) == cs.fund_nek_product(fp, ctx)


def test_fund_class_is_degree_zero():
    # the V^ nu twist must carry kappa q; with 1/(kappa q) the degree is off by 2
    r = (1, 1, 1)
    B = cs._basis(r)
    for fp in fixed_points(3, r, 3):
        for stab in (STABLE, COSTABLE):
            ch = cs.class_character(fp, stab, "fund")
            assert all(B.degree(w) == 0 for w, _ in ch.items())
    assert B.degree(B.mono(s=2, kappa=1)) == 2
    assert B.degree(B.mono(s=-2, kappa=-1)) == 1


def test_unknown_class():
    fp = next(iter(enumerate_tuples(1, (1,), 0)))
    with pytest.raises(ValueError):
        cs.class_character(fp, STABLE, "spin")


def test_order_zero_series_is_one():
    ctx = sample_context(2, (1, 1), 0, 1)
    assert cs.z_adj(ctx, 0) == PSeries.constant(1, 2, 0, ctx.mode)


def test_context_mismatch():
    ctx = sample_context(2, (1, 1), 2, 1)
    with pytest.raises(ValueError):
        cs.z_series(2, (2, 1), STABLE, "adj", 2, ctx)


def test_rank_one_closed_form(seed):
    ctx = sample_context(1, (1,), 4, seed)
    assert cs.verify_rank_one(4, ctx).passed


@pytest.mark.parametrize("r", [(1, 1), (2, 1), (1, 2)])
def test_identity_adj(r, seed):
    ctx = sample_context(2, r, 3, seed)
    assert cs.verify_identity_adj(2, r, 3, ctx).passed


def test_identity_adj_three_vertices():
    ctx = sample_context(3, (1, 2, 1), 3, 5)
    assert cs.verify_identity_adj(3, (1, 2, 1), 3, ctx).passed


def test_flipped_orientation_is_the_inverse():
    r = (2, 1)
    ctx = sample_context(2, r, 3, 1)
    assert not cs.verify_identity_adj(2, r, 3, ctx, flipped=True).passed
    Z = cs.z_adj(ctx, 3, STABLE)
    Zc = cs.z_adj(ctx, 3, COSTABLE)
    assert Zc / Z == cs.phi_ratio(2, r, 3, ctx).inverse()


def test_index_modulus_fails_where_total_modulus_holds():
    r = (2, 2, 1)
    ctx = sample_context(3, r, 4, 2)
    assert cs.verify_identity_adj(3, r, 4, ctx, modulus="total").passed
    assert not cs.verify_identity_adj(3, r, 4, ctx, modulus="index").passed


@pytest.mark.parametrize("r", [(2, 1), (2, 1, 1)])
def test_phi_against_tables(r, seed):
    ctx = sample_context(len(r), r, 4, seed)
    assert cs.verify_phi_table(r, 4, ctx).passed


def test_example_table_21(seed):
    ctx = sample_context(2, (2, 1), 4, seed)
    rep = cs.verify_example_table((2, 1), 4, ctx)
    assert rep.passed and rep.kind == "conjecture"


def test_example_ratio_unknown():
    ctx = sample_context(2, (1, 1), 2, 1)
    with pytest.raises(ValueError):
        cs.example_ratio((1, 1), 2, ctx)


@pytest.mark.parametrize("l", [1, 2])
def test_unit_framing(l, seed):
    r = tuple(1 if i + 1 == l else 0 for i in range(2))
    ctx = sample_context(2, r, 3, seed)
    assert cs.verify_unit_framing(2, l, 3, ctx).passed


def test_unit_framing_needs_unit_vector():
    ctx = sample_context(2, (1, 1), 2, 1)
    with pytest.raises(ValueError):
        cs.verify_unit_framing(2, 1, 2, ctx)


def test_equal_framing(seed):
    ctx = sample_context(2, (1, 1), 3, seed)
    assert cs.verify_equal_framing(2, (1, 1), 3, ctx).passed


@pytest.mark.parametrize("N,r", [(1, (1,)), (1, (2,)), (2, (1, 1)), (2, (1, 0))])
def test_conjecture_fund(N, r, seed):
    ctx = sample_context(N, r, 3, seed)
    assert cs.verify_conj_fund(N, r, 3, ctx).passed


def test_rank_one_fund_closed_form(seed):
    ctx = sample_context(1, (1,), 4, seed)
    num, den = cs.rank_one_fund_ratio(4, ctx)
    Z = cs.z_fund(ctx, 4, STABLE)
    Zc = cs.z_fund(ctx, 4, COSTABLE)
    assert Z * den == Zc * num
    assert Z != Zc


@pytest.mark.parametrize("N,r,v", [(1, (1,), (2,)), (2, (1, 1), (1, 1)), (2, (2, 1), (2, 1)), (2, (1, 2), (0, 3))])
def test_duality_coefficients(N, r, v, seed):
    ctx = sample_context(N, r, sum(v), seed)
    assert cs.verify_duality(N, r, v, ctx)


def test_reflect_context_is_an_involution():
    ctx = sample_context(3, (1, 2, 0), 2, 4)
    back = cs.reflect_context(cs.reflect_context(ctx))
    assert back.r == ctx.r and back.e == ctx.e and back.mu == ctx.mu and back.nu == ctx.nu


@pytest.mark.parametrize("N,r,l", [(1, (1,), 1), (2, (1, 1), 1), (2, (1, 1), 2), (2, (1, 0), 2)])
def test_limit_factorization(N, r, l):
    ctx = sample_context(N, r, 2, 3)
    assert cs.limit_factorization(N, r, l, 2, ctx).passed


@pytest.mark.parametrize("N,d", [(2, 1), (2, 2), (3, 1)])
def test_gl_n_limit(N, d, seed):
    ctx = sample_context(N, (d,) * N, 3, seed)
    assert cs.gl_n_limit_check(N, d, 3, ctx).passed


def test_upper_matrix_count():
    # N = 2, d = 1: one slot (1, 2) of x-degree 1
    assert len(cs.upper_matrices(2, 1, 3)) == 4
    assert len(cs.upper_matrices(3, 1, 0)) == 1


def test_exact_and_prime_modes_agree():
    for mode in Mode:
        ctx = sample_context(2, (1, 1), 2, 11, mode)
        assert cs.verify_identity_adj(2, (1, 1), 2, ctx).passed
