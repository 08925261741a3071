from fractions import Fraction

import pytest
from hypothesis import given, strategies as st

from fanocalc import chow
from fanocalc.chow import (BasisMap, ContextMismatchError, RingCtx,
                           basis_map_A, basis_map_B, convert_element,
                           derived_context, dumps_context, intersection_degree,
                           loads_context, reduce)

F = Fraction


def lh_ctx(n, c1, c2_over_d, degree_s):
    return RingCtx(n, ("L", "H"), F(c1), -F(c2_over_d), F(degree_s))


def w36_ctx():
    return lh_ctx(5, -1, F(1, 3), 18)


small_fracs = st.fractions(min_value=-5, max_value=5, max_denominator=4)


@st.composite
def contexts(draw):
    n = draw(st.integers(min_value=2, max_value=5))
    return RingCtx(n, ("G1", "G2"), draw(small_fracs), draw(small_fracs),
                   draw(st.fractions(min_value=F(1, 3), max_value=30,
                                     max_denominator=3)))


@st.composite
def ctx_and_elems(draw, count=1):
    ctx = draw(contexts())
    elems = []
    for _ in range(count):
        coeffs = draw(st.dictionaries(
            st.tuples(st.integers(min_value=0, max_value=2),
                      st.integers(min_value=0, max_value=ctx.n)),
            small_fracs, max_size=4))
        elems.append(ctx.element(coeffs))
    return (ctx, *elems)


def test_reduce_square_of_canonical_class():
    # K = -2L in the context with c1 = 0, c2/d = 1: K^2 = -4 H^2.
    ctx = lh_ctx(3, 0, 1, 2)
    k = ctx.element({(1, 0): F(-2)})
    assert k * k == ctx.element({(0, 2): F(-4)})


def test_reduce_truncates_top_power():
    ctx = lh_ctx(3, 0, 1, 2)
    assert (ctx.gen2 ** 4).is_zero()
    assert (ctx.gen1 * ctx.gen2 ** 3 * ctx.gen2).is_zero()


def test_reduce_fifth_power_in_w36_ring():
    ctx = w36_ctx()
    s = ctx.gen1 + ctx.gen2
    assert s ** 5 == ctx.element({(1, 4): F(1, 9)})
    assert (s ** 6).is_zero()


def test_reduce_rejects_mixed_contexts():
    a, b = lh_ctx(3, 0, 1, 2), lh_ctx(3, 0, 1, 4)
    with pytest.raises(ContextMismatchError):
        a.gen1 + b.gen1
    with pytest.raises(ContextMismatchError):
        reduce(a.gen1, b)


def test_intersection_degree_examples():
    ctx = lh_ctx(5, -1, F(1, 3), 18)
    minus_k = ctx.element({(1, 0): F(2), (0, 1): F(1)})
    assert intersection_degree(minus_k * ctx.gen2 ** 5) == 36
    assert intersection_degree(ctx.gen2 ** 6) == 0
    with pytest.raises(ValueError):
        intersection_degree(ctx.gen1)


def test_basis_map_A_one_four():
    a, ainv = basis_map_A(1, 4, 1, 1, 1)
    assert a.entries == ((F(-1), F(-2)), (F(1), F(4)))
    assert ainv.entries == ((F(-2), F(-1)), (F(1, 2), F(1, 2)))
    assert (a @ ainv).is_identity()


def test_basis_map_A_determinant():
    a, _ = basis_map_A(1, 2, 1, 1, 1)
    assert a.det() == -2
    with pytest.raises(ValueError):
        basis_map_A(1, 2, 1, 1, 3)


def kprime_map():
    # L = -(-K') - 3H', H = (-K') + 4H' in the tau = 1, tau' = 4 case.
    return BasisMap(((F(-1), F(-3)), (F(1), F(4))))


def test_derived_context_relation_and_degree():
    ctx_p = derived_context(w36_ctx(), kprime_map(), ("-K'", "H'"))
    # K'^2 = 5 K' H' - 7 H'^2 becomes (-K')^2 = -5 (-K') H' - 7 H'^2.
    assert (ctx_p.rel_a, ctx_p.rel_b) == (F(-5), F(-7))
    assert ctx_p.degree_s == 2
    g1, g2 = ctx_p.gen1, ctx_p.gen2
    assert intersection_degree(-(g1 * g2 ** 5)) == -2  # K'H'^5


def test_derived_context_identity_map():
    ctx = w36_ctx()
    same = derived_context(ctx, BasisMap(((F(1), F(0)), (F(0), F(1)))),
                           ctx.gen_names)
    assert same == ctx


def test_cross_basis_monomials():
    ctx = w36_ctx()
    kp = ctx.element({(1, 0): F(4), (0, 1): F(3)})
    hp = ctx.element({(1, 0): F(1), (0, 1): F(1)})
    expected = {(4, 2): -110, (3, 3): -36, (2, 4): -10, (1, 5): -2}
    ctx_p = derived_context(ctx, kprime_map(), ("-K'", "H'"))
    for (a, b), want in expected.items():
        assert intersection_degree(kp ** a * hp ** b) == want
        derived = (-1) ** a * intersection_degree(
            ctx_p.gen1 ** a * ctx_p.gen2 ** b)
        assert derived == want


def test_convert_element_roundtrip():
    ctx = w36_ctx()
    m = kprime_map()
    ctx_p = derived_context(ctx, m, ("-K'", "H'"))
    e = ctx.element({(1, 2): F(3, 2), (0, 1): F(-1), (1, 0): F(2)})
    there = convert_element(e, m, ctx_p)
    assert convert_element(there, m.inverse(), ctx) == e


def test_basis_map_B_table_rows():
    b, report = basis_map_B(2, 1, 1, 0, F(-4), 1, 1, 2)
    assert b.entries == ((F(1), F(-1)), (F(1), F(0)))
    assert report.integral and report.unimodular
    assert (report.identity_lhs, report.identity_rhs) == (8, 8)

    b, report = basis_map_B(1, 2, 1, -1, F(-1, 3), 3, 1, 1)
    assert report.integral and report.unimodular
    assert (report.identity_lhs, report.identity_rhs) == (4, 4)


def test_basis_map_B_perturbed_fails():
    _, report = basis_map_B(2, 1, 1, 0, F(-4), 1, 1, 3)
    assert not report.ok


def test_context_serialization_roundtrip():
    ctx = w36_ctx()
    text = dumps_context(ctx)
    assert text.endswith("\n")
    assert loads_context(text) == ctx
    with pytest.raises(ValueError):
        loads_context("n=3\n")


@given(ctx_and_elems(count=2))
def test_reduce_idempotent_and_product_normal(data):
    ctx, x, y = data
    assert reduce(x, ctx) == x
    prod = x * y
    assert reduce(prod, ctx) == prod
    assert reduce({m: c for m, c in x.coeffs.items()}, ctx) == x


@given(ctx_and_elems(count=3))
def test_ring_axioms(data):
    ctx, x, y, z = data
    assert x * y == y * x
    assert (x + y) * z == x * z + y * z
    assert x * (y * z) == (x * y) * z


@given(ctx_and_elems(count=1))
def test_chern_wu_identity(data):
    ctx, _ = data
    c1 = ctx.rel_a
    delta = c1 * c1 + 4 * ctx.rel_b
    k = ctx.element({(1, 0): F(-2), (0, 1): c1})
    assert k * k == ctx.element({(0, 2): delta})
