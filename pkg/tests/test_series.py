from fractions import Fraction as Q
from math import factorial

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from ellgw.series import (
    FiberMonomial,
    SurfaceSeries,
    UniSeries,
    subst_monomial,
    surf_mul,
    uni_exp,
    uni_log,
    uni_mul,
    uni_pow_rat,
)
from ellgw.surfacespec import SurfaceSpec

SPEC2 = SurfaceSpec.of(0, [2])
SPEC3 = SurfaceSpec.of(0, [3])
SPEC23 = SurfaceSpec.of(0, [2, 3])


def U(*coeffs, trunc=None):
    return UniSeries(list(coeffs), trunc)


def test_mul_examples():
    assert uni_mul(U(1, 1, trunc=4), U(1, -1, trunc=4)) == U(1, 0, -1, trunc=4)
    geo = UniSeries([1] * 11, 10)
    assert uni_mul(U(1, -1, trunc=10), geo) == UniSeries.one(10)
    assert uni_mul(U(1, 2, trunc=2), U(3, 1, trunc=2)) == U(3, 7, 2)


def test_mul_truncates_to_min():
    assert uni_mul(U(1, 1, trunc=5), U(1, 1, trunc=2)).trunc == 2


def test_log_examples():
    assert uni_log(UniSeries.one(6)) == UniSeries([0], 6)
    assert uni_log(U(1, -1, trunc=6)) == UniSeries([0] + [Q(-1, n) for n in range(1, 7)], 6)
    assert uni_log(uni_exp(U(0, 1, trunc=8))) == U(0, 1, trunc=8)


def test_exp_examples():
    assert uni_exp(UniSeries([0], 5)) == UniSeries.one(5)
    assert uni_exp(U(0, 1, trunc=12)) == UniSeries([Q(1, factorial(n)) for n in range(13)], 12)
    assert uni_exp(uni_log(U(1, -1, trunc=9))) == U(1, -1, trunc=9)


def test_log_exp_reject_wrong_constant():
    with pytest.raises(ValueError):
        uni_log(U(2, 1))
    with pytest.raises(ValueError):
        uni_exp(U(1, 1))
    with pytest.raises(ValueError):
        uni_pow_rat(U(0, 1), Q(1, 2))


def test_pow_rat_examples():
    assert uni_pow_rat(U(1, -1, trunc=8), 1) == U(1, -1, trunc=8)
    inv = uni_pow_rat(U(1, -1, trunc=8), -1)
    assert inv == UniSeries([1] * 9, 8)
    assert uni_mul(inv, U(1, -1, trunc=8)) == UniSeries.one(8)
    root = uni_pow_rat(U(1, 0, -1, trunc=10), Q(1, 2))
    assert uni_mul(root, root) == U(1, 0, -1, trunc=10)


def test_pow_rat_binomial_coefficients():
    # (1+u)^(1/2) = sum binom(1/2, n) u^n
    root = uni_pow_rat(U(1, 1, trunc=8), Q(1, 2))
    coeff, want = Q(1), []
    for n in range(9):
        want.append(coeff)
        coeff = coeff * (Q(1, 2) - n) / (n + 1)
    assert list(root.coeffs) == want


def test_dilate():
    A = U(1, 2, 3, trunc=2)
    assert A.dilate(2) == UniSeries([1, 0, 2, 0, 3, 0], 5)
    with pytest.raises(ValueError):
        A.dilate(2, 6)


def test_monomial_normalization():
    m = FiberMonomial.normalize(1, [5, 7], (2, 3))
    assert (m.e0, m.e) == (1 + 2 + 2, (1, 1))
    assert m.degree == 1 + Q(5, 2) + Q(7, 3)
    with pytest.raises(ValueError):
        FiberMonomial(0, (2,), (2,))


@settings(max_examples=500)
@given(
    st.integers(0, 10),
    st.lists(st.tuples(st.integers(0, 40), st.integers(2, 7)), max_size=4),
)
def test_normalization_idempotent_and_degree_preserving(e0, pairs):
    e = [x for x, _ in pairs]
    mults = [m for _, m in pairs]
    mono = FiberMonomial.normalize(e0, e, mults)
    raw = e0 + sum((Q(x, m) for x, m in pairs), Q(0))
    assert mono.degree == raw
    assert FiberMonomial.normalize(mono.e0, mono.e, mults) == mono


def test_subst_examples():
    t2 = FiberMonomial.fiber((2,), 0)
    t = FiberMonomial.t((2,))
    one = FiberMonomial.unit((2,))
    assert subst_monomial(U(1, 1), t2, SPEC2, Q(1, 2)).terms == {one: 1, t2: 1}
    geo = UniSeries([1] * 3, 2)
    assert subst_monomial(geo, t2, SPEC2, 1).terms == {one: 1, t2: 1, t: 1}
    t_only = FiberMonomial.t(())
    s = subst_monomial(U(1, -1, trunc=3), t_only, SurfaceSpec.of(0), 3)
    assert s.terms == {FiberMonomial.unit(()): 1, t_only: -1}


def test_subst_errors():
    with pytest.raises(ValueError):
        subst_monomial(UniSeries([1] * 2, 1), FiberMonomial.fiber((2,), 0), SPEC2, 1)
    with pytest.raises(ValueError):
        subst_monomial(U(1, 1), FiberMonomial.unit((2,)), SPEC2, 1)


def poly(spec, bound, terms):
    mults = spec.multiplicities
    return SurfaceSeries(spec, bound, {FiberMonomial.normalize(e0, e, mults): c for (e0, *e), c in terms.items()})


def test_surf_mul_examples():
    a = poly(SPEC2, 5, {(0, 0): 1, (0, 1): 1})
    assert surf_mul(a, a) == poly(SPEC2, 5, {(0, 0): 1, (0, 1): 2, (1, 0): 1})
    b = poly(SPEC3, 1, {(0, 0): 1, (0, 1): 1, (0, 2): 1})
    c = poly(SPEC3, 1, {(0, 0): 1, (0, 1): -1})
    assert surf_mul(b, c) == poly(SPEC3, 1, {(0, 0): 1, (1, 0): -1})
    assert surf_mul(a, SurfaceSeries.one(SPEC2, 5)) == a


def test_surf_mul_spec_mismatch():
    with pytest.raises(ValueError):
        surf_mul(SurfaceSeries.one(SPEC2, 1), SurfaceSeries.one(SPEC3, 1))


def test_collapsed_view():
    s = poly(SPEC23, 2, {(0, 1, 0): 2, (0, 0, 1): 3, (1, 0, 0): 5, (0, 1, 2): -1})
    # t_1*t_2^2 has degree 1/2 + 2/3 = 7/6
    assert s.collapsed() == {Q(1, 3): 3, Q(1, 2): 2, Q(1): 5, Q(7, 6): -1}


def test_json_records_sorted():
    s = poly(SPEC23, 2, {(1, 0, 0): 5, (0, 1, 0): 2, (0, 0, 1): 3})
    assert s.to_records() == [
        {"t": 0, "fibers": [0, 1], "degree": "1/3", "coeff": "3"},
        {"t": 0, "fibers": [1, 0], "degree": "1/2", "coeff": "2"},
        {"t": 1, "fibers": [0, 0], "degree": "1", "coeff": "5"},
    ]


small_q = st.fractions(min_value=-5, max_value=5, max_denominator=4)


def surface_series(spec, bound):
    mults = spec.multiplicities
    mono = st.builds(
        lambda e0, e: FiberMonomial.normalize(e0, e, mults),
        st.integers(0, 3),
        st.tuples(*[st.integers(0, 2 * m) for m in mults]),
    )
    return st.dictionaries(mono, small_q, max_size=5).map(lambda d: SurfaceSeries(spec, bound, d))


@settings(max_examples=500, deadline=None)
@given(surface_series(SPEC23, 4), surface_series(SPEC23, 4), surface_series(SPEC23, 4))
def test_ring_laws(a, b, c):
    assert surf_mul(a, b) == surf_mul(b, a)
    assert surf_mul(surf_mul(a, b), c) == surf_mul(a, surf_mul(b, c))
    assert surf_mul(a, b + c) == surf_mul(a, b) + surf_mul(a, c)


def uni_series(trunc, const):
    return st.lists(small_q, min_size=trunc, max_size=trunc).map(lambda c: UniSeries([const, *c], trunc))


@settings(max_examples=100, deadline=None)
@given(uni_series(50, 0), uni_series(50, 1))
def test_exp_log_round_trip_50(a, b):
    assert uni_log(uni_exp(a)) == a
    assert uni_exp(uni_log(b)) == b


@settings(max_examples=500, deadline=None)
@given(uni_series(8, 1), st.integers(-3, 3), st.integers(1, 4))
def test_rational_power_consistency(a, p, q):
    root = uni_pow_rat(a, Q(p, q))
    acc = UniSeries.one(a.trunc)
    for _ in range(q):
        acc = uni_mul(acc, root)
    assert acc == uni_pow_rat(a, p)
