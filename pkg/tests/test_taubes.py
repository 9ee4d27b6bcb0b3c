from fractions import Fraction as Q

import pytest

from ellgw.exactnum import sigma
from ellgw.series import FiberMonomial, SurfaceSeries, UniSeries, uni_mul
from ellgw.surfacespec import SurfaceSpec
from ellgw.taubes import (
    F_identity_product,
    gr_series_closed_side,
    gr_series_gw_side,
    per_fiber_product,
    per_fiber_product_check,
    read_F_cache,
    solve_F,
    write_F_cache,
)


def mobius(n):
    result, p = 1, 2
    while p * p <= n:
        if n % p == 0:
            n //= p
            if n % p == 0:
                return 0
            result = -result
        p += 1
    return -result if n > 1 else result


def test_first_log_coefficients():
    fc = solve_F(5)
    assert fc.logF[1] == 1
    assert fc.logF[2] == -1


def test_log_coefficients_satisfy_triangular_system():
    fc = solve_F(60)
    a = fc.logF
    for n in range(1, 61):
        lhs = sum(Q(sigma(d), d) * a[n // d] for d in range(1, n + 1) if n % d == 0)
        assert lhs == Q(1, n)


def test_log_coefficients_are_mobius():
    # sigma(d)/d = sum_{e|d} 1/e, so the Dirichlet inverse argument gives mu(n)
    fc = solve_F(80)
    assert [fc.logF[n] for n in range(1, 81)] == [mobius(n) for n in range(1, 81)]


def naive_identity_product(F, N):
    """Same product, with integer/rational powers built by repeated multiplication."""
    from ellgw.series import uni_pow_rat
    acc = UniSeries.one(N)
    for d in range(1, N + 1):
        acc = uni_mul(acc, uni_pow_rat(F.truncate(N // d), Q(-sigma(d), d)).dilate(d, N))
    return acc


def test_defining_identity():
    fc = solve_F(50)
    assert F_identity_product(fc) == UniSeries.polynomial([1, -1], 50)
    assert naive_identity_product(solve_F(20).F, 20) == UniSeries.polynomial([1, -1], 20)


def test_solve_F_rejects():
    with pytest.raises(ValueError):
        solve_F(0)


@pytest.mark.parametrize("m, bound", [(2, 20), (5, 20), (2, 0), (3, 7)])
def test_per_fiber_examples(m, bound):
    assert per_fiber_product_check(m, bound)


def test_per_fiber_all_small_m():
    for m in range(2, 7):
        assert per_fiber_product(m, 40) == UniSeries.polynomial([1] * m, 40)


def test_per_fiber_insufficient_trunc():
    with pytest.raises(ValueError):
        per_fiber_product(2, 10, trunc=5)


def test_gw_side_examples():
    spec = SurfaceSpec.of(1)
    assert gr_series_gw_side(spec, 10) == SurfaceSeries(spec, 10, {
        FiberMonomial.unit(()): 1, FiberMonomial.t(()): -1})
    spec = SurfaceSpec.of(0, [2])
    assert gr_series_gw_side(spec, 5) == SurfaceSeries(spec, 5, {
        FiberMonomial.unit((2,)): 1, FiberMonomial.fiber((2,), 0): 1})
    assert gr_series_gw_side(SurfaceSpec.of(0), 4) == SurfaceSeries.one(SurfaceSpec.of(0), 4)


def test_gw_side_insufficient_trunc():
    with pytest.raises(ValueError):
        gr_series_gw_side(SurfaceSpec.of(0, [3]), 4, trunc=5)


def test_closed_side_examples():
    spec = SurfaceSpec.of(2)
    t = FiberMonomial.t(())
    assert gr_series_closed_side(spec, 5).terms == {FiberMonomial.unit(()): 1, t: -2, t * t: 1}
    spec = SurfaceSpec.of(0, [2, 3])
    got = gr_series_closed_side(spec, 10)
    want = {FiberMonomial.normalize(0, (i, j), (2, 3)): 1 for i in range(2) for j in range(3)}
    assert got.terms == want
    assert gr_series_closed_side(SurfaceSpec.of(0, [2]), 3).terms == {
        FiberMonomial.unit((2,)): 1, FiberMonomial.fiber((2,), 0): 1}


def test_closed_side_negative_c_pi():
    spec = SurfaceSpec.of(-1)
    got = gr_series_closed_side(spec, 6).collapsed()
    assert got == {Q(n): 1 for n in range(7)}
    assert gr_series_gw_side(spec, 6) == gr_series_closed_side(spec, 6)


@pytest.mark.parametrize("c_pi, mults", [(0, []), (0, [2, 3]), (1, [2]), (2, []), (2, [3, 3]), (1, [2, 2, 5])])
def test_gr_equals_sw(c_pi, mults):
    spec = SurfaceSpec.of(c_pi, mults)
    assert gr_series_gw_side(spec, 10) == gr_series_closed_side(spec, 10)


@pytest.mark.parametrize("c_pi", range(4))
def test_regular_part_alone(c_pi):
    spec = SurfaceSpec.of(c_pi)
    gw = gr_series_gw_side(spec, 20)
    assert gw.collapsed() == {Q(j): (-1) ** j * __import__("math").comb(c_pi, j) for j in range(c_pi + 1)}


def test_fractional_bound():
    spec = SurfaceSpec.of(1, [3])
    assert gr_series_gw_side(spec, Q(7, 3)) == gr_series_closed_side(spec, Q(7, 3))


def test_cache_round_trip(tmp_path):
    path = tmp_path / "F.txt"
    write_F_cache(12, path)
    lines = path.read_text().splitlines()
    assert lines[0] == "Fcoeffs v1 trunc=12"
    assert lines[1:3] == ["1 1", "2 -1"]
    fc = read_F_cache(path)
    assert fc.log_coeffs == solve_F(12).log_coeffs
    assert fc.F == solve_F(12).F
    assert not [p for p in tmp_path.iterdir() if p.name.startswith(".Fcoeffs-")]


def test_cache_rejects_garbage(tmp_path):
    bad = tmp_path / "bad.txt"
    bad.write_text("hello\n")
    with pytest.raises(ValueError):
        read_F_cache(bad)
    short = tmp_path / "short.txt"
    short.write_text("Fcoeffs v1 trunc=3\n1 1\n2 -1\n")
    with pytest.raises(ValueError):
        read_F_cache(short)
