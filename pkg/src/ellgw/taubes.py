"""The universal function F(t) and the Gromov/Seiberg-Witten series.

F is pinned down by prod_d F(t^d)^(-sigma(d)/d) = 1 - t.  Writing
log F = sum a_n t^n and comparing t^n coefficients of the logarithm gives the
triangular system

    sum_{d | n} (sigma(d)/d) * a_{n/d} = 1/n,

so every a_n follows from the earlier ones.  Raising F at fiber monomials to
the local GW invariants and multiplying recovers the closed product
(1 - t)^c_pi * prod_k (1 + t_k + ... + t_k^(m_k - 1)).
"""

from __future__ import annotations

import math
import os
import tempfile
from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache

from .exactnum import as_rat, divisors, format_rat, parse_rat, sigma
from .local import local_gw_multiple_closed, local_gw_regular
from .series import (
    FiberMonomial,
    SurfaceSeries,
    UniSeries,
    subst_monomial,
    surf_mul,
    uni_exp,
    uni_mul,
    uni_pow_rat,
)
from .surfacespec import SurfaceSpec

__all__ = [
    "FCoefficients",
    "solve_F",
    "F_identity_product",
    "required_trunc",
    "gr_series_gw_side",
    "gr_series_closed_side",
    "per_fiber_product",
    "per_fiber_product_check",
    "write_F_cache",
    "read_F_cache",
]

CACHE_HEADER = "Fcoeffs v1 trunc="


@dataclass(frozen=True)
class FCoefficients:
    trunc: int
    log_coeffs: tuple  # a_1, ..., a_trunc
    F: UniSeries

    @property
    def logF(self) -> dict:
        return {n: a for n, a in enumerate(self.log_coeffs, start=1)}

    def log_series(self) -> UniSeries:
        return UniSeries([0, *self.log_coeffs], self.trunc)

    def power(self, r, trunc: int) -> UniSeries:
        """F**r known to u^trunc."""
        if trunc > self.trunc:
            raise ValueError(f"F is known to order {self.trunc}, {trunc} requested")
        return uni_pow_rat(self.F.truncate(trunc), r)


def _log_coeffs(trunc: int) -> tuple:
    a = [Fraction(0)] * (trunc + 1)
    for n in range(1, trunc + 1):
        s = Fraction(1, n)
        for d in divisors(n)[1:]:
            s -= Fraction(sigma(d), d) * a[n // d]
        a[n] = s
    return tuple(a[1:])


@lru_cache(maxsize=16)
def solve_F(trunc: int) -> FCoefficients:
    if trunc < 1:
        raise ValueError(f"trunc must be >= 1, got {trunc}")
    logs = _log_coeffs(trunc)
    F = uni_exp(UniSeries([0, *logs], trunc))
    return FCoefficients(trunc, logs, F)


def F_identity_product(fc: FCoefficients, trunc: int | None = None) -> UniSeries:
    """prod_{d <= trunc} F(t^d)^(-sigma(d)/d), recomputed from F itself."""
    N = fc.trunc if trunc is None else trunc
    acc = UniSeries.one(N)
    for d in range(1, N + 1):
        inner = N // d
        factor = fc.power(Fraction(-sigma(d), d), inner).dilate(d, N)
        acc = uni_mul(acc, factor)
    return acc


def required_trunc(spec: SurfaceSpec, bound) -> int:
    """F order needed to build the gw-side product up to ``bound``."""
    bound = as_rat(bound)
    top = max(spec.multiplicities, default=1)
    return max(1, math.floor(bound * top))


def _factor(fc, exponent, mono: FiberMonomial, spec: SurfaceSpec, bound: Fraction) -> SurfaceSeries:
    need = math.floor(bound / mono.degree)
    if need > fc.trunc:
        raise ValueError(f"F truncated at {fc.trunc}; degree bound needs order {need}")
    return subst_monomial(fc.power(exponent, need), mono, spec, bound)


def gr_series_gw_side(spec: SurfaceSpec, bound, trunc: int | None = None, fc: FCoefficients | None = None) -> SurfaceSeries:
    """prod_d F(t^d)^(c_pi GW(F,d)) * prod_{d,k} F(t_k^d)^(GW(F_{m_k},d))."""
    bound = as_rat(bound)
    needed = required_trunc(spec, bound)
    if fc is None:
        fc = solve_F(needed if trunc is None else trunc)
    if fc.trunc < needed:
        raise ValueError(f"F truncated at {fc.trunc}, but degree bound {format_rat(bound)} needs {needed}")
    mults = spec.multiplicities
    acc = SurfaceSeries.one(spec, bound)
    if spec.c_pi:
        for d in range(1, math.floor(bound) + 1):
            mono = FiberMonomial.t(mults, d)
            acc = surf_mul(acc, _factor(fc, spec.c_pi * local_gw_regular(d), mono, spec, bound))
    for k, m in enumerate(mults):
        for d in range(1, math.floor(bound * m) + 1):
            exponent = local_gw_multiple_closed(m, d)
            if exponent:
                mono = FiberMonomial.fiber(mults, k, d)
                acc = surf_mul(acc, _factor(fc, exponent, mono, spec, bound))
    return acc


def gr_series_closed_side(spec: SurfaceSpec, bound) -> SurfaceSeries:
    """(1 - t)^c_pi * prod_k (1 + t_k + ... + t_k^(m_k - 1))."""
    bound = as_rat(bound)
    mults = spec.multiplicities
    top = math.floor(bound)
    if spec.c_pi >= 0:
        base = {
            FiberMonomial.t(mults, j): (-1) ** j * math.comb(spec.c_pi, j)
            for j in range(min(spec.c_pi, top) + 1)
        }
        acc = SurfaceSeries(spec, bound, base)
    else:
        one_minus_t = UniSeries.polynomial([1, -1], top)
        acc = subst_monomial(uni_pow_rat(one_minus_t, spec.c_pi), FiberMonomial.t(mults), spec, bound)
    for k, m in enumerate(mults):
        poly = {FiberMonomial.fiber(mults, k, j): 1 for j in range(m)}
        acc = surf_mul(acc, SurfaceSeries(spec, bound, poly))
    return acc


def per_fiber_product(m: int, bound: int, trunc: int | None = None) -> UniSeries:
    """prod_d F(u^d)^(GW(F_m, d)) as a series in u known to u^bound."""
    if m < 2:
        raise ValueError(f"need m >= 2, got {m}")
    if bound < 0:
        raise ValueError("bound must be >= 0")
    fc = solve_F(max(1, bound) if trunc is None else trunc)
    if fc.trunc < bound:
        raise ValueError(f"F truncated at {fc.trunc}, product needs order {bound}")
    acc = UniSeries.one(bound)
    for d in range(1, bound + 1):
        exponent = local_gw_multiple_closed(m, d)
        if exponent:
            acc = uni_mul(acc, fc.power(exponent, bound // d).dilate(d, bound))
    return acc


def per_fiber_product_check(m: int, bound: int, trunc: int | None = None) -> bool:
    """Whether the single-fiber product equals 1 + u + ... + u^(m-1)."""
    lhs = per_fiber_product(m, bound, trunc)
    rhs = UniSeries.polynomial([1] * m, bound)
    return lhs == rhs


def write_F_cache(trunc: int, path) -> None:
    """Write a_1..a_trunc, one ``n a_n`` line each, via create-then-rename."""
    fc = solve_F(trunc)
    lines = [f"{CACHE_HEADER}{trunc}"]
    lines += [f"{n} {format_rat(a)}" for n, a in enumerate(fc.log_coeffs, start=1)]
    directory = os.path.dirname(os.path.abspath(path))
    fd, tmp = tempfile.mkstemp(prefix=".Fcoeffs-", dir=directory)
    try:
        with os.fdopen(fd, "w", encoding="utf-8") as fh:
            fh.write("\n".join(lines) + "\n")
        os.replace(tmp, path)
    except BaseException:
        if os.path.exists(tmp):
            os.unlink(tmp)
        raise


def read_F_cache(path) -> FCoefficients:
    with open(path, encoding="utf-8") as fh:
        header = fh.readline().strip()
        if not header.startswith(CACHE_HEADER):
            raise ValueError(f"{path}: not an F coefficient cache (header {header!r})")
        trunc = int(header[len(CACHE_HEADER):])
        logs = []
        for lineno, line in enumerate(fh, start=2):
            if not line.strip():
                continue
            n, a = line.split()
            if int(n) != len(logs) + 1:
                raise ValueError(f"{path}:{lineno}: expected index {len(logs) + 1}, got {n}")
            logs.append(parse_rat(a))
    if len(logs) != trunc:
        raise ValueError(f"{path}: header promises {trunc} coefficients, found {len(logs)}")
    F = uni_exp(UniSeries([0, *logs], trunc))
    return FCoefficients(trunc, tuple(logs), F)
