"""Surface-level generating function of dimension-zero GW invariants."""

from __future__ import annotations

import math

from .exactnum import as_rat
from .local import local_gw_multiple_closed, local_gw_regular
from .series import FiberMonomial, SurfaceSeries
from .surfacespec import SurfaceSpec

__all__ = ["gw0_series"]


def gw0_series(spec: SurfaceSpec, bound) -> SurfaceSeries:
    """c_pi * sum_d GW(F,d) t^d + sum_k sum_d GW(F_{m_k},d) t_k^d, to ``bound``.

    Fiber powers t_k^d are reduced with t_k^(m_k) = t, so multiple-fiber
    terms with m_k | d land on pure powers of t and add to the regular part.
    """
    bound = as_rat(bound)
    if bound < 0:
        raise ValueError("degree bound must be >= 0")
    mults = spec.multiplicities
    terms: dict = {}
    if spec.c_pi:
        for d in range(1, math.floor(bound) + 1):
            mono = FiberMonomial.t(mults, d)
            terms[mono] = terms.get(mono, 0) + spec.c_pi * local_gw_regular(d)
    for k, m in enumerate(mults):
        for d in range(1, math.floor(bound * m) + 1):
            mono = FiberMonomial.fiber(mults, k, d)
            terms[mono] = terms.get(mono, 0) + local_gw_multiple_closed(m, d)
    return SurfaceSeries(spec, bound, terms)
