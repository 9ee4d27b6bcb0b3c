"""Exact dimension-zero genus-one local GW invariants of elliptic fibers."""

from .exactnum import Rat, divisors, format_rat, gcd, parse_rat, sigma
from .lattice import (
    ModuliPartition,
    PeriodClass,
    Sublattice,
    admissible_period_classes,
    enumerate_sublattices,
    factors_through,
    partition_moduli,
    torsion_pullback_trivial,
)
from .local import (
    Contribution,
    LocalGWTable,
    MultipleFiber,
    RegularFiber,
    Route,
    contribution,
    local_gw_assembled_m2,
    local_gw_multiple_assembled,
    local_gw_multiple_closed,
    local_gw_regular,
    local_gw_regular_multi,
)
from .series import (
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
from .surface import gw0_series
from .surfacespec import SurfaceSpec, dump_spec, load_spec
from .taubes import (
    FCoefficients,
    gr_series_closed_side,
    gr_series_gw_side,
    per_fiber_product_check,
    solve_F,
)
from .verify import VerificationReport, run_suite

__version__ = "0.1.0"
