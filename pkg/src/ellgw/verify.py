"""Invariant suites runnable from the command line (``ellgw verify``)."""

from __future__ import annotations

import random
import time
from dataclasses import dataclass, field
from fractions import Fraction
from math import gcd

from .exactnum import divisors, sigma
from .lattice import (
    admissible_period_classes,
    enumerate_sublattices,
    factors_through,
    partition_moduli,
    torsion_pullback_trivial,
)
from .local import (
    local_gw_assembled_m2,
    local_gw_multiple_assembled,
    local_gw_multiple_closed,
    local_gw_regular,
)
from .series import (
    FiberMonomial,
    SurfaceSeries,
    UniSeries,
    surf_mul,
    uni_exp,
    uni_log,
    uni_mul,
    uni_pow_rat,
)
from .surfacespec import SurfaceSpec
from .taubes import (
    F_identity_product,
    gr_series_closed_side,
    gr_series_gw_side,
    per_fiber_product_check,
    solve_F,
)

__all__ = ["VerificationReport", "SUITES", "ACCEPTANCE_SPECS", "run_suite"]

ACCEPTANCE_SPECS = [(0, []), (0, [2, 3]), (1, [2]), (2, []), (2, [3, 3]), (1, [2, 2, 5])]


@dataclass
class VerificationReport:
    suite: str
    cases: int = 0
    failures: list = field(default_factory=list)
    wall_time: float = 0.0

    @property
    def passed(self) -> bool:
        return not self.failures

    def check(self, ok: bool, **info) -> None:
        self.cases += 1
        if not ok:
            self.failures.append(info)

    def summary(self) -> str:
        status = "PASS" if self.passed else "FAIL"
        return f"{status} {self.suite}: {self.cases} cases, {len(self.failures)} failures, {self.wall_time:.2f}s"


def _lattice(rep: VerificationReport) -> None:
    for d in range(1, 301):
        lats = enumerate_sublattices(d)
        rep.check(len(lats) == sigma(d) and len(set(lats)) == len(lats),
                  check="count", d=d, lhs=len(lats), rhs=sigma(d))
    for m in range(2, 9):
        for d in range(1, 301):
            part = partition_moduli(m, d)
            want_minus = sigma(Fraction(d, m))
            rep.check(len(part.minus) == want_minus and len(part.plus) == sigma(d) - want_minus,
                      check="partition", m=m, d=d,
                      lhs=(len(part.plus), len(part.minus)), rhs=(sigma(d) - want_minus, want_minus))
    for m in range(2, 9):
        pcs = admissible_period_classes(m)
        for d in range(1, 101):
            for L in enumerate_sublattices(d):
                lifted = factors_through(L, m)
                for pc in pcs:
                    rep.check(torsion_pullback_trivial(L, pc) == lifted,
                              check="lemma-key", m=m, k1=pc.k1, L=L.to_dict())
    for m in range(2, 25):
        got = [pc.k1 for pc in admissible_period_classes(m)]
        want = [k for k in range(1, m) if gcd(k, m) == 1]
        rep.check(got == want, check="period-classes", m=m, lhs=got, rhs=want)


def _local(rep: VerificationReport) -> None:
    for m in range(3, 9):
        for d in range(1, 301):
            a, c = local_gw_multiple_assembled(m, d), local_gw_multiple_closed(m, d)
            rep.check(a == c, check="assembly", m=m, d=d, lhs=str(a), rhs=str(c))
    for d in range(1, 301):
        a, c = local_gw_assembled_m2(d), local_gw_multiple_closed(2, d)
        rep.check(a == c, check="m2-sign", d=d, lhs=str(a), rhs=str(c))
    for m in range(2, 9):
        for d in range(1, 101):
            if d % m:
                v = local_gw_multiple_closed(m, d)
                rep.check(v == Fraction(sigma(d), d) and v > 0, check="coprime-degree", m=m, d=d, lhs=str(v))
    for d in range(1, 101):
        v = local_gw_regular(d)
        rep.check(v == Fraction(-sum(divisors(d)), d) and v < 0, check="regular-sign", d=d, lhs=str(v))


def random_uni(rng: random.Random, trunc: int, const=None, height: int = 5) -> UniSeries:
    c = [Fraction(rng.randint(-height, height), rng.randint(1, 3)) for _ in range(trunc + 1)]
    if const is not None:
        c[0] = Fraction(const)
    return UniSeries(c, trunc)


def random_surface(rng: random.Random, spec: SurfaceSpec, bound, nterms: int = 4) -> SurfaceSeries:
    mults = spec.multiplicities
    terms = {}
    for _ in range(nterms):
        mono = FiberMonomial.normalize(rng.randint(0, 3), [rng.randint(0, 2 * m) for m in mults], mults)
        terms[mono] = Fraction(rng.randint(-4, 4), rng.randint(1, 3))
    return SurfaceSeries(spec, bound, terms)


def _series(rep: VerificationReport, cases: int = 500, seed: int = 20261019) -> None:
    rng = random.Random(seed)
    spec = SurfaceSpec.of(0, [2, 3])
    for _ in range(cases):
        A, B, C = (random_surface(rng, spec, 4) for _ in range(3))
        rep.check(surf_mul(A, B) == surf_mul(B, A), check="commutative", A=repr(A), B=repr(B))
        rep.check(surf_mul(surf_mul(A, B), C) == surf_mul(A, surf_mul(B, C)),
                  check="associative", A=repr(A), B=repr(B), C=repr(C))
    for _ in range(cases):
        mults = tuple(rng.randint(2, 6) for _ in range(rng.randint(0, 3)))
        e0, e = rng.randint(0, 5), [rng.randint(0, 20) for _ in mults]
        mono = FiberMonomial.normalize(e0, e, mults)
        raw = e0 + sum((Fraction(x, m) for x, m in zip(e, mults)), Fraction(0))
        again = FiberMonomial.normalize(mono.e0, mono.e, mults)
        rep.check(mono.degree == raw and again == mono, check="normalize", e0=e0, e=e, mults=mults)
    for _ in range(cases):
        A = random_uni(rng, 50, const=0)
        rep.check(uni_log(uni_exp(A)) == A, check="log-exp", A=repr(A))
        B = random_uni(rng, 50, const=1)
        rep.check(uni_exp(uni_log(B)) == B, check="exp-log", B=repr(B))
    for _ in range(cases):
        A = random_uni(rng, rng.randint(1, 8), const=1, height=3)
        p, q = rng.randint(-3, 3), rng.randint(1, 4)
        root = uni_pow_rat(A, Fraction(p, q))
        acc = UniSeries.one(A.trunc)
        for _ in range(q):
            acc = uni_mul(acc, root)
        rep.check(acc == uni_pow_rat(A, p), check="pow-rat", A=repr(A), p=p, q=q)


def _taubes(rep: VerificationReport) -> None:
    fc = solve_F(50)
    rep.check(F_identity_product(fc) == UniSeries.polynomial([1, -1], 50), check="F-identity", trunc=50)
    for m in range(2, 7):
        rep.check(per_fiber_product_check(m, 40), check="per-fiber", m=m, bound=40)
    for c_pi, mults in ACCEPTANCE_SPECS:
        spec = SurfaceSpec.of(c_pi, mults)
        gw, closed = gr_series_gw_side(spec, 10), gr_series_closed_side(spec, 10)
        rep.check(gw == closed, check="gr-sw", c_pi=c_pi, fibers=mults, lhs=repr(gw), rhs=repr(closed))
    for c_pi in range(4):
        spec = SurfaceSpec.of(c_pi)
        gw, closed = gr_series_gw_side(spec, 20), gr_series_closed_side(spec, 20)
        rep.check(gw == closed, check="regular-only", c_pi=c_pi, lhs=repr(gw), rhs=repr(closed))


SUITES = {"lattice": _lattice, "local": _local, "series": _series, "taubes": _taubes}


def run_suite(name: str) -> VerificationReport:
    if name == "all":
        rep = VerificationReport("all")
        start = time.perf_counter()
        for sub in SUITES:
            part = run_suite(sub)
            rep.cases += part.cases
            rep.failures += [dict(f, suite=sub) for f in part.failures]
        rep.wall_time = time.perf_counter() - start
        return rep
    if name not in SUITES:
        raise KeyError(f"unknown suite {name!r}; choose from {sorted(SUITES) + ['all']}")
    rep = VerificationReport(name)
    start = time.perf_counter()
    SUITES[name](rep)
    rep.wall_time = time.perf_counter() - start
    return rep
