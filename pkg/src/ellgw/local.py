"""Dimension-zero genus-one local GW invariants of elliptic fibers.

Two independent ways to get the same numbers:

* closed forms in the divisor sum sigma, and
* assembly from the moduli points of :mod:`ellgw.lattice`, adding the
  contribution of each cover (1/d on the generic part, a sign for m = 2, and
  the lifted aggregate through the m-fold cover for m >= 3).
"""

from __future__ import annotations

import csv
import io
import json
from dataclasses import dataclass, field
from enum import Enum
from fractions import Fraction
from typing import Optional, Union

from .exactnum import format_rat, sigma
from .lattice import Sublattice, enumerate_sublattices, factors_through, partition_moduli

__all__ = [
    "RegularFiber",
    "MultipleFiber",
    "FiberKind",
    "Route",
    "Contribution",
    "LocalGWTable",
    "local_gw_regular",
    "local_gw_regular_multi",
    "local_gw_multiple_closed",
    "local_gw_regular_assembled",
    "local_gw_multiple_assembled",
    "local_gw_assembled_m2",
    "contribution",
    "local_gw",
    "build_table",
]


@dataclass(frozen=True)
class RegularFiber:
    """n copies of a regular fiber, i.e. the divisor n*F."""

    n: int = 1

    def __post_init__(self):
        if self.n < 1:
            raise ValueError(f"regular fiber weight must be >= 1, got {self.n}")

    kind = "regular"

    @property
    def index(self) -> int:
        return self.n


@dataclass(frozen=True)
class MultipleFiber:
    m: int

    def __post_init__(self):
        if self.m < 2:
            raise ValueError(f"multiplicity must be >= 2, got {self.m}")

    kind = "multiple"

    @property
    def index(self) -> int:
        return self.m


FiberKind = Union[RegularFiber, MultipleFiber]


class Route(str, Enum):
    GENERIC_PLUS = "generic-plus"
    M2_SIGN = "m2-sign"
    LIFTED_AGGREGATE = "lifted-aggregate"


@dataclass(frozen=True)
class Contribution:
    value: Optional[Fraction]
    route: Route


def _check_degree(d: int) -> None:
    if d < 1:
        raise ValueError(f"degree must be >= 1, got {d}")


def local_gw_regular(d: int) -> Fraction:
    _check_degree(d)
    return Fraction(-sigma(d), d)


def local_gw_regular_multi(n: int, d: int) -> Fraction:
    """Local invariant of the divisor n*F, which scales linearly in n."""
    if n < 1:
        raise ValueError(f"weight must be >= 1, got {n}")
    return n * local_gw_regular(d)


def local_gw_multiple_closed(m: int, d: int) -> Fraction:
    """(sigma(d) - m*sigma(d/m)) / d; valid for m = 2 and for m >= 3."""
    if m < 2:
        raise ValueError(f"multiplicity must be >= 2, got {m}")
    _check_degree(d)
    return Fraction(sigma(d) - m * sigma(Fraction(d, m)), d)


def contribution(m: int, L: Sublattice) -> Contribution:
    """Contribution of the moduli point L to the degree-d count for F_m.

    Covers with nontrivial pulled-back normal bundle count 1/d.  For m = 2
    the others count -1/d.  For m >= 3 the others are only accounted for in
    aggregate (value ``None``).
    """
    if m < 2:
        raise ValueError(f"multiplicity must be >= 2, got {m}")
    d = L.d
    if not factors_through(L, m):
        return Contribution(Fraction(1, d), Route.GENERIC_PLUS)
    if m == 2:
        return Contribution(Fraction(-1, d), Route.M2_SIGN)
    return Contribution(None, Route.LIFTED_AGGREGATE)


def local_gw_assembled_m2(d: int) -> Fraction:
    _check_degree(d)
    return sum((contribution(2, L).value for L in enumerate_sublattices(d)), Fraction(0))


def local_gw_multiple_assembled(m: int, d: int) -> Fraction:
    """Sum of generic contributions plus 1/m of the lifted (m-1)F count.

    The covers that lift are in bijection with the degree d/m covers of the
    fiber upstairs, whose canonical divisor is (m-1) times a regular fiber.
    """
    if m < 3:
        raise ValueError("m >= 3 required; use local_gw_assembled_m2 for m = 2")
    _check_degree(d)
    part = partition_moduli(m, d)
    total = Fraction(0)
    for L in part.plus:
        c = contribution(m, L)
        assert c.route is Route.GENERIC_PLUS
        total += c.value
    if part.minus:
        total += Fraction(1, m) * local_gw_regular_multi(m - 1, d // m)
    return total


def local_gw_regular_assembled(n: int, d: int) -> Fraction:
    """n times the sum of -1/d over all sigma(d) covers of a regular fiber."""
    if n < 1:
        raise ValueError(f"weight must be >= 1, got {n}")
    _check_degree(d)
    return n * sum((Fraction(-1, d) for _ in enumerate_sublattices(d)), Fraction(0))


def local_gw(kind: FiberKind, d: int, method: str = "closed") -> Fraction:
    if method not in ("closed", "assembly"):
        raise ValueError(f"unknown method {method!r}")
    if isinstance(kind, RegularFiber):
        if method == "closed":
            return local_gw_regular_multi(kind.n, d)
        return local_gw_regular_assembled(kind.n, d)
    if method == "closed":
        return local_gw_multiple_closed(kind.m, d)
    if kind.m == 2:
        return local_gw_assembled_m2(d)
    return local_gw_multiple_assembled(kind.m, d)


@dataclass
class LocalGWTable:
    entries: dict = field(default_factory=dict)

    def rows(self):
        for (kind, d), value in sorted(self.entries.items(), key=lambda kv: (kv[0][0].kind, kv[0][0].index, kv[0][1])):
            yield kind.kind, kind.index, d, value

    def to_csv(self) -> str:
        buf = io.StringIO()
        w = csv.writer(buf, lineterminator="\n")
        w.writerow(["kind", "m_or_n", "d", "value"])
        for kind, idx, d, value in self.rows():
            w.writerow([kind, idx, d, format_rat(value)])
        return buf.getvalue()

    def to_json(self) -> str:
        recs = [
            {"kind": kind, "m_or_n": idx, "d": d, "value": format_rat(value)}
            for kind, idx, d, value in self.rows()
        ]
        return json.dumps(recs, indent=2)


def build_table(kind: FiberKind, dmax: int, method: str = "closed") -> LocalGWTable:
    table = LocalGWTable()
    for d in range(1, dmax + 1):
        table.entries[(kind, d)] = local_gw(kind, d, method)
    return table
