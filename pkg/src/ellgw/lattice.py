"""Moduli of degree-d covers of the multiple fiber, as sublattices.

A degree-d elliptic cover of C/(Z + iZ) is the same thing as an index-d
sublattice, written in Hermite form a*Z + (b*i + k)*Z with d = a*b and
0 <= k < a.  The torsion normal bundle N_m of the m-multiple fiber is
recorded by a period class k1/m (with k2 = 0), and the pullback of N_m along
a cover is trivial exactly when k1*d/m lies in the sublattice.
"""

from __future__ import annotations

from dataclasses import dataclass, field

from .exactnum import divisors, gcd

__all__ = [
    "Sublattice",
    "PeriodClass",
    "ModuliPartition",
    "enumerate_sublattices",
    "factors_through",
    "torsion_pullback_trivial",
    "admissible_period_classes",
    "partition_moduli",
]


@dataclass(frozen=True, order=True)
class Sublattice:
    """The lattice a*Z + (b*i + k)*Z inside Z + iZ."""

    a: int
    b: int
    k: int

    def __post_init__(self):
        if self.a < 1 or self.b < 1:
            raise ValueError(f"need a, b >= 1, got a={self.a}, b={self.b}")
        if not 0 <= self.k < self.a:
            raise ValueError(f"need 0 <= k < a, got k={self.k}, a={self.a}")

    @property
    def d(self) -> int:
        return self.a * self.b

    def contains(self, x: int, y: int) -> bool:
        """Whether the Gaussian integer x + i*y lies in the sublattice."""
        if y % self.b:
            return False
        n = y // self.b
        return (x - n * self.k) % self.a == 0

    def to_dict(self) -> dict:
        return {"a": self.a, "b": self.b, "k": self.k, "d": self.d}


@dataclass(frozen=True)
class PeriodClass:
    """Torsion point k1/m of order m in C/(Z + iZ); k2 is always 0."""

    m: int
    k1: int

    def __post_init__(self):
        if self.m < 2:
            raise ValueError(f"period class needs m >= 2, got {self.m}")
        if not 1 <= self.k1 <= self.m - 1 or gcd(self.m, self.k1) != 1:
            raise ValueError(f"k1={self.k1} is not a unit mod m={self.m}")


@dataclass
class ModuliPartition:
    m: int
    d: int
    plus: list[Sublattice] = field(default_factory=list)
    minus: list[Sublattice] = field(default_factory=list)

    def to_dict(self) -> dict:
        return {
            "plus": [L.to_dict() for L in self.plus],
            "minus": [L.to_dict() for L in self.minus],
            "counts": {"plus": len(self.plus), "minus": len(self.minus)},
        }


def enumerate_sublattices(d: int) -> list[Sublattice]:
    """All index-d sublattices of Z + iZ in Hermite form, sorted by (a, k).

    There are sigma(d) of them.
    """
    if d < 1:
        raise ValueError(f"need d >= 1, got {d}")
    return [Sublattice(a, d // a, k) for a in divisors(d) for k in range(a)]


def factors_through(L: Sublattice, m: int) -> bool:
    """True iff the cover lifts to C/(Z + m*i*Z), i.e. a divides d/m."""
    if m < 2:
        raise ValueError(f"need m >= 2, got {m}")
    d = L.d
    return d % m == 0 and (d // m) % L.a == 0


def torsion_pullback_trivial(L: Sublattice, pc: PeriodClass) -> bool:
    """True iff the real number d*k1/m lies in the sublattice.

    A real point of a*Z + (b*i + k)*Z has zero coefficient on the second
    generator, so membership reduces to integrality of d*k1/m and
    divisibility by a.
    """
    n = L.d * pc.k1
    return n % pc.m == 0 and (n // pc.m) % L.a == 0


def admissible_period_classes(m: int) -> list[PeriodClass]:
    """Torsion classes (k1 + i*k2)/m that can be the normal bundle N_m.

    Scans all (k1, k2) in [0, m)^2 and keeps those whose pullback to
    C/(Z + m*i*Z) is trivial (k1 + i*k2 in Z + m*i*Z) and whose order in
    C/(Z + iZ) is exactly m.
    """
    if m < 2:
        raise ValueError(f"need m >= 2, got {m}")
    out = []
    for k1 in range(m):
        for k2 in range(m):
            pulls_back_trivially = k2 % m == 0
            order = m // gcd(gcd(m, k1), k2)
            if pulls_back_trivially and order == m:
                out.append(PeriodClass(m, k1))
    return out


def partition_moduli(m: int, d: int) -> ModuliPartition:
    """Split the sigma(d) covers by whether the pulled-back N_m is trivial.

    ``minus`` holds the covers with h^0(f*N_m) = 1.  The torsion criterion is
    evaluated with the smallest admissible k1 and checked against the
    lifting criterion on every cover.
    """
    pc = admissible_period_classes(m)[0]
    part = ModuliPartition(m, d)
    for L in enumerate_sublattices(d):
        trivial = torsion_pullback_trivial(L, pc)
        if trivial != factors_through(L, m):
            raise RuntimeError(f"torsion and lifting criteria disagree on {L} for m={m}")
        (part.minus if trivial else part.plus).append(L)
    return part
