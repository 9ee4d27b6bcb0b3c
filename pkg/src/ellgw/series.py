"""Truncated formal power series with exact rational coefficients.

``UniSeries`` is a single-variable series known modulo u^(trunc+1).
``SurfaceSeries`` lives in Q[t, t_1, ..., t_n] / (t_k^(m_k) - t), graded by
the rational t-degree e0 + sum e_k/m_k and truncated at a degree bound.
"""

from __future__ import annotations

import json
import math
from dataclasses import dataclass
from fractions import Fraction
from typing import Iterable, Mapping

from .exactnum import as_rat, format_rat
from .surfacespec import SurfaceSpec

__all__ = [
    "UniSeries",
    "FiberMonomial",
    "SurfaceSeries",
    "uni_mul",
    "uni_log",
    "uni_exp",
    "uni_pow_rat",
    "subst_monomial",
    "surf_mul",
]

_ZERO = Fraction(0)
_ONE = Fraction(1)


class UniSeries:
    """c_0 + c_1 u + ... + c_N u^N + O(u^(N+1)), with N = ``trunc``."""

    __slots__ = ("trunc", "_c")

    def __init__(self, coeffs, trunc: int | None = None):
        if isinstance(coeffs, Mapping):
            if trunc is None:
                raise ValueError("trunc is required when coefficients are a mapping")
            c = [_ZERO] * (trunc + 1)
            for n, v in coeffs.items():
                if n < 0:
                    raise ValueError(f"negative exponent {n}")
                if n <= trunc:
                    c[n] = as_rat(v)
        else:
            c = [as_rat(v) for v in coeffs]
            if trunc is None:
                trunc = len(c) - 1
            c = (c + [_ZERO] * (trunc + 1 - len(c)))[: trunc + 1]
        if trunc < 0:
            raise ValueError("trunc must be >= 0")
        self.trunc = trunc
        self._c = tuple(c)

    @classmethod
    def one(cls, trunc: int) -> "UniSeries":
        return cls([1], trunc)

    @classmethod
    def polynomial(cls, coeffs: Iterable, trunc: int) -> "UniSeries":
        return cls(list(coeffs), trunc)

    @property
    def coeffs(self) -> tuple:
        return self._c

    def __getitem__(self, n: int) -> Fraction:
        if n < 0:
            return _ZERO
        if n > self.trunc:
            raise IndexError(f"coefficient {n} is beyond truncation {self.trunc}")
        return self._c[n]

    def truncate(self, trunc: int) -> "UniSeries":
        if trunc > self.trunc:
            raise ValueError(f"cannot extend truncation {self.trunc} to {trunc}")
        return UniSeries(self._c[: trunc + 1], trunc)

    def dilate(self, d: int, trunc: int | None = None) -> "UniSeries":
        """Substitute u -> u^d."""
        if d < 1:
            raise ValueError("dilation factor must be >= 1")
        limit = self.trunc * d + d - 1
        trunc = limit if trunc is None else trunc
        if trunc > limit:
            raise ValueError(f"series known to u^{self.trunc} only reaches u^{limit} after u -> u^{d}")
        c = [_ZERO] * (trunc + 1)
        for n in range(0, trunc // d + 1):
            c[n * d] = self._c[n]
        return UniSeries(c, trunc)

    def __add__(self, other: "UniSeries") -> "UniSeries":
        n = min(self.trunc, other.trunc)
        return UniSeries([self._c[i] + other._c[i] for i in range(n + 1)], n)

    def __neg__(self) -> "UniSeries":
        return UniSeries([-x for x in self._c], self.trunc)

    def __sub__(self, other: "UniSeries") -> "UniSeries":
        return self + (-other)

    def scale(self, r) -> "UniSeries":
        r = as_rat(r)
        return UniSeries([r * x for x in self._c], self.trunc)

    def __mul__(self, other):
        if isinstance(other, UniSeries):
            return uni_mul(self, other)
        return self.scale(other)

    __rmul__ = __mul__

    def __eq__(self, other) -> bool:
        if not isinstance(other, UniSeries):
            return NotImplemented
        return self.trunc == other.trunc and self._c == other._c

    def agrees_with(self, other: "UniSeries") -> bool:
        """Equality up to the smaller of the two truncations."""
        n = min(self.trunc, other.trunc)
        return self._c[: n + 1] == other._c[: n + 1]

    def __hash__(self):
        return hash((self.trunc, self._c))

    def __repr__(self) -> str:
        terms = [f"{format_rat(c)}*u^{n}" for n, c in enumerate(self._c) if c]
        return f"UniSeries({' + '.join(terms) or '0'} + O(u^{self.trunc + 1}))"


def uni_mul(A: UniSeries, B: UniSeries) -> UniSeries:
    n = min(A.trunc, B.trunc)
    a, b = A.coeffs, B.coeffs
    out = [_ZERO] * (n + 1)
    for i in range(n + 1):
        ai = a[i]
        if not ai:
            continue
        for j in range(n - i + 1):
            if b[j]:
                out[i + j] += ai * b[j]
    return UniSeries(out, n)


def uni_log(A: UniSeries) -> UniSeries:
    """log A for A(0) = 1, from n*l_n = n*a_n - sum_{k<n} k*l_k*a_{n-k}."""
    if A[0] != 1:
        raise ValueError(f"log needs constant term 1, got {format_rat(A[0])}")
    a, N = A.coeffs, A.trunc
    out = [_ZERO] * (N + 1)
    for n in range(1, N + 1):
        s = n * a[n]
        for k in range(1, n):
            if out[k] and a[n - k]:
                s -= k * out[k] * a[n - k]
        out[n] = s / n
    return UniSeries(out, N)


def uni_exp(A: UniSeries) -> UniSeries:
    """exp A for A(0) = 0, from n*b_n = sum_{k=1..n} k*a_k*b_{n-k}."""
    if A[0] != 0:
        raise ValueError(f"exp needs constant term 0, got {format_rat(A[0])}")
    a, N = A.coeffs, A.trunc
    out = [_ZERO] * (N + 1)
    out[0] = _ONE
    for n in range(1, N + 1):
        s = _ZERO
        for k in range(1, n + 1):
            if a[k] and out[n - k]:
                s += k * a[k] * out[n - k]
        out[n] = s / n
    return UniSeries(out, N)


def uni_pow_rat(A: UniSeries, r) -> UniSeries:
    """A**r = exp(r log A) for A(0) = 1 and any rational r."""
    r = as_rat(r)
    if A[0] != 1:
        raise ValueError(f"rational power needs constant term 1, got {format_rat(A[0])}")
    if r == 0:
        return UniSeries.one(A.trunc)
    return uni_exp(uni_log(A).scale(r))


@dataclass(frozen=True, order=True)
class FiberMonomial:
    """t^e0 * prod_k t_k^(e_k) in normal form 0 <= e_k < m_k."""

    e0: int
    e: tuple
    mults: tuple

    def __post_init__(self):
        if len(self.e) != len(self.mults):
            raise ValueError("exponent vector and multiplicities differ in length")
        if self.e0 < 0:
            raise ValueError("negative exponent of t")
        for ek, mk in zip(self.e, self.mults):
            if not 0 <= ek < mk:
                raise ValueError(f"exponent {ek} not reduced modulo {mk}; use FiberMonomial.normalize")

    @classmethod
    def normalize(cls, e0: int, e: Iterable[int], mults: Iterable[int]) -> "FiberMonomial":
        """Apply t_k^(m_k) = t until every fiber exponent is reduced."""
        e, mults = tuple(e), tuple(mults)
        if e0 < 0 or any(x < 0 for x in e):
            raise ValueError("exponents must be non-negative")
        red = []
        for ek, mk in zip(e, mults):
            q, r = divmod(ek, mk)
            e0 += q
            red.append(r)
        return cls(e0, tuple(red), mults)

    @classmethod
    def unit(cls, mults: Iterable[int]) -> "FiberMonomial":
        mults = tuple(mults)
        return cls(0, (0,) * len(mults), mults)

    @classmethod
    def t(cls, mults: Iterable[int], power: int = 1) -> "FiberMonomial":
        mults = tuple(mults)
        return cls(power, (0,) * len(mults), mults)

    @classmethod
    def fiber(cls, mults: Iterable[int], k: int, power: int = 1) -> "FiberMonomial":
        mults = tuple(mults)
        e = [0] * len(mults)
        e[k] = power
        return cls.normalize(0, e, mults)

    @property
    def degree(self) -> Fraction:
        return self.e0 + sum((Fraction(ek, mk) for ek, mk in zip(self.e, self.mults)), _ZERO)

    def __mul__(self, other: "FiberMonomial") -> "FiberMonomial":
        if self.mults != other.mults:
            raise ValueError("monomials from different rings")
        return FiberMonomial.normalize(
            self.e0 + other.e0, (a + b for a, b in zip(self.e, other.e)), self.mults
        )

    def __pow__(self, n: int) -> "FiberMonomial":
        if n < 0:
            raise ValueError("negative power")
        return FiberMonomial.normalize(self.e0 * n, (x * n for x in self.e), self.mults)

    def sort_key(self):
        return (self.degree, self.e0, self.e)

    def __str__(self) -> str:
        parts = []
        if self.e0:
            parts.append("t" if self.e0 == 1 else f"t^{self.e0}")
        for k, ek in enumerate(self.e):
            if ek:
                parts.append(f"t_{k + 1}" if ek == 1 else f"t_{k + 1}^{ek}")
        return "*".join(parts) or "1"


class SurfaceSeries:
    """Truncated series in the quotient monomial ring of a surface spec."""

    __slots__ = ("spec", "bound", "_terms")

    def __init__(self, spec: SurfaceSpec, bound, terms: Mapping | None = None):
        self.spec = spec
        self.bound = as_rat(bound)
        if self.bound < 0:
            raise ValueError("degree bound must be >= 0")
        mults = spec.multiplicities
        clean = {}
        for mono, c in (terms or {}).items():
            if mono.mults != mults:
                raise ValueError("monomial does not belong to this spec's ring")
            c = as_rat(c)
            if c and mono.degree <= self.bound:
                clean[mono] = clean.get(mono, _ZERO) + c
        self._terms = {m: c for m, c in clean.items() if c}

    @classmethod
    def zero(cls, spec: SurfaceSpec, bound) -> "SurfaceSeries":
        return cls(spec, bound)

    @classmethod
    def one(cls, spec: SurfaceSpec, bound) -> "SurfaceSeries":
        return cls(spec, bound, {FiberMonomial.unit(spec.multiplicities): _ONE})

    @property
    def terms(self) -> dict:
        return dict(self._terms)

    def coeff(self, mono: FiberMonomial) -> Fraction:
        return self._terms.get(mono, _ZERO)

    def _check_ring(self, other: "SurfaceSeries") -> None:
        if self.spec.multiplicities != other.spec.multiplicities:
            raise ValueError(
                f"series over different rings: {self.spec.multiplicities} vs {other.spec.multiplicities}"
            )

    def __add__(self, other: "SurfaceSeries") -> "SurfaceSeries":
        self._check_ring(other)
        out = dict(self._terms)
        for m, c in other._terms.items():
            out[m] = out.get(m, _ZERO) + c
        return SurfaceSeries(self.spec, min(self.bound, other.bound), out)

    def scale(self, r) -> "SurfaceSeries":
        r = as_rat(r)
        return SurfaceSeries(self.spec, self.bound, {m: r * c for m, c in self._terms.items()})

    def __neg__(self) -> "SurfaceSeries":
        return self.scale(-1)

    def __sub__(self, other: "SurfaceSeries") -> "SurfaceSeries":
        return self + (-other)

    def __mul__(self, other):
        if isinstance(other, SurfaceSeries):
            return surf_mul(self, other)
        return self.scale(other)

    __rmul__ = __mul__

    def __eq__(self, other) -> bool:
        if not isinstance(other, SurfaceSeries):
            return NotImplemented
        return (
            self.spec.multiplicities == other.spec.multiplicities
            and self.bound == other.bound
            and self._terms == other._terms
        )

    def __hash__(self):
        return hash((self.spec.multiplicities, self.bound, frozenset(self._terms.items())))

    def is_zero(self) -> bool:
        return not self._terms

    def sorted_terms(self) -> list:
        return sorted(self._terms.items(), key=lambda mc: mc[0].sort_key())

    def collapsed(self) -> dict:
        """Coefficients summed by total t-degree, ordered by degree."""
        out: dict = {}
        for mono, c in self._terms.items():
            deg = mono.degree
            out[deg] = out.get(deg, _ZERO) + c
        return {deg: out[deg] for deg in sorted(out) if out[deg]}

    def to_records(self) -> list:
        return [
            {
                "t": mono.e0,
                "fibers": list(mono.e),
                "degree": format_rat(mono.degree),
                "coeff": format_rat(c),
            }
            for mono, c in self.sorted_terms()
        ]

    def collapsed_records(self) -> list:
        return [{"degree": format_rat(d), "coeff": format_rat(c)} for d, c in self.collapsed().items()]

    def to_json(self) -> str:
        return json.dumps(self.to_records(), indent=2)

    def __repr__(self) -> str:
        body = " + ".join(f"{format_rat(c)}*{mono}" for mono, c in self.sorted_terms()) or "0"
        return f"SurfaceSeries({body}; degree <= {format_rat(self.bound)})"


def subst_monomial(A: UniSeries, M: FiberMonomial, spec: SurfaceSpec, bound) -> SurfaceSeries:
    """Evaluate A at the monomial M, keeping terms of degree <= bound."""
    bound = as_rat(bound)
    if M.mults != spec.multiplicities:
        raise ValueError("monomial does not belong to this spec's ring")
    deg = M.degree
    if deg <= 0:
        raise ValueError("cannot substitute a degree-zero monomial")
    need = math.floor(bound / deg)
    if A.trunc < need:
        raise ValueError(
            f"series truncated at {A.trunc} but degree bound {format_rat(bound)} "
            f"needs {need} terms of a degree-{format_rat(deg)} monomial"
        )
    terms = {}
    power = FiberMonomial.unit(spec.multiplicities)
    for n in range(need + 1):
        c = A[n]
        if c:
            terms[power] = terms.get(power, _ZERO) + c
        power = power * M
    return SurfaceSeries(spec, bound, terms)


def surf_mul(A: SurfaceSeries, B: SurfaceSeries) -> SurfaceSeries:
    A._check_ring(B)
    bound = min(A.bound, B.bound)
    out: dict = {}
    b_items = [(m, m.degree, c) for m, c in B._terms.items()]
    for ma, ca in A._terms.items():
        da = ma.degree
        if da > bound:
            continue
        for mb, db, cb in b_items:
            if da + db > bound:
                continue
            mono = ma * mb
            out[mono] = out.get(mono, _ZERO) + ca * cb
    return SurfaceSeries(A.spec, bound, out)
