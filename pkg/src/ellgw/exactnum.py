"""Exact integer/rational helpers and the divisor-sum function.

Python integers are already arbitrary precision and ``fractions.Fraction``
keeps rationals in lowest terms with a positive denominator, so both are
used directly as the coefficient types of the package.
"""

from __future__ import annotations

import math
from fractions import Fraction
from functools import lru_cache
from numbers import Rational

Rat = Fraction

__all__ = ["Rat", "as_rat", "parse_rat", "format_rat", "divisors", "sigma", "gcd"]


def as_rat(x) -> Fraction:
    """Coerce an int, Fraction or ``"p/q"`` string to a Fraction.

    Floats are refused: nothing in this package is allowed to round.
    """
    if isinstance(x, bool):
        raise TypeError("bool is not a rational number")
    if isinstance(x, Fraction):
        return x
    if isinstance(x, int):
        return Fraction(x)
    if isinstance(x, str):
        return parse_rat(x)
    if isinstance(x, Rational):
        return Fraction(x.numerator, x.denominator)
    raise TypeError(f"cannot use {type(x).__name__} as an exact rational")


def parse_rat(text: str) -> Fraction:
    s = text.strip()
    if not s:
        raise ValueError("empty rational")
    if "/" in s:
        p, q = s.split("/", 1)
        try:
            num, den = int(p), int(q)
        except ValueError:
            raise ValueError(f"malformed rational {text!r}") from None
        if den == 0:
            raise ValueError(f"zero denominator in {text!r}")
        return Fraction(num, den)
    try:
        return Fraction(int(s))
    except ValueError:
        raise ValueError(f"malformed rational {text!r}") from None


def format_rat(x) -> str:
    """Serialize as ``"p/q"`` in lowest terms, or ``"p"`` when q = 1."""
    r = as_rat(x)
    if r.denominator == 1:
        return str(r.numerator)
    return f"{r.numerator}/{r.denominator}"


def divisors(d: int) -> list[int]:
    """Ascending positive divisors of ``d`` by trial division."""
    if isinstance(d, bool) or not isinstance(d, int):
        raise TypeError("divisors() needs an int")
    if d <= 0:
        raise ValueError(f"divisors() needs d >= 1, got {d}")
    small, large = [], []
    for i in range(1, math.isqrt(d) + 1):
        if d % i == 0:
            small.append(i)
            if i != d // i:
                large.append(d // i)
    return small + large[::-1]


@lru_cache(maxsize=4096)
def _sigma_int(d: int) -> int:
    return sum(divisors(d))


def sigma(x) -> int:
    """Sum of divisors of ``x`` if it is a positive integer, else 0.

    Any exact rational is accepted so that expressions like ``sigma(d/m)``
    are total: ``sigma(Fraction(5, 2)) == 0`` and ``sigma(-3) == 0``.
    """
    r = as_rat(x)
    if r.denominator != 1 or r.numerator <= 0:
        return 0
    return _sigma_int(r.numerator)


def gcd(a: int, b: int) -> int:
    if a == 0 and b == 0:
        raise ValueError("gcd(0, 0) is undefined")
    return math.gcd(a, b)
