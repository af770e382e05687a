"""Isolating intervals and rational enclosures of the inverse branches of f.

All endpoints are ``gmpy2.mpq`` values. An interval with ``lo == hi`` marks
an exact rational root and carries zero signs.
"""

from dataclasses import dataclass
from typing import TYPE_CHECKING, Tuple

import gmpy2
from gmpy2 import mpq

from src.core.exceptions import DomainError

if TYPE_CHECKING:
    from src.services.poly.intpoly import IntPoly

QUARTER_25 = mpq(25, 4)


@dataclass(frozen=True)
class RootInterval:
    """An interval certified to contain exactly one root of its polynomial."""

    lo: "mpq"
    hi: "mpq"
    sign_lo: int
    sign_hi: int

    @classmethod
    def exact(cls, value: "mpq") -> "RootInterval":
        return cls(lo=mpq(value), hi=mpq(value), sign_lo=0, sign_hi=0)

    @property
    def is_exact(self) -> bool:
        return self.lo == self.hi

    @property
    def width(self) -> "mpq":
        return self.hi - self.lo

    @property
    def midpoint(self) -> "mpq":
        return (self.lo + self.hi) / 2

    def contains(self, x: "mpq") -> bool:
        return self.lo <= x <= self.hi

    def disjoint_from(self, lo: "mpq", hi: "mpq") -> bool:
        return hi < self.lo or lo > self.hi


def _sqrt_bounds(value: "mpq", bits: int) -> Tuple["mpq", "mpq"]:
    """Dyadic bounds ``lo <= sqrt(value) <= hi`` with ``hi - lo = 2**-bits``."""
    if value < 0:
        raise DomainError("square root of a negative rational", value=value)
    scale = gmpy2.mpz(4) ** bits
    scaled = (value.numerator * scale) // value.denominator
    root = gmpy2.isqrt(scaled)
    denom = gmpy2.mpz(2) ** bits
    return mpq(root, denom), mpq(root + 1, denom)


def _exact_sqrt(value: "mpq"):
    """Return sqrt(value) when it is rational, else None."""
    num, den = value.numerator, value.denominator
    if num < 0:
        return None
    rn, rd = gmpy2.isqrt(num), gmpy2.isqrt(den)
    if rn * rn == num and rd * rd == den:
        return mpq(rn, rd)
    return None


def phi_enclosure(branch: int, lo: "mpq", hi: "mpq", bits: int = 60) -> Tuple["mpq", "mpq"]:
    """
    Rational enclosure of ``phi_branch`` over ``[lo, hi]``.

    ``branch`` is -1 for the stable branch 2x/(5+sqrt(25-4x)) and +1 for
    (5+sqrt(25-4x))/2. Both are monotone on ``x <= 25/4``; the minus branch
    increases and the plus branch decreases in x.

    Args:
        branch: -1 or +1
        lo: Lower end of the argument interval
        hi: Upper end of the argument interval
        bits: Binary digits of the square-root bounds

    Returns:
        (lower, upper) enclosure, collapsed to a point when exact
    """
    lo, hi = mpq(lo), mpq(hi)
    if hi > QUARTER_25:
        raise DomainError("phi is undefined above 25/4", value=hi)

    if lo == hi:
        exact = _exact_sqrt(25 - 4 * lo)
        if exact is not None:
            value = (5 + branch * exact) / 2
            return value, value

    # sqrt(25 - 4x) is decreasing in x
    _, s_hi = _sqrt_bounds(25 - 4 * lo, bits)
    s_lo, _ = _sqrt_bounds(25 - 4 * hi, bits)
    if branch < 0:
        return (5 - s_hi) / 2, (5 - s_lo) / 2
    return (5 + s_lo) / 2, (5 + s_hi) / 2


def phi_interval(branch: int, iv: RootInterval, bits: int = 60) -> Tuple["mpq", "mpq"]:
    """Enclosure of the image of a root interval under one branch."""
    return phi_enclosure(branch, iv.lo, iv.hi, bits)


def dyadic_between(lo: "mpq", hi: "mpq") -> "mpq":
    """A short dyadic rational in ``[lo, hi]``, the midpoint when nothing shorter fits."""
    if lo == hi:
        return lo
    width = hi - lo
    bits = 0
    while mpq(1, 2**bits) > width / 2:
        bits += 1
    denom = 2**bits
    candidate = mpq(gmpy2.f_div(lo.numerator * denom, lo.denominator) + 1, denom)
    if lo <= candidate <= hi:
        return candidate
    return (lo + hi) / 2


def phi_iterate_enclosure(branch: int, z: "mpq", k: int, bits: int = 60) -> Tuple["mpq", "mpq"]:
    """Enclosure of ``phi_branch`` applied ``k`` times to the rational ``z``."""
    lo = hi = mpq(z)
    for _ in range(k):
        lo, hi = phi_enclosure(branch, lo, hi, bits)
    return lo, hi


def certified_sign(p: "IntPoly", lo: "mpq", hi: "mpq") -> int:
    """
    Sign of ``p`` on all of ``[lo, hi]``, or 0 when it cannot be certified.

    The value at the midpoint is compared with a bound on the variation
    over the interval, ``sum i |c_i| R**(i-1) * (hi - lo) / 2`` with
    ``R = max(|lo|, |hi|)``.
    """
    lo, hi = mpq(lo), mpq(hi)
    mid = (lo + hi) / 2
    value = p.evaluate(mid)
    if lo == hi:
        return (value > 0) - (value < 0)
    radius = max(abs(lo), abs(hi))
    slope = mpq(0)
    power = mpq(1)
    for i, c in enumerate(p.coeffs[1:], start=1):
        slope += i * abs(c) * power
        power *= radius
    if abs(value) > slope * (hi - lo) / 2:
        return (value > 0) - (value < 0)
    return 0
