"""Exact univariate polynomials over the rationals.

``IntPoly`` wraps a sympy ``Poly`` in the domain ``QQ`` and keeps a cached
tuple of ``gmpy2.mpq`` coefficients (ascending degree) for fast Horner
evaluation at rational points.
"""

from dataclasses import dataclass
from fractions import Fraction
from functools import cached_property
from math import gcd
from typing import Iterable, Optional, Sequence, Tuple, Union

from gmpy2 import mpq, mpz
from sympy import QQ, Poly, Rational, Symbol

from src.core.exceptions import ExactnessError, MultiplicityError

X = Symbol("x")

RationalLike = Union[int, Fraction, "mpq", Rational]


def to_mpq(value: RationalLike) -> "mpq":
    """Convert an int, Fraction, sympy Rational or domain element to ``mpq``."""
    if isinstance(value, int):
        return mpq(value, 1)
    if isinstance(value, Rational):
        return mpq(int(value.p), int(value.q))
    if isinstance(value, float):
        return mpq(value)
    return mpq(int(value.numerator), int(value.denominator))


@dataclass(frozen=True)
class IntPoly:
    """A polynomial with exact rational coefficients in canonical form."""

    poly: Poly

    @classmethod
    def from_coeffs(cls, coeffs: Iterable[RationalLike]) -> "IntPoly":
        """Build from ascending-degree coefficients."""
        desc = [Rational(int(c.numerator), int(c.denominator)) for c in map(to_mpq, coeffs)]
        desc.reverse()
        if not desc:
            desc = [Rational(0)]
        return cls(Poly(desc, X, domain=QQ))

    @classmethod
    def constant(cls, c: RationalLike) -> "IntPoly":
        return cls.from_coeffs([c])

    @classmethod
    def x(cls) -> "IntPoly":
        return cls.from_coeffs([0, 1])

    @cached_property
    def coeffs(self) -> Tuple["mpq", ...]:
        """Ascending coefficients; empty for the zero polynomial."""
        if self.poly.is_zero:
            return ()
        return tuple(to_mpq(c) for c in reversed(self.poly.rep.to_list()))

    @property
    def degree(self) -> int:
        """Degree, with -1 for the zero polynomial."""
        return len(self.coeffs) - 1

    @property
    def is_zero(self) -> bool:
        return self.poly.is_zero

    @property
    def leading(self) -> "mpq":
        return self.coeffs[-1] if self.coeffs else mpq(0)

    def __add__(self, other: "IntPoly") -> "IntPoly":
        return poly_add(self, other)

    def __sub__(self, other: "IntPoly") -> "IntPoly":
        return IntPoly(self.poly - other.poly)

    def __neg__(self) -> "IntPoly":
        return IntPoly(-self.poly)

    def __mul__(self, other: Union["IntPoly", int]) -> "IntPoly":
        if isinstance(other, int):
            return poly_scale(self, other)
        return poly_mul(self, other)

    __rmul__ = __mul__

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, IntPoly):
            return NotImplemented
        return self.coeffs == other.coeffs

    def __hash__(self) -> int:
        return hash(self.coeffs)

    def __call__(self, inner: "IntPoly") -> "IntPoly":
        """Composition ``self(inner(x))``."""
        return poly_compose(self, inner)

    def diff(self) -> "IntPoly":
        return IntPoly(self.poly.diff(X))

    def gcd(self, other: "IntPoly") -> "IntPoly":
        return IntPoly(self.poly.gcd(other.poly))

    @cached_property
    def integer_form(self) -> Tuple[Tuple[int, ...], int]:
        """Integer coefficients ``L * c_i`` and the positive common denominator ``L``."""
        lcm = 1
        for c in self.coeffs:
            lcm = lcm * int(c.denominator) // gcd(lcm, int(c.denominator))
        return tuple(int(c * lcm) for c in self.coeffs), lcm

    def evaluate(self, x: RationalLike) -> "mpq":
        return eval_rational(self, x)

    def sign_at(self, x: RationalLike) -> int:
        value = _homogeneous_horner(self.integer_form[0], to_mpq(x))
        return (value > 0) - (value < 0)

    def evaluate_float(self, x: float) -> float:
        """Floating Horner evaluation, for diagnostics only."""
        acc = 0.0
        for c in reversed(self.coeffs):
            acc = acc * x + float(c)
        return acc

    def assert_squarefree(self) -> None:
        """Raise MultiplicityError when the polynomial has a repeated root."""
        if self.degree < 2:
            return
        g = self.gcd(self.diff())
        if g.degree > 0:
            raise MultiplicityError(
                f"Polynomial of degree {self.degree} has repeated roots",
                gcd_degree=g.degree,
            )

    def dump_lines(self, header: Optional[str] = None) -> Sequence[str]:
        """
        One ``index numerator/denominator`` line per coefficient.

        Args:
            header: Written first as a ``# header`` line when given
        """
        lines = [f"# {header}"] if header else []
        lines.extend(
            f"{i} {int(c.numerator)}/{int(c.denominator)}" for i, c in enumerate(self.coeffs)
        )
        return lines


def poly_add(p: IntPoly, q: IntPoly) -> IntPoly:
    return IntPoly(p.poly + q.poly)


def poly_mul(p: IntPoly, q: IntPoly) -> IntPoly:
    return IntPoly(p.poly * q.poly)


def poly_scale(p: IntPoly, c: RationalLike) -> IntPoly:
    c = to_mpq(c)
    return IntPoly(p.poly * Rational(int(c.numerator), int(c.denominator)))


def poly_compose(p: IntPoly, q: IntPoly) -> IntPoly:
    """Return ``p(q(x))`` exactly."""
    return IntPoly(p.poly.compose(q.poly))


def poly_divide_exact(num: IntPoly, den: IntPoly) -> IntPoly:
    """
    Divide and assert a zero remainder.

    Raises:
        ExactnessError: when ``den`` does not divide ``num``
    """
    if den.is_zero:
        raise ZeroDivisionError("division by the zero polynomial")
    quotient, remainder = num.poly.div(den.poly)
    if not remainder.is_zero:
        raise ExactnessError(
            f"Division of degree {num.degree} by degree {den.degree} is not exact",
            remainder_degree=IntPoly(remainder).degree,
        )
    return IntPoly(quotient)


def _homogeneous_horner(coeffs: Sequence[int], x: "mpq") -> "mpz":
    """``b**n * sum c_i (a/b)**i`` for ``x = a/b``, computed on integers."""
    if not coeffs:
        return mpz(0)
    a, b = mpz(x.numerator), mpz(x.denominator)
    dyadic = b & (b - 1) == 0
    shift = b.bit_length() - 1
    acc = mpz(coeffs[-1])
    bpow = mpz(1)
    for k, c in enumerate(reversed(coeffs[:-1]), start=1):
        if dyadic:
            acc = acc * a + (mpz(c) << (shift * k))
        else:
            bpow *= b
            acc = acc * a + c * bpow
    return acc


def eval_rational(p: IntPoly, x: RationalLike) -> "mpq":
    """Exact Horner evaluation at a rational point."""
    x = to_mpq(x)
    coeffs, lcm = p.integer_form
    if not coeffs:
        return mpq(0)
    value = _homogeneous_horner(coeffs, x)
    return mpq(value, mpz(x.denominator) ** (len(coeffs) - 1) * lcm)


def product(polys: Iterable[IntPoly]) -> IntPoly:
    result = IntPoly.constant(1)
    for p in polys:
        result = result * p
    return result


def from_float_dyadic(value: float) -> "mpq":
    """Exact rational value of a float (all floats are dyadic)."""
    return mpq(value)


__all__ = [
    "IntPoly",
    "X",
    "to_mpq",
    "poly_add",
    "poly_mul",
    "poly_scale",
    "poly_compose",
    "poly_divide_exact",
    "eval_rational",
    "product",
    "from_float_dyadic",
]
