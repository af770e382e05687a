"""Entry polynomials of the skeleton three-term recurrence."""

from dataclasses import dataclass
from functools import lru_cache

from src.core.exceptions import InternalConsistencyError
from src.services.poly.intpoly import IntPoly


@dataclass(frozen=True)
class EntryPolys:
    """Coefficients of the skeleton equation l b_{i-1} + s b_i + r b_{i+1} = 0.

    ``s_tilde`` and ``r_tilde`` replace ``s`` and ``r`` in the row next to
    q0 when the eigenfunction is skew-symmetric.
    """

    s: IntPoly
    r: IntPoly
    l: IntPoly
    s_tilde: IntPoly
    r_tilde: IntPoly


def _c(value: int) -> IntPoly:
    return IntPoly.constant(value)


@lru_cache(maxsize=1)
def entry_polys() -> EntryPolys:
    """Build the entries from their factored forms and check the expansions."""
    x = IntPoly.x()
    s = (_c(2) - x) * (_c(4) - x) * (_c(5) - x) - (_c(14) - 3 * x)
    r = -2 * ((_c(2) - x) * (_c(5) - x))
    l = x - _c(6)
    s_tilde = (_c(4) - x) * (_c(5) - x) - _c(1)
    r_tilde = -2 * (_c(5) - x)

    expected = {
        "s": (s, IntPoly.from_coeffs([26, -35, 11, -1])),
        "r": (r, IntPoly.from_coeffs([-20, 14, -2])),
        "l": (l, IntPoly.from_coeffs([-6, 1])),
        "s_tilde": (s_tilde, IntPoly.from_coeffs([19, -9, 1])),
        "r_tilde": (r_tilde, IntPoly.from_coeffs([-10, 2])),
    }
    for name, (built, expanded) in expected.items():
        if built != expanded:
            raise InternalConsistencyError(f"entry polynomial {name} expands incorrectly")

    return EntryPolys(s=s, r=r, l=l, s_tilde=s_tilde, r_tilde=r_tilde)
