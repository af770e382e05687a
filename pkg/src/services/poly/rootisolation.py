"""Real root isolation and refinement with exact signs.

Two isolation strategies are provided. ``sturm_isolate`` counts roots with a
Sturm chain and bisects; it is general but expensive at high degree.
``isolate_at_guides`` takes candidate separating points (typically images
of the previous level's roots) and certifies the isolation when the number
of sign changes equals the degree.
"""

from typing import List, Optional, Sequence

from gmpy2 import mpq

from src.core.exceptions import DomainError
from src.observability.logging import get_logger
from src.services.poly.interval import RootInterval, dyadic_between
from src.services.poly.intpoly import IntPoly, RationalLike, to_mpq

logger = get_logger(__name__)


def sign_variations(signs: Sequence[int]) -> int:
    """Number of sign changes in a sequence, zeros skipped."""
    changes = 0
    last = 0
    for s in signs:
        if s == 0:
            continue
        if last and s != last:
            changes += 1
        last = s
    return changes


def sturm_chain(p: IntPoly) -> List[IntPoly]:
    """Sturm sequence of the square-free part of ``p``."""
    return [IntPoly(q) for q in p.poly.sturm()]


def _variations_at(chain: Sequence[IntPoly], x: "mpq") -> int:
    return sign_variations([q.sign_at(x) for q in chain])


def sturm_count(chain: Sequence[IntPoly], lo: "mpq", hi: "mpq") -> int:
    """Number of distinct roots in ``(lo, hi]``."""
    return _variations_at(chain, lo) - _variations_at(chain, hi)


def sturm_isolate(p: IntPoly, lo: RationalLike, hi: RationalLike) -> List[RootInterval]:
    """
    Isolate every real root of ``p`` in the open interval ``(lo, hi)``.

    Args:
        p: Square-free polynomial
        lo: Left end, must not be a root
        hi: Right end, must not be a root

    Returns:
        Disjoint isolating intervals sorted ascending

    Raises:
        MultiplicityError: when ``p`` has a repeated root
        DomainError: when an endpoint is a root or ``lo >= hi``
    """
    lo, hi = to_mpq(lo), to_mpq(hi)
    if lo >= hi:
        raise DomainError("isolation interval is empty", value=(lo, hi))
    if p.sign_at(lo) == 0 or p.sign_at(hi) == 0:
        raise DomainError("isolation interval endpoint is a root", value=(lo, hi))
    p.assert_squarefree()

    chain = sturm_chain(p)
    found: List[RootInterval] = []
    stack = [(lo, hi, sturm_count(chain, lo, hi))]
    while stack:
        a, b, count = stack.pop()
        if count == 0:
            continue
        if count == 1:
            found.append(RootInterval(lo=a, hi=b, sign_lo=p.sign_at(a), sign_hi=p.sign_at(b)))
            continue
        mid = dyadic_between(a + (b - a) / 4, b - (b - a) / 4)
        if p.sign_at(mid) == 0:
            found.append(RootInterval.exact(mid))
            eps = (b - a) / 8
            while sturm_count(chain, mid - eps, mid + eps) != 1 or p.sign_at(mid - eps) == 0:
                eps /= 2
            left = sturm_count(chain, a, mid - eps)
            stack.append((mid + eps, b, count - left - 1))
            stack.append((a, mid - eps, left))
            continue
        left = sturm_count(chain, a, mid)
        stack.append((mid, b, count - left))
        stack.append((a, mid, left))

    found.sort(key=lambda iv: iv.lo)
    return found


def refine_interval(p: IntPoly, iv: RootInterval, width: RationalLike) -> RootInterval:
    """Bisect on exact signs until the interval is narrower than ``width``."""
    if iv.is_exact:
        return iv
    width = to_mpq(width)
    lo, hi = iv.lo, iv.hi
    s_lo = iv.sign_lo or p.sign_at(lo)
    s_hi = iv.sign_hi or p.sign_at(hi)
    while hi - lo >= width:
        mid = dyadic_between(lo + 7 * (hi - lo) / 16, hi - 7 * (hi - lo) / 16)
        s_mid = p.sign_at(mid)
        if s_mid == 0:
            return RootInterval.exact(mid)
        if s_mid == s_lo:
            lo = mid
        else:
            hi = mid
    return RootInterval(lo=lo, hi=hi, sign_lo=s_lo, sign_hi=s_hi)


def refine_root(p: IntPoly, iv: RootInterval, tol: float = 1e-12) -> float:
    """
    Refine an isolating interval by bisection and return its midpoint.

    Args:
        p: Polynomial owning the root
        iv: Isolating interval
        tol: Target width

    Returns:
        The midpoint of the refined interval as a float
    """
    refined = refine_interval(p, iv, mpq(tol))
    return float(refined.midpoint)


def isolate_at_guides(p: IntPoly, points: Sequence["mpq"]) -> Optional[List[RootInterval]]:
    """
    Certify root isolation from separating guide points.

    Each interval between consecutive guide points with a sign change holds
    an odd number of roots. When those intervals number ``deg p`` they hold
    exactly one root each.

    Returns:
        The isolating intervals, or None when the guides do not certify
    """
    if any(b <= a for a, b in zip(points, points[1:])):
        return None
    signs = [p.sign_at(x) for x in points]
    if 0 in signs:
        return None
    found = [
        RootInterval(lo=a, hi=b, sign_lo=sa, sign_hi=sb)
        for a, b, sa, sb in zip(points, points[1:], signs, signs[1:])
        if sa != sb
    ]
    if len(found) != p.degree:
        logger.debug(
            "Guide points did not certify isolation",
            extra={"degree": p.degree, "sign_changes": len(found)},
        )
        return None
    return found
