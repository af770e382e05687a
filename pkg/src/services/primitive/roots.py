"""Root tables of the primitive polynomial families.

The base level of each family is isolated with a Sturm chain on (0, 6).
Every later level is isolated from the previous one: the images of the
previous roots under both inverse branches of f, together with a few fixed
points, are guide points that separate the new roots. The isolation is
certified when the sign changes across the guides number exactly the
degree. Guides are rebuilt at higher precision when that fails, and Sturm
isolation is the last resort.
"""

import logging
import time
from dataclasses import dataclass
from functools import lru_cache
from typing import Dict, List, Optional, Sequence, Tuple

from gmpy2 import mpq

from src.core.config import settings
from src.core.exceptions import DomainError, TheoryViolationError
from src.observability.logging import LogContext, get_logger, log_event
from src.observability.metrics import metrics
from src.services.decimation.maps import Branch
from src.services.poly.interval import RootInterval, dyadic_between, phi_interval
from src.services.poly.intpoly import IntPoly, poly_divide_exact, product
from src.services.poly.rootisolation import isolate_at_guides, refine_interval, sturm_isolate
from src.services.primitive.families import FamilyName, build_family

logger = get_logger(__name__)

BASE_LEVEL: Dict[FamilyName, int] = {
    FamilyName.P: 2,
    FamilyName.PTILDE: 2,
    FamilyName.PN: 1,
    FamilyName.L: 1,
    FamilyName.PTILDEN: 1,
}

# Roots known in closed form, removed before isolation
EXACT_ROOTS: Dict[FamilyName, Tuple[int, ...]] = {
    FamilyName.PN: (0, 6),
    FamilyName.PTILDEN: (6,),
}

ESCALATION_BITS = (40, 80, 160)


@dataclass(frozen=True)
class Guide:
    """A separating point, tagged with the previous root it images."""

    point: "mpq"
    parent: Optional[int] = None
    branch: Optional[Branch] = None


def _label(parent: Optional[int], branch: Optional[Branch]) -> str:
    if parent is None or branch is None:
        return "initial"
    return f"phi{branch.value}({parent})"


@dataclass(frozen=True)
class Bracket:
    """Interval expected to hold exactly one root of the next level."""

    lo: "mpq"
    hi: "mpq"
    parent: Optional[int] = None
    branch: Optional[Branch] = None

    @property
    def label(self) -> str:
        return _label(self.parent, self.branch)

    def holds(self, iv: RootInterval) -> bool:
        return self.lo <= iv.lo and iv.hi <= self.hi


@dataclass(frozen=True)
class RootEntry:
    """One root: 1-based index, isolating interval, refined value, ancestry."""

    index: int
    interval: RootInterval
    value: float
    parent: Optional[int] = None
    branch: Optional[Branch] = None

    @property
    def bracket(self) -> str:
        return _label(self.parent, self.branch)

    @property
    def is_initial(self) -> bool:
        return self.parent is None


@dataclass(frozen=True)
class RootTable:
    family: FamilyName
    level: int
    roots: Tuple[RootEntry, ...]
    method: str

    def __len__(self) -> int:
        return len(self.roots)

    @property
    def values(self) -> List[float]:
        return [r.value for r in self.roots]

    def child(self, parent: int, branch: Branch) -> Optional[RootEntry]:
        """The root continuing ``parent`` of the previous level along ``branch``."""
        for entry in self.roots:
            if entry.parent == parent and entry.branch is branch:
                return entry
        return None


@lru_cache(maxsize=None)
def deflated_poly(family: FamilyName, m: int) -> IntPoly:
    """The family polynomial with its closed-form roots divided out."""
    poly = build_family(family, m).poly
    exact = EXACT_ROOTS.get(family, ())
    if not exact:
        return poly
    x = IntPoly.x()
    return poly_divide_exact(poly, product(x - IntPoly.constant(r) for r in exact))


def _images(prev: RootTable, branch: Branch, bits: int) -> List[Guide]:
    p_prev = deflated_poly(prev.family, prev.level)
    width = mpq(1, 2**bits)
    guides = []
    for entry in prev.roots:
        iv = refine_interval(p_prev, entry.interval, width)
        lo, hi = phi_interval(branch.sign, iv, bits + 4)
        guides.append(Guide(dyadic_between(lo, hi), entry.index, branch))
    return guides


def weak_guides(prev: RootTable, bits: int = ESCALATION_BITS[0]) -> List[Guide]:
    """
    Guide points for the level after ``prev``, ascending.

    Args:
        prev: Complete root table of one family at level m
        bits: Precision of the previous roots and of the branch images

    Returns:
        Guide points separating the roots of level m + 1
    """
    minus = _images(prev, Branch.MINUS, bits)
    plus = list(reversed(_images(prev, Branch.PLUS, bits)))

    def fixed(value: int) -> Guide:
        return Guide(mpq(value))

    family = prev.family
    if family is FamilyName.P:
        return [fixed(0)] + minus + [fixed(2)] + plus + [fixed(5), fixed(6)]
    if family is FamilyName.PTILDE:
        return [fixed(0)] + minus + plus + [fixed(5), fixed(6)]
    if family is FamilyName.L:
        return [fixed(0)] + minus + plus + [fixed(6)]
    if family is FamilyName.PN:
        # prev holds 0 and 6, whose images are 0, 2, 3 and 5
        return minus + plus
    if family is FamilyName.PTILDEN:
        return [fixed(0)] + minus + plus + [fixed(5)]
    raise DomainError("family has no root table", value=family.value)


def _is_gap(family: FamilyName, lo: Guide, hi: Guide) -> bool:
    """The single guide interval that holds no root."""
    if family is FamilyName.P:
        return lo.branch is Branch.MINUS and hi.branch is None
    if family in (FamilyName.PN, FamilyName.PTILDEN):
        return lo.branch is Branch.MINUS and hi.branch is Branch.PLUS
    return False


def _ancestry(lo: Guide, hi: Guide) -> Tuple[Optional[int], Optional[Branch]]:
    if hi.branch is Branch.MINUS:
        return hi.parent, Branch.MINUS
    if lo.branch is Branch.PLUS:
        return lo.parent, Branch.PLUS
    return None, None


def weak_brackets(prev: RootTable, bits: int = ESCALATION_BITS[0]) -> List[Bracket]:
    """
    Target intervals for the roots of the level after ``prev``.

    Each bracket lies between consecutive guide points and records which
    previous root it continues, or none for a root born at the new level.
    For the symmetric Dirichlet family the bracket of the first newborn
    root starts at 2.
    """
    guides = weak_guides(prev, bits)
    brackets = []
    for lo, hi in zip(guides, guides[1:]):
        if _is_gap(prev.family, lo, hi):
            continue
        parent, branch = _ancestry(lo, hi)
        brackets.append(Bracket(lo.point, hi.point, parent, branch))
    return brackets


def _locate(guides: Sequence[Guide], iv: RootInterval) -> Tuple[Optional[int], Optional[Branch]]:
    for lo, hi in zip(guides, guides[1:]):
        if lo.point <= iv.lo and iv.hi <= hi.point:
            return _ancestry(lo, hi)
    return None, None


def _isolate_from_previous(
    family: FamilyName, poly: IntPoly, prev: RootTable
) -> Tuple[List[RootInterval], List[Guide], str]:
    guides: List[Guide] = []
    for bits in ESCALATION_BITS:
        guides = weak_guides(prev, bits)
        found = isolate_at_guides(poly, [g.point for g in guides])
        if found is not None:
            return found, guides, "bracket"
    log_event(
        logger,
        logging.WARNING,
        "Guide points did not separate the roots, falling back to Sturm isolation",
        family=family.value,
        m=prev.level + 1,
    )
    metrics.record_sturm_fallback(family.value)
    return sturm_isolate(poly, 0, 6), guides, "sturm"


@lru_cache(maxsize=None)
def isolate_family_roots(
    family: FamilyName, m: int, tol: Optional[float] = None
) -> RootTable:
    """
    Isolate and refine every root of a family member in [0, 6].

    Args:
        family: One of P, PTilde, PN, L, PTildeN
        m: Level
        tol: Width of the refined intervals, TOL_ROOT when omitted

    Returns:
        The ascending root table with bracket provenance

    Raises:
        TheoryViolationError: the root count differs from the degree or the
            roots fall outside their expected range
    """
    if family not in BASE_LEVEL:
        raise DomainError("family has no root table", value=family.value)
    tol = settings.TOL_ROOT if tol is None else tol
    started = time.perf_counter()

    with LogContext(family=family, m=m):
        fam = build_family(family, m)
        poly = deflated_poly(family, m)

        guides: List[Guide] = []
        if m == BASE_LEVEL[family]:
            found = sturm_isolate(poly, 0, 6) if poly.degree > 0 else []
            method = "sturm"
        else:
            prev = isolate_family_roots(family, m - 1, tol)
            found, guides, method = _isolate_from_previous(family, poly, prev)

        width = mpq(tol)
        entries: List[Tuple[RootInterval, Optional[int], Optional[Branch]]] = []
        for iv in found:
            refined = refine_interval(poly, iv, width)
            parent, branch = _locate(guides, refined) if guides else (None, None)
            entries.append((refined, parent, branch))
        for r in EXACT_ROOTS.get(family, ()):
            entries.append((RootInterval.exact(mpq(r)), None, None))
        entries.sort(key=lambda e: e[0].lo)

        roots = tuple(
            RootEntry(i, iv, float(iv.midpoint), parent, branch)
            for i, (iv, parent, branch) in enumerate(entries, start=1)
        )
        table = RootTable(family=family, level=m, roots=roots, method=method)
        _check_table(table, fam.degree)

    duration = time.perf_counter() - started
    metrics.record_isolation(family.value, method, len(roots), duration)
    logger.debug(
        "Isolated roots",
        extra={"family": family.value, "m": m, "count": len(roots), "method": method},
    )
    return table


def _check_table(table: RootTable, degree: int) -> None:
    family, m = table.family, table.level
    if len(table) != degree:
        raise TheoryViolationError(
            "root_count",
            f"{family.value}_{m} has {len(table)} roots in [0, 6], degree {degree}",
            family=family.value,
            m=m,
        )
    if any(r.interval.lo < 0 or r.interval.hi > 6 for r in table.roots):
        raise TheoryViolationError(
            "root_range", f"{family.value}_{m} has a root outside [0, 6]", family=family.value, m=m
        )
    if family is FamilyName.P:
        above_five = [r for r in table.roots if r.interval.lo > 5]
        straddle = [r for r in table.roots if r.interval.lo <= 5 <= r.interval.hi]
        if len(above_five) != 1 or straddle or table.roots[-1] is not above_five[0]:
            raise TheoryViolationError(
                "root_range",
                f"{family.value}_{m} must have exactly one root in (5, 6)",
                family=family.value,
                m=m,
            )


def primitive_roots(m: int, neumann: bool, skew: bool) -> RootTable:
    """Root table of the primitive family for a boundary condition and symmetry."""
    if neumann:
        family = FamilyName.PTILDEN if skew else FamilyName.PN
    else:
        family = FamilyName.PTILDE if skew else FamilyName.P
    return isolate_family_roots(family, m)
