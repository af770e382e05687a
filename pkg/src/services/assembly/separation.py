"""Certified separation of classified eigenvalues.

Every record is backed by a rational enclosure and a polynomial vanishing
at its value. Two records closer than DISJOINT_TOL are either separated by
refining their enclosures, or certified equal: both enclosures are the same
exact rational, or a common factor of their polynomials has a root in the
overlap. Equal values from different types are legitimate (6 is localized,
symmetric, skew and miniaturized at once in the Neumann spectrum); the
ledger counts each record's multiplicity separately.
"""

import logging
from dataclasses import dataclass, replace
from enum import Enum
from typing import Dict, Optional, Sequence, Tuple

from gmpy2 import mpq

from src.core.exceptions import TheoryViolationError
from src.observability.logging import get_logger, log_event
from src.services.assembly.records import EigenType, EigenvalueRecord
from src.services.decimation.maps import Branch
from src.services.oracle.laplacian import BoundaryCondition
from src.services.poly.interval import RootInterval, phi_enclosure
from src.services.poly.intpoly import IntPoly
from src.services.poly.rootisolation import refine_interval, sturm_chain, sturm_count
from src.services.primitive.families import f_iterate_poly
from src.services.primitive.roots import deflated_poly

logger = get_logger(__name__)

DISJOINT_TOL = 1e-9
ENCLOSURE_BITS = 64
MAX_REFINEMENTS = 40

# gcd(p_m, p~_m) = 1: a Dirichlet value is never both symmetric and skew primitive
_NEVER_SHARED = {
    BoundaryCondition.DIRICHLET: frozenset({EigenType.PRIMITIVE_SYM, EigenType.PRIMITIVE_SKEW}),
}


class Relation(str, Enum):
    SEPARATED = "separated"
    SHARED = "shared"


@dataclass(frozen=True)
class Enclosure:
    """
    Rational bounds on one record's value together with a polynomial that
    vanishes there and has no other root inside the bounds.
    """

    lo: "mpq"
    hi: "mpq"
    poly: IntPoly
    interval: Optional[RootInterval] = None
    start: Optional["mpq"] = None
    signs: Tuple[int, ...] = ()
    bits: int = ENCLOSURE_BITS

    @property
    def is_exact(self) -> bool:
        return self.lo == self.hi

    def overlap(self, other: "Enclosure") -> Optional[Tuple["mpq", "mpq"]]:
        lo, hi = max(self.lo, other.lo), min(self.hi, other.hi)
        return (lo, hi) if lo <= hi else None

    def refined(self) -> "Enclosure":
        """A strictly narrower enclosure of the same value."""
        if self.is_exact:
            return self
        if self.interval is not None:
            iv = refine_interval(self.poly, self.interval, self.interval.width / 2**16)
            return replace(self, lo=iv.lo, hi=iv.hi, interval=iv)
        return localized_enclosure(self.start, self.signs, self.bits * 2)


def localized_enclosure(start: "mpq", signs: Sequence[int], bits: int) -> Enclosure:
    """Enclosure of a birth value followed along its branch signs."""
    lo = hi = mpq(start)
    for sign in signs:
        lo, hi = phi_enclosure(sign, lo, hi, bits)
    poly = f_iterate_poly(len(signs)) - IntPoly.constant(start)
    return Enclosure(lo=lo, hi=hi, poly=poly, start=mpq(start), signs=tuple(signs), bits=bits)


def record_enclosure(record: EigenvalueRecord) -> Enclosure:
    """
    Raises:
        TheoryViolationError: the record carries no exact provenance
    """
    iv = record.interval
    if iv is not None and iv.is_exact:
        return Enclosure(lo=iv.lo, hi=iv.hi, poly=IntPoly.x() - IntPoly.constant(iv.lo))
    if iv is not None and record.family is not None:
        level = record.source_level if record.source_level is not None else record.level
        return Enclosure(lo=iv.lo, hi=iv.hi, poly=deflated_poly(record.family, level), interval=iv)
    if record.etype is EigenType.LOCALIZED and record.series is not None:
        signs = tuple(Branch(ch).sign for ch in record.branch_word)
        return localized_enclosure(mpq(record.series), signs, ENCLOSURE_BITS)
    raise TheoryViolationError(
        "type_disjointness",
        f"{record.etype.value} {record.value!r} has no exact provenance",
        level=record.level,
    )


def _roots_in(p: IntPoly, lo: "mpq", hi: "mpq") -> int:
    """Distinct roots of ``p`` in the closed interval [lo, hi]."""
    if p.degree <= 0:
        return 0
    if lo == hi:
        return int(p.sign_at(lo) == 0)
    return sturm_count(sturm_chain(p), lo, hi) + int(p.sign_at(lo) == 0)


def _isolates(e: Enclosure) -> bool:
    return e.is_exact or e.interval is not None or _roots_in(e.poly, e.lo, e.hi) == 1


def relate(a: Enclosure, b: Enclosure) -> Tuple[Relation, Enclosure, Enclosure]:
    """
    Decide whether two enclosed values differ or coincide.

    Returns:
        The relation and the (possibly refined) enclosures

    Raises:
        TheoryViolationError: neither separation nor equality could be certified
    """
    common: Optional[IntPoly] = None
    for _ in range(MAX_REFINEMENTS):
        window = a.overlap(b)
        if window is None:
            return Relation.SEPARATED, a, b
        if a.is_exact and b.is_exact:
            return Relation.SHARED, a, b
        if common is None:
            common = a.poly.gcd(b.poly)
        if _roots_in(common, *window) and _isolates(a) and _isolates(b):
            return Relation.SHARED, a, b
        a, b = a.refined(), b.refined()
    raise TheoryViolationError(
        "type_disjointness",
        "enclosures still overlap after refinement",
        lo=str(max(a.lo, b.lo)),
        hi=str(min(a.hi, b.hi)),
    )


def check_disjoint(records: Sequence[EigenvalueRecord], m: int, bc: BoundaryCondition) -> int:
    """
    Certify every pair of records closer than DISJOINT_TOL.

    Args:
        records: Records sorted by value
        m: Level, for error context
        bc: Boundary condition

    Returns:
        Number of certified shared values

    Raises:
        TheoryViolationError: a pair is undecided, or two types that never
            share a value do
    """
    enclosures: Dict[int, Enclosure] = {}
    forbidden = _NEVER_SHARED.get(bc, frozenset())
    shared = 0
    for i, a in enumerate(records):
        for j in range(i + 1, len(records)):
            b = records[j]
            if b.value - a.value >= DISJOINT_TOL:
                break
            if i not in enclosures:
                enclosures[i] = record_enclosure(a)
            if j not in enclosures:
                enclosures[j] = record_enclosure(b)
            try:
                relation, enclosures[i], enclosures[j] = relate(enclosures[i], enclosures[j])
            except TheoryViolationError as exc:
                raise TheoryViolationError(
                    "type_disjointness",
                    f"{a.etype.value} {a.value!r} and {b.etype.value} {b.value!r} undecided",
                    m=m,
                    bc=bc.value,
                ) from exc
            if relation is Relation.SEPARATED:
                continue
            if {a.etype, b.etype} == forbidden:
                raise TheoryViolationError(
                    "type_disjointness",
                    f"{a.etype.value} and {b.etype.value} share {a.value!r}",
                    m=m,
                    bc=bc.value,
                )
            shared += 1
            log_event(
                logger,
                logging.DEBUG,
                "Shared eigenvalue",
                value=a.value,
                types=f"{a.etype.value},{b.etype.value}",
            )
    return shared

