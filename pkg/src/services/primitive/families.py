"""Exact determinant polynomial families.

Dirichlet symmetric (Q, P) and skew (QTILDE, PTILDE) families come from the
tridiagonal skeleton system on b_1..b_{m-1} with b_0 = b_m = 0, whose row i
is evaluated at lambda_{i+1} = F_{m-i-1}(x), F_k being the k-th iterate of f.
The Neumann families (LTILDE, L, QN, PN) and the Neumann skew family
(QTILDEN, PTILDEN) add the apex row -2 b_{m-1} + (2 - x) b_m = 0.

Every builder is cached per level and returns a ``PolyFamily``.
"""

from dataclasses import dataclass
from enum import Enum
from functools import lru_cache
from typing import List, Optional, Tuple

from src.core.config import settings
from src.core.exceptions import (
    InternalConsistencyError,
    InvalidLevelError,
    SizeLimitError,
    TheoryViolationError,
)
from src.observability.logging import get_logger
from src.observability.metrics import metrics
from src.services.poly.intpoly import IntPoly, poly_divide_exact, product
from src.services.primitive.entries import entry_polys

logger = get_logger(__name__)


class FamilyName(str, Enum):
    Q = "Q"
    P = "P"
    QTILDE = "QTilde"
    PTILDE = "PTilde"
    QN = "QN"
    PN = "PN"
    LTILDE = "LTilde"
    L = "L"
    QTILDEN = "QTildeN"
    PTILDEN = "PTildeN"


@dataclass(frozen=True)
class PolyFamily:
    family: FamilyName
    level: int
    poly: IntPoly

    @property
    def degree(self) -> int:
        return self.poly.degree


def expected_degree(family: FamilyName, m: int) -> Optional[int]:
    """Closed-form degree of a family member, None where no formula applies."""
    if family == FamilyName.P:
        return 2**m + 2 ** (m - 2) - 2 if m >= 2 else None
    if family == FamilyName.PTILDE:
        return 2**m - 2 if m >= 2 else None
    if family == FamilyName.Q:
        return 3 * (2 ** (m - 1) - 1) if m >= 2 else None
    if family == FamilyName.PN:
        return 2**m
    if family == FamilyName.QN:
        return 2 ** (m + 1) - 2
    if family in (FamilyName.L, FamilyName.PTILDEN):
        return 2**m - 1
    return None


def _check_level(m: int, minimum: int, max_level: Optional[int]) -> None:
    limit = settings.MAX_POLY_LEVEL if max_level is None else max_level
    if m < minimum:
        raise InvalidLevelError(m, f"family starts at level {minimum}")
    if m > limit:
        raise SizeLimitError("polynomial", m, limit)


def _assert_degree(fam: PolyFamily) -> PolyFamily:
    expected = expected_degree(fam.family, fam.level)
    if expected is not None and fam.degree != expected:
        raise TheoryViolationError(
            "degree",
            f"{fam.family.value}_{fam.level} has degree {fam.degree}, expected {expected}",
            family=fam.family.value,
            level=fam.level,
        )
    return fam


@lru_cache(maxsize=None)
def f_iterate_poly(k: int) -> IntPoly:
    """F_k = f composed k times, F_0 = x."""
    if k == 0:
        return IntPoly.x()
    prev = f_iterate_poly(k - 1)
    return prev * (IntPoly.constant(5) - prev)


def _compose(p: IntPoly, k: int) -> IntPoly:
    return p(f_iterate_poly(k)) if k else p


@lru_cache(maxsize=None)
def _q(m: int) -> IntPoly:
    e = entry_polys()
    if m == 1:
        return IntPoly.constant(1)
    if m == 2:
        return e.s
    return _compose(e.s, m - 2) * _q(m - 1) - _compose(e.r, m - 2) * _compose(e.l, m - 3) * _q(
        m - 2
    )


@lru_cache(maxsize=None)
def _q_tilde(m: int) -> IntPoly:
    e = entry_polys()
    if m == 2:
        return e.s_tilde
    return _compose(e.s_tilde, m - 2) * _q(m - 1) - _compose(e.r_tilde, m - 2) * _compose(
        e.l, m - 3
    ) * _q(m - 2)


@lru_cache(maxsize=None)
def spurious_factor_two(m: int) -> IntPoly:
    """Product of F_i - 2 over i = 0..m-3."""
    two = IntPoly.constant(2)
    return product(f_iterate_poly(i) - two for i in range(m - 2))


@lru_cache(maxsize=None)
def neumann_divisor(m: int) -> IntPoly:
    """Product of (F_i - 2)(F_i - 5) over i = 0..m-2."""
    two, five = IntPoly.constant(2), IntPoly.constant(5)
    return product(
        (f_iterate_poly(i) - two) * (f_iterate_poly(i) - five) for i in range(m - 1)
    )


@lru_cache(maxsize=None)
def _l_tilde(m: int) -> IntPoly:
    e = entry_polys()
    x = IntPoly.x()
    four = IntPoly.constant(4)
    if m == 1:
        return four - x
    if m == 2:
        return (four - f_iterate_poly(1)) * e.s + 4 * e.l
    return e.s * _compose(_l_tilde(m - 1), 1) - _compose(e.r, 1) * e.l * _compose(
        _l_tilde(m - 2), 2
    )


def _tridiagonal_det(rows: List[Tuple[IntPoly, IntPoly, IntPoly]]) -> IntPoly:
    """Determinant of a tridiagonal matrix given as (sub, diag, super) rows.

    Leading-minor continuant D_k = a_k D_{k-1} - b_{k-1} c_k D_{k-2}.
    """
    d_prev, d = IntPoly.constant(1), rows[0][1]
    for k in range(1, len(rows)):
        sub, diag, _ = rows[k]
        d_prev, d = d, diag * d - rows[k - 1][2] * sub * d_prev
    return d


@lru_cache(maxsize=None)
def _q_tilde_n(m: int) -> IntPoly:
    x = IntPoly.x()
    if m == 1:
        return IntPoly.constant(6) - x
    last = (IntPoly.constant(-2), IntPoly.constant(2) - x, IntPoly.constant(0))
    return _tridiagonal_det(tridiagonal_rows(m, skew=True) + [last])


def tridiagonal_rows(m: int, skew: bool = False) -> List[Tuple[IntPoly, IntPoly, IntPoly]]:
    """(sub, diag, super) rows of the Dirichlet skeleton system at level m."""
    e = entry_polys()
    zero = IntPoly.constant(0)
    rows = []
    for i in range(1, m):
        k = m - i - 1
        if i == 1 and skew:
            rows.append((zero, _compose(e.s_tilde, k), _compose(e.r_tilde, k)))
        else:
            rows.append((_compose(e.l, k), _compose(e.s, k), _compose(e.r, k)))
    return rows


def neumann_rows(m: int) -> List[Tuple[IntPoly, IntPoly, IntPoly]]:
    """
    (sub, diag, super) rows of the symmetric Neumann skeleton system at level m.

    The Dirichlet rows sit between the reflected boundary equation at the
    corner, (4 - F_{m-1}) b_0 = 4 b_1, and the one at the far end of the
    skeleton, (2 - x) b_m = 2 b_{m-1}.
    """
    x = IntPoly.x()
    zero = IntPoly.constant(0)
    first = (zero, IntPoly.constant(4) - f_iterate_poly(m - 1), IntPoly.constant(-4))
    last = (IntPoly.constant(-2), IntPoly.constant(2) - x, zero)
    return [first] + tridiagonal_rows(m) + [last]


def _built(family: FamilyName, m: int, poly: IntPoly) -> PolyFamily:
    metrics.record_poly_built(family.value)
    logger.debug(
        "Built polynomial",
        extra={"family": family.value, "m": m, "degree": poly.degree},
    )
    return _assert_degree(PolyFamily(family, m, poly))


def build_q(m: int, max_level: Optional[int] = None) -> PolyFamily:
    """q_m by first-row expansion of the symmetric skeleton determinant."""
    _check_level(m, 2, max_level)
    return _built(FamilyName.Q, m, _q(m))


@lru_cache(maxsize=None)
def _p(m: int) -> IntPoly:
    return poly_divide_exact(_q(m), spurious_factor_two(m))


@lru_cache(maxsize=None)
def _p_tilde(m: int) -> IntPoly:
    return poly_divide_exact(_q_tilde(m), spurious_factor_two(m))


@lru_cache(maxsize=None)
def _l(m: int) -> IntPoly:
    return poly_divide_exact(_l_tilde(m), neumann_divisor(m))


def build_p(m: int, max_level: Optional[int] = None) -> PolyFamily:
    """p_m = q_m / prod_{i<=m-3} (F_i - 2)."""
    _check_level(m, 2, max_level)
    return _built(FamilyName.P, m, _p(m))


def build_q_tilde(m: int, max_level: Optional[int] = None) -> PolyFamily:
    _check_level(m, 2, max_level)
    return _built(FamilyName.QTILDE, m, _q_tilde(m))


def build_p_tilde(m: int, max_level: Optional[int] = None) -> PolyFamily:
    _check_level(m, 2, max_level)
    return _built(FamilyName.PTILDE, m, _p_tilde(m))


def build_l_tilde(m: int, max_level: Optional[int] = None) -> PolyFamily:
    _check_level(m, 1, max_level)
    return _built(FamilyName.LTILDE, m, _l_tilde(m))


def build_l(m: int, max_level: Optional[int] = None) -> PolyFamily:
    """l_m = l~_m / prod_{i<=m-2} (F_i - 2)(F_i - 5)."""
    _check_level(m, 1, max_level)
    return _built(FamilyName.L, m, _l(m))


@lru_cache(maxsize=None)
def _q_n(m: int) -> IntPoly:
    qn = _tridiagonal_det(neumann_rows(m))
    if m >= 2:
        two_minus = IntPoly.constant(2) - IntPoly.x()
        five_minus = IntPoly.constant(5) - IntPoly.x()
        by_last_row = two_minus * _l_tilde(m) - 4 * (
            two_minus * five_minus * _compose(_l_tilde(m - 1), 1)
        )
        if by_last_row != qn:
            raise InternalConsistencyError(
                "Neumann skeleton determinant differs from its last-row expansion", level=m
            )
    return qn


def build_qn(m: int, max_level: Optional[int] = None) -> PolyFamily:
    """
    q^N_m as the determinant of the Neumann skeleton system, checked
    against (2 - x) l~_m - 4 (2 - x)(5 - x) l~_{m-1}(f).

    Raises:
        InternalConsistencyError: the two constructions disagree
    """
    _check_level(m, 1, max_level)
    return _built(FamilyName.QN, m, _q_n(m))


@lru_cache(maxsize=None)
def _p_n(m: int) -> IntPoly:
    pn = poly_divide_exact(_q_n(m), neumann_divisor(m))
    if m >= 2:
        x = IntPoly.x()
        other = (IntPoly.constant(2) - x) * _l(m) - 4 * _compose(_l(m - 1), 1)
        if other != pn:
            raise InternalConsistencyError(
                "two constructions of the Neumann symmetric polynomial disagree", level=m
            )
    return pn


def build_pn(m: int, max_level: Optional[int] = None) -> PolyFamily:
    """
    p^N_m = q^N_m / prod_{i<=m-2} (F_i - 2)(F_i - 5).

    For m >= 2 the quotient is cross-checked against
    (2 - x) l_m - 4 l_{m-1}(f).

    Raises:
        InternalConsistencyError: the two constructions disagree
    """
    _check_level(m, 1, max_level)
    return _built(FamilyName.PN, m, _p_n(m))


def build_q_tilde_n(m: int, max_level: Optional[int] = None) -> PolyFamily:
    _check_level(m, 1, max_level)
    return _built(FamilyName.QTILDEN, m, _q_tilde_n(m))


@lru_cache(maxsize=None)
def _p_tilde_n(m: int) -> IntPoly:
    if m < 3:
        return _q_tilde_n(m)
    return poly_divide_exact(_q_tilde_n(m), spurious_factor_two(m))


def build_p_tilde_n(m: int, max_level: Optional[int] = None) -> PolyFamily:
    """Neumann skew polynomial with the F_i - 2 factors of its inner rows removed."""
    _check_level(m, 1, max_level)
    return _built(FamilyName.PTILDEN, m, _p_tilde_n(m))


BUILDERS = {
    FamilyName.Q: build_q,
    FamilyName.P: build_p,
    FamilyName.QTILDE: build_q_tilde,
    FamilyName.PTILDE: build_p_tilde,
    FamilyName.QN: build_qn,
    FamilyName.PN: build_pn,
    FamilyName.LTILDE: build_l_tilde,
    FamilyName.L: build_l,
    FamilyName.QTILDEN: build_q_tilde_n,
    FamilyName.PTILDEN: build_p_tilde_n,
}


def build_family(family: FamilyName, m: int, max_level: Optional[int] = None) -> PolyFamily:
    return BUILDERS[family](m, max_level)
