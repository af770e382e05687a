"""Exact-arithmetic checks of the sign and interlacing statements.

Every check returns ``CheckResult`` entries instead of raising, so a verify
run reports every failure at once.
"""

from typing import Callable, List, Optional, Tuple

from gmpy2 import mpq

from src.core.config import settings
from src.core.exceptions import InvalidLevelError, SizeLimitError, SpectraException
from src.models.schemas.report import CheckResult
from src.observability.logging import get_logger
from src.observability.metrics import metrics
from src.services.decimation.maps import Branch
from src.services.poly.interval import (
    certified_sign,
    phi_interval,
    phi_iterate_enclosure,
)
from src.services.poly.intpoly import IntPoly
from src.services.poly.rootisolation import refine_interval
from src.services.primitive.families import (
    FamilyName,
    build_family,
    expected_degree,
    f_iterate_poly,
)
from src.services.primitive.roots import (
    BASE_LEVEL,
    EXACT_ROOTS,
    RootTable,
    deflated_poly,
    isolate_family_roots,
    weak_brackets,
)

logger = get_logger(__name__)

SIGNS = "signs"
INTERLACING = "interlacing"

CERTIFY_BITS = (64, 256, 1024, 4096)
LOW_POSITIVITY_SAMPLES = 64
GCD_LEVEL_CAP = 6
PAIR_SUM_TOL = 1e-10

# (family, level, point, exact value)
ANCHORS: List[Tuple[FamilyName, int, int, int]] = [
    (FamilyName.Q, 2, 0, 26),
    (FamilyName.Q, 3, 0, 556),
    (FamilyName.Q, 2, 5, 1),
    (FamilyName.Q, 2, 6, -4),
    (FamilyName.Q, 3, 6, -3392),
    (FamilyName.QTILDE, 2, 6, 1),
    (FamilyName.QTILDE, 3, 6, -436),
    (FamilyName.LTILDE, 1, 6, -2),
    (FamilyName.LTILDE, 2, 6, -40),
    (FamilyName.P, 2, 2, -8),
    (FamilyName.P, 3, 2, 68),
    (FamilyName.P, 4, 2, 14064),
    (FamilyName.P, 5, 2, -593514756),
]

_SYMBOL = {
    FamilyName.Q: "q",
    FamilyName.P: "p",
    FamilyName.QTILDE: "q~",
    FamilyName.PTILDE: "p~",
    FamilyName.LTILDE: "l~",
    FamilyName.L: "l",
    FamilyName.QN: "qN",
    FamilyName.PN: "pN",
    FamilyName.QTILDEN: "qN~",
    FamilyName.PTILDEN: "pN~",
}


def _name(family: FamilyName, m: int, point: str) -> str:
    return f"{_SYMBOL[family]}_{m}({point})"


def _result(suite: str, name: str, passed: bool, detail: str = "", **context) -> CheckResult:
    metrics.record_check(suite, passed)
    if not passed:
        logger.warning("Check failed", extra={"suite": suite, "check": name, "detail": detail})
    return CheckResult(suite=suite, name=name, passed=passed, detail=detail, context=context)


def _sign_text(sign: int) -> str:
    return {1: "> 0", -1: "< 0", 0: "= 0"}[sign]


def _check_level_range(m_max: int) -> None:
    if m_max < 2:
        raise InvalidLevelError(m_max, "checks start at level 2")
    if m_max > settings.MAX_POLY_LEVEL:
        raise SizeLimitError("polynomial", m_max, settings.MAX_POLY_LEVEL)


def certify(enclosure: Callable[[int], Tuple["mpq", "mpq"]], p: IntPoly) -> int:
    """Sign of ``p`` at an irrational point, tightening its enclosure until certified."""
    for bits in CERTIFY_BITS:
        lo, hi = enclosure(bits)
        sign = certified_sign(p, lo, hi)
        if sign:
            return sign
    return 0


def _anchor_checks(m_max: int) -> List[CheckResult]:
    out = []
    for family, m, point, expected in ANCHORS:
        if m > m_max:
            continue
        value = build_family(family, m).poly.evaluate(point)
        out.append(
            _result(
                SIGNS,
                _name(family, m, str(point)),
                value == expected,
                f"= {int(value) if value.denominator == 1 else value}",
                expected=expected,
            )
        )
    return out


def _expected_endpoint_signs(m: int) -> List[Tuple[FamilyName, int, int]]:
    """(family, point, required sign) for the endpoint sign statements at level m."""
    alt = 1 if m % 2 == 0 else -1
    signs = [
        (FamilyName.Q, 0, 1),
        (FamilyName.Q, 5, 1),
        (FamilyName.Q, 6, -1),
        (FamilyName.P, 0, alt),
        (FamilyName.P, 5, 1 if m == 2 else -alt),
        (FamilyName.P, 6, -1 if m == 2 else alt),
        (FamilyName.QTILDE, 0, 1),
        (FamilyName.QTILDE, 5, -1 if m == 2 else 1),
        (FamilyName.QTILDE, 6, 1 if m == 2 else -1),
        (FamilyName.PTILDE, 0, alt),
        (FamilyName.PTILDE, 5, -alt),
        (FamilyName.PTILDE, 6, alt),
    ]
    # p at 2 alternates from level 4 on; levels 2 and 3 are anchors
    if m >= 4:
        signs.append((FamilyName.P, 2, alt))
    return signs


def _endpoint_checks(m: int) -> List[CheckResult]:
    out = []
    for family, point, required in _expected_endpoint_signs(m):
        sign = build_family(family, m).poly.sign_at(point)
        out.append(
            _result(SIGNS, _name(family, m, str(point)), sign == required, _sign_text(sign), m=m)
        )
    return out


def _predecessor_checks(m: int) -> List[CheckResult]:
    """q_m is negative at phi_-^(m-1)(5) and positive at phi_-^(m-1)(2)."""
    q = build_family(FamilyName.Q, m).poly
    out = []
    for z, required in ((5, -1), (2, 1)):
        sign = certify(lambda bits: phi_iterate_enclosure(-1, mpq(z), m - 1, bits), q)
        out.append(
            _result(
                SIGNS,
                _name(FamilyName.Q, m, f"phi-^{m - 1}({z})"),
                sign == required,
                _sign_text(sign) if sign else "uncertified",
                m=m,
            )
        )
    return out


def low_positivity(m: int, samples: int = LOW_POSITIVITY_SAMPLES) -> Tuple[bool, float]:
    """
    Check q_m > 0 on rational samples of (0, phi_-^(m)(6)).

    The right end is replaced by the lower end of a rational enclosure.

    Returns:
        Whether every sample is positive, and the smallest sampled value
    """
    q = build_family(FamilyName.Q, m).poly
    upper, _ = phi_iterate_enclosure(-1, mpq(6), m, 60)
    values = [q.evaluate(upper * j / (samples + 1)) for j in range(1, samples + 1)]
    margin = min(values)
    return margin > 0, float(margin)


def _neumann_checks(m: int) -> List[CheckResult]:
    out = []
    l_poly = build_family(FamilyName.L, m).poly
    for point, required in ((0, 1), (6, -1)):
        sign = l_poly.sign_at(point)
        out.append(
            _result(SIGNS, _name(FamilyName.L, m, str(point)), sign == required, _sign_text(sign))
        )
    pn = build_family(FamilyName.PN, m).poly
    for point in (0, 6):
        value = pn.evaluate(point)
        out.append(_result(SIGNS, _name(FamilyName.PN, m, str(point)), value == 0, f"= {value}"))
    if m >= 2:
        inner = deflated_poly(FamilyName.PN, m)
        mirrored = inner(IntPoly.constant(5) - IntPoly.x())
        out.append(
            _result(
                SIGNS,
                f"pN_{m}(5-x) = pN_{m}(x) after removing 0 and 6",
                mirrored == inner,
                m=m,
            )
        )
    return out


def _degree_checks(m: int) -> List[CheckResult]:
    out = []
    for family in (FamilyName.P, FamilyName.PTILDE, FamilyName.PN, FamilyName.L):
        expected = expected_degree(family, m)
        degree = build_family(family, m).degree
        out.append(
            _result(
                SIGNS,
                f"deg {_SYMBOL[family]}_{m}",
                degree == expected,
                f"= {degree}",
                expected=expected,
            )
        )
    return out


def _gcd_checks(m: int, m_max: int) -> List[CheckResult]:
    """No root of p_m or p~_m is a predecessor of 2 or 5; the primitive sets are disjoint."""
    out = []
    p = build_family(FamilyName.P, m).poly
    pt = build_family(FamilyName.PTILDE, m).poly
    two, five = IntPoly.constant(2), IntPoly.constant(5)
    for family, poly in ((FamilyName.P, p), (FamilyName.PTILDE, pt)):
        worst = 0
        for i in range(m - 1):
            f_i = f_iterate_poly(i)
            worst = max(worst, poly.gcd(f_i - two).degree, poly.gcd(f_i - five).degree)
        out.append(
            _result(
                SIGNS,
                f"gcd({_SYMBOL[family]}_{m}, F_i - 2, F_i - 5)",
                worst == 0,
                f"max degree {worst}",
            )
        )
    g = p.gcd(pt).degree
    out.append(_result(SIGNS, f"gcd(p_{m}, p~_{m})", g == 0, f"degree {g}"))
    if m + 1 <= m_max:
        g = p.gcd(build_family(FamilyName.P, m + 1).poly).degree
        out.append(_result(SIGNS, f"gcd(p_{m}, p_{m + 1})", g == 0, f"degree {g}"))
    return out


def _guarded(checks: Callable[[], List[CheckResult]], suite: str, name: str) -> List[CheckResult]:
    try:
        return checks()
    except SpectraException as exc:
        return [_result(suite, name, False, exc.message, code=exc.code)]


def verify_sign_theorems(m_max: int) -> List[CheckResult]:
    """
    Exact sign statements up to level ``m_max``.

    Covers the anchor values, the endpoint signs of q, p, q~, p~, the
    alternation of p_m(2), the positivity of q_m near 0 (margin reported),
    the signs of l_m at 0 and 6, the closed-form roots and mirror symmetry
    of the Neumann family, degrees, and gcd disjointness up to level 6.
    """
    _check_level_range(m_max)
    out = _anchor_checks(m_max)
    for m in range(1, m_max + 1):
        out += _guarded(lambda: _neumann_checks(m), SIGNS, f"neumann level {m}")
    for m in range(2, m_max + 1):
        out += _guarded(lambda: _degree_checks(m), SIGNS, f"degrees level {m}")
        out += _guarded(lambda: _endpoint_checks(m), SIGNS, f"endpoints level {m}")
        out += _guarded(lambda: _predecessor_checks(m), SIGNS, f"predecessors level {m}")
        passed, margin = low_positivity(m)
        out.append(
            _result(
                SIGNS,
                f"q_{m} > 0 on (0, phi-^{m}(6))",
                passed,
                f"min sample {margin:.6g}",
                margin=margin,
            )
        )
        if m <= GCD_LEVEL_CAP:
            out += _guarded(lambda: _gcd_checks(m, min(m_max, GCD_LEVEL_CAP)), SIGNS, f"gcd {m}")
    return out


def _interlacing_signs(table: RootTable, m_max: int) -> List[CheckResult]:
    """(-1)^(m+k-1) p_{m+1}(phi_-(lambda_{m,k})) > 0 for P and PTilde."""
    family, m = table.family, table.level
    if m + 1 > m_max:
        return []
    p_here = deflated_poly(family, m)
    p_next = build_family(family, m + 1).poly
    bad: List[int] = []
    for entry in table.roots:
        required = 1 if (m + entry.index - 1) % 2 == 0 else -1

        def enclosure(bits: int, entry=entry) -> Tuple["mpq", "mpq"]:
            iv = refine_interval(p_here, entry.interval, mpq(1, 2**bits))
            return phi_interval(Branch.MINUS.sign, iv, bits + 4)

        if certify(enclosure, p_next) != required:
            bad.append(entry.index)
    return [
        _result(
            INTERLACING,
            f"{_SYMBOL[family]}_{m + 1} alternates at phi-({_SYMBOL[family]}_{m} roots)",
            not bad,
            f"failed at k={bad}" if bad else f"{len(table)} points",
        )
    ]


def _bracket_occupancy(table: RootTable) -> CheckResult:
    family, m = table.family, table.level
    brackets = weak_brackets(table)
    following = isolate_family_roots(family, m + 1)
    exact = {mpq(r) for r in EXACT_ROOTS.get(family, ())}
    inner = [r for r in following.roots if not (r.interval.is_exact and r.interval.lo in exact)]
    occupancy = [sum(1 for r in inner if b.holds(r.interval)) for b in brackets]
    homeless = [r.index for r in inner if not any(b.holds(r.interval) for b in brackets)]
    passed = len(brackets) == len(inner) and all(c == 1 for c in occupancy) and not homeless
    return _result(
        INTERLACING,
        f"{_SYMBOL[family]}_{m + 1} brackets",
        passed,
        f"{len(brackets)} brackets, {len(inner)} roots",
        method=following.method,
    )


def _middle_root(m: int) -> Optional[CheckResult]:
    """The first root born at level m (m >= 3) lies above 2."""
    if m < 3:
        return None
    r_prev = expected_degree(FamilyName.P, m - 1)
    table = isolate_family_roots(FamilyName.P, m)
    entry = table.roots[r_prev]
    p = deflated_poly(FamilyName.P, m)
    passed = entry.interval.lo >= 2 and p.sign_at(2) != 0 and entry.is_initial
    return _result(
        INTERLACING,
        f"middle_root_above_two p_{m} root {r_prev + 1}",
        passed,
        f"= {entry.value:.6f}",
    )


def _neumann_pairs(m: int) -> Optional[CheckResult]:
    if m < 2:
        return None
    values = isolate_family_roots(FamilyName.PN, m).values
    inner = values[1:-1]
    worst = max(abs(a + b - 5.0) for a, b in zip(inner, reversed(inner)))
    return _result(
        INTERLACING,
        f"pN_{m} interior roots pair to 5",
        worst < PAIR_SUM_TOL,
        f"max deviation {worst:.2e}",
    )


def verify_interlacing(m_max: int) -> List[CheckResult]:
    """
    Root counts, bracket occupancy and interlacing up to level ``m_max``.

    Root tables raise on a count mismatch; that is caught and reported.
    """
    _check_level_range(m_max)
    out: List[CheckResult] = []
    for family, base in BASE_LEVEL.items():
        for m in range(base, m_max + 1):
            try:
                table = isolate_family_roots(family, m)
            except SpectraException as exc:
                out.append(
                    _result(INTERLACING, f"{_SYMBOL[family]}_{m} roots", False, exc.message)
                )
                break
            out.append(
                _result(
                    INTERLACING,
                    f"{_SYMBOL[family]}_{m} roots",
                    True,
                    f"{len(table)} in [0, 6] ({table.method})",
                )
            )
            if m < m_max:
                out += _guarded(
                    lambda: [_bracket_occupancy(table)], INTERLACING, f"brackets {family.value}"
                )
            if family in (FamilyName.P, FamilyName.PTILDE):
                out += _guarded(
                    lambda: _interlacing_signs(table, m_max), INTERLACING, f"alternation {m}"
                )
    for m in range(2, m_max + 1):
        for check in (_middle_root(m), _neumann_pairs(m)):
            if check is not None:
                out.append(check)
    return out
