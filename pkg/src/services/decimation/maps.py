"""The decimation map f(x) = x(5 - x), its inverse branches and their limits."""

import math
import re
from dataclasses import dataclass
from enum import Enum
from typing import Callable, Optional, Tuple, TypeVar

from src.core.config import settings
from src.core.exceptions import ConvergenceError, DomainError
from src.observability.logging import get_logger

logger = get_logger(__name__)

T = TypeVar("T")

FORBIDDEN = (2, 5, 6)


class Branch(str, Enum):
    MINUS = "-"
    PLUS = "+"

    @property
    def sign(self) -> int:
        return -1 if self is Branch.MINUS else 1


def f_map(x: T) -> T:
    """x(5 - x); exact for rationals."""
    return x * (5 - x)


def f_iterate(x: T, k: int) -> T:
    for _ in range(k):
        x = f_map(x)
    return x


def phi(branch: Branch, x: float) -> float:
    """
    Inverse branch of f.

    The minus branch is evaluated as 2x / (5 + sqrt(25 - 4x)), which has no
    cancellation near 0.

    Raises:
        DomainError: x > 25/4
    """
    disc = 25.0 - 4.0 * x
    if disc < 0:
        raise DomainError("phi is undefined above 25/4", value=x)
    root = math.sqrt(disc)
    if branch is Branch.MINUS:
        return 2.0 * x / (5.0 + root)
    return (5.0 + root) / 2.0


def phi_minus_iterate(x: float, k: int) -> float:
    for _ in range(k):
        x = phi(Branch.MINUS, x)
    return x


def Phi(z: float, tol: float = 1e-15, max_levels: int = 80) -> float:
    """
    Scaled all-minus limit 1.5 * lim 5**k phi_minus^(k)(z).

    Args:
        z: Graph eigenvalue in [0, 6]

    Returns:
        The limit value, increasing in z
    """
    if z < 0 or z > 6:
        raise DomainError("Phi is defined on [0, 6]", value=z)
    scaled = z
    x = z
    for k in range(1, max_levels + 1):
        x = phi(Branch.MINUS, x)
        nxt = 5.0**k * x
        if abs(nxt - scaled) <= tol * abs(nxt):
            return 1.5 * nxt
        scaled = nxt
    return 1.5 * scaled


_TEXT = re.compile(
    r"^m0=(?P<m0>-?\d+);start=(?P<start>[^;]+);word=\[?(?P<word>[+-]*)\]?;weak=(?P<weak>\w+)$"
)


@dataclass(frozen=True)
class BranchSequence:
    """A finite branch word; all later branches are implicitly minus."""

    m0: int
    start: float
    branches: Tuple[Branch, ...] = ()
    weak: bool = False

    @property
    def word(self) -> str:
        return "".join(b.value for b in self.branches)

    @property
    def m1(self) -> int:
        """Generation of fixation: the level after the last plus branch."""
        last_plus = max((i for i, b in enumerate(self.branches) if b is Branch.PLUS), default=-1)
        return self.m0 + last_plus + 1

    def extended(self, branch: Branch) -> "BranchSequence":
        return BranchSequence(self.m0, self.start, self.branches + (branch,), self.weak)

    def to_text(self) -> str:
        return f"m0={self.m0};start={self.start!r};word={self.word};weak={str(self.weak).lower()}"

    @classmethod
    def from_text(cls, text: str) -> "BranchSequence":
        match = _TEXT.match(text.strip())
        if match is None:
            raise DomainError("malformed branch sequence", value=text)
        return cls(
            m0=int(match["m0"]),
            start=float(match["start"]),
            branches=tuple(Branch(c) for c in match["word"]),
            weak=match["weak"].lower() in {"true", "1", "yes"},
        )

    def value_at(self, m: int) -> float:
        """Exact-branch graph value at level m >= m0."""
        if m < self.m0:
            raise DomainError("level precedes the generation of birth", value=m)
        x = self.start
        for j in range(m - self.m0):
            b = self.branches[j] if j < len(self.branches) else Branch.MINUS
            x = phi(b, x)
        return x


def limit_scaled(
    seq: BranchSequence,
    level_values: Optional[Callable[[int], Optional[float]]] = None,
    tol: Optional[float] = None,
    max_levels: Optional[int] = None,
) -> float:
    """
    1.5 * lim 5**m lambda_m along a branch sequence.

    Args:
        seq: The sequence; ``start`` is the value at level ``m0``
        level_values: Resolver for weak sequences, returning lambda_m or
            None beyond the levels it knows; later levels continue by the
            minus branch
        tol: Relative increment at which to stop
        max_levels: Number of levels after m0 to try

    Returns:
        The scaled limit

    Raises:
        ConvergenceError: no convergence within max_levels
    """
    tol = settings.LIMIT_TOL if tol is None else tol
    max_levels = settings.LIMIT_MAX_LEVELS if max_levels is None else max_levels

    x = seq.start
    m = seq.m0
    previous = 1.5 * 5.0**m * x
    for j in range(max_levels):
        m += 1
        resolved = level_values(m) if level_values is not None else None
        if resolved is not None:
            x = resolved
        else:
            b = seq.branches[j] if j < len(seq.branches) else Branch.MINUS
            x = phi(b, x)
        current = 1.5 * 5.0**m * x
        if j >= len(seq.branches) and abs(current - previous) <= tol * abs(current):
            return current
        if current == 0.0 and previous == 0.0:
            return 0.0
        previous = current
    raise ConvergenceError(
        f"Scaled sequence {seq.to_text()} did not settle in {max_levels} levels",
        last=current,
        previous=previous,
    )
