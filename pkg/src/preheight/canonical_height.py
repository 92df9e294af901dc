"""Canonical height of f_c(x) = x^2 + c with rigorous error radii.

The canonical height is the limit of h(f_c^n(x)) / 2^n. Its distance from the
Weil height is at most h(c) + log 2, so stopping after n exact iterations
leaves a tail error of at most (h(c) + log 2) / 2^n.
"""

from __future__ import annotations

import os
from dataclasses import dataclass
from typing import Optional

import gmpy2

from .errors import DomainError, BitBudgetExceeded
from .quad_map import iterate
from .rational_core import LOG2, RationalLike, as_rational, log_int, weil_height

DEFAULT_BIT_BUDGET = 2**26
BIT_BUDGET_ENV = "PREHEIGHT_BIT_BUDGET"
DEFAULT_EPS = 1e-4
# absorbs rounding in the double-precision log and the division by 2^n
ROUNDING_SLACK = 2.0**-40


@dataclass(frozen=True)
class ErrorBoundedReal:
    value: float
    radius: float

    def __post_init__(self):
        if not self.radius >= 0:
            raise ValueError("radius must be nonnegative")

    @property
    def lower(self) -> float:
        return self.value - self.radius

    @property
    def upper(self) -> float:
        return self.value + self.radius

    def contains(self, t: float) -> bool:
        return self.lower <= t <= self.upper


@dataclass(frozen=True)
class HeightGapConstants:
    """Explicit constants in |canonical - Weil| <= beta1 * h(c) + beta2 over Q."""

    beta1: float = 1.0
    beta2: float = LOG2

    def gap(self, c: RationalLike) -> float:
        return self.beta1 * weil_height(c) + self.beta2


GAP = HeightGapConstants()


@dataclass(frozen=True)
class CanonicalHeight(ErrorBoundedReal):
    steps: int = 0


def default_bit_budget() -> int:
    raw = os.environ.get(BIT_BUDGET_ENV)
    if raw is None or raw.strip() == "":
        return DEFAULT_BIT_BUDGET
    budget = int(raw)
    if budget < 1:
        raise ValueError(f"{BIT_BUDGET_ENV} must be a positive integer")
    return budget


def steps_for_tolerance(c: RationalLike, eps: float) -> int:
    """Smallest n with (h(c) + log 2) / 2^n + rounding slack <= eps."""
    if not eps > ROUNDING_SLACK:
        raise DomainError(f"eps must exceed {ROUNDING_SLACK!r}")
    gap = GAP.gap(c)
    n = 0
    while gap / 2.0**n + ROUNDING_SLACK > eps:
        n += 1
    return n


def canonical_height(
    c: RationalLike,
    x: RationalLike,
    eps: float = DEFAULT_EPS,
    bit_budget: Optional[int] = None,
) -> CanonicalHeight:
    """Enclose the canonical height of x under f_c in an interval of radius <= eps.

    Iterates exactly; raises :class:`BitBudgetExceeded` if the numerator or
    denominator of an iterate would need more than ``bit_budget`` bits.
    """
    c = as_rational(c)
    x = as_rational(x)
    if bit_budget is None:
        bit_budget = default_bit_budget()
    n = steps_for_tolerance(c, eps)

    cq = gmpy2.mpq(c.numerator, c.denominator)
    y = gmpy2.mpq(x.numerator, x.denominator)
    for step in range(1, n + 1):
        y = y * y + cq
        bits = max(gmpy2.numer(y).bit_length(), gmpy2.denom(y).bit_length())
        if bits > bit_budget:
            raise BitBudgetExceeded(step, bits, bit_budget)

    H = max(abs(gmpy2.numer(y)), gmpy2.denom(y))
    value = 0.0 if H == 1 else log_int(H) / 2.0**n
    radius = GAP.gap(c) / 2.0**n + ROUNDING_SLACK
    return CanonicalHeight(value, radius, n)


@dataclass(frozen=True)
class InequalityReport:
    """Outcome of checking ``lhs <= rhs``; ``slack = rhs - lhs``."""

    holds: bool
    lhs: float
    rhs: float

    @property
    def slack(self) -> float:
        return self.rhs - self.lhs

    def __bool__(self) -> bool:
        return self.holds


def verify_lemma41(
    c: RationalLike, x: RationalLike, eps: float = 1e-6, bit_budget: Optional[int] = None
) -> InequalityReport:
    """|canonical(x) - h(x)| <= h(c) + log 2, widened by the enclosure radius."""
    ch = canonical_height(c, x, eps, bit_budget)
    lhs = abs(ch.value - weil_height(x))
    rhs = GAP.gap(c) + ch.radius
    return InequalityReport(lhs <= rhs, lhs, rhs)


# logs of exact integers are double precision; this covers their rounding
_LOG_ROUNDING = 1e-12


def verify_cor42(c: RationalLike, x: RationalLike, N: int) -> InequalityReport:
    """|h(x) - h(b) / 2^N| <= (1 + 2^-N)(h(c) + log 2) where b = f_c^N(x)."""
    if N < 1:
        raise DomainError("N must be >= 1")
    b = iterate(c, x, N)
    scale = 2.0**-N
    lhs = abs(weil_height(x) - scale * weil_height(b))
    rhs = (1.0 + scale) * GAP.gap(c)
    return InequalityReport(lhs <= rhs + _LOG_ROUNDING, lhs, rhs)


def functional_equation_check(
    c: RationalLike, x: RationalLike, eps: float = DEFAULT_EPS, bit_budget: Optional[int] = None
) -> InequalityReport:
    """|canonical(f_c(x)) - 2 canonical(x)| <= 3 eps."""
    c = as_rational(c)
    x = as_rational(x)
    left = canonical_height(c, x * x + c, eps, bit_budget)
    right = canonical_height(c, x, eps, bit_budget)
    lhs = abs(left.value - 2.0 * right.value)
    rhs = 3.0 * eps
    return InequalityReport(lhs <= rhs, lhs, rhs)
