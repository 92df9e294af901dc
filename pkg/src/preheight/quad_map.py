"""Forward and backward dynamics of f_c(x) = x^2 + c over Q."""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Optional

from .errors import DomainError
from .rational_core import RationalLike, as_rational, naive_height


def evaluate(c: RationalLike, x: RationalLike) -> Fraction:
    x = as_rational(x)
    return x * x + as_rational(c)


def iterate(c: RationalLike, x: RationalLike, n: int) -> Fraction:
    """f_c^n(x); ``iterate(c, x, 0) == x``."""
    if n < 0:
        raise DomainError("iteration count must be nonnegative")
    c = as_rational(c)
    x = as_rational(x)
    for _ in range(n):
        x = x * x + c
    return x


def orbit(c: RationalLike, x: RationalLike, n: int) -> list[Fraction]:
    """[x, f_c(x), ..., f_c^n(x)]."""
    c = as_rational(c)
    out = [as_rational(x)]
    for _ in range(n):
        out.append(out[-1] * out[-1] + c)
    return out


def rational_sqrt(t: RationalLike) -> Optional[Fraction]:
    """Nonnegative rational square root of t, or None when t is not a square in Q."""
    t = as_rational(t)
    if t < 0:
        return None
    # t is reduced, so it is a square iff numerator and denominator both are.
    rp = math.isqrt(t.numerator)
    if rp * rp != t.numerator:
        return None
    rq = math.isqrt(t.denominator)
    if rq * rq != t.denominator:
        return None
    return Fraction(rp, rq)


def preimage_step(c: RationalLike, t: RationalLike) -> frozenset[Fraction]:
    """All rational x with x^2 + c == t (zero, one or two points)."""
    r = rational_sqrt(as_rational(t) - as_rational(c))
    if r is None:
        return frozenset()
    return frozenset((r, -r))


def preimages_at_depth(c: RationalLike, b: RationalLike, N: int) -> frozenset[Fraction]:
    """The full set f_c^{-N}(b)(Q), with no deduplication against shallower depths."""
    if N < 0:
        raise DomainError("depth must be nonnegative")
    c = as_rational(c)
    level = frozenset([as_rational(b)])
    for _ in range(N):
        level = frozenset(x for t in level for x in preimage_step(c, t))
        if not level:
            break
    return level


@dataclass(frozen=True)
class PreimageTree:
    """Rational iterated preimages of ``base`` under f_c, grouped by first depth.

    ``levels[N - 1]`` holds the points whose smallest N with f_c^N(x) == base
    is N, sorted ascending. ``closed`` is True when breadth-first expansion hit
    an empty level, so the union is the complete preimage set.
    """

    c: Fraction
    base: Fraction
    levels: tuple[tuple[Fraction, ...], ...]
    closed: bool
    visited: frozenset[Fraction] = field(repr=False)

    @property
    def counts(self) -> list[int]:
        return [len(level) for level in self.levels]

    @property
    def total(self) -> int:
        return len(self.visited)

    def depth_of(self, x: Fraction) -> Optional[int]:
        for N, level in enumerate(self.levels, start=1):
            if x in level:
                return N
        return None

    def items(self):
        """(x, level) pairs in level order, ascending x within a level."""
        for N, level in enumerate(self.levels, start=1):
            for x in level:
                yield x, N


def iterated_preimages(
    c: RationalLike, b: RationalLike, depth_cap: Optional[int] = None
) -> PreimageTree:
    """Breadth-first expansion of the backward orbit of b.

    Points already seen are not expanded again, so targets on cycles terminate.
    With ``depth_cap=None`` the loop runs until a level is empty, which always
    happens because the union is finite.
    """
    if depth_cap is not None and depth_cap < 1:
        raise DomainError("depth_cap must be positive")
    c = as_rational(c)
    b = as_rational(b)
    visited: set[Fraction] = set()
    levels: list[tuple[Fraction, ...]] = []
    frontier: frozenset[Fraction] = frozenset([b])
    closed = False
    while depth_cap is None or len(levels) < depth_cap:
        new = {x for t in frontier for x in preimage_step(c, t)} - visited
        if not new:
            closed = True
            break
        visited |= new
        levels.append(tuple(sorted(new)))
        frontier = frozenset(new)
    return PreimageTree(c, b, tuple(levels), closed, frozenset(visited))


@dataclass(frozen=True)
class PreperiodicityVerdict:
    kind: str  # "preperiodic" or "wandering"
    tail_length: Optional[int] = None
    cycle_length: Optional[int] = None
    escape_index: Optional[int] = None

    @property
    def is_preperiodic(self) -> bool:
        return self.kind == "preperiodic"


def detect_preperiodic(c: RationalLike, x: RationalLike) -> PreperiodicityVerdict:
    """Decide whether x has a finite forward orbit under f_c.

    Once an orbit point y has h(y) > h(c) + log 2, i.e. H(y) > 2 H(c) in
    naive heights, every later height is strictly larger, so the orbit
    wanders. Below that bound there are finitely many rationals, so the loop
    either escapes or revisits a point.
    """
    c = as_rational(c)
    y = as_rational(x)
    escape = 2 * naive_height(c)
    seen: dict[Fraction, int] = {}
    n = 0
    while True:
        if y in seen:
            tail = seen[y]
            return PreperiodicityVerdict("preperiodic", tail_length=tail, cycle_length=n - tail)
        if naive_height(y) > escape:
            return PreperiodicityVerdict("wandering", escape_index=n)
        seen[y] = n
        y = y * y + c
        n += 1


def reduce_deep_preimage(c: RationalLike, x0: RationalLike, N: int) -> Fraction:
    """Push an N-th preimage x0 forward to a 5th preimage of the same target."""
    if N < 5:
        raise DomainError("N must be at least 5")
    return iterate(c, x0, N - 5)
