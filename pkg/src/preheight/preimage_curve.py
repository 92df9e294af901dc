"""The family of 5th-preimage curves f_c^5(x) = b in embedded coordinates.

A point (c, x, b) with f_c^5(x) = b is stored as ((z0, ..., z4), b) with
z_i = f_c^i(x). The parameter is recovered as c = z1 - z0^2 and the point
lies on the curve iff

    z2 = z1^2 + c,  z3 = z2^2 + c,  z4 = z3^2 + c,  b = z4^2 + c.
"""

from __future__ import annotations

import csv
import io
from dataclasses import dataclass
from fractions import Fraction
from typing import Sequence

from .errors import DomainError, NotOnCurveError
from .quad_map import orbit
from .rational_core import RationalLike, as_rational

FIBER_DEGREE = 32


@dataclass(frozen=True)
class CurvePoint:
    z: tuple[Fraction, Fraction, Fraction, Fraction, Fraction]
    b: Fraction

    def __post_init__(self):
        if len(self.z) != 5:
            raise ValueError("a curve point has exactly five z coordinates")

    @classmethod
    def from_values(cls, z: Sequence[RationalLike], b: RationalLike) -> "CurvePoint":
        return cls(tuple(as_rational(v) for v in z), as_rational(b))


def _residuals(p: CurvePoint) -> list[Fraction]:
    z0, z1, z2, z3, z4 = p.z
    c = z1 - z0 * z0
    return [
        z2 - z1 * z1 - c,
        z3 - z2 * z2 - c,
        z4 - z3 * z3 - c,
        p.b - z4 * z4 - c,
    ]


def membership_check(p: CurvePoint) -> bool:
    return all(r == 0 for r in _residuals(p))


def embed(c: RationalLike, x: RationalLike, b: RationalLike) -> CurvePoint:
    """Embed a solution (c, x, b) of f_c^5(x) = b as a CurvePoint."""
    c, x, b = as_rational(c), as_rational(x), as_rational(b)
    zs = orbit(c, x, 5)
    if zs[5] != b:
        raise NotOnCurveError(f"point not on Y: f_c^5(x) = {zs[5]} != b = {b}")
    return CurvePoint(tuple(zs[:5]), b)


def gamma(p: CurvePoint) -> Fraction:
    """The parameter c of a point on the curve."""
    if not membership_check(p):
        raise NotOnCurveError("point not on Y")
    z0, z1 = p.z[0], p.z[1]
    return z1 - z0 * z0


def jacobian(p: CurvePoint) -> list[list[Fraction]]:
    """Partial derivatives of the four relations in z0..z4, with b held fixed."""
    z0, z1, z2, z3, z4 = p.z
    one, zero = Fraction(1), Fraction(0)
    d0 = 2 * z0  # every relation contains +z0^2 through -c
    return [
        [d0, -2 * z1 - one, one, zero, zero],
        [d0, -one, -2 * z2, one, zero],
        [d0, -one, zero, -2 * z3, one],
        [d0, -one, zero, zero, -2 * z4],
    ]


def matrix_rank(rows: Sequence[Sequence[RationalLike]]) -> int:
    """Rank by exact Gaussian elimination over Q."""
    m = [[as_rational(v) for v in row] for row in rows]
    if not m:
        return 0
    ncols = len(m[0])
    rank = 0
    for col in range(ncols):
        pivot = next((r for r in range(rank, len(m)) if m[r][col] != 0), None)
        if pivot is None:
            continue
        m[rank], m[pivot] = m[pivot], m[rank]
        piv = m[rank][col]
        for r in range(rank + 1, len(m)):
            f = m[r][col] / piv
            if f:
                m[r] = [a - f * b for a, b in zip(m[r], m[rank])]
        rank += 1
        if rank == len(m):
            break
    return rank


def jacobian_spot_check(p: CurvePoint) -> bool:
    """True when the Jacobian has full rank 4, i.e. p is a smooth point of its fiber."""
    if not membership_check(p):
        raise NotOnCurveError("point not on Y")
    return matrix_rank(jacobian(p)) == 4


def _poly_square(a: list[Fraction]) -> list[Fraction]:
    out = [Fraction(0)] * (2 * len(a) - 1)
    for i, ai in enumerate(a):
        if not ai:
            continue
        for j, aj in enumerate(a):
            out[i + j] += ai * aj
    return out


@dataclass(frozen=True)
class FiberPolynomial:
    """f_c^5(x) - b as dense coefficients in ascending degree."""

    c: Fraction
    b: Fraction
    coefficients: tuple[Fraction, ...]

    @property
    def degree(self) -> int:
        return len(self.coefficients) - 1

    @property
    def leading(self) -> Fraction:
        return self.coefficients[-1]

    def __call__(self, x: RationalLike) -> Fraction:
        x = as_rational(x)
        acc = Fraction(0)
        for a in reversed(self.coefficients):
            acc = acc * x + a
        return acc

    def rows(self) -> list[tuple[int, int, int]]:
        return [(d, a.numerator, a.denominator) for d, a in enumerate(self.coefficients)]

    def to_csv(self) -> str:
        buf = io.StringIO()
        w = csv.writer(buf, lineterminator="\n")
        w.writerow(["degree", "numerator", "denominator"])
        w.writerows(self.rows())
        return buf.getvalue()


def fiber_polynomial(c: RationalLike, b: RationalLike) -> FiberPolynomial:
    c, b = as_rational(c), as_rational(b)
    poly = [Fraction(0), Fraction(1)]
    for _ in range(5):
        poly = _poly_square(poly)
        poly[0] += c
    poly[0] -= b
    if len(poly) - 1 != FIBER_DEGREE or poly[-1] != 1:
        raise DomainError("fiber polynomial is not monic of degree 32")
    return FiberPolynomial(c, b, tuple(poly))
