"""Exact rationals, Weil heights and bounded-height enumeration over Q.

Rationals are :class:`fractions.Fraction` instances, which are always kept
in lowest terms with a positive denominator and a unique zero ``0/1``.
"""

from __future__ import annotations

import math
from fractions import Fraction
from typing import Iterator, Union

Rational = Fraction
RationalLike = Union[Fraction, int]

LOG2 = math.log(2.0)

if hasattr(Fraction, "_from_coprime_ints"):  # Python >= 3.12
    def _coprime(p: int, q: int) -> Fraction:
        return Fraction._from_coprime_ints(p, q)
else:
    def _coprime(p: int, q: int) -> Fraction:
        return Fraction(p, q, _normalize=False)


def reduce(p: int, q: int) -> Fraction:
    """Return the reduced fraction p/q with positive denominator.

    Raises ZeroDivisionError when ``q == 0``.
    """
    if isinstance(p, bool) or isinstance(q, bool):
        raise TypeError("booleans are not integers here")
    return Fraction(int(p), int(q))


def as_rational(x: RationalLike) -> Fraction:
    if isinstance(x, Fraction):
        return x
    if isinstance(x, int) and not isinstance(x, bool):
        return Fraction(x)
    raise TypeError(f"expected an exact rational, got {type(x).__name__}")


def parse_rational(text: str) -> Fraction:
    """Parse ``"p"`` or ``"p/q"`` exactly. Decimal and float syntax is rejected."""
    s = text.strip()
    num, sep, den = s.partition("/")
    if not _is_int_literal(num) or (sep and not _is_int_literal(den)):
        raise ValueError(f"not an exact rational literal: {text!r}")
    if sep:
        q = int(den)
        if q == 0:
            raise ValueError(f"zero denominator in {text!r}")
        return Fraction(int(num), q)
    return Fraction(int(num))


def _is_int_literal(s: str) -> bool:
    body = s[1:] if s[:1] in "+-" else s
    return body.isascii() and body.isdigit()


def format_rational(x: Fraction) -> str:
    if x.denominator == 1:
        return str(x.numerator)
    return f"{x.numerator}/{x.denominator}"


def naive_height(x: RationalLike) -> int:
    """max(|numerator|, denominator) of the reduced form of x."""
    x = as_rational(x)
    return max(abs(x.numerator), x.denominator)


def log_int(n: int) -> float:
    """Natural log of a positive integer of any size, including gmpy2 mpz."""
    if n <= 0:
        raise ValueError("log_int needs a positive integer")
    k = n.bit_length()
    if k <= 1000:
        return math.log(int(n))
    shift = k - 64
    return math.log(int(n >> shift)) + shift * LOG2


def weil_height(x: RationalLike) -> float:
    """Absolute logarithmic Weil height log max(|p|, q); exactly 0.0 for 0, 1, -1."""
    H = naive_height(x)
    if H == 1:
        return 0.0
    return log_int(H)


def _height_shell(H: int) -> list[Fraction]:
    # Reduced fractions with max(|p|, q) == H exactly.
    if H == 1:
        return [_coprime(-1, 1), _coprime(0, 1), _coprime(1, 1)]
    out = []
    for p in range(-H, H + 1):
        if abs(p) == H:
            for q in range(1, H + 1):
                if math.gcd(H, q) == 1:
                    out.append(_coprime(p, q))
        elif p != 0 and math.gcd(abs(p), H) == 1:
            out.append(_coprime(p, H))
    return out


def enumerate_rationals(B: int) -> Iterator[Fraction]:
    """Yield every rational of naive height <= B exactly once.

    Order: ascending naive height, then numerator, then denominator. The order
    is part of the contract since sweep CSV output depends on it.
    """
    if B < 1:
        raise ValueError("B must be >= 1")
    for H in range(1, B + 1):
        yield from _height_shell(H)


def _totient_sum(B: int) -> int:
    phi = list(range(B + 1))
    for i in range(2, B + 1):
        if phi[i] == i:
            for j in range(i, B + 1, i):
                phi[j] -= phi[j] // i
    return sum(phi[1:])


def height_bound_from_log(t: float) -> int:
    """floor(exp(t)), snapping to an integer when exp(t) is within rounding of it.

    The snap keeps ``count_bounded_height(log B)`` equal to the count at B even
    when exp(log B) rounds to just below B. exp magnifies the rounding of t by
    about t ulps, so the window is 4 * (1 + t) ulps.
    """
    if t < 0:
        raise ValueError("t must be nonnegative")
    e = math.exp(t)
    nearest = round(e)
    if abs(e - nearest) <= 4 * (1 + t) * math.ulp(e):
        return int(nearest)
    return math.floor(e)


def count_bounded_height(t: float) -> int:
    """Number of rationals x with weil_height(x) <= t.

    Counted exactly: reduced pairs with max(|p|, q) <= B number
    ``4 * sum(phi(n) for n <= B) - 1``, with B from :func:`height_bound_from_log`.
    """
    return count_naive_bounded(height_bound_from_log(t))


def count_naive_bounded(B: int) -> int:
    """Number of rationals with naive height <= B."""
    if B < 1:
        return 0
    return 4 * _totient_sum(B) - 1
