import math
from fractions import Fraction as F

import pytest
from hypothesis import given, settings, strategies as st

from conftest import rationals
from oracles import limit_estimate
from preheight.canonical_height import (
    GAP,
    ROUNDING_SLACK,
    ErrorBoundedReal,
    HeightGapConstants,
    canonical_height,
    default_bit_budget,
    functional_equation_check,
    steps_for_tolerance,
    verify_cor42,
    verify_lemma41,
)
from preheight.errors import BitBudgetExceeded, DomainError
from preheight.quad_map import detect_preperiodic
from preheight.rational_core import LOG2, enumerate_rationals, weil_height

LOG2090918 = math.log(2090918)


def test_constants_fixed():
    assert (GAP.beta1, GAP.beta2) == (1.0, LOG2)
    assert HeightGapConstants().gap(F(3)) == pytest.approx(math.log(3) + LOG2)


def test_error_bounded_real():
    e = ErrorBoundedReal(1.0, 0.5)
    assert e.contains(1.4) and not e.contains(1.6)
    with pytest.raises(ValueError):
        ErrorBoundedReal(0.0, -1.0)


def test_steps_for_tolerance():
    n = steps_for_tolerance(0, 1e-6)
    assert LOG2 / 2**n + ROUNDING_SLACK <= 1e-6 < LOG2 / 2 ** (n - 1) + ROUNDING_SLACK
    with pytest.raises(DomainError):
        steps_for_tolerance(0, 1e-13)


def test_canonical_height_examples():
    ch = canonical_height(0, 2, 1e-6)
    assert ch.radius <= 1e-6
    assert abs(ch.value - math.log(2)) <= 1e-6

    ch = canonical_height(-1, 0, 1e-6)
    assert ch.contains(0.0) and ch.radius <= 1e-6

    ch = canonical_height(0, 1, 1e-6)
    assert ch.value == 0.0 and ch.radius <= 1e-6


@settings(max_examples=60, deadline=None)
@given(rationals(10**4))
def test_c_zero_matches_weil_height(x):
    ch = canonical_height(0, x, 1e-6)
    assert abs(ch.value - weil_height(x)) <= 1e-6


@pytest.mark.parametrize("c, x", [(F(3), F(1, 2)), (F(-7, 3), F(2, 5)), (F(1, 2), F(3)), (F(-2), F(5, 4))])
def test_tail_bound_soundness(c, x):
    gap = GAP.gap(c)
    for n in range(0, 7):
        base = limit_estimate(c, x, n)
        for m in range(n + 1, 12):
            assert abs(limit_estimate(c, x, m) - base) <= gap / 2**n + 1e-12


@pytest.mark.parametrize("c, x", [(F(3), F(1, 2)), (F(-7, 3), F(2, 5)), (F(1, 2), F(3))])
def test_interval_contains_deep_limit(c, x):
    ch = canonical_height(c, x, 1e-3)
    # a much deeper truncation is within gap / 2^22 of the true limit
    deep = limit_estimate(c, x, 22)
    assert abs(deep - ch.value) <= ch.radius + GAP.gap(c) / 2**22


def test_preperiodic_contains_zero():
    for c in enumerate_rationals(5):
        for x in enumerate_rationals(5):
            if detect_preperiodic(c, x).is_preperiodic:
                ch = canonical_height(c, x, 1e-5)
                assert ch.contains(0.0), (c, x)


@settings(max_examples=80, deadline=None)
@given(rationals(100), rationals(100))
def test_nonnegative(c, x):
    ch = canonical_height(c, x, 1e-3)
    assert ch.value + ch.radius >= 0


def test_bit_budget():
    with pytest.raises(BitBudgetExceeded) as info:
        canonical_height(0, F(10**50 + 1, 3), 1e-9, bit_budget=10_000)
    assert info.value.budget == 10_000


def test_bit_budget_env(monkeypatch):
    monkeypatch.setenv("PREHEIGHT_BIT_BUDGET", "512")
    assert default_bit_budget() == 512
    with pytest.raises(BitBudgetExceeded):
        canonical_height(0, 3, 1e-6)
    monkeypatch.delenv("PREHEIGHT_BIT_BUDGET")
    assert default_bit_budget() == 2**26


@pytest.mark.parametrize("c, x", [(0, 5), (-1, 0), (3, F(1, 2))])
def test_lemma41_examples(c, x):
    rep = verify_lemma41(c, x)
    assert rep.holds
    assert rep.slack >= 0


def test_lemma41_slack_for_c_zero():
    rep = verify_lemma41(0, 5)
    assert rep.lhs <= 1e-6
    assert rep.slack == pytest.approx(LOG2, abs=2e-6)


def test_cor42_examples():
    rep = verify_cor42(0, 2, 3)
    assert rep.holds and rep.lhs == pytest.approx(0.0, abs=1e-15)
    assert rep.rhs == pytest.approx(9 / 8 * LOG2)

    rep = verify_cor42(-1, 0, 2)
    assert rep.holds and rep.lhs == 0.0 and rep.rhs == pytest.approx(5 / 4 * LOG2)

    rep = verify_cor42(2, 0, 5)
    assert rep.lhs == pytest.approx(LOG2090918 / 32)
    assert rep.lhs == pytest.approx(0.4548, abs=1e-4)
    assert rep.rhs == pytest.approx(33 / 32 * 2 * LOG2)
    assert rep.holds


def test_cor42_domain():
    with pytest.raises(DomainError):
        verify_cor42(0, 2, 0)


@settings(max_examples=200, deadline=None)
@given(rationals(100), rationals(100), st.integers(1, 6))
def test_cor42_property(c, x, N):
    assert verify_cor42(c, x, N).holds


@settings(max_examples=60, deadline=None)
@given(rationals(100), rationals(100))
def test_lemma41_property(c, x):
    assert verify_lemma41(c, x, 1e-4).holds


@pytest.mark.parametrize("c, x, eps", [(-1, 0, 1e-8), (F(1, 2), 3, 1e-6), (F(-5, 4), F(2, 3), 1e-5)])
def test_functional_equation(c, x, eps):
    rep = functional_equation_check(c, x, eps)
    assert rep.holds and rep.rhs == pytest.approx(3 * eps)


def test_functional_equation_tight_eps_needs_budget():
    # eps = 1e-8 at c = 0 takes 27 steps; 9^(2^27) is ~4.3e8 bits
    with pytest.raises(BitBudgetExceeded):
        functional_equation_check(0, 3, 1e-8)
    rep = functional_equation_check(0, 3, 1e-8, bit_budget=2**29)
    assert rep.holds
