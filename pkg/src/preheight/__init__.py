"""Exact heights and rational preimages for the quadratic family f_c(x) = x^2 + c."""

__version__ = "0.1.0"

from .errors import (
    BitBudgetExceeded,
    DegenerateInputError,
    DomainError,
    NotOnCurveError,
    PreheightError,
    ResourceError,
)
from .rational_core import (
    Rational,
    count_bounded_height,
    enumerate_rationals,
    naive_height,
    parse_rational,
    reduce,
    weil_height,
)
from .quad_map import (
    PreimageTree,
    PreperiodicityVerdict,
    detect_preperiodic,
    evaluate,
    iterate,
    iterated_preimages,
    preimage_step,
    preimages_at_depth,
    rational_sqrt,
    reduce_deep_preimage,
)
from .canonical_height import (
    ErrorBoundedReal,
    HeightGapConstants,
    canonical_height,
    functional_equation_check,
    verify_cor42,
    verify_lemma41,
)
from .preimage_curve import (
    CurvePoint,
    FiberPolynomial,
    embed,
    fiber_polynomial,
    gamma,
    jacobian_spot_check,
    membership_check,
)
from .survey import (
    SurveyRecord,
    SweepConfig,
    corollary_bound_report,
    extremal_family,
    max_param_height_with_depth5,
    small_n_count_check,
    sweep_parameters,
)
