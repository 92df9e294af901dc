"""Parameter sweeps over bounded-height c for a fixed target b.

Each swept parameter yields one :class:`SurveyRecord` with the per-level
preimage counts. Helpers summarize a sweep: the largest h(c) among
parameters admitting a 5th preimage of b, and how the largest preimage count
compares with exp(gamma * h(b)).
"""

from __future__ import annotations

import csv
import io
import math
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass
from fractions import Fraction
from typing import Iterable, Optional, Sequence

from .errors import DegenerateInputError
from .quad_map import iterate, iterated_preimages, preimages_at_depth
from .rational_core import (
    RationalLike,
    as_rational,
    enumerate_rationals,
    naive_height,
    weil_height,
)

CSV_COLUMNS = ["c_num", "c_den", "h_c", "h_b", "counts_per_level", "total", "has_depth5", "closed"]
SMALL_N_BOUND = 30  # sum of 2^N for N = 1..4


def fmt_float(v: float) -> str:
    return f"{v:.12g}"


@dataclass(frozen=True)
class SweepConfig:
    b: Fraction
    c_height_bound: int
    depth_cap: int = 64
    eps: float = 1e-4

    def __post_init__(self):
        object.__setattr__(self, "b", as_rational(self.b))
        if self.c_height_bound < 1:
            raise ValueError("c_height_bound must be >= 1")
        if self.depth_cap < 1:
            raise ValueError("depth_cap must be >= 1")
        if not self.eps > 0:
            raise ValueError("eps must be positive")


@dataclass(frozen=True)
class SurveyRecord:
    c: Fraction
    h_c: float
    h_b: float
    counts_per_level: tuple[int, ...]
    total_preimages: int
    has_depth5: bool
    closed: bool

    def __post_init__(self):
        counts = self.counts_per_level
        if any(n < 0 for n in counts):
            raise ValueError("level counts are nonnegative")
        if counts and counts[0] > 2:
            raise ValueError("level 1 holds at most 2 points")
        for prev, cur in zip(counts, counts[1:]):
            if cur > 2 * prev:
                raise ValueError("each node has at most 2 children")
        if self.total_preimages != sum(counts):
            raise ValueError("total_preimages must equal the sum of counts")

    def csv_row(self) -> list[str]:
        return [
            str(self.c.numerator),
            str(self.c.denominator),
            fmt_float(self.h_c),
            fmt_float(self.h_b),
            ";".join(str(n) for n in self.counts_per_level),
            str(self.total_preimages),
            "true" if self.has_depth5 else "false",
            "true" if self.closed else "false",
        ]

    def json_row(self) -> dict:
        return {
            "c_num": self.c.numerator,
            "c_den": self.c.denominator,
            "h_c": float(fmt_float(self.h_c)),
            "h_b": float(fmt_float(self.h_b)),
            "counts_per_level": ";".join(str(n) for n in self.counts_per_level),
            "total": self.total_preimages,
            "has_depth5": self.has_depth5,
            "closed": self.closed,
        }


def survey_record(c: RationalLike, b: RationalLike, depth_cap: Optional[int] = 64) -> SurveyRecord:
    c, b = as_rational(c), as_rational(b)
    tree = iterated_preimages(c, b, depth_cap)
    # f_c^{-N}(b) nonempty for some N >= 5 iff the depth-5 preimage set is nonempty;
    # this also catches depth-5 chains that wind around a cycle through b.
    has_depth5 = bool(preimages_at_depth(c, b, 5))
    return SurveyRecord(
        c=c,
        h_c=weil_height(c),
        h_b=weil_height(b),
        counts_per_level=tuple(tree.counts),
        total_preimages=tree.total,
        has_depth5=has_depth5,
        closed=tree.closed,
    )


def _record_task(args):
    c, b, depth_cap = args
    return survey_record(c, b, depth_cap)


def sweep_parameters(cfg: SweepConfig, jobs: int = 1) -> list[SurveyRecord]:
    """One record per c of naive height <= cfg.c_height_bound, in enumeration order."""
    tasks = [(c, cfg.b, cfg.depth_cap) for c in enumerate_rationals(cfg.c_height_bound)]
    if jobs <= 1 or len(tasks) < 2:
        return [_record_task(t) for t in tasks]
    chunk = max(1, len(tasks) // (4 * jobs))
    with ProcessPoolExecutor(max_workers=jobs) as pool:
        return list(pool.map(_record_task, tasks, chunksize=chunk))


def records_to_csv(records: Iterable[SurveyRecord]) -> str:
    buf = io.StringIO()
    w = csv.writer(buf, lineterminator="\n")
    w.writerow(CSV_COLUMNS)
    for r in records:
        w.writerow(r.csv_row())
    return buf.getvalue()


def _usable(records: Iterable[SurveyRecord], include_open: bool) -> list[SurveyRecord]:
    return [r for r in records if include_open or r.closed]


def max_param_height_with_depth5(
    records: Sequence[SurveyRecord], include_open: bool = False
) -> Optional[tuple[Fraction, float]]:
    """(c, h(c)) maximizing h(c) over records with a 5th preimage; first wins ties."""
    best = None
    for r in _usable(records, include_open):
        if r.has_depth5 and (best is None or naive_height(r.c) > naive_height(best.c)):
            best = r
    return None if best is None else (best.c, best.h_c)


@dataclass(frozen=True)
class CorollaryReport:
    max_total: int
    h_b: float
    gamma_trial: float
    bound: float

    @property
    def satisfied(self) -> bool:
        return self.max_total <= self.bound

    @property
    def implied_constant(self) -> float:
        """Smallest K with max_total <= K * exp(gamma_trial * h_b)."""
        return self.max_total / self.bound


def corollary_bound_report(
    records: Sequence[SurveyRecord], gamma_trial: float, include_open: bool = False
) -> Optional[CorollaryReport]:
    """Descriptive comparison of the largest preimage count with exp(gamma * h(b))."""
    if not gamma_trial > 0:
        raise ValueError("gamma_trial must be positive")
    usable = _usable(records, include_open)
    if not usable:
        return None
    h_b = usable[0].h_b
    return CorollaryReport(
        max_total=max(r.total_preimages for r in usable),
        h_b=h_b,
        gamma_trial=gamma_trial,
        bound=math.exp(gamma_trial * h_b),
    )


def small_n_count_check(record: SurveyRecord) -> bool:
    return sum(record.counts_per_level[:4]) <= SMALL_N_BOUND


def extremal_family(c: RationalLike) -> tuple[Fraction, float]:
    """b = f_c^5(0) and the ratio h(b) / h(c), which tends to 16 for large integers c."""
    c = as_rational(c)
    h_c = weil_height(c)
    if h_c == 0:
        raise DegenerateInputError("c must have positive height (c not in {0, 1, -1})")
    b = iterate(c, 0, 5)
    return b, weil_height(b) / h_c
