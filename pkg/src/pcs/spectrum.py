"""Detrend and normalize per-year citation counts, then pick the landmark.

Two series are derived from the yearly totals:

* the detrended series: each year's total minus the median of the five-year
  window centred on it (windows truncate at the series boundaries), and
* the normalized series: the detrended value scaled by the share of that
  year's citations going to its single most-referenced patent.

The landmark is the top patent of the year with the highest positive score
(normalized series in "pcs" mode, detrended series in "rpys" mode).

All scores are exact rationals internally — counts are integers, window
medians are integers or half-integers, and shares are ratios of integers —
so selection, tie-breaking, and count-scaling behave exactly. The public
``f``/``pcs`` series are the correctly rounded float views.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Sequence

from .aggregate import YearBin
from .errors import NoPositivePeakError

MODE_PCS = "pcs"
MODE_RPYS = "rpys"
MODES = (MODE_PCS, MODE_RPYS)

WINDOW_REACH = 2  # years on each side of the focal year


def _window_median(values: Sequence[int], idx: int) -> Fraction:
    window = sorted(values[max(0, idx - WINDOW_REACH) : idx + WINDOW_REACH + 1])
    n = len(window)
    if n % 2:
        return Fraction(window[n // 2])
    return Fraction(window[n // 2 - 1] + window[n // 2], 2)


def detrend_exact(c: Sequence[int]) -> list[Fraction]:
    return [Fraction(c[t]) - _window_median(c, t) for t in range(len(c))]


def detrend(c: Sequence[int]) -> list[float]:
    """Deviation of each year's total from its five-year windowed median."""
    if not c:
        raise ValueError("series must have length >= 1")
    return [float(x) for x in detrend_exact(c)]


def normalize(f: Sequence[float], bins: dict[int, YearBin], years: Sequence[int]) -> list[float]:
    """Scale each detrended value by that year's top-patent citation share.

    Years without a bin (no citations) get 0. ``f`` and ``years`` must be
    parallel, as produced by detrend over the contiguous year range.
    """
    out = []
    for value, year in zip(f, years):
        bin_ = bins.get(year)
        if bin_ is None:
            out.append(0.0)
        else:
            out.append(value * bin_.top_count / bin_.c_total)
    return out


@dataclass(frozen=True)
class Spectrum:
    """Contiguous year-indexed citation series with detrended and normalized views."""

    start_year: int
    end_year: int
    mode: str
    bins: dict[int, YearBin]
    c: tuple[int, ...]
    f: tuple[float, ...]
    pcs: tuple[float, ...]
    f_exact: tuple[Fraction, ...]
    pcs_exact: tuple[Fraction, ...]

    @property
    def years(self) -> range:
        return range(self.start_year, self.end_year + 1)

    def index(self, year: int) -> int:
        if not self.start_year <= year <= self.end_year:
            raise KeyError(year)
        return year - self.start_year


def build_spectrum(
    bins: Sequence[YearBin],
    mode: str = MODE_PCS,
    start_year: int | None = None,
    end_year: int | None = None,
) -> Spectrum:
    """Materialize the contiguous spectrum over [start_year, end_year].

    The range defaults to the span of the bins; it may only be widened
    (gap years inside and padding outside carry a true zero count).
    """
    if mode not in MODES:
        raise ValueError(f"mode must be one of {MODES}, got {mode!r}")
    if not bins:
        raise ValueError("at least one year bin is required")
    by_year = {b.year: b for b in bins}
    lo = min(by_year)
    hi = max(by_year)
    start = lo if start_year is None else start_year
    end = hi if end_year is None else end_year
    if start > lo or end < hi:
        raise ValueError("year range cannot drop existing bins")

    years = range(start, end + 1)
    c = tuple(by_year[y].c_total if y in by_year else 0 for y in years)
    f_exact = tuple(detrend_exact(c))
    pcs_exact = []
    for year, value in zip(years, f_exact):
        bin_ = by_year.get(year)
        if bin_ is None:
            pcs_exact.append(Fraction(0))
        else:
            pcs_exact.append(value * Fraction(bin_.top_count, bin_.c_total))
    return Spectrum(
        start_year=start,
        end_year=end,
        mode=mode,
        bins=by_year,
        c=c,
        f=tuple(float(x) for x in f_exact),
        pcs=tuple(float(x) for x in pcs_exact),
        f_exact=f_exact,
        pcs_exact=tuple(pcs_exact),
    )


@dataclass(frozen=True)
class PeakYear:
    year: int
    patent: str
    score: float


@dataclass(frozen=True)
class LandmarkResult:
    """The selected foundational patent plus the next-ranked peak years."""

    patent: str
    year: int
    score: float
    odds: float
    runner_up_years: tuple[PeakYear, ...]


def active_scores(spectrum: Spectrum) -> tuple[Fraction, ...]:
    return spectrum.pcs_exact if spectrum.mode == MODE_PCS else spectrum.f_exact


def select_landmark(spectrum: Spectrum, unique_cited_count: int, top_k: int = 5) -> LandmarkResult:
    """Pick the top patent of the highest positively scored year.

    Ties go to the earliest year. Scores are compared exactly, so the
    selection is invariant under scaling all citation counts by a constant.
    Raises NoPositivePeakError when no year scores above zero.
    """
    if unique_cited_count < 1:
        raise ValueError("unique_cited_count must be >= 1")
    scores = active_scores(spectrum)
    positive = [
        (score, year)
        for year, score in zip(spectrum.years, scores)
        if score > 0
    ]
    if not positive:
        raise NoPositivePeakError(
            f"no positive {spectrum.mode} score in {spectrum.start_year}-{spectrum.end_year}"
        )
    ranked = sorted(positive, key=lambda item: (-item[0], item[1]))
    best_score, best_year = ranked[0]
    runner_ups = tuple(
        PeakYear(year=year, patent=spectrum.bins[year].top_id, score=float(score))
        for score, year in ranked[1 : 1 + max(top_k, 0)]
    )
    return LandmarkResult(
        patent=spectrum.bins[best_year].top_id,
        year=best_year,
        score=float(best_score),
        odds=chance_odds(unique_cited_count),
        runner_up_years=runner_ups,
    )


def chance_odds(unique_cited_count: int) -> float:
    """Odds of naming the landmark by picking one cited patent at random."""
    if unique_cited_count < 1:
        raise ValueError("unique_cited_count must be >= 1")
    return 1 / unique_cited_count
