"""Turn fetched citing patents into per-year citation bins.

Each (citing patent, cited patent) pair counts once; references without a
usable grant year are excluded from binning but tallied for diagnostics.
"""

from __future__ import annotations

from collections import Counter, defaultdict
from dataclasses import dataclass
from typing import TYPE_CHECKING

from .errors import EmptyCorpusError
from .ids import patent_sort_key

if TYPE_CHECKING:
    from .client import FetchResult


@dataclass(frozen=True)
class YearBin:
    """All citation mass attributed to one reference grant year."""

    year: int
    c_total: int
    counts: dict[str, int]
    top_id: str
    top_count: int


@dataclass(frozen=True)
class CorpusStats:
    citing_count: int
    unique_cited_count: int
    dropped_unknown_year: int


def aggregate(fetch: "FetchResult") -> tuple[list[YearBin], CorpusStats]:
    """Bin citation pairs by reference grant year.

    Returns the bins sorted ascending by year plus corpus summary counts.
    The top patent of a bin is the most-cited one, ties broken by the
    numerically smallest id. Raises EmptyCorpusError when no reference has
    a known grant year.
    """
    per_year: dict[int, Counter] = defaultdict(Counter)
    unique_cited: set[str] = set()
    dropped = 0
    for patent in fetch.patents:
        for ref in patent.cited:
            unique_cited.add(ref.cited_id)
            if ref.grant_year is None:
                dropped += 1
            else:
                per_year[ref.grant_year][ref.cited_id] += 1

    stats = CorpusStats(
        citing_count=len(fetch.patents),
        unique_cited_count=len(unique_cited),
        dropped_unknown_year=dropped,
    )
    if not per_year:
        raise EmptyCorpusError("no citing patent has a dated reference")

    bins = []
    for year in sorted(per_year):
        counts = dict(per_year[year])
        top_count = max(counts.values())
        top_id = min(
            (pid for pid, n in counts.items() if n == top_count),
            key=patent_sort_key,
        )
        bins.append(
            YearBin(
                year=year,
                c_total=sum(counts.values()),
                counts=counts,
                top_id=top_id,
                top_count=top_count,
            )
        )
    return bins, stats
