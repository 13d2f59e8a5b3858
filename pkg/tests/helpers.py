"""Shared test builders: random corpora and fetch results."""

from __future__ import annotations

import random
from datetime import date

from pcs.aggregate import YearBin, aggregate
from pcs.client import CitedReference, CitingPatent, FetchResult, SOURCE_FIXTURE

LETTER_PREFIXES = ("", "", "", "", "D", "RE", "PP", "H")


def random_patent_id(rng: random.Random) -> str:
    prefix = rng.choice(LETTER_PREFIXES)
    return f"{prefix}{rng.randint(1, 9_999_999)}"


def make_fetch_result(
    rng: random.Random,
    n_patents: int | None = None,
    unknown_year_rate: float = 0.1,
    source: str = SOURCE_FIXTURE,
) -> FetchResult:
    """A small random corpus with letter-prefixed ids and unknown grant years."""
    n_patents = n_patents if n_patents is not None else rng.randint(1, 8)
    patents = []
    used_ids: set[str] = set()
    for _ in range(n_patents):
        pid = random_patent_id(rng)
        while pid in used_ids:
            pid = random_patent_id(rng)
        used_ids.add(pid)
        cited = {}
        for _ in range(rng.randint(0, 10)):
            ref_id = random_patent_id(rng)
            if ref_id in cited:
                continue
            year = None if rng.random() < unknown_year_rate else rng.randint(1970, 2016)
            cited[ref_id] = CitedReference(cited_id=ref_id, grant_year=year)
        patents.append(
            CitingPatent(
                id=pid,
                title=f"synthetic patent {pid}",
                grant_date=date(rng.randint(2000, 2016), rng.randint(1, 12), rng.randint(1, 28)),
                cited=tuple(cited.values()),
            )
        )
    return FetchResult(
        patents=patents,
        total_reported=len(patents),
        pages_fetched=1,
        source=source,
    )


def make_year_bins(counts_by_year: dict[int, dict[str, int]]) -> list[YearBin]:
    """Build bins straight from {year: {patent_id: count}} without a fetch."""
    result = FetchResult(
        patents=[
            CitingPatent(
                id=f"{900_000 + i}",
                title="carrier",
                grant_date=date(2016, 1, 1),
                cited=(CitedReference(cited_id=pid, grant_year=year),),
            )
            for i, (year, pid) in enumerate(
                (year, pid)
                for year, counts in counts_by_year.items()
                for pid, n in counts.items()
                for _ in range(n)
            )
        ],
        total_reported=0,
        pages_fetched=1,
        source=SOURCE_FIXTURE,
    )
    bins, _ = aggregate(result)
    return bins


def scaled_bins(bins: list[YearBin], k: int) -> list[YearBin]:
    """The same corpus with every citation count multiplied by k."""
    return [
        YearBin(
            year=b.year,
            c_total=b.c_total * k,
            counts={pid: n * k for pid, n in b.counts.items()},
            top_id=b.top_id,
            top_count=b.top_count * k,
        )
        for b in bins
    ]


def random_corpus_bins(rng: random.Random, max_years: int = 12) -> list[YearBin]:
    """Random per-year citation distributions over a contiguous-ish year span."""
    start = rng.randint(1980, 2010)
    n_years = rng.randint(1, max_years)
    counts_by_year: dict[int, dict[str, int]] = {}
    for year in range(start, start + n_years):
        if rng.random() < 0.2:
            continue  # gap year
        n_ids = rng.randint(1, 5)
        counts = {}
        for _ in range(n_ids):
            counts[f"{rng.randint(4_000_000, 9_000_000)}"] = rng.randint(1, 20)
        counts_by_year[year] = counts
    if not counts_by_year:
        counts_by_year[start] = {f"{rng.randint(4_000_000, 9_000_000)}": rng.randint(1, 20)}
    return make_year_bins(counts_by_year)
