#!/usr/bin/env python3
"""Build the bundled corpus fixtures deterministically.

Each fixture is a synthetic but structurally realistic snapshot of a patent
search result set, written in the cache entry format so tests and the CLI
replay it through the production decode path. The per-year citation tables
below pin the analytic structure:

* rnai        — 1,217 citing patents over 4,065 unique cited references;
                the detrended series peaks in 2009 (top patent 7595387)
                while the normalized series peaks in 2003, whose dominant
                patent is 6506559; 2006 is a secondary normalized peak
                owned by 7056704.
* cholesterol — 2,834 citing patents over 11,326 unique cited references;
                normalized peak 1987 owned by 4681893, detrended peak 2011
                (top 8030457), with a second late peak in 2013 (8563698).

Peak placement is verified here with locally coded medians (independent of
the package's analysis code) before anything is written.

Usage:  python tools/make_fixtures.py [--out src/pcs/fixtures]
"""

from __future__ import annotations

import argparse
import random
import sys
from dataclasses import dataclass, field
from datetime import date
from pathlib import Path

sys.path.insert(0, str(Path(__file__).resolve().parent.parent / "src"))

from pcs.cache import CacheEntry, FileCache, make_key  # noqa: E402
from pcs.client import FetchResult, CitingPatent, CitedReference, SOURCE_LIVE  # noqa: E402

CREATED_AT = "2017-02-15T00:00:00+00:00"
SNAPSHOT_DATE = "2017-02-15"
PAGE_SIZE = 1000
DIALECT = "patentsview-legacy"

# approximate first utility patent number granted in the anchor year
NUMBER_ANCHORS = [
    (1950, 2_492_944),
    (1955, 2_698_434),
    (1960, 2_919_443),
    (1965, 3_163_865),
    (1970, 3_487_470),
    (1976, 3_930_271),
    (1980, 4_180_867),
    (1985, 4_490_855),
    (1990, 4_890_335),
    (1995, 5_377_359),
    (2000, 6_009_555),
    (2005, 6_836_899),
    (2010, 7_640_598),
    (2015, 8_925_112),
    (2017, 9_530_914),
]


def first_number(year: int) -> int:
    for (y0, n0), (y1, n1) in zip(NUMBER_ANCHORS, NUMBER_ANCHORS[1:]):
        if y0 <= year <= y1:
            return n0 + (n1 - n0) * (year - y0) // (y1 - y0)
    raise ValueError(f"year {year} outside anchor range")


@dataclass
class FixtureSpec:
    name: str
    query: str
    citing_titles: list[str]
    # cited side: year -> (citation pair total, base unique-id count)
    year_totals: dict[int, tuple[int, int]]
    # special years: year -> (top patent id, top citation count)
    specials: dict[int, tuple[str, int]]
    unique_target: int
    # citing side: grant year -> number of citing patents
    citing_by_year: dict[int, int]
    expect_pcs_peak: int = 0
    expect_rpys_peak: int = 0
    expect_tops: dict[int, str] = field(default_factory=dict)


def rnai_spec() -> FixtureSpec:
    year_totals = {}
    base = {
        1976: (6, 5), 1977: (8, 6), 1978: (10, 8), 1979: (12, 9), 1980: (14, 10),
        1981: (16, 12), 1982: (18, 13), 1983: (22, 16), 1984: (26, 19), 1985: (30, 22),
        1986: (34, 25), 1987: (38, 28), 1988: (44, 32), 1989: (50, 36), 1990: (56, 40),
        1991: (64, 46), 1992: (72, 52), 1993: (82, 58), 1994: (92, 66), 1995: (104, 74),
        1996: (118, 84), 1997: (134, 95), 1998: (152, 107), 1999: (172, 121),
        2000: (194, 136), 2001: (218, 152), 2002: (244, 170),
        2003: (420, 60),
        2004: (260, 180), 2005: (270, 186),
        2006: (390, 80),
        2007: (280, 192), 2008: (290, 198),
        2009: (640, 300),
        2010: (300, 204), 2011: (260, 178), 2012: (200, 138), 2013: (150, 104),
        2014: (100, 70), 2015: (60, 42), 2016: (20, 15),
    }
    year_totals.update(base)
    citing = {
        1998: 8, 1999: 12, 2000: 18, 2001: 25, 2002: 32, 2003: 40, 2004: 50,
        2005: 60, 2006: 68, 2007: 75, 2008: 82, 2009: 88, 2010: 92, 2011: 95,
        2012: 98, 2013: 100, 2014: 100, 2015: 95, 2016: 79,
    }
    return FixtureSpec(
        name="rnai",
        query='RNAi, "interference RNA", siRNA, "RNA interference"',
        citing_titles=[
            "Methods for gene silencing by double-stranded RNA",
            "Compositions for delivery of siRNA to mammalian cells",
            "Short interfering RNA duplexes for therapeutic use",
            "RNA interference mediated inhibition of gene expression",
            "Modified siRNA molecules with enhanced stability",
            "Vectors expressing small hairpin RNA for RNAi",
        ],
        year_totals=year_totals,
        specials={
            2003: ("6506559", 300),
            2006: ("7056704", 150),
            2009: ("7595387", 64),
        },
        unique_target=4065,
        citing_by_year=citing,
        expect_pcs_peak=2003,
        expect_rpys_peak=2009,
        expect_tops={2003: "6506559", 2006: "7056704", 2009: "7595387"},
    )


def cholesterol_spec() -> FixtureSpec:
    year_totals: dict[int, tuple[int, int]] = {}
    decade_tables = {
        1950: [8, 10, 12, 14, 16, 18, 20, 24, 28, 32],
        1960: [36, 40, 44, 48, 54, 60, 66, 72, 80, 88],
        1970: [96, 104, 112, 120, 130, 140, 150, 160, 170, 180],
        1980: [185, 190, 195, 185, 180, 190, 200, 520, 210, 215],
        1990: [220, 225, 230, 235, 240, 245, 250, 255, 260, 265],
        2000: [270, 290, 310, 330, 360, 390, 420, 480, 500, 520],
        2010: [540, 900, 560, 880, 400, 240, 140],
    }
    for decade, values in decade_tables.items():
        for offset, total in enumerate(values):
            year = decade + offset
            year_totals[year] = (total, max(1, round(total * 0.82)))
    # specials get explicit diversity levels
    year_totals[1987] = (520, 40)
    year_totals[2011] = (900, 420)
    year_totals[2013] = (880, 400)

    citing = {}
    for year in range(1976, 1990):
        citing[year] = 20
    for year in range(1990, 2000):
        citing[year] = 40
    for year in range(2000, 2010):
        citing[year] = 110
    citing.update({2010: 120, 2011: 140, 2012: 150, 2013: 164, 2014: 160, 2015: 170, 2016: 150})
    return FixtureSpec(
        name="cholesterol",
        query="cholesterol",
        citing_titles=[
            "Cholesterol lowering compositions and methods",
            "Inhibitors of cholesterol biosynthesis",
            "Assay for serum cholesterol measurement",
            "Antibodies for the treatment of hypercholesterolemia",
            "Statin derivatives for reducing plasma cholesterol",
            "Dietary compositions affecting cholesterol absorption",
        ],
        year_totals=year_totals,
        specials={
            1987: ("4681893", 390),
            2011: ("8030457", 135),
            2013: ("8563698", 140),
        },
        unique_target=11326,
        citing_by_year=citing,
        expect_pcs_peak=1987,
        expect_rpys_peak=2011,
        expect_tops={1987: "4681893", 2011: "8030457", 2013: "8563698"},
    )


def balance_unique_counts(spec: FixtureSpec) -> dict[int, int]:
    """Adjust non-special per-year unique-id counts so they sum to the target."""
    n_by_year = {y: n for y, (_, n) in spec.year_totals.items()}
    deficit = spec.unique_target - sum(n_by_year.values())
    if deficit < 0:
        raise SystemExit(f"{spec.name}: table already exceeds unique target by {-deficit}")
    adjustable = sorted(y for y in spec.year_totals if y not in spec.specials)
    while deficit > 0:
        progressed = False
        for year in adjustable:
            if deficit == 0:
                break
            c_total, _ = spec.year_totals[year]
            if n_by_year[year] < c_total:
                n_by_year[year] += 1
                deficit -= 1
                progressed = True
        if not progressed:
            raise SystemExit(f"{spec.name}: not enough capacity to reach unique target")
    return n_by_year


def year_distribution(
    spec: FixtureSpec, year: int, n_ids: int, rng: random.Random, id_pool: "IdPool"
) -> dict[str, int]:
    """Assign citation counts to concrete patent ids for one year."""
    c_total, _ = spec.year_totals[year]
    counts: dict[str, int] = {}
    if year in spec.specials:
        top_id, top_count = spec.specials[year]
        rest_total = c_total - top_count
        rest_ids = n_ids - 1
        if rest_ids <= 0 or rest_total < rest_ids:
            raise SystemExit(f"{spec.name}:{year}: cannot spread {rest_total} over {rest_ids} ids")
        base, rem = divmod(rest_total, rest_ids)
        if base + 1 >= top_count:
            raise SystemExit(f"{spec.name}:{year}: top patent would not dominate")
        counts[top_id] = top_count
        for i in range(rest_ids):
            counts[id_pool.take(year, rng)] = base + 1 if i < rem else base
    else:
        base, rem = divmod(c_total, n_ids)
        for i in range(n_ids):
            counts[id_pool.take(year, rng)] = base + 1 if i < rem else base
    assert sum(counts.values()) == c_total
    assert all(v >= 1 for v in counts.values())
    return counts


class IdPool:
    """Unique era-plausible patent numbers, never colliding with the specials."""

    def __init__(self, reserved: set[str]):
        self.used: set[str] = set(reserved)

    def take(self, year: int, rng: random.Random) -> str:
        lo = first_number(year)
        hi = first_number(year + 1) if year < 2016 else first_number(2017)
        for _ in range(10_000):
            candidate = str(rng.randrange(lo, hi))
            if candidate not in self.used:
                self.used.add(candidate)
                return candidate
        raise SystemExit(f"id space exhausted for {year}")


@dataclass
class CitingDraft:
    id: str
    title: str
    grant_date: date
    cited: list[tuple[str, int]] = field(default_factory=list)
    cited_ids: set[str] = field(default_factory=set)


def build_citing_cohort(spec: FixtureSpec, rng: random.Random, id_pool: IdPool) -> list[CitingDraft]:
    drafts = []
    serial = 0
    for year in sorted(spec.citing_by_year):
        for _ in range(spec.citing_by_year[year]):
            month = 1 + (serial * 7) % 12
            day = 1 + (serial * 11) % 28
            title = spec.citing_titles[serial % len(spec.citing_titles)]
            drafts.append(
                CitingDraft(
                    id=id_pool.take(year, rng),
                    title=title,
                    grant_date=date(year, month, day),
                )
            )
            serial += 1
    drafts.sort(key=lambda d: d.grant_date)
    return drafts


def deal_citations(
    spec: FixtureSpec,
    distributions: dict[int, dict[str, int]],
    cohort: list[CitingDraft],
    rng: random.Random,
) -> None:
    """Hand each citation instance to a citing patent granted after the reference.

    Same-year citations only go to citing patents granted in the second half
    of the year (cited grant dates are treated as first-half).
    """
    def eligible_from(cited_year: int) -> int:
        for idx, draft in enumerate(cohort):
            if draft.grant_date.year > cited_year:
                return idx
            if draft.grant_date.year == cited_year and draft.grant_date.month >= 7:
                return idx
        return len(cohort)

    for year in sorted(distributions):
        start = eligible_from(year)
        pool = cohort[start:]
        if not pool:
            raise SystemExit(f"{spec.name}:{year}: no citing patent can cite this year")
        cursor = rng.randrange(len(pool))
        for cited_id, count in distributions[year].items():
            if count > len(pool):
                raise SystemExit(
                    f"{spec.name}:{year}: {cited_id} needs {count} citers, pool has {len(pool)}"
                )
            placed = 0
            scanned = 0
            while placed < count:
                draft = pool[cursor % len(pool)]
                cursor += 1
                scanned += 1
                if scanned > len(pool) + count:
                    raise SystemExit(f"{spec.name}:{year}: dealing stalled on {cited_id}")
                if cited_id in draft.cited_ids:
                    continue
                draft.cited_ids.add(cited_id)
                draft.cited.append((cited_id, year))
                placed += 1


# ---------------------------------------------------------------------------
# independent verification (no imports from the analysis modules)

def check_median(values: list[int], idx: int) -> float:
    window = sorted(values[max(0, idx - 2) : idx + 3])
    mid = len(window) // 2
    if len(window) % 2:
        return float(window[mid])
    return (window[mid - 1] + window[mid]) / 2


def verify_structure(spec: FixtureSpec, cohort: list[CitingDraft]) -> None:
    totals: dict[int, dict[str, int]] = {}
    for draft in cohort:
        for cited_id, year in draft.cited:
            bucket = totals.setdefault(year, {})
            bucket[cited_id] = bucket.get(cited_id, 0) + 1

    years = list(range(min(totals), max(totals) + 1))
    c = [sum(totals.get(y, {}).values()) for y in years]
    for year, (expected_total, _) in spec.year_totals.items():
        got = sum(totals.get(year, {}).values())
        assert got == expected_total, f"{spec.name}:{year}: total {got} != {expected_total}"

    f = [c[i] - check_median(c, i) for i in range(len(c))]
    pcs = []
    tops: dict[int, str] = {}
    for i, year in enumerate(years):
        counts = totals.get(year)
        if not counts:
            pcs.append(0.0)
            continue
        top_count = max(counts.values())
        candidates = sorted(pid for pid, v in counts.items() if v == top_count)
        tops[year] = candidates[0]
        if len(candidates) > 1 and year in spec.expect_tops:
            raise SystemExit(f"{spec.name}:{year}: top patent is tied")
        pcs.append(f[i] * top_count / c[i])

    rpys_peak = years[max(range(len(years)), key=lambda i: f[i])]
    pcs_peak = years[max(range(len(years)), key=lambda i: pcs[i])]
    assert rpys_peak == spec.expect_rpys_peak, f"{spec.name}: rpys peak {rpys_peak}"
    assert pcs_peak == spec.expect_pcs_peak, f"{spec.name}: pcs peak {pcs_peak}"
    for year, top_id in spec.expect_tops.items():
        assert tops[year] == top_id, f"{spec.name}:{year}: top {tops[year]} != {top_id}"

    unique = len({pid for counts in totals.values() for pid in counts})
    assert unique == spec.unique_target, f"{spec.name}: unique {unique} != {spec.unique_target}"
    assert len(cohort) == sum(spec.citing_by_year.values())
    # peaks should be decisive, not marginal
    sorted_pcs = sorted(pcs, reverse=True)
    assert sorted_pcs[0] > 1.5 * sorted_pcs[1], f"{spec.name}: pcs peak not dominant"


def build_fixture(spec: FixtureSpec, out_dir: Path) -> Path:
    rng = random.Random(f"pcs-fixture-{spec.name}")
    reserved = {top_id for top_id, _ in spec.specials.values()}
    for year, (top_id, _) in spec.specials.items():
        lo, hi = first_number(year), first_number(year + 1)
        assert lo <= int(top_id) < hi, f"{top_id} implausible for {year}"
    id_pool = IdPool(reserved)

    n_by_year = balance_unique_counts(spec)
    distributions = {
        year: year_distribution(spec, year, n_by_year[year], rng, id_pool)
        for year in sorted(spec.year_totals)
    }
    cohort = build_citing_cohort(spec, rng, id_pool)
    deal_citations(spec, distributions, cohort, rng)
    verify_structure(spec, cohort)

    patents = [
        CitingPatent(
            id=draft.id,
            title=draft.title,
            grant_date=draft.grant_date,
            cited=tuple(
                CitedReference(cited_id=cid, grant_year=year) for cid, year in draft.cited
            ),
        )
        for draft in cohort
    ]
    total = len(patents)
    result = FetchResult(
        patents=patents,
        total_reported=total,
        pages_fetched=-(-total // PAGE_SIZE),
        source=SOURCE_LIVE,
    )
    entry = CacheEntry(
        key=make_key(spec.query, DIALECT, PAGE_SIZE),
        created_at=CREATED_AT,
        api_snapshot_date=SNAPSHOT_DATE,
        query=spec.query,
        payload=result,
    )
    # file is named by fixture name; the embedded key remains the cache key
    path = FileCache(out_dir).put(spec.name, entry)
    path.chmod(0o644)
    return path


def main() -> int:
    parser = argparse.ArgumentParser(description=__doc__)
    parser.add_argument(
        "--out",
        default=Path(__file__).resolve().parent.parent / "src" / "pcs" / "fixtures",
        type=Path,
    )
    args = parser.parse_args()
    args.out.mkdir(parents=True, exist_ok=True)
    for spec in (rnai_spec(), cholesterol_spec()):
        path = build_fixture(spec, args.out)
        size_kb = path.stat().st_size // 1024
        print(f"wrote {path} ({size_kb} KiB)")
    return 0


if __name__ == "__main__":
    raise SystemExit(main())
