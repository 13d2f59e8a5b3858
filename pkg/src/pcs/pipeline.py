"""End-to-end orchestration: parse, fetch, aggregate, detrend, select.

Shared by the CLI and the HTTP service so both surfaces produce identical
reports for identical inputs.
"""

from __future__ import annotations

import time
from datetime import date, datetime, timezone

from .aggregate import aggregate
from .client import PatentSearchClient
from .errors import NoPositivePeakError
from .query import parse_query
from .report import RunReport, YearRecord
from .spectrum import MODE_PCS, build_spectrum, select_landmark


def _positive_peak_year(spectrum, exact_series) -> int | None:
    best = None
    for year, score in zip(spectrum.years, exact_series):
        if score > 0 and (best is None or score > best[0]):
            best = (score, year)
    return best[1] if best else None


def run_pipeline(
    raw_query: str | None,
    mode: str = MODE_PCS,
    client: PatentSearchClient | None = None,
    fixture: str | None = None,
    top_k: int = 5,
) -> RunReport:
    """Run the whole analysis and return a self-contained report.

    With ``fixture`` set the recorded corpus replaces the live/cache fetch;
    ``raw_query`` may then be omitted and the fixture's recorded query is
    reported. A corpus with no positive peak yields a report whose landmark
    is None rather than an error (the CLI and service decide how to signal
    that condition).
    """
    client = client or PatentSearchClient()
    timings: dict[str, float] = {}

    t0 = time.perf_counter()
    query = parse_query(raw_query) if raw_query is not None else None
    timings["parse"] = time.perf_counter() - t0

    t0 = time.perf_counter()
    if fixture is not None:
        result, entry = client.load_fixture(fixture)
        canonical = query.canonical() if query is not None else entry.query
        snapshot = entry.api_snapshot_date
    else:
        if query is None:
            raise ValueError("a query is required when no fixture is given")
        result = client.fetch_all(query)
        canonical = query.canonical()
        snapshot = client.snapshot_date_for(query) or date.today().isoformat()
    timings["fetch"] = time.perf_counter() - t0

    t0 = time.perf_counter()
    bins, stats = aggregate(result)
    timings["aggregate"] = time.perf_counter() - t0

    t0 = time.perf_counter()
    spectrum = build_spectrum(bins, mode=mode)
    timings["spectroscopy"] = time.perf_counter() - t0

    t0 = time.perf_counter()
    try:
        landmark = select_landmark(spectrum, stats.unique_cited_count, top_k=top_k)
    except NoPositivePeakError:
        landmark = None
    timings["select"] = time.perf_counter() - t0

    config = client.config
    years = []
    for year in spectrum.years:
        bin_ = spectrum.bins.get(year)
        idx = spectrum.index(year)
        years.append(
            YearRecord(
                year=year,
                c_total=spectrum.c[idx],
                f_value=spectrum.f[idx],
                pcs_value=spectrum.pcs[idx],
                top_patent_id=bin_.top_id if bin_ else None,
                top_patent_count=bin_.top_count if bin_ else None,
                document_url=config.document_url(bin_.top_id) if bin_ else None,
            )
        )

    return RunReport(
        query=canonical,
        mode=mode,
        source=result.source,
        api_snapshot_date=snapshot,
        stats=stats,
        years=years,
        landmark=landmark,
        peak_year_pcs=_positive_peak_year(spectrum, spectrum.pcs_exact),
        peak_year_rpys=_positive_peak_year(spectrum, spectrum.f_exact),
        document_url_template=config.document_url_template,
        timings={k: round(v, 6) for k, v in timings.items()},
        generated_at=datetime.now(timezone.utc).isoformat(timespec="seconds"),
    )


__all__ = ["run_pipeline"]
