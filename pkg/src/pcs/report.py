"""Self-contained run reports and their JSON / CSV renderings."""

from __future__ import annotations

import csv
import io
import json
from dataclasses import dataclass
from typing import Any

from .aggregate import CorpusStats
from .spectrum import LandmarkResult


@dataclass(frozen=True)
class YearRecord:
    year: int
    c_total: int
    f_value: float
    pcs_value: float
    top_patent_id: str | None
    top_patent_count: int | None
    document_url: str | None


@dataclass(frozen=True)
class RunReport:
    """Everything one end-to-end run produced; re-rendering needs no network."""

    query: str
    mode: str
    source: str
    api_snapshot_date: str
    stats: CorpusStats
    years: list[YearRecord]
    landmark: LandmarkResult | None
    peak_year_pcs: int | None
    peak_year_rpys: int | None
    document_url_template: str
    timings: dict[str, float]
    generated_at: str

    def document_url(self, patent_id: str) -> str:
        return self.document_url_template.format(id=patent_id)


def report_to_dict(report: RunReport, deterministic: bool = False) -> dict[str, Any]:
    landmark = None
    if report.landmark is not None:
        landmark = {
            "patent_id": report.landmark.patent,
            "year": report.landmark.year,
            "score": report.landmark.score,
            "odds": report.landmark.odds,
            "document_url": report.document_url(report.landmark.patent),
            "runner_up_years": [
                {
                    "year": peak.year,
                    "patent_id": peak.patent,
                    "score": peak.score,
                    "document_url": report.document_url(peak.patent),
                }
                for peak in report.landmark.runner_up_years
            ],
        }
    data: dict[str, Any] = {
        "query": report.query,
        "mode": report.mode,
        "source": report.source,
        "api_snapshot_date": report.api_snapshot_date,
        "stats": {
            "citing_count": report.stats.citing_count,
            "unique_cited_count": report.stats.unique_cited_count,
            "dropped_unknown_year": report.stats.dropped_unknown_year,
        },
        "peak_years": {"pcs": report.peak_year_pcs, "rpys": report.peak_year_rpys},
        "years": [
            {
                "year": record.year,
                "c_total": record.c_total,
                "f_value": record.f_value,
                "pcs_value": record.pcs_value,
                "top_patent_id": record.top_patent_id,
                "top_patent_count": record.top_patent_count,
                "document_url": record.document_url,
            }
            for record in report.years
        ],
        "landmark": landmark,
        "no_positive_peak": report.landmark is None,
    }
    if not deterministic:
        data["generated_at"] = report.generated_at
        data["timings"] = report.timings
    return data


def render_report_json(report: RunReport, deterministic: bool = False) -> str:
    return json.dumps(report_to_dict(report, deterministic), indent=2) + "\n"


def render_report_table(report: RunReport) -> str:
    """Flat per-year CSV export for spreadsheet use."""
    out = io.StringIO()
    writer = csv.writer(out, lineterminator="\n")
    writer.writerow(
        ["year", "c_total", "f", "pcs", "top_patent_id", "top_patent_count", "document_url"]
    )
    for record in report.years:
        writer.writerow(
            [
                record.year,
                record.c_total,
                record.f_value,
                record.pcs_value,
                record.top_patent_id or "",
                record.top_patent_count if record.top_patent_count is not None else "",
                record.document_url or "",
            ]
        )
    return out.getvalue()
