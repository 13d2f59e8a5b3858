"""CLI behavior: end-to-end runs, formats, determinism, exit codes."""

import csv
import io
import json

import pytest

from pcs.cli import main
from pcs.errors import (
    EmptyQueryError,
    NoPositivePeakError,
    UnknownFixtureError,
    UnterminatedPhraseError,
)

RNAI_QUERY = 'RNAi, "interference RNA", siRNA, "RNA interference"'


@pytest.fixture(autouse=True)
def isolated_env(tmp_path, monkeypatch):
    monkeypatch.setenv("HOME", str(tmp_path))  # hermetic ~/.config and ~/.cache
    monkeypatch.setenv("PCS_CACHE_DIR", str(tmp_path / "cache"))
    for name in ("PCS_QUERY", "PCS_FIXTURE", "PCS_MODE", "PCS_FORMAT", "PCS_NO_CACHE", "PCS_CONFIG"):
        monkeypatch.delenv(name, raising=False)


def run_cli(capsys, *argv):
    code = main(list(argv))
    captured = capsys.readouterr()
    return code, captured.out, captured.err


class TestRun:
    def test_rnai_fixture_landmark(self, capsys):
        code, out, err = run_cli(
            capsys, "--query", RNAI_QUERY, "--fixture", "rnai", "--deterministic"
        )
        assert code == 0, err
        report = json.loads(out)
        assert report["landmark"]["patent_id"] == "6506559"
        assert report["landmark"]["year"] == 2003
        assert report["query"] == RNAI_QUERY
        assert report["stats"]["citing_count"] == 1217
        assert report["stats"]["unique_cited_count"] == 4065
        assert report["source"] == "fixture"
        assert "timings" not in report

    def test_fixture_runs_without_query_use_recorded_query(self, capsys):
        code, out, _ = run_cli(capsys, "--fixture", "rnai", "--deterministic")
        assert code == 0
        assert json.loads(out)["query"] == RNAI_QUERY

    def test_mode_comparison_peak_years(self, capsys):
        code, out, _ = run_cli(
            capsys, "--fixture", "cholesterol", "--mode", "rpys", "--deterministic"
        )
        assert code == 0
        report = json.loads(out)
        assert report["mode"] == "rpys"
        assert report["landmark"]["patent_id"] == "8030457"
        assert report["landmark"]["year"] == 2011
        # the report carries both modes' peak years so runs can be compared
        assert report["peak_years"] == {"pcs": 1987, "rpys": 2011}
        pcs_code, pcs_out, _ = run_cli(
            capsys, "--fixture", "cholesterol", "--deterministic"
        )
        assert pcs_code == 0
        pcs_report = json.loads(pcs_out)
        assert pcs_report["landmark"]["patent_id"] == "4681893"
        assert pcs_report["landmark"]["year"] != report["landmark"]["year"]

    def test_deterministic_runs_are_byte_identical(self, capsys):
        _, first, _ = run_cli(capsys, "--fixture", "rnai", "--deterministic")
        _, second, _ = run_cli(capsys, "--fixture", "rnai", "--deterministic")
        assert first == second

    def test_nondeterministic_report_carries_timings(self, capsys):
        code, out, _ = run_cli(capsys, "--fixture", "rnai")
        assert code == 0
        report = json.loads(out)
        assert set(report["timings"]) == {"parse", "fetch", "aggregate", "spectroscopy", "select"}
        assert "generated_at" in report

    def test_table_format(self, capsys):
        code, out, _ = run_cli(capsys, "--fixture", "rnai", "--format", "table")
        assert code == 0
        rows = list(csv.DictReader(io.StringIO(out)))
        assert rows[0]["year"] == "1976"
        by_year = {row["year"]: row for row in rows}
        assert by_year["2006"]["top_patent_id"] == "7056704"
        assert by_year["2003"]["document_url"] == "https://patents.google.com/patent/US6506559"
        years = [int(row["year"]) for row in rows]
        assert years == list(range(min(years), max(years) + 1))

    def test_output_file(self, capsys, tmp_path):
        target = tmp_path / "report.json"
        code, out, _ = run_cli(
            capsys, "--fixture", "rnai", "--deterministic", "--output", str(target)
        )
        assert code == 0
        assert out == ""
        assert json.loads(target.read_text())["landmark"]["patent_id"] == "6506559"

    def test_top_k_limits_runner_ups(self, capsys):
        code, out, _ = run_cli(capsys, "--fixture", "rnai", "--deterministic", "--top-k", "2")
        assert code == 0
        assert len(json.loads(out)["landmark"]["runner_up_years"]) == 2


class TestExitCodes:
    def test_empty_query(self, capsys):
        code, out, err = run_cli(capsys, "--query", "")
        assert code == EmptyQueryError.exit_code
        assert out == ""
        assert "EmptyQueryError" in err

    def test_unterminated_phrase(self, capsys):
        code, out, err = run_cli(capsys, "--query", '"oops')
        assert code == UnterminatedPhraseError.exit_code
        assert out == ""

    def test_unknown_fixture(self, capsys):
        code, _, err = run_cli(capsys, "--fixture", "nope")
        assert code == UnknownFixtureError.exit_code
        assert "UnknownFixtureError" in err

    def test_missing_query_and_fixture(self, capsys):
        code, out, err = run_cli(capsys)
        assert code == 2
        assert "required" in err

    def test_no_positive_peak_still_reports(self, capsys, tmp_path, monkeypatch):
        from datetime import date

        from pcs.cache import CacheEntry, FileCache
        from pcs.client import CitedReference, CitingPatent, FetchResult

        # constant series: every deviation is zero, so no landmark exists
        patents = [
            CitingPatent(
                id=f"{7500000 + i}",
                title="flat",
                grant_date=date(2010, 1, 1),
                cited=(CitedReference(cited_id=f"{6000000 + i % 3}", grant_year=2000 + i % 3),),
            )
            for i in range(9)
        ]
        payload = FetchResult(patents=patents, total_reported=9, pages_fetched=1, source="live")
        fixtures = tmp_path / "fixtures"
        FileCache(fixtures).put(
            "flat",
            CacheEntry(
                key="flatkey",
                created_at="2017-02-15T00:00:00+00:00",
                api_snapshot_date="2017-02-15",
                query="flat",
                payload=payload,
            ),
        )
        monkeypatch.setenv("PCS_FIXTURES_DIR", str(fixtures))
        code, out, err = run_cli(capsys, "--fixture", "flat", "--deterministic")
        assert code == NoPositivePeakError.exit_code
        report = json.loads(out)
        assert report["landmark"] is None
        assert report["no_positive_peak"] is True
        assert len(report["years"]) == 3


class TestEnvMirrors:
    def test_env_supplies_defaults_and_flags_win(self, capsys, monkeypatch):
        monkeypatch.setenv("PCS_FIXTURE", "rnai")
        monkeypatch.setenv("PCS_MODE", "rpys")
        code, out, _ = run_cli(capsys, "--deterministic")
        assert code == 0
        assert json.loads(out)["mode"] == "rpys"
        code, out, _ = run_cli(capsys, "--deterministic", "--mode", "pcs")
        assert code == 0
        assert json.loads(out)["mode"] == "pcs"


class TestConfigFile:
    def test_config_file_flag(self, capsys, tmp_path):
        config_file = tmp_path / "pcs.json"
        config_file.write_text('{"document_url_template": "https://docs.example/{id}"}')
        code, out, _ = run_cli(
            capsys, "--fixture", "rnai", "--deterministic", "--config", str(config_file)
        )
        assert code == 0
        assert json.loads(out)["landmark"]["document_url"] == "https://docs.example/6506559"

    def test_bad_config_path_is_usage_error(self, capsys, tmp_path):
        code, out, err = run_cli(
            capsys, "--fixture", "rnai", "--config", str(tmp_path / "missing.json")
        )
        assert code == 2
        assert "configuration error" in err


class TestCacheCommand:
    def test_cache_lifecycle(self, capsys, tmp_path):
        cache_dir = tmp_path / "cachecmd"
        code, out, _ = run_cli(capsys, "cache", "path", "--cache-dir", str(cache_dir))
        assert code == 0 and out.strip() == str(cache_dir)
        code, out, _ = run_cli(capsys, "cache", "list", "--cache-dir", str(cache_dir))
        assert code == 0 and "empty" in out
        code, out, _ = run_cli(capsys, "cache", "clear", "--cache-dir", str(cache_dir))
        assert code == 0 and "removed 0" in out
