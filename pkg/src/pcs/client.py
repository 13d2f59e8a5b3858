"""Fetch citing patents and their backward citations from a patent search API.

The wire shape (base URL, verb, field names, pagination parameters) is
configuration-driven through an "API dialect" profile so the analysis code
never depends on a particular vendor's schema. One dialect ships, matching
the legacy PatentsView GET interface; tests replay recorded fixtures
through the same decode path.
"""

from __future__ import annotations

import json
import logging
import os
import time
from dataclasses import dataclass, field, fields, replace
from datetime import date, datetime, timezone
from importlib import resources
from pathlib import Path
from typing import Any

import requests

from . import cache as cache_store
from .errors import (
    ApiSchemaMismatchError,
    ApiUnreachableError,
    PageCapExceededError,
    UnknownFixtureError,
)
from .ids import normalize_patent_id
from .query import PHRASE, Query

log = logging.getLogger(__name__)

SOURCE_LIVE = "live"
SOURCE_CACHE = "cache"
SOURCE_FIXTURE = "fixture"

MIN_PLAUSIBLE_YEAR = 1790  # first US patent grant

API_MAX_PAGE_SIZE = 1000

RETRYABLE_STATUS = frozenset({429, 500, 502, 503, 504})


@dataclass(frozen=True)
class CitedReference:
    cited_id: str
    grant_year: int | None


@dataclass(frozen=True)
class CitingPatent:
    id: str
    title: str
    grant_date: date
    cited: tuple[CitedReference, ...]


@dataclass(frozen=True)
class FetchResult:
    patents: list[CitingPatent]
    total_reported: int
    pages_fetched: int
    source: str

    def unique_cited_ids(self) -> set[str]:
        return {ref.cited_id for p in self.patents for ref in p.cited}


@dataclass(frozen=True)
class ApiDialect:
    """Names the wire-level knobs of one patent search API flavor."""

    name: str
    base_url: str
    patents_key: str
    total_key: str
    id_field: str
    date_field: str
    title_field: str
    cited_key: str
    cited_id_field: str
    cited_date_field: str
    title_search_field: str
    abstract_search_field: str
    keyword_op: str
    phrase_op: str
    query_param: str = "q"
    fields_param: str = "f"
    options_param: str = "o"
    page_param: str = "page"
    per_page_param: str = "per_page"


LEGACY_PATENTSVIEW = ApiDialect(
    name="patentsview-legacy",
    base_url="https://www.patentsview.org/api/patents/query",
    patents_key="patents",
    total_key="total_patent_count",
    id_field="patent_number",
    date_field="patent_date",
    title_field="patent_title",
    cited_key="cited_patents",
    cited_id_field="cited_patent_number",
    cited_date_field="cited_patent_date",
    title_search_field="patent_title",
    abstract_search_field="patent_abstract",
    keyword_op="_text_any",
    phrase_op="_text_phrase",
)

DIALECTS: dict[str, ApiDialect] = {LEGACY_PATENTSVIEW.name: LEGACY_PATENTSVIEW}

DEFAULT_DOCUMENT_URL = "https://patents.google.com/patent/US{id}"


def _default_cache_dir() -> Path:
    return Path(os.environ.get("PCS_CACHE_DIR", "~/.cache/pcs")).expanduser()


@dataclass(frozen=True)
class ClientConfig:
    """Everything the client needs; env overrides use the PCS_ prefix."""

    dialect: str = LEGACY_PATENTSVIEW.name
    base_url: str | None = None
    page_size: int = API_MAX_PAGE_SIZE
    page_cap: int = 25
    retries: int = 3
    retry_delay: float = 0.5
    inter_page_delay: float = 0.2
    timeout: float = 30.0
    cache_dir: Path = field(default_factory=_default_cache_dir)
    no_cache: bool = False
    fixtures_dir: Path | None = None
    document_url_template: str = DEFAULT_DOCUMENT_URL

    @classmethod
    def from_env(
        cls,
        env: dict[str, str] | None = None,
        config_path: Path | str | None = None,
        **overrides: Any,
    ) -> "ClientConfig":
        """Layered configuration: config file, then PCS_* env vars, then overrides."""
        env = dict(os.environ if env is None else env)
        values: dict[str, Any] = cls._file_values(env, config_path)
        if "PCS_DIALECT" in env:
            values["dialect"] = env["PCS_DIALECT"]
        if "PCS_BASE_URL" in env:
            values["base_url"] = env["PCS_BASE_URL"]
        if "PCS_PAGE_SIZE" in env:
            values["page_size"] = int(env["PCS_PAGE_SIZE"])
        if "PCS_PAGE_CAP" in env:
            values["page_cap"] = int(env["PCS_PAGE_CAP"])
        if "PCS_RETRIES" in env:
            values["retries"] = int(env["PCS_RETRIES"])
        if "PCS_INTER_PAGE_DELAY" in env:
            values["inter_page_delay"] = float(env["PCS_INTER_PAGE_DELAY"])
        if "PCS_CACHE_DIR" in env:
            values["cache_dir"] = Path(env["PCS_CACHE_DIR"]).expanduser()
        if "PCS_NO_CACHE" in env:
            values["no_cache"] = env["PCS_NO_CACHE"].lower() in ("1", "true", "yes")
        if "PCS_FIXTURES_DIR" in env:
            values["fixtures_dir"] = Path(env["PCS_FIXTURES_DIR"]).expanduser()
        if "PCS_DOCUMENT_URL" in env:
            values["document_url_template"] = env["PCS_DOCUMENT_URL"]
        values.update({k: v for k, v in overrides.items() if v is not None})
        return cls(**values)

    @staticmethod
    def _file_values(env: dict[str, str], config_path: Path | str | None) -> dict[str, Any]:
        path = Path(config_path or env.get("PCS_CONFIG", "~/.config/pcs/config.json")).expanduser()
        if not path.is_file():
            if config_path is not None or "PCS_CONFIG" in env:
                raise ValueError(f"config file not found: {path}")
            return {}
        data = json.loads(path.read_text(encoding="utf-8"))
        if not isinstance(data, dict):
            raise ValueError(f"config file must hold a JSON object: {path}")
        known = {f.name for f in fields(ClientConfig)}
        unknown = sorted(set(data) - known)
        if unknown:
            raise ValueError(f"unknown config keys in {path}: {', '.join(unknown)}")
        values = dict(data)
        for key in ("cache_dir", "fixtures_dir"):
            if key in values and values[key] is not None:
                values[key] = Path(values[key]).expanduser()
        return values

    def resolved_dialect(self) -> ApiDialect:
        try:
            dialect = DIALECTS[self.dialect]
        except KeyError:
            raise ValueError(f"unknown API dialect: {self.dialect!r}") from None
        if self.base_url:
            dialect = replace(dialect, base_url=self.base_url)
        return dialect

    def document_url(self, patent_id: str) -> str:
        return self.document_url_template.format(id=patent_id)


@dataclass(frozen=True)
class RequestSpec:
    url: str
    params: dict[str, str]


def build_api_request(
    query: Query,
    page: int,
    page_size: int,
    dialect: ApiDialect = LEGACY_PATENTSVIEW,
) -> RequestSpec:
    """Build the GET request for one result page.

    The filter ORs every clause against both the title and the abstract
    field, so a 4-clause query produces 8 branches.
    """
    if page < 1:
        raise ValueError("page numbers start at 1")
    if not 1 <= page_size <= API_MAX_PAGE_SIZE:
        raise ValueError(f"page_size must be in 1..{API_MAX_PAGE_SIZE}")
    branches = []
    for clause in query.clauses:
        op = dialect.phrase_op if clause.kind == PHRASE else dialect.keyword_op
        for search_field in (dialect.title_search_field, dialect.abstract_search_field):
            branches.append({op: {search_field: clause.text}})
    params = {
        dialect.query_param: json.dumps({"_or": branches}, separators=(",", ":")),
        dialect.fields_param: json.dumps(
            [
                dialect.id_field,
                dialect.date_field,
                dialect.title_field,
                dialect.cited_id_field,
                dialect.cited_date_field,
            ],
            separators=(",", ":"),
        ),
        dialect.options_param: json.dumps(
            {dialect.page_param: page, dialect.per_page_param: page_size},
            separators=(",", ":"),
        ),
    }
    return RequestSpec(url=dialect.base_url, params=params)


def _parse_grant_year(value: Any) -> int | None:
    if not value:
        return None
    try:
        year = datetime.strptime(str(value)[:10], "%Y-%m-%d").year
    except ValueError:
        return None
    if not MIN_PLAUSIBLE_YEAR <= year <= date.today().year:
        return None
    return year


def _parse_patent_entry(entry: Any, dialect: ApiDialect) -> CitingPatent:
    if not isinstance(entry, dict):
        raise ApiSchemaMismatchError(f"patent entry is not an object: {entry!r}")
    raw_id = entry.get(dialect.id_field)
    raw_date = entry.get(dialect.date_field)
    if raw_id is None or raw_date is None:
        raise ApiSchemaMismatchError(
            f"patent entry lacks {dialect.id_field!r}/{dialect.date_field!r}: {sorted(entry)}"
        )
    try:
        patent_id = normalize_patent_id(raw_id)
        grant_date = date.fromisoformat(str(raw_date)[:10])
    except ValueError as exc:
        raise ApiSchemaMismatchError(f"unparseable patent entry: {exc}") from exc

    cited: list[CitedReference] = []
    seen: set[str] = set()
    raw_cited = entry.get(dialect.cited_key) or []
    if not isinstance(raw_cited, list):
        raise ApiSchemaMismatchError(f"{dialect.cited_key!r} is not a list")
    for ref in raw_cited:
        if not isinstance(ref, dict):
            continue
        raw_ref_id = ref.get(dialect.cited_id_field)
        if raw_ref_id is None:
            continue
        try:
            ref_id = normalize_patent_id(raw_ref_id)
        except ValueError:
            continue
        if ref_id in seen:
            continue
        seen.add(ref_id)
        cited.append(
            CitedReference(
                cited_id=ref_id,
                grant_year=_parse_grant_year(ref.get(dialect.cited_date_field)),
            )
        )
    return CitingPatent(
        id=patent_id,
        title=str(entry.get(dialect.title_field) or ""),
        grant_date=grant_date,
        cited=tuple(cited),
    )


class PatentSearchClient:
    """Pages through all matching patents; caches by canonical query."""

    def __init__(
        self,
        config: ClientConfig | None = None,
        session: requests.Session | None = None,
        sleep=time.sleep,
    ):
        self.config = config or ClientConfig()
        self._session = session
        self._sleep = sleep
        self.cache = cache_store.FileCache(self.config.cache_dir)

    @property
    def session(self) -> requests.Session:
        if self._session is None:
            self._session = requests.Session()
        return self._session

    def fetch_all(self, query: Query) -> FetchResult:
        """Fetch every matching patent, from cache when possible.

        Raises PageCapExceededError instead of silently returning a partial
        result set, ApiUnreachableError after bounded retries, and
        ApiSchemaMismatchError when responses lack required fields.
        """
        canonical = query.canonical()
        key = cache_store.make_key(canonical, self.config.dialect, self.config.page_size)
        if not self.config.no_cache:
            entry = self.cache.get(key)
            if entry is not None:
                log.debug("cache hit for %s", canonical)
                return replace(entry.payload, source=SOURCE_CACHE)

        result = self._fetch_live(query)
        if not self.config.no_cache:
            entry = cache_store.CacheEntry(
                key=key,
                created_at=datetime.now(timezone.utc).isoformat(timespec="seconds"),
                api_snapshot_date=date.today().isoformat(),
                query=canonical,
                payload=result,
            )
            self.cache.put(key, entry)
        return result

    def snapshot_date_for(self, query: Query) -> str | None:
        """Snapshot date recorded with the cached entry for this query, if any."""
        key = cache_store.make_key(
            query.canonical(), self.config.dialect, self.config.page_size
        )
        entry = self.cache.get(key)
        return entry.api_snapshot_date if entry else None

    def load_fixture(self, name: str) -> tuple[FetchResult, cache_store.CacheEntry]:
        """Load a named bundled or external fixture recorded in cache format."""
        path = self._fixture_path(name)
        if path is None:
            raise UnknownFixtureError(f"no fixture named {name!r}")
        entry = cache_store.load_entry(path)
        return replace(entry.payload, source=SOURCE_FIXTURE), entry

    def _fixture_path(self, name: str) -> Path | None:
        if any(sep in name for sep in ("/", "\\", "..")):
            raise UnknownFixtureError(f"invalid fixture name {name!r}")
        filename = f"{name}{cache_store.SUFFIX}"
        if self.config.fixtures_dir is not None:
            candidate = Path(self.config.fixtures_dir) / filename
            return candidate if candidate.is_file() else None
        packaged = resources.files("pcs").joinpath("fixtures", filename)
        if packaged.is_file():
            with resources.as_file(packaged) as real_path:
                return Path(real_path)
        return None

    def _fetch_live(self, query: Query) -> FetchResult:
        dialect = self.config.resolved_dialect()
        patents: list[CitingPatent] = []
        seen_ids: set[str] = set()
        total = 0
        page = 0
        while True:
            page += 1
            if page > 1:
                self._sleep(self.config.inter_page_delay)
            spec = build_api_request(query, page, self.config.page_size, dialect)
            data = self._get_page(spec)
            raw_patents = data.get(dialect.patents_key)
            if raw_patents is None:
                raw_patents = []
            if not isinstance(raw_patents, list):
                raise ApiSchemaMismatchError(f"{dialect.patents_key!r} is not a list")
            if dialect.total_key not in data:
                raise ApiSchemaMismatchError(f"response lacks {dialect.total_key!r}")
            total = int(data[dialect.total_key])
            pages_needed = max(1, -(-total // self.config.page_size))
            if pages_needed > self.config.page_cap:
                raise PageCapExceededError(
                    f"{total} matches need {pages_needed} pages "
                    f"(cap {self.config.page_cap}); narrow the query or raise the cap"
                )
            for entry in raw_patents:
                patent = _parse_patent_entry(entry, dialect)
                if patent.id in seen_ids:
                    continue
                seen_ids.add(patent.id)
                patents.append(patent)
            # pages_needed also bounds misbehaving servers that repeat pages
            if len(patents) >= total or not raw_patents or page >= pages_needed:
                break
        return FetchResult(
            patents=patents,
            total_reported=total,
            pages_fetched=page,
            source=SOURCE_LIVE,
        )

    def _get_page(self, spec: RequestSpec) -> dict[str, Any]:
        last_error: Exception | None = None
        for attempt in range(self.config.retries + 1):
            if attempt:
                self._sleep(self.config.retry_delay * 2 ** (attempt - 1))
            try:
                response = self.session.get(
                    spec.url, params=spec.params, timeout=self.config.timeout
                )
            except requests.RequestException as exc:
                last_error = exc
                continue
            if response.status_code in RETRYABLE_STATUS:
                last_error = ApiUnreachableError(
                    f"HTTP {response.status_code} from {spec.url}"
                )
                continue
            if response.status_code != 200:
                raise ApiUnreachableError(
                    f"HTTP {response.status_code} from {spec.url}"
                )
            try:
                data = response.json()
            except ValueError as exc:
                raise ApiSchemaMismatchError(f"response is not JSON: {exc}") from exc
            if not isinstance(data, dict):
                raise ApiSchemaMismatchError("response is not a JSON object")
            return data
        raise ApiUnreachableError(
            f"gave up after {self.config.retries + 1} attempts: {last_error}"
        )
