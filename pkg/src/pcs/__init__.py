"""Patent citation spectroscopy: landmark-patent detection over backward citations."""

__version__ = "0.1.0"

from .aggregate import CorpusStats, YearBin, aggregate
from .client import (
    ApiDialect,
    CitedReference,
    CitingPatent,
    ClientConfig,
    FetchResult,
    PatentSearchClient,
    build_api_request,
)
from .pipeline import run_pipeline
from .query import Query, QueryClause, parse_query, render_query
from .spectrum import (
    LandmarkResult,
    Spectrum,
    build_spectrum,
    chance_odds,
    detrend,
    normalize,
    select_landmark,
)

__all__ = [
    "__version__",
    "ApiDialect",
    "CitedReference",
    "CitingPatent",
    "ClientConfig",
    "CorpusStats",
    "FetchResult",
    "LandmarkResult",
    "PatentSearchClient",
    "Query",
    "QueryClause",
    "Spectrum",
    "YearBin",
    "aggregate",
    "build_api_request",
    "build_spectrum",
    "chance_odds",
    "detrend",
    "normalize",
    "parse_query",
    "render_query",
    "run_pipeline",
    "select_landmark",
]
