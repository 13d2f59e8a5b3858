"""On-disk store for fetched results, keyed by canonical query + dialect.

One JSON file per entry (`<cache_dir>/<key>.pcs-cache`), self-describing:
format name, format version, the canonical query, snapshot metadata, a
sha256 checksum of the payload, and the payload itself. Bundled test
fixtures use the identical format, so fixture replay exercises the same
decode path as cache hits.

Writes are atomic (write temp file, then rename); corrupt entries are
reported via logging and treated as absent.
"""

from __future__ import annotations

import errno
import hashlib
import json
import logging
import os
import tempfile
from dataclasses import dataclass
from datetime import date
from pathlib import Path
from typing import TYPE_CHECKING, Any

from .errors import CorruptEntryError, PermissionDeniedError, StorageFullError, CacheError

if TYPE_CHECKING:
    from .client import FetchResult

log = logging.getLogger(__name__)

FORMAT_NAME = "pcs-cache"
FORMAT_VERSION = 1
SUFFIX = ".pcs-cache"


def make_key(canonical_query: str, dialect: str, page_size: int) -> str:
    """Stable cache key for a (query, dialect, page size) combination."""
    material = f"{canonical_query}\n{dialect}\n{page_size}".encode("utf-8")
    return hashlib.sha256(material).hexdigest()[:20]


@dataclass(frozen=True)
class CacheEntry:
    key: str
    created_at: str
    api_snapshot_date: str
    query: str
    payload: "FetchResult"


def encode_fetch_result(result: "FetchResult") -> dict[str, Any]:
    return {
        "total_reported": result.total_reported,
        "pages_fetched": result.pages_fetched,
        "source": result.source,
        "patents": [
            {
                "id": p.id,
                "title": p.title,
                "grant_date": p.grant_date.isoformat(),
                "cited": [
                    {"id": ref.cited_id, "year": ref.grant_year} for ref in p.cited
                ],
            }
            for p in result.patents
        ],
    }


def decode_fetch_result(data: dict[str, Any]) -> "FetchResult":
    from .client import CitedReference, CitingPatent, FetchResult

    try:
        patents = [
            CitingPatent(
                id=p["id"],
                title=p["title"],
                grant_date=date.fromisoformat(p["grant_date"]),
                cited=tuple(
                    CitedReference(cited_id=ref["id"], grant_year=ref["year"])
                    for ref in p["cited"]
                ),
            )
            for p in data["patents"]
        ]
        return FetchResult(
            patents=patents,
            total_reported=data["total_reported"],
            pages_fetched=data["pages_fetched"],
            source=data["source"],
        )
    except (KeyError, TypeError, ValueError) as exc:
        raise CorruptEntryError(f"malformed payload: {exc}") from exc


def _payload_checksum(payload: dict[str, Any]) -> str:
    canonical = json.dumps(payload, sort_keys=True, separators=(",", ":"))
    return "sha256:" + hashlib.sha256(canonical.encode("utf-8")).hexdigest()


def entry_to_json(entry: CacheEntry) -> str:
    payload = encode_fetch_result(entry.payload)
    document = {
        "format": FORMAT_NAME,
        "version": FORMAT_VERSION,
        "key": entry.key,
        "created_at": entry.created_at,
        "api_snapshot_date": entry.api_snapshot_date,
        "query": entry.query,
        "checksum": _payload_checksum(payload),
        "payload": payload,
    }
    return json.dumps(document, sort_keys=True, indent=1)


def entry_from_json(text: str) -> CacheEntry:
    try:
        document = json.loads(text)
    except json.JSONDecodeError as exc:
        raise CorruptEntryError(f"not valid JSON: {exc}") from exc
    if not isinstance(document, dict) or document.get("format") != FORMAT_NAME:
        raise CorruptEntryError("missing pcs-cache format marker")
    if document.get("version") != FORMAT_VERSION:
        raise CorruptEntryError(f"unsupported format version: {document.get('version')!r}")
    payload = document.get("payload")
    if not isinstance(payload, dict):
        raise CorruptEntryError("missing payload")
    recorded = document.get("checksum")
    if recorded != _payload_checksum(payload):
        raise CorruptEntryError("checksum mismatch")
    return CacheEntry(
        key=document.get("key", ""),
        created_at=document.get("created_at", ""),
        api_snapshot_date=document.get("api_snapshot_date", ""),
        query=document.get("query", ""),
        payload=decode_fetch_result(payload),
    )


def load_entry(path: Path) -> CacheEntry:
    """Read and validate one entry file; raises CorruptEntryError on damage."""
    try:
        text = path.read_text(encoding="utf-8")
    except OSError as exc:
        raise CorruptEntryError(f"unreadable entry {path}: {exc}") from exc
    return entry_from_json(text)


class FileCache:
    """Directory of cache entries; safe for concurrent readers and a writer per key."""

    def __init__(self, directory: Path | str):
        self.directory = Path(directory)

    def path_for(self, key: str) -> Path:
        return self.directory / f"{key}{SUFFIX}"

    def get(self, key: str) -> CacheEntry | None:
        """Return the stored entry, or None when absent or corrupt."""
        path = self.path_for(key)
        if not path.exists():
            return None
        try:
            return load_entry(path)
        except CorruptEntryError as exc:
            log.warning("corrupt cache entry %s treated as absent: %s", path.name, exc)
            return None

    def put(self, key: str, entry: CacheEntry) -> Path:
        """Atomically persist the entry; a reader never sees a partial file."""
        path = self.path_for(key)
        text = entry_to_json(entry)
        try:
            self.directory.mkdir(parents=True, exist_ok=True)
            fd, tmp_name = tempfile.mkstemp(
                prefix=f".{key}.", suffix=".tmp", dir=self.directory
            )
            try:
                with os.fdopen(fd, "w", encoding="utf-8") as handle:
                    handle.write(text)
                os.replace(tmp_name, path)
            except BaseException:
                try:
                    os.unlink(tmp_name)
                except OSError:
                    pass
                raise
        except OSError as exc:
            raise _map_os_error(exc) from exc
        return path

    def entries(self) -> list[tuple[str, Path]]:
        if not self.directory.is_dir():
            return []
        return sorted(
            (p.name[: -len(SUFFIX)], p)
            for p in self.directory.iterdir()
            if p.name.endswith(SUFFIX)
        )

    def clear(self) -> int:
        removed = 0
        for _, path in self.entries():
            path.unlink()
            removed += 1
        return removed


def _map_os_error(exc: OSError) -> CacheError:
    if exc.errno == errno.ENOSPC:
        return StorageFullError(str(exc))
    if exc.errno in (errno.EACCES, errno.EPERM, errno.EROFS):
        return PermissionDeniedError(str(exc))
    return CacheError(str(exc))
