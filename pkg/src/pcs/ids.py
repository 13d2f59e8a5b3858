"""US patent number normalization and ordering.

Canonical form: uppercase, no commas or spaces, no "US" country prefix, no
trailing kind code — digits with at most one leading letter prefix for
design/plant/reissue/SIR style numbers (D, PP, RE, H, T, AI, X).
"""

from __future__ import annotations

import re

_PREFIXES = "D|PP|RE|T|H|X|AI"
_CANONICAL_RE = re.compile(rf"^(?P<prefix>(?:{_PREFIXES})?)(?P<digits>\d+)$")
# country prefix, optional series prefix, digits, optional kind code (e.g. B2)
_RAW_RE = re.compile(rf"^(?:US)?(?P<prefix>(?:{_PREFIXES})?)(?P<digits>\d+)(?:[A-Z]\d?)?$")


def normalize_patent_id(raw: str) -> str:
    """Normalize a wire-format patent number, e.g. "US 6,506,559 B1" -> "6506559".

    Raises ValueError for values that are not recognizable patent numbers.
    """
    compact = re.sub(r"[\s,]+", "", str(raw)).upper()
    m = _RAW_RE.match(compact)
    if not m or not m.group("digits"):
        raise ValueError(f"not a patent number: {raw!r}")
    return f"{m.group('prefix')}{m.group('digits')}"


def is_canonical_patent_id(value: str) -> bool:
    return bool(_CANONICAL_RE.match(value))


def patent_sort_key(patent_id: str) -> tuple[str, int]:
    """Order patent ids numerically within their letter-prefix class.

    Plain utility numbers (empty prefix) sort before prefixed series, which
    gives a deterministic "smallest id" for tie-breaking.
    """
    m = _CANONICAL_RE.match(patent_id)
    if not m:
        raise ValueError(f"not a canonical patent id: {patent_id!r}")
    return (m.group("prefix"), int(m.group("digits")))
