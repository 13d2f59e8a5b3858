"""Free-text search queries: comma-separated keywords and quoted phrases.

A query like ``RNAi, "interference RNA", siRNA`` is an OR over its clauses.
Commas inside double quotes do not split clauses; a quoted segment becomes a
phrase clause, a bare segment a keyword clause. Matching downstream is
case-insensitive, so duplicate clauses are dropped case-insensitively here.
"""

from __future__ import annotations

from dataclasses import dataclass, field

from .errors import EmptyQueryError, UnterminatedPhraseError

KEYWORD = "keyword"
PHRASE = "phrase"


@dataclass(frozen=True)
class QueryClause:
    kind: str
    text: str

    def __post_init__(self) -> None:
        if self.kind not in (KEYWORD, PHRASE):
            raise ValueError(f"unknown clause kind: {self.kind!r}")
        if not self.text or self.text != self.text.strip():
            raise ValueError("clause text must be non-empty and trimmed")
        if self.kind == PHRASE and '"' in self.text:
            raise ValueError("phrase text may not contain double quotes")


@dataclass(frozen=True)
class Query:
    clauses: tuple[QueryClause, ...]
    raw: str = field(compare=False, default="")

    def __post_init__(self) -> None:
        if not self.clauses:
            raise EmptyQueryError("query has no clauses")

    def canonical(self) -> str:
        """Render the query in its canonical form (the cache-key input)."""
        return render_query(self)


def render_query(query: Query) -> str:
    parts = []
    for clause in query.clauses:
        if clause.kind == PHRASE:
            parts.append(f'"{clause.text}"')
        else:
            parts.append(clause.text)
    return ", ".join(parts)


def parse_query(raw: str) -> Query:
    """Parse a raw search string into an OR-query over keywords and phrases.

    Splits on commas outside double quotes, trims each segment, drops empty
    segments, and deduplicates clauses case-insensitively (first occurrence
    wins). Raises EmptyQueryError when nothing usable remains and
    UnterminatedPhraseError for unbalanced or non-wrapping quotes.
    """
    segments: list[str] = []
    buf: list[str] = []
    in_quote = False
    for ch in raw:
        if ch == '"':
            in_quote = not in_quote
            buf.append(ch)
        elif ch == "," and not in_quote:
            segments.append("".join(buf))
            buf = []
        else:
            buf.append(ch)
    if in_quote:
        raise UnterminatedPhraseError(f"unterminated double quote in query: {raw!r}")
    segments.append("".join(buf))

    clauses: list[QueryClause] = []
    seen: set[tuple[str, str]] = set()
    for segment in segments:
        text = segment.strip()
        if not text:
            continue
        if '"' in text:
            if len(text) >= 2 and text.startswith('"') and text.endswith('"') and '"' not in text[1:-1]:
                inner = text[1:-1].strip()
                if not inner:
                    continue
                clause = QueryClause(PHRASE, inner)
            else:
                raise UnterminatedPhraseError(
                    f"quotes must wrap a whole clause: {text!r}"
                )
        else:
            clause = QueryClause(KEYWORD, text)
        fingerprint = (clause.kind, clause.text.lower())
        if fingerprint in seen:
            continue
        seen.add(fingerprint)
        clauses.append(clause)

    if not clauses:
        raise EmptyQueryError(f"no usable clause in query: {raw!r}")
    return Query(clauses=tuple(clauses), raw=raw)
