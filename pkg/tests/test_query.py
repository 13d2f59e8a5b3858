"""Query parsing: comma-OR splitting, quoting, dedup, canonical rendering."""

import pytest
from hypothesis import given, strategies as st

from pcs.errors import EmptyQueryError, UnterminatedPhraseError
from pcs.query import KEYWORD, PHRASE, Query, QueryClause, parse_query, render_query


def kinds(query: Query) -> list[tuple[str, str]]:
    return [(c.kind, c.text) for c in query.clauses]


class TestParseQuery:
    def test_mixed_keywords_and_phrases(self):
        query = parse_query('RNAi, "interference RNA", siRNA, "RNA interference"')
        assert kinds(query) == [
            (KEYWORD, "RNAi"),
            (PHRASE, "interference RNA"),
            (KEYWORD, "siRNA"),
            (PHRASE, "RNA interference"),
        ]

    def test_single_keyword(self):
        assert kinds(parse_query("cholesterol")) == [(KEYWORD, "cholesterol")]

    def test_whitespace_and_empty_segments_dropped(self):
        assert kinds(parse_query('  a ,  , "b c" ')) == [(KEYWORD, "a"), (PHRASE, "b c")]

    def test_comma_inside_phrase_does_not_split(self):
        assert kinds(parse_query('"a, b", c')) == [(PHRASE, "a, b"), (KEYWORD, "c")]

    def test_duplicates_removed_case_insensitively(self):
        query = parse_query('RNAi, rnai, "RNA interference", "rna INTERFERENCE", RNAI')
        assert kinds(query) == [(KEYWORD, "RNAi"), (PHRASE, "RNA interference")]

    def test_keyword_and_phrase_with_same_text_are_distinct(self):
        assert kinds(parse_query('statin, "statin"')) == [
            (KEYWORD, "statin"),
            (PHRASE, "statin"),
        ]

    def test_empty_inputs_rejected(self):
        for raw in ("", "   ", ",,,", ' , "" , '):
            with pytest.raises(EmptyQueryError):
                parse_query(raw)

    def test_unterminated_quote_rejected(self):
        with pytest.raises(UnterminatedPhraseError):
            parse_query('RNAi, "interference RNA')

    def test_quotes_must_wrap_whole_clause(self):
        for raw in ('"a" b', 'a "b c"', '"a" "b"'):
            with pytest.raises(UnterminatedPhraseError):
                parse_query(raw)

    def test_raw_string_preserved_but_not_compared(self):
        a = parse_query("x , y")
        b = parse_query("x,y")
        assert a == b
        assert a.raw != b.raw


class TestCanonicalRendering:
    def test_render_shape(self):
        query = parse_query(' RNAi ,"RNA interference"')
        assert render_query(query) == 'RNAi, "RNA interference"'
        assert query.canonical() == render_query(query)

    def test_reparse_of_render_is_identity(self):
        query = parse_query('a, "b c", d')
        assert parse_query(render_query(query)) == query

    @given(
        st.lists(
            st.tuples(
                st.sampled_from([KEYWORD, PHRASE]),
                st.text(
                    alphabet=st.characters(
                        blacklist_characters='",', blacklist_categories=("Cs", "Cc")
                    ),
                    min_size=1,
                ).map(str.strip).filter(bool),
            ),
            min_size=1,
            max_size=6,
        )
    )
    def test_round_trip_property(self, clause_specs):
        clauses = tuple(QueryClause(kind, text) for kind, text in clause_specs)
        seen = set()
        deduped = []
        for clause in clauses:
            fp = (clause.kind, clause.text.lower())
            if fp not in seen:
                seen.add(fp)
                deduped.append(clause)
        query = Query(clauses=tuple(deduped), raw="")
        assert parse_query(render_query(query)) == query

    def test_clause_count_matches_segments_outside_quotes(self):
        raw = 'alpha, "beta, gamma", delta, epsilon'
        assert len(parse_query(raw).clauses) == 4


class TestClauseInvariants:
    def test_clause_text_must_be_trimmed(self):
        with pytest.raises(ValueError):
            QueryClause(KEYWORD, " padded ")

    def test_phrase_may_not_contain_quotes(self):
        with pytest.raises(ValueError):
            QueryClause(PHRASE, 'has " quote')

    def test_query_requires_clauses(self):
        with pytest.raises(EmptyQueryError):
            Query(clauses=(), raw="x")
