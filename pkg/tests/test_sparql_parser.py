from __future__ import annotations

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from kbdial.kb import (
    CountProjection,
    ParseError,
    parse_sparql,
    serialize_query,
)
from kbdial.kb.terms import Iri, Literal, Variable


def test_single_pattern_projection():
    q = parse_sparql('SELECT ?e WHERE { ?e type.object.name "Tom Hanks"@en . }')
    assert q.projection == (Variable("e"),)
    assert len(q.patterns) == 1
    assert q.patterns[0].object == Literal("Tom Hanks", lang="en")


def test_count_aggregate():
    q = parse_sparql("SELECT (COUNT(?x) AS ?c) WHERE { ?x a :Film . }")
    assert isinstance(q.projection, CountProjection)
    assert q.projection.variable == Variable("x")
    assert q.projection.alias == Variable("c")
    assert q.patterns[0].predicate == Iri("rdf:type")


def test_unsupported_construct_named():
    with pytest.raises(ParseError, match="unsupported construct: OPTIONAL"):
        parse_sparql("SELECT ?e WHERE { ?e OPTIONAL { ?e ?p ?o } }")
    with pytest.raises(ParseError, match="unsupported construct: UNION"):
        parse_sparql("SELECT ?e WHERE { { ?e ?p ?o } UNION { ?e ?p ?o } }")


def test_undeclared_prefix_named():
    with pytest.raises(ParseError, match="undeclared prefix: foo"):
        parse_sparql("SELECT ?e WHERE { ?e foo:bar ?o . }")


def test_declared_prefix_expands_to_canonical():
    q = parse_sparql(
        'PREFIX fb: <http://rdf.freebase.com/ns/>\n'
        'SELECT ?e WHERE { ?e fb:type.object.name "X"@en . }'
    )
    assert q.patterns[0].predicate == Iri("type.object.name")


def test_predeclared_wikidata_prefixes():
    q = parse_sparql("SELECT ?v WHERE { wd:Q1 p:P166 ?s . ?s ps:P166 ?v . }")
    assert q.patterns[0].subject == Iri("wd:Q1")
    assert q.patterns[1].predicate == Iri("ps:P166")


def test_filter_order_limit_offset():
    q = parse_sparql(
        "SELECT ?f ?r WHERE { ?f film.film.runtime ?r . FILTER(?r > 110) } "
        "ORDER BY DESC(?r) LIMIT 2 OFFSET 1"
    )
    assert q.filters[0].op == ">"
    assert q.filters[0].right == Literal("110", datatype="xsd:integer")
    assert q.order_by is not None and not q.order_by.ascending
    assert q.limit == 2 and q.offset == 1


def test_parse_error_carries_offset():
    with pytest.raises(ParseError) as info:
        parse_sparql('SELECT ?e WHERE { ?e type.object.name "unterminated }')
    assert info.value.offset > 0
    assert "unterminated string" in str(info.value)


def test_projected_variable_must_be_bound():
    with pytest.raises(ParseError, match=r"\?z not bound"):
        parse_sparql("SELECT ?z WHERE { ?a ?b ?c . }")


def test_roundtrip_examples():
    texts = [
        'SELECT ?e WHERE { ?e type.object.name "Tom Hanks"@en . }',
        "SELECT DISTINCT ?f WHERE { ?c film.performance.film ?f . } ORDER BY ?f LIMIT 3",
        "SELECT (COUNT(DISTINCT ?m) AS ?c) WHERE { ?s film.performance.film ?m . }",
        'PREFIX ex: <http://example.org/>\nSELECT ?x WHERE { ?x ex:p "a\\"b\\nc" . }',
        'SELECT ?v WHERE { wd:Q3 p:P166 ?st . ?st pq:P585 ?v . FILTER(?v >= 1900) }',
    ]
    for text in texts:
        first = parse_sparql(text)
        again = parse_sparql(serialize_query(first))
        assert again == first, text


_literal_text = st.text(
    alphabet=st.characters(blacklist_categories=("Cs",), blacklist_characters='\x00'),
    max_size=20,
)


@settings(max_examples=100, deadline=None)
@given(name=_literal_text, lang=st.sampled_from([None, "en", "en-US"]))
def test_roundtrip_literal_escaping(name, lang):
    from kbdial.kb import SelectQuery, TriplePattern

    query = SelectQuery(
        projection=(Variable("x"),),
        patterns=(TriplePattern(Variable("x"), Iri("p0"), Literal(name, lang=lang)),),
    )
    assert parse_sparql(serialize_query(query)) == query
