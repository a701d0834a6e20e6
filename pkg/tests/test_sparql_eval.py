from __future__ import annotations

import random
from collections import Counter

import pytest

from kbdial.kb import (
    Literal,
    ResourceLimitError,
    evaluate,
    parse_sparql,
)

from .oracle import brute_force_rows
from .randgen import random_kb, random_query


def _multiset(rows):
    return Counter(rows)


def test_three_hop_tom_hanks(toy_kb):
    q = parse_sparql(
        "SELECT ?f WHERE { ?th type.object.name \"Tom Hanks\"@en . "
        "?th film.actor.film ?c . ?c film.performance.film ?m . ?m type.object.name ?f . }"
    )
    table = evaluate(toy_kb, q)
    assert table.rows == [(Literal("Nothing in Common", lang="en"),)]
    assert not table.truncated


def test_unused_predicate_yields_empty_table(toy_kb):
    q = parse_sparql("SELECT ?x WHERE { ?x no.such.predicate ?y . }")
    assert evaluate(toy_kb, q).rows == []


def test_count_over_films(movies_kb):
    q = parse_sparql(
        'SELECT (COUNT(DISTINCT ?m) AS ?n) WHERE { '
        '?a type.object.name "Tom Hanks"@en . ?a film.actor.film ?c . '
        '?c film.performance.film ?m . }'
    )
    table = evaluate(movies_kb, q)
    assert table.rows == [(Literal("5", datatype="xsd:integer"),)]
    assert table.variables == ("n",)


def test_filter_drops_incoercible_rows(movies_kb):
    # names are strings, the constant is numeric: every row drops, no crash
    q = parse_sparql("SELECT ?n WHERE { ?f type.object.name ?n . FILTER(?n < 10) }")
    assert evaluate(movies_kb, q).rows == []


def test_order_by_desc_limit_superlative(movies_kb):
    q = parse_sparql(
        "SELECT ?f WHERE { ?m film.film.runtime ?r . ?m type.object.name ?f . } "
        "ORDER BY DESC(?r) LIMIT 1"
    )
    top = evaluate(movies_kb, q).rows
    assert top == [(Literal("Forrest Gump", lang="en"),)]

    full = parse_sparql(
        "SELECT ?f ?r WHERE { ?m film.film.runtime ?r . ?m type.object.name ?f . } "
        "ORDER BY DESC(?r)"
    )
    ordered = evaluate(movies_kb, full).rows
    assert ordered[0][0] == top[0][0]
    runtimes = [float(row[1].lexical) for row in ordered]
    assert runtimes == sorted(runtimes, reverse=True)


def test_date_comparison_filter(movies_kb):
    q = parse_sparql(
        'SELECT ?f WHERE { ?m film.film.release_date ?d . ?m type.object.name ?f . '
        'FILTER(?d > "1993-01-01"^^xsd:date) } ORDER BY ?f'
    )
    names = [row[0].lexical for row in evaluate(movies_kb, q).rows]
    assert names == ["Forrest Gump", "Sleepless in Seattle", "The Polar Express"]


def test_distinct_idempotent(movies_kb):
    q = parse_sparql("SELECT DISTINCT ?p WHERE { ?s ?p ?o . }")
    rows = evaluate(movies_kb, q).rows
    assert len(rows) == len(set(rows))


def test_offset_and_result_cap(movies_kb):
    q = parse_sparql("SELECT ?s WHERE { ?s ?p ?o . }")
    capped = evaluate(movies_kb, q, result_cap=5)
    assert len(capped.rows) == 5 and capped.truncated


def test_work_budget_enforced(movies_kb):
    q = parse_sparql("SELECT ?a WHERE { ?a ?b ?c . ?d ?e ?f . ?g ?h ?i . }")
    with pytest.raises(ResourceLimitError):
        evaluate(movies_kb, q, work_budget=50)


def test_join_order_independence(movies_kb):
    from kbdial.kb import SelectQuery

    q = parse_sparql(
        'SELECT ?f ?ch WHERE { ?a type.object.name "Tom Hanks"@en . '
        "?a film.actor.film ?c . ?c film.performance.film ?f . ?c film.performance.character ?ch . }"
    )
    base = _multiset(evaluate(movies_kb, q).rows)
    rng = random.Random(7)
    patterns = list(q.patterns)
    for _ in range(5):
        rng.shuffle(patterns)
        permuted = SelectQuery(
            projection=q.projection,
            patterns=tuple(patterns),
            distinct=q.distinct,
            filters=q.filters,
        )
        assert _multiset(evaluate(movies_kb, permuted).rows) == base


def test_matches_brute_force_on_random_cases():
    rng = random.Random(2024)
    for case in range(120):
        kb = random_kb(rng, rng.randint(5, 60))
        query = random_query(rng, kb)
        expected = _multiset(brute_force_rows(kb, query))
        got = evaluate(kb, query, result_cap=10**6, work_budget=10**7)
        assert _multiset(got.rows) == expected, f"case {case}: {query}"
