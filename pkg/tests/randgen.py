"""Seeded random KB / query generator for evaluator equivalence tests.

Queries are connected (each pattern shares a variable with an earlier one)
so the brute-force oracle stays tractable on KBs up to 200 triples.
"""

from __future__ import annotations

import random

from kbdial.kb import FilterComparison, KnowledgeBase, SchemaProfile, SelectQuery, TriplePattern
from kbdial.kb.terms import Iri, Literal, Term, Triple, Variable

_VAR_NAMES = ["a", "b", "c", "d", "e", "f"]


def random_kb(rng: random.Random, n_triples: int) -> KnowledgeBase:
    entities = [Iri(f"e{i}") for i in range(max(4, n_triples // 4))]
    predicates = [Iri(f"p{i}") for i in range(max(2, n_triples // 12))]
    literals: list[Literal] = (
        [Literal(str(i), datatype="xsd:integer") for i in range(12)]
        + [Literal(w) for w in ("red", "green", "blue", "cyan")]
        + [Literal(f"199{i}-0{i % 9 + 1}-1{i % 10}", datatype="xsd:date") for i in range(4)]
    )
    triples = set()
    for _ in range(n_triples):
        s = rng.choice(entities)
        p = rng.choice(predicates)
        o: Term = rng.choice(entities) if rng.random() < 0.6 else rng.choice(literals)
        triples.add(Triple(s, p, o))
    return KnowledgeBase(
        triples=tuple(sorted(triples, key=repr)),
        profile=SchemaProfile.PLAIN_RDF,
        name_property="rdfs:label",
        description_property=None,
        type_property="rdf:type",
        cvt_config=None,
    )


def random_query(rng: random.Random, kb: KnowledgeBase, max_patterns: int = 3) -> SelectQuery:
    n_patterns = rng.randint(1, max_patterns)
    patterns: list[TriplePattern] = []
    used_vars: list[Variable] = []
    var_pool = iter(_VAR_NAMES)

    for index in range(n_patterns):
        seed = rng.choice(kb.triples)
        slots: list[Term] = [seed.subject, seed.predicate, seed.object]
        # Replace one to three positions with variables.
        var_positions = rng.sample(range(3), rng.randint(1, 3))
        for pos in var_positions:
            if used_vars and rng.random() < 0.6:
                slots[pos] = rng.choice(used_vars)
            else:
                var = Variable(next(var_pool))
                used_vars.append(var)
                slots[pos] = var
        if index > 0 and not any(isinstance(t, Variable) and t in used_vars for t in slots):
            slots[rng.randrange(3)] = rng.choice(used_vars)
        patterns.append(TriplePattern(*slots))

    connected = sorted({v.name for p in patterns for v in p.variables()})
    projection = tuple(
        Variable(name)
        for name in rng.sample(connected, rng.randint(1, len(connected)))
    )

    filters: tuple[FilterComparison, ...] = ()
    if rng.random() < 0.5:
        left = Variable(rng.choice(connected))
        op = rng.choice(["=", "!=", "<", "<=", ">", ">="])
        if rng.random() < 0.7:
            right: Variable | Literal = Literal(str(rng.randint(0, 12)), datatype="xsd:integer")
        else:
            right = Variable(rng.choice(connected))
        filters = (FilterComparison(left, op, right),)

    return SelectQuery(
        projection=projection,
        patterns=tuple(patterns),
        distinct=rng.random() < 0.3,
        filters=filters,
    )
