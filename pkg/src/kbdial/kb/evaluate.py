"""Query evaluation over the in-memory store.

Bag-semantics nested-loop joins over index-selected candidates, with the
patterns greedily reordered by estimated selectivity. Filters run after the
join; ORDER BY is a stable sort; DISTINCT, OFFSET/LIMIT, and the result cap
apply afterwards, in that order.
"""

from __future__ import annotations

import re
from dataclasses import dataclass
from typing import Iterator

from .sparql import CountProjection, FilterComparison, SelectQuery, TriplePattern
from .store import KnowledgeBase
from .terms import Iri, Literal, Term, Triple, Variable

DEFAULT_RESULT_CAP = 2000
DEFAULT_WORK_BUDGET = 2_000_000

_ISO_DATE_PREFIX = re.compile(r"^\d{4}-\d{2}-\d{2}")


class EvalError(ValueError):
    pass


class ResourceLimitError(EvalError):
    pass


@dataclass
class ResultTable:
    variables: tuple[str, ...]
    rows: list[tuple[Term, ...]]
    truncated: bool = False


Binding = dict[str, Term]


def evaluate(
    kb: KnowledgeBase,
    query: SelectQuery,
    result_cap: int = DEFAULT_RESULT_CAP,
    work_budget: int = DEFAULT_WORK_BUDGET,
) -> ResultTable:
    budget = [work_budget]
    solutions = list(_join(kb, _plan(kb, query.patterns), budget))
    solutions = [b for b in solutions if _passes_filters(b, query.filters)]

    if query.order_by is not None:
        var = query.order_by.variable.name
        solutions.sort(key=lambda b: _order_key(b[var]), reverse=not query.order_by.ascending)

    if isinstance(query.projection, CountProjection):
        proj = query.projection
        if proj.distinct:
            count = len({b[proj.variable.name] for b in solutions})
        else:
            count = len(solutions)
        rows: list[tuple[Term, ...]] = [(Literal(str(count), datatype="xsd:integer"),)]
        variables = (proj.alias.name,)
    else:
        variables = tuple(v.name for v in query.projection)
        rows = [tuple(b[name] for name in variables) for b in solutions]
        if query.distinct:
            rows = list(dict.fromkeys(rows))

    if query.offset:
        rows = rows[query.offset :]
    if query.limit is not None:
        rows = rows[: query.limit]

    truncated = len(rows) > result_cap
    if truncated:
        rows = rows[:result_cap]
    return ResultTable(variables=variables, rows=rows, truncated=truncated)


# -- join planning and execution ----------------------------------------


def _plan(kb: KnowledgeBase, patterns: tuple[TriplePattern, ...]) -> list[TriplePattern]:
    remaining = list(enumerate(patterns))
    bound: set[str] = set()
    ordered: list[TriplePattern] = []
    while remaining:
        best = min(
            remaining,
            key=lambda item: (_estimate(kb, item[1], bound), item[0]),
        )
        remaining.remove(best)
        ordered.append(best[1])
        bound.update(v.name for v in best[1].variables())
    return ordered


def _estimate(kb: KnowledgeBase, pattern: TriplePattern, bound: set[str]) -> float:
    s, p, o = pattern.subject, pattern.predicate, pattern.object
    s_const = isinstance(s, Iri)
    p_const = isinstance(p, Iri)
    o_const = not isinstance(o, Variable)
    if s_const and p_const:
        base = len(kb.by_sp.get((s.value, p.value), ()))
    elif p_const and o_const:
        base = len(kb.by_po.get((p.value, o), ()))
    elif s_const:
        base = len(kb.by_s.get(s.value, ()))
    elif o_const:
        base = len(kb.by_o.get(o, ()))
    elif p_const:
        base = len(kb.by_p.get(p.value, ()))
    else:
        base = len(kb.triples)
    # A position held by an already-bound variable will be constant at
    # execution time; credit it without knowing the actual value.
    credit = sum(
        1
        for term in (s, p, o)
        if isinstance(term, Variable) and term.name in bound
    )
    return base / (4.0**credit)


def _join(kb: KnowledgeBase, patterns: list[TriplePattern], budget: list[int]) -> Iterator[Binding]:
    if not patterns:
        yield {}
        return

    def extend(binding: Binding, depth: int) -> Iterator[Binding]:
        if depth == len(patterns):
            yield binding
            return
        for extended in _match(kb, patterns[depth], binding, budget):
            yield from extend(extended, depth + 1)

    yield from extend({}, 0)


def _match(
    kb: KnowledgeBase, pattern: TriplePattern, binding: Binding, budget: list[int]
) -> Iterator[Binding]:
    s = _resolve(pattern.subject, binding)
    p = _resolve(pattern.predicate, binding)
    o = _resolve(pattern.object, binding)

    # A subject or predicate slot resolved to a literal can never match.
    if (s is not None and not isinstance(s, Iri)) or (p is not None and not isinstance(p, Iri)):
        return

    if s is not None and p is not None:
        candidates = kb.by_sp.get((s.value, p.value), ())
    elif p is not None and o is not None:
        candidates = kb.by_po.get((p.value, o), ())
    elif s is not None:
        candidates = kb.by_s.get(s.value, ())
    elif o is not None:
        candidates = kb.by_o.get(o, ())
    elif p is not None:
        candidates = kb.by_p.get(p.value, ())
    else:
        candidates = kb.triples

    for triple in candidates:
        budget[0] -= 1
        if budget[0] < 0:
            raise ResourceLimitError("join work budget exceeded")
        extended = _unify(pattern, triple, binding)
        if extended is not None:
            yield extended


def _resolve(term: Term, binding: Binding) -> Term | None:
    if isinstance(term, Variable):
        return binding.get(term.name)
    return term


def _unify(pattern: TriplePattern, triple: Triple, binding: Binding) -> Binding | None:
    result: Binding | None = None
    for pattern_term, actual in (
        (pattern.subject, triple.subject),
        (pattern.predicate, triple.predicate),
        (pattern.object, triple.object),
    ):
        if isinstance(pattern_term, Variable):
            current = (result or binding).get(pattern_term.name)
            if current is None:
                if result is None:
                    result = dict(binding)
                result[pattern_term.name] = actual
            elif current != actual:
                return None
        elif pattern_term != actual:
            return None
    # No new bindings: the caller never mutates, so reuse the input dict.
    return result if result is not None else binding


# -- filters and ordering ------------------------------------------------


def _passes_filters(binding: Binding, filters: tuple[FilterComparison, ...]) -> bool:
    for flt in filters:
        left = binding.get(flt.left.name)
        right = binding.get(flt.right.name) if isinstance(flt.right, Variable) else flt.right
        if left is None or right is None:
            return False
        verdict = _compare(left, flt.op, right)
        if verdict is not True:
            return False
    return True


def _compare(left: Term, op: str, right: Term) -> bool | None:
    """Three-way comparison outcome; None means incoercible (row dropped)."""
    if isinstance(left, Iri) and isinstance(right, Iri):
        if op == "=":
            return left.value == right.value
        if op == "!=":
            return left.value != right.value
        return None
    if not (isinstance(left, Literal) and isinstance(right, Literal)):
        return None

    ln = _as_number(left.lexical)
    rn = _as_number(right.lexical)
    if ln is not None and rn is not None:
        return _apply_op(ln, rn, op)
    if _ISO_DATE_PREFIX.match(left.lexical) and _ISO_DATE_PREFIX.match(right.lexical):
        return _apply_op(left.lexical, right.lexical, op)
    if ln is None and rn is None:
        return _apply_op(left.lexical, right.lexical, op)
    return None


def _apply_op(a, b, op: str) -> bool:
    if op == "=":
        return a == b
    if op == "!=":
        return a != b
    if op == "<":
        return a < b
    if op == "<=":
        return a <= b
    if op == ">":
        return a > b
    return a >= b


def _as_number(text: str) -> float | None:
    try:
        return float(text)
    except ValueError:
        return None


def _order_key(term: Term) -> tuple[int, float | str]:
    if isinstance(term, Literal):
        number = _as_number(term.lexical)
        if number is not None:
            return (0, number)
        if _ISO_DATE_PREFIX.match(term.lexical):
            return (1, term.lexical)
        return (2, term.lexical)
    if isinstance(term, Iri):
        return (3, term.value)
    return (4, str(term))
