"""Client for external SPARQL endpoints speaking the standard HTTP protocol.

Returns the same ResultTable shape as the embedded evaluator so both
backends satisfy one query interface.
"""

from __future__ import annotations

import httpx

from .evaluate import DEFAULT_RESULT_CAP, ResultTable
from .sparql import SelectQuery, serialize_query
from .store import canonical_iri
from .terms import Iri, Literal, Term

RESULTS_JSON = "application/sparql-results+json"


class BackendError(RuntimeError):
    def __init__(self, message: str, status: int | None = None):
        super().__init__(message)
        self.status = status


class ProtocolError(BackendError):
    pass


def query_backend(
    endpoint_url: str,
    query: SelectQuery | str,
    timeout: float = 30.0,
    result_cap: int = DEFAULT_RESULT_CAP,
    transport: httpx.BaseTransport | None = None,
) -> ResultTable:
    """Execute a query against an HTTP endpoint; rows beyond result_cap truncate."""
    text = query if isinstance(query, str) else serialize_query(query)
    try:
        with httpx.Client(timeout=timeout, transport=transport) as client:
            response = client.post(
                endpoint_url,
                data={"query": text},
                headers={"Accept": RESULTS_JSON},
            )
    except httpx.HTTPError as exc:
        raise BackendError(f"endpoint unreachable: {exc}") from exc
    if response.status_code != 200:
        raise BackendError(
            f"endpoint returned HTTP {response.status_code}", status=response.status_code
        )
    try:
        payload = response.json()
        variables = tuple(payload["head"]["vars"])
        bindings = payload["results"]["bindings"]
        rows = [_decode_row(row, variables) for row in bindings]
    except (KeyError, TypeError, ValueError) as exc:
        raise ProtocolError(f"malformed SPARQL results document: {exc}") from exc
    truncated = len(rows) > result_cap
    if truncated:
        rows = rows[:result_cap]
    return ResultTable(variables=variables, rows=rows, truncated=truncated)


def _decode_row(row: dict, variables: tuple[str, ...]) -> tuple[Term, ...]:
    return tuple(_decode_term(row[var]) for var in variables)


def _decode_term(cell: dict) -> Term:
    kind = cell["type"]
    value = cell["value"]
    if kind == "uri":
        return Iri(canonical_iri(value))
    if kind in ("literal", "typed-literal"):
        datatype = cell.get("datatype")
        return Literal(
            value,
            lang=cell.get("xml:lang"),
            datatype=canonical_iri(datatype) if datatype else None,
        )
    if kind == "bnode":
        return Iri("_:" + value)
    raise ValueError(f"unknown term type {kind!r}")


def encode_results(table: ResultTable) -> dict:
    """Render a ResultTable as a sparql-results+json document (server side)."""
    bindings = []
    for row in table.rows:
        entry: dict[str, dict] = {}
        for var, term in zip(table.variables, row):
            entry[var] = _encode_term(term)
        bindings.append(entry)
    return {"head": {"vars": list(table.variables)}, "results": {"bindings": bindings}}


def _encode_term(term: Term) -> dict:
    if isinstance(term, Iri):
        return {"type": "uri", "value": term.value}
    assert isinstance(term, Literal)
    out: dict[str, str] = {"type": "literal", "value": term.lexical}
    if term.lang:
        out["xml:lang"] = term.lang
    if term.datatype:
        out["datatype"] = term.datatype
    return out
