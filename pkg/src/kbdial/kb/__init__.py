"""Knowledge-base layer: terms, store, query parsing/evaluation, remote client."""

from .evaluate import (
    DEFAULT_RESULT_CAP,
    EvalError,
    ResourceLimitError,
    ResultTable,
    evaluate,
)
from .ntriples import NTriplesError
from .remote import BackendError, ProtocolError, encode_results, query_backend
from .sparql import (
    CountProjection,
    FilterComparison,
    OrderBy,
    ParseError,
    SelectQuery,
    TriplePattern,
    parse_sparql,
    serialize_query,
    serialize_term,
)
from .store import (
    CvtConfig,
    KnowledgeBase,
    LoadError,
    SchemaProfile,
    canonical_iri,
    load_ntriples,
)
from .terms import Iri, Literal, Term, Triple, Variable

__all__ = [
    "BackendError",
    "CountProjection",
    "CvtConfig",
    "DEFAULT_RESULT_CAP",
    "EvalError",
    "FilterComparison",
    "Iri",
    "KnowledgeBase",
    "Literal",
    "LoadError",
    "NTriplesError",
    "OrderBy",
    "ParseError",
    "ProtocolError",
    "ResourceLimitError",
    "ResultTable",
    "SchemaProfile",
    "SelectQuery",
    "Term",
    "Triple",
    "TriplePattern",
    "Variable",
    "canonical_iri",
    "encode_results",
    "evaluate",
    "load_ntriples",
    "parse_sparql",
    "query_backend",
    "serialize_query",
    "serialize_term",
]
