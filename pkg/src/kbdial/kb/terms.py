"""RDF-style terms: IRIs, literals, and query variables.

IRIs are stored in a canonical short form (e.g. ``m.th``, ``wd:Q1``,
``xsd:integer``) so that loaders, the query parser, and the evaluator all
agree on identity without carrying namespace tables around.
"""

from __future__ import annotations

import re
from dataclasses import dataclass

XSD_INTEGER = "xsd:integer"
XSD_DECIMAL = "xsd:decimal"
XSD_DATE = "xsd:date"
XSD_DATETIME = "xsd:dateTime"
XSD_GYEAR = "xsd:gYear"
RDF_TYPE = "rdf:type"

_VARIABLE_NAME = re.compile(r"^[A-Za-z_][A-Za-z0-9_]*$")


@dataclass(frozen=True)
class Iri:
    """A named node or predicate, canonical short form."""

    value: str

    def __repr__(self) -> str:
        return f"Iri({self.value!r})"


@dataclass(frozen=True)
class Literal:
    lexical: str
    lang: str | None = None
    datatype: str | None = None

    def __post_init__(self) -> None:
        if self.lang is not None and self.datatype is not None:
            raise ValueError("a literal carries a language tag or a datatype, not both")

    def __repr__(self) -> str:
        if self.lang:
            return f'Literal("{self.lexical}"@{self.lang})'
        if self.datatype:
            return f'Literal("{self.lexical}"^^{self.datatype})'
        return f'Literal("{self.lexical}")'


@dataclass(frozen=True)
class Variable:
    """A SPARQL variable, stored without the leading ``?``."""

    name: str

    def __post_init__(self) -> None:
        if not _VARIABLE_NAME.match(self.name):
            raise ValueError(f"invalid variable name: {self.name!r}")

    def __repr__(self) -> str:
        return f"Variable(?{self.name})"


Term = Iri | Literal | Variable


@dataclass(frozen=True)
class Triple:
    subject: Iri
    predicate: Iri
    object: Iri | Literal

    def __post_init__(self) -> None:
        if not isinstance(self.subject, Iri):
            raise ValueError("triple subject must be an IRI")
        if not isinstance(self.predicate, Iri):
            raise ValueError("triple predicate must be an IRI")
        if isinstance(self.object, Variable):
            raise ValueError("triple object must not be a variable")


def is_numeric_literal(term: Term) -> bool:
    if not isinstance(term, Literal):
        return False
    if term.datatype in (XSD_INTEGER, XSD_DECIMAL, XSD_GYEAR):
        return True
    return _parse_number(term.lexical) is not None


def _parse_number(text: str) -> float | None:
    try:
        return float(text)
    except ValueError:
        return None
