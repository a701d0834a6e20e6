"""Immutable in-memory triple store with schema-profile conventions.

A profile fixes which predicates carry names, descriptions, and types, how
absolute IRIs shorten to canonical form, and how mediator (CVT-style) nodes
are recognized for one-hop flattening.
"""

from __future__ import annotations

import enum
from collections import defaultdict
from dataclasses import dataclass, field
from pathlib import Path

from . import ntriples
from .terms import Iri, Literal, Term, Triple


class SchemaProfile(enum.Enum):
    FREEBASE_LIKE = "freebase"
    WIKIDATA_LIKE = "wikidata"
    PLAIN_RDF = "plain"


# Longest-prefix-first so statement/qualifier namespaces win over plain wd/p.
_NAMESPACES: list[tuple[str, str]] = [
    ("http://rdf.freebase.com/ns/", ""),
    ("http://www.wikidata.org/entity/statement/", "wds:"),
    ("http://www.wikidata.org/entity/", "wd:"),
    ("http://www.wikidata.org/prop/direct/", "wdt:"),
    ("http://www.wikidata.org/prop/statement/", "ps:"),
    ("http://www.wikidata.org/prop/qualifier/", "pq:"),
    ("http://www.wikidata.org/prop/", "p:"),
    ("http://www.w3.org/1999/02/22-rdf-syntax-ns#", "rdf:"),
    ("http://www.w3.org/2000/01/rdf-schema#", "rdfs:"),
    ("http://www.w3.org/2001/XMLSchema#", "xsd:"),
    ("http://schema.org/", "schema:"),
]

PREDECLARED_PREFIXES: dict[str, str] = {
    # The empty prefix maps straight into the canonical namespace, so
    # ":Film" names the node "Film" without a declaration.
    "": "",
    "ns": "http://rdf.freebase.com/ns/",
    "wds": "http://www.wikidata.org/entity/statement/",
    "wd": "http://www.wikidata.org/entity/",
    "wdt": "http://www.wikidata.org/prop/direct/",
    "ps": "http://www.wikidata.org/prop/statement/",
    "pq": "http://www.wikidata.org/prop/qualifier/",
    "p": "http://www.wikidata.org/prop/",
    "rdf": "http://www.w3.org/1999/02/22-rdf-syntax-ns#",
    "rdfs": "http://www.w3.org/2000/01/rdf-schema#",
    "xsd": "http://www.w3.org/2001/XMLSchema#",
    "schema": "http://schema.org/",
}


def canonical_iri(iri: str) -> str:
    """Shorten an absolute IRI by the known namespace table; pass through otherwise."""
    for base, short in _NAMESPACES:
        if iri.startswith(base):
            return short + iri[len(base) :]
    return iri


@dataclass(frozen=True)
class CvtConfig:
    cvt_type_iris: frozenset[str] = frozenset()
    treat_nameless_intermediates_as_cvt: bool = True


_PROFILE_DEFAULTS = {
    SchemaProfile.FREEBASE_LIKE: dict(
        name_property="type.object.name",
        description_property="common.topic.description",
        type_property="type.object.type",
        cvt=CvtConfig(),
    ),
    SchemaProfile.WIKIDATA_LIKE: dict(
        name_property="rdfs:label",
        description_property="schema:description",
        type_property="wdt:P31",
        # Reified statement nodes are nameless intermediates; the same
        # flattening machinery that handles Freebase mediators applies.
        cvt=CvtConfig(),
    ),
    SchemaProfile.PLAIN_RDF: dict(
        name_property="rdfs:label",
        description_property="rdfs:comment",
        type_property="rdf:type",
        cvt=None,
    ),
}


class LoadError(ValueError):
    pass


@dataclass
class KnowledgeBase:
    """Deduplicated triple set plus lookup indexes; immutable after load."""

    triples: tuple[Triple, ...]
    profile: SchemaProfile
    name_property: str
    description_property: str | None
    type_property: str
    cvt_config: CvtConfig | None
    source: str = ""

    by_sp: dict[tuple[str, str], list[Triple]] = field(default_factory=dict, repr=False)
    by_po: dict[tuple[str, Term], list[Triple]] = field(default_factory=dict, repr=False)
    by_s: dict[str, list[Triple]] = field(default_factory=dict, repr=False)
    by_o: dict[Term, list[Triple]] = field(default_factory=dict, repr=False)
    by_p: dict[str, list[Triple]] = field(default_factory=dict, repr=False)

    def __post_init__(self) -> None:
        by_sp: dict[tuple[str, str], list[Triple]] = defaultdict(list)
        by_po: dict[tuple[str, Term], list[Triple]] = defaultdict(list)
        by_s: dict[str, list[Triple]] = defaultdict(list)
        by_o: dict[Term, list[Triple]] = defaultdict(list)
        by_p: dict[str, list[Triple]] = defaultdict(list)
        for t in self.triples:
            by_sp[(t.subject.value, t.predicate.value)].append(t)
            by_po[(t.predicate.value, t.object)].append(t)
            by_s[t.subject.value].append(t)
            by_o[t.object].append(t)
            by_p[t.predicate.value].append(t)
        self.by_sp = dict(by_sp)
        self.by_po = dict(by_po)
        self.by_s = dict(by_s)
        self.by_o = dict(by_o)
        self.by_p = dict(by_p)

    def __len__(self) -> int:
        return len(self.triples)

    def name_of(self, iri: str) -> str | None:
        """Human-readable name of a node, or None when it has no name triple."""
        for t in self.by_sp.get((iri, self.name_property), ()):
            if isinstance(t.object, Literal):
                return t.object.lexical
        return None

    def names_of(self, iri: str) -> list[str]:
        return [
            t.object.lexical
            for t in self.by_sp.get((iri, self.name_property), ())
            if isinstance(t.object, Literal)
        ]

    def description_of(self, iri: str) -> str | None:
        if self.description_property is None:
            return None
        for t in self.by_sp.get((iri, self.description_property), ()):
            if isinstance(t.object, Literal):
                return t.object.lexical
        return None

    def types_of(self, iri: str) -> list[str]:
        out = []
        for t in self.by_sp.get((iri, self.type_property), ()):
            if isinstance(t.object, Iri):
                out.append(t.object.value)
        return out

    def is_cvt(self, iri: str) -> bool:
        cfg = self.cvt_config
        if cfg is None:
            return False
        if cfg.cvt_type_iris:
            for type_iri in self.types_of(iri):
                if type_iri in cfg.cvt_type_iris:
                    return True
        if cfg.treat_nameless_intermediates_as_cvt:
            return (iri, self.name_property) not in self.by_sp
        return False

    def display(self, term: Term) -> str:
        """Display string for a term: name when available, else IRI, else lexical."""
        if isinstance(term, Iri):
            return self.name_of(term.value) or term.value
        if isinstance(term, Literal):
            return term.lexical
        return "?" + term.name


def load_ntriples(
    path: str | Path,
    profile: SchemaProfile = SchemaProfile.PLAIN_RDF,
    cvt_config: CvtConfig | None = None,
) -> KnowledgeBase:
    """Load an N-Triples file into an immutable, indexed knowledge base.

    Duplicate triples are collapsed; a malformed line raises LoadError naming
    its line number; an empty file yields an empty KB.
    """
    path = Path(path)
    defaults = _PROFILE_DEFAULTS[profile]
    try:
        with path.open(encoding="utf-8") as handle:
            parsed = ntriples.parse_lines(handle, canonicalize=canonical_iri)
    except ntriples.NTriplesError as exc:
        raise LoadError(f"{path}: {exc}") from exc

    name_property = defaults["name_property"]
    if profile is SchemaProfile.FREEBASE_LIKE:
        parsed = [_normalize_name_lang(t, name_property) for t in parsed]

    deduped: dict[Triple, None] = dict.fromkeys(parsed)
    cvt = cvt_config if cvt_config is not None else defaults["cvt"]
    return KnowledgeBase(
        triples=tuple(deduped),
        profile=profile,
        name_property=name_property,
        description_property=defaults["description_property"],
        type_property=defaults["type_property"],
        cvt_config=cvt,
        source=str(path),
    )


def _normalize_name_lang(triple: Triple, name_property: str) -> Triple:
    # Name literals carry @en in this schema family; tag untagged ones on load.
    obj = triple.object
    if (
        triple.predicate.value == name_property
        and isinstance(obj, Literal)
        and obj.lang is None
        and obj.datatype is None
    ):
        return Triple(triple.subject, triple.predicate, Literal(obj.lexical, lang="en"))
    return triple
