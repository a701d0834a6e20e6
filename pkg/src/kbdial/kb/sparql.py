"""Parser and serializer for the supported SPARQL SELECT subset.

Supported: PREFIX declarations, SELECT (+DISTINCT) with variable or single
COUNT projections, basic graph patterns, FILTER comparisons, ORDER BY,
LIMIT/OFFSET. Anything else is rejected with an error naming the construct.

IRIs appear as ``<absolute>`` references, prefixed names, or bare dotted
identifiers (the Freebase convention); all are reduced to canonical short
form so parse -> serialize -> parse is structurally stable.
"""

from __future__ import annotations

import re
from dataclasses import dataclass, field

from .store import PREDECLARED_PREFIXES, canonical_iri
from .terms import (
    RDF_TYPE,
    XSD_DECIMAL,
    XSD_INTEGER,
    Iri,
    Literal,
    Term,
    Variable,
)


class ParseError(ValueError):
    def __init__(self, message: str, offset: int):
        super().__init__(f"{message} (at offset {offset})")
        self.message = message
        self.offset = offset


@dataclass(frozen=True)
class TriplePattern:
    subject: Term
    predicate: Term
    object: Term

    def variables(self) -> list[Variable]:
        return [t for t in (self.subject, self.predicate, self.object) if isinstance(t, Variable)]


@dataclass(frozen=True)
class FilterComparison:
    left: Variable
    op: str  # = != < <= > >=
    right: Variable | Literal


@dataclass(frozen=True)
class CountProjection:
    variable: Variable
    distinct: bool
    alias: Variable


@dataclass(frozen=True)
class OrderBy:
    variable: Variable
    ascending: bool = True


@dataclass(frozen=True)
class SelectQuery:
    projection: tuple[Variable, ...] | CountProjection
    patterns: tuple[TriplePattern, ...]
    distinct: bool = False
    filters: tuple[FilterComparison, ...] = ()
    order_by: OrderBy | None = None
    limit: int | None = None
    offset: int | None = None
    prefixes: tuple[tuple[str, str], ...] = ()

    def projected_variables(self) -> tuple[Variable, ...]:
        if isinstance(self.projection, CountProjection):
            return (self.projection.alias,)
        return self.projection


_UNSUPPORTED = {
    "OPTIONAL", "UNION", "MINUS", "GRAPH", "SERVICE", "BIND", "VALUES",
    "EXISTS", "GROUP", "HAVING", "ASK", "CONSTRUCT", "DESCRIBE",
    "INSERT", "DELETE", "CLEAR", "DROP", "CREATE",
}

_KEYWORDS = {
    "SELECT", "DISTINCT", "WHERE", "FILTER", "ORDER", "BY", "ASC", "DESC",
    "LIMIT", "OFFSET", "PREFIX", "COUNT", "AS",
}

_TOKEN_SPEC = [
    ("WS", re.compile(r"\s+|#[^\n]*")),
    ("IRIREF", re.compile(r"<([^<>\s]*)>")),
    ("STRING", re.compile(r'"((?:[^"\\\n]|\\.)*)"|\'((?:[^\'\\\n]|\\.)*)\'')),
    ("VAR", re.compile(r"\?([A-Za-z_][A-Za-z0-9_]*)")),
    ("NUMBER", re.compile(r"-?\d+(?:\.\d+)?")),
    ("PNAME", re.compile(r"([A-Za-z_][A-Za-z0-9_\-]*)?:([A-Za-z0-9_.\-]*)")),
    ("NAME", re.compile(r"[A-Za-z_][A-Za-z0-9_.\-]*")),
    ("DTSEP", re.compile(r"\^\^")),
    ("OP", re.compile(r"!=|<=|>=|=|<|>")),
    ("PUNCT", re.compile(r"[{}().,@;*]")),
]


@dataclass
class _Token:
    kind: str
    text: str
    offset: int
    groups: tuple = ()


def _tokenize(text: str) -> list[_Token]:
    tokens: list[_Token] = []
    pos = 0
    n = len(text)
    while pos < n:
        for kind, pattern in _TOKEN_SPEC:
            match = pattern.match(text, pos)
            if not match:
                continue
            if kind == "WS":
                pos = match.end()
                break
            token_text = match.group(0)
            # Bare names and prefixed names must not swallow a statement dot.
            if kind in ("PNAME", "NAME"):
                while token_text.endswith("."):
                    token_text = token_text[:-1]
                if not token_text:
                    continue
            if kind == "STRING" and token_text.startswith('"') and not _closed_string(token_text):
                raise ParseError("unterminated string literal", pos)
            tokens.append(_Token(kind, token_text, pos, match.groups()))
            pos += len(token_text)
            break
        else:
            if text[pos] == '"' or text[pos] == "'":
                raise ParseError("unterminated string literal", pos)
            raise ParseError(f"unexpected character {text[pos]!r}", pos)
    tokens.append(_Token("EOF", "", n))
    return tokens


def _closed_string(token_text: str) -> bool:
    return len(token_text) >= 2 and token_text[-1] == token_text[0]


def _unescape(raw: str) -> str:
    out: list[str] = []
    i = 0
    while i < len(raw):
        ch = raw[i]
        if ch != "\\":
            out.append(ch)
            i += 1
            continue
        nxt = raw[i + 1]
        mapped = {"n": "\n", "t": "\t", "r": "\r", '"': '"', "'": "'", "\\": "\\"}.get(nxt)
        if mapped is not None:
            out.append(mapped)
            i += 2
        elif nxt == "u":
            out.append(chr(int(raw[i + 2 : i + 6], 16)))
            i += 6
        else:
            out.append(nxt)
            i += 2
    return "".join(out)


class _Parser:
    def __init__(self, text: str):
        self.text = text
        self.tokens = _tokenize(text)
        self.index = 0
        self.prefixes: dict[str, str] = {}
        self.declared: list[tuple[str, str]] = []

    # -- token helpers -------------------------------------------------

    def peek(self) -> _Token:
        return self.tokens[self.index]

    def advance(self) -> _Token:
        token = self.tokens[self.index]
        self.index += 1
        return token

    def expect(self, kind: str, text: str | None = None, what: str = "") -> _Token:
        token = self.peek()
        if token.kind != kind or (text is not None and token.text != text):
            wanted = what or text or kind
            raise ParseError(f"expected {wanted}, found {token.text or 'end of input'!r}", token.offset)
        return self.advance()

    def keyword(self) -> str | None:
        token = self.peek()
        if token.kind == "NAME":
            upper = token.text.upper()
            if upper in _KEYWORDS or upper in _UNSUPPORTED:
                return upper
        return None

    def check_unsupported(self) -> None:
        kw = self.keyword()
        if kw in _UNSUPPORTED:
            raise ParseError(f"unsupported construct: {kw}", self.peek().offset)

    # -- grammar -------------------------------------------------------

    def parse(self) -> SelectQuery:
        while self.keyword() == "PREFIX":
            self.parse_prefix()
        self.check_unsupported()
        if self.keyword() != "SELECT":
            raise ParseError("query must begin with SELECT", self.peek().offset)
        self.advance()

        distinct = False
        if self.keyword() == "DISTINCT":
            self.advance()
            distinct = True

        projection = self.parse_projection()

        if self.keyword() == "WHERE":
            self.advance()
        self.expect("PUNCT", "{")
        patterns, filters = self.parse_group()
        order_by, limit, offset = self.parse_modifiers()

        token = self.peek()
        if token.kind != "EOF":
            self.check_unsupported()
            raise ParseError(f"unexpected trailing content {token.text!r}", token.offset)

        query = SelectQuery(
            projection=projection,
            patterns=tuple(patterns),
            distinct=distinct,
            filters=tuple(filters),
            order_by=order_by,
            limit=limit,
            offset=offset,
            prefixes=tuple(self.declared),
        )
        self.validate(query)
        return query

    def parse_prefix(self) -> None:
        self.advance()
        token = self.peek()
        if token.kind == "PNAME" and token.text.endswith(":"):
            label = token.text[:-1]
            self.advance()
        elif token.kind == "PNAME" or token.kind == "NAME":
            # tokenizer may split "ns :" or merge label with colon+empty local
            label = token.groups[0] if token.kind == "PNAME" else token.text
            self.advance()
        else:
            raise ParseError("expected prefix label", token.offset)
        iri = self.expect("IRIREF", what="prefix IRI")
        self.prefixes[label] = iri.groups[0]
        self.declared.append((label, iri.groups[0]))

    def parse_projection(self) -> tuple[Variable, ...] | CountProjection:
        token = self.peek()
        if token.kind == "PUNCT" and token.text == "(":
            return self.parse_count()
        if token.kind == "PUNCT" and token.text == "*":
            raise ParseError("unsupported construct: SELECT *", token.offset)
        variables: list[Variable] = []
        while self.peek().kind == "VAR":
            variables.append(Variable(self.advance().groups[0]))
        if not variables:
            raise ParseError("expected projection variable", self.peek().offset)
        return tuple(variables)

    def parse_count(self) -> CountProjection:
        self.expect("PUNCT", "(")
        kw = self.keyword()
        if kw != "COUNT":
            token = self.peek()
            raise ParseError(f"unsupported aggregate: {token.text}", token.offset)
        self.advance()
        self.expect("PUNCT", "(")
        distinct = False
        if self.keyword() == "DISTINCT":
            self.advance()
            distinct = True
        var = Variable(self.expect("VAR", what="counted variable").groups[0])
        self.expect("PUNCT", ")")
        if self.keyword() != "AS":
            raise ParseError("expected AS in COUNT projection", self.peek().offset)
        self.advance()
        alias = Variable(self.expect("VAR", what="alias variable").groups[0])
        self.expect("PUNCT", ")")
        return CountProjection(variable=var, distinct=distinct, alias=alias)

    def parse_group(self) -> tuple[list[TriplePattern], list[FilterComparison]]:
        patterns: list[TriplePattern] = []
        filters: list[FilterComparison] = []
        while True:
            token = self.peek()
            if token.kind == "PUNCT" and token.text == "}":
                self.advance()
                return patterns, filters
            if token.kind == "EOF":
                raise ParseError("unterminated group: missing '}'", token.offset)
            self.check_unsupported()
            if self.keyword() == "FILTER":
                self.advance()
                filters.append(self.parse_filter())
            else:
                patterns.append(self.parse_pattern())
            # statement separator dots are optional before '}'
            while self.peek().kind == "PUNCT" and self.peek().text == ".":
                self.advance()

    def parse_pattern(self) -> TriplePattern:
        subject = self.parse_term(position="subject")
        predicate = self.parse_term(position="predicate")
        obj = self.parse_term(position="object")
        return TriplePattern(subject, predicate, obj)

    def parse_term(self, position: str) -> Term:
        token = self.peek()
        self.check_unsupported()
        if token.kind == "VAR":
            self.advance()
            return Variable(token.groups[0])
        if token.kind == "IRIREF":
            self.advance()
            return Iri(canonical_iri(token.groups[0]))
        if token.kind == "PNAME":
            self.advance()
            return Iri(self.resolve_pname(token))
        if token.kind == "NAME":
            self.advance()
            if token.text == "a" and position == "predicate":
                return Iri(RDF_TYPE)
            return Iri(token.text)
        if token.kind == "STRING":
            return self.parse_literal()
        if token.kind == "NUMBER":
            self.advance()
            datatype = XSD_DECIMAL if "." in token.text else XSD_INTEGER
            return Literal(token.text, datatype=datatype)
        raise ParseError(f"expected {position} term, found {token.text or 'end of input'!r}", token.offset)

    def parse_literal(self) -> Literal:
        token = self.advance()
        raw = token.groups[0] if token.groups[0] is not None else token.groups[1]
        lexical = _unescape(raw)
        nxt = self.peek()
        if nxt.kind == "PUNCT" and nxt.text == "@":
            self.advance()
            lang = self.expect("NAME", what="language tag")
            return Literal(lexical, lang=lang.text)
        if nxt.kind == "DTSEP":
            self.advance()
            dt_token = self.peek()
            if dt_token.kind == "IRIREF":
                self.advance()
                return Literal(lexical, datatype=canonical_iri(dt_token.groups[0]))
            if dt_token.kind == "PNAME":
                self.advance()
                return Literal(lexical, datatype=self.resolve_pname(dt_token))
            raise ParseError("expected datatype IRI after ^^", dt_token.offset)
        return Literal(lexical)

    def parse_filter(self) -> FilterComparison:
        self.expect("PUNCT", "(")
        left_token = self.peek()
        left = self.parse_term(position="filter operand")
        if not isinstance(left, Variable):
            raise ParseError("FILTER left operand must be a variable", left_token.offset)
        op_token = self.expect("OP", what="comparison operator")
        right = self.parse_term(position="filter operand")
        if isinstance(right, Iri):
            raise ParseError("FILTER right operand must be a variable or literal", op_token.offset)
        self.expect("PUNCT", ")")
        return FilterComparison(left=left, op=op_token.text, right=right)

    def parse_modifiers(self) -> tuple[OrderBy | None, int | None, int | None]:
        order_by: OrderBy | None = None
        limit: int | None = None
        offset: int | None = None
        while True:
            kw = self.keyword()
            if kw == "ORDER":
                if order_by is not None:
                    raise ParseError("duplicate ORDER BY", self.peek().offset)
                self.advance()
                if self.keyword() != "BY":
                    raise ParseError("expected BY after ORDER", self.peek().offset)
                self.advance()
                order_by = self.parse_order_expr()
            elif kw == "LIMIT":
                self.advance()
                limit = self.parse_non_negative_int("LIMIT")
            elif kw == "OFFSET":
                self.advance()
                offset = self.parse_non_negative_int("OFFSET")
            elif kw in _UNSUPPORTED:
                raise ParseError(f"unsupported construct: {kw}", self.peek().offset)
            else:
                return order_by, limit, offset

    def parse_order_expr(self) -> OrderBy:
        kw = self.keyword()
        if kw in ("ASC", "DESC"):
            self.advance()
            self.expect("PUNCT", "(")
            var = Variable(self.expect("VAR", what="ordering variable").groups[0])
            self.expect("PUNCT", ")")
            return OrderBy(var, ascending=kw == "ASC")
        var = Variable(self.expect("VAR", what="ordering variable").groups[0])
        return OrderBy(var, ascending=True)

    def parse_non_negative_int(self, clause: str) -> int:
        token = self.expect("NUMBER", what=f"{clause} value")
        if "." in token.text or token.text.startswith("-"):
            raise ParseError(f"{clause} expects a non-negative integer", token.offset)
        return int(token.text)

    def resolve_pname(self, token: _Token) -> str:
        label, local = token.groups
        label = label or ""
        base = self.prefixes.get(label, PREDECLARED_PREFIXES.get(label))
        if base is None:
            raise ParseError(f"undeclared prefix: {label}", token.offset)
        return canonical_iri(base + local)

    def validate(self, query: SelectQuery) -> None:
        pattern_vars = {v.name for p in query.patterns for v in p.variables()}
        if isinstance(query.projection, CountProjection):
            projected = [query.projection.variable]
        else:
            projected = list(query.projection)
        for var in projected:
            if var.name not in pattern_vars:
                raise ParseError(f"projected variable ?{var.name} not bound by any pattern", 0)
        if query.order_by and query.order_by.variable.name not in pattern_vars:
            raise ParseError(
                f"ordered variable ?{query.order_by.variable.name} not bound by any pattern", 0
            )
        for flt in query.filters:
            if flt.left.name not in pattern_vars:
                raise ParseError(f"filtered variable ?{flt.left.name} not bound by any pattern", 0)
            if isinstance(flt.right, Variable) and flt.right.name not in pattern_vars:
                raise ParseError(f"filtered variable ?{flt.right.name} not bound by any pattern", 0)


def parse_sparql(text: str) -> SelectQuery:
    """Parse a query in the supported subset; raises ParseError with offset."""
    return _Parser(text).parse()


# -- serialization -----------------------------------------------------


def serialize_term(term: Term) -> str:
    if isinstance(term, Variable):
        return "?" + term.name
    if isinstance(term, Iri):
        return f"<{term.value}>" if "://" in term.value else term.value
    lexical = (
        term.lexical.replace("\\", "\\\\")
        .replace('"', '\\"')
        .replace("\n", "\\n")
        .replace("\r", "\\r")
        .replace("\t", "\\t")
    )
    body = f'"{lexical}"'
    if term.lang:
        return f"{body}@{term.lang}"
    if term.datatype:
        dt = term.datatype
        return f"{body}^^<{dt}>" if "://" in dt else f"{body}^^{dt}"
    return body


def serialize_query(query: SelectQuery) -> str:
    parts: list[str] = []
    for label, base in query.prefixes:
        parts.append(f"PREFIX {label}: <{base}>")
    head = "SELECT"
    if query.distinct:
        head += " DISTINCT"
    if isinstance(query.projection, CountProjection):
        count = query.projection
        inner = ("DISTINCT " if count.distinct else "") + "?" + count.variable.name
        head += f" (COUNT({inner}) AS ?{count.alias.name})"
    else:
        head += " " + " ".join("?" + v.name for v in query.projection)
    body = [
        " ".join(
            (serialize_term(p.subject), serialize_term(p.predicate), serialize_term(p.object), ".")
        )
        for p in query.patterns
    ]
    body.extend(
        f"FILTER(?{f.left.name} {f.op} {serialize_term(f.right)})" for f in query.filters
    )
    head += " WHERE { " + " ".join(body) + " }"
    if query.order_by:
        direction = "ASC" if query.order_by.ascending else "DESC"
        head += f" ORDER BY {direction}(?{query.order_by.variable.name})"
    if query.limit is not None:
        head += f" LIMIT {query.limit}"
    if query.offset is not None:
        head += f" OFFSET {query.offset}"
    parts.append(head)
    return "\n".join(parts)
