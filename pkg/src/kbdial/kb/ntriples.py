"""Line-oriented N-Triples parser.

Accepts UTF-8 files with one ``<s> <p> <o> .`` statement per line, blank
lines, and ``#`` comments. IRIs may be absolute or already-namespaced
(``<m.th>``); absolute IRIs are shortened by the caller-supplied
canonicalizer.
"""

from __future__ import annotations

import re
from collections.abc import Callable, Iterable

from .terms import Iri, Literal, Triple


class NTriplesError(ValueError):
    def __init__(self, message: str, line_number: int):
        super().__init__(f"line {line_number}: {message}")
        self.line_number = line_number


_IRI = r"<([^<>\s]*)>"
_LITERAL = r'"((?:[^"\\]|\\.)*)"(?:@([A-Za-z][A-Za-z0-9-]*)|\^\^<([^<>\s]+)>)?'
_LINE = re.compile(rf"^{_IRI}\s+{_IRI}\s+(?:{_IRI}|{_LITERAL})\s*\.\s*$")

_ESCAPES = {
    "t": "\t",
    "n": "\n",
    "r": "\r",
    '"': '"',
    "\\": "\\",
    "'": "'",
}


def unescape(text: str) -> str:
    out: list[str] = []
    i = 0
    while i < len(text):
        ch = text[i]
        if ch != "\\":
            out.append(ch)
            i += 1
            continue
        if i + 1 >= len(text):
            raise ValueError("dangling backslash in literal")
        nxt = text[i + 1]
        if nxt in _ESCAPES:
            out.append(_ESCAPES[nxt])
            i += 2
        elif nxt == "u":
            out.append(chr(int(text[i + 2 : i + 6], 16)))
            i += 6
        elif nxt == "U":
            out.append(chr(int(text[i + 2 : i + 10], 16)))
            i += 10
        else:
            raise ValueError(f"unknown escape \\{nxt}")
    return "".join(out)


def parse_lines(
    lines: Iterable[str],
    canonicalize: Callable[[str], str] = lambda iri: iri,
) -> list[Triple]:
    """Parse N-Triples lines into triples, raising on the first bad line."""
    triples: list[Triple] = []
    for number, raw in enumerate(lines, start=1):
        line = raw.strip()
        if not line or line.startswith("#"):
            continue
        match = _LINE.match(line)
        if not match:
            raise NTriplesError(f"malformed triple: {line[:80]!r}", number)
        subject, predicate, obj_iri, lex, lang, datatype = match.groups()
        try:
            if obj_iri is not None:
                obj: Iri | Literal = Iri(canonicalize(obj_iri))
            else:
                obj = Literal(
                    unescape(lex),
                    lang=lang,
                    datatype=canonicalize(datatype) if datatype else None,
                )
        except ValueError as exc:
            raise NTriplesError(str(exc), number) from exc
        triples.append(
            Triple(Iri(canonicalize(subject)), Iri(canonicalize(predicate)), obj)
        )
    return triples
