"""Input grammar for rings and ideals.

One-line form::

    QQ[x,y,z] / (x*y^2, x*y*z, y*z^2, x^4-y^3*z, x*z^3-y^4)
    GF 2[u,v,w,x,y,z] / (x*y^2, ...)

``GF(p)``, ``GF p`` and ``ZZ/p`` all name the prime field; the ideal part may
be omitted or empty, meaning the zero ideal.  The file form has sections::

    FIELD: QQ
    VARS: x, y, z
    GENS:
      x*y^2, x*y*z
      y*z^2

Lines starting with ``#`` are comments in the file form.  Polynomials use
``+ - * ^``, nonnegative integer literals and parentheses.
"""

from __future__ import annotations

import re
from dataclasses import dataclass
from typing import Callable

from .poly import QQ, CoefficientField, GF, Polynomial, PolynomialRing


class ParseError(ValueError):
    def __init__(self, message: str, line: int = 1, column: int = 1):
        super().__init__(f"line {line}, column {column}: {message}")
        self.message = message
        self.line = line
        self.column = column


@dataclass(frozen=True)
class InputSpec:
    field: CoefficientField
    variables: tuple[str, ...]
    generators: tuple[Polynomial, ...]
    source: str = ""

    @property
    def ring(self) -> PolynomialRing:
        return PolynomialRing(self.field, self.variables)


_TOKEN = re.compile(r"\s*(?:(?P<int>\d+)|(?P<name>[A-Za-z_][A-Za-z_0-9']*)|(?P<op>[-+*^()\[\],/]))")


@dataclass
class _Tok:
    kind: str
    text: str
    offset: int


class _Cursor:
    """Token stream over a text that knows how to report line/column."""

    def __init__(self, text: str, base_line: int = 1, base_col: int = 1, offset: int = 0, end: int | None = None):
        self.text = text
        self.base_line = base_line
        self.base_col = base_col
        self.tokens: list[_Tok] = []
        pos = offset
        end = len(text) if end is None else end
        while pos < end:
            m = _TOKEN.match(text, pos, end)
            if not m or m.end() == pos:
                if text[pos:end].strip() == "":
                    break
                bad = pos + (len(text[pos:end]) - len(text[pos:end].lstrip()))
                raise self.error(f"unexpected character {text[bad]!r}", bad)
            kind = m.lastgroup
            self.tokens.append(_Tok(kind, m.group(kind), m.start(kind)))
            pos = m.end()
        self.end_offset = end
        self.i = 0

    def position(self, offset: int) -> tuple[int, int]:
        before = self.text[:offset]
        line = before.count("\n")
        if line:
            return self.base_line + line, offset - before.rfind("\n")
        return self.base_line, self.base_col + offset

    def error(self, message: str, offset: int | None = None) -> ParseError:
        if offset is None:
            tok = self.peek()
            offset = tok.offset if tok else self.end_offset
        return ParseError(message, *self.position(offset))

    def peek(self) -> _Tok | None:
        return self.tokens[self.i] if self.i < len(self.tokens) else None

    def next(self) -> _Tok:
        tok = self.peek()
        if tok is None:
            raise self.error("unexpected end of input")
        self.i += 1
        return tok

    def accept(self, text: str) -> bool:
        tok = self.peek()
        if tok is not None and tok.kind == "op" and tok.text == text:
            self.i += 1
            return True
        return False

    def expect(self, text: str) -> _Tok:
        tok = self.peek()
        if tok is None or tok.text != text:
            found = "end of input" if tok is None else repr(tok.text)
            raise self.error(f"expected {text!r}, found {found}")
        self.i += 1
        return tok

    def done(self) -> bool:
        return self.i >= len(self.tokens)


def _expression(cur: _Cursor, name: Callable[[_Tok], object], const: Callable[[int], object]):
    """expr := ['-'|'+'] term (('+'|'-') term)*, term := power ('*' power)*,
    power := atom ['^' int], atom := int | name | '(' expr ')'."""

    def atom():
        tok = cur.next()
        if tok.kind == "int":
            return const(int(tok.text))
        if tok.kind == "name":
            return name(tok)
        if tok.text == "(":
            v = expr()
            cur.expect(")")
            return v
        raise cur.error(f"unexpected {tok.text!r}", tok.offset)

    def power():
        base = atom()
        if cur.accept("^"):
            tok = cur.next()
            if tok.kind != "int":
                raise cur.error("exponent must be a nonnegative integer", tok.offset)
            return base ** int(tok.text)
        return base

    def term():
        v = power()
        while cur.accept("*"):
            v = v * power()
        return v

    def expr():
        neg = False
        if cur.accept("-"):
            neg = True
        else:
            cur.accept("+")
        v = term()
        if neg:
            v = -v
        while True:
            if cur.accept("+"):
                v = v + term()
            elif cur.accept("-"):
                v = v - term()
            else:
                return v

    return expr()


def evaluate_integer_expression(text: str, env: dict[str, int]) -> int:
    """Evaluate an integer expression such as ``-(n - p)`` with names from env."""
    cur = _Cursor(text)

    def name(tok):
        if tok.text not in env:
            raise cur.error(f"unknown symbol {tok.text!r}", tok.offset)
        return env[tok.text]

    v = _expression(cur, name, int)
    if not cur.done():
        raise cur.error("trailing input")
    return int(v)


def _field(cur: _Cursor) -> CoefficientField:
    tok = cur.next()
    if tok.kind != "name" or tok.text not in ("QQ", "GF", "ZZ"):
        raise cur.error(f"unknown coefficient field {tok.text!r} (use QQ, GF p or ZZ/p)", tok.offset)
    if tok.text == "QQ":
        return QQ
    if tok.text == "ZZ":
        cur.expect("/")
    paren = cur.accept("(") if tok.text == "GF" else False
    ptok = cur.next()
    if ptok.kind != "int":
        raise cur.error("expected a prime characteristic", ptok.offset)
    if paren:
        cur.expect(")")
    try:
        return GF(int(ptok.text))
    except ValueError as exc:
        raise cur.error(str(exc), ptok.offset) from None


def _variables(cur: _Cursor, closer: str | None) -> tuple[str, ...]:
    names: list[str] = []
    while True:
        tok = cur.peek()
        if tok is None or (closer and tok.text == closer):
            break
        tok = cur.next()
        if tok.kind != "name":
            raise cur.error(f"expected a variable name, found {tok.text!r}", tok.offset)
        if tok.text in names:
            raise cur.error(f"variable {tok.text!r} declared twice", tok.offset)
        if tok.text in ("QQ", "GF", "ZZ"):
            raise cur.error(f"{tok.text!r} cannot be a variable name", tok.offset)
        names.append(tok.text)
        if not cur.accept(","):
            break
    return tuple(names)


def _generators(cur: _Cursor, ring: PolynomialRing, closer: str | None) -> list[Polynomial]:
    index = {v: i for i, v in enumerate(ring.variables)}

    def name(tok):
        if tok.text not in index:
            raise cur.error(f"unknown variable {tok.text!r}", tok.offset)
        return ring.gen(index[tok.text])

    gens: list[Polynomial] = []
    while True:
        tok = cur.peek()
        if tok is None or (closer and tok.text == closer):
            return gens
        gens.append(_expression(cur, name, ring.constant))
        if not cur.accept(","):
            return gens


def parse_line(text: str) -> InputSpec:
    cur = _Cursor(text)
    field = _field(cur)
    cur.expect("[")
    variables = _variables(cur, "]")
    cur.expect("]")
    ring = PolynomialRing(field, variables)
    gens: list[Polynomial] = []
    if cur.accept("/"):
        tok = cur.peek()
        if tok is not None and tok.kind == "name" and tok.text == "ideal":
            cur.next()
        cur.expect("(")
        gens = _generators(cur, ring, ")")
        cur.expect(")")
    if not cur.done():
        raise cur.error(f"unexpected {cur.peek().text!r} after the ideal")
    return InputSpec(field, variables, tuple(gens), text)


_SECTION = re.compile(r"^(FIELD|VARS|GENS)\s*:", re.MULTILINE)


def parse_sections(text: str) -> InputSpec:
    clean = _blank_comments(text)
    heads = list(_SECTION.finditer(clean))
    found = [m.group(1) for m in heads]
    for sec in ("FIELD", "VARS", "GENS"):
        if found.count(sec) != 1:
            what = "missing" if sec not in found else "repeated"
            raise ParseError(f"section {sec} is {what}", 1, 1)
    bodies = {}
    for k, m in enumerate(heads):
        end = heads[k + 1].start() if k + 1 < len(heads) else len(clean)
        bodies[m.group(1)] = (m.end(), end)
    lead = clean[: heads[0].start()]
    if lead.strip():
        raise _Cursor(clean).error("text before the first section", len(lead) - len(lead.lstrip()))

    start, end = bodies["FIELD"]
    cur = _Cursor(clean, offset=start, end=end)
    field = _field(cur)
    if not cur.done():
        raise cur.error("unexpected text after the field")

    start, end = bodies["VARS"]
    cur = _Cursor(clean, offset=start, end=end)
    variables = _variables(cur, None)
    if not cur.done():
        raise cur.error("expected ',' between variables")

    ring = PolynomialRing(field, variables)
    start, end = bodies["GENS"]
    joined = _join_lines(clean, start, end)
    cur = _Cursor(joined, offset=start, end=end)
    gens = _generators(cur, ring, None)
    if not cur.done():
        raise cur.error(f"unexpected {cur.peek().text!r}")
    return InputSpec(field, variables, tuple(gens), text)


def _join_lines(text: str, start: int, end: int) -> str:
    """Turn line breaks inside [start, end) into commas, except where the
    expression obviously continues (open parenthesis, trailing operator,
    or an existing comma)."""
    out = list(text)
    depth = 0
    last = ","
    for k in range(start, end):
        ch = text[k]
        if ch == "(":
            depth += 1
        elif ch == ")":
            depth -= 1
        if ch == "\n":
            if depth == 0 and last not in ",+-*^(":
                nxt = text[k + 1:end].lstrip()
                if nxt and nxt[0] not in ",+-*^)":
                    out[k] = ","
                    last = ","
            continue
        if not ch.isspace():
            last = ch
    return "".join(out)


def _blank_comments(text: str) -> str:
    # keep offsets intact so reported columns match the original text
    return re.sub(r"(?m)^[ \t]*#.*$", lambda m: " " * len(m.group()), text)


def parse_input(text: str) -> InputSpec:
    """Parse either form; the section form is recognized by its FIELD header."""
    if _SECTION.search(text):
        return parse_sections(text)
    clean = _blank_comments(text)
    if not clean.strip():
        raise ParseError("empty input")
    spec = parse_line(clean)
    return InputSpec(spec.field, spec.variables, spec.generators, text)
