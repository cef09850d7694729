"""Text format for ground normal programs.

Grammar::

    program := (rule | comment)*
    rule    := atom ( ":-" literal ("," literal)* )? "."
    literal := atom | "not" ws atom | "~" atom
    atom    := [a-z][a-zA-Z0-9_]*
    comment := "%" to end of line

Anything else (constraints, disjunctive heads, classical negation, terms)
is rejected with a :class:`ParseError` that carries a :class:`SourceSpan`.
"""

from __future__ import annotations

import re
from dataclasses import dataclass
from typing import Iterator

from .core import Program


@dataclass(frozen=True)
class SourceSpan:
    line: int
    col: int
    length: int

    def __str__(self) -> str:
        return f"{self.line}:{self.col}"


class ParseError(ValueError):
    def __init__(self, message: str, span: SourceSpan):
        super().__init__(f"{span}: {message}")
        self.message = message
        self.span = span


_TOKEN_RE = re.compile(
    r"""
    (?P<ws>[ \t\r\n]+)
  | (?P<comment>%[^\n]*)
  | (?P<if>:-)
  | (?P<ident>[A-Za-z_][A-Za-z0-9_]*)
  | (?P<number>[0-9]+)
  | (?P<punct>[.,~|;()\-:])
  | (?P<other>.)
    """,
    re.VERBOSE | re.DOTALL,
)


@dataclass(frozen=True)
class _Tok:
    kind: str
    text: str
    span: SourceSpan
    ws_after: bool = False


def _tokenize(text: str) -> list[_Tok]:
    toks: list[_Tok] = []
    line, line_start = 1, 0
    for m in _TOKEN_RE.finditer(text):
        kind, s = m.lastgroup, m.group()
        assert kind is not None
        if kind in ("ws", "comment"):
            if toks and not toks[-1].ws_after:
                last = toks[-1]
                toks[-1] = _Tok(last.kind, last.text, last.span, True)
        else:
            span = SourceSpan(line, m.start() - line_start + 1, len(s))
            toks.append(_Tok(kind if kind != "punct" else s, s, span))
        nl = s.count("\n")
        if nl:
            line += nl
            line_start = m.start() + s.rindex("\n") + 1
    return toks


class _Parser:
    def __init__(self, text: str):
        self.toks = _tokenize(text)
        self.pos = 0
        self.end = self._eof_span(text)

    @staticmethod
    def _eof_span(text: str) -> SourceSpan:
        lines = text.split("\n")
        return SourceSpan(len(lines), len(lines[-1]) + 1, 1)

    def peek(self) -> _Tok | None:
        return self.toks[self.pos] if self.pos < len(self.toks) else None

    def take(self) -> _Tok:
        tok = self.peek()
        if tok is None:
            raise ParseError("unexpected end of input", self.end)
        self.pos += 1
        return tok

    def atom(self, what: str) -> str:
        tok = self.take()
        if tok.kind == "ident":
            if tok.text == "not":
                raise ParseError(f"expected {what}, found keyword 'not'", tok.span)
            if not tok.text[0].islower():
                raise ParseError(
                    f"variables are not supported ({tok.text!r}); atoms start with a lowercase letter",
                    tok.span,
                )
            nxt = self.peek()
            if nxt is not None and nxt.kind == "(":
                raise ParseError("atoms with arguments are not supported (input must be ground and propositional)", nxt.span)
            return tok.text
        if tok.kind == "-":
            raise ParseError("classical negation is not supported", tok.span)
        if tok.kind == "number":
            raise ParseError(f"expected {what}, found number {tok.text!r}", tok.span)
        raise ParseError(f"expected {what}, found {tok.text!r}", tok.span)

    def literal(self) -> tuple[bool, str]:
        tok = self.peek()
        if tok is not None and tok.kind == "~":
            self.take()
            return False, self.atom("atom after '~'")
        if tok is not None and tok.kind == "ident" and tok.text == "not":
            self.take()
            if not tok.ws_after:
                raise ParseError("expected whitespace after 'not'", tok.span)
            return False, self.atom("atom after 'not'")
        return True, self.atom("body literal")

    def rules(self) -> Iterator[tuple[str, list[str], list[str]]]:
        while (tok := self.peek()) is not None:
            if tok.kind == "if":
                raise ParseError("constraints (headless rules) are not supported", tok.span)
            head = self.atom("rule head")
            pos: list[str] = []
            neg: list[str] = []
            tok = self.take()
            if tok.kind in ("|", ";"):
                raise ParseError("disjunctive heads are not supported", tok.span)
            if tok.kind == "if":
                while True:
                    positive, name = self.literal()
                    (pos if positive else neg).append(name)
                    tok = self.take()
                    if tok.kind == ",":
                        continue
                    if tok.kind == ".":
                        break
                    if tok.kind in ("|", ";"):
                        raise ParseError("disjunctive bodies are not supported", tok.span)
                    raise ParseError(f"expected ',' or '.', found {tok.text!r}", tok.span)
            elif tok.kind != ".":
                raise ParseError(f"expected ':-' or '.', found {tok.text!r}", tok.span)
            yield head, pos, neg


def parse_program(text: str) -> Program:
    """Parse program text. Empty input gives the empty program."""
    return Program.from_rules(_Parser(text).rules())


def parse_file(path: str) -> Program:
    with open(path, encoding="utf-8") as fh:
        return parse_program(fh.read())


def format_rule(head: str, pos: list[str] | set[str] | frozenset[str], neg: list[str] | set[str] | frozenset[str]) -> str:
    lits = sorted(pos) + [f"not {a}" for a in sorted(neg)]
    return f"{head} :- {', '.join(lits)}." if lits else f"{head}."


def serialize_program(prog: Program) -> str:
    """Canonical text: one rule per line in program order, sorted positive then negated literals."""
    a = prog.atoms
    return "".join(
        format_rule(a[r.head], {a[i] for i in r.pbody}, {a[i] for i in r.nbody}) + "\n"
        for r in prog.rules
    )
