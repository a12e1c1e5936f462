"""Recursive-descent parser for terms and laws.

Precedence from tightest: modal prefixes, ``/\\``, ``\\/``, then ``->`` and
``--`` (one level, right associative).  ``/\\`` and ``\\/`` associate to the
left.  Laws are ``s <= t``, ``s = t`` or ``p1, p2 => c``.
"""

from __future__ import annotations

import re
from dataclasses import dataclass

from ..order import ModalSymbol
from .syntax import Atom, Bin, Const, Law, Term, Un, Var


class ParseError(ValueError):
    def __init__(self, message: str, position: int, text: str = ""):
        self.position = position
        self.text = text
        super().__init__(f"{message} at position {position}")


@dataclass(frozen=True)
class Token:
    kind: str  # var, const, modal, op, lparen, rparen, rel, implies, comma, end
    value: str
    pos: int


_IDENT = re.compile(r"[a-z][a-z0-9]*")
_MODAL_STEMS = {"box", "dia", "bbox", "bdia"}
_PUNCT = [
    ("=>", "implies"),
    ("<=", "rel"),
    ("/\\", "op"),
    ("\\/", "op"),
    ("->", "op"),
    ("--", "op"),
    ("=", "rel"),
    (",", "comma"),
    ("(", "lparen"),
    (")", "rparen"),
]
_OPNAME = {"/\\": "and", "\\/": "or", "->": "impl", "--": "sub"}


def tokenize(text: str) -> list[Token]:
    out = []
    i = 0
    while i < len(text):
        c = text[i]
        if c.isspace():
            i += 1
            continue
        m = _IDENT.match(text, i)
        if m:
            word = m.group(0)
            end = m.end()
            if word in _MODAL_STEMS and end < len(text) and text[end] in "+-":
                out.append(Token("modal", word + text[end], i))
                i = end + 1
                continue
            out.append(Token("const" if word in ("top", "bot") else "var", word, i))
            i = end
            continue
        for lit, kind in _PUNCT:
            if text.startswith(lit, i):
                out.append(Token(kind, lit, i))
                i += len(lit)
                break
        else:
            raise ParseError(f"unexpected character {c!r}", i, text)
    out.append(Token("end", "", len(text)))
    return out


class _Parser:
    def __init__(self, text: str):
        self.text = text
        self.toks = tokenize(text)
        self.i = 0

    @property
    def tok(self) -> Token:
        return self.toks[self.i]

    def take(self) -> Token:
        t = self.toks[self.i]
        self.i += 1
        return t

    def fail(self, what: str):
        t = self.tok
        found = "end of input" if t.kind == "end" else repr(t.value)
        raise ParseError(f"expected {what}, found {found}", t.pos, self.text)

    def expect_end(self):
        if self.tok.kind != "end":
            self.fail("end of input")

    def term(self) -> Term:
        left = self.disj()
        if self.tok.kind == "op" and self.tok.value in ("->", "--"):
            op = _OPNAME[self.take().value]
            return Bin(op, left, self.term())
        return left

    def disj(self) -> Term:
        t = self.conj()
        while self.tok.kind == "op" and self.tok.value == "\\/":
            self.take()
            t = Bin("or", t, self.conj())
        return t

    def conj(self) -> Term:
        t = self.unary()
        while self.tok.kind == "op" and self.tok.value == "/\\":
            self.take()
            t = Bin("and", t, self.unary())
        return t

    def unary(self) -> Term:
        if self.tok.kind == "modal":
            sym = ModalSymbol.parse(self.take().value)
            return Un(sym, self.unary())
        return self.primary()

    def primary(self) -> Term:
        t = self.tok
        if t.kind == "var":
            self.take()
            return Var(t.value)
        if t.kind == "const":
            self.take()
            return Const(t.value)
        if t.kind == "lparen":
            self.take()
            inner = self.term()
            if self.tok.kind != "rparen":
                self.fail("')'")
            self.take()
            return inner
        self.fail("a term")

    def atom(self) -> Atom:
        lhs = self.term()
        if self.tok.kind != "rel":
            self.fail("'<=' or '='")
        kind = self.take().value
        return Atom(kind, lhs, self.term())

    def law(self) -> Law:
        atoms = [self.atom()]
        while self.tok.kind == "comma":
            self.take()
            atoms.append(self.atom())
        if self.tok.kind == "implies":
            self.take()
            concl = self.atom()
            self.expect_end()
            return Law(tuple(atoms), concl)
        if len(atoms) > 1:
            self.fail("'=>' after the premises")
        self.expect_end()
        return Law((), atoms[0])


def parse_term(text: str) -> Term:
    p = _Parser(text)
    t = p.term()
    p.expect_end()
    return t


def parse_law(text: str, name: str | None = None) -> Law:
    law = _Parser(text).law()
    return Law(law.premises, law.conclusion, name) if name else law


def parse(text: str) -> Term | Law:
    """A law if the text contains a relation symbol, otherwise a term."""
    if any(t.kind == "rel" for t in tokenize(text)):
        return parse_law(text)
    return parse_term(text)


def parse_law_file(text: str) -> list[Law]:
    """One law per line; blank lines and ``#`` comments are ignored."""
    laws = []
    offset = 0
    for line in text.splitlines(keepends=True):
        body = line.split("#", 1)[0].rstrip("\r\n")
        if body.strip():
            try:
                laws.append(parse_law(body))
            except ParseError as e:
                raise ParseError(str(e).rsplit(" at position", 1)[0], offset + e.position, text) from None
        offset += len(line)
    return laws
