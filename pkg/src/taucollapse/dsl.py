"""Text syntax for knot expressions and tree shapes.

Expressions (whitespace-insensitive)::

    expr := atom | expr "#" atom
    atom := NAME | "O" | "m(" expr ")" | "r(" expr ")" | "-(" expr ")"
          | "D[" expr "," INT "](" expr ("," INT)? ")"
          | "Wh+(" expr ("," INT)? ")" | "Wh-(" expr ("," INT)? ")"

Tree shapes::

    tree := "*" | "(" tree "," tree ")"
"""
from __future__ import annotations

import re

from .collapse import Leaf, Node, Tree
from .errors import ParseError, TwistOverflow
from .expr import (KnotExpr, Mirror, Reverse, Sum, check_twist, doubling,
                   make_base, negate, normalize, serialize, whitehead)

_TOKEN = re.compile(r"[A-Za-z0-9_]+|\S")


def _tokenize(text: str) -> list:
    tokens = [(m.group(), m.start()) for m in _TOKEN.finditer(text)]
    tokens.append(("", len(text)))
    return tokens


class _Parser:
    def __init__(self, text: str):
        self.text = text
        self.tokens = _tokenize(text)
        self.i = 0

    def peek(self, ahead: int = 0) -> str:
        return self.tokens[min(self.i + ahead, len(self.tokens) - 1)][0]

    @property
    def pos(self) -> int:
        return self.tokens[self.i][1]

    def error(self, message: str):
        raise ParseError(message, self.text, self.pos)

    def take(self) -> str:
        tok = self.peek()
        self.i += 1
        return tok

    def expect(self, tok: str):
        if self.peek() != tok:
            found = self.peek() or "end of input"
            self.error(f"expected {tok!r}, found {found!r}")
        self.i += 1

    def finish(self):
        if self.peek() != "":
            self.error(f"unexpected {self.peek()!r}")

    # -- expressions

    def expr(self) -> KnotExpr:
        acc = self.atom()
        while self.peek() == "#":
            self.take()
            acc = Sum(acc, self.atom())
        return acc

    def integer(self) -> int:
        start = self.pos
        sign = 1
        if self.peek() in ("-", "+"):
            sign = -1 if self.take() == "-" else 1
        tok = self.peek()
        if not tok.isdigit() or not tok.isascii():
            self.error("expected an integer")
        self.take()
        try:
            return check_twist(sign * int(tok))
        except TwistOverflow as exc:
            raise ParseError(str(exc), self.text, start) from None

    def optional_twist(self) -> int:
        if self.peek() == ",":
            self.take()
            return self.integer()
        return 0

    def atom(self) -> KnotExpr:
        tok, nxt = self.peek(), self.peek(1)
        if tok in ("m", "r") and nxt == "(":
            self.i += 2
            inner = self.expr()
            self.expect(")")
            return Mirror(inner) if tok == "m" else Reverse(inner)
        if tok == "-" and nxt == "(":
            self.i += 2
            inner = self.expr()
            self.expect(")")
            return negate(inner)
        if tok == "D" and nxt == "[":
            self.i += 2
            j = self.expr()
            self.expect(",")
            s = self.integer()
            self.expect("]")
            self.expect("(")
            k = self.expr()
            t = self.optional_twist()
            self.expect(")")
            return doubling(j, s, k, t)
        if tok == "Wh" and nxt in ("+", "-") and self.peek(2) == "(":
            self.i += 3
            k = self.expr()
            t = self.optional_twist()
            self.expect(")")
            return whitehead(nxt, k, t)
        if tok and re.fullmatch(r"[A-Za-z0-9_]+", tok):
            self.take()
            return make_base(tok)
        self.error(f"expected a knot expression, found {tok or 'end of input'!r}")

    # -- trees

    def tree(self) -> Tree:
        tok = self.peek()
        if tok == "*":
            self.take()
            return Leaf()
        if tok == "(":
            self.take()
            left = self.tree()
            self.expect(",")
            right = self.tree()
            self.expect(")")
            return Node(left, right)
        self.error(f"expected '*' or '(', found {tok or 'end of input'!r}")


def parse_expr(text: str) -> KnotExpr:
    p = _Parser(text)
    e = p.expr()
    p.finish()
    return e


def parse_tree(text: str) -> Tree:
    p = _Parser(text)
    t = p.tree()
    p.finish()
    return t


def print_expr(e: KnotExpr) -> str:
    """Canonical DSL text of ``normalize(e)``."""
    return serialize(normalize(e))
