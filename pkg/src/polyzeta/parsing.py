"""Text syntax for numerators.

Grammar (whitespace ignored)::

    expr   := term (('+' | '-') term)*
    term   := unary (('*' | '/') unary)*        # '/' only by constants
    unary  := '-' unary | power
    power  := atom ('^' INT)?
    atom   := NUMBER | 'k' INT | '(' expr ')' ('_' INT)? | 'poch' '(' expr ',' INT ')'

``(a)_m`` and ``poch(a, m)`` both mean a(a+1)...(a+m-1).
"""
from __future__ import annotations

import re
from fractions import Fraction
from typing import List, Optional, Tuple

from .exact import MPoly

__all__ = ["ParseError", "parse_polynomial", "poch"]

_TOKEN = re.compile(r"\s*(?:(\d+)|(k\d+)|(poch)|(.))")


class ParseError(ValueError):
    def __init__(self, message: str, pos: int):
        super().__init__(f"{message} at position {pos}")
        self.pos = pos


def poch(a: MPoly, m: int) -> MPoly:
    out = MPoly.constant(1, a.nvars)
    for i in range(m):
        out = out * (a + i)
    return out


def _tokenize(text: str) -> List[Tuple[str, str, int]]:
    toks = []
    pos = 0
    while pos < len(text):
        m = _TOKEN.match(text, pos)
        if not m or m.end() == pos:
            break
        start = m.start(m.lastindex) if m.lastindex else pos
        if m.group(1):
            toks.append(("num", m.group(1), start))
        elif m.group(2):
            toks.append(("var", m.group(2), start))
        elif m.group(3):
            toks.append(("poch", "poch", start))
        elif m.group(4):
            toks.append(("op", m.group(4), start))
        pos = m.end()
    toks.append(("end", "", len(text)))
    return toks


class _Parser:
    def __init__(self, text: str, p: int):
        self.toks = _tokenize(text)
        self.i = 0
        self.p = p

    def peek(self):
        return self.toks[self.i]

    def take(self, kind=None, value=None):
        tok = self.toks[self.i]
        if (kind and tok[0] != kind) or (value is not None and tok[1] != value):
            want = value or kind
            got = tok[1] or "end of input"
            raise ParseError(f"expected {want!r}, found {got!r}", tok[2])
        self.i += 1
        return tok

    def integer(self) -> int:
        return int(self.take("num")[1])

    def expr(self) -> MPoly:
        out = self.term()
        while self.peek()[1] in ("+", "-") and self.peek()[0] == "op":
            op = self.take()[1]
            rhs = self.term()
            out = out + rhs if op == "+" else out - rhs
        return out

    def term(self) -> MPoly:
        out = self.unary()
        while self.peek()[0] == "op" and self.peek()[1] in ("*", "/"):
            op = self.take()[1]
            pos = self.peek()[2]
            rhs = self.unary()
            if op == "*":
                out = out * rhs
            else:
                if any(any(e) for e in rhs.terms) or not rhs.terms:
                    raise ParseError("division only by nonzero constants", pos)
                out = out * (1 / rhs.constant_value())
        return out

    def unary(self) -> MPoly:
        if self.peek()[0] == "op" and self.peek()[1] == "-":
            self.take()
            return -self.unary()
        if self.peek()[0] == "op" and self.peek()[1] == "+":
            self.take()
            return self.unary()
        return self.power()

    def power(self) -> MPoly:
        base = self.atom()
        if self.peek()[0] == "op" and self.peek()[1] == "^":
            self.take()
            return base ** self.integer()
        return base

    def atom(self) -> MPoly:
        kind, val, pos = self.peek()
        if kind == "num":
            self.take()
            return MPoly.constant(Fraction(int(val)), self.p)
        if kind == "var":
            self.take()
            idx = int(val[1:])
            if not 1 <= idx <= self.p:
                raise ParseError(f"unknown variable {val!r} (depth {self.p})", pos)
            return MPoly.var(idx - 1, self.p)
        if kind == "poch":
            self.take()
            self.take("op", "(")
            a = self.expr()
            self.take("op", ",")
            m = self.integer()
            self.take("op", ")")
            return poch(a, m)
        if kind == "op" and val == "(":
            self.take()
            inner = self.expr()
            self.take("op", ")")
            if self.peek()[0] == "op" and self.peek()[1] == "_":
                self.take()
                return poch(inner, self.integer())
            return inner
        raise ParseError(f"unexpected {val or 'end of input'!r}", pos)


def parse_polynomial(text: str, p: Optional[int] = None) -> MPoly:
    """Parse a numerator in k1..kp.  If p is None it is the largest index used."""
    if p is None:
        idx = [int(m) for m in re.findall(r"k(\d+)", text)]
        p = max(idx) if idx else 1
    parser = _Parser(text, p)
    out = parser.expr()
    parser.take("end")
    return out
