"""Text grammar for polynomials.

::

    expr    := ['+'|'-'] term (('+'|'-') term)*
    term    := unary ('*' unary)*
    unary   := '-' unary | power
    power   := atom ['^' exp]
    atom    := NUMBER | 'q' | 'h' | KIND '[' colour ']' | '(' expr ')'
    exp     := ['-'] NUMBER | '(' affine ')'          # affine only for q
    colour  := NAME | ['-'] NUMBER

Generator kinds are ``a b c d x y xi eta dx dy``; colour names must be
declared.  ``render`` produces text that parses back to the same value.
"""

from __future__ import annotations

import re
from fractions import Fraction
from typing import Mapping

from .algebra import KIND_INDEX, NcPoly
from .coeff import CoeffPoly, Exponent
from .colours import DEFAULT_COLOURS, Colour


class ExpressionSyntaxError(ValueError):
    def __init__(self, msg: str, pos: int, src: str = ""):
        super().__init__(f"{msg} at position {pos}" + (f": {src!r}" if src else ""))
        self.pos = pos


class UnknownColour(KeyError):
    def __str__(self) -> str:
        return f"undeclared colour {self.args[0]!r}" if self.args else "undeclared colour"


_TOKEN = re.compile(r"\s*(?:(\d+(?:/\d+)?)|([A-Za-z_][A-Za-z_0-9]*)|(\S))")


def _tokenize(src: str):
    toks = []
    pos = 0
    while pos < len(src):
        m = _TOKEN.match(src, pos)
        if m is None:
            break
        if m.group(1):
            toks.append(("num", m.group(1), m.start(1)))
        elif m.group(2):
            toks.append(("name", m.group(2), m.start(2)))
        elif m.group(3):
            toks.append(("op", m.group(3), m.start(3)))
        pos = m.end()
    toks.append(("end", "", len(src)))
    return toks


class _Parser:
    def __init__(self, src: str, colours: Mapping[str, Colour]):
        self.src = src
        self.toks = _tokenize(src)
        self.i = 0
        self.colours = colours

    def peek(self):
        return self.toks[self.i]

    def take(self):
        t = self.toks[self.i]
        self.i += 1
        return t

    def error(self, msg: str):
        raise ExpressionSyntaxError(msg, self.peek()[2], self.src)

    def expect(self, op: str):
        t = self.take()
        if t[0] != "op" or t[1] != op:
            self.i -= 1
            self.error(f"expected {op!r}")

    def at(self, op: str) -> bool:
        t = self.peek()
        return t[0] == "op" and t[1] == op

    # polynomial level -----------------------------------------------------
    def parse(self) -> NcPoly:
        p = self.expr()
        if self.peek()[0] != "end":
            self.error("unexpected token")
        return p

    def expr(self) -> NcPoly:
        sign = 1
        if self.at("+") or self.at("-"):
            sign = -1 if self.take()[1] == "-" else 1
        out = self.term() * sign
        while self.at("+") or self.at("-"):
            s = -1 if self.take()[1] == "-" else 1
            out = out + self.term() * s
        return out

    def term(self) -> NcPoly:
        out = self.unary()
        while self.at("*"):
            self.take()
            out = out * self.unary()
        return out

    def unary(self) -> NcPoly:
        if self.at("-"):
            self.take()
            return -self.unary()
        return self.power()

    def power(self) -> NcPoly:
        t = self.peek()
        if t[0] == "name" and t[1] == "q":
            self.take()
            e = self.q_exponent() if self.at("^") else Exponent(Fraction(1))
            return NcPoly.const(CoeffPoly.qpow(e))
        base = self.atom()
        if not self.at("^"):
            return base
        self.take()
        n = self.int_exponent()
        if n >= 0:
            return base ** n
        if base.kinds():
            self.error("negative power of a noncommutative element")
        c = base.coeff(())
        try:
            return NcPoly.const(c.inverse() ** (-n))
        except ZeroDivisionError as exc:
            self.error(str(exc))

    def atom(self) -> NcPoly:
        t = self.take()
        if t[0] == "num":
            return NcPoly.const(Fraction(t[1]))
        if t[0] == "name":
            name = t[1]
            if name == "h":
                return NcPoly.const(CoeffPoly.h())
            if name in KIND_INDEX:
                self.expect("[")
                colour = self.colour()
                self.expect("]")
                return NcPoly.gen(name, colour)
            self.i -= 1
            self.error(f"unknown name {name!r}")
        if t[0] == "op" and t[1] == "(":
            p = self.expr()
            self.expect(")")
            return p
        self.i -= 1
        self.error("expected a number, q, h, generator or '('")

    def colour(self) -> Colour:
        neg = False
        if self.at("-"):
            self.take()
            neg = True
        t = self.take()
        if t[0] == "num":
            v = Fraction(t[1])
            return Colour.const(-v if neg else v)
        if t[0] == "name" and not neg:
            if t[1] not in self.colours:
                raise UnknownColour(t[1])
            return self.colours[t[1]]
        self.i -= 1
        self.error("expected a colour")

    def int_exponent(self) -> int:
        if self.at("("):
            self.take()
            e = self.affine()
            self.expect(")")
        else:
            neg = False
            if self.at("-"):
                self.take()
                neg = True
            t = self.take()
            if t[0] != "num":
                self.i -= 1
                self.error("expected an exponent")
            e = Exponent(-Fraction(t[1]) if neg else Fraction(t[1]))
        if not e.is_constant() or e.constant.denominator != 1:
            self.error("exponent must be an integer here")
        return int(e.constant)

    # exponents ------------------------------------------------------------
    def q_exponent(self) -> Exponent:
        self.expect("^")
        if self.at("("):
            self.take()
            e = self.affine()
            self.expect(")")
            return e
        neg = False
        if self.at("-"):
            self.take()
            neg = True
        t = self.take()
        if t[0] == "num":
            v = Fraction(t[1])
            return Exponent(-v if neg else v)
        if t[0] == "name" and t[1] in self.colours:
            e = Exponent.of_colour(self.colours[t[1]])
            return -e if neg else e
        self.i -= 1
        self.error("expected an exponent")

    def affine(self) -> Exponent:
        sign = 1
        if self.at("+") or self.at("-"):
            sign = -1 if self.take()[1] == "-" else 1
        out = self.aterm().scale(sign)
        while self.at("+") or self.at("-"):
            s = -1 if self.take()[1] == "-" else 1
            out = out + self.aterm().scale(s)
        return out

    def aterm(self) -> Exponent:
        out = self.afactor()
        while self.at("*"):
            self.take()
            f = self.afactor()
            if f.is_constant():
                out = out.scale(f.constant)
            elif out.is_constant():
                out = f.scale(out.constant)
            else:
                self.error("exponent must be affine in the colours")
        return out

    def afactor(self) -> Exponent:
        if self.at("-"):
            self.take()
            return -self.afactor()
        t = self.take()
        if t[0] == "num":
            return Exponent(Fraction(t[1]))
        if t[0] == "name":
            if t[1] not in self.colours:
                raise UnknownColour(t[1])
            return Exponent.of_colour(self.colours[t[1]])
        if t[0] == "op" and t[1] == "(":
            e = self.affine()
            self.expect(")")
            return e
        self.i -= 1
        self.error("expected an exponent term")


def parse_expr(src: str, colours: Mapping[str, Colour] | None = None) -> NcPoly:
    """Parse ``src`` into an :class:`NcPoly`."""
    return _Parser(src, DEFAULT_COLOURS if colours is None else colours).parse()


def parse_coeff(src: str, colours: Mapping[str, Colour] | None = None) -> CoeffPoly:
    p = parse_expr(src, colours)
    if p.kinds():
        raise ExpressionSyntaxError("expected a scalar", 0, src)
    return p.coeff(())


def render(p, fmt: str = "text") -> str:
    if fmt == "latex":
        return p.latex()
    if fmt == "text":
        return p.text()
    raise ValueError(f"unknown format {fmt!r}")
