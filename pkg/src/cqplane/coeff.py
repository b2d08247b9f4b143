"""Exact coefficients: rational combinations of q^e · h^k · (q-1)^(-m).

The exponent ``e`` of ``q`` is an affine form in colour symbols with
rational coefficients.  Distinct exponent forms are treated as linearly
independent (``q^λ`` is transcendental over ``Q(q)``), so zero testing of
the canonical form is exact.

Canonical form.  For each power of ``h`` the terms are brought over a
common pole ``(q-1)^M`` and the pole is reduced while the numerator is
divisible by ``q-1``.  Divisibility is decided coset by coset: exponents
that differ by an integer form one Laurent polynomial in ``q`` and that
polynomial is divisible iff its coefficients sum to zero.  After this step
every ``h``-group carries a single pole order, so the term list is unique.

Term order: ``(hpow, polepow, exponent)`` where exponents compare by
constant part first, then by their linear coefficients listed in colour
declaration order.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from math import comb
from typing import Dict, Iterable, Mapping, NamedTuple, Tuple, Union

import sympy

from .colours import Colour

Rational = Union[int, Fraction]


class UnboundSymbol(KeyError):
    """A colour symbol has no value in a substitution binding."""


class PoleAtOne(ArithmeticError):
    """The q -> 1 limit of a coefficient does not exist."""


@dataclass(frozen=True)
class Exponent:
    """Affine form ``constant + sum(coef * colour)`` used as a power of q."""

    constant: Fraction = Fraction(0)
    linear: Tuple[Tuple[Colour, Fraction], ...] = ()

    @classmethod
    def make(cls, constant: Rational = 0, linear: Mapping[Colour, Rational] | None = None) -> "Exponent":
        items = []
        for c, v in (linear or {}).items():
            v = Fraction(v)
            if v:
                if not c.is_symbol:
                    raise ValueError("constant colours belong in the constant part")
                items.append((c, v))
        items.sort(key=lambda cv: cv[0].key)
        return cls(Fraction(constant), tuple(items))

    @classmethod
    def of_colour(cls, c: Colour) -> "Exponent":
        if c.is_symbol:
            return cls(Fraction(0), ((c, Fraction(1)),))
        return cls(c.value, ())

    @property
    def key(self) -> tuple:
        return (self.constant, tuple((c.key, v) for c, v in self.linear))

    def symbols(self) -> set:
        return {c for c, _ in self.linear}

    def is_constant(self) -> bool:
        return not self.linear

    def __add__(self, other: "Exponent") -> "Exponent":
        if not other.linear:
            return Exponent(self.constant + other.constant, self.linear)
        if not self.linear:
            return Exponent(self.constant + other.constant, other.linear)
        d = dict(self.linear)
        for c, v in other.linear:
            d[c] = d.get(c, 0) + v
        return Exponent.make(self.constant + other.constant, d)

    def __neg__(self) -> "Exponent":
        return Exponent(-self.constant, tuple((c, -v) for c, v in self.linear))

    def __sub__(self, other: "Exponent") -> "Exponent":
        return self + (-other)

    def scale(self, r: Rational) -> "Exponent":
        r = Fraction(r)
        if not r:
            return Exponent()
        return Exponent(self.constant * r, tuple((c, v * r) for c, v in self.linear))

    def shift(self, n: Rational) -> "Exponent":
        return Exponent(self.constant + n, self.linear)

    def substitute(self, mapping: Mapping[Colour, "Exponent"]) -> "Exponent":
        """Simultaneous substitution of colour symbols by exponent forms."""
        out = Exponent(self.constant, ())
        rest = {}
        for c, v in self.linear:
            if c in mapping:
                out = out + mapping[c].scale(v)
            else:
                rest[c] = rest.get(c, 0) + v
        return out + Exponent.make(0, rest)

    def to_sympy(self):
        expr = sympy.Rational(self.constant.numerator, self.constant.denominator)
        for c, v in self.linear:
            expr += sympy.Rational(v.numerator, v.denominator) * sympy.Symbol(c.text())
        return expr

    def text(self) -> str:
        parts = []
        if self.constant or not self.linear:
            parts.append(str(self.constant))
        for c, v in self.linear:
            sign = "-" if v < 0 else "+"
            a = abs(v)
            body = c.text() if a == 1 else f"{a}*{c.text()}"
            if not parts:
                parts.append(("-" if v < 0 else "") + body)
            else:
                parts.append(sign + body)
        return "".join(parts)

    def latex(self) -> str:
        parts = []
        if self.constant or not self.linear:
            parts.append(_latex_rat(self.constant))
        for c, v in self.linear:
            a = abs(v)
            body = c.latex() if a == 1 else f"{_latex_rat(a)}{c.latex()}"
            if not parts:
                parts.append(("-" if v < 0 else "") + body)
            else:
                parts.append(("-" if v < 0 else "+") + body)
        return "".join(parts)

    def __str__(self) -> str:
        return self.text()


def _latex_rat(r: Fraction) -> str:
    if r.denominator == 1:
        return str(r.numerator)
    sign = "-" if r < 0 else ""
    return f"{sign}\\tfrac{{{abs(r.numerator)}}}{{{r.denominator}}}"


ZERO_EXP = Exponent()


class CoeffTerm(NamedTuple):
    rat: Fraction
    exp: Exponent
    hpow: int
    polepow: int


_Key = Tuple[int, int, Exponent]


def _coset(e: Exponent) -> tuple:
    c = e.constant
    return (c - (c.numerator // c.denominator), e.linear)


def _divide_q_minus_one(num: Dict[Exponent, Fraction]) -> Dict[Exponent, Fraction] | None:
    """Exact division by (q-1); ``None`` if it does not divide."""
    cosets: Dict[tuple, list] = {}
    for e, r in num.items():
        cosets.setdefault(_coset(e), []).append((e, r))
    out: Dict[Exponent, Fraction] = {}
    for items in cosets.values():
        if sum(r for _, r in items) != 0:
            return None
        base = min(e.constant for e, _ in items)
        linear = items[0][0].linear
        by_n = {int(e.constant - base): r for e, r in items}
        top = max(by_n)
        quot = {}
        acc = Fraction(0)
        for k in range(top, 0, -1):
            acc += by_n.get(k, 0)
            quot[k - 1] = acc
        for k, r in quot.items():
            if r:
                out[Exponent(base + k, linear)] = r
    return out


def _canonical(raw: Dict[_Key, Fraction]) -> Dict[_Key, Fraction]:
    groups: Dict[int, Dict[int, Dict[Exponent, Fraction]]] = {}
    for (hp, pp, e), r in raw.items():
        if r:
            groups.setdefault(hp, {}).setdefault(pp, {})[e] = r
    out: Dict[_Key, Fraction] = {}
    for hp, by_pole in groups.items():
        top = max(by_pole)
        if top == 0:
            for e, r in by_pole[0].items():
                if r:
                    out[(hp, 0, e)] = r
            continue
        num: Dict[Exponent, Fraction] = {}
        for pp, terms in by_pole.items():
            k = top - pp
            for e, r in terms.items():
                for j in range(k + 1):
                    c = comb(k, j) * (-1) ** (k - j)
                    e2 = e.shift(j)
                    num[e2] = num.get(e2, 0) + r * c
        num = {e: r for e, r in num.items() if r}
        while top > 0 and num:
            q = _divide_q_minus_one(num)
            if q is None:
                break
            num, top = q, top - 1
        for e, r in num.items():
            out[(hp, top, e)] = r
    return out


class CoeffPoly:
    """Element of Q[q^e, h, (q-1)^-1] in canonical form.  Immutable."""

    __slots__ = ("_d", "_hash")

    def __init__(self, data: Mapping[_Key, Rational] | None = None, _canon: bool = False):
        if data is None:
            d = {}
        elif _canon:
            d = dict(data)
        else:
            d = _canonical({k: Fraction(v) for k, v in data.items()})
        self._d = d
        self._hash = None

    # construction -------------------------------------------------------
    @classmethod
    def const(cls, r: Rational) -> "CoeffPoly":
        r = Fraction(r)
        return cls({(0, 0, ZERO_EXP): r} if r else {}, _canon=True)

    @classmethod
    def qpow(cls, e: Union[Exponent, Rational], rat: Rational = 1) -> "CoeffPoly":
        if not isinstance(e, Exponent):
            e = Exponent(Fraction(e))
        rat = Fraction(rat)
        return cls({(0, 0, e): rat} if rat else {}, _canon=True)

    @classmethod
    def h(cls, k: int = 1) -> "CoeffPoly":
        return cls({(k, 0, ZERO_EXP): Fraction(1)}, _canon=True)

    @classmethod
    def pole(cls, k: int = 1) -> "CoeffPoly":
        """``(q-1)^(-k)``."""
        return cls({(0, k, ZERO_EXP): Fraction(1)})

    @classmethod
    def from_terms(cls, terms: Iterable[CoeffTerm]) -> "CoeffPoly":
        raw: Dict[_Key, Fraction] = {}
        for t in terms:
            k = (t.hpow, t.polepow, t.exp)
            raw[k] = raw.get(k, 0) + Fraction(t.rat)
        return cls(raw)

    # inspection ---------------------------------------------------------
    @property
    def terms(self) -> list:
        return [CoeffTerm(r, e, hp, pp) for (hp, pp, e), r in
                sorted(self._d.items(), key=lambda kv: (kv[0][0], kv[0][1], kv[0][2].key))]

    def is_zero(self) -> bool:
        return not self._d

    def is_one(self) -> bool:
        return self._d == {(0, 0, ZERO_EXP): Fraction(1)}

    def is_unit(self) -> bool:
        """Single monomial ``r q^e`` with no h and no pole."""
        if len(self._d) != 1:
            return False
        (hp, pp, _), = self._d
        return hp == 0 and pp == 0

    def h_part(self, k: int) -> "CoeffPoly":
        """The coefficient of ``h^k`` times ``h^k``."""
        return CoeffPoly({key: r for key, r in self._d.items() if key[0] == k}, _canon=True)

    def max_pole(self) -> int:
        return max((pp for (_, pp, _) in self._d), default=0)

    def symbols(self) -> set:
        out = set()
        for (_, _, e) in self._d:
            out |= e.symbols()
        return out

    # arithmetic ---------------------------------------------------------
    def __add__(self, other) -> "CoeffPoly":
        if not isinstance(other, (CoeffPoly, int, Fraction)):
            return NotImplemented
        other = _coerce(other)
        if not other._d:
            return self
        if not self._d:
            return other
        raw = dict(self._d)
        for k, r in other._d.items():
            raw[k] = raw.get(k, 0) + r
        if self.max_pole() == 0 and other.max_pole() == 0:
            return CoeffPoly({k: r for k, r in raw.items() if r}, _canon=True)
        return CoeffPoly(raw)

    __radd__ = __add__

    def __neg__(self) -> "CoeffPoly":
        return CoeffPoly({k: -r for k, r in self._d.items()}, _canon=True)

    def __sub__(self, other) -> "CoeffPoly":
        if not isinstance(other, (CoeffPoly, int, Fraction)):
            return NotImplemented
        return self + (-_coerce(other))

    def __rsub__(self, other) -> "CoeffPoly":
        return _coerce(other) - self

    def __mul__(self, other) -> "CoeffPoly":
        if not isinstance(other, (CoeffPoly, int, Fraction)):
            return NotImplemented
        other = _coerce(other)
        if not self._d or not other._d:
            return CoeffPoly()
        raw: Dict[_Key, Fraction] = {}
        for (h1, p1, e1), r1 in self._d.items():
            for (h2, p2, e2), r2 in other._d.items():
                k = (h1 + h2, p1 + p2, e1 + e2)
                raw[k] = raw.get(k, 0) + r1 * r2
        if self.max_pole() == 0 and other.max_pole() == 0:
            return CoeffPoly({k: r for k, r in raw.items() if r}, _canon=True)
        return CoeffPoly(raw)

    __rmul__ = __mul__

    def __pow__(self, n: int) -> "CoeffPoly":
        if n < 0:
            return self.inverse() ** (-n)
        out = CoeffPoly.const(1)
        for _ in range(n):
            out = out * self
        return out

    def inverse(self) -> "CoeffPoly":
        """Inverse of a unit monomial ``r q^e``; also ``(q-1)^k`` style poles."""
        if self.is_unit():
            ((_, _, e), r), = self._d.items()
            return CoeffPoly.qpow(-e, 1 / r)
        if len(self._d) == 1:
            ((hp, pp, e), r), = self._d.items()
            if hp == 0 and e == ZERO_EXP and pp > 0:
                return (CoeffPoly.qpow(1) - 1) ** pp * (1 / r)
        if self == (CoeffPoly.qpow(1) - 1):
            return CoeffPoly.pole(1)
        raise ZeroDivisionError(f"{self.text()} is not invertible in the coefficient ring")

    def __eq__(self, other) -> bool:
        if isinstance(other, (int, Fraction)):
            other = CoeffPoly.const(other)
        if not isinstance(other, CoeffPoly):
            return NotImplemented
        return self._d == other._d

    def __hash__(self) -> int:
        if self._hash is None:
            self._hash = hash(frozenset(self._d.items()))
        return self._hash

    # maps -----------------------------------------------------------------
    def substitute(self, mapping: Mapping[Colour, Exponent]) -> "CoeffPoly":
        if not mapping:
            return self
        raw: Dict[_Key, Fraction] = {}
        for (hp, pp, e), r in self._d.items():
            k = (hp, pp, e.substitute(mapping))
            raw[k] = raw.get(k, 0) + r
        return CoeffPoly(raw)

    def subst_colours(self, binding: Mapping[Colour, Rational]) -> "CoeffPoly":
        """Replace every colour symbol by a rational value (all must be bound)."""
        missing = self.symbols() - set(binding)
        if missing:
            raise UnboundSymbol(", ".join(sorted(c.text() for c in missing)))
        return self.substitute({c: Exponent(Fraction(v)) for c, v in binding.items()})

    def limit_q1(self):
        """Value at q = 1 as a sympy polynomial in colour symbols and h.

        Each h-group ``N(q)/(q-1)^M`` is expanded with ``q = 1 + t`` and
        ``(1+t)^e = sum binom(e, k) t^k``; orders below ``M`` must vanish
        identically, else :class:`PoleAtOne`.
        """
        groups: Dict[int, Tuple[int, list]] = {}
        for (hp, pp, e), r in self._d.items():
            groups.setdefault(hp, (pp, []))[1].append((e, r))
        total = sympy.Integer(0)
        hsym = sympy.Symbol("h")
        for hp, (pole, items) in groups.items():
            for order in range(pole + 1):
                c = sympy.Integer(0)
                for e, r in items:
                    c += sympy.Rational(r.numerator, r.denominator) * _binom(e.to_sympy(), order)
                c = sympy.expand(c)
                if order < pole and c != 0:
                    raise PoleAtOne(f"order t^{order - pole} survives in {self.text()}")
            total += c * hsym ** hp
        return sympy.expand(total)

    # rendering ----------------------------------------------------------
    def text(self) -> str:
        if not self._d:
            return "0"
        out = []
        for t in self.terms:
            body = _term_text(t)
            if not out:
                out.append(body)
            elif body.startswith("-"):
                out.append(" - " + body[1:])
            else:
                out.append(" + " + body)
        return "".join(out)

    def latex(self) -> str:
        if not self._d:
            return "0"
        out = []
        for t in self.terms:
            body = _term_latex(t)
            if not out:
                out.append(body)
            elif body.startswith("-"):
                out.append(" - " + body[1:])
            else:
                out.append(" + " + body)
        return "".join(out)

    def to_json(self) -> list:
        out = []
        for t in self.terms:
            exp = {"const": str(t.exp.constant)}
            for c, v in t.exp.linear:
                exp[c.text()] = str(v)
            out.append({"rat": str(t.rat), "q": exp, "h": t.hpow, "pole": t.polepow})
        return out

    @classmethod
    def from_json(cls, data: list, colours: Mapping[str, Colour]) -> "CoeffPoly":
        terms = []
        for item in data:
            exp = dict(item["q"])
            const = Fraction(exp.pop("const", "0"))
            lin = {}
            for name, v in exp.items():
                if name not in colours:
                    raise KeyError(f"unknown colour {name!r}")
                lin[colours[name]] = Fraction(v)
            terms.append(CoeffTerm(Fraction(item["rat"]), Exponent.make(const, lin),
                                   int(item.get("h", 0)), int(item.get("pole", 0))))
        return cls.from_terms(terms)

    def __repr__(self) -> str:
        return f"CoeffPoly({self.text()})"

    def __str__(self) -> str:
        return self.text()


def _coerce(x) -> CoeffPoly:
    if isinstance(x, CoeffPoly):
        return x
    if isinstance(x, (int, Fraction)):
        return CoeffPoly.const(x)
    raise TypeError(f"cannot use {type(x).__name__} as a coefficient")


def _binom(e, k: int):
    out = sympy.Integer(1)
    for i in range(k):
        out *= (e - i)
    return out / sympy.factorial(k)


def _term_text(t: CoeffTerm) -> str:
    parts = []
    if t.hpow:
        parts.append("h" if t.hpow == 1 else f"h^{t.hpow}")
    if t.exp != ZERO_EXP:
        parts.append("q" if t.exp == Exponent(Fraction(1)) else f"q^({t.exp.text()})")
    if t.polepow:
        parts.append(f"(q-1)^(-{t.polepow})")
    a = abs(t.rat)
    if a != 1 or not parts:
        parts.insert(0, str(a))
    return ("-" if t.rat < 0 else "") + "*".join(parts)


def _term_latex(t: CoeffTerm) -> str:
    parts = []
    if t.hpow:
        parts.append("h" if t.hpow == 1 else f"h^{{{t.hpow}}}")
    if t.exp != ZERO_EXP:
        parts.append("q" if t.exp == Exponent(Fraction(1)) else f"q^{{{t.exp.latex()}}}")
    if t.polepow:
        parts.append(f"(q-1)^{{-{t.polepow}}}")
    a = abs(t.rat)
    if a != 1 or not parts:
        parts.insert(0, _latex_rat(a))
    return ("-" if t.rat < 0 else "") + " ".join(parts)


ZERO = CoeffPoly()
ONE = CoeffPoly.const(1)
Q = CoeffPoly.qpow(1)
QINV = CoeffPoly.qpow(-1)
H = CoeffPoly.h()


def qpow(e) -> CoeffPoly:
    return CoeffPoly.qpow(e)
