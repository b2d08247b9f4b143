"""Generators, words and noncommutative polynomials over :class:`CoeffPoly`."""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Dict, Iterable, Mapping, Tuple, Union

from .coeff import CoeffPoly, Exponent
from .colours import Colour, ZERO as ZERO_COLOUR

KINDS = ("a", "b", "c", "d", "x", "y", "xi", "eta", "dx", "dy")
KIND_INDEX = {k: i for i, k in enumerate(KINDS)}
ODD_KINDS = frozenset({"xi", "eta"})

FRT = frozenset("abcd")
COORDS = frozenset({"x", "y"})
FORMS = frozenset({"xi", "eta"})
DERIVS = frozenset({"dx", "dy"})

_LATEX_KIND = {"xi": "\\xi", "eta": "\\eta", "dx": "\\partial_{x}", "dy": "\\partial_{y}"}


@dataclass(frozen=True)
class Generator:
    kind: str
    colour: Colour

    def __post_init__(self):
        if self.kind not in KIND_INDEX:
            raise ValueError(f"unknown generator kind {self.kind!r}")

    @property
    def odd(self) -> bool:
        return self.kind in ODD_KINDS

    @property
    def key(self) -> tuple:
        return (KIND_INDEX[self.kind], self.colour.key)

    def recolour(self, colour: Colour) -> "Generator":
        return Generator(self.kind, colour)

    def text(self) -> str:
        return f"{self.kind}[{self.colour.text()}]"

    def latex(self) -> str:
        k = self.kind
        if k in ("dx", "dy"):
            return f"\\partial_{{{k[1]}_{{{self.colour.latex()}}}}}"
        return f"{_LATEX_KIND.get(k, k)}_{{{self.colour.latex()}}}"

    def __repr__(self) -> str:
        return self.text()


Word = Tuple[Generator, ...]
EMPTY: Word = ()


def word_key(w: Word) -> tuple:
    """Degree-lexicographic key; the rewrite measure."""
    return (len(w), tuple(g.key for g in w))


def parity(w: Word) -> int:
    return sum(g.odd for g in w) % 2


Scalar = Union[int, Fraction, CoeffPoly]


def _as_coeff(c: Scalar) -> CoeffPoly:
    return c if isinstance(c, CoeffPoly) else CoeffPoly.const(c)


class NcPoly:
    """Finite sum of ``coefficient * word``; immutable."""

    __slots__ = ("_t",)

    def __init__(self, terms: Mapping[Word, CoeffPoly] | None = None, _clean: bool = False):
        if terms is None:
            self._t: Dict[Word, CoeffPoly] = {}
        elif _clean:
            self._t = dict(terms)
        else:
            self._t = {tuple(w): c for w, c in terms.items() if not c.is_zero()}

    @classmethod
    def const(cls, c: Scalar) -> "NcPoly":
        return cls({EMPTY: _as_coeff(c)})

    @classmethod
    def gen(cls, kind: str, colour: Colour, coeff: Scalar = 1) -> "NcPoly":
        return cls({(Generator(kind, colour),): _as_coeff(coeff)})

    @classmethod
    def word(cls, w: Iterable[Generator], coeff: Scalar = 1) -> "NcPoly":
        return cls({tuple(w): _as_coeff(coeff)})

    @property
    def terms(self) -> Dict[Word, CoeffPoly]:
        return self._t

    def items(self):
        return sorted(self._t.items(), key=lambda wc: word_key(wc[0]))

    def is_zero(self) -> bool:
        return not self._t

    def coeff(self, w: Iterable[Generator]) -> CoeffPoly:
        return self._t.get(tuple(w), CoeffPoly())

    def kinds(self) -> set:
        return {g.kind for w in self._t for g in w}

    def colours(self) -> set:
        out = {g.colour for w in self._t for g in w}
        for c in self._t.values():
            out |= c.symbols()
        return out

    def degree(self) -> int:
        return max((len(w) for w in self._t), default=0)

    def __add__(self, other) -> "NcPoly":
        other = _coerce(other)
        out = dict(self._t)
        for w, c in other._t.items():
            s = out.get(w)
            s = c if s is None else s + c
            if s.is_zero():
                out.pop(w, None)
            else:
                out[w] = s
        return NcPoly(out, _clean=True)

    __radd__ = __add__

    def __neg__(self) -> "NcPoly":
        return NcPoly({w: -c for w, c in self._t.items()}, _clean=True)

    def __sub__(self, other) -> "NcPoly":
        return self + (-_coerce(other))

    def __rsub__(self, other) -> "NcPoly":
        return _coerce(other) - self

    def __mul__(self, other) -> "NcPoly":
        if isinstance(other, (int, Fraction, CoeffPoly)):
            return self.scale(other)
        other = _coerce(other)
        out: Dict[Word, CoeffPoly] = {}
        for w1, c1 in self._t.items():
            for w2, c2 in other._t.items():
                w = w1 + w2
                c = c1 * c2
                s = out.get(w)
                out[w] = c if s is None else s + c
        return NcPoly(out)

    def __rmul__(self, other) -> "NcPoly":
        if isinstance(other, (int, Fraction, CoeffPoly)):
            return self.scale(other)
        return _coerce(other) * self

    def scale(self, c: Scalar) -> "NcPoly":
        c = _as_coeff(c)
        if c.is_zero():
            return NcPoly()
        return NcPoly({w: c * v for w, v in self._t.items()})

    def __pow__(self, n: int) -> "NcPoly":
        out = NcPoly.const(1)
        for _ in range(n):
            out = out * self
        return out

    def __eq__(self, other) -> bool:
        if isinstance(other, (int, Fraction, CoeffPoly)):
            other = NcPoly.const(other)
        if not isinstance(other, NcPoly):
            return NotImplemented
        return self._t == other._t

    def __hash__(self) -> int:
        return hash(frozenset(self._t.items()))

    # structural maps ----------------------------------------------------
    def recolour(self, mapping: Mapping[Colour, Colour]) -> "NcPoly":
        """Simultaneously rename colours in letters and in exponents."""
        if not mapping:
            return self
        exp_map = {c: Exponent.of_colour(v) for c, v in mapping.items() if c.is_symbol}
        out: Dict[Word, CoeffPoly] = {}
        for w, c in self._t.items():
            w2 = tuple(Generator(g.kind, mapping.get(g.colour, g.colour)) for g in w)
            c2 = c.substitute(exp_map)
            s = out.get(w2)
            out[w2] = c2 if s is None else s + c2
        return NcPoly(out)

    def map_letters(self, image) -> "NcPoly":
        """Algebra map on the free algebra given ``image(generator) -> NcPoly``."""
        out = NcPoly()
        cache: Dict[Generator, NcPoly] = {}
        for w, c in self._t.items():
            acc = NcPoly.const(c)
            for g in w:
                if g not in cache:
                    cache[g] = image(g)
                acc = acc * cache[g]
            out = out + acc
        return out

    def map_coeffs(self, fn) -> "NcPoly":
        out: Dict[Word, CoeffPoly] = {}
        for w, c in self._t.items():
            c2 = fn(c)
            s = out.get(w)
            out[w] = c2 if s is None else s + c2
        return NcPoly(out)

    # rendering ----------------------------------------------------------
    def text(self) -> str:
        if not self._t:
            return "0"
        out = []
        for w, c in self.items():
            body = _term_text(c, w)
            if not out:
                out.append(body)
            elif body.startswith("-"):
                out.append(" - " + body[1:])
            else:
                out.append(" + " + body)
        return "".join(out)

    def latex(self) -> str:
        if not self._t:
            return "0"
        out = []
        for w, c in self.items():
            cl = c.latex()
            wl = " ".join(g.latex() for g in w)
            if not w:
                body = cl
            elif c.is_one():
                body = wl
            elif c == CoeffPoly.const(-1):
                body = "-" + wl
            elif len(c.terms) > 1:
                body = f"\\left({cl}\\right) {wl}"
            else:
                body = f"{cl} {wl}"
            if out and body.startswith("-"):
                out.append(" - " + body[1:])
            else:
                out.append((" + " if out else "") + body)
        return "".join(out)

    def to_json(self) -> list:
        return [{"word": [[g.kind, g.colour.text()] for g in w], "coeff": c.to_json()}
                for w, c in self.items()]

    def __repr__(self) -> str:
        return f"NcPoly({self.text()})"

    def __str__(self) -> str:
        return self.text()


def _term_text(c: CoeffPoly, w: Word) -> str:
    ws = "*".join(g.text() for g in w)
    if not w:
        ct = c.text()
        return ct if len(c.terms) == 1 else f"({ct})"
    if c.is_one():
        return ws
    if c == CoeffPoly.const(-1):
        return "-" + ws
    if len(c.terms) > 1:
        return f"({c.text()})*{ws}"
    return f"{c.text()}*{ws}"


def _coerce(x) -> NcPoly:
    if isinstance(x, NcPoly):
        return x
    if isinstance(x, (int, Fraction, CoeffPoly)):
        return NcPoly.const(x)
    if isinstance(x, Generator):
        return NcPoly.word((x,))
    raise TypeError(f"cannot use {type(x).__name__} as a polynomial")


def gen(kind: str, colour: Colour) -> NcPoly:
    return NcPoly.gen(kind, colour)


def nc_mul(p: NcPoly, r: NcPoly) -> NcPoly:
    return p * r


def colour_swap(p: NcPoly, s1: Colour, s2: Colour) -> NcPoly:
    """Exchange two declared colour symbols everywhere in ``p``."""
    if not (s1.is_symbol and s2.is_symbol):
        raise ValueError("colour exchange needs declared symbols")
    return p.recolour({s1: s2, s2: s1})


def eval_colourless(p: NcPoly) -> NcPoly:
    """Send every colour (letters and exponents) to the constant 0."""
    cols = {g.colour for w in p.terms for g in w}
    for c in p.terms.values():
        cols |= c.symbols()
    return p.recolour({c: ZERO_COLOUR for c in cols})


def is_coordinate(p: NcPoly) -> bool:
    return p.kinds() <= COORDS
