"""The g-transform and the contraction of the coloured plane to the h-plane.

New generators are ``x' = x + α y``, ``y' = y`` with ``α = s·h/(q-1)`` and
``s = ±1`` (``s = -1`` is the convention ``α = h/(1-q)``).  A relation among
old generators is re-expressed through ``x = x' - α y'``.  Its ``α^0`` part
is kept verbatim; the correction terms are reduced with the *hybrid* rules
(the y-relations, which are unchanged, and the (q,h)-deformed yx and swap
relations derived from them), and finally every coefficient is sent to
``q → 1``.

With the default ``s = +1`` the plane relation becomes
``x'_λ y'_μ - q^{1-λ-μ} y'_μ x'_λ = -h [1-2μ]_q y'_λ y'_μ``, so the recorded
sign is ``σ = -1``; flipping the convention flips ``σ``.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Dict, Optional, Sequence, Tuple

import sympy

from .algebra import COORDS, Generator, NcPoly, Word, gen
from .coeff import H, ONE, CoeffPoly, Exponent
from .colours import Colour, LAMBDA, MU
from .rewrite import PATTERN, RewriteSystem, RuleFamily, load_families

_L, _M = PATTERN["l"], PATTERN["m"]


@dataclass(frozen=True)
class GTransform:
    sign: int = 1

    def __post_init__(self):
        if self.sign not in (1, -1):
            raise ValueError("sign must be +1 or -1")

    @property
    def alpha(self) -> CoeffPoly:
        return H * CoeffPoly.pole(1) * self.sign


def g_transform(p: NcPoly, t: GTransform = GTransform()) -> NcPoly:
    """Letterwise ``x_c ↦ x_c + α y_c``, ``y_c ↦ y_c``."""
    return _substitute(p, t.alpha)


def inverse_g_transform(p: NcPoly, t: GTransform = GTransform()) -> NcPoly:
    """Letterwise ``x_c ↦ x_c - α y_c``: old generators through new ones."""
    return _substitute(p, -t.alpha)


def _substitute(p: NcPoly, alpha: CoeffPoly) -> NcPoly:
    bad = p.kinds() - COORDS
    if bad:
        raise ValueError(f"g-transform acts on coordinates only, got {sorted(bad)}")

    def image(g: Generator) -> NcPoly:
        if g.kind == "x":
            return gen("x", g.colour) + gen("y", g.colour).scale(alpha)
        return gen(g.kind, g.colour)

    return p.map_letters(image)


def _split(p: NcPoly) -> Tuple[NcPoly, NcPoly]:
    """(h-free part, remainder); h enters only through α."""
    lead, rest = {}, {}
    for w, c in p.terms.items():
        plain = c.h_part(0)
        other = c - plain
        if not plain.is_zero():
            lead[w] = plain
        if not other.is_zero():
            rest[w] = other
    return NcPoly(lead), NcPoly(rest)


def _reexpress(rel: NcPoly, t: GTransform, system: RewriteSystem) -> NcPoly:
    sub = inverse_g_transform(rel, t)
    lead, corr = _split(sub)
    return lead + system.normalize(corr)


_HYBRID_CACHE: Dict[int, RewriteSystem] = {}


def hybrid_system(t: GTransform = GTransform(), families: Optional[Sequence[RuleFamily]] = None) -> RewriteSystem:
    """Rules among transformed generators: yy unchanged, yx and the swap deformed."""
    if families is None and t.sign in _HYBRID_CACHE:
        return _HYBRID_CACHE[t.sign]
    fams = load_families() if families is None else families
    by_name = {f.name: f for f in fams}
    yy = by_name["plane.yy"]
    base = RewriteSystem([yy], COORDS, name="hybrid-y")
    derived = [yy]
    for name in ("plane.yx", "plane.xy"):
        f = by_name[name]
        poly = _reexpress(f.relation, t, base)
        (lw, _), = f.lhs.terms.items()
        c = poly.coeff(lw)
        if not c.is_unit():
            raise ValueError(f"cannot orient hybrid {name}: coefficient {c.text()}")
        rhs = -(poly - NcPoly.word(lw, c)).scale(c.inverse())
        derived.append(RuleFamily(f"hybrid.{name.split('.')[1]}", f.lhs, rhs, f.guard_text,
                                  relation=poly, block="hybrid"))
    sys_ = RewriteSystem(derived, COORDS, name="hybrid")
    if families is None:
        _HYBRID_CACHE[t.sign] = sys_
    return sys_


class LimitPoly:
    """Noncommutative polynomial with sympy coefficients in colours and h."""

    def __init__(self, terms: Dict[Word, sympy.Expr]):
        self.terms = {w: sympy.expand(c) for w, c in terms.items() if sympy.expand(c) != 0}

    def coeff(self, w) -> sympy.Expr:
        return self.terms.get(tuple(w), sympy.Integer(0))

    def is_zero(self) -> bool:
        return not self.terms

    def __eq__(self, other) -> bool:
        if not isinstance(other, LimitPoly):
            return NotImplemented
        keys = set(self.terms) | set(other.terms)
        return all(sympy.expand(self.coeff(k) - other.coeff(k)) == 0 for k in keys)

    def _items(self):
        return sorted(self.terms.items(), key=lambda kv: (len(kv[0]), [g.key for g in kv[0]]))

    def text(self) -> str:
        if not self.terms:
            return "0"
        out = ""
        for w, c in self._items():
            wt = "*".join(g.text() for g in w) or "1"
            neg = c.could_extract_minus_sign()
            mag = -c if neg else c
            if mag == 1:
                body = wt
            elif isinstance(mag, sympy.Add):
                body = f"({sympy.sstr(mag)})*{wt}"
            else:
                body = f"{sympy.sstr(mag)}*{wt}"
            if not out:
                out = ("-" if neg else "") + body
            else:
                out += (" - " if neg else " + ") + body
        return out

    def latex(self) -> str:
        if not self.terms:
            return "0"
        parts = []
        for w, c in self._items():
            wt = " ".join(g.latex() for g in w) or "1"
            parts.append(wt if c == 1 else f"\\left({sympy.latex(c)}\\right) {wt}")
        return " + ".join(parts)

    def to_json(self) -> list:
        return [{"word": [g.text() for g in w], "coeff": sympy.sstr(c)} for w, c in self._items()]

    def __repr__(self) -> str:
        return f"LimitPoly({self.text()})"


def limit_poly(p: NcPoly) -> LimitPoly:
    return LimitPoly({w: c.limit_q1() for w, c in p.terms.items()})


@dataclass
class Contraction:
    relation: NcPoly      # the input, in old generators
    transformed: NcPoly   # exact, among new generators
    limit: LimitPoly

    def to_json(self) -> dict:
        return {"relation": self.relation.text(), "transformed": self.transformed.text(),
                "limit": self.limit.to_json(), "limit_text": self.limit.text()}


def contract_relation(rel: NcPoly, t: GTransform = GTransform(),
                      system: Optional[RewriteSystem] = None) -> Contraction:
    """Re-express ``rel`` through transformed generators and take ``q → 1``.

    Raises PoleAtOne if some coefficient has no limit.
    """
    system = system or hybrid_system(t)
    exact = _reexpress(rel, t, system)
    return Contraction(rel, exact, limit_poly(exact))


def plane_relation(c1: Colour = LAMBDA, c2: Colour = MU) -> NcPoly:
    return load_families_by_name()["plane.yx"].relation_at(c1, c2)


def load_families_by_name() -> Dict[str, RuleFamily]:
    return {f.name: f for f in load_families()}


def basic_number(e: Exponent) -> CoeffPoly:
    """``[e]_q = (1 - q^e)/(1 - q) = (q^e - 1)/(q - 1)``."""
    return (CoeffPoly.qpow(e) - ONE) * CoeffPoly.pole(1)


@dataclass
class HybridRelation:
    c1: Colour
    c2: Colour
    lhs: NcPoly           # x'_1 y'_2 - q^{1-c1-c2} y'_2 x'_1
    rhs: NcPoly           # what it equals, as a multiple of y'_1 y'_2
    coefficient: CoeffPoly
    sign: int

    def to_json(self) -> dict:
        return {"lhs": self.lhs.text(), "rhs": self.rhs.text(), "coefficient": self.coefficient.text(),
                "sigma": self.sign, "limit": sympy.sstr(self.coefficient.limit_q1())}


def qh_hybrid_relation(c1: Colour = LAMBDA, c2: Colour = MU, t: GTransform = GTransform()) -> HybridRelation:
    """The exact (q,h)-plane relation ``x'y' - q^{1-c1-c2} y'x' = σ h [1-2c2]_q y'y'``."""
    rel = plane_relation(c1, c2)
    exact = contract_relation(rel, t).transformed
    lhs, rest = _split(exact)
    rhs = -rest
    yy = (gen("y", c1) * gen("y", c2)).terms
    (w, _), = yy.items()
    coeff = rhs.coeff(w)
    if len(rhs.terms) > 1:
        raise ValueError(f"unexpected hybrid right-hand side {rhs.text()}")
    target = H * basic_number(Exponent(1) - Exponent.of_colour(c2).scale(2))
    if coeff == target:
        sign = 1
    elif coeff == -target:
        sign = -1
    else:
        raise ValueError(f"hybrid coefficient {coeff.text()} is not ±h[1-2{c2.text()}]_q")
    return HybridRelation(c1, c2, lhs, rhs, coeff, sign)


def derived_sign(t: GTransform = GTransform()) -> int:
    """``σ`` in ``[x_λ, y_μ] = σ h (1-2μ) y_λ y_μ`` for the given convention."""
    return qh_hybrid_relation(LAMBDA, MU, t).sign


def commutator_limit(c1: Colour = LAMBDA, c2: Colour = MU, t: GTransform = GTransform()) -> LimitPoly:
    """``[x_1, y_2]`` expressed via the limit relation (a multiple of ``y_1 y_2``)."""
    lim = contract_relation(plane_relation(c1, c2), t).limit
    x1y2 = (Generator("x", c1), Generator("y", c2))
    y2x1 = (Generator("y", c2), Generator("x", c1))
    rest = {w: -c for w, c in lim.terms.items() if w not in (x1y2, y2x1)}
    return LimitPoly(rest)
