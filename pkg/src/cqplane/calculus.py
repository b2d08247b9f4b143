"""The exterior differential on the coloured plane and its checks.

Two implementations of ``d`` are provided.

* Leibniz route (:func:`apply_d`): the input is brought to normal form,
  ``d`` is applied letterwise with ``d x_c = ξ_c``, ``d y_c = η_c``,
  ``d ξ = d η = 0`` and the graded sign ``(-1)^{|prefix|}``, and the result is
  normalized.  Normalizing first makes ``d`` a function on the quotient
  algebra, so the Leibniz and nilpotency checks are not tautological.
* Operator route (:func:`apply_d_operator`): ``d = ξ_c ∂x_c + η_c ∂y_c`` for a
  chosen representation colour ``c``.  ``∂ p`` is evaluated by multiplying
  ``∂`` on the left, normalizing, and dropping every word that still carries
  a derivative letter.
"""

from __future__ import annotations

import itertools
import random
from dataclasses import dataclass, field
from typing import Dict, Iterable, List, Optional, Sequence

from .algebra import DERIVS, FRT, Generator, NcPoly, Word, gen
from .coeff import CoeffPoly, Exponent
from .colours import Colour
from .rewrite import RewriteSystem


class UnsupportedSector(ValueError):
    pass


_D_OF = {"x": "xi", "y": "eta"}

_SYSTEMS: Dict[str, RewriteSystem] = {}


def calculus_system() -> RewriteSystem:
    if "calculus" not in _SYSTEMS:
        _SYSTEMS["calculus"] = RewriteSystem.sector("calculus")
    return _SYSTEMS["calculus"]


def _guard(p: NcPoly):
    bad = p.kinds() & FRT
    if bad:
        raise UnsupportedSector(f"d is not defined on FRT generators {sorted(bad)}")


def d_word(w: Word) -> NcPoly:
    """Graded Leibniz extension of ``d`` on a single word of the free algebra."""
    out = NcPoly()
    odd = 0
    for i, g in enumerate(w):
        if g.kind in _D_OF:
            term = NcPoly.word(w[:i] + (Generator(_D_OF[g.kind], g.colour),) + w[i + 1:])
            out = out + (-term if odd else term)
        elif g.kind in DERIVS:
            raise UnsupportedSector("d is only defined on coordinates and forms")
        odd ^= int(g.odd)
    return out


def apply_d(p: NcPoly, system: Optional[RewriteSystem] = None) -> NcPoly:
    """``d p`` by the Leibniz route, in normal form."""
    _guard(p)
    system = system or calculus_system()
    p = system.normalize(p)
    out = NcPoly()
    for w, c in p.terms.items():
        out = out + d_word(w).scale(c)
    return system.normalize(out)


def apply_derivative(kind: str, colour: Colour, p: NcPoly, system: Optional[RewriteSystem] = None) -> NcPoly:
    """``∂ p``: left-multiply by the derivative, normalize, drop ∂-bearing words."""
    if kind not in DERIVS:
        raise ValueError(f"not a derivative kind: {kind!r}")
    system = system or calculus_system()
    nf = system.normalize(gen(kind, colour) * p)
    return NcPoly({w: c for w, c in nf.terms.items() if not any(g.kind in DERIVS for g in w)})


def apply_d_operator(p: NcPoly, colour: Colour, system: Optional[RewriteSystem] = None) -> NcPoly:
    """``d p`` with ``d = ξ_c ∂x_c + η_c ∂y_c`` at representation colour ``c``."""
    _guard(p)
    system = system or calculus_system()
    p = system.normalize(p)
    out = gen("xi", colour) * apply_derivative("dx", colour, p, system) \
        + gen("eta", colour) * apply_derivative("dy", colour, p, system)
    return system.normalize(out)


@dataclass
class CalculusResult:
    ok: bool
    checked: int
    failures: Dict[str, str] = field(default_factory=dict)

    def __bool__(self) -> bool:
        return self.ok


def coordinate_words(colours: Sequence[Colour], max_degree: int, min_degree: int = 1) -> List[Word]:
    letters = [Generator(k, c) for k in ("x", "y") for c in colours]
    out = []
    for n in range(min_degree, max_degree + 1):
        out.extend(itertools.product(letters, repeat=n))
    return out


def _label(w: Word) -> str:
    return "*".join(g.text() for g in w)


def d_square_check(max_degree: int, colours: Sequence[Colour], limit: Optional[int] = None,
                   system: Optional[RewriteSystem] = None) -> CalculusResult:
    """``d(d w) = 0`` for every coordinate monomial up to ``max_degree``."""
    if max_degree < 1:
        raise ValueError("max_degree must be at least 1")
    fails = {}
    words = coordinate_words(colours, max_degree)
    for w in words:
        r = apply_d(apply_d(NcPoly.word(w), system), system)
        if not r.is_zero():
            fails[_label(w)] = r.text()
            if limit and len(fails) >= limit:
                break
    return CalculusResult(not fails, len(words), fails)


def d_colour_independence(p: NcPoly, colours: Sequence[Colour], system: Optional[RewriteSystem] = None) -> bool:
    """The operator route gives the same normal form at every representation colour."""
    forms = [apply_d_operator(p, c, system) for c in colours]
    return all(f == forms[0] for f in forms[1:])


def route_agreement(p: NcPoly, colour: Colour, system: Optional[RewriteSystem] = None) -> bool:
    """Operator route at ``colour`` equals the Leibniz route."""
    return apply_d_operator(p, colour, system) == apply_d(p, system)


def route_agreement_check(polys: Iterable[NcPoly], colours: Sequence[Colour], limit: Optional[int] = None,
                          system: Optional[RewriteSystem] = None) -> CalculusResult:
    fails = {}
    n = 0
    for p in polys:
        n += 1
        lb = apply_d(p, system)
        for c in colours:
            op = apply_d_operator(p, c, system)
            if op != lb:
                fails[f"{p.text()} @ {c.text()}"] = f"operator: {op.text()}; Leibniz: {lb.text()}"
                break
        if limit and len(fails) >= limit:
            break
    return CalculusResult(not fails, n, fails)


def colour_independence_check(polys: Iterable[NcPoly], colours: Sequence[Colour],
                              limit: Optional[int] = None, system: Optional[RewriteSystem] = None) -> CalculusResult:
    fails = {}
    n = 0
    for p in polys:
        n += 1
        forms = {c.text(): apply_d_operator(p, c, system) for c in colours}
        first = next(iter(forms.values()))
        if any(f != first for f in forms.values()):
            fails[p.text()] = "; ".join(f"d_{k}: {v.text()}" for k, v in forms.items())
            if limit and len(fails) >= limit:
                break
    return CalculusResult(not fails, n, fails)


def random_coordinate_poly(rng: random.Random, colours: Sequence[Colour], max_degree: int,
                           max_terms: int = 3) -> NcPoly:
    letters = [Generator(k, c) for k in ("x", "y") for c in colours]
    out = NcPoly()
    for _ in range(rng.randint(1, max_terms)):
        n = rng.randint(0, max_degree)
        w = tuple(rng.choice(letters) for _ in range(n))
        e = Exponent(rng.randint(-2, 2))
        for c in colours:
            e = e + Exponent.of_colour(c).scale(rng.randint(-1, 1))
        out = out + NcPoly.word(w, CoeffPoly.qpow(e, rng.choice([1, -1, 2, 3])))
    return out


def random_pairs(n: int, colours: Sequence[Colour], max_degree: int, seed: int = 0):
    rng = random.Random(seed)
    return [(random_coordinate_poly(rng, colours, max_degree), random_coordinate_poly(rng, colours, max_degree))
            for _ in range(n)]


def leibniz_check(pairs, limit: Optional[int] = None, system: Optional[RewriteSystem] = None) -> CalculusResult:
    """``d(fg) - d(f) g - f d(g) = 0`` for even ``f`` on the given pairs."""
    system = system or calculus_system()
    fails = {}
    for f, g in pairs:
        r = system.normalize(apply_d(f * g, system) - apply_d(f, system) * g - f * apply_d(g, system))
        if not r.is_zero():
            fails[f"({f.text()}) * ({g.text()})"] = r.text()
            if limit and len(fails) >= limit:
                break
    return CalculusResult(not fails, len(pairs), fails)
