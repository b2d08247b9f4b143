"""Uncoloured reference rules and the colourless / exchange-symmetry checks.

The reference set is the textbook presentation of GL_q(2), the Manin plane
``xy = qyx`` and the two-dimensional Wess-Zumino calculus, written out by
hand in the kernel's normal order.  It is deliberately independent of the
coloured manifest so that the colourless comparison is a real cross-check.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Dict, List, Optional, Sequence, Tuple

from .algebra import NcPoly, Word, colour_swap, eval_colourless
from .colours import Colour, ZERO
from .parse import parse_expr
from .rewrite import RewriteSystem, RuleFamily, load_families

_C0 = {"0": ZERO}

# lhs -> rhs, colour 0 written explicitly
REFERENCE_RULES: Dict[str, str] = {
    # GL_q(2)
    "b*a": "q^-1*a*b",
    "c*a": "q^-1*a*c",
    "c*b": "b*c",
    "d*b": "q^-1*b*d",
    "d*c": "q^-1*c*d",
    "d*a": "a*d - (q - q^-1)*b*c",
    # Manin plane
    "y*x": "q^-1*x*y",
    # exterior plane
    "xi*xi": "0",
    "eta*eta": "0",
    "eta*xi": "-q*xi*eta",
    # coordinates and differentials
    "xi*x": "q^-2*x*xi",
    "xi*y": "q^-1*y*xi",
    "eta*y": "q^-2*y*eta",
    "eta*x": "q^-1*x*eta - (q - q^-1)*xi*y",
    # derivatives and coordinates
    "dx*x": "1 + q^2*x*dx + (q^2 - 1)*y*dy",
    "dx*y": "q*y*dx",
    "dy*x": "q*x*dy",
    "dy*y": "1 + q^2*y*dy",
    # derivatives
    "dy*dx": "q*dx*dy",
    # derivatives and differentials
    "dx*xi": "q^-2*xi*dx",
    "dx*eta": "q^-1*eta*dx",
    "dy*xi": "q^-1*xi*dy",
    "dy*eta": "q^-2*eta*dy + (q^-2 - 1)*xi*dx",
}

# group entries commute with coordinates and differentials
for _k1 in ("x", "y", "xi", "eta"):
    for _k2 in "abcd":
        REFERENCE_RULES[f"{_k1}*{_k2}"] = f"{_k2}*{_k1}"


def _colour0(src: str) -> str:
    import re
    return re.sub(r"\b(a|b|c|d|x|y|xi|eta|dx|dy)\b(?!\[)", r"\1[0]", src)


def reference_rules() -> Dict[Word, NcPoly]:
    out = {}
    for lhs, rhs in REFERENCE_RULES.items():
        (w, _), = parse_expr(_colour0(lhs), _C0).terms.items()
        out[w] = parse_expr(_colour0(rhs), _C0)
    return out


def colourless_rules(families: Optional[Sequence[RuleFamily]] = None) -> Dict[Word, NcPoly]:
    """Every family instantiated at ``λ = μ = 0``, guards respected."""
    families = load_families() if families is None else families
    out: Dict[Word, NcPoly] = {}
    for f in families:
        rhs = f.instantiate(ZERO, ZERO)
        if rhs is None:
            continue
        (w, _), = f.lhs.recolour({v: ZERO for v in f.vars}).terms.items()
        out.setdefault(w, rhs)
    return out


def reference_system() -> RewriteSystem:
    fams = []
    for k, (w, rhs) in enumerate(reference_rules().items()):
        fams.append(_FixedRule(f"ref.{k}", w, rhs))
    return _FixedSystem(fams)


class _FixedRule:
    def __init__(self, name: str, word: Word, rhs: NcPoly):
        self.name, self.word, self.rhs = name, word, rhs


class _FixedSystem(RewriteSystem):
    """A rewrite system of ground (colour-free) rules."""

    def __init__(self, rules: Sequence[_FixedRule]):
        super().__init__([], name="reference")
        self._ground = {r.word: r for r in rules}

    def match(self, g1, g2):
        r = self._ground.get((g1, g2))
        return None if r is None else (r, r.rhs)


@dataclass
class ColourlessResult:
    ok: bool
    mismatches: Dict[str, str] = field(default_factory=dict)


def _wtext(w: Word) -> str:
    return "*".join(g.text() for g in w)


def colourless_check(families: Optional[Sequence[RuleFamily]] = None) -> ColourlessResult:
    """Colourless rules equal the reference rules; relations agree both ways."""
    families = load_families() if families is None else families
    mine = colourless_rules(families)
    ref = reference_rules()
    bad = {}
    for w in sorted(set(mine) | set(ref), key=lambda w: [g.key for g in w]):
        a, b = mine.get(w), ref.get(w)
        if a is None:
            bad[_wtext(w)] = f"missing from the coloured families (reference: {b.text()})"
        elif b is None:
            bad[_wtext(w)] = f"not in the reference (coloured: {a.text()})"
        elif a != b:
            bad[_wtext(w)] = f"coloured {a.text()} vs reference {b.text()}"
    # every colourless relation holds in the reference algebra
    refsys = reference_system()
    for f in families:
        rel = eval_colourless(f.relation)
        if not rel.is_zero():
            nf = refsys.normalize(rel)
            if not nf.is_zero():
                bad[f"{f.name}@0"] = f"reduces to {nf.text()} under the reference rules"
    return ColourlessResult(not bad, bad)


def relation_polynomials(c1: Colour, c2: Colour, families: Optional[Sequence[RuleFamily]] = None,
                         blocks: Optional[Sequence[str]] = None) -> List[Tuple[str, NcPoly]]:
    families = load_families() if families is None else families
    return [(f"{f.name}({c1.text()},{c2.text()})", f.relation_at(c1, c2)) for f in families
            if blocks is None or f.block in blocks]


def exchange_symmetry_check(c1: Colour, c2: Colour, families: Optional[Sequence[RuleFamily]] = None,
                            system: Optional[RewriteSystem] = None) -> ColourlessResult:
    """The ``c1 ↔ c2`` image of every relation reduces to zero."""
    families = load_families() if families is None else families
    system = system or RewriteSystem.sector("full", families)
    bad = {}
    for label, rel in relation_polynomials(c1, c2, families):
        nf = system.normalize(colour_swap(rel, c1, c2))
        if not nf.is_zero():
            bad[label] = nf.text()
    return ColourlessResult(not bad, bad)
