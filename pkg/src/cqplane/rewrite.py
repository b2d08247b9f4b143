"""Oriented rule families, normal forms and the overlap (local confluence) test.

Every rule rewrites an adjacent pair of letters.  A family is schematic in
two colour variables and is instantiated on demand for concrete colours.
Normalization rewrites the leftmost redex first; within a pair the first
family (manifest order) whose kinds match and whose guard holds wins.

Termination: each instantiated rule replaces its left-hand word by words
that are strictly smaller in degree-lexicographic order, letters compared by
``(kind, colour)``.  That order is a well-order compatible with
concatenation, so every rewrite sequence is finite.  ``verify=True`` asserts
the decrease for every instantiated rule.
"""

from __future__ import annotations

import itertools
import json
from dataclasses import dataclass
from importlib import resources
from pathlib import Path
from typing import Callable, Dict, Iterable, List, Mapping, Optional, Sequence, Tuple

from .algebra import COORDS, DERIVS, FORMS, FRT, KINDS, Generator, NcPoly, Word, word_key
from .colours import Colour, declare
from .parse import parse_expr

SECTORS: Dict[str, frozenset] = {
    "frt": FRT,
    "plane": COORDS,
    "hyperplane": FORMS,
    "forms": COORDS | FORMS,
    "calculus": COORDS | FORMS | DERIVS,
    "full": frozenset(KINDS),
}

PATTERN = declare(["l", "m"])
_L, _M = PATTERN["l"], PATTERN["m"]


class NoRuleForPair(LookupError):
    """Two adjacent letters are out of order and no family covers them."""

    def __init__(self, g1: Generator, g2: Generator):
        super().__init__(f"no rule orders {g1.text()}*{g2.text()}")
        self.pair = (g1, g2)


class InactiveKind(ValueError):
    pass


class MeasureViolation(AssertionError):
    pass


_GUARDS: Dict[str, Callable[[Colour, Colour], bool]] = {
    ">": lambda a, b: a > b,
    "<": lambda a, b: a < b,
    "=": lambda a, b: a == b,
    "!=": lambda a, b: a != b,
}


def _parse_guard(text: Optional[str]):
    if not text:
        return None
    for op in ("!=", ">", "<", "="):
        if op in text:
            left, right = (s.strip() for s in text.split(op, 1))
            if left not in PATTERN or right not in PATTERN:
                raise ValueError(f"bad guard {text!r}")
            return (left, op, right)
    raise ValueError(f"bad guard {text!r}")


class RuleFamily:
    """A colour-schematic rule ``k1[v1] k2[v2] -> rhs`` with optional guard."""

    def __init__(self, name: str, lhs: NcPoly, rhs: NcPoly, guard: Optional[str] = None,
                 relation: Optional[NcPoly] = None, block: str = "", source: Optional[dict] = None):
        if len(lhs.terms) != 1:
            raise ValueError(f"{name}: left-hand side must be a single word")
        (word, c), = lhs.terms.items()
        if len(word) != 2 or not c.is_one():
            raise ValueError(f"{name}: left-hand side must be a pair of letters with unit coefficient")
        self.name = name
        self.block = block
        self.kinds = (word[0].kind, word[1].kind)
        self.vars = (word[0].colour, word[1].colour)
        for v in self.vars:
            if v not in (_L, _M):
                raise ValueError(f"{name}: colours in lhs must be the variables l, m")
        self.lhs = lhs
        self.rhs = rhs
        self.guard_text = guard
        self.guard = _parse_guard(guard)
        self.relation = relation if relation is not None else lhs - rhs
        self.source = source or {}
        self._cache: Dict[Tuple[Colour, Colour], Optional[NcPoly]] = {}

    def bind(self, c1: Colour, c2: Colour) -> Optional[Dict[Colour, Colour]]:
        v1, v2 = self.vars
        if v1 == v2 and c1 != c2:
            return None
        binding = {v1: c1, v2: c2}
        if self.guard is not None:
            a, op, b = self.guard
            if not _GUARDS[op](binding[PATTERN[a]], binding[PATTERN[b]]):
                return None
        return binding

    def instantiate(self, c1: Colour, c2: Colour) -> Optional[NcPoly]:
        """Right-hand side for the pair ``k1[c1] k2[c2]``, or None if the guard fails."""
        key = (c1, c2)
        if key not in self._cache:
            binding = self.bind(c1, c2)
            self._cache[key] = None if binding is None else self.rhs.recolour(binding)
        return self._cache[key]

    def relation_at(self, c1: Colour, c2: Colour) -> NcPoly:
        """The displayed relation with ``l -> c1``, ``m -> c2`` (no guard)."""
        return self.relation.recolour({_L: c1, _M: c2})

    def rule_at(self, c1: Colour, c2: Colour) -> NcPoly:
        """``lhs - rhs`` at ``l -> c1``, ``m -> c2`` (no guard)."""
        return (self.lhs - self.rhs).recolour({_L: c1, _M: c2})

    def to_dict(self) -> dict:
        d = {"name": self.name, "block": self.block, "lhs": self.lhs.text(), "rhs": self.rhs.text(),
             "guard": self.guard_text, "relation": self.relation.text()}
        return d

    def __repr__(self) -> str:
        g = f" if {self.guard_text}" if self.guard_text else ""
        return f"RuleFamily({self.name}: {self.lhs.text()} -> {self.rhs.text()}{g})"


def families_from_dict(data: Mapping) -> List[RuleFamily]:
    """Build families from the declarative manifest format."""
    out: List[RuleFamily] = []
    names = set()
    for item in data.get("families", []):
        fam = RuleFamily(
            item["name"],
            parse_expr(item["lhs"], PATTERN),
            parse_expr(item["rhs"], PATTERN),
            item.get("guard"),
            parse_expr(item["relation"], PATTERN) if item.get("relation") else None,
            item.get("block", ""),
            item,
        )
        if fam.name in names:
            raise ValueError(f"duplicate family {fam.name}")
        names.add(fam.name)
        out.append(fam)
    for item in data.get("commute", []):
        for k1 in item["left"]:
            for k2 in item["right"]:
                lhs = parse_expr(f"{k1}[m]*{k2}[l]", PATTERN)
                rhs = parse_expr(f"{k2}[l]*{k1}[m]", PATTERN)
                out.append(RuleFamily(f"{item.get('block', 'commute')}.{k1}{k2}", lhs, rhs,
                                      block=item.get("block", "commute")))
    return out


def builtin_manifest() -> dict:
    with resources.files("cqplane").joinpath("data/rules.json").open("r", encoding="utf-8") as fh:
        return json.load(fh)


def load_families(source=None) -> List[RuleFamily]:
    """Families from a path, a manifest dict, or the built-in manifest."""
    if source is None:
        data = builtin_manifest()
    elif isinstance(source, Mapping):
        data = source
    else:
        data = json.loads(Path(source).read_text(encoding="utf-8"))
    return families_from_dict(data)


class RewriteSystem:
    """An immutable rule set restricted to a set of active generator kinds."""

    def __init__(self, families: Sequence[RuleFamily], kinds: Iterable[str] = KINDS,
                 verify: bool = False, name: str = ""):
        self.kinds = frozenset(kinds)
        self.name = name
        self.families = [f for f in families if set(f.kinds) <= self.kinds]
        self.verify = verify
        self._by_pair: Dict[Tuple[str, str], List[RuleFamily]] = {}
        for f in self.families:
            self._by_pair.setdefault(f.kinds, []).append(f)
        self._nf: Dict[Word, NcPoly] = {}

    @classmethod
    def sector(cls, name: str, families: Sequence[RuleFamily] | None = None, **kw) -> "RewriteSystem":
        if families is None:
            families = load_families()
        return cls(families, SECTORS[name], name=name, **kw)

    # rule lookup -----------------------------------------------------------
    def match(self, g1: Generator, g2: Generator) -> Optional[Tuple[RuleFamily, NcPoly]]:
        for fam in self._by_pair.get((g1.kind, g2.kind), ()):
            rhs = fam.instantiate(g1.colour, g2.colour)
            if rhs is not None:
                if self.verify:
                    top = word_key((g1, g2))
                    for w in rhs.terms:
                        if not word_key(w) < top:
                            raise MeasureViolation(f"{fam.name}: {w} does not decrease from {g1}{g2}")
                return fam, rhs
        return None

    def find_redex(self, w: Word) -> Optional[Tuple[int, RuleFamily, NcPoly]]:
        for i in range(len(w) - 1):
            m = self.match(w[i], w[i + 1])
            if m is not None:
                return (i, m[0], m[1])
            if w[i].key > w[i + 1].key:
                raise NoRuleForPair(w[i], w[i + 1])
        return None

    # normalization -----------------------------------------------------------
    def _check_kinds(self, p: NcPoly):
        extra = p.kinds() - self.kinds
        if extra:
            raise InactiveKind(f"kinds {sorted(extra)} are not active in this system")

    def normal_word(self, w: Word) -> NcPoly:
        hit = self._nf.get(w)
        if hit is not None:
            return hit
        red = self.find_redex(w)
        if red is None:
            out = NcPoly.word(w)
        else:
            i, _, rhs = red
            out = self.rewrite_at(w, i, rhs)
        self._nf[w] = out
        return out

    def rewrite_at(self, w: Word, i: int, rhs: NcPoly) -> NcPoly:
        pre, post = w[:i], w[i + 2:]
        out = NcPoly()
        for v, c in rhs.terms.items():
            out = out + self.normal_word(pre + v + post).scale(c)
        return out

    def normalize(self, p: NcPoly) -> NcPoly:
        self._check_kinds(p)
        out = NcPoly()
        for w, c in p.terms.items():
            out = out + self.normal_word(w).scale(c)
        return out

    def reduces_to_zero(self, p: NcPoly) -> bool:
        return self.normalize(p).is_zero()

    def is_normal(self, w: Word) -> bool:
        return self.find_redex(tuple(w)) is None

    # confluence ------------------------------------------------------------
    def overlap_report(self, colours: Sequence[Colour], kinds: Iterable[str] | None = None) -> List["Overlap"]:
        """All length-3 overlaps whose two reductions disagree."""
        kinds = sorted(self.kinds if kinds is None else kinds, key=KINDS.index)
        letters = [Generator(k, c) for k in kinds for c in colours]
        bad: List[Overlap] = []
        for g1, g2, g3 in itertools.product(letters, repeat=3):
            left = self.match(g1, g2)
            if left is None:
                continue
            right = self.match(g2, g3)
            if right is None:
                continue
            w = (g1, g2, g3)
            nf_left = self.rewrite_at(w, 0, left[1])
            nf_right = self.rewrite_at(w, 1, right[1])
            if nf_left != nf_right:
                bad.append(Overlap(w, left[0].name, right[0].name, nf_left, nf_right))
        return bad

    def manifest(self) -> dict:
        return {"version": builtin_manifest().get("version"), "kinds": sorted(self.kinds, key=KINDS.index),
                "families": [f.to_dict() for f in self.families]}


@dataclass
class Overlap:
    word: Word
    left_rule: str
    right_rule: str
    left_nf: NcPoly
    right_nf: NcPoly

    @property
    def difference(self) -> NcPoly:
        return self.left_nf - self.right_nf

    def text(self) -> str:
        w = "*".join(g.text() for g in self.word)
        return f"{w} [{self.left_rule} | {self.right_rule}]: {self.difference.text()}"

    def to_json(self) -> dict:
        return {"word": "*".join(g.text() for g in self.word), "rules": [self.left_rule, self.right_rule],
                "left": self.left_nf.text(), "right": self.right_nf.text(),
                "difference": self.difference.text()}


def normalize(p: NcPoly, sys: RewriteSystem) -> NcPoly:
    return sys.normalize(p)


def reduces_to_zero(p: NcPoly, sys: RewriteSystem) -> bool:
    return sys.reduces_to_zero(p)


def overlap_report(sys: RewriteSystem, colours: Sequence[Colour]) -> List[Overlap]:
    return sys.overlap_report(colours)
