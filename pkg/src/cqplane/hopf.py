"""Coalgebra maps, quantum determinant, antipode and coaction checks.

All checks are decided by normal forms.  ``D_λ^{-1}`` is never adjoined:
the antipode is verified through adjugate identities.

At a single colour the FRT relations are those of a two-parameter
``GL_{p,q'}(2)`` with ``p = q^{1+2λ}``, ``q' = q^{1-2λ}``, so ``D_λ`` is only
q-central: ``D b = q^{4λ} b D`` and ``D c = q^{-4λ} c D``.  Consequently
``Adj·T = D·I`` holds while ``T·Adj = D·I`` fails for ``λ ≠ 0``; the right
inverse property of ``S(T) = D^{-1}·Adj`` instead reads ``σ(T)·Adj = D·I``
with ``σ(t) = D t D^{-1}``.  Both forms are exposed.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Callable, Dict, Iterable, List, Mapping, Optional, Sequence, Tuple

from .algebra import Generator, NcPoly, Word, gen
from .coeff import ZERO, CoeffPoly, Exponent
from .colours import Colour
from .rewrite import RewriteSystem, RuleFamily, load_families

Matrix2 = List[List[NcPoly]]


def qe(constant, *pairs) -> CoeffPoly:
    e = Exponent(constant)
    for coef, col in pairs:
        e = e + Exponent.of_colour(col).scale(coef)
    return CoeffPoly.qpow(e)


def _frt_system(system: Optional[RewriteSystem]) -> RewriteSystem:
    return system if system is not None else RewriteSystem.sector("frt")


def t_matrix(colour: Colour) -> Matrix2:
    return [[gen("a", colour), gen("b", colour)], [gen("c", colour), gen("d", colour)]]


def matmul2(x: Matrix2, y: Matrix2) -> Matrix2:
    return [[x[i][0] * y[0][j] + x[i][1] * y[1][j] for j in range(2)] for i in range(2)]


def determinant(colour: Colour, system: Optional[RewriteSystem] = None) -> NcPoly:
    """``D = a d - q^{1-2c} c b`` in normal form."""
    a, b, c, d = (gen(k, colour) for k in "abcd")
    return _frt_system(system).normalize(a * d - (c * b).scale(qe(1, (-2, colour))))


def adjugate(colour: Colour) -> Matrix2:
    a, b, c, d = (gen(k, colour) for k in "abcd")
    return [[d, -b.scale(qe(-1, (2, colour)))], [-c.scale(qe(1, (-2, colour))), a]]


def twist(colour: Colour) -> Matrix2:
    """``σ(T) = D T D^{-1}`` entrywise, as derived from the q-centrality of D."""
    a, b, c, d = (gen(k, colour) for k in "abcd")
    return [[a, b.scale(qe(0, (4, colour)))], [c.scale(qe(0, (-4, colour))), d]]


@dataclass
class AntipodeResult:
    colour: Colour
    left: List[NcPoly]   # Adj·T - D·I, normalized, row-major
    right: List[NcPoly]  # T·Adj - D·I
    twisted: List[NcPoly]  # σ(T)·Adj - D·I

    @property
    def left_ok(self) -> bool:
        return all(p.is_zero() for p in self.left)

    @property
    def right_ok(self) -> bool:
        return all(p.is_zero() for p in self.right)

    @property
    def twisted_ok(self) -> bool:
        return all(p.is_zero() for p in self.twisted)

    @property
    def ok(self) -> bool:
        """The literal two-sided identity ``Adj·T = T·Adj = D·I``."""
        return self.left_ok and self.right_ok

    def residuals(self) -> Dict[str, str]:
        out = {}
        for name, ps in (("Adj*T", self.left), ("T*Adj", self.right), ("sigma(T)*Adj", self.twisted)):
            for k, p in enumerate(ps):
                if not p.is_zero():
                    out[f"{name}[{k // 2 + 1}{k % 2 + 1}]"] = p.text()
        return out


def _minus_d(m: Matrix2, det: NcPoly, system: RewriteSystem) -> List[NcPoly]:
    return [system.normalize(m[i][j] - (det if i == j else NcPoly())) for i in range(2) for j in range(2)]


def antipode_report(colour: Colour, adj: Optional[Matrix2] = None,
                    system: Optional[RewriteSystem] = None) -> AntipodeResult:
    system = _frt_system(system)
    t = t_matrix(colour)
    adj = adj if adj is not None else adjugate(colour)
    det = determinant(colour, system)
    return AntipodeResult(
        colour,
        _minus_d(matmul2(adj, t), det, system),
        _minus_d(matmul2(t, adj), det, system),
        _minus_d(matmul2(twist(colour), adj), det, system),
    )


def antipode_check(colour: Colour, adj: Optional[Matrix2] = None,
                   system: Optional[RewriteSystem] = None) -> bool:
    """``Adj·T = T·Adj = D·I`` after normalization."""
    return antipode_report(colour, adj, system).ok


def centrality_report(colour: Colour, others: Sequence[Colour] = (),
                      system: Optional[RewriteSystem] = None) -> Dict[str, str]:
    """Normalized commutators ``[D_c, t]`` for the generators at ``c`` and at ``others``."""
    system = _frt_system(system)
    det = determinant(colour, system)
    out = {}
    for col in (colour, *others):
        for k in "abcd":
            t = gen(k, col)
            out[t.text()] = system.normalize(det * t - t * det).text()
    return out


# ---------------------------------------------------------------------------
# two-leg tensor algebra

class Tensor:
    """Element of ``A ⊗ B``; the legs commute across the tensor sign."""

    __slots__ = ("terms",)

    def __init__(self, terms: Optional[Mapping[Tuple[Word, Word], CoeffPoly]] = None):
        self.terms: Dict[Tuple[Word, Word], CoeffPoly] = {}
        for k, c in (terms or {}).items():
            if not c.is_zero():
                self.terms[k] = c

    @classmethod
    def pure(cls, left: NcPoly, right: NcPoly) -> "Tensor":
        out: Dict[Tuple[Word, Word], CoeffPoly] = {}
        for w1, c1 in left.terms.items():
            for w2, c2 in right.terms.items():
                k = (w1, w2)
                out[k] = out.get(k, ZERO) + c1 * c2
        return cls(out)

    @classmethod
    def scalar(cls, c) -> "Tensor":
        return cls.pure(NcPoly.const(c), NcPoly.const(1))

    def __add__(self, other: "Tensor") -> "Tensor":
        out = dict(self.terms)
        for k, c in other.terms.items():
            out[k] = out.get(k, ZERO) + c
        return Tensor(out)

    def __neg__(self) -> "Tensor":
        return Tensor({k: -c for k, c in self.terms.items()})

    def __sub__(self, other: "Tensor") -> "Tensor":
        return self + (-other)

    def __mul__(self, other: "Tensor") -> "Tensor":
        out: Dict[Tuple[Word, Word], CoeffPoly] = {}
        for (u1, v1), c1 in self.terms.items():
            for (u2, v2), c2 in other.terms.items():
                k = (u1 + u2, v1 + v2)
                out[k] = out.get(k, ZERO) + c1 * c2
        return Tensor(out)

    def scale(self, c: CoeffPoly) -> "Tensor":
        return Tensor({k: c * v for k, v in self.terms.items()})

    def is_zero(self) -> bool:
        return not self.terms

    def normalize(self, left: RewriteSystem, right: RewriteSystem) -> "Tensor":
        out = Tensor()
        for (u, v), c in self.terms.items():
            out = out + Tensor.pure(left.normal_word(u), right.normal_word(v)).scale(c)
        return out

    def text(self) -> str:
        if not self.terms:
            return "0"
        parts = []
        for (u, v), c in sorted(self.terms.items(), key=lambda kv: (len(kv[0][0]) + len(kv[0][1]),
                                                                     [g.key for g in kv[0][0]],
                                                                     [g.key for g in kv[0][1]])):
            lt = "*".join(g.text() for g in u) or "1"
            rt = "*".join(g.text() for g in v) or "1"
            parts.append(f"({c.text()})*{lt} (x) {rt}")
        return " + ".join(parts)


def apply_map(p: NcPoly, image: Callable[[Generator], Tensor]) -> Tensor:
    """Extend a letter map multiplicatively and linearly to ``p``."""
    out = Tensor()
    cache: Dict[Generator, Tensor] = {}
    for w, c in p.terms.items():
        acc = Tensor.scalar(c)
        for g in w:
            if g not in cache:
                cache[g] = image(g)
            acc = acc * cache[g]
        out = out + acc
    return out


_IDX = {"a": (0, 0), "b": (0, 1), "c": (1, 0), "d": (1, 1)}
_KIND = {v: k for k, v in _IDX.items()}


def coproduct_image(g: Generator) -> Tensor:
    """``Δ t_ij = Σ_k t_ik ⊗ t_kj`` at the letter's colour."""
    i, j = _IDX[g.kind]
    return sum((Tensor.pure(gen(_KIND[(i, k)], g.colour), gen(_KIND[(k, j)], g.colour)) for k in range(2)),
               Tensor())


def frt_relations(c1: Colour, c2: Colour, families: Optional[Sequence[RuleFamily]] = None) -> List[Tuple[str, NcPoly]]:
    """Every FRT relation instantiated at all colour assignments from ``{c1, c2}``."""
    return block_relations(("frt-exchange", "frt-colour", "frt-same-kind"), c1, c2, families)


def block_relations(blocks: Iterable[str], c1: Colour, c2: Colour,
                    families: Optional[Sequence[RuleFamily]] = None) -> List[Tuple[str, NcPoly]]:
    families = load_families() if families is None else families
    blocks = set(blocks)
    pairs = [(c1, c2), (c2, c1), (c1, c1)] if c1 != c2 else [(c1, c1)]
    out = []
    for fam in families:
        if fam.block not in blocks:
            continue
        for u, v in pairs:
            rel = fam.relation_at(u, v)
            if not rel.is_zero():
                out.append((f"{fam.name}({u.text()},{v.text()})", rel))
    return out


@dataclass
class CheckResult:
    ok: bool
    residuals: Dict[str, str] = field(default_factory=dict)

    def __bool__(self) -> bool:
        return self.ok


def _tensor_check(relations, image, left: RewriteSystem, right: RewriteSystem) -> CheckResult:
    bad = {}
    for label, rel in relations:
        r = apply_map(rel, image).normalize(left, right)
        if not r.is_zero():
            bad[label] = r.text()
    return CheckResult(not bad, bad)


def coproduct_check(c1: Colour, c2: Colour, image: Callable[[Generator], Tensor] = coproduct_image,
                    system: Optional[RewriteSystem] = None) -> CheckResult:
    system = _frt_system(system)
    return _tensor_check(frt_relations(c1, c2), image, system, system)


def coproduct_is_homomorphism(c1: Colour, c2: Colour, image: Callable[[Generator], Tensor] = coproduct_image,
                              system: Optional[RewriteSystem] = None) -> bool:
    return coproduct_check(c1, c2, image, system).ok


def counit_check(c1: Colour, c2: Colour) -> CheckResult:
    """``ε(T) = I`` sends every FRT relation to a scalar that must vanish."""
    eps = {"a": 1, "b": 0, "c": 0, "d": 1}
    bad = {}
    for label, rel in frt_relations(c1, c2):
        total = ZERO
        for w, c in rel.terms.items():
            v = c
            for g in w:
                v = v * eps[g.kind]
            total = total + v
        if not total.is_zero():
            bad[label] = total.text()
    return CheckResult(not bad, bad)


def left_coaction_image(g: Generator) -> Tensor:
    """``x ↦ a⊗x + b⊗y``, ``y ↦ c⊗x + d⊗y`` at the letter's colour."""
    c = g.colour
    row = {"x": ("a", "b"), "y": ("c", "d")}[g.kind]
    return Tensor.pure(gen(row[0], c), gen("x", c)) + Tensor.pure(gen(row[1], c), gen("y", c))


def right_coaction_image(g: Generator) -> Tensor:
    """Row-vector form ``(ξ η) ↦ (ξ η) ⊗ T``: ``ξ ↦ ξ⊗a + η⊗c``, ``η ↦ ξ⊗b + η⊗d``."""
    c = g.colour
    col = {"xi": ("a", "c"), "eta": ("b", "d")}[g.kind]
    return Tensor.pure(gen("xi", c), gen(col[0], c)) + Tensor.pure(gen("eta", c), gen(col[1], c))


def right_coaction_column_image(g: Generator) -> Tensor:
    """Column form ``ξ^i ↦ Σ_j ξ^j ⊗ T_ij``: ``ξ ↦ ξ⊗a + η⊗b``, ``η ↦ ξ⊗c + η⊗d``.

    This is how ``ξ = dx`` transforms under the left coaction on the plane,
    with the legs written in the other order.
    """
    c = g.colour
    row = {"xi": ("a", "b"), "eta": ("c", "d")}[g.kind]
    return Tensor.pure(gen("xi", c), gen(row[0], c)) + Tensor.pure(gen("eta", c), gen(row[1], c))


RIGHT_CONVENTIONS = {"row": right_coaction_image, "column": right_coaction_column_image}


def coaction_check(side: str, c1: Colour, c2: Colour,
                   families: Optional[Sequence[RuleFamily]] = None, convention: str = "row") -> CheckResult:
    """Push every plane (left) or hyperplane (right) relation through the coaction.

    ``convention`` selects the right coaction: ``row`` is the displayed
    ``(ξ η) ⊗ T``, ``column`` its transpose.
    """
    families = load_families() if families is None else families
    frt = RewriteSystem.sector("frt", families)
    if side == "left":
        rels = block_relations(("plane",), c1, c2, families)
        return _tensor_check(rels, left_coaction_image, frt, RewriteSystem.sector("plane", families))
    if side == "right":
        rels = block_relations(("hyperplane",), c1, c2, families)
        image = RIGHT_CONVENTIONS[convention]
        return _tensor_check(rels, image, RewriteSystem.sector("hyperplane", families), frt)
    raise ValueError(f"side must be 'left' or 'right', not {side!r}")


def coaction_invariance(side: str, c1: Colour, c2: Colour, convention: str = "row") -> bool:
    return coaction_check(side, c1, c2, convention=convention).ok
