"""Exact matrices over :class:`CoeffPoly`: R, R̂, B, C, D, F and the 8x8 checks.

Conventions.  Two-dimensional index order is (1, 2) = (x, y) = (ξ, η); the
tensor basis is ordered 11, 12, 21, 22 and ``kron`` is row-major,
``kron(A, B)[i*nB + k][j*nB + l] = A[i][j] * B[k][l]``.  The middle-leg
embedding is ``R13 = P23 · kron(R, I2) · P23`` with ``P23 = kron(I2, P)``.

Braided form.  With ``R̂ = P·R`` the coloured Yang-Baxter equation
``R12(λ,μ) R13(λ,ν) R23(μ,ν) = R23(μ,ν) R13(λ,ν) R12(λ,μ)`` is equivalent to
``R̂23(λ,μ) R̂12(λ,ν) R̂23(μ,ν) = R̂12(μ,ν) R̂23(λ,ν) R̂12(λ,μ)``; the two
residuals differ by left multiplication with ``P13``.
"""

from __future__ import annotations

from typing import Callable, List, Sequence

from .algebra import NcPoly, gen
from .coeff import ONE, Q, QINV, ZERO, CoeffPoly, Exponent
from .colours import Colour


class SingularMatrix(ArithmeticError):
    pass


class CMatrix:
    """Dense matrix of :class:`CoeffPoly`.  Immutable by convention."""

    def __init__(self, rows: Sequence[Sequence]):
        self.entries: List[List[CoeffPoly]] = [[_c(x) for x in r] for r in rows]
        self.rows = len(self.entries)
        self.cols = len(self.entries[0]) if self.entries else 0

    @classmethod
    def identity(cls, n: int) -> "CMatrix":
        return cls([[ONE if i == j else ZERO for j in range(n)] for i in range(n)])

    @classmethod
    def zeros(cls, r: int, c: int) -> "CMatrix":
        return cls([[ZERO] * c for _ in range(r)])

    def __getitem__(self, ij) -> CoeffPoly:
        i, j = ij
        return self.entries[i][j]

    def __add__(self, other: "CMatrix") -> "CMatrix":
        self._same_shape(other)
        return CMatrix([[a + b for a, b in zip(r1, r2)] for r1, r2 in zip(self.entries, other.entries)])

    def __sub__(self, other: "CMatrix") -> "CMatrix":
        self._same_shape(other)
        return CMatrix([[a - b for a, b in zip(r1, r2)] for r1, r2 in zip(self.entries, other.entries)])

    def __matmul__(self, other: "CMatrix") -> "CMatrix":
        if self.cols != other.rows:
            raise ValueError(f"shape mismatch {self.shape} @ {other.shape}")
        out = []
        for i in range(self.rows):
            row = []
            for j in range(other.cols):
                acc = ZERO
                for k in range(self.cols):
                    a = self.entries[i][k]
                    if a.is_zero():
                        continue
                    b = other.entries[k][j]
                    if not b.is_zero():
                        acc = acc + a * b
                row.append(acc)
            out.append(row)
        return CMatrix(out)

    def scale(self, c) -> "CMatrix":
        c = _c(c)
        return CMatrix([[c * x for x in r] for r in self.entries])

    def map(self, fn: Callable[[CoeffPoly], CoeffPoly]) -> "CMatrix":
        return CMatrix([[fn(x) for x in r] for r in self.entries])

    @property
    def shape(self):
        return (self.rows, self.cols)

    def _same_shape(self, other):
        if self.shape != other.shape:
            raise ValueError(f"shape mismatch {self.shape} vs {other.shape}")

    def is_zero(self) -> bool:
        return all(x.is_zero() for r in self.entries for x in r)

    def __eq__(self, other) -> bool:
        if not isinstance(other, CMatrix):
            return NotImplemented
        return self.shape == other.shape and (self - other).is_zero()

    def nonzero(self) -> list:
        """``(row, col, entry)`` for every nonzero entry, 1-based."""
        return [(i + 1, j + 1, x) for i, r in enumerate(self.entries) for j, x in enumerate(r) if not x.is_zero()]

    def subst_colours(self, binding) -> "CMatrix":
        return self.map(lambda x: x.subst_colours(binding))

    def inverse(self) -> "CMatrix":
        """Gauss-Jordan with unit (monomial) pivots only."""
        n = self.rows
        if n != self.cols:
            raise SingularMatrix("not square")
        a = [list(r) + [ONE if i == j else ZERO for j in range(n)] for i, r in enumerate(self.entries)]
        for col in range(n):
            piv = next((r for r in range(col, n) if a[r][col].is_unit()), None)
            if piv is None:
                raise SingularMatrix(f"no invertible pivot in column {col + 1}")
            a[col], a[piv] = a[piv], a[col]
            inv = a[col][col].inverse()
            a[col] = [inv * x for x in a[col]]
            for r in range(n):
                if r != col and not a[r][col].is_zero():
                    f = a[r][col]
                    a[r] = [x - f * y for x, y in zip(a[r], a[col])]
        return CMatrix([r[n:] for r in a])

    # rendering ----------------------------------------------------------
    def text(self) -> str:
        cells = [[x.text() for x in r] for r in self.entries]
        width = [max(len(cells[i][j]) for i in range(self.rows)) for j in range(self.cols)]
        return "\n".join("[ " + "  ".join(c.rjust(w) for c, w in zip(r, width)) + " ]" for r in cells)

    def latex(self) -> str:
        body = " \\\\\n".join(" & ".join(x.latex() for x in r) for r in self.entries)
        return "\\begin{pmatrix}\n" + body + "\n\\end{pmatrix}"

    def to_json(self) -> dict:
        return {"rows": self.rows, "cols": self.cols,
                "entries": [[x.to_json() for x in r] for r in self.entries],
                "text": [[x.text() for x in r] for r in self.entries]}

    def __repr__(self) -> str:
        return f"CMatrix({self.rows}x{self.cols})"


def _c(x) -> CoeffPoly:
    return x if isinstance(x, CoeffPoly) else CoeffPoly.const(x)


def qe(constant, *pairs) -> CoeffPoly:
    """``q^(constant + sum(coef * colour))`` from ``(coef, colour)`` pairs."""
    e = Exponent(constant)
    for coef, col in pairs:
        e = e + Exponent.of_colour(col).scale(coef)
    return CoeffPoly.qpow(e)


def flip() -> CMatrix:
    """The 4x4 permutation ``P(u ⊗ v) = v ⊗ u``."""
    p = [[ZERO] * 4 for _ in range(4)]
    for i in range(2):
        for j in range(2):
            p[2 * i + j][2 * j + i] = ONE
    return CMatrix(p)


def r_matrix(l: Colour, m: Colour) -> CMatrix:
    z = ZERO
    return CMatrix([
        [qe(1, (-1, l), (1, m)), z, z, z],
        [z, qe(0, (1, l), (1, m)), z, z],
        [z, Q - QINV, qe(0, (-1, l), (-1, m)), z],
        [z, z, z, qe(1, (1, l), (-1, m))],
    ])


def rhat_matrix(l: Colour, m: Colour) -> CMatrix:
    z = ZERO
    return CMatrix([
        [qe(1, (-1, l), (1, m)), z, z, z],
        [z, Q - QINV, qe(0, (-1, l), (-1, m)), z],
        [z, qe(0, (1, l), (1, m)), z, z],
        [z, z, z, qe(1, (1, l), (-1, m))],
    ])


def build_matrix(name: str, c1: Colour, c2: Colour) -> CMatrix:
    """One of R, Rhat, B, C, D, F at colours ``(c1, c2)``."""
    if name == "R":
        return r_matrix(c1, c2)
    if name == "Rhat":
        return rhat_matrix(c1, c2)
    if name in ("B", "F"):
        return rhat_matrix(c1, c2).scale(QINV)
    if name == "C":
        return rhat_matrix(c1, c2).scale(Q)
    if name == "D":
        return build_matrix("C", c1, c2).inverse()
    if name == "P":
        return flip()
    raise KeyError(f"unknown matrix {name!r}")


MATRIX_NAMES = ("R", "Rhat", "B", "C", "D", "F", "P")


def kron(a: CMatrix, b: CMatrix) -> CMatrix:
    out = [[ZERO] * (a.cols * b.cols) for _ in range(a.rows * b.rows)]
    for i in range(a.rows):
        for j in range(a.cols):
            x = a.entries[i][j]
            if x.is_zero():
                continue
            for k in range(b.rows):
                for l in range(b.cols):
                    y = b.entries[k][l]
                    if not y.is_zero():
                        out[i * b.rows + k][j * b.cols + l] = x * y
    return CMatrix(out)


I2 = CMatrix.identity(2)


def leg12(m: CMatrix) -> CMatrix:
    return kron(m, I2)


def leg23(m: CMatrix) -> CMatrix:
    return kron(I2, m)


def leg13(m: CMatrix) -> CMatrix:
    p23 = leg23(flip())
    return p23 @ leg12(m) @ p23


def p13() -> CMatrix:
    p12, p23 = leg12(flip()), leg23(flip())
    return p12 @ p23 @ p12


def ybe_residual(c1: Colour, c2: Colour, c3: Colour, r=r_matrix) -> CMatrix:
    """``R12(c1,c2) R13(c1,c3) R23(c2,c3) - R23(c2,c3) R13(c1,c3) R12(c1,c2)``."""
    r12, r13, r23 = leg12(r(c1, c2)), leg13(r(c1, c3)), leg23(r(c2, c3))
    return r12 @ r13 @ r23 - r23 @ r13 @ r12


def braided_ybe_residual(c1: Colour, c2: Colour, c3: Colour, rhat=rhat_matrix) -> CMatrix:
    """``R̂23(c1,c2) R̂12(c1,c3) R̂23(c2,c3) - R̂12(c2,c3) R̂23(c1,c3) R̂12(c1,c2)``."""
    lhs = leg23(rhat(c1, c2)) @ leg12(rhat(c1, c3)) @ leg23(rhat(c2, c3))
    rhs = leg12(rhat(c2, c3)) @ leg23(rhat(c1, c3)) @ leg12(rhat(c1, c2))
    return lhs - rhs


# ---------------------------------------------------------------------------
# matrices of noncommuting entries

def t_matrix(c: Colour) -> List[List[NcPoly]]:
    return [[gen("a", c), gen("b", c)], [gen("c", c), gen("d", c)]]


def _nc_matmul(a, b):
    n, k, m = len(a), len(b), len(b[0])
    return [[sum((a[i][t] * b[t][j] for t in range(k)), NcPoly()) for j in range(m)] for i in range(n)]


def _lift(m: CMatrix):
    return [[NcPoly.const(x) for x in r] for r in m.entries]


def rtt_relations(c1: Colour, c2: Colour, r=r_matrix) -> List[NcPoly]:
    """Entries of ``R(c1,c2) T1(c1) T2(c2) - T2(c2) T1(c1) R(c1,c2)``, row-major."""
    t1 = t_matrix(c1)
    t2 = t_matrix(c2)
    big1 = [[NcPoly()] * 4 for _ in range(4)]
    big2 = [[NcPoly()] * 4 for _ in range(4)]
    for i in range(2):
        for j in range(2):
            for k in range(2):
                for l in range(2):
                    if j == l:
                        big1[2 * i + j][2 * k + l] = t1[i][k]
                    if i == k:
                        big2[2 * i + j][2 * k + l] = t2[j][l]
    rm = _lift(r(c1, c2))
    lhs = _nc_matmul(_nc_matmul(rm, big1), big2)
    rhs = _nc_matmul(_nc_matmul(big2, big1), rm)
    return [lhs[i][j] - rhs[i][j] for i in range(4) for j in range(4)]


# ---------------------------------------------------------------------------
# component relations of the matrix forms

VECTORS = {
    "x": ("x", "y"),
    "xi": ("xi", "eta"),
    "d": ("dx", "dy"),
}

FORMS = ("plane", "hyperplane", "var_deriv", "deriv_deriv", "var_diff", "deriv_diff")


def _idx(i: int, j: int) -> int:
    return 2 * i + j


def component_expand(form: str, c1: Colour, c2: Colour) -> List[tuple]:
    """Component relations ``(label, polynomial)`` of one matrix-form relation.

    The colour case split: components with ``i != j`` use the matrix at
    ``(c1, c2)``, diagonal ones at ``(c2, c1)``.  F has no case split and
    only ``i <= j`` is expanded.
    """
    X, Y = VECTORS["x"], VECTORS["xi"]
    Dv = VECTORS["d"]

    def pick(name, i, j):
        return build_matrix(name, c1, c2) if i != j else build_matrix(name, c2, c1)

    out = []
    for i in range(2):
        for j in range(2):
            label = f"{form}[{i + 1}{j + 1}]({c1.text()},{c2.text()})"
            if form == "plane":
                m = pick("B", i, j)
                p = gen(X[i], c1) * gen(X[j], c2)
                for k in range(2):
                    for l in range(2):
                        p = p - (gen(X[k], c2) * gen(X[l], c1)).scale(m[_idx(i, j), _idx(k, l)])
            elif form == "hyperplane":
                m = pick("C", i, j)
                p = gen(Y[i], c1) * gen(Y[j], c2)
                for k in range(2):
                    for l in range(2):
                        p = p + (gen(Y[k], c2) * gen(Y[l], c1)).scale(m[_idx(i, j), _idx(k, l)])
            elif form == "var_deriv":
                # d_{j,c1} x^i_{c2} = delta_ij + C^{ik}_{jl} x^l_{c2} d_{k,c1}
                m = pick("C", i, j)
                p = gen(Dv[j], c1) * gen(X[i], c2) - (1 if i == j else 0)
                for k in range(2):
                    for l in range(2):
                        p = p - (gen(X[l], c2) * gen(Dv[k], c1)).scale(m[_idx(i, k), _idx(j, l)])
            elif form == "deriv_deriv":
                if i > j:
                    continue
                m = build_matrix("F", c1, c2)
                p = gen(Dv[i], c1) * gen(Dv[j], c2)
                for k in range(2):
                    for l in range(2):
                        p = p - (gen(Dv[k], c2) * gen(Dv[l], c1)).scale(m[_idx(l, k), _idx(j, i)])
            elif form == "var_diff":
                m = pick("C", i, j)
                p = gen(X[i], c1) * gen(Y[j], c2)
                for k in range(2):
                    for l in range(2):
                        p = p - (gen(Y[k], c2) * gen(X[l], c1)).scale(m[_idx(i, j), _idx(k, l)])
            elif form == "deriv_diff":
                # d_{j,c1} xi^i_{c2} = D^{ik}_{jl} xi^l_{c2} d_{k,c1}
                m = pick("D", i, j)
                p = gen(Dv[j], c1) * gen(Y[i], c2)
                for k in range(2):
                    for l in range(2):
                        p = p - (gen(Y[l], c2) * gen(Dv[k], c1)).scale(m[_idx(i, k), _idx(j, l)])
            else:
                raise KeyError(f"unknown matrix form {form!r}")
            out.append((label, p))
    return out


# ---------------------------------------------------------------------------
# converse check: explicit relations lie in the span of the components

FORM_BLOCKS = {
    "plane": ("plane",),
    "hyperplane": ("hyperplane",),
    "var_deriv": ("var-deriv",),
    "deriv_deriv": ("deriv-deriv",),
    "var_diff": ("var-diff",),
    "deriv_diff": ("deriv-diff",),
}


def _to_field(c: CoeffPoly, qsym, colsyms):
    """``q^e`` with integral ``e`` as a Laurent monomial in ``q`` and ``q^colour``."""
    import sympy

    total = sympy.Integer(0)
    for t in c.terms:
        if t.hpow or t.polepow:
            raise ValueError("span checks take pole-free, h-free coefficients")
        if t.exp.constant.denominator != 1 or any(v.denominator != 1 for _, v in t.exp.linear):
            raise ValueError(f"non-integral exponent {t.exp.text()}")
        term = sympy.Rational(t.rat.numerator, t.rat.denominator) * qsym ** int(t.exp.constant)
        for col, v in t.exp.linear:
            term *= colsyms[col] ** int(v)
        total += term
    return total


def span_membership(basis: Sequence[NcPoly], targets: Sequence[NcPoly]) -> List[bool]:
    """Exact linear-span membership over ``Q(q, q^c1, q^c2, ...)``."""
    import sympy
    from sympy.polys.matrices import DomainMatrix

    words = sorted({w for p in (*basis, *targets) for w in p.terms}, key=lambda w: (len(w), [g.key for g in w]))
    cols = sorted({c for p in (*basis, *targets) for c in p.colours() if c.is_symbol}, key=lambda c: c.key)
    qsym = sympy.Symbol("q")
    colsyms = {c: sympy.Symbol(f"q_{c.name}") for c in cols}
    dom = sympy.QQ.frac_field(qsym, *colsyms.values())

    def row(p):
        return [_to_field(p.coeff(w), qsym, colsyms) for w in words]

    def rank(rows):
        if not rows:
            return 0
        return DomainMatrix.from_list_sympy(len(rows), len(words), rows).convert_to(dom).rank()

    base_rows = [row(p) for p in basis]
    r0 = rank(base_rows)
    return [rank(base_rows + [row(t)]) == r0 for t in targets]


def component_span_check(form: str, c1: Colour, c2: Colour, families=None) -> dict:
    """Labels of explicit relations of ``form`` not in the span of its components."""
    from .rewrite import load_families

    families = load_families() if families is None else families
    pairs = [(c1, c2), (c2, c1), (c1, c1), (c2, c2)]
    basis = [p for u, v in pairs for _, p in component_expand(form, u, v)]
    targets = [(f"{f.name}({u.text()},{v.text()})", f.relation_at(u, v))
               for f in families if f.block in FORM_BLOCKS[form] for u, v in pairs]
    flags = span_membership(basis, [t for _, t in targets])
    return {label: p.text() for (label, p), ok in zip(targets, flags) if not ok}
