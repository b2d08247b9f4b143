"""Named checks, suite definitions and reports.

A suite file is JSON::

    {"name": "my-suite",
     "colours": "l,m,n",                 # optional, defaults to $CQPLANE_COLOURS or l,m,n
     "rules": "path/to/rules.json",      # optional rule manifest (path or inline object)
     "checks": [{"check": "ybe"},
                {"check": "d_square", "params": {"max_degree": 2}, "name": "d2-small"}]}

Check parameters named ``colours`` take comma-separated colour names.  The
report schema (``REPORT_SCHEMA``) is a JSON list of objects with keys
``name``, ``check``, ``status`` (``pass``/``fail``/``error``), ``params``,
``detail``, ``residual`` and ``seconds``.
"""

from __future__ import annotations

import json
import os
import random
import time
import traceback
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass, field
from fractions import Fraction
from pathlib import Path
from typing import Any, Callable, Dict, List, Mapping, Optional, Sequence

from . import calculus, contraction, hopf, matrices, reference
from .algebra import NcPoly, gen
from .coeff import ONE, CoeffPoly, Exponent
from .colours import Colour, declare
from .rewrite import RewriteSystem, load_families

REPORT_SCHEMA = "cqplane.report/1"
COLOUR_ENV = "CQPLANE_COLOURS"


class SuiteError(ValueError):
    """Invalid suite definition (unknown check, bad parameter, unreadable rules)."""


@dataclass
class Outcome:
    ok: bool
    detail: Dict[str, Any] = field(default_factory=dict)
    residual: Dict[str, Any] = field(default_factory=dict)


@dataclass
class Context:
    colours: Dict[str, Colour]
    families: list

    def pick(self, names, n: Optional[int] = None) -> List[Colour]:
        if isinstance(names, str):
            names = [s.strip() for s in names.split(",") if s.strip()]
        if names is None:
            names = list(self.colours)
        try:
            cols = [self.colours[s] if s in self.colours else Colour.const(s) for s in names]
        except (ValueError, ZeroDivisionError) as exc:
            raise SuiteError(f"unknown colour in {names}") from exc
        if n is not None:
            if len(cols) < n:
                raise SuiteError(f"need {n} colours, got {len(cols)}")
            cols = cols[:n]
        return cols

    def system(self, sector: str) -> RewriteSystem:
        return RewriteSystem.sector(sector, self.families)


CHECKS: Dict[str, Callable[[Context, dict], Outcome]] = {}
DEFAULTS: Dict[str, dict] = {}


def register(name: str, **defaults):
    def deco(fn):
        CHECKS[name] = fn
        DEFAULTS[name] = defaults
        return fn
    return deco


def _matrix_residual(m: matrices.CMatrix) -> Dict[str, str]:
    return {f"({i},{j})": x.text() for i, j, x in m.nonzero()}


def _perturbed_r(perturb):
    if not perturb:
        return matrices.r_matrix
    i, j = perturb

    def r(c1, c2):
        m = matrices.r_matrix(c1, c2)
        rows = [list(row) for row in m.entries]
        rows[i - 1][j - 1] = rows[i - 1][j - 1] * matrices.Q + matrices.ONE
        return matrices.CMatrix(rows)
    return r


@register("ybe", colours=None, perturb=None)
def _ybe(ctx, p):
    c = ctx.pick(p["colours"], 3)
    res = matrices.ybe_residual(*c, r=_perturbed_r(p["perturb"]))
    return Outcome(res.is_zero(), {"shape": list(res.shape)}, _matrix_residual(res))


@register("braided_ybe", colours=None)
def _bybe(ctx, p):
    c = ctx.pick(p["colours"], 3)
    res = matrices.braided_ybe_residual(*c)
    return Outcome(res.is_zero(), {"shape": list(res.shape)}, _matrix_residual(res))


@register("rhat_is_p_r", colours=None)
def _rhat(ctx, p):
    c1, c2 = ctx.pick(p["colours"], 2)
    diff = matrices.rhat_matrix(c1, c2) - matrices.flip() @ matrices.r_matrix(c1, c2)
    return Outcome(diff.is_zero(), {}, _matrix_residual(diff))


@register("braided_equivalence", colours=None)
def _beq(ctx, p):
    c = ctx.pick(p["colours"], 3)
    diff = matrices.braided_ybe_residual(*c) - matrices.p13() @ matrices.ybe_residual(*c)
    return Outcome(diff.is_zero(), {"identity": "braided = P13 * ybe"}, _matrix_residual(diff))


@register("dc_inverse", colours=None)
def _dc(ctx, p):
    c1, c2 = ctx.pick(p["colours"], 2)
    C, D = matrices.build_matrix("C", c1, c2), matrices.build_matrix("D", c1, c2)
    i4 = matrices.CMatrix.identity(4)
    res = {}
    res.update({f"DC{k}": v for k, v in _matrix_residual(D @ C - i4).items()})
    res.update({f"CD{k}": v for k, v in _matrix_residual(C @ D - i4).items()})
    return Outcome(not res, {}, res)


@register("rtt", colours=None)
def _rtt(ctx, p):
    c1, c2 = ctx.pick(p["colours"], 2)
    sys_ = ctx.system("frt")
    res = {}
    for k, e in enumerate(matrices.rtt_relations(c1, c2)):
        nf = sys_.normalize(e)
        if not nf.is_zero():
            res[f"({k // 4 + 1},{k % 4 + 1})"] = nf.text()
    return Outcome(not res, {"entries": 16}, res)


@register("confluence", sector="frt", colours=None)
def _conf(ctx, p):
    cols = ctx.pick(p["colours"])
    sys_ = ctx.system(p["sector"])
    bad = sys_.overlap_report(cols)
    return Outcome(not bad, {"sector": p["sector"], "colours": [c.text() for c in cols], "unresolved": len(bad)},
                   {o.text(): o.difference.text() for o in bad[:50]})


@register("components", form=None, colours=None)
def _comp(ctx, p):
    c1, c2 = ctx.pick(p["colours"], 2)
    forms = [p["form"]] if p["form"] else list(matrices.FORMS)
    sys_ = ctx.system("calculus")
    res = {}
    n = 0
    for form in forms:
        for u, v in ((c1, c2), (c2, c1), (c1, c1)):
            for label, poly in matrices.component_expand(form, u, v):
                n += 1
                nf = sys_.normalize(poly)
                if not nf.is_zero():
                    res[label] = nf.text()
        for label, text in matrices.component_span_check(form, c1, c2, ctx.families).items():
            res[f"not spanned: {label}"] = text
    return Outcome(not res, {"forms": forms, "components": n}, res)


@register("coproduct", colours=None)
def _cop(ctx, p):
    c1, c2 = ctx.pick(p["colours"], 2)
    r = hopf.coproduct_check(c1, c2, system=ctx.system("frt"))
    return Outcome(r.ok, {}, r.residuals)


@register("counit", colours=None)
def _counit(ctx, p):
    c1, c2 = ctx.pick(p["colours"], 2)
    r = hopf.counit_check(c1, c2)
    return Outcome(r.ok, {}, r.residuals)


@register("antipode", colours=None)
def _anti(ctx, p):
    (c,) = ctx.pick(p["colours"], 1)
    r = hopf.antipode_report(c, system=ctx.system("frt"))
    res = {k: v for k, v in r.residuals().items() if not k.startswith("sigma")}
    return Outcome(r.ok, {"Adj*T=D*I": r.left_ok, "T*Adj=D*I": r.right_ok, "sigma(T)*Adj=D*I": r.twisted_ok}, res)


@register("antipode_twisted", colours=None)
def _anti_tw(ctx, p):
    (c,) = ctx.pick(p["colours"], 1)
    r = hopf.antipode_report(c, system=ctx.system("frt"))
    res = {k: v for k, v in r.residuals().items() if not k.startswith("T*Adj")}
    return Outcome(r.left_ok and r.twisted_ok, {"Adj*T=D*I": r.left_ok, "sigma(T)*Adj=D*I": r.twisted_ok}, res)


@register("centrality", colours=None)
def _central(ctx, p):
    cols = ctx.pick(p["colours"])
    rep = hopf.centrality_report(cols[0], cols[1:], system=ctx.system("frt"))
    return Outcome(True, {"commutators": rep})


@register("coaction", side="left", convention="row", colours=None)
def _coact(ctx, p):
    c1, c2 = ctx.pick(p["colours"], 2)
    if p["side"] not in ("left", "right"):
        raise SuiteError("side must be left or right")
    r = hopf.coaction_check(p["side"], c1, c2, ctx.families, convention=p["convention"])
    return Outcome(r.ok, {"side": p["side"], "convention": p["convention"]}, r.residuals)


def _calc_system(ctx):
    return ctx.system("calculus")


@register("d_square", max_degree=3, colours=None)
def _d2(ctx, p):
    cols = ctx.pick(p["colours"])
    r = calculus.d_square_check(p["max_degree"], cols, limit=20, system=_calc_system(ctx))
    return Outcome(r.ok, {"monomials": r.checked}, r.failures)


@register("leibniz", pairs=100, max_degree=3, seed=0, colours=None)
def _leib(ctx, p):
    cols = ctx.pick(p["colours"])
    pairs = calculus.random_pairs(p["pairs"], cols, p["max_degree"], p["seed"])
    r = calculus.leibniz_check(pairs, system=_calc_system(ctx))
    return Outcome(r.ok, {"pairs": r.checked, "failed": len(r.failures)}, dict(list(r.failures.items())[:20]))


def _calc_polys(cols, max_degree, pairs, seed):
    polys = [NcPoly.word(w) for w in calculus.coordinate_words(cols, max_degree)]
    for f, g in calculus.random_pairs(pairs, cols, max_degree, seed):
        polys.extend([f, g])
    return polys


@register("d_colour_independence", max_degree=3, pairs=100, seed=0, colours=None)
def _dci(ctx, p):
    cols = ctx.pick(p["colours"])
    polys = _calc_polys(cols, p["max_degree"], p["pairs"], p["seed"])
    r = calculus.colour_independence_check(polys, cols, system=_calc_system(ctx))
    return Outcome(r.ok, {"polynomials": r.checked, "failed": len(r.failures)},
                   dict(list(r.failures.items())[:20]))


@register("d_routes", max_degree=2, colours=None)
def _droutes(ctx, p):
    cols = ctx.pick(p["colours"])
    polys = [NcPoly.word(w) for w in calculus.coordinate_words(cols, p["max_degree"])]
    r = calculus.route_agreement_check(polys, cols, system=_calc_system(ctx))
    return Outcome(r.ok, {"polynomials": r.checked, "failed": len(r.failures)},
                   dict(list(r.failures.items())[:20]))


@register("exchange_symmetry", colours=None)
def _exch(ctx, p):
    c1, c2 = ctx.pick(p["colours"], 2)
    r = reference.exchange_symmetry_check(c1, c2, ctx.families, ctx.system("full"))
    return Outcome(r.ok, {}, r.mismatches)


@register("colourless")
def _colourless(ctx, p):
    r = reference.colourless_check(ctx.families)
    return Outcome(r.ok, {}, r.mismatches)


@register("contraction", sign=1, colours=None)
def _contract(ctx, p):
    c1, c2 = ctx.pick(p["colours"], 2)
    sign = p["sign"]
    if sign in ("+", "-"):
        sign = 1 if sign == "+" else -1
    t = contraction.GTransform(int(sign))
    import sympy
    h = sympy.Symbol("h")
    mu = sympy.Symbol(c2.name) if c2.is_symbol else sympy.Rational(c2.value)
    hyb = contraction.qh_hybrid_relation(c1, c2, t)
    sigma = hyb.sign
    lim = contraction.commutator_limit(c1, c2, t)
    w = (gen("y", c1) * gen("y", c2))
    (yy, _), = w.terms.items()
    expected = sigma * h * (1 - 2 * mu)
    ok_plane = set(lim.terms) == {yy} and sympy.expand(lim.coeff(yy) - expected) == 0
    from .colours import ZERO
    lim0 = contraction.commutator_limit(ZERO, ZERO, t)
    (yy0, _), = (gen("y", ZERO) * gen("y", ZERO)).terms.items()
    ok_zero = set(lim0.terms) == {yy0} and sympy.expand(lim0.coeff(yy0) - sigma * h) == 0
    ok_hybrid_limit = sympy.expand(hyb.coefficient.limit_q1() - expected) == 0
    two_forms = RewriteSystem([f for f in ctx.families if f.name == "plane.yy"], name="yy").normalize(
        hyb.rhs - (gen("y", c2) * gen("y", c1)).scale(hyb.coefficient * CoeffPoly.qpow(
            Exponent.of_colour(c2) - Exponent.of_colour(c1)))).is_zero()
    detail = {"sigma": sigma, "commutator": lim.text(), "colourless_commutator": lim0.text(),
              "hybrid": hyb.to_json(), "plane_limit_ok": ok_plane, "colourless_ok": ok_zero,
              "hybrid_limit_ok": ok_hybrid_limit, "hybrid_two_forms_ok": two_forms}
    ok = ok_plane and ok_zero and ok_hybrid_limit and two_forms
    return Outcome(ok, detail, {} if ok else {"commutator": lim.text()})


def random_exponent(rng: random.Random, colours: Sequence[Colour]) -> Exponent:
    e = Exponent(Fraction(rng.randint(-6, 6), rng.randint(1, 4)))
    for c in colours:
        e = e + Exponent.of_colour(c).scale(Fraction(rng.randint(-5, 5), rng.randint(1, 3)))
    return e


@register("coeff_limits", count=50, seed=0, colours=None)
def _climits(ctx, p):
    import sympy
    cols = ctx.pick(p["colours"])
    rng = random.Random(p["seed"])
    bad = {}
    for _ in range(p["count"]):
        e = random_exponent(rng, cols)
        lim = ((CoeffPoly.qpow(e) - ONE) * CoeffPoly.pole(1)).limit_q1()
        if sympy.expand(lim - e.to_sympy()) != 0:
            bad[e.text()] = sympy.sstr(lim)
    return Outcome(not bad, {"count": p["count"]}, bad)


# ---------------------------------------------------------------------------
# suites

@dataclass
class CheckSpec:
    name: str
    check: str
    params: Dict[str, Any]


@dataclass
class SuiteDefinition:
    name: str
    checks: List[CheckSpec]
    colours: str = ""
    rules: Any = None

    @classmethod
    def from_dict(cls, data: Mapping) -> "SuiteDefinition":
        if not isinstance(data, Mapping):
            raise SuiteError("suite must be a JSON object")
        checks = []
        for k, item in enumerate(data.get("checks", [])):
            if isinstance(item, str):
                item = {"check": item}
            name = item.get("check")
            if name not in CHECKS:
                raise SuiteError(f"unknown check {name!r} at position {k}")
            params = dict(item.get("params", {}))
            unknown = set(params) - set(DEFAULTS[name])
            if unknown:
                raise SuiteError(f"check {name!r}: unknown parameters {sorted(unknown)}")
            merged = {**DEFAULTS[name], **params}
            checks.append(CheckSpec(item.get("name", name), name, merged))
        return cls(data.get("name", "suite"), checks, data.get("colours", ""), data.get("rules"))

    @classmethod
    def load(cls, path) -> "SuiteDefinition":
        try:
            data = json.loads(Path(path).read_text(encoding="utf-8"))
        except (OSError, json.JSONDecodeError) as exc:
            raise SuiteError(f"cannot read suite {path}: {exc}") from exc
        suite = cls.from_dict(data)
        if isinstance(suite.rules, str) and not Path(suite.rules).is_absolute():
            suite.rules = str(Path(path).parent / suite.rules)
        return suite

    def context(self) -> Context:
        names = self.colours or os.environ.get(COLOUR_ENV) or "l,m,n"
        try:
            colours = declare(names)
            families = load_families(self.rules)
        except (OSError, ValueError, KeyError, json.JSONDecodeError) as exc:
            raise SuiteError(f"suite {self.name}: {exc}") from exc
        return Context(colours, families)


def _c(check, name=None, **params):
    d = {"check": check, "params": params}
    if name:
        d["name"] = name
    return d


BUILTIN_SUITES: Dict[str, dict] = {
    "paper-full": {
        "name": "paper-full",
        "colours": "l,m,n",
        "checks": [
            _c("ybe", colours="l,m,n"),
            _c("rhat_is_p_r", colours="l,m"),
            _c("braided_ybe", colours="l,m,n"),
            _c("braided_equivalence", colours="l,m,n"),
            _c("dc_inverse", colours="l,m"),
            _c("rtt", colours="l,m"),
            _c("confluence", "confluence-frt", sector="frt", colours="l,m,n"),
            _c("confluence", "confluence-plane", sector="plane", colours="l,m,n"),
            _c("confluence", "confluence-hyperplane", sector="hyperplane", colours="l,m,n"),
            _c("confluence", "confluence-calculus", sector="calculus", colours="l,m"),
            _c("components", colours="l,m"),
            _c("coproduct", colours="l,m"),
            _c("counit", colours="l,m"),
            _c("antipode", colours="l"),
            _c("antipode_twisted", colours="l"),
            _c("centrality", colours="l,m"),
            _c("coaction", "coaction-left", side="left", colours="l,m"),
            _c("coaction", "coaction-right", side="right", colours="l,m"),
            _c("coaction", "coaction-right-column", side="right", convention="column", colours="l,m"),
            _c("d_square", colours="l,m"),
            _c("leibniz", colours="l,m"),
            _c("d_colour_independence", colours="l,m"),
            _c("d_routes", colours="l,m"),
            _c("exchange_symmetry", colours="l,m"),
            _c("colourless"),
            _c("contraction", colours="l,m"),
            _c("coeff_limits", colours="l,m,n"),
        ],
    },
    "smoke": {
        "name": "smoke",
        "checks": [_c("ybe", colours="l,m,n"), _c("rtt", colours="l,m"), _c("coeff_limits", count=10)],
    },
}


def builtin_suite(name: str) -> SuiteDefinition:
    if name not in BUILTIN_SUITES:
        raise SuiteError(f"unknown builtin suite {name!r}; known: {sorted(BUILTIN_SUITES)}")
    return SuiteDefinition.from_dict(BUILTIN_SUITES[name])


@dataclass
class CheckReport:
    name: str
    check: str
    status: str
    params: Dict[str, Any]
    detail: Dict[str, Any]
    residual: Dict[str, Any]
    seconds: float

    @property
    def passed(self) -> bool:
        return self.status == "pass"

    def to_json(self) -> dict:
        return {"schema": REPORT_SCHEMA, "name": self.name, "check": self.check, "status": self.status,
                "params": self.params, "detail": self.detail, "residual": self.residual,
                "seconds": round(self.seconds, 4)}


def run_check(spec: CheckSpec, ctx: Context) -> CheckReport:
    t0 = time.perf_counter()
    try:
        out = CHECKS[spec.check](ctx, dict(spec.params))
        status = "pass" if out.ok else "fail"
        detail, residual = out.detail, out.residual
    except Exception as exc:  # a failing check must not abort the suite
        status = "error"
        detail = {"error": f"{type(exc).__name__}: {exc}",
                  "traceback": traceback.format_exc(limit=3).splitlines()[-3:]}
        residual = {}
    return CheckReport(spec.name, spec.check, status, spec.params, detail, residual, time.perf_counter() - t0)


def run_suite(suite: SuiteDefinition, jobs: int = 1) -> List[CheckReport]:
    """Run every check; reports come back in declaration order."""
    ctx = suite.context()
    if jobs <= 1 or len(suite.checks) <= 1:
        return [run_check(s, ctx) for s in suite.checks]
    with ThreadPoolExecutor(max_workers=jobs) as pool:
        return list(pool.map(lambda s: run_check(s, ctx), suite.checks))


def exit_code(reports: Sequence[CheckReport]) -> int:
    return 0 if all(r.passed for r in reports) else 1


def render_output(reports: Sequence[CheckReport], fmt: str = "text", timing: bool = True) -> str:
    if fmt == "json":
        items = [r.to_json() for r in reports]
        if not timing:
            for it in items:
                it.pop("seconds")
        return json.dumps(items, indent=2, sort_keys=False, default=str)
    if fmt != "text":
        raise ValueError(f"unknown report format {fmt!r}")
    lines = []
    for r in reports:
        t = f"  ({r.seconds:.3f}s)" if timing else ""
        lines.append(f"{r.status.upper():5} {r.name}{t}")
        if r.status == "error":
            lines.append(f"      {r.detail.get('error')}")
        for k, v in list(r.residual.items())[:10]:
            lines.append(f"      {k}: {v}")
        if len(r.residual) > 10:
            lines.append(f"      ... {len(r.residual) - 10} more")
    return "\n".join(lines)
