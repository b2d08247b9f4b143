from hypothesis import given, settings

from cqplane.algebra import Generator, NcPoly, colour_swap, eval_colourless, gen, nc_mul
from cqplane.colours import LAMBDA, MU, ZERO
from cqplane.parse import parse_expr
from cqplane.rewrite import RewriteSystem

from conftest import ncpolys


def P(src):
    return parse_expr(src)


def test_mul_concatenates():
    # [TRIVIAL]
    p = nc_mul(gen("x", LAMBDA), gen("y", MU))
    assert p == NcPoly.word((Generator("x", LAMBDA), Generator("y", MU)))


def test_mul_keeps_coefficient():
    # [PAPER] shape of the (q - q^-1) q^(l+m) b_m c_l term
    assert nc_mul(P("q^(l+m)*b[m]"), P("c[l]")) == P("q^(l+m)*b[m]*c[l]")


def test_mul_distributes_without_reordering():
    # [TRIVIAL]
    got = nc_mul(P("x[l] + y[l]"), P("x[l] - y[l]"))
    assert got == P("x[l]*x[l] - x[l]*y[l] + y[l]*x[l] - y[l]*y[l]")


def test_empty_word_is_identity():
    p = P("2*x[l]*y[m]")
    assert NcPoly.const(1) * p == p == p * NcPoly.const(1)


def test_swap_letters():
    # [TRIVIAL]
    assert colour_swap(P("x[l]*y[m]"), LAMBDA, MU) == P("x[m]*y[l]")


def test_swap_symmetric_exponent():
    # [TRIVIAL]
    assert colour_swap(P("q^(1-l-m)*y[m]*x[l]"), LAMBDA, MU) == P("q^(1-l-m)*y[l]*x[m]")


def test_swapped_plane_relation_reduces_to_zero():
    # [DERIVED] exchange symmetry via normalization
    rel = colour_swap(P("x[l]*y[m] - q^(1-l-m)*y[m]*x[l]"), LAMBDA, MU)
    assert rel == P("x[m]*y[l] - q^(1-l-m)*y[l]*x[m]")
    assert RewriteSystem.sector("plane").reduces_to_zero(rel)


def test_colourless_plane():
    # [PAPER] xy = qyx
    got = eval_colourless(P("x[l]*y[m] - q^(1-l-m)*y[m]*x[l]"))
    assert got == P("x[0]*y[0] - q*y[0]*x[0]")


def test_colourless_frt():
    # [DERIVED] ab = q ba
    assert eval_colourless(P("a[l]*b[m] - q^(1+2*l)*b[m]*a[l]")) == P("a[0]*b[0] - q*b[0]*a[0]")


def test_colourless_odd():
    # [TRIVIAL]
    assert eval_colourless(P("xi[l]*xi[m]")) == P("xi[0]*xi[0]")


def test_parity():
    assert Generator("xi", LAMBDA).odd and Generator("eta", MU).odd
    assert not any(Generator(k, LAMBDA).odd for k in ("a", "x", "dx"))


def test_kind_order():
    keys = [Generator(k, ZERO).key for k in ("a", "b", "c", "d", "x", "y", "xi", "eta", "dx", "dy")]
    assert keys == sorted(keys)


def test_no_zero_coefficients_stored():
    p = P("x[l] - x[l] + y[m]")
    assert list(p.terms) == [(Generator("y", MU),)]


@settings(max_examples=60, deadline=None)
@given(ncpolys(), ncpolys())
def test_swap_involution_and_homomorphism(p, r):
    assert colour_swap(colour_swap(p, LAMBDA, MU), LAMBDA, MU) == p
    assert colour_swap(p * r, LAMBDA, MU) == colour_swap(p, LAMBDA, MU) * colour_swap(r, LAMBDA, MU)


@settings(max_examples=60, deadline=None)
@given(ncpolys(), ncpolys(), ncpolys())
def test_ring_axioms_and_colourless_homomorphism(p, r, s):
    assert (p * r) * s == p * (r * s)
    assert p * (r + s) == p * r + p * s
    assert eval_colourless(p * r) == eval_colourless(p) * eval_colourless(r)
    assert eval_colourless(p + r) == eval_colourless(p) + eval_colourless(r)
