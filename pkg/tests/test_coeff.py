from fractions import Fraction

import pytest
import sympy
from hypothesis import given, settings
from hypothesis import strategies as st

from cqplane.coeff import H, ONE, Q, QINV, ZERO, CoeffPoly, PoleAtOne, UnboundSymbol
from cqplane.colours import LAMBDA, MU, NU, declare
from cqplane.parse import parse_coeff

from conftest import coeffs, exponents

l, m = sympy.symbols("l m")
h = sympy.Symbol("h")


def c(src):
    return parse_coeff(src)


# coeff_add
def test_add_identity():
    # [TRIVIAL] additive identity
    assert c("q^(1+l)") + ZERO == c("q^(1+l)")


def test_add_inverse():
    # [TRIVIAL] additive inverse
    assert (c("q^(l-m)") + c("-q^(l-m)")).is_zero()


def test_add_merges_like_terms():
    # [TRIVIAL] (q - q^-1) + q^-1 = q
    assert (Q - QINV) + QINV == Q


# coeff_mul
def test_mul_adds_exponents():
    # [TRIVIAL] q^(1+l) q^(-l-m) = q^(1-m)
    assert c("q^(1+l)") * c("q^(-l-m)") == c("q^(1-m)")


def test_mul_frt_coefficient():
    # [PAPER] (q - q^-1) q^(l+m), the [a,d] coefficient
    assert (Q - QINV) * c("q^(l+m)") == c("q^(1+l+m) - q^(-1+l+m)")


def test_pole_cancels():
    # [TRIVIAL] h (q-1)^-1 (q-1) = h
    assert H * CoeffPoly.pole(1) * (Q - ONE) == H


def test_pole_canonical_form_is_unique():
    # (q^2 - 1)/(q - 1) reduces to q + 1
    assert (Q * Q - ONE) * CoeffPoly.pole(1) == Q + ONE
    assert (c("q^(2*l)") - ONE) * CoeffPoly.pole(1) != c("q^(2*l)")


# coeff_is_zero
def test_is_zero_examples():
    assert (c("q^(l-m)") - c("q^(l-m)")).is_zero()  # [TRIVIAL]
    assert not (c("q^(l-m)") - c("q^(m-l)")).is_zero()  # [TRIVIAL] distinct exponents
    assert (CoeffPoly.const(0) * H).is_zero()  # [TRIVIAL]


# coeff_subst_colours
def test_subst_colourless_plane_coefficient():
    # [PAPER] q^(1-l-m) at l = m = 0 is q
    assert c("q^(1-l-m)").subst_colours({LAMBDA: 0, MU: 0}) == Q


def test_subst_equal_colours():
    # [TRIVIAL] q^(2(l-m)) at l = m = 1/2 is 1
    assert c("q^(2*l-2*m)").subst_colours({LAMBDA: Fraction(1, 2), MU: Fraction(1, 2)}).is_one()


def test_subst_direct_evaluation():
    # [DERIVED] q^(1+2l) at l = 1/2 is q^2
    assert c("q^(1+2*l)").subst_colours({LAMBDA: Fraction(1, 2)}) == Q * Q


def test_subst_unbound():
    with pytest.raises(UnboundSymbol):
        c("q^(l+m)").subst_colours({LAMBDA: 0})


# coeff_limit_q1
def test_limit_basic_number():
    # [PAPER] (q^(1-2m) - 1)/(q - 1) -> 1 - 2m
    assert sympy.expand(((c("q^(1-2*m)") - ONE) * CoeffPoly.pole(1)).limit_q1() - (1 - 2 * m)) == 0


def test_limit_no_pole():
    # [TRIVIAL] q^(l+m) -> 1
    assert c("q^(l+m)").limit_q1() == 1


def test_limit_sign_check_series():
    # [DERIVED] (q^(m-l) - q^(1-l-m))/(q-1) -> 2m - 1
    lim = ((c("q^(m-l)") - c("q^(1-l-m)")) * CoeffPoly.pole(1)).limit_q1()
    assert sympy.expand(lim - (2 * m - 1)) == 0


def test_limit_second_order_pole():
    # [DERIVED] (q^3 - 3q + 2)/(q-1)^2 = q + 2 -> 3
    assert ((Q ** 3 - 3 * Q + 2) * CoeffPoly.pole(2)).limit_q1() == 3
    # [DERIVED] (q^(2l) - 2 q^l + 1)/(q-1)^2 = ([l]_q)^2 -> l^2
    expr = (c("q^(2*l)") - 2 * c("q^(l)") + ONE) * CoeffPoly.pole(2)
    assert sympy.expand(expr.limit_q1() - l ** 2) == 0


def test_pole_at_one():
    with pytest.raises(PoleAtOne):
        (H * CoeffPoly.pole(1)).limit_q1()


# properties
@settings(max_examples=60, deadline=None)
@given(coeffs(poles=True), coeffs(poles=True), coeffs(poles=True))
def test_ring_axioms(a, b, d):
    assert (a + b) + d == a + (b + d)
    assert a * b == b * a
    assert (a * b) * d == a * (b * d)
    assert a * (b + d) == a * b + a * d
    assert (a - a).is_zero()


@settings(max_examples=40, deadline=None)
@given(coeffs(), coeffs())
def test_limit_is_multiplicative_without_poles(a, b):
    assert sympy.expand((a * b).limit_q1() - a.limit_q1() * b.limit_q1()) == 0


@settings(max_examples=40, deadline=None)
@given(coeffs(poles=True), coeffs(poles=True), st.integers(-2, 2), st.integers(-2, 2))
def test_subst_is_a_ring_map(a, b, x, y):
    bind = {LAMBDA: x, MU: y, NU: 1}
    assert (a + b).subst_colours(bind) == a.subst_colours(bind) + b.subst_colours(bind)
    assert (a * b).subst_colours(bind) == a.subst_colours(bind) * b.subst_colours(bind)


@settings(max_examples=50, deadline=None)
@given(exponents())
def test_limit_of_basic_number_is_exponent(e):
    lim = ((CoeffPoly.qpow(e) - ONE) * CoeffPoly.pole(1)).limit_q1()
    assert sympy.expand(lim - e.to_sympy()) == 0


@settings(max_examples=40, deadline=None)
@given(coeffs(poles=True))
def test_json_round_trip(a):
    assert CoeffPoly.from_json(a.to_json(), declare("l,m,n")) == a


def test_terms_sorted_and_unique():
    a = c("h*q^2 + q^(-1) + 3 + q^(l)")
    keys = [(t.hpow, t.polepow, t.exp.key) for t in a.terms]
    assert keys == sorted(keys)
    assert len(set(keys)) == len(keys)


def test_inverse_of_unit():
    a = c("-2*q^(1-l)")
    assert (a * a.inverse()).is_one()
    with pytest.raises(ArithmeticError):
        (Q + ONE).inverse()
