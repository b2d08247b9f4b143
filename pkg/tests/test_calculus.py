import pytest

from cqplane.algebra import NcPoly
from cqplane.calculus import (
    UnsupportedSector, apply_d, apply_d_operator, apply_derivative, colour_independence_check,
    d_square_check, leibniz_check, random_pairs, route_agreement, route_agreement_check,
)
from cqplane.colours import LAMBDA, MU, ZERO
from cqplane.parse import parse_expr

P = parse_expr


def test_d_of_coordinate():
    # [PAPER] d x = xi, d y = eta
    assert apply_d(P("x[l]")) == P("xi[l]")
    assert apply_d(P("y[m]")) == P("eta[m]")


def test_d_of_constant():
    # [TRIVIAL]
    assert apply_d(P("1")).is_zero()
    assert apply_d(P("3*q^l")).is_zero()


def test_d_of_form_is_graded():
    # [DERIVED] d(x xi) = xi xi = 0
    assert apply_d(P("x[l]*xi[l]")).is_zero()


def test_d_rejects_frt():
    with pytest.raises(UnsupportedSector):
        apply_d(P("a[l]"))
    with pytest.raises(UnsupportedSector):
        apply_d_operator(P("b[l]*x[l]"), LAMBDA)


def test_partial_derivative_of_coordinate():
    # [PAPER] dx x = 1 + ..., dx y = 0 + ... at one colour
    assert apply_derivative("dx", LAMBDA, P("x[l]")) == P("1")
    assert apply_derivative("dx", LAMBDA, P("y[l]")).is_zero()
    with pytest.raises(ValueError):
        apply_derivative("x", LAMBDA, P("x[l]"))


def test_d_squared_zero_to_degree_three():
    # [DERIVED] d^2 = 0 on every monomial
    res = d_square_check(3, [LAMBDA, MU])
    assert res.ok and res.checked == 84


def test_d_square_rejects_degree_zero():
    with pytest.raises(ValueError):
        d_square_check(0, [LAMBDA])


@pytest.mark.parametrize("colour", [LAMBDA, ZERO])
def test_leibniz_single_colour(colour):
    assert leibniz_check(random_pairs(40, [colour], 3, seed=1)).ok


@pytest.mark.parametrize("colour", [LAMBDA, ZERO])
def test_routes_agree_single_colour(colour):
    polys = [f for f, _ in random_pairs(30, [colour], 3, seed=2)]
    assert route_agreement_check(polys, [colour]).ok


def test_plane_relation_single_colour_goes_to_zero():
    # [DERIVED] d of xy - q yx at one colour vanishes
    assert apply_d(P("x[l]*y[l] - q^(1-2*l)*y[l]*x[l]")).is_zero()


def test_leibniz_mixed_colours_fails():
    # known failure, see README
    res = leibniz_check(random_pairs(100, [LAMBDA, MU], 3, seed=0))
    assert not res.ok and len(res.failures) == 66


def test_colour_independence_fails_on_coordinate():
    # known failure: d_m(x_l) picks up the colour-blind unit term
    assert apply_d_operator(P("x[l]"), LAMBDA) == P("xi[l]")
    assert apply_d_operator(P("x[l]"), MU) != P("xi[l]")
    assert not colour_independence_check([P("x[l]")], [LAMBDA, MU]).ok
    assert not route_agreement(P("x[l]"), MU)


def test_leibniz_smallest_failure():
    # known failure: d(y_m x_l) differs from eta_m x_l + y_m xi_l
    assert leibniz_check([(P("x[l]"), P("y[m]"))]).ok
    res = leibniz_check([(P("y[m]"), P("x[l]"))])
    assert res.failures == {"(y[m]) * (x[l])": "(-q^(-2) + 1)*y[l]*xi[m] + (q^(-2) - 1)*y[m]*xi[l]"}


def test_empty_inputs():
    assert leibniz_check([]).ok and leibniz_check([]).checked == 0
    assert colour_independence_check([], [LAMBDA]).ok
    assert apply_d(NcPoly()).is_zero()
