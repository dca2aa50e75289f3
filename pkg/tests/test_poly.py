"""Exact polynomial / piecewise-function tests.

Expected values for the integration examples were frozen from an
independent antiderivative computation (power rule by hand) before the
engine existed; the quadrature cross-check lives in test_properties.py.
"""

from fractions import Fraction as Q

import pytest

from kstab.errors import DomainError, IrrationalWall
from kstab.poly import (
    PiecewisePolynomial,
    Polynomial,
    check_c1,
    format_polynomial,
    integrate_piecewise,
    parse_polynomial,
    rational_roots_in_interval,
)


def P(text, variables=None):
    return parse_polynomial(text, variables)


class TestPolynomialArithmetic:
    def test_construction_drops_zeros(self):
        p = Polynomial(("t",), {(2,): Q(0), (1,): Q(3)})
        assert p.coeffs == {(1,): Q(3)}

    def test_add_mul(self):
        t = Polynomial.var("t")
        p = (1 - t) ** 3
        assert p == P("1 - 3*t + 3*t^2 - t^3")

    def test_eval(self):
        p = P("22 - 6*t^2 - 4*t^3")
        assert p(1) == 12
        assert p(Q(1, 2)) == Q(22) - Q(6, 4) - Q(4, 8)

    def test_two_variables(self):
        p = P("2*(3 - u - v)*(2*u - v)", variables=("u", "v"))
        assert p(u=1, v=0) == 8
        assert p.degree() == 2

    def test_subs_affine(self):
        p = P("t^2 - 1")
        q = p.subs("t", P("2*s + 1", variables=("s",)))
        assert q == P("4*s^2 + 4*s", variables=("s",))

    def test_mixed_var_merge(self):
        u = Polynomial.var("u")
        v = Polynomial.var("v")
        p = u * v + u
        assert p.vars == ("u", "v")
        assert p(u=2, v=3) == 8

    def test_three_vars_rejected(self):
        with pytest.raises(ValueError):
            Polynomial(("a", "b", "c"))

    def test_canonical_string(self):
        assert format_polynomial(P("22 - 6*t^2 - 4*t^3")) == "22 - 6*t^2 - 4*t^3"
        assert format_polynomial(P("0")) == "0"
        assert format_polynomial(P("-t")) == "-t"

    def test_parse_roundtrip(self):
        for text in ["22 - 6*t^2 - 4*t^3", "1/4 - t", "t^2", "-5 + t"]:
            p = P(text)
            assert P(format_polynomial(p)) == p

    def test_parse_rational_coefficients(self):
        assert P("9/4 - s", variables=("s",))(Q(1, 4)) == 2

    def test_integrate_with_polynomial_bounds(self):
        # inner integral of the flag double integrals: polynomial upper bound
        p = P("2*(3 - u - v)*(2*u - v)", variables=("u", "v"))
        inner = p.integrate("v", 0, P("2*u", variables=("u",)))
        # by hand: antiderivative 2[(6u-2u^2)v - (3+u)v^2/2 + v^3/3] at v=2u
        assert inner == P("12*u^2 - 20/3*u^3", variables=("u",))
        # and the outer integral over [0,1] gives 7/3
        assert inner.integrate("u", 0, 1) == Q(7, 3)

    def test_derivative(self):
        assert P("22 - 6*t^2 - 4*t^3").derivative("t") == P("-12*t - 12*t^2")


class TestRoots:
    def test_affine_wall(self):
        # wall location 4s - 6 = 0 inside [0, 2]
        p = P("4*s - 6", variables=("s",))
        assert rational_roots_in_interval(p, 0, 2) == [Q(3, 2)]

    def test_root_at_endpoint(self):
        p = P("s", variables=("s",))
        assert rational_roots_in_interval(p, 0, 1) == [Q(0)]

    def test_irrational_wall(self):
        p = P("s^2 - 2", variables=("s",))
        with pytest.raises(IrrationalWall):
            rational_roots_in_interval(p, 0, 2)

    def test_irrational_outside_interval_is_fine(self):
        p = P("s^2 - 2", variables=("s",))
        assert rational_roots_in_interval(p, 2, 3) == []

    def test_quadratic_rational_roots(self):
        p = P("s^2 - 5*s + 6", variables=("s",))
        assert rational_roots_in_interval(p, 0, 10) == [2, 3]
        assert rational_roots_in_interval(p, Q(5, 2), 10) == [3]

    def test_double_root(self):
        p = P("s^2 - 2*s + 1", variables=("s",))
        assert rational_roots_in_interval(p, 0, 2) == [1]

    def test_negative_discriminant(self):
        p = P("s^2 + 1", variables=("s",))
        assert rational_roots_in_interval(p, -5, 5) == []


def two_piece_volume():
    return PiecewisePolynomial(
        [
            (0, 1, P("22 - 6*t^2 - 4*t^3")),
            (1, 2, P("12*(2 - t)^3")),
        ]
    )


class TestPiecewise:
    def test_rejects_discontinuity(self):
        with pytest.raises(ValueError, match="discontinuity"):
            PiecewisePolynomial([(0, 1, P("t")), (1, 2, P("t + 5"))])

    def test_rejects_gap(self):
        with pytest.raises(ValueError, match="abut"):
            PiecewisePolynomial([(0, 1, P("t")), (Q(3, 2), 2, P("t"))])

    def test_drops_degenerate_piece(self):
        f = PiecewisePolynomial([(0, 1, P("t")), (1, 1, P("t")), (1, 2, P("t"))])
        assert len(f.pieces) == 2

    def test_evaluate(self):
        f = two_piece_volume()
        assert f(0) == 22
        assert f(1) == 12
        assert f(2) == 0

    def test_integral_of_cube_family(self):
        # int_0^1 (1-u)^3 du = 1/4
        f = PiecewisePolynomial([(0, 1, P("(1 - u)^3"))])
        assert integrate_piecewise(f, 0, 1) == Q(1, 4)

    def test_zero_integrand(self):
        f = PiecewisePolynomial([(0, 2, P("0") * Polynomial.var("t"))])
        assert integrate_piecewise(f, 0, 2) == 0

    def test_first_chamber_integral(self):
        # int_0^1 (22 - 6t^2 - 4t^3) dt = 22 - 2 - 1 = 19
        f = two_piece_volume()
        assert integrate_piecewise(f, 0, 1) == 19

    def test_two_piece_total(self):
        # adds int_1^2 12(2-t)^3 dt = 3
        f = two_piece_volume()
        assert integrate_piecewise(f, 0, 2) == 22

    def test_additivity_at_arbitrary_cut(self):
        f = two_piece_volume()
        c = Q(7, 5)
        assert integrate_piecewise(f, 0, 2) == integrate_piecewise(f, 0, c) + integrate_piecewise(f, c, 2)

    def test_domain_error(self):
        f = two_piece_volume()
        with pytest.raises(DomainError):
            integrate_piecewise(f, 0, 3)

    def test_check_c1_breakpoint(self):
        f = two_piece_volume()
        assert check_c1(f) == [(1, Q(-24), Q(-36), False)]

    def test_check_c1_single_piece(self):
        f = PiecewisePolynomial([(0, 2, P("t^3"))])
        assert check_c1(f) == []

    def test_check_c1_tangent_gluing(self):
        f = PiecewisePolynomial([(0, 1, P("t^2")), (1, 2, P("2*t - 1"))])
        assert check_c1(f) == [(1, 2, 2, True)]
