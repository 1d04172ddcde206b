import itertools
import random
from fractions import Fraction

import pytest

from eulab.errors import (
    InvalidParamError,
    NonInvertibleConstantTermError,
    NonzeroConstantTermError,
)
from eulab.exactalg import Poly
from eulab.series import Series, cos_series, egf_build, rational_sqrt, sin_series

x, y, s = Poly.var("x"), Poly.var("y"), Poly.var("s")


def brute_derangement_poly(n):
    """Independent oracle: sum of x^excedances over fixed-point-free permutations."""
    total = Poly.zero()
    for p in itertools.permutations(range(1, n + 1)):
        if any(p[i - 1] == i for i in range(1, n + 1)):
            continue
        exc = sum(1 for i in range(1, n + 1) if p[i - 1] > i)
        total = total + Poly.monomial({"x": exc})
    return total


def random_series(rng, order, unit=False):
    coeffs = []
    for i in range(order + 1):
        p = Poly.zero()
        for _ in range(rng.randint(0, 2)):
            p = p + Poly.monomial(
                {"x": rng.randint(0, 2), "y": rng.randint(0, 2)}, rng.randint(-3, 3)
            )
        coeffs.append(p)
    if unit:
        coeffs[0] = Poly.const(rng.choice([1, -1, 2, Fraction(1, 2), 3]))
    return Series(coeffs, order)


class TestArith:
    def test_exp_of_linear(self):
        e = Series.exp_zp(s, 2)
        assert e.coeffs == (Poly.one(), s, (s**2).scale(Fraction(1, 2)))

    def test_division_reproduces_derangements(self):
        d3 = brute_derangement_poly(3)
        assert d3 == x + x**2  # oracle value frozen
        den = Series.exp_zp(x, 3) - Series.exp_zp(Poly.one(), 3) * x
        ratio = Series.const(1 - x, 3).div(den)
        assert ratio.egf_coefficient(3) == d3

    def test_squared_quotient_form(self):
        t = egf_build("trivariate", 3)
        assert t.egf_coefficient(3) == (s + y) ** 3 + 6 * x * y * (s + y) + 2 * x * y * (x + y)

    def test_mixed_orders_truncate_to_min(self):
        a = Series.const(1, 5)
        b = Series.z(3)
        assert (a + b).order == 3
        assert (a * b).order == 3

    def test_compose(self):
        # cos(q z) == cos(z) composed with q*z
        q = Fraction(3, 2)
        inner = Series([Poly.zero(), Poly.const(q)], 8)
        assert cos_series(1, 8).compose(inner) == cos_series(q, 8)
        assert sin_series(1, 8).compose(inner) == sin_series(q, 8)

    def test_diff_z(self):
        e = Series.exp_zp(x, 6)
        assert e.diff_z() == (e * x).truncate(5)


class TestErrors:
    def test_div_zero_constant_term(self):
        with pytest.raises(NonInvertibleConstantTermError):
            Series.const(1, 3).div(Series.z(3))

    def test_div_inexact_coefficient(self):
        with pytest.raises(NonInvertibleConstantTermError):
            Series.const(1, 2).div(Series.const(x, 2))

    def test_exp_nonzero_constant(self):
        with pytest.raises(NonzeroConstantTermError):
            Series.const(1, 2).exp()

    def test_compose_nonzero_constant(self):
        with pytest.raises(NonzeroConstantTermError):
            Series.z(3).compose(Series.const(1, 3))

    def test_gamma_xy_requires_rational_square(self):
        with pytest.raises(InvalidParamError):
            egf_build("gamma-xy", 3, {"x": 1, "y": 2})  # 2y-1 = 3 is not a square
        with pytest.raises(InvalidParamError):
            egf_build("gamma-xy", 3, {"x": 1})

    def test_unknown_name(self):
        with pytest.raises(ValueError):
            egf_build("nope", 3)


class TestRandomizedLaws:
    def test_mul_div_round_trip(self):
        rng = random.Random(20240811)
        for _ in range(25):
            order = rng.randint(1, 5)
            a = random_series(rng, order)
            b = random_series(rng, order, unit=True)
            assert a.div(b) * b == a

    def test_compose_agrees_with_exp(self):
        # composing the exponential series with a reproduces a.exp()
        rng = random.Random(31)
        for _ in range(10):
            order = rng.randint(1, 5)
            a = random_series(rng, order)
            a = Series((Poly.zero(),) + a.coeffs[1:], order)
            exp_z = Series.exp_zp(Poly.one(), order)
            assert exp_z.compose(a) == a.exp()

    def test_exp_is_a_homomorphism(self):
        rng = random.Random(7)
        for _ in range(10):
            order = rng.randint(1, 5)
            a = random_series(rng, order)
            b = random_series(rng, order)
            a = Series((Poly.zero(),) + a.coeffs[1:], order)
            b = Series((Poly.zero(),) + b.coeffs[1:], order)
            assert (a + b).exp() == a.exp() * b.exp()


class TestEgfCatalog:
    def test_derangement_order_zero(self):
        assert egf_build("derangement", 0).coefficient(0) == Poly.one()

    def test_trivariate_low_orders(self):
        t = egf_build("trivariate", 4)
        expected = {
            0: Poly.one(),
            1: s + y,
            2: (s + y) ** 2 + 2 * x * y,
            3: (s + y) ** 3 + 6 * x * y * (s + y) + 2 * x * y * (x + y),
            4: (s + y) ** 4
            + 12 * x * y * (s + y) ** 2
            + 8 * x * y * (s + y) * (x + y)
            + 2 * x * y * (x + y) ** 2
            + 16 * x**2 * y**2,
        }
        for n, value in expected.items():
            assert t.egf_coefficient(n) == value

    def test_derangement_specializes_fixpoint(self):
        d = egf_build("derangement", 6)
        for n in range(7):
            assert d.egf_coefficient(n) == brute_derangement_poly(n)

    def test_no_succession_equals_derangement(self):
        assert egf_build("no-succession", 8) == egf_build("derangement", 8)

    def test_convolution_of_egfs(self):
        order = 7
        lhs = egf_build("bivariate", order) * egf_build("fixpoint", order)
        assert lhs == egf_build("trivariate", order)

    def test_pde_for_trivariate(self):
        order = 8
        a = egf_build("trivariate", order)
        lhs = a.diff_z()
        rhs = a * (s + y) + (a.diff_var("x") + a.diff_var("y") + a.diff_var("s")) * (x * y)
        assert lhs == rhs.truncate(order - 1)

    def test_gamma_xy_at_unit_point(self):
        g = egf_build("gamma-xy", 6, {"x": 1, "y": 1})
        values = [g.egf_coefficient(n).constant_value() for n in range(7)]
        assert values == [1, 1, 2, 5, 16, 61, 272]

    def test_gamma_xy_symbolic_x(self):
        g = egf_build("gamma-xy", 3, {"y": 1})
        assert g.egf_coefficient(1) == x


def test_rational_sqrt():
    assert rational_sqrt(Fraction(9, 4)) == Fraction(3, 2)
    assert rational_sqrt(4) == 2
    assert rational_sqrt(Fraction(2)) is None
    assert rational_sqrt(-1) is None
    assert rational_sqrt(0) == 0
