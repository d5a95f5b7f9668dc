from fractions import Fraction

import pytest
from hypothesis import given
from hypothesis import strategies as st

from blowup_futaki.algebra.poly import (
    PolyOp,
    SymbolError,
    coefficient_in,
    constant_value,
    depends_only_on,
    divisible_by_power,
    eval_at_zero,
    monomial_coefficient,
    poly_arith,
    poly_diff,
    poly_to_json,
    poly_to_text,
    universe,
)

U = universe(2)
SYMBOLS = [U.u(1), U.u(2), U.eps, U.theta]

terms = st.lists(
    st.tuples(st.lists(st.integers(0, 3), min_size=4, max_size=4), st.integers(-5, 5)),
    max_size=4,
)


@st.composite
def polys(draw):
    p = U.zero
    for exps, c in draw(terms):
        m = U.one
        for s, e in zip(SYMBOLS, exps):
            m *= s**e
        p += c * m
    return p


class TestRingLaws:
    @given(polys(), polys(), polys())
    def test_distributive(self, a, b, c):
        assert poly_arith(a, poly_arith(b, c, PolyOp.ADD), PolyOp.MUL) == a * b + a * c

    @given(polys(), polys())
    def test_commutative(self, a, b):
        assert poly_arith(a, b, PolyOp.MUL) == poly_arith(b, a, PolyOp.MUL)
        assert poly_arith(a, a, PolyOp.SUB) == U.zero

    @given(polys(), polys())
    def test_product_rule(self, a, b):
        x = U.u(2)
        assert poly_diff(a * b, x) == poly_diff(a, x) * b + a * poly_diff(b, x)


def test_pow_rejects_negative_exponent():
    with pytest.raises(ValueError):
        poly_arith(U.u(1), -1, PolyOp.POW)
    assert poly_arith(U.u(1) + 1, 2, PolyOp.POW) == U.u(1) ** 2 + 2 * U.u(1) + 1


def test_unknown_symbol():
    with pytest.raises(SymbolError):
        U.u(3)
    with pytest.raises(SymbolError):
        U.symbol("nu")


def test_diff_and_evaluation():
    u1, u2 = U.u(1), U.u(2)
    p = u1 * (3 + u2) ** 2
    assert poly_diff(p, u2, 2) == 2 * u1
    assert poly_diff(p, u2, 5) == U.zero
    assert eval_at_zero(p, [u2]) == 9 * u1
    assert eval_at_zero(p, [u1, u2]) == U.zero


def test_coefficients():
    u2, eps, theta = U.u(2), U.eps, U.theta
    p = theta**3 - 3 * theta * eps**2 + 2 * eps**3 + u2 * eps**2
    assert coefficient_in(p, eps, 2) == -3 * theta + u2
    assert monomial_coefficient(p, {eps: 2, u2: 1}) == U.one
    assert depends_only_on(p, [u2, eps, theta])
    assert not depends_only_on(p, [eps, theta])
    assert divisible_by_power(p - theta**3, eps, 2)
    assert not divisible_by_power(p, eps, 1)


def test_constant_value():
    assert constant_value(U.const("3/4")) == Fraction(3, 4)
    assert constant_value(U.zero) == 0
    with pytest.raises(ValueError):
        constant_value(U.theta)


def test_text_and_json():
    theta, eps = U.theta, U.eps
    p = theta**3 - 3 * theta * eps**2 + 2 * eps**3
    assert poly_to_text(2 * theta) == "2*theta"
    assert poly_to_text(U.zero) == "0"
    assert poly_to_json(p) == {"eps^2*theta": "-3", "eps^3": "2", "theta^3": "1"}
    assert poly_to_text(theta - 1) == "theta - 1"
