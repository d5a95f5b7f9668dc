from fractions import Fraction

import pytest
from hypothesis import given
from hypothesis import strategies as st

from blowup_futaki.algebra.ratfunc import (
    INFINITY,
    IrrationalPoleError,
    NotAPoleError,
    RationalFunction1V,
    Z,
    Z_RING,
    all_residues,
    format_point,
    laurent_residue,
    residue_sum,
)

RF = RationalFunction1V


def test_simple_poles():
    f = RF(Z_RING.one, Z * (Z - 1))
    assert f.poles() == {Fraction(0): 1, Fraction(1): 1}
    assert laurent_residue(f, Fraction(0)) == -1
    assert laurent_residue(f, Fraction(1)) == 1
    assert laurent_residue(f, INFINITY) == 0


def test_infinity_uses_the_chart():
    assert laurent_residue(RF.monomial(1, -1), INFINITY) == -1
    assert laurent_residue(RF(Z), INFINITY) == 0
    assert laurent_residue(RF(Z, (Z - 1) ** 2), Fraction(1)) == 1
    assert laurent_residue(RF(Z, (Z - 1) ** 2), INFINITY) == -1


def test_not_a_pole():
    with pytest.raises(NotAPoleError):
        laurent_residue(RF(Z_RING.one, Z - 1), Fraction(2))


def test_irrational_pole():
    with pytest.raises(IrrationalPoleError):
        RF(Z_RING.one, Z**2 - 2).poles()


def test_constructors_reduce():
    f = RF.linear_power(3, -2) * RF.linear_power(3, 1)
    assert f == RF.linear_power(3, -1)
    assert RF.linear_power(3, 1, reversed_sign=True) == -RF.linear_power(3, 1)
    assert RF(2 * Z, 2 * Z**2) == RF.monomial(1, -1)


def test_format_point():
    assert format_point(INFINITY) == "infinity"
    assert format_point(Fraction(-1, 2)) == "-1/2"
    assert [format_point(p) for p, _ in all_residues(RF(Z_RING.one, Z * (Z - 1)))] == ["0", "1", "infinity"]


roots = st.lists(st.integers(-4, 4), min_size=1, max_size=4)
numerators = st.lists(st.integers(-3, 3), min_size=1, max_size=6)


@given(roots, numerators)
def test_residues_on_the_sphere_sum_to_zero(rs, cs):
    den = Z_RING.one
    for r in rs:
        den *= Z - r
    num = sum((c * Z**i for i, c in enumerate(cs)), Z_RING.zero)
    assert residue_sum(RF(num, den)) == 0
