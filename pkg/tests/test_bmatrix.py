from fractions import Fraction

import pytest

from blowup_futaki.algebra.poly import eval_at_zero, poly_diff
from blowup_futaki.core.models import JordanData
from blowup_futaki.geometry.jordan import build_lifted_field
from blowup_futaki.localization.bmatrix import (
    build_bmatrix,
    check_certificate,
    choose_k,
    coefficient_extractions,
    detb_closed_form,
    detb_report,
    detb_u2_coefficient,
    symbolic_det,
)


@pytest.mark.parametrize("n1,k", [(1, 0), (2, 0), (3, 1), (4, 1), (5, 2), (8, 2), (9, 3)])
def test_choose_k(n1, k):
    assert choose_k(n1) == k


def test_size_two_entries():
    data = JordanData.single(2, 2)
    U = data.universe
    B = build_bmatrix(build_lifted_field(data))
    assert B.alpha == (1, 2)
    assert B.row(1) == (U.const("1/2") - U.u(2) * U.const("1/4"), -U.u(1) * U.const("1/4"))
    assert B.row(2) == (U.zero, -U.one)


def test_focus_block_of_size_one_has_no_matrix():
    with pytest.raises(ValueError):
        build_bmatrix(build_lifted_field(JordanData.from_pairs([(1, 1), (2, 1)])))


CERTIFIED = [
    [(1, 2)],
    [(1, 3)],
    [(-2, 4)],
    [("1/2", 5)],
    [(1, 2), (3, 1)],
    [(1, 3), (-1, 1)],
    [(2, 2), (5, 2)],
    [(1, 2), (2, 1), (-3, 1)],
    [(3, 3), (1, 2)],
]


@pytest.mark.parametrize("pairs", CERTIFIED)
def test_certificate_rows(pairs):
    B = build_bmatrix(build_lifted_field(JordanData.from_pairs(pairs)))
    check_certificate(B)
    n1 = pairs[0][1]
    assert B.alpha[:2] == (1, n1)


@pytest.mark.parametrize("pairs", [p for p in CERTIFIED if sum(s for _, s in p) <= 4])
def test_symbolic_det_matches_closed_form(pairs):
    data = JordanData.from_pairs(pairs)
    B = build_bmatrix(build_lifted_field(data))
    assert symbolic_det(B) == detb_closed_form(data).product()


def test_u2_coefficient_examples():
    U = JordanData.single(1, 3).universe
    assert detb_u2_coefficient(JordanData.single(1, 3)) == 1 - U.u(2) + U.u(2) ** 2
    U2 = JordanData.single(2, 2).universe
    assert detb_u2_coefficient(JordanData.single(2, 2)) == -(U2.const("1/2") - U2.u(2) * U2.const("1/4"))


@pytest.mark.parametrize("n1", [3, 4, 5])
def test_only_the_top_exponent_extracts_the_coefficient(n1):
    rows = {x.exponent_label: x for x in coefficient_extractions(JordanData.single(1, n1))}
    assert rows["2^(k+1)-1"].matches_closed_form
    assert not rows["2^k"].matches_closed_form


def test_derivative_table():
    data = JordanData.from_pairs([(1, 2), (2, 1)])
    closed = detb_closed_form(data, max_order=2)
    assert closed.derivative_table == ((Fraction(1), Fraction(1), Fraction(2)),)


@pytest.mark.parametrize("pairs", [[(1, 2), (3, 2)], [(1, 3), ("-1/2", 1)], [(2, 4), (1, 1)]])
def test_derivative_table_is_the_u2_jet(pairs):
    data = JordanData.from_pairs(pairs)
    K = 2 ** (choose_k(pairs[0][1]) + 1)
    closed = detb_closed_form(data, max_order=min(6, K - 1))
    U = data.universe
    for factor, table in zip(closed.detBj, closed.derivative_table):
        for i, value in enumerate(table):
            assert eval_at_zero(poly_diff(factor, U.u(2), i), [U.u(2)]) == U.const(value)


def test_report():
    report = detb_report(JordanData.from_pairs([(1, 3), (2, 1)]))
    assert report.overall
    assert report.certificate_ok
    assert report.symbolic_det_matches
    assert report.alpha == [1, 3, 4, 1]
    assert report.focus == 1
