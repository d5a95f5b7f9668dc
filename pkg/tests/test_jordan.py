import random

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from blowup_futaki.core.models import InvalidJordanDataError, JordanData
from blowup_futaki.geometry.jordan import (
    build_lifted_field,
    coordinate_permutation,
    divergence,
    expected_divergence,
    lift_field,
    linear_field,
    perturbation_order_check,
    perturbation_report,
    potential_jet,
)
from blowup_futaki.geometry.normal_form import poincare_resonance_check

STRUCTURES = [
    [(1, 2)],
    [(2, 3)],
    [("-3/2", 4)],
    [(1, 1), (2, 1)],
    [(1, 2), (3, 1)],
    [(1, 1), (2, 2)],
    [(2, 2), (-1, 2), ("1/3", 1)],
]


@st.composite
def multi_block_data(draw):
    """Two to four blocks; the first has size >= 2 so u_2 stays inside it under relabeling."""
    m = draw(st.integers(2, 4))
    sizes = [draw(st.integers(2, 3))] + draw(st.lists(st.integers(1, 3), min_size=m - 1, max_size=m - 1))
    eigs = draw(
        st.lists(
            st.fractions(min_value=-6, max_value=6, max_denominator=3).filter(bool), min_size=m, max_size=m, unique=True
        )
    )
    return JordanData.from_pairs(zip(eigs, sizes))


class TestLift:
    def test_single_block_of_size_two(self):
        data = JordanData.single(5, 2)
        U = data.universe
        X = build_lifted_field(data)
        assert X.components == (U.u(1) * (5 + U.u(2)), -U.u(2) ** 2)

    def test_single_block_of_size_three(self):
        U = JordanData.single(2, 3).universe
        X = build_lifted_field(JordanData.single(2, 3))
        assert X.component(2) == U.u(3) - U.u(2) ** 2
        assert X.component(3) == -U.u(2) * U.u(3)

    def test_two_simple_blocks(self):
        data = JordanData.from_pairs([(1, 1), (4, 1)])
        U = data.universe
        X = build_lifted_field(data)
        assert X.component(2) == -U.u(2) * (U.u(2) + 1 - 4)

    def test_focus_moves_block_to_front(self):
        data = JordanData.from_pairs([(1, 1), (4, 2)])
        X = build_lifted_field(data, focus_block=1)
        assert X.data.eigenvalues[0] == 4
        assert coordinate_permutation(data, 1) == [2, 3, 1]

    @pytest.mark.parametrize("pairs", STRUCTURES)
    def test_lift_of_linear_field(self, pairs):
        data = JordanData.from_pairs(pairs)
        for focus in range(data.m):
            assert lift_field(linear_field(data, focus)) == list(build_lifted_field(data, focus).components)

    @pytest.mark.parametrize("pairs", STRUCTURES)
    def test_divergence(self, pairs):
        data = JordanData.from_pairs(pairs)
        for focus in range(data.m):
            assert divergence(build_lifted_field(data, focus)) == expected_divergence(data, focus)

    def test_divergence_examples(self):
        U = JordanData.single(2, 3).universe
        assert divergence(build_lifted_field(JordanData.single(2, 3))) == 2 - 2 * U.u(2)
        data = JordanData.from_pairs([(1, 1), (3, 1)])
        assert divergence(build_lifted_field(data)) == 3 - data.universe.u(2)

    def test_refocusing_two_blocks_is_involutive(self):
        data = JordanData.from_pairs([(1, 2), (3, 1)])
        again = data.focused(1).focused(1)
        assert again == data
        assert build_lifted_field(again).components == build_lifted_field(data).components

    @given(multi_block_data(), st.data())
    @settings(max_examples=40)
    def test_refocusing_round_trip(self, data, draw):
        j = draw.draw(st.integers(0, data.m - 1))
        there = data.focused(j)
        # the block that was first now sits right behind the focus
        back = 0 if j == 0 else 1
        again = there.focused(back)
        outer, inner = coordinate_permutation(data, j), coordinate_permutation(there, back)
        perm = [outer[k - 1] for k in inner]
        U = data.universe
        rename = [(U.u(i), U.u(perm[i - 1])) for i in range(1, data.n + 1)]
        original = build_lifted_field(data).components
        relabeled = build_lifted_field(again).components
        assert again.eigenvalues[0] == data.eigenvalues[0]
        assert [relabeled[i].compose(rename) for i in range(data.n)] == [original[perm[i] - 1] for i in range(data.n)]


def test_potential_jet():
    data = JordanData.from_pairs([(1, 2), (3, 1)])
    U = data.universe
    jet = potential_jet(data)
    assert jet.value_at_q == U.theta - U.eps
    assert jet.u2_gradient == -U.eps
    assert jet.laplacian == 3 - 2 * U.u(2)
    assert jet.effective == U.theta - U.eps * (1 + U.u(2))


@pytest.mark.parametrize(
    "pairs",
    [[(0, 2)], [(1, 1), (1, 1)], [(1, 1)], []],
)
def test_invalid_jordan_data(pairs):
    with pytest.raises(InvalidJordanDataError):
        JordanData.from_pairs(pairs)


def test_focus_out_of_range():
    with pytest.raises(InvalidJordanDataError):
        build_lifted_field(JordanData.single(1, 2), focus_block=1)


class TestPerturbations:
    def test_quadratic_term_in_first_component(self):
        data = JordanData.single(1, 2)
        U = data.universe
        row = perturbation_order_check(data, [U.u(2) ** 2, U.zero])
        assert row.passed

    def test_quadratic_term_in_a_later_component(self):
        data = JordanData.single(1, 3)
        U = data.universe
        row = perturbation_order_check(data, [U.zero, U.u(3) ** 2, U.zero])
        assert row.passed

    def test_linear_terms_are_refused(self):
        data = JordanData.single(1, 2)
        U = data.universe
        with pytest.raises(ValueError):
            perturbation_order_check(data, [U.u(2), U.zero])
        with pytest.raises(ValueError):
            perturbation_order_check(data, [U.zero])

    @pytest.mark.parametrize("pairs", STRUCTURES)
    def test_random_perturbations(self, pairs):
        data = JordanData.from_pairs(pairs)
        report = perturbation_report(data, random.Random(11), count=5)
        assert len(report.rows) == 6
        assert report.overall


class TestPoincare:
    def test_resonance_witness(self):
        report = poincare_resonance_check(["1", "2"], m_cap=6)
        assert report.poincare_domain
        assert report.resonant
        assert report.witness.target_index == 1
        assert report.witness.multiplicities == [2, 0]
        assert report.witness.relation == "2 = 2*(1)"

    def test_nonresonant(self):
        report = poincare_resonance_check([2, 3], m_cap=6)
        assert report.poincare_domain
        assert not report.resonant
        assert report.witness is None

    def test_mixed_signs(self):
        assert not poincare_resonance_check([1, -1]).poincare_domain

    def test_zero_refused(self):
        with pytest.raises(ValueError):
            poincare_resonance_check([0, 1])
