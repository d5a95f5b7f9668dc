import random
from fractions import Fraction

import pytest
from hypothesis import given
from hypothesis import strategies as st

from blowup_futaki.algebra.compositions import block_structures, compositions
from blowup_futaki.algebra.poly import coefficient_in
from blowup_futaki.algebra.rational import binomial
from blowup_futaki.core.models import JordanData
from blowup_futaki.core.workflow import sample_eigenvalues
from blowup_futaki.localization.gksums import (
    combinatorial_expected,
    combinatorial_identity,
    combinatorial_report,
    g_primes,
    gk_bruteforce,
    gk_closed_form,
    gtable_report,
    sum_i_via_gk,
    sum_j_via_gk,
)
from blowup_futaki.localization.futaki import sum_exceptional_contributions


class TestCombinatorialIdentity:
    @pytest.mark.parametrize("l,k,value", [(2, 2, 8), (3, 2, 0), (2, 3, 0), (0, 0, 1), (3, 3, 48)])
    def test_values(self, l, k, value):
        assert combinatorial_identity(l, k) == value

    @given(st.integers(0, 12).flatmap(lambda l: st.tuples(st.just(l), st.integers(0, l + 1))))
    def test_low_moments(self, lk):
        l, k = lk
        assert combinatorial_identity(l, k) == combinatorial_expected(l, k)

    def test_report_row(self):
        report = combinatorial_report(2)
        assert [r.value for r in report.rows] == ["0", "0", "8", "0"]
        assert report.overall


def test_two_simple_blocks():
    data = JordanData.from_pairs([(1, 1), (2, 1)])
    assert [gk_bruteforce(data, k) for k in (1, 2, 3)] == [1, 0, Fraction(-1, 2)]


def test_closed_form_examples():
    assert gk_closed_form(JordanData.single(3, 2), 3) == Fraction(-1, 9)
    assert gk_closed_form(JordanData.single(5, 3), 1) == -1
    assert gk_closed_form(JordanData.single(5, 3), 2) == 0
    with pytest.raises(ValueError):
        gk_closed_form(JordanData.single(5, 3), 0)


def _samples(n_max, m_max, per_structure=2):
    rng = random.Random(2024)
    for sizes in block_structures(n_max, m_max):
        for _ in range(per_structure):
            eigs = sample_eigenvalues(len(sizes), rng, bound=9)
            yield JordanData.from_pairs(zip(eigs, sizes))


@pytest.mark.parametrize("data", list(_samples(6, 3)), ids=lambda d: d.label())
def test_brute_force_matches_closed_form(data):
    for k in range(1, data.n + 2):
        assert gk_bruteforce(data, k) == gk_closed_form(data, k)


@pytest.mark.parametrize("data", list(_samples(5, 3, per_structure=1)), ids=lambda d: d.label())
def test_primed_sums(data):
    n = data.n
    for k in range(0, n + 1):
        g = g_primes(data, k)
        assert g.gp == data.trace * gk_bruteforce(data, k + 1)
        assert g.gpp + g.gppp == -(n - 1) * gk_bruteforce(data, k)


def test_primed_examples():
    g = g_primes(JordanData.from_pairs([(1, 1), (2, 1)]), 1)
    assert g.gp == 0
    assert g.gpp + g.gppp == -1
    assert g_primes(JordanData.single(1, 2), 2).gp == -2


def test_table_report():
    report = gtable_report(JordanData.from_pairs([(1, 1), (2, 1)]))
    assert report.values == {"1": "1", "2": "0", "3": "-1/2"}
    assert report.overall
    assert len(report.primes) == 2


def _gk_by_enumeration(data, k):
    n, total = data.n, Fraction(0)
    for j, (nj, aj) in enumerate(zip(data.sizes, data.eigenvalues)):
        for i in range(n + 2 - k):
            for mu in compositions(nj - i - 1, data.m):
                term = Fraction(binomial(n + 1 - k, i) * (-1) ** (nj + mu[j])) / aj ** (mu[j] + i + k - n)
                for l, (nl, al) in enumerate(zip(data.sizes, data.eigenvalues)):
                    if l != j:
                        term *= Fraction(binomial(nl + mu[l] - 1, mu[l])) / (al - aj) ** (nl + mu[l])
                total += term
    return total


@pytest.mark.parametrize("data", list(_samples(5, 4, per_structure=1)), ids=lambda d: d.label())
def test_brute_force_matches_composition_enumeration(data):
    for k in range(0, data.n + 2):
        assert gk_bruteforce(data, k) == _gk_by_enumeration(data, k)


@pytest.mark.parametrize(
    "data",
    [JordanData.single(1, 2), JordanData.from_pairs([(1, 1), (2, 1)]), *_samples(4, 3, per_structure=1)],
    ids=lambda d: d.label(),
)
def test_exceptional_sums_rebuilt_from_gk(data):
    sums = sum_exceptional_contributions(data)
    assert sum_j_via_gk(data) == sums.exact_J
    assert sum_i_via_gk(data) == sums.exact_I


def test_top_order_term_is_inverse_determinant():
    # k = n + 1 carries the sign (-1)^(-1) and G_(n+1) = -1/det
    data = JordanData.from_pairs([(1, 1), (2, 1)])
    U = data.universe
    assert coefficient_in(sum_j_via_gk(data), U.theta, 3) == U.const(Fraction(1, 2))
