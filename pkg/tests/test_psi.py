import pytest

from blowup_futaki.core.models import JordanData, PsiFamily
from blowup_futaki.localization.psi import build_psi, family_k, psi_oracle, psi_report

TWO_SIMPLE = JordanData.from_pairs([(1, 1), (2, 1)])


def test_top_family_residues():
    report = psi_oracle(TWO_SIMPLE, PsiFamily.K_EQ_N_PLUS_1)
    assert report.k == 3
    assert report.functions[0].residues == {"0": "1/2", "1": "-1", "2": "1/2", "infinity": "0"}
    assert report.functions[0].pole_at_zero
    assert not report.functions[0].pole_at_infinity
    assert report.g_recovered == "-1/2"
    assert report.passed


def test_bottom_family_has_residue_at_infinity():
    report = psi_oracle(JordanData.single(1, 2), PsiFamily.K_EQ_1)
    assert report.functions[0].residues["infinity"] == "-1"
    assert report.g_recovered == "1"
    assert report.passed


def test_bottom_family_functions_coincide():
    assert build_psi(TWO_SIMPLE, PsiFamily.K_EQ_1, 0) == build_psi(TWO_SIMPLE, PsiFamily.K_EQ_1, 1)


def test_mid_family_vanishes_for_one_block():
    psi = build_psi(JordanData.single(2, 3), PsiFamily.MID_K, 0, k=2)
    assert psi.is_zero()


def test_mid_family_needs_k():
    with pytest.raises(ValueError):
        family_k(PsiFamily.MID_K, 3)
    with pytest.raises(ValueError):
        family_k(PsiFamily.MID_K, 3, k=4)


@pytest.mark.parametrize(
    "pairs",
    [
        [(1, 2)],
        [(1, 1), (2, 1)],
        [(1, 2), (-1, 1)],
        [(2, 1), ("1/3", 2), (-1, 1)],
        [(1, 3), (2, 2)],
    ],
)
def test_all_families(pairs):
    report = psi_report(JordanData.from_pairs(pairs))
    n = sum(s for _, s in pairs)
    assert len(report.families) == 2 + (n - 1)
    for family in report.families:
        assert family.passed, family.failure
        assert family.g_recovered == family.g_bruteforce == family.g_closed_form
        if len(pairs) <= 2 or family.family != PsiFamily.MID_K.value:
            assert family.cross_equal
            assert family.note is None
    if len(pairs) >= 3:
        mids = [f for f in report.families if f.family == PsiFamily.MID_K.value]
        assert not all(f.cross_equal for f in mids)


def test_mid_family_cross_residues_split_for_three_blocks():
    report = psi_oracle(JordanData.from_pairs([(1, 1), (2, 1), (-3, 1)]), PsiFamily.MID_K, k=2)
    assert not report.cross_equal
    assert report.note.startswith("residues at 1 differ")
    assert report.g_recovered == report.g_bruteforce == report.g_closed_form == "0"
    assert report.passed
    assert report.failure is None
