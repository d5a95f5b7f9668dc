"""Poincare-domain and resonance conditions for linearizing a field at a zero."""

from typing import Dict, List, Sequence

from ..algebra.compositions import compositions
from ..algebra.rational import Fraction, RationalLike, format_rational, parse_rational
from ..core.models import PoincareReport, ResonanceWitness


def in_poincare_domain(eigenvalues: Sequence[Fraction]) -> bool:
    # on the real line the convex hull misses 0 iff all eigenvalues share a sign
    return all(a > 0 for a in eigenvalues) or all(a < 0 for a in eigenvalues)


def find_resonance(eigenvalues: Sequence[Fraction], m_cap: int) -> ResonanceWitness | None:
    """First relation lambda_k = sum m_i lambda_i with 2 <= sum m_i <= m_cap, if any."""
    first_index: Dict[Fraction, int] = {}
    for idx, a in enumerate(eigenvalues):
        first_index.setdefault(a, idx)
    distinct = list(first_index)

    for k, target in enumerate(eigenvalues):
        for total in range(2, m_cap + 1):
            for counts in compositions(total, len(distinct)):
                if sum((c * a for c, a in zip(counts, distinct)), Fraction(0)) != target:
                    continue
                multiplicities = [0] * len(eigenvalues)
                for c, a in zip(counts, distinct):
                    multiplicities[first_index[a]] = c
                rhs = " + ".join(f"{c}*({format_rational(a)})" for c, a in zip(counts, distinct) if c)
                return ResonanceWitness(
                    target_index=k,
                    target=format_rational(target),
                    multiplicities=multiplicities,
                    relation=f"{format_rational(target)} = {rhs}",
                )
    return None


def poincare_resonance_check(eigenvalues: Sequence[RationalLike], m_cap: int = 6) -> PoincareReport:
    values: List[Fraction] = [parse_rational(a) for a in eigenvalues]
    if any(a == 0 for a in values):
        raise ValueError("eigenvalues must be nonzero")
    if m_cap < 2:
        raise ValueError(f"m_cap must be at least 2, got {m_cap}")
    witness = find_resonance(values, m_cap)
    return PoincareReport(
        eigenvalues=[format_rational(a) for a in values],
        m_cap=m_cap,
        poincare_domain=in_poincare_domain(values),
        resonant=witness is not None,
        witness=witness,
    )
