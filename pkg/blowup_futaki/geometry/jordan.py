"""Lifted vector field on the blow-up chart U_1 and the potential jet at its zero q.

Coordinates: u_1 is the fibre coordinate of the exceptional divisor and z_1 = u_1,
z_j = u_1 u_j for j >= 2. The focus block is always moved to the front first, so the zero
being studied is the origin of the chart.
"""

from __future__ import annotations

import random
from typing import List, Sequence, Tuple

from pydantic import BaseModel, ConfigDict

from ..algebra.poly import Poly, depends_only_on, divisible_by_power, poly_diff, poly_to_text
from ..core.models import InvalidJordanDataError, JordanData, PerturbationReport, PerturbationRow
from ..core.mylog import get_logger, log_outcome

logger = get_logger()


class LiftedField(BaseModel):
    model_config = ConfigDict(frozen=True, arbitrary_types_allowed=True)

    components: Tuple[Poly, ...]
    focus_block: int
    data: JordanData  # blocks in focused order

    @property
    def n(self) -> int:
        return len(self.components)

    def component(self, i: int) -> Poly:
        """X~_i with the 1-based index of the formulas."""
        return self.components[i - 1]


class PotentialJet(BaseModel):
    model_config = ConfigDict(frozen=True, arbitrary_types_allowed=True)

    value_at_q: Poly
    u2_gradient: Poly
    laplacian: Poly
    effective: Poly


# ---------------------------------------------------------------------------------------
# Fields
# ---------------------------------------------------------------------------------------


def _focused(data: JordanData, focus_block: int) -> JordanData:
    try:
        return data.focused(focus_block)
    except InvalidJordanDataError:
        raise
    except (IndexError, TypeError) as e:
        raise InvalidJordanDataError(str(e)) from None


def build_lifted_field(data: JordanData, focus_block: int = 0) -> LiftedField:
    """The lift of the linear field with Jordan data `data` around the zero of block `focus_block`.

    X~_1 = u_1(a_1 + u_2) and, for a coordinate i >= 2 of block j,
    X~_i = u_{i+1} - u_i(u_2 + a_1 - a_j), without the u_{i+1} term at the last index of the block.
    """
    fd = _focused(data, focus_block)
    U = fd.universe
    a1 = fd.eigenvalues[0]
    s = fd.prefix_sums

    components: List[Poly] = [U.u(1) * (U.const(a1) + U.u(2))]
    for j, block in enumerate(fd.blocks):
        shift = U.u(2) + U.const(a1 - block.eigenvalue)
        for i in range(max(s[j] + 1, 2), s[j + 1] + 1):
            comp = -U.u(i) * shift
            if i < s[j + 1]:
                comp += U.u(i + 1)
            components.append(comp)
    return LiftedField(components=tuple(components), focus_block=focus_block, data=fd)


def linear_field(data: JordanData, focus_block: int = 0) -> List[Poly]:
    """Components X_i of the linear field whose lift is `build_lifted_field`.

    The u-symbols stand for the original coordinates z_i. z_2 always feeds X_1; when the
    focus block has size one this matrix is conjugate to the Jordan form since the
    eigenvalues are distinct.
    """
    fd = _focused(data, focus_block)
    U = fd.universe
    s = fd.prefix_sums
    out: List[Poly] = []
    for j, block in enumerate(fd.blocks):
        for i in range(s[j] + 1, s[j + 1] + 1):
            comp = U.const(block.eigenvalue) * U.u(i)
            if i < s[j + 1] or i == 1:
                comp += U.u(i + 1)
            out.append(comp)
    return out


def lift_field(components: Sequence[Poly]) -> List[Poly]:
    """Lift a field vanishing at the origin to U_1: X~_1 = X_1, X~_j = (X_j - u_j X_1)/u_1."""
    if not components:
        return []
    R = components[0].ring
    us = R.gens[: len(components)]
    u1 = us[0]
    blowdown = [(u1, u1)] + [(uj, u1 * uj) for uj in us[1:]]
    pulled = [c.compose(blowdown) if c else c for c in components]
    lifted = [pulled[0]]
    for uj, yj in zip(us[1:], pulled[1:]):
        lifted.append((yj - uj * pulled[0]).exquo(u1))
    return lifted


def divergence(field: LiftedField | Sequence[Poly]) -> Poly:
    components = field.components if isinstance(field, LiftedField) else tuple(field)
    R = components[0].ring
    total = R.zero
    for ui, comp in zip(R.gens, components):
        total += poly_diff(comp, ui, 1)
    return total


def expected_divergence(data: JordanData, focus_block: int = 0) -> Poly:
    """Tr(A) - (n - 1)(u_2 + a_focus)."""
    fd = _focused(data, focus_block)
    U = fd.universe
    return U.const(fd.trace) - (fd.n - 1) * (U.u(2) + U.const(fd.eigenvalues[0]))


def potential_jet(data: JordanData, focus_block: int = 0) -> PotentialJet:
    fd = _focused(data, focus_block)
    U = fd.universe
    a1 = U.const(fd.eigenvalues[0])
    return PotentialJet(
        value_at_q=U.theta - a1 * U.eps,
        u2_gradient=-U.eps,
        laplacian=expected_divergence(fd),
        effective=U.theta - U.eps * (a1 + U.u(2)),
    )


def coordinate_permutation(data: JordanData, focus_block: int) -> List[int]:
    """perm[i-1] = original 1-based coordinate that becomes coordinate i after focusing."""
    s = data.prefix_sums
    order = [focus_block] + [j for j in range(data.m) if j != focus_block]
    perm: List[int] = []
    for j in order:
        perm.extend(range(s[j] + 1, s[j + 1] + 1))
    return perm


# ---------------------------------------------------------------------------------------
# Higher order perturbations
# ---------------------------------------------------------------------------------------


def _has_no_low_order_terms(p: Poly, n: int) -> bool:
    return all(sum(m[:n]) >= 2 for m in p.monoms())


def perturbation_order_check(
    data: JordanData, quadratic_terms: Sequence[Poly], focus_block: int = 0
) -> PerturbationRow:
    """Compare the lift of linear + perturbation with the lift of the linear field."""
    fd = _focused(data, focus_block)
    U = fd.universe
    if len(quadratic_terms) != fd.n:
        raise ValueError(f"expected {fd.n} perturbation components, got {len(quadratic_terms)}")
    for q in quadratic_terms:
        if q and (not depends_only_on(q, U.us) or not _has_no_low_order_terms(q, fd.n)):
            raise ValueError(f"perturbation term {q} must be a polynomial in z of order >= 2")

    x_lift = build_lifted_field(fd)
    y_lift = lift_field([x + q for x, q in zip(linear_field(fd), quadratic_terms)])
    u1 = U.u(1)

    failures: List[str] = []
    first_ok = divisible_by_power(y_lift[0] - x_lift.components[0], u1, 2)
    if not first_ok:
        failures.append("Y~_1 - X~_1 is not divisible by u_1^2")
    others_ok = True
    for i in range(2, fd.n + 1):
        if not divisible_by_power(y_lift[i - 1] - x_lift.component(i), u1, 1):
            others_ok = False
            failures.append(f"Y~_{i} - X~_{i} is not divisible by u_1")
    div_ok = divisible_by_power(divergence(y_lift) - divergence(x_lift), u1, 1)
    if not div_ok:
        failures.append("div Y~ - div X~ is not divisible by u_1")

    row = PerturbationRow(
        perturbation=[poly_to_text(q) for q in quadratic_terms],
        first_component_ok=first_ok,
        other_components_ok=others_ok,
        divergence_ok=div_ok,
        failures=failures,
    )
    if failures:
        logger.warning(f"perturbation check failed for [{fd.label()}]: {failures}")
    return row


def random_perturbation(data: JordanData, rng: random.Random, *, max_degree: int = 3, terms: int = 2) -> List[Poly]:
    """Random polynomial perturbation with small integer coefficients and order >= 2 in z."""
    U = data.universe
    n = data.n
    out: List[Poly] = []
    for _ in range(n):
        comp = U.zero
        for _ in range(rng.randint(0, terms)):
            degree = rng.randint(2, max_degree)
            mono = U.one
            for _ in range(degree):
                mono *= U.u(rng.randint(1, n))
            comp += rng.choice([-3, -2, -1, 1, 2, 3]) * mono
        out.append(comp)
    return out


def perturbation_report(
    data: JordanData, rng: random.Random, count: int = 5, focus_block: int = 0
) -> PerturbationReport:
    """Zero perturbation first, then `count` random ones, all checked against the same lift."""
    fd = _focused(data, focus_block)
    U = fd.universe
    batches = [[U.zero] * fd.n] + [random_perturbation(fd, rng) for _ in range(count)]
    rows = [perturbation_order_check(fd, terms) for terms in batches]
    overall = all(r.passed for r in rows)
    log_outcome(f"perturb {len(rows)} fields", fd.label(), overall)
    return PerturbationReport(blocks=fd.to_json(), rows=rows, overall=overall)
