"""Localized residue contributions at a zero of the lifted field.

Every integrand in scope is a polynomial in theta, eps, mu and u_2 only, so the reduced
formulas need nothing but the u_2-derivatives of phi at the origin.
"""

from __future__ import annotations

from math import factorial
from typing import Dict, List, Optional, Sequence, Tuple

from pydantic import BaseModel, ConfigDict, model_validator

from ..algebra.compositions import compositions
from ..algebra.poly import Poly, depends_only_on, eval_at_zero, poly_diff, poly_to_text
from ..algebra.rational import Fraction, RationalLike, binomial, parse_rational, to_qq
from ..core.models import ComparatorReport, ConventionRow, JordanData, PhiSelector, PolyView, ResidueReport
from ..core.mylog import get_logger
from ..core.mypath_and_config import SETTINGS
from ..geometry.jordan import build_lifted_field, expected_divergence, potential_jet
from .bmatrix import BMatrix, build_bmatrix, choose_k, symbolic_det

logger = get_logger()


class ResidueInputError(ValueError):
    pass


class ResidueInput(BaseModel):
    model_config = ConfigDict(frozen=True, arbitrary_types_allowed=True)

    phi: Poly
    data: JordanData
    focus: int = 0

    @model_validator(mode="after")
    def _check_phi(self) -> "ResidueInput":
        U = self.data.universe
        if self.phi.ring != U.ring:
            raise ValueError(f"phi lives in {self.phi.ring}, expected {U.ring}")
        if not depends_only_on(self.phi, [U.u(2), U.eps, U.theta, U.mu]):
            raise ValueError(f"phi = {poly_to_text(self.phi)} depends on a u-symbol other than u2")
        if not 0 <= self.focus < self.data.m:
            raise ValueError(f"focus block {self.focus} outside 0..{self.data.m - 1}")
        return self

    @classmethod
    def of(cls, phi: Poly, data: JordanData, focus: int = 0) -> "ResidueInput":
        try:
            return cls(phi=phi, data=data, focus=focus)
        except ValueError as e:
            raise ResidueInputError(str(e)) from None


def _u2_derivatives_at_zero(phi: Poly, count: int) -> List[Poly]:
    """[phi(0), phi'(0), ..., phi^(count-1)(0)] in u_2."""
    u2 = phi.ring.gens[1]
    out = []
    current = phi
    for _ in range(count):
        out.append(eval_at_zero(current, [u2]))
        current = poly_diff(current, u2, 1)
    return out


# ---------------------------------------------------------------------------------------
# Reduced formulas
# ---------------------------------------------------------------------------------------


def nondegenerate_residue(phi_value: Poly, jacobian_det: RationalLike) -> Poly:
    det = parse_rational(jacobian_det)
    if det == 0:
        raise ResidueInputError("zero Jacobian determinant at a nondegenerate zero")
    return phi_value * phi_value.ring.ground_new(to_qq(1 / det))


def single_block_residue(inp: ResidueInput) -> Poly:
    """sum_{i<n} (-1)^i / (i! a^(n-i)) * d^i phi/du_2^i (0) for one Jordan block."""
    data = inp.data
    if data.m != 1:
        raise ResidueInputError(f"single_block_residue needs one block, got {data.m}")
    n, a = data.n, data.eigenvalues[0]
    U = data.universe
    out = U.zero
    for i, d in enumerate(_u2_derivatives_at_zero(inp.phi, n)):
        if d:
            out += d * U.const(Fraction((-1) ** i, factorial(i)) / a ** (n - i))
    return out


def multi_block_weights(data: JordanData, focus: int = 0) -> List[Fraction]:
    """w_i with Res = sum_i w_i * d^i phi/du_2^i (0), summed over compositions of n_1 - i - 1."""
    fd = data.focused(focus)
    n1, a1 = fd.sizes[0], fd.eigenvalues[0]
    rest = list(zip(fd.sizes[1:], fd.eigenvalues[1:]))
    weights = []
    for i in range(n1):
        w = Fraction(0)
        for mu in compositions(n1 - i - 1, fd.m):
            term = Fraction((-1) ** (n1 + mu[0] - 1), factorial(i)) / a1 ** (mu[0] + 1)
            for (nl, al), ml in zip(rest, mu[1:]):
                term *= Fraction(binomial(nl + ml - 1, ml)) / (al - a1) ** (nl + ml)
            w += term
        weights.append(w)
    return weights


def multi_block_residue(inp: ResidueInput) -> Poly:
    fd = inp.data.focused(inp.focus)
    U = fd.universe
    n1, a1 = fd.sizes[0], fd.eigenvalues[0]
    if n1 == 1:
        jac = a1
        for nl, al in zip(fd.sizes[1:], fd.eigenvalues[1:]):
            jac *= (al - a1) ** nl
        return nondegenerate_residue(eval_at_zero(inp.phi, [U.u(2)]), jac)

    out = U.zero
    for w, d in zip(multi_block_weights(fd), _u2_derivatives_at_zero(inp.phi, n1)):
        if w and d:
            out += d * U.const(w)
    return out


# ---------------------------------------------------------------------------------------
# Brute force through the certificate matrix
# ---------------------------------------------------------------------------------------


def brute_force_residue(B: BMatrix, phi: Poly, orders: Sequence[int], det_b: Optional[Poly] = None) -> Poly:
    """(1 / prod orders!) * d^|orders| (phi det B) / du^orders at u = 0."""
    U = B.field.data.universe
    if len(orders) != U.n or any(o < 0 for o in orders):
        raise ResidueInputError(f"orders {list(orders)} must be {U.n} nonnegative integers")
    if U.n > SETTINGS.max_brute_n:
        raise ResidueInputError(f"brute-force residues are limited to n <= {SETTINGS.max_brute_n}, got {U.n}")
    integrand = phi * (symbolic_det(B) if det_b is None else det_b)
    norm = 1
    for ui, o in zip(U.us, orders):
        integrand = poly_diff(integrand, ui, o)
        norm *= factorial(o)
    return eval_at_zero(integrand, U.us) * U.const(Fraction(1, norm))


def order_conventions(B: BMatrix) -> Dict[str, Tuple[int, ...]]:
    """Derivative orders alpha_j - 1, and the same with 2^k in place of 2^(k+1) - 1."""
    n1 = B.field.data.sizes[0]
    reduced = tuple(a - 1 for a in B.alpha)
    dyadic = tuple(2**B.k if 3 <= j <= n1 else o for j, o in enumerate(reduced, start=1))
    return {"alpha_minus_one": reduced, "dyadic": dyadic}


def comparator_integrands(data: JordanData, focus: int = 0) -> Dict[str, Poly]:
    fd = data.focused(focus)
    U = fd.universe
    theta_eff = potential_jet(fd).effective
    return {
        "1": U.one,
        "u2": U.u(2),
        "u2^2": U.u(2) ** 2,
        "theta_eff^(n+1)": theta_eff ** (fd.n + 1),
        "div*theta_eff^n": expected_divergence(fd) * theta_eff**fd.n,
    }


def compare_order_conventions(
    data: JordanData, focus: int = 0, integrands: Optional[Dict[str, Poly]] = None
) -> ComparatorReport:
    """Run the certificate path under both order conventions against the reduced formula."""
    fd = data.focused(focus)
    if fd.sizes[0] < 2:
        raise ResidueInputError("the comparator needs a degenerate zero (focus block size >= 2)")
    integrands = integrands or comparator_integrands(fd)
    B = build_bmatrix(build_lifted_field(fd))
    det_b = symbolic_det(B)
    rows = []
    for name, orders in order_conventions(B).items():
        matches = {}
        for label, phi in integrands.items():
            reduced = multi_block_residue(ResidueInput.of(phi, fd))
            matches[label] = brute_force_residue(B, phi, orders, det_b) == reduced
        rows.append(ConventionRow(name=name, orders=list(orders), matches=matches, all_match=all(matches.values())))

    winners = [r.name for r in rows if r.all_match]
    if not winners:
        finding = "no derivative-order convention reproduces the reduced formula"
    elif len(winners) == len(rows):
        finding = "both conventions coincide here and reproduce the reduced formula"
    else:
        finding = f"{', '.join(winners)} reproduces the reduced formula (k={choose_k(fd.sizes[0])})"
    logger.info(f"comparator [{fd.label()}]: {finding}")
    return ComparatorReport(blocks=fd.to_json(), integrands=list(integrands), conventions=rows, finding=finding)


# ---------------------------------------------------------------------------------------
# Integrands by selector
# ---------------------------------------------------------------------------------------


def phi_from_selector(selector: PhiSelector, power: int, data: JordanData, focus: int = 0) -> Poly:
    fd = data.focused(focus)
    theta_eff = potential_jet(fd).effective
    if selector is PhiSelector.ONE:
        return fd.universe.one
    if selector is PhiSelector.THETA_POWER:
        return theta_eff**power
    if selector is PhiSelector.LAPLACIAN_TIMES_THETA_POWER:
        return expected_divergence(fd) * theta_eff**power
    raise ResidueInputError(f"unknown integrand selector {selector!r}")


def residue_report(
    data: JordanData,
    focus: int = 0,
    selector: PhiSelector = PhiSelector.ONE,
    power: int = 0,
    compare: bool = False,
) -> ResidueReport:
    phi = phi_from_selector(selector, power, data, focus)
    value = multi_block_residue(ResidueInput.of(phi, data, focus))
    comparator = compare_order_conventions(data, focus) if compare else None
    label = selector.value if selector is PhiSelector.ONE else f"{selector.value} {power}"
    logger.info(f"residue [{data.label()}] focus={focus + 1} phi={label}: {poly_to_text(value)}")
    return ResidueReport(
        blocks=data.to_json(),
        focus=focus + 1,
        phi=label,
        residue=PolyView.of(value),
        comparator=comparator,
    )
