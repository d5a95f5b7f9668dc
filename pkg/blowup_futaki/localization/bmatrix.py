"""Certificate matrix B with u_j^alpha_j = sum_i b_ij X~_i for the lifted field, and det B.

entries[j-1][i-1] is the coefficient of X~_i in the row of the target monomial u_j^alpha_j;
rows and columns both follow the coordinate order.
"""

from __future__ import annotations

from math import factorial
from typing import Dict, List, Optional, Tuple

from pydantic import BaseModel, ConfigDict
from sympy.polys.matrices import DomainMatrix

from ..algebra.poly import Poly, SymbolUniverse, monomial_coefficient, poly_to_text
from ..algebra.rational import Fraction, format_rational
from ..core.models import CoefficientExtraction, DetBReport, JordanData
from ..core.mylog import get_logger
from ..core.mypath_and_config import SETTINGS
from ..geometry.jordan import LiftedField, build_lifted_field

logger = get_logger()


class CertificateError(ArithmeticError):
    pass


class BMatrix(BaseModel):
    model_config = ConfigDict(frozen=True, arbitrary_types_allowed=True)

    entries: Tuple[Tuple[Poly, ...], ...]
    alpha: Tuple[int, ...]
    k: int
    field: LiftedField

    @property
    def n(self) -> int:
        return len(self.alpha)

    def row(self, j: int) -> Tuple[Poly, ...]:
        return self.entries[j - 1]


class DetBClosedForm(BaseModel):
    model_config = ConfigDict(frozen=True, arbitrary_types_allowed=True)

    detB1: Poly
    detBj: Tuple[Poly, ...]
    derivative_table: Tuple[Tuple[Fraction, ...], ...]  # per non-focus block, index i = u_2-order

    def product(self) -> Poly:
        out = self.detB1
        for d in self.detBj:
            out = out * d
        return out


def choose_k(n1: int) -> int:
    """The k with 2^k < n1 <= 2^(k+1); 0 by convention for n1 = 1."""
    if n1 < 1:
        raise ValueError(f"block size must be positive, got {n1}")
    if n1 == 1:
        return 0
    return (n1 - 1).bit_length() - 1


# ---------------------------------------------------------------------------------------
# Closed-form factors
# ---------------------------------------------------------------------------------------


def _focus_bracket(U: SymbolUniverse, a: Fraction, n1: int) -> Poly:
    """1/a - sum_{i=2}^{n1} (-1/a)^i u_i"""
    out = U.const(1 / a)
    for i in range(2, n1 + 1):
        out -= U.const((-1 / a) ** i) * U.u(i)
    return out


def _dyadic_factor(U: SymbolUniverse, l: int, k: int) -> Poly:
    """P_l = prod_{i=0}^k (u_{l+1}^{2^i} + u_2^{2^i} u_l^{2^i})"""
    out = U.one
    for i in range(k + 1):
        e = 2**i
        out *= U.u(l + 1) ** e + U.u(2) ** e * U.u(l) ** e
    return out


def _block_factor(U: SymbolUniverse, d: Fraction, k: int) -> Poly:
    """Q = prod_{i=0}^k (d^{2^i} + u_2^{2^i}) / d^{2^{k+1}}"""
    out = U.one
    for i in range(k + 1):
        e = 2**i
        out *= U.const(d**e) + U.u(2) ** e
    return out * U.const(1 / d ** (2 ** (k + 1)))


def detb_closed_form(data: JordanData, focus: int = 0, max_order: Optional[int] = None) -> DetBClosedForm:
    fd = data.focused(focus)
    U = fd.universe
    n1, a1 = fd.sizes[0], fd.eigenvalues[0]
    k = choose_k(n1)

    det1 = U.const((-1) ** (n1 - 1)) * _focus_bracket(U, a1, n1)
    for j in range(3, n1 + 1):
        det1 *= _dyadic_factor(U, j - 1, k)

    orders = range((n1 - 1 if max_order is None else max_order) + 1)
    detbj: List[Poly] = []
    table: List[Tuple[Fraction, ...]] = []
    for block in fd.blocks[1:]:
        d = block.eigenvalue - a1
        detbj.append(_block_factor(U, d, k) ** block.size)
        nj = block.size
        table.append(
            tuple(Fraction(factorial(nj + i - 1), factorial(nj - 1)) / d ** (nj + i) for i in orders)
        )
    return DetBClosedForm(detB1=det1, detBj=tuple(detbj), derivative_table=tuple(table))


def detb_u2_coefficient(data: JordanData, focus: int = 0, *, cross_check: bool = True) -> Poly:
    """(-1)^(n1-1) sum_{i=0}^{n1-1} (-u_2)^i / a_1^(i+1), cross-checked against det B_1 for n1 <= 5."""
    fd = data.focused(focus)
    U = fd.universe
    n1, a1 = fd.sizes[0], fd.eigenvalues[0]
    if n1 < 2:
        raise ValueError("the coefficient formula needs a focus block of size at least 2")
    out = U.zero
    for i in range(n1):
        out += U.const(Fraction(1) / a1 ** (i + 1)) * (-U.u(2)) ** i
    out = U.const((-1) ** (n1 - 1)) * out

    if cross_check and n1 <= 5:
        det1 = detb_closed_form(fd).detB1
        k = choose_k(n1)
        extracted = monomial_coefficient(det1, {U.u(j): 2 ** (k + 1) - 1 for j in range(3, n1 + 1)})
        if extracted != out:
            raise CertificateError(
                f"coefficient of prod u_j^{2 ** (k + 1) - 1} in det B_1 is {extracted}, formula gives {out}"
            )
    return out


def coefficient_extractions(data: JordanData, focus: int = 0) -> List[CoefficientExtraction]:
    """Coefficient of prod_{j>=3} u_j^e in det B_1 for e = 2^k and e = 2^(k+1) - 1."""
    fd = data.focused(focus)
    U = fd.universe
    n1 = fd.sizes[0]
    k = choose_k(n1)
    det1 = detb_closed_form(fd).detB1
    target = detb_u2_coefficient(fd, cross_check=False)
    out = []
    for label, e in (("2^k", 2**k), ("2^(k+1)-1", 2 ** (k + 1) - 1)):
        extracted = monomial_coefficient(det1, {U.u(j): e for j in range(3, n1 + 1)})
        out.append(
            CoefficientExtraction(
                exponent_label=label,
                exponent=e,
                coefficient=poly_to_text(extracted),
                matches_closed_form=extracted == target,
            )
        )
    return out


# ---------------------------------------------------------------------------------------
# Construction
# ---------------------------------------------------------------------------------------


def build_bmatrix(field: LiftedField, data: Optional[JordanData] = None) -> BMatrix:
    """Certificate matrix for a lifted field whose focus block has size >= 2."""
    fd = field.data
    if data is not None and sorted(data.label().split(", ")) != sorted(fd.label().split(", ")):
        raise ValueError("field was not built from the given Jordan data")
    U = fd.universe
    n = fd.n
    n1, a1 = fd.sizes[0], fd.eigenvalues[0]
    if n1 < 2:
        raise ValueError("no B-matrix for a focus block of size 1; the point is nondegenerate")
    k = choose_k(n1)
    K = 2 ** (k + 1)
    u, u2 = U.u, U.u(2)

    rows: Dict[int, List[Poly]] = {}

    def blank() -> List[Poly]:
        return [U.zero] * n

    # u_1 = [1/a - sum c_i u_i] X~_1 + sum_i [-u_1 c_i] X~_i,  c_i = (-1/a)^i
    row = blank()
    row[0] = _focus_bracket(U, a1, n1)
    for i in range(2, n1 + 1):
        row[i - 1] = -u(1) * U.const((-1 / a1) ** i)
    rows[1] = row

    # u_2^n1 = sum_i -u_2^(n1-i) X~_i
    row = blank()
    for i in range(2, n1 + 1):
        row[i - 1] = -(u2 ** (n1 - i))
    rows[2] = row

    # u_j^K by telescoping u_{l+1}^K - u_2^K u_l^K = X~_l P_l, then u_2^((j-1)K) from the row above
    for j in range(3, n1 + 1):
        row = blank()
        for l in range(2, n1 + 1):
            entry = -(u2 ** ((j - 1) * K - l))
            if l <= j - 1:
                entry += u2 ** ((j - 1 - l) * K) * _dyadic_factor(U, l, k)
            row[l - 1] = entry
        rows[j] = row

    # u_2^K = sum_l -u_2^(K-l) X~_l
    u2_to_K = blank()
    for l in range(2, n1 + 1):
        u2_to_K[l - 1] = -(u2 ** (K - l))

    s = fd.prefix_sums
    for jb in range(1, fd.m):
        d = fd.eigenvalues[jb] - a1
        Q = _block_factor(U, d, k)
        shrink = U.const(1 / d**K)
        first, last = s[jb] + 1, s[jb + 1]
        # u_i = Q X~_i - Q u_{i+1} + d^-K u_2^K u_i, solved from the last coordinate down
        for i in range(last, first - 1, -1):
            row = [shrink * u(i) * e for e in u2_to_K]
            row[i - 1] += Q
            if i < last:
                row = [r - Q * nxt for r, nxt in zip(row, rows[i + 1])]
            rows[i] = row

    alpha = (1, n1) + (K,) * (n1 - 2) + (1,) * (n - n1)
    entries = tuple(tuple(rows[j]) for j in range(1, n + 1))
    B = BMatrix(entries=entries, alpha=alpha, k=k, field=field)
    check_certificate(B)
    return B


def check_certificate(B: BMatrix) -> None:
    X = B.field.components
    U = B.field.data.universe
    for j in range(1, B.n + 1):
        lhs = U.u(j) ** B.alpha[j - 1]
        rhs = U.zero
        for b, x in zip(B.row(j), X):
            if b:
                rhs += b * x
        if lhs != rhs:
            raise CertificateError(f"row {j}: u_{j}^{B.alpha[j - 1]} != sum_i b_ij X~_i (difference {lhs - rhs})")


def symbolic_det(B: BMatrix) -> Poly:
    R = B.field.data.universe.ring
    M = DomainMatrix([list(row) for row in B.entries], (B.n, B.n), R.to_domain())
    return M.det()


# ---------------------------------------------------------------------------------------
# Report
# ---------------------------------------------------------------------------------------


def detb_report(data: JordanData, focus: int = 0) -> DetBReport:
    fd = data.focused(focus)
    closed = detb_closed_form(fd)
    n1 = fd.sizes[0]
    report = {
        "blocks": data.to_json(),
        "focus": focus + 1,
        "k": choose_k(n1),
        "detB1": poly_to_text(closed.detB1),
        "detBj": [poly_to_text(d) for d in closed.detBj],
        "derivative_table": [{str(i): format_rational(v) for i, v in enumerate(row)} for row in closed.derivative_table],
    }
    if n1 < 2:
        report.update(alpha=[0] * fd.n, u2_coefficient="", extractions=[], overall=True)
        return DetBReport(**report)

    extractions = coefficient_extractions(fd)
    B = None
    certificate_ok: Optional[bool] = None
    det_matches: Optional[bool] = None
    if fd.n <= SETTINGS.max_symbolic_det_n:
        try:
            B = build_bmatrix(build_lifted_field(fd))
            certificate_ok = True
        except CertificateError as e:
            logger.warning(f"certificate failed for [{fd.label()}]: {e}")
            certificate_ok = False
        if B is not None:
            det_matches = symbolic_det(B) == closed.product()
    k = choose_k(n1)
    overall = (
        any(x.matches_closed_form for x in extractions)
        and certificate_ok is not False
        and det_matches is not False
    )
    report.update(
        alpha=[1, n1] + [2 ** (k + 1)] * (n1 - 2) + [1] * (fd.n - n1),
        u2_coefficient=poly_to_text(detb_u2_coefficient(fd, cross_check=False)),
        extractions=extractions,
        certificate_ok=certificate_ok,
        symbolic_det_matches=det_matches,
        overall=overall,
    )
    logger.info(f"detb [{fd.label()}]: certificate={certificate_ok} det={det_matches}")
    return DetBReport(**report)
