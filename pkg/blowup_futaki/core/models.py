from __future__ import annotations

from enum import Enum
from pathlib import Path
from typing import Annotated, Dict, List, Optional, Tuple

from pydantic import BaseModel, BeforeValidator, ConfigDict, Field, PlainSerializer, field_validator, model_validator

from ..algebra.poly import Poly, SymbolUniverse, poly_to_json, poly_to_text, universe
from ..algebra.rational import Fraction, format_rational, parse_rational

RationalField = Annotated[
    Fraction,
    BeforeValidator(parse_rational),
    PlainSerializer(format_rational, return_type=str),
]


class InvalidJordanDataError(ValueError):
    pass


# ---------------------------------------------------------------------------------------
# Jordan data
# ---------------------------------------------------------------------------------------


class JordanBlock(BaseModel):
    model_config = ConfigDict(frozen=True, arbitrary_types_allowed=True)

    eigenvalue: RationalField
    size: int = Field(..., ge=1)


class JordanData(BaseModel):
    """Jordan blocks (a_j, n_j) of DX_p; the input of every computation."""

    model_config = ConfigDict(frozen=True, arbitrary_types_allowed=True)

    blocks: Tuple[JordanBlock, ...]

    @field_validator("blocks")
    @classmethod
    def _check_blocks(cls, blocks: Tuple[JordanBlock, ...]) -> Tuple[JordanBlock, ...]:
        if not blocks:
            raise ValueError("at least one Jordan block is required")
        if sum(b.size for b in blocks) < 2:
            raise ValueError("the dimension n = sum of block sizes must be at least 2")
        eigenvalues = [b.eigenvalue for b in blocks]
        if any(a == 0 for a in eigenvalues):
            raise ValueError("eigenvalue 0: p must be a nondegenerate zero")
        if len(set(eigenvalues)) != len(eigenvalues):
            raise ValueError("repeated eigenvalue across Jordan blocks violates condition (star)")
        return blocks

    @classmethod
    def from_pairs(cls, pairs) -> "JordanData":
        """Build from (eigenvalue, size) pairs, raising InvalidJordanDataError on bad input."""
        try:
            return cls(blocks=tuple(JordanBlock(eigenvalue=a, size=s) for a, s in pairs))
        except ValueError as e:
            raise InvalidJordanDataError(str(e)) from None

    @classmethod
    def single(cls, eigenvalue, size: int) -> "JordanData":
        return cls.from_pairs([(eigenvalue, size)])

    # --- derived quantities -----------------------------------------------------------

    @property
    def m(self) -> int:
        return len(self.blocks)

    @property
    def n(self) -> int:
        return sum(b.size for b in self.blocks)

    @property
    def sizes(self) -> List[int]:
        return [b.size for b in self.blocks]

    @property
    def eigenvalues(self) -> List[Fraction]:
        return [b.eigenvalue for b in self.blocks]

    @property
    def prefix_sums(self) -> List[int]:
        """s_0 = 0, s_1, ..., s_m = n."""
        out = [0]
        for b in self.blocks:
            out.append(out[-1] + b.size)
        return out

    @property
    def trace(self) -> Fraction:
        return sum((b.size * b.eigenvalue for b in self.blocks), Fraction(0))

    @property
    def det(self) -> Fraction:
        out = Fraction(1)
        for b in self.blocks:
            out *= b.eigenvalue**b.size
        return out

    @property
    def universe(self) -> SymbolUniverse:
        return universe(self.n)

    def block_of(self, coordinate: int) -> int:
        """0-based block index owning the 1-based coordinate u_coordinate."""
        s = self.prefix_sums
        for j in range(self.m):
            if s[j] < coordinate <= s[j + 1]:
                return j
        raise IndexError(f"coordinate {coordinate} outside 1..{self.n}")

    def focused(self, focus: int) -> "JordanData":
        """Move block `focus` (0-based) to the front, keeping the others in order."""
        if not 0 <= focus < self.m:
            raise InvalidJordanDataError(f"focus block {focus} outside 0..{self.m - 1}")
        order = [focus] + [j for j in range(self.m) if j != focus]
        return JordanData(blocks=tuple(self.blocks[j] for j in order))

    def to_json(self) -> List[Dict[str, object]]:
        return [{"eigenvalue": format_rational(b.eigenvalue), "size": b.size} for b in self.blocks]

    def label(self) -> str:
        return ", ".join(f"{format_rational(b.eigenvalue)}:{b.size}" for b in self.blocks)


class BlockSpec(BaseModel):
    """A block as given in a config: the eigenvalue may be left for the sampler."""

    model_config = ConfigDict(arbitrary_types_allowed=True)

    eigenvalue: Optional[RationalField] = None
    size: int = Field(..., ge=1)


# ---------------------------------------------------------------------------------------
# Run configuration
# ---------------------------------------------------------------------------------------


class Command(Enum):
    VERIFY = "verify"
    RESIDUE = "residue"
    GK = "gk"
    PSI = "psi"
    DETB = "detb"
    COMB = "comb"
    PERTURB = "perturb"
    POINCARE = "poincare"


class PhiSelector(Enum):
    ONE = "one"
    THETA_POWER = "theta_power"
    LAPLACIAN_TIMES_THETA_POWER = "laplacian_times_theta_power"


class PsiFamily(Enum):
    K_EQ_N_PLUS_1 = "k_eq_n_plus_1"
    MID_K = "mid_k"
    K_EQ_1 = "k_eq_1"


class RunConfig(BaseModel):
    model_config = ConfigDict(arbitrary_types_allowed=True)

    command: Command
    blocks: Optional[List[BlockSpec]] = None
    truncation_order: Optional[int] = Field(default=None, ge=0)
    samples: int = Field(default=1, ge=1)
    seed: int = Field(default=0, ge=0)
    output: Optional[Path] = None
    pretty: bool = False
    sweep: Optional[Tuple[int, int]] = None

    focus: int = Field(default=1, ge=1)
    phi: PhiSelector = PhiSelector.ONE
    phi_power: int = Field(default=0, ge=0)
    compare: bool = False
    family: Optional[PsiFamily] = None
    k: Optional[int] = None
    l: int = Field(default=2, ge=0)
    m_cap: int = Field(default=6, ge=2)
    eigenvalues: Optional[List[RationalField]] = None

    @model_validator(mode="after")
    def _check_inputs(self) -> "RunConfig":
        needs_blocks = self.command not in {Command.COMB, Command.POINCARE}
        if needs_blocks and self.sweep is None and not self.blocks:
            raise ValueError(f"command {self.command.value} needs blocks or a sweep")
        if self.command is Command.POINCARE and not self.eigenvalues and not self.blocks:
            raise ValueError("poincare needs eigenvalues or blocks")
        if self.command is Command.VERIFY and self.truncation_order is not None and self.blocks:
            n = sum(b.size for b in self.blocks)
            if self.truncation_order < n:
                raise ValueError(f"truncation_order {self.truncation_order} must be at least n = {n}")
        return self


# ---------------------------------------------------------------------------------------
# Reports
# ---------------------------------------------------------------------------------------


class PolyView(BaseModel):
    text: str
    coefficients: Dict[str, str]

    @classmethod
    def of(cls, p: Poly) -> "PolyView":
        return cls(text=poly_to_text(p), coefficients=poly_to_json(p))


class OrderCheck(BaseModel):
    model_config = ConfigDict(populate_by_name=True)

    power: int
    coefficient: str
    expected: str
    passed: bool = Field(..., serialization_alias="pass")


class SumCheck(BaseModel):
    name: str
    residual: PolyView
    vanishes_below: Optional[int] = None  # None: the residual is exactly zero
    passed: bool


class VerificationReport(BaseModel):
    blocks: List[Dict[str, object]]
    truncation_order: int
    defect: Dict[str, str]
    defect_text: str
    per_order: List[OrderCheck]
    mu_free: bool
    sum_checks: List[SumCheck] = Field(default_factory=list)
    overall: bool
    notes: List[str] = Field(default_factory=list)


class GPrimeRow(BaseModel):
    k: int
    gp: str
    gpp: str
    gppp: str
    gp_is_trace_times_next: bool
    gpp_plus_gppp_is_scaled_gk: bool


class GTableReport(BaseModel):
    blocks: List[Dict[str, object]]
    values: Dict[str, str]
    closed_form: Dict[str, str]
    agree: Dict[str, bool]
    primes: List[GPrimeRow]
    overall: bool


class PsiFunctionReport(BaseModel):
    j: int
    residues: Dict[str, str]
    residue_sum_zero: bool
    pole_at_zero: bool
    pole_at_infinity: bool


class PsiFamilyReport(BaseModel):
    family: str
    k: int
    functions: List[PsiFunctionReport]
    structural_ok: bool
    cross_equal: bool
    g_recovered: str
    g_bruteforce: str
    g_closed_form: str
    passed: bool
    failure: Optional[str] = None
    note: Optional[str] = None


class PsiReport(BaseModel):
    blocks: List[Dict[str, object]]
    families: List[PsiFamilyReport]
    overall: bool


class CoefficientExtraction(BaseModel):
    exponent_label: str
    exponent: int
    coefficient: str
    matches_closed_form: bool


class DetBReport(BaseModel):
    blocks: List[Dict[str, object]]
    focus: int
    k: int
    alpha: List[int]
    detB1: str
    detBj: List[str]
    derivative_table: List[Dict[str, str]]
    u2_coefficient: str
    extractions: List[CoefficientExtraction]
    certificate_ok: Optional[bool] = None
    symbolic_det_matches: Optional[bool] = None
    overall: bool


class ConventionRow(BaseModel):
    name: str
    orders: List[int]
    matches: Dict[str, bool]
    all_match: bool


class ComparatorReport(BaseModel):
    blocks: List[Dict[str, object]]
    integrands: List[str]
    conventions: List[ConventionRow]
    normative: str = "reduced"
    finding: str


class ResidueReport(BaseModel):
    blocks: List[Dict[str, object]]
    focus: int
    phi: str
    residue: PolyView
    comparator: Optional[ComparatorReport] = None


class CombinatorialRow(BaseModel):
    k: int
    value: str
    expected: Optional[str]
    passed: bool


class CombinatorialReport(BaseModel):
    l: int
    rows: List[CombinatorialRow]
    overall: bool


class PerturbationRow(BaseModel):
    perturbation: List[str]
    first_component_ok: bool
    other_components_ok: bool
    divergence_ok: bool
    failures: List[str] = Field(default_factory=list)

    @property
    def passed(self) -> bool:
        return self.first_component_ok and self.other_components_ok and self.divergence_ok


class PerturbationReport(BaseModel):
    blocks: List[Dict[str, object]]
    rows: List[PerturbationRow]
    overall: bool


class ResonanceWitness(BaseModel):
    target_index: int
    target: str
    multiplicities: List[int]
    relation: str


class PoincareReport(BaseModel):
    eigenvalues: List[str]
    m_cap: int
    poincare_domain: bool
    resonant: bool
    witness: Optional[ResonanceWitness] = None


class SweepRow(BaseModel):
    structure: List[int]
    sample: int
    blocks: List[Dict[str, object]]
    overall: bool
    failure: Optional[str] = None


class SweepReport(BaseModel):
    command: str
    seed: int
    samples: int
    rows: List[SweepRow]
    overall: bool


class ErrorDetail(BaseModel):
    type: str
    message: str


class ErrorReport(BaseModel):
    error: ErrorDetail
