import random
from typing import Callable, Dict, Iterable, List, Optional, Sequence, Union

from pydantic import BaseModel

from ..algebra.compositions import block_structures
from ..algebra.rational import Fraction
from ..geometry.jordan import perturbation_report
from ..geometry.normal_form import poincare_resonance_check
from ..localization.bmatrix import detb_report
from ..localization.futaki import verify_main_identity
from ..localization.gksums import combinatorial_report, gtable_report
from ..localization.psi import psi_report
from ..localization.residues import residue_report
from .models import BlockSpec, Command, JordanData, RunConfig, SweepReport, SweepRow
from .mylog import get_logger, log_outcome
from .mypath_and_config import SETTINGS
from .workflow_ui import JsonReportUI, ReportUI

logger = get_logger()


def sample_eigenvalues(
    m: int,
    seed: Union[int, random.Random, None] = None,
    forbidden: Iterable[Fraction] = (),
    *,
    bound: Optional[int] = None,
) -> List[Fraction]:
    """m pairwise-distinct nonzero rationals p/q with |p|, q <= bound, none of them in `forbidden`."""
    if m < 1:
        raise ValueError(f"m must be positive, got {m}")
    bound = SETTINGS.sample_bound if bound is None else bound
    rng = seed if isinstance(seed, random.Random) else random.Random(SETTINGS.default_seed if seed is None else seed)
    taken = set(forbidden)
    out: List[Fraction] = []
    while len(out) < m:
        p = rng.randint(-bound, bound)
        q = rng.randint(1, bound)
        if p == 0:
            continue
        value = Fraction(p, q)
        if value in taken:
            continue
        taken.add(value)
        out.append(value)
    return out


def resolve_blocks(specs: Sequence[BlockSpec], rng: random.Random) -> JordanData:
    """Fill in the eigenvalues a config left open, avoiding the ones it fixed."""
    given = [s.eigenvalue for s in specs if s.eigenvalue is not None]
    missing = sum(1 for s in specs if s.eigenvalue is None)
    drawn = iter(sample_eigenvalues(missing, rng, given) if missing else [])
    pairs = [(s.eigenvalue if s.eigenvalue is not None else next(drawn), s.size) for s in specs]
    return JordanData.from_pairs(pairs)


class SampledRunWorkflow:
    """Dispatch one command over the configured Jordan data, sampled draws or a sweep of block structures."""

    def __init__(self, config: RunConfig, *, ui: Optional[ReportUI] = None):
        self.config = config
        self.ui = ui or JsonReportUI(config.output, pretty=config.pretty)
        self.rng = random.Random(config.seed)
        self.runners: Dict[Command, Callable[[JordanData], BaseModel]] = {
            Command.VERIFY: lambda d: verify_main_identity(d, self._cap_for(d)),
            Command.RESIDUE: lambda d: residue_report(
                d, self.config.focus - 1, self.config.phi, self.config.phi_power, self.config.compare
            ),
            Command.GK: gtable_report,
            Command.PSI: lambda d: psi_report(d, self.config.family, self.config.k),
            Command.DETB: lambda d: detb_report(d, self.config.focus - 1),
            Command.PERTURB: lambda d: perturbation_report(d, self.rng, self.config.samples, self.config.focus - 1),
            Command.POINCARE: self._poincare,
        }

    def _cap_for(self, data: JordanData) -> Optional[int]:
        # a sweep mixes dimensions; a cap below n falls back to the default n + 1
        cap = self.config.truncation_order
        return cap if cap is not None and cap >= data.n else None

    def _poincare(self, data: Optional[JordanData]) -> BaseModel:
        if self.config.eigenvalues:
            values = list(self.config.eigenvalues)
        else:
            values = [b.eigenvalue for b in data.blocks for _ in range(b.size)]
        return poincare_resonance_check(values, self.config.m_cap)

    def run(self) -> BaseModel:
        config = self.config
        if config.command is Command.COMB:
            report = combinatorial_report(config.l)
        elif config.command is Command.POINCARE and config.eigenvalues:
            report = self._poincare(None)
        elif config.sweep is not None:
            report = self._sweep(block_structures(config.sweep[0], config.sweep[1]))
        elif config.samples > 1 and config.command is not Command.PERTURB:
            report = self._sweep([tuple(b.size for b in config.blocks)], specs=config.blocks)
        else:
            report = self.runners[config.command](resolve_blocks(config.blocks, self.rng))
        self.ui.show_report(report)
        return report

    def _sweep(self, structures: Iterable[Sequence[int]], specs: Optional[List[BlockSpec]] = None) -> SweepReport:
        config = self.config
        rows: List[SweepRow] = []
        for structure in structures:
            for sample in range(config.samples):
                block_specs = specs or [BlockSpec(size=s) for s in structure]
                data = resolve_blocks(block_specs, self.rng)
                if config.command in (Command.RESIDUE, Command.DETB) and config.focus > data.m:
                    continue
                report = self.runners[config.command](data)
                overall = getattr(report, "overall", True)
                rows.append(
                    SweepRow(
                        structure=list(structure),
                        sample=sample,
                        blocks=data.to_json(),
                        overall=overall,
                        failure=None if overall else _first_failure(report),
                    )
                )
        passed = all(r.overall for r in rows)
        log_outcome(f"sweep {config.command.value}", f"{len(rows)} runs", passed)
        return SweepReport(command=config.command.value, seed=config.seed, samples=config.samples, rows=rows, overall=passed)


def _first_failure(report: BaseModel) -> str:
    for attr in ("per_order", "rows", "families", "primes"):
        for item in getattr(report, attr, []) or []:
            ok = getattr(item, "passed", None)
            if ok is False:
                return item.model_dump_json(by_alias=True)
    return "overall check failed"
