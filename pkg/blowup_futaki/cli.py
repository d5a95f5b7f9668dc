"""Command-line front end: one subcommand per check, one JSON document per run.

Exit codes: 0 success, 1 a check failed, 2 invalid input or configuration.
"""

import argparse
import json
import sys
from pathlib import Path
from typing import Any, Dict, List, Optional, Sequence

from pydantic import ValidationError

from .core.models import Command, PhiSelector, PsiFamily, RunConfig
from .core.mylog import get_logger
from .core.mypath_and_config import SETTINGS
from .core.workflow import SampledRunWorkflow
from .core.workflow_ui import JsonReportUI
from .localization.bmatrix import CertificateError

logger = get_logger()


class ConfigError(ValueError):
    pass


# ---------------------------------------------------------------------------------------
# Parsing
# ---------------------------------------------------------------------------------------


def parse_blocks(text: str) -> List[Dict[str, Any]]:
    """ "1:2,3/2:1,auto:1" -> blocks; "auto" leaves the eigenvalue to the sampler."""
    blocks = []
    for item in text.split(","):
        item = item.strip()
        if not item:
            continue
        eigenvalue, sep, size = item.rpartition(":")
        if not sep:
            raise ConfigError(f"block {item!r} is not of the form eigenvalue:size")
        try:
            size_value = int(size)
        except ValueError:
            raise ConfigError(f"block size {size!r} is not an integer") from None
        blocks.append({"eigenvalue": None if eigenvalue == "auto" else eigenvalue, "size": size_value})
    return blocks


def parse_sweep(text: str) -> List[int]:
    try:
        n_max, m_max = (int(x) for x in text.split(","))
    except ValueError:
        raise ConfigError(f"--sweep expects N,M, got {text!r}") from None
    return [n_max, m_max]


def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--config", type=Path, default=None, help="JSON run configuration")
    common.add_argument("--blocks", default=None, help='inline Jordan data, e.g. "1:2,3:1" or "auto:2"')
    common.add_argument("--seed", type=int, default=None)
    common.add_argument("--samples", type=int, default=None)
    common.add_argument("--truncation", type=int, default=None, help="eps truncation order")
    common.add_argument("--output", type=Path, default=None, help="write the report here instead of stdout")
    common.add_argument("--pretty", action="store_true", default=None)
    common.add_argument("--sweep", default=None, help="N,M: every block structure with n <= N and m <= M")

    parser = argparse.ArgumentParser(prog="blowup-futaki", description="Exact localization checks for blowups.")
    sub = parser.add_subparsers(dest="command", required=True)

    sub.add_parser("verify", parents=[common], help="local Futaki identity at the blown-up point")

    p = sub.add_parser("residue", parents=[common], help="reduced residue at one exceptional zero")
    p.add_argument("--focus", type=int, default=None, help="1-based block index")
    p.add_argument("--phi", choices=[s.value for s in PhiSelector], default=None)
    p.add_argument("--phi-power", type=int, default=None)
    p.add_argument("--compare", action="store_true", default=None, help="run the certificate comparator")

    sub.add_parser("gk", parents=[common], help="G_k table, brute force against closed form")

    p = sub.add_parser("psi", parents=[common], help="residues of the psi_j differentials")
    p.add_argument("--family", choices=[f.value for f in PsiFamily], default=None)
    p.add_argument("--k", type=int, default=None)

    p = sub.add_parser("detb", parents=[common], help="certificate matrix determinant")
    p.add_argument("--focus", type=int, default=None)

    p = sub.add_parser("comb", parents=[common], help="alternating binomial moments")
    p.add_argument("--l", type=int, default=None)

    p = sub.add_parser("perturb", parents=[common], help="lift of higher order perturbations")
    p.add_argument("--focus", type=int, default=None)

    p = sub.add_parser("poincare", parents=[common], help="Poincare domain and resonances")
    p.add_argument("--eigenvalues", default=None, help='comma separated, e.g. "1,2,-1/3"')
    p.add_argument("--m-cap", type=int, default=None)
    return parser


def build_config(args: argparse.Namespace) -> RunConfig:
    values: Dict[str, Any] = {"seed": SETTINGS.default_seed, "samples": SETTINGS.default_samples}
    if args.config is not None:
        try:
            values.update(json.loads(args.config.read_text(encoding="utf-8")))
        except FileNotFoundError:
            raise ConfigError(f"config file {args.config} does not exist") from None
        except json.JSONDecodeError as e:
            raise ConfigError(f"config file {args.config} is not valid JSON: {e}") from None
    values["command"] = args.command

    flags = {
        "blocks": parse_blocks(args.blocks) if args.blocks else None,
        "seed": args.seed,
        "samples": args.samples,
        "truncation_order": args.truncation,
        "output": args.output,
        "pretty": args.pretty,
        "sweep": parse_sweep(args.sweep) if args.sweep else None,
        "focus": getattr(args, "focus", None),
        "phi": getattr(args, "phi", None),
        "phi_power": getattr(args, "phi_power", None),
        "compare": getattr(args, "compare", None),
        "family": getattr(args, "family", None),
        "k": getattr(args, "k", None),
        "l": getattr(args, "l", None),
        "m_cap": getattr(args, "m_cap", None),
        "eigenvalues": args.eigenvalues.split(",") if getattr(args, "eigenvalues", None) else None,
    }
    values.update({key: value for key, value in flags.items() if value is not None})
    try:
        return RunConfig.model_validate(values)
    except ValidationError as e:
        raise ConfigError(_validation_message(e)) from None


def _validation_message(e: ValidationError) -> str:
    parts = []
    for err in e.errors():
        where = ".".join(str(x) for x in err["loc"])
        parts.append(f"{where}: {err['msg']}" if where else err["msg"])
    return "; ".join(parts)


# ---------------------------------------------------------------------------------------
# Entry points
# ---------------------------------------------------------------------------------------


def run(config: RunConfig) -> int:
    ui = JsonReportUI(config.output, pretty=config.pretty)
    try:
        report = SampledRunWorkflow(config, ui=ui).run()
    except CertificateError as e:
        logger.warning(f"{config.command.value}: certificate failure: {e}")
        ui.show_error(e)
        return 1
    except (ValueError, KeyError, IndexError) as e:
        # InvalidJordanDataError, ResidueInputError, RationalParseError, SymbolError and pole errors land here
        logger.warning(f"{config.command.value}: invalid input: {e}")
        ui.show_error(e)
        return 2
    return 0 if getattr(report, "overall", True) else 1


def main(argv: Optional[Sequence[str]] = None) -> int:
    args = build_parser().parse_args(argv)
    try:
        config = build_config(args)
    except ConfigError as e:
        logger.warning(f"{args.command}: bad configuration: {e}")
        JsonReportUI(args.output, pretty=bool(args.pretty)).show_error(e)
        return 2
    return run(config)


if __name__ == "__main__":
    sys.exit(main())
