"""State directory (logs, sweep reports) and the run defaults that can be tuned from the environment."""

import os
from pathlib import Path
from typing import List

from dotenv import load_dotenv
from platformdirs import PlatformDirs
from pydantic import BaseModel, Field

APP_NAME = "blowup_futaki"


def _dotenv_candidates() -> List[Path]:
    """Searched in order; the first existing file wins."""
    candidates = [Path.cwd() / ".env", Path.home() / ".env", Path("/secrets") / APP_NAME / ".env"]
    if explicit := os.environ.get("BLOWUP_FUTAKI_DOTENV_PATH"):
        candidates.insert(0, Path(explicit))
    return candidates


def _state_path() -> Path:
    """BLOWUP_FUTAKI_STATE if set (possibly via .env), else the platform user state dir.

    A .env inside the state dir is read last and never overrides earlier values.
    """
    dotenv = next((p for p in _dotenv_candidates() if p.is_file()), None)
    if dotenv is not None:
        load_dotenv(dotenv, override=False)

    if configured := os.environ.get("BLOWUP_FUTAKI_STATE"):
        root = Path(configured).expanduser().resolve()
    else:
        root = Path(PlatformDirs(appname=APP_NAME).user_state_dir)

    if (root / ".env").is_file():
        load_dotenv(root / ".env", override=False)
    return root


STATE_PATH = _state_path()
LOG_PATH = STATE_PATH / "logs"
REPORT_PATH = STATE_PATH / "reports"

for _p in (STATE_PATH, LOG_PATH, REPORT_PATH):
    _p.mkdir(parents=True, exist_ok=True)


class Settings(BaseModel):
    """Run defaults; every field can be overridden from the environment or a .env file."""

    sample_bound: int = Field(default=50, ge=1)
    default_seed: int = Field(default=0, ge=0)
    default_samples: int = Field(default=1, ge=1)
    max_brute_n: int = Field(default=4, ge=2)
    max_symbolic_det_n: int = Field(default=5, ge=2)

    @classmethod
    def from_env(cls) -> "Settings":
        env_names = {
            "sample_bound": "BLOWUP_FUTAKI_SAMPLE_BOUND",
            "default_seed": "BLOWUP_FUTAKI_DEFAULT_SEED",
            "default_samples": "BLOWUP_FUTAKI_DEFAULT_SAMPLES",
            "max_brute_n": "BLOWUP_FUTAKI_MAX_BRUTE_N",
            "max_symbolic_det_n": "BLOWUP_FUTAKI_MAX_SYMBOLIC_DET_N",
        }
        values = {field: os.environ[name] for field, name in env_names.items() if name in os.environ}
        return cls.model_validate(values)


SETTINGS = Settings.from_env()
