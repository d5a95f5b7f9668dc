import logging
import os

from logging.handlers import RotatingFileHandler
from .mypath_and_config import LOG_PATH


date_format = "%m-%d %H:%M:%S"
formatter = logging.Formatter("%(asctime)s %(levelname)s: %(message)s", datefmt=date_format)
file_handler = RotatingFileHandler(LOG_PATH / "blowup_futaki.log", maxBytes=10_000_000, backupCount=5)
file_handler.setFormatter(formatter)
logger = logging.getLogger("blowup_futaki")
logger.addHandler(file_handler)
logger.setLevel(os.environ.get("BLOWUP_FUTAKI_LOG_LEVEL", "INFO").upper())
logger.info("\n\n\nnew session started\n\n\n")


def get_logger() -> logging.Logger:
    return logger


def log_outcome(kind: str, label: str, passed: bool, detail: str = "") -> None:
    """One line per checked configuration; failures go out at WARNING with what failed."""
    if passed:
        logger.info(f"{kind} [{label}]: pass")
    else:
        logger.warning(f"{kind} [{label}]: FAIL {detail}".rstrip())
