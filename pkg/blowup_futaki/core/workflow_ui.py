import json
import sys
from pathlib import Path
from typing import Optional, Protocol

from pydantic import BaseModel

from .models import ErrorDetail, ErrorReport


class ReportUI(Protocol):
    def show_report(self, report: BaseModel): ...
    def show_error(self, error: BaseException): ...


def render(report: BaseModel, pretty: bool = False) -> str:
    """One JSON document; field order follows the model, so equal reports give equal bytes."""
    payload = report.model_dump(mode="json", by_alias=True)
    return json.dumps(payload, indent=2 if pretty else None, ensure_ascii=False) + "\n"


class JsonReportUI:
    def __init__(self, output: Optional[Path] = None, *, pretty: bool = False):
        self.output = output
        self.pretty = pretty

    def _write(self, text: str):
        if self.output is None:
            sys.stdout.write(text)
            sys.stdout.flush()
            return
        self.output.parent.mkdir(parents=True, exist_ok=True)
        self.output.write_text(text, encoding="utf-8")

    def show_report(self, report: BaseModel):
        self._write(render(report, self.pretty))

    def show_error(self, error: BaseException):
        report = ErrorReport(error=ErrorDetail(type=type(error).__name__, message=str(error)))
        self._write(render(report, self.pretty))
