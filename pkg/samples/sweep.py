# sweep.py
# Verify every block structure with n <= 4 and at most 3 blocks, two eigenvalue draws each,
# and write the JSON report next to the other run reports.

from blowup_futaki.core.models import Command, RunConfig
from blowup_futaki.core.mypath_and_config import REPORT_PATH
from blowup_futaki.core.workflow import SampledRunWorkflow

config = RunConfig(
    command=Command.VERIFY,
    sweep=(4, 3),
    samples=2,
    seed=2024,
    output=REPORT_PATH / "sweep_verify.json",
    pretty=True,
)
report = SampledRunWorkflow(config).run()

failed = [row for row in report.rows if not row.overall]
print(f"{len(report.rows)} runs, {len(failed)} failed; report at {config.output}")
for row in failed:
    print(row.blocks, row.failure)
