from blowup_futaki.core.models import JordanData
from blowup_futaki.localization.futaki import verify_main_identity

data = JordanData.from_pairs([(1, 2), ("-1/2", 1)])

# Fut_p - sum_j Fut_{q_j} should start with n(n-1) theta eps^(n-1)
report = verify_main_identity(data)

print(report.defect_text)
for check in report.per_order:
    print(f"eps^{check.power}: {check.coefficient} (expected {check.expected})", "ok" if check.passed else "FAIL")
