# degenerate_residue.py
# Residue at a degenerate zero two ways: the reduced u_2-derivative formula and the
# certificate matrix B with u^alpha = B X~, under both derivative-order conventions.

from blowup_futaki.core.models import JordanData
from blowup_futaki.localization.bmatrix import detb_report
from blowup_futaki.localization.residues import compare_order_conventions

data = JordanData.single(1, 3)

print(detb_report(data).model_dump_json(indent=2))

comparator = compare_order_conventions(data)
for row in comparator.conventions:
    print(row.name, row.orders, row.matches)
print(comparator.finding)
