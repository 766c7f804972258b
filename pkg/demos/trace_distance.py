"""
Non-contractive trace distance
==============================

Under normalized non-Hermitian evolution the trace distance between two
states can grow, which no trace-preserving quantum channel allows. The
Hermitian limit a = 0 is the control.
"""

import math

from eptool import AntiPTQubit, PTQubit, PTQudit, TimeGrid, contractivity_audit, random_pair_scan
from eptool.states import td_pair

grid = TimeGrid(0.0, 10.0, 1001)

cases = [
    (PTQubit(1.0, 0.2), math.pi / 3, None),
    (AntiPTQubit(1.0, 0.5), 3.1, None),
    (PTQudit(0.9, 1.0), 2.1, 1.1),
    (PTQubit(1.0, 0.0), math.pi / 3, None),
]
for model, phi, theta in cases:
    report = contractivity_audit(model, td_pair(model.family, phi, theta), grid)
    first = report.violation_intervals[0] if report.violation_intervals else None
    print(f"{model!r:44s} violating={report.violating!s:5s} intervals={len(report.violation_intervals):2d} "
          f"first={first} max rate={report.max_increase_rate:.3f}")

# %%
# Random pure pairs: most of them see the distance grow at some point
scan = random_pair_scan(PTQubit(1.0, 0.5), 50, TimeGrid(0.0, 10.0, 501), seed=2024)
print(f"random pairs violating: {scan.violating_fraction:.0%}")
