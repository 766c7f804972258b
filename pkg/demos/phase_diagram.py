"""
Locating exceptional points from the dynamics
=============================================

The classifier only looks at time series: a recurring HSS marks the phase
with a real spectrum. Bisection on that verdict recovers the exceptional
point of each family without using the spectrum.
"""

import math

from eptool import AntiPTQubit, GridPolicy, PTQubit, PTQudit, classify_oscillation, sample_series
from eptool.analysis import locate_ep

policy = GridPolicy()

print("verdicts on the default grids:")
for model in (PTQubit(1.0, 0.5), PTQubit(1.0, 1.3), AntiPTQubit(1.0, 0.5), AntiPTQubit(1.0, 1.3),
              PTQudit(2.2, 1.0), PTQudit(0.9, 1.0)):
    series = sample_series(model, "hss", policy.grid_for(model), phi=math.pi / 4)
    c = classify_oscillation(series)
    detail = f"period {c.period:.4f}" if c.oscillatory else c.trend
    print(f"  {model!r:48s} {detail}")

for family, fixed in (("pt_qubit", {"epsilon": 1.0}), ("anti_pt_qubit", {"eta": 1.0}), ("pt_qudit", {"J": 1.0})):
    report = locate_ep(family, fixed, (0.5, 1.5), tol=0.01)
    print(f"{family:14s} {report.parameter:8s} = {report.critical_value:.4f}  "
          f"bracket {report.bracket}  ({report.iterations} bisections)")
