"""
Hilbert-Schmidt speed and quantum Fisher information
====================================================

In the unbroken PT phase the HSS recurs with period pi / sqrt(1 - a^2) and
tracks the QFI step by step; in the broken phase both decay.
"""

import math

import numpy as np

from eptool import PTQubit, TimeGrid, classify_oscillation, sample_series
from eptool.analysis import analytic_period, hss_qfi_correspondence
from eptool.measures import hss as hss_value

phi = math.pi / 4
grid = TimeGrid(0.0, 20.0, 2001)

for a in (0.6, 1.4):
    model = PTQubit(1.0, a)
    hss = sample_series(model, "hss", grid, phi=phi)
    qfi = sample_series(model, "qfi", grid, phi=phi)
    verdict = classify_oscillation(hss)
    print(f"a={a}: HSS(0)={hss.values[0]:.3f}  HSS(20)={hss.values[-1]:.3e}  "
          f"QFI(20)={qfi.values[-1]:.3e}  {verdict.to_dict()['verdict']}")
    if verdict.oscillatory:
        print(f"    period {verdict.period:.6f}, predicted {analytic_period(model):.6f}")

# For pure states QFI = 4 HSS^2, so rises and falls coincide
rep = hss_qfi_correspondence(PTQubit(1.0, 0.4), phi, TimeGrid(0.0, 10.0, 1001))
print("sign agreement", rep.sign_agreement_fraction, "minima", rep.min_locations_hss, rep.min_locations_qfi)

# %%
# A few values of the oscillating curve over one period
model = PTQubit(1.0, 0.6)
T = analytic_period(model)
for t in np.linspace(0, T, 5):
    print(f"  t={t:6.3f}  HSS={hss_value(model, 2, phi, t):.6f}")
