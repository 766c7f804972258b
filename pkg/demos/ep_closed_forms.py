"""
HSS on the exceptional point
============================

At the EP the propagator is I - iHt and the HSS has a closed form that
decays like t^-2, except on one phase where it stays at 1/2.
"""

import math

import numpy as np

from eptool import AntiPTQubit, PTQubit
from eptool.measures import hss, hss_ep_anti_closed, hss_ep_pt_closed

pt, anti = PTQubit(1.0, 1.0), AntiPTQubit(1.0, 1.0)
print("   t    HSS_PT(phi=0)  closed        HSS_anti(phi=0)  closed")
for t in (0.0, 1.0, 5.0, 10.0, 100.0):
    print(f"{t:6.1f}  {hss(pt, 2, 0.0, t):.6e}  {hss_ep_pt_closed(1.0, 0.0, t):.6e}  "
          f"{hss(anti, 2, 0.0, t):.6e}     {hss_ep_anti_closed(1.0, 0.0, t):.6e}")

# the constant branches: phi = pi/2 for PT, phi = 3 pi/2 for anti-PT
print("PT, phi=pi/2:   ", [round(hss(pt, 2, math.pi / 2, t), 12) for t in (1, 10, 100)])
print("anti, phi=3pi/2:", [round(hss(anti, 2, 3 * math.pi / 2, t), 12) for t in (1, 10, 100)])

# the t^-2 law only emerges asymptotically
for lo, hi in ((5, 10), (100, 1000)):
    t = np.geomspace(lo, hi, 40)
    for name, model in (("PT", pt), ("anti", anti)):
        slope = np.polyfit(np.log(t), np.log([hss(model, 2, 0.0, x) for x in t]), 1)[0]
        print(f"log-log slope {name:4s} t in [{lo}, {hi}]: {slope:.4f}")
