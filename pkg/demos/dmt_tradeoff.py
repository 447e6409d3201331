"""Diversity-multiplexing tradeoff: the straight-line closed forms and a
numerical slope read off the exact outage at growing SIR.

Run: python demos/dmt_tradeoff.py
"""

import numpy as np

from onclab.dmt import DmtScheme, dmt_closed_form, estimate_diversity, r_max

# %% closed forms, blank past each scheme's largest multiplexing gain
for r in np.linspace(0, 1, 7):
    vals = "  ".join(f"{s.value}={dmt_closed_form(s, r):.3f}" if r <= r_max(s) else f"{s.value}=  -  "
                     for s in DmtScheme)
    print(f"r={r:.3f}  {vals}")

# %% slope estimates
# The slope is only asymptotic. With K interferers the outage tail keeps
# a factor (1 + (2^(1.5 R) - 1) / lambda)^-K that is far from 1 until the
# SIR is astronomically large when r is close to 2/3, so the estimate
# creeps toward the closed form as the grid moves out.
grids = [(1e8, 1e9, 1e10), (1e12, 1e13, 1e14), (1e20, 1e21, 1e22), (1e40, 1e41, 1e42)]
for r in (0.0, 1 / 3, 0.6):
    est = [estimate_diversity(r, g, 7) for g in grids]
    print(f"r={r:.3f} closed form {dmt_closed_form(DmtScheme.ONC, r):.3f}; "
          "estimates " + ", ".join(f"{e:.4f}@1e{int(np.log10(g[0]))}" for e, g in zip(est, grids)))
