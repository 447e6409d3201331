"""Outage probability against SIR for the opportunistic relay and for a
direct link, closed form next to Monte Carlo.

Run: python demos/outage_vs_sir.py
"""

import numpy as np

from onclab import ScenarioConfig, McConfig, sweep

K = 7
TRIALS = 200_000

scenario = ScenarioConfig(K, 0.5, 10.0, trials=TRIALS)
grid = [(float(s), r) for r in (0.5, 1.0) for s in range(0, 35, 5)]
rows = sweep(grid, McConfig(TRIALS, scenario.seed, workers=4), scenario)

# %% table
print(f"K={K}, {TRIALS} trials per point")
print(f"{'R':>4} {'SIR':>4} {'scheme':>8} {'closed form':>12} {'MC':>10} {'diff/se':>8}")
for row in rows:
    z = (row.p_mc - row.p_analytic) / max(row.stderr, 1e-12)
    print(f"{row.rate:4.1f} {row.sir_db:4.0f} {row.scheme.value:>8} "
          f"{row.p_analytic:12.5g} {row.p_mc:10.5g} {z:8.2f}")

# %% crossover
# At low SIR the relay costs a third of the slots for little gain, so the
# direct link wins; at high SIR the second path dominates.
for rate in (0.5, 1.0):
    onc = np.array([r.p_analytic for r in rows if r.rate == rate and r.scheme.value == "onc"])
    direct = np.array([r.p_analytic for r in rows if r.rate == rate and r.scheme.value == "noncoop"])
    better = ["relay" if a < b else "direct" for a, b in zip(onc, direct)]
    print(f"R={rate}: better scheme per SIR step ->", " ".join(better))

# %% plot, if matplotlib is around
try:
    import matplotlib.pyplot as plt
except ImportError:
    plt = None
if plt is not None:
    fig, ax = plt.subplots()
    for rate, style in ((0.5, "-"), (1.0, "--")):
        for scheme in ("onc", "noncoop"):
            pts = [r for r in rows if r.rate == rate and r.scheme.value == scheme]
            sir = [r.sir_db for r in pts]
            ax.semilogy(sir, [r.p_analytic for r in pts], style, label=f"{scheme} R={rate}")
            ax.semilogy(sir, [r.p_mc for r in pts], "o", ms=3, color=ax.lines[-1].get_color())
    ax.set_xlabel("SIR (dB)")
    ax.set_ylabel("outage probability at U1")
    ax.legend()
    fig.savefig("outage_vs_sir.png", dpi=120)
    print("wrote outage_vs_sir.png")
