"""
Damping renormalized by noncommutativity
========================================

The noncommutative parameter theta shifts the Bateman damping constant to
``gamma_R = gamma + theta w^2/hbar - theta gamma^2/(4 hbar)``.  Above
critical damping a single value theta* cancels it exactly.
"""

import numpy as np

from ncbateman import SystemParams, duality_report, gamma_renormalized, theta_star

# A strongly overdamped oscillator: gamma^2/4 = 4 > omega^2 = 1.
p = SystemParams(gamma=4.0, omega=1.0)
ts = theta_star(p)
print(f"theta* = {ts:.6f}")

# gamma_R is affine in theta, so it falls linearly to zero at theta*.
for th in np.linspace(0.0, ts, 5):
    rep = duality_report(p.with_(theta=th))
    print(f"theta = {th:.4f}  gamma_R = {rep.gamma_R:+.6f}  regime = {rep.regime.value}")

# Without damping at all, theta alone switches on a damping gamma_R = theta w^2/hbar.
print(duality_report(SystemParams(gamma=0.0, omega=1.0, theta=0.1)).note)

try:
    import matplotlib.pyplot as plt
except ImportError:
    plt = None

if plt is not None:
    thetas = np.linspace(0.0, 2.0, 200)
    fig, ax = plt.subplots()
    for g in (0.5, 2.5, 4.0):
        ax.plot(thetas, [gamma_renormalized(SystemParams(g, 1.0, theta=t)) for t in thetas], label=f"gamma={g}")
    ax.axhline(0.0, color="k", lw=0.5)
    ax.set_xlabel("theta")
    ax.set_ylabel("gamma_R")
    ax.legend()
    fig.savefig("duality_map.png", dpi=120)
