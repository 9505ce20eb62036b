# %% [markdown]
# # Traveling-wave spectrum
# At alpha = 0 each Fock component is one plane wave.  The full solver is
# compared with the light-shift branches at large detuning.

# %%
import numpy as np

from freejc import adiabatic as ad
from freejc.hilbert import make_space
from freejc.operators import SystemParams
from freejc.stationary import solve_joint

params = SystemParams(zeta=1.0, Delta=100.0)
xi = params.zeta ** 2 / params.Delta
for p in np.linspace(0, 1.5, 7):
    states = solve_joint(make_space(1, p - round(p), 12), params, p)
    full = sorted(s.eps_rel for s in states if s.lower_weight() > 0.5)
    lo, hi = ad.spectrum_traveling(xi, p)
    print(f"p={p:.2f}  full {full[0]:+.5f} {full[1]:+.5f}   light-shift {lo:+.5f} {hi:+.5f}")
