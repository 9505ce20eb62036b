# %% [markdown]
# # Centre-of-mass density
# Traveling-wave states are flat; the Hill ground-band state is modulated
# with period pi.  The full two-mode eigenstates are flat at every angle.

# %%
import numpy as np

from freejc import adiabatic as ad
from freejc.density import floquet_density, periodicity, reduced_density, state_density, uniformity
from freejc.hilbert import make_space
from freejc.operators import SystemParams
from freejc.stationary import solve_joint

eta, a0, a1 = ad.traveling_state(0.5, 0.3)
print("traveling, uniformity:", uniformity(reduced_density(eta, [a0, a1])))

d = floquet_density(ad.ground_band_state(0.5, 0.0))
print("Hill ground band, uniformity:", uniformity(d), " periodicity(pi):", periodicity(d, np.pi))

s = solve_joint(make_space(1, 0.0, 12), SystemParams(zeta=5.0, Delta=50.0, alpha=np.pi / 4), 0.0)[0]
print("full solver at alpha=pi/4, uniformity:", uniformity(state_density(s)))
