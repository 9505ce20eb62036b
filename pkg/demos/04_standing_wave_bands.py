# %% [markdown]
# # Standing-wave bands
# For alpha = pi/4 the ground amplitude obeys a Hill equation.  Bands come
# from the monodromy trace; the Mathieu approximation drops the xi^2 term.

# %%
from freejc import adiabatic as ad

xi = 0.5
bs = ad.band_structure(xi, 0.0, (-1.0, 5.0), 0.01)
m = ad.mathieu_bands(xi, 0.0, n_levels=2)
for label, e_f, e_m in zip(m.labels, bs.edges(), m.edges):
    print(f"{label}: Floquet {e_f:+.5f}  Mathieu {e_m:+.5f}")

# %% [markdown]
# The first gap narrows as total momentum grows.

# %%
for p in (0.0, 0.5, 1.0, 1.5, 1.8):
    g = ad.band_structure(xi, p, (-1.0, 2.5), 0.01).gaps[0]
    print(f"p={p:.1f}  gap [{g.lower:+.4f}, {g.upper:+.4f}]  width {g.width:.4f}")
