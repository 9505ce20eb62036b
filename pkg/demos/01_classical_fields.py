# %% [markdown]
# # Classical two-mode field
# Energy and momentum of a monochromatic field written in a rotated pair of
# modes.  Energy does not care about the basis angle; momentum is diagonal
# only for traveling waves.

# %%
import numpy as np

from freejc import classical_field as cf

f = (1.0 + 0.5j, 0.7 - 0.2j)
for alpha in (0.0, 0.3, np.pi / 4):
    prof = cf.assemble_fields(f, alpha)
    print(f"alpha={alpha:.4f}  energy={cf.energy_integrated(prof):.6f}  "
          f"momentum={cf.momentum_integrated(prof):+.6f}  closed={cf.momentum_closed(f, alpha):+.6f}")

# %% [markdown]
# The same physical field expressed in the standing-wave basis.

# %%
g = cf.basis_change(f, 0.0, np.pi / 4)
print("standing-wave amplitudes:", g)
print("momentum unchanged:", cf.momentum_closed(g, np.pi / 4), cf.momentum_closed(f, 0.0))
