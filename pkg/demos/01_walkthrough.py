"""Walk through one teleportation run, stage by stage.

Run with ``python demos/01_walkthrough.py``.
"""

# %%
import math

import numpy as np

from tmsteleport import (
    AmplifierSpec,
    Convention,
    ProtocolConfig,
    SourceSpec,
    composite,
    shared_four_mode,
    source_state,
    teleport,
)
from tmsteleport.metrics import partial_transpose, symplectic_eigenvalues

np.set_printoptions(precision=4, suppress=True, linewidth=110)

# %% [markdown]
# The state to teleport is a two-mode squeezed state on modes (7, 8).
# With eta = pi/4 only the cross couplings are nonzero.

# %%
src = SourceSpec(q=0.5, eta=math.pi / 4)
sigma_in = source_state(src)
print("sigma_in\n", sigma_in)
print("PT spectrum:", symplectic_eigenvalues(partial_transpose(sigma_in)))
print("exp(-2q)   :", math.exp(-2 * src.q))

# %% [markdown]
# Two teleportation amplifiers are mixed on a beam splitter; the four modes
# (5, 6, 15, 16) are shared between the two parties. The state stays pure.

# %%
amp = AmplifierSpec(r=0.5, phi=math.pi / 8)
shared = shared_four_mode(amp)
print("shared symplectic spectrum:", symplectic_eigenvalues(shared))

# %% [markdown]
# The measurement-and-reconstruction map. Scaled by sqrt 3 every entry is
# -1, 0 or 1.

# %%
print(composite(Convention.GAIN_CORRECTED).matrix.astype(int))

# %%
for conv in Convention:
    rep = teleport(ProtocolConfig(src, amp, conv))
    print(f"\n[{conv.value}]")
    print(rep.sigma_out)
    print(f"nu_minus = {rep.nu_pipeline:.6f}  E_N = {rep.log_negativity:.6f} bits  F = {rep.fidelity:.6f}")
