"""Limiting cases and the two places where the derivation needs care."""

# %%
import math

from tmsteleport import ProtocolConfig, SourceSpec, output_state, teleport
from tmsteleport.protocol import ideal_limit_check, tan_limit_check
from tmsteleport.transforms import B2_ALTERNATE_MODES, B2_INPUT_MODES
from tmsteleport.verification import resolve_b2_ordering

src = SourceSpec(0.5, math.pi / 4)

# %% [markdown]
# With coherent amplifiers (r = 0) the output is the source, with its
# couplings flipped, plus twice the vacuum noise.

# %%
print("r = 0 residual:", tan_limit_check(src))

# %% [markdown]
# With k = -1 the added noise is 2 exp(-2r) and vanishes as r grows. The
# check runs in extended precision, so the tiny residual is meaningful.

# %%
for r in (0, 2, 5, 10):
    print(f"r = {r:>2}: residual {ideal_limit_check(src, r):.6e}   2exp(-2r) = {2 * math.exp(-2 * r):.6e}")

# %% [markdown]
# Which input order of the second beam splitter is meant? Only one of the
# orders consistent with the textual description reproduces the closed-form
# output; another reproduces a variant where the noise enters X and P with
# opposite signs.

# %%
for order, kind in resolve_b2_ordering()["candidates"].items():
    print(f"({order}) -> {kind}")
print("used:", B2_INPUT_MODES, " alternate:", B2_ALTERNATE_MODES)

# %% [markdown]
# The closed-form nu_minus agrees with the pipeline only at r = 0. At
# (q = 2, r = 0.25) it predicts entanglement, the pipeline does not.

# %%
rep = teleport(ProtocolConfig.from_params(2.0, math.pi / 4, 0.25, math.pi / 8))
print("pipeline nu_minus   :", rep.nu_pipeline)
print("closed-form nu_minus:", rep.nu_closed_form)
alt = output_state(rep.config, b2_modes=B2_ALTERNATE_MODES)
print("alternate-order output diagonal:", alt.diagonal())

# %% [markdown]
# The alternate order is exactly the one the closed-form nu_minus belongs to.

# %%
from tmsteleport.metrics import smallest_pt_eigenvalue

print("alternate-order nu_minus:", smallest_pt_eigenvalue(alt))
