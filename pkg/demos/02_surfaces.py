"""Entanglement and fidelity over the (q, r) plane.

Writes ``surfaces.csv`` next to this script; if matplotlib is installed
(``pip install .[demos]``) it also saves ``surfaces.png``.
"""

# %%
from pathlib import Path

import numpy as np

from tmsteleport.sweep import SweepGrid, sweep, to_csv

here = Path(__file__).resolve().parent
grid = SweepGrid(q_steps=41, r_steps=41)
rows = sweep(grid, jobs=4)
(here / "surfaces.csv").write_text(to_csv(rows), encoding="utf-8")

en = np.array([row.log_negativity for row in rows]).reshape(grid.q_steps, grid.r_steps)
fid = np.array([row.fidelity for row in rows]).reshape(grid.q_steps, grid.r_steps)

# %% [markdown]
# Entanglement grows with the source squeezing q while the fidelity falls:
# the two figures of merit trade off against each other.

# %%
print("max E_N:", en.max(), "at (q, r) =", np.unravel_index(en.argmax(), en.shape))
print("max F on q = 0 edge:", fid[0].max())
print("E_N > 0 at", int((en > 0).sum()), "of", en.size, "grid points")

# %%
try:
    import matplotlib.pyplot as plt
except ImportError:
    plt = None

if plt is not None:
    fig, axes = plt.subplots(1, 2, figsize=(10, 4))
    extent = (grid.r_min, grid.r_max, grid.q_min, grid.q_max)
    for ax, data, title in zip(axes, (en, fid), ("E_N [bits]", "fidelity")):
        im = ax.imshow(data, origin="lower", extent=extent, aspect="auto")
        ax.set_xlabel("r")
        ax.set_ylabel("q")
        ax.set_title(title)
        fig.colorbar(im, ax=ax)
    fig.tight_layout()
    fig.savefig(here / "surfaces.png", dpi=120)
    print("wrote", here / "surfaces.png")
