"""Parameter sweeps over the two squeezing parameters, written as CSV."""

from __future__ import annotations

import io
import math
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass
from typing import Iterable

import numpy as np

from .metrics import log_negativity_from_nu
from .protocol import ProtocolConfig, teleport
from .transforms import Convention

CSV_HEADER = "q,r,nu_minus,log_negativity,fidelity,convention"
METRICS = ("en", "fidelity", "both")
NU_SOURCES = ("pipeline", "closed-form")


@dataclass(frozen=True)
class SweepGrid:
    """Rectangular (q, r) grid. Default phases give ``u = 0`` and ``h = k = 1/sqrt 2``."""

    q_min: float = 0.0
    q_max: float = 2.0
    q_steps: int = 41
    r_min: float = 0.0
    r_max: float = 2.0
    r_steps: int = 41
    eta: float = math.pi / 4
    phi: float = math.pi / 8
    convention: Convention = Convention.AS_PRINTED

    def __post_init__(self):
        object.__setattr__(self, "convention", Convention(self.convention))
        for name in ("q", "r"):
            lo, hi, steps = getattr(self, f"{name}_min"), getattr(self, f"{name}_max"), getattr(self, f"{name}_steps")
            if not all(math.isfinite(v) for v in (lo, hi)):
                raise ValueError(f"{name} range must be finite")
            if lo > hi:
                raise ValueError(f"{name}_min > {name}_max")
            if lo < 0:
                raise ValueError(f"{name} must be >= 0")
            if int(steps) != steps or steps < 1:
                raise ValueError(f"{name}_steps must be a positive integer")
            if steps == 1 and lo != hi:
                raise ValueError(f"{name}_steps = 1 needs {name}_min == {name}_max")

    @property
    def qs(self) -> np.ndarray:
        return np.linspace(self.q_min, self.q_max, self.q_steps)

    @property
    def rs(self) -> np.ndarray:
        return np.linspace(self.r_min, self.r_max, self.r_steps)


@dataclass(frozen=True)
class SweepRow:
    q: float
    r: float
    nu_minus: float
    log_negativity: float
    fidelity: float
    convention: Convention


def _point(grid: SweepGrid, q: float, r: float, nu_source: str) -> SweepRow:
    report = teleport(ProtocolConfig.from_params(q, grid.eta, r, grid.phi, grid.convention))
    if nu_source == "closed-form":
        nu = report.nu_closed_form
        en = log_negativity_from_nu(nu) if math.isfinite(nu) else math.nan
    else:
        nu, en = report.nu_pipeline, report.log_negativity
    return SweepRow(float(q), float(r), nu, en, report.fidelity, grid.convention)


def sweep(grid: SweepGrid, nu_source: str = "pipeline", jobs: int = 1) -> list[SweepRow]:
    """Evaluate every grid point; rows come back q-major, r-minor regardless of ``jobs``."""
    if nu_source not in NU_SOURCES:
        raise ValueError(f"nu_source must be one of {NU_SOURCES}")
    points = [(q, r) for q in grid.qs for r in grid.rs]
    if jobs <= 1:
        return [_point(grid, q, r, nu_source) for q, r in points]
    with ThreadPoolExecutor(max_workers=jobs) as pool:
        return list(pool.map(lambda p: _point(grid, p[0], p[1], nu_source), points))


def _fmt(value: float) -> str:
    return format(value, ".17g")


def to_csv(rows: Iterable[SweepRow], metric: str = "both") -> str:
    """Render rows as CSV text (LF endings). Columns not selected by ``metric`` are left empty."""
    if metric not in METRICS:
        raise ValueError(f"metric must be one of {METRICS}")
    buf = io.StringIO()
    buf.write(CSV_HEADER + "\n")
    for row in rows:
        en = _fmt(row.log_negativity) if metric in ("en", "both") else ""
        nu = _fmt(row.nu_minus) if metric in ("en", "both") else ""
        fid = _fmt(row.fidelity) if metric in ("fidelity", "both") else ""
        buf.write(",".join((_fmt(row.q), _fmt(row.r), nu, en, fid, row.convention.value)) + "\n")
    return buf.getvalue()
