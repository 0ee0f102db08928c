"""Teleportation of a two-mode squeezed state at the covariance-matrix level.

Pipeline::

    TA1 (1,3) + TA2 (2,4) --B1--> shared (5,6,15,16)
    shared + source (7,8) --U K B2--> output (13,14)

Only second moments are propagated; Bob's displacement acts on first moments
alone and therefore does not appear.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from typing import Sequence

import mpmath
import numpy as np

from . import metrics
from .gaussian import (
    AmplifierSpec,
    SourceSpec,
    direct_sum,
    permute_modes,
    source_state,
    two_mode_squeezed,
)
from .transforms import (
    B2_INPUT_MODES,
    SIX_MODES,
    Convention,
    apply,
    beam_splitter_B1,
    composite,
)

# Extra decimal digits used by the ideal-limit check.
PRECISE_DPS = 60


@dataclass(frozen=True)
class ProtocolConfig:
    source: SourceSpec
    amplifier: AmplifierSpec
    convention: Convention = Convention.AS_PRINTED

    def __post_init__(self):
        object.__setattr__(self, "convention", Convention(self.convention))

    @classmethod
    def from_params(cls, q, eta, r, phi, convention=Convention.AS_PRINTED):
        return cls(SourceSpec(q, eta), AmplifierSpec(r, phi), Convention(convention))


@dataclass(frozen=True)
class TeleportReport:
    """Everything computed for one protocol run.

    ``nu_closed_form`` and ``fidelity`` are NaN where their formulas are
    undefined (negative radicands, which occur for unphysical as-printed
    outputs).
    """

    config: ProtocolConfig
    sigma_in: np.ndarray
    sigma_shared: np.ndarray
    sigma_out: np.ndarray
    nu_pipeline: float
    nu_closed_form: float
    log_negativity: float
    fidelity: float
    residuals: dict = field(default_factory=dict)

    @property
    def convention(self) -> Convention:
        return self.config.convention


def shared_four_mode(amplifier: AmplifierSpec, *, precise: bool = False) -> np.ndarray:
    """State shared by Alice and Bob, in mode order ``(5, 6, 15, 16)``.

    The direct sum of the two amplifier outputs is already in the
    ``(1, 3, 2, 4)`` slot order that B1 acts on.
    """
    tms = two_mode_squeezed(amplifier, precise=precise)
    return apply(beam_splitter_B1(), direct_sum(tms, tms))


def _order(modes: Sequence[int]) -> list[int]:
    return [SIX_MODES.index(m) for m in modes]


def output_state(
    config: ProtocolConfig,
    *,
    b2_modes: Sequence[int] = B2_INPUT_MODES,
    precise: bool = False,
) -> np.ndarray:
    """Covariance matrix of the teleported modes ``(13, 14)`` from the pipeline.

    Args:
        config: protocol parameters.
        b2_modes: mode labels fed into the six B2 slots, in slot order.
        precise: propagate mpmath numbers instead of floats.
    """
    shared = shared_four_mode(config.amplifier, precise=precise)
    return _transfer(config, shared, source_state(config.source, precise=precise), b2_modes)


def _transfer(config, shared, sigma_in, b2_modes=B2_INPUT_MODES) -> np.ndarray:
    sigma6 = permute_modes(direct_sum(shared, sigma_in), _order(b2_modes))
    return apply(composite(config.convention), sigma6)


def _gain(convention: Convention) -> float:
    return 3.0 if convention is Convention.GAIN_CORRECTED else 1.0


def output_closed_form(config: ProtocolConfig) -> np.ndarray:
    """Output covariance matrix from its closed form.

    As printed every diagonal entry carries ``(2c + 2ks + x -+ uy) / 3`` and
    the couplings are ``-+vy / 3``; the gain-corrected form drops the 1/3.
    """
    a, s = config.amplifier, config.source
    noise = 2 * a.c + 2 * a.k * a.s
    x, y, u, v = s.x, s.y, s.u, s.v
    out = np.array(
        [
            [noise + x - u * y, 0.0, -v * y, 0.0],
            [0.0, noise + x + u * y, 0.0, v * y],
            [-v * y, 0.0, noise + x + u * y, 0.0],
            [0.0, v * y, 0.0, noise + x - u * y],
        ]
    )
    return out / 3.0 * _gain(config.convention)


def reflected_source(source: SourceSpec, *, precise: bool = False) -> np.ndarray:
    """Source covariance matrix with both cross couplings sign-flipped."""
    return llubo_equivalent(source_state(source, precise=precise))


def noise_level(amplifier: AmplifierSpec) -> float:
    """Additive noise ``2 (c + k s)`` of the gain-corrected output.

    Written as ``(1 + k) e^{2r} + (1 - k) e^{-2r}`` so that ``k = -1`` gives
    ``2 e^{-2r}`` without cancellation.
    """
    k, r2 = amplifier.k, 2 * amplifier.r
    return (1 + k) * math.exp(r2) + (1 - k) * math.exp(-r2)


def decompose_output(sigma_out: np.ndarray, config: ProtocolConfig) -> tuple[np.ndarray, float]:
    """Split a gain-corrected output into ``sigma_prime + noise * I``.

    Returns ``(sigma_prime, noise)`` where ``sigma_prime`` is the source state
    with flipped couplings and ``noise = 2 (c + k s)``.

    Raises:
        ValueError: for the as-printed convention, where no such split exists,
            or if the reconstruction misses ``sigma_out`` by more than 1e-12
            relative to the largest intermediate magnitude (``2c`` or the
            largest output entry), which bounds float rounding in the pipeline.
    """
    if config.convention is not Convention.GAIN_CORRECTED:
        raise ValueError("the noise decomposition holds only for the gain-corrected convention")
    noise = noise_level(config.amplifier)
    sigma_prime = reflected_source(config.source)
    sigma_out = np.asarray(sigma_out, dtype=float)
    err = np.max(np.abs(sigma_prime + noise * np.eye(4) - sigma_out))
    scale = max(1.0, float(np.max(np.abs(sigma_out))), 2 * config.amplifier.c)
    if err > 1e-12 * scale:
        raise ValueError(f"output does not decompose for this config (residual {err:.3e})")
    return sigma_prime, noise


def llubo_equivalent(sigma: np.ndarray) -> np.ndarray:
    """Rotate the first mode by pi: congruence with ``(-I2) + I2``.

    This flips the sign of both inter-mode couplings and is its own inverse.
    """
    sigma = np.asarray(sigma)
    flip = np.array([-1, -1, 1, 1])
    if sigma.dtype == object:
        flip = flip.astype(object)
    return sigma * np.outer(flip, flip)


def tan_limit_check(source: SourceSpec) -> float:
    """Max-norm gap between the ``r = 0`` gain-corrected output and ``sigma' + 2I``."""
    config = ProtocolConfig(source, AmplifierSpec(0.0), Convention.GAIN_CORRECTED)
    out = output_state(config)
    expected = llubo_equivalent(source_state(source)) + 2 * np.eye(4)
    return float(np.max(np.abs(out - expected)))


IDEAL_PHI = -math.pi / 4  # k = sin(2 phi) = -1


def ideal_limit_check(source: SourceSpec, r: float) -> float:
    """Max-norm gap between the ``k = -1`` gain-corrected output and ``sigma'``.

    Analytically this equals ``2 exp(-2r)``. The output entries grow like
    ``exp(2r)``, so the pipeline is evaluated in mpmath at
    :data:`PRECISE_DPS` digits to keep the small difference accurate.
    """
    config = ProtocolConfig(source, AmplifierSpec(r, IDEAL_PHI), Convention.GAIN_CORRECTED)
    with mpmath.workdps(PRECISE_DPS):
        out = output_state(config, precise=True)
        diff = out - reflected_source(source, precise=True)
        return float(max(abs(d) for d in diff.flat))


def teleport(config: ProtocolConfig, mode: int = 1) -> TeleportReport:
    """Run the protocol and evaluate entanglement and fidelity of the output.

    ``residuals`` holds the max-norm gap to the closed form, and for the
    gain-corrected convention the gap of the noise decomposition.
    """
    sigma_in = source_state(config.source)
    shared = shared_four_mode(config.amplifier)
    sigma_out = _transfer(config, shared, sigma_in)

    nu = metrics.smallest_pt_eigenvalue(sigma_out, mode)
    try:
        nu_cf = metrics.nu_closed_form(config.source.q, config.amplifier.r)
    except ValueError:
        nu_cf = math.nan

    residuals = {"closed_form": float(np.max(np.abs(sigma_out - output_closed_form(config))))}
    if config.convention is Convention.GAIN_CORRECTED:
        rebuilt = reflected_source(config.source) + noise_level(config.amplifier) * np.eye(4)
        residuals["decomposition"] = float(np.max(np.abs(sigma_out - rebuilt)))

    try:
        fid = metrics.fidelity(sigma_in, sigma_out)
    except ValueError:
        fid = math.nan

    return TeleportReport(
        config=config,
        sigma_in=sigma_in,
        sigma_shared=shared,
        sigma_out=sigma_out,
        nu_pipeline=nu,
        nu_closed_form=nu_cf,
        log_negativity=metrics.log_negativity_from_nu(nu),
        fidelity=fid,
        residuals=residuals,
    )
