"""Covariance matrices of Gaussian states.

Conventions used throughout the package:

* vacuum variance is 1, so the vacuum covariance matrix is the identity;
* quadratures are interleaved per mode, ``(X1, P1, X2, P2, ...)``;
* first moments are always zero and never tracked.

Covariance matrices are plain 2-D :class:`numpy.ndarray` objects. Most
constructors also accept ``precise=True`` and then return an object array of
:mod:`mpmath` numbers, which lets callers evaluate large-squeezing limits
without float64 cancellation.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Sequence

import mpmath
import numpy as np

SYMMETRY_TOL = 1e-12
PHYSICALITY_TOL = 1e-9


def _finite(value: float, name: str) -> float:
    value = float(value)
    if not math.isfinite(value):
        raise ValueError(f"{name} must be finite, got {value}")
    return value


@dataclass(frozen=True)
class AmplifierSpec:
    """Squeezing ``r`` and phase ``phi`` of a teleportation amplifier.

    The derived quantities are ``c = cosh 2r``, ``s = sinh 2r``,
    ``k = sin 2phi`` and ``h = cos 2phi``.
    """

    r: float
    phi: float = 0.0

    def __post_init__(self):
        object.__setattr__(self, "r", _finite(self.r, "r"))
        object.__setattr__(self, "phi", _finite(self.phi, "phi"))
        if self.r < 0:
            raise ValueError(f"squeezing r must be >= 0, got {self.r}")

    @property
    def c(self) -> float:
        return math.cosh(2 * self.r)

    @property
    def s(self) -> float:
        return math.sinh(2 * self.r)

    @property
    def k(self) -> float:
        return math.sin(2 * self.phi)

    @property
    def h(self) -> float:
        return math.cos(2 * self.phi)


@dataclass(frozen=True)
class SourceSpec:
    """Squeezing ``q`` and phase ``eta`` of the source amplifier.

    Derived: ``x = cosh 2q``, ``y = sinh 2q``, ``u = cos 2eta``, ``v = sin 2eta``.
    """

    q: float
    eta: float = 0.0

    def __post_init__(self):
        object.__setattr__(self, "q", _finite(self.q, "q"))
        object.__setattr__(self, "eta", _finite(self.eta, "eta"))
        if self.q < 0:
            raise ValueError(f"squeezing q must be >= 0, got {self.q}")

    @property
    def x(self) -> float:
        return math.cosh(2 * self.q)

    @property
    def y(self) -> float:
        return math.sinh(2 * self.q)

    @property
    def u(self) -> float:
        return math.cos(2 * self.eta)

    @property
    def v(self) -> float:
        return math.sin(2 * self.eta)


def _check_modes(n_modes: int) -> int:
    if int(n_modes) != n_modes or n_modes < 1:
        raise ValueError(f"n_modes must be a positive integer, got {n_modes!r}")
    return int(n_modes)


def n_modes(sigma: np.ndarray) -> int:
    """Number of modes of a covariance matrix (validates the shape)."""
    sigma = np.asarray(sigma)
    if sigma.ndim != 2 or sigma.shape[0] != sigma.shape[1] or sigma.shape[0] % 2:
        raise ValueError(f"covariance matrix must be square of even size, got {sigma.shape}")
    if sigma.shape[0] == 0:
        raise ValueError("covariance matrix is empty")
    return sigma.shape[0] // 2


def asymmetry(sigma: np.ndarray) -> float:
    """Largest absolute entry of ``sigma - sigma.T``."""
    sigma = np.asarray(sigma)
    return float(np.max(np.abs(sigma - sigma.T)))


def check_symmetric(sigma: np.ndarray, tol: float = SYMMETRY_TOL) -> np.ndarray:
    n_modes(sigma)
    err = asymmetry(sigma)
    if err > tol:
        raise ValueError(f"covariance matrix is not symmetric (max |S - S^T| = {err:.3e})")
    return np.asarray(sigma)


def vacuum(n_modes: int) -> np.ndarray:
    """Vacuum covariance matrix on ``n_modes`` modes: the identity."""
    return np.eye(2 * _check_modes(n_modes))


def symplectic_form(n_modes: int) -> np.ndarray:
    """Block-diagonal symplectic form with one ``[[0, 1], [-1, 0]]`` block per mode."""
    return np.kron(np.eye(_check_modes(n_modes)), np.array([[0.0, 1.0], [-1.0, 0.0]]))


def _two_mode_cm(a1, a2, b1, b2, g1, g2) -> np.ndarray:
    # [[alpha, gamma], [gamma^T, beta]] with diagonal 2x2 blocks.
    dtype = object if any(isinstance(v, mpmath.mpf) for v in (a1, a2, b1, b2, g1, g2)) else float
    zero = mpmath.mpf(0) if dtype is object else 0.0
    out = np.array(
        [
            [a1, zero, g1, zero],
            [zero, a2, zero, g2],
            [g1, zero, b1, zero],
            [zero, g2, zero, b2],
        ],
        dtype=dtype,
    )
    # clear signed zeros such as -v*y at y = 0
    return out if dtype is object else out + 0.0


def two_mode_squeezed(spec: AmplifierSpec, *, precise: bool = False) -> np.ndarray:
    """Covariance matrix of the two modes leaving a teleportation amplifier.

    Blocks are ``alpha = diag(c - hs, c + hs)``, ``beta = diag(c + hs, c - hs)``
    and ``gamma = diag(ks, -ks)``.
    """
    if precise:
        r2, p2 = 2 * mpmath.mpf(spec.r), 2 * mpmath.mpf(spec.phi)
        c, s, k, h = mpmath.cosh(r2), mpmath.sinh(r2), mpmath.sin(p2), mpmath.cos(p2)
    else:
        c, s, k, h = spec.c, spec.s, spec.k, spec.h
    return _two_mode_cm(c - h * s, c + h * s, c + h * s, c - h * s, k * s, -k * s)


def source_state(spec: SourceSpec, *, precise: bool = False) -> np.ndarray:
    """Covariance matrix of the two-mode state to be teleported."""
    if precise:
        q2, e2 = 2 * mpmath.mpf(spec.q), 2 * mpmath.mpf(spec.eta)
        x, y, u, v = mpmath.cosh(q2), mpmath.sinh(q2), mpmath.cos(e2), mpmath.sin(e2)
    else:
        x, y, u, v = spec.x, spec.y, spec.u, spec.v
    return _two_mode_cm(x - u * y, x + u * y, x + u * y, x - u * y, v * y, -v * y)


def direct_sum(*sigmas: np.ndarray) -> np.ndarray:
    """Block-diagonal covariance matrix of independent subsystems."""
    if not sigmas:
        raise ValueError("direct_sum needs at least one covariance matrix")
    sizes = [2 * n_modes(s) for s in sigmas]
    dtype = object if any(np.asarray(s).dtype == object for s in sigmas) else float
    out = np.zeros((sum(sizes), sum(sizes)), dtype=dtype)
    if dtype is object:
        out[...] = mpmath.mpf(0)
    start = 0
    for sigma, size in zip(sigmas, sizes):
        out[start : start + size, start : start + size] = sigma
        start += size
    return out


def _quadrature_index(perm: Sequence[int], n: int) -> np.ndarray:
    perm = [int(p) for p in perm]
    if sorted(perm) != list(range(n)):
        raise ValueError(f"{perm} is not a permutation of modes 0..{n - 1}")
    return np.array([2 * p + j for p in perm for j in (0, 1)])


def permute_modes(sigma: np.ndarray, perm: Sequence[int]) -> np.ndarray:
    """Reorder modes: slot ``i`` of the result holds mode ``perm[i]`` of ``sigma``.

    X and P of a mode always move together.
    """
    idx = _quadrature_index(perm, n_modes(sigma))
    return np.asarray(sigma)[np.ix_(idx, idx)]


def inverse_permutation(perm: Sequence[int]) -> list[int]:
    inv = [0] * len(perm)
    for slot, mode in enumerate(perm):
        inv[mode] = slot
    return inv


def is_physical(sigma: np.ndarray, tol: float = PHYSICALITY_TOL) -> bool:
    """Robertson-Schrodinger test: ``sigma + i*Omega`` is positive semidefinite.

    Args:
        sigma: real symmetric covariance matrix.
        tol: accepted negative slack on the smallest eigenvalue.

    Raises:
        ValueError: if ``sigma`` is not symmetric.
    """
    sigma = check_symmetric(np.asarray(sigma, dtype=float))
    herm = sigma + 1j * symplectic_form(n_modes(sigma))
    return bool(np.linalg.eigvalsh(herm)[0] >= -tol)
