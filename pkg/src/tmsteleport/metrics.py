"""Entanglement and fidelity of two-mode Gaussian states."""

from __future__ import annotations

import math

import numpy as np

from .gaussian import check_symmetric, n_modes, symplectic_form

PAIRING_TOL = 1e-8
ROUTE_TOL = 1e-9


def partial_transpose(sigma: np.ndarray, mode: int = 1) -> np.ndarray:
    """Flip the sign of the momentum quadrature of ``mode`` (0-based).

    Applying it twice gives back ``sigma``.
    """
    sigma = np.asarray(sigma, dtype=float)
    n = n_modes(sigma)
    if not 0 <= mode < n:
        raise IndexError(f"mode {mode} out of range for a {n}-mode state")
    flip = np.ones(2 * n)
    flip[2 * mode + 1] = -1.0
    return sigma * np.outer(flip, flip)


def symplectic_eigenvalues(sigma: np.ndarray) -> np.ndarray:
    """Symplectic spectrum of a covariance matrix, sorted ascending.

    The eigenvalues of ``i*Omega*sigma`` come in ``+-nu`` pairs. With
    ``sigma = L L^T`` that matrix is similar to the Hermitian ``i L^T Omega L``,
    whose spectrum a symmetric solver finds reliably (the general solver fails
    to converge on some near-vacuum states) and exactly ``+-1`` for the vacuum.
    The result is cross-checked against the square roots of the eigenvalues
    of ``-(L^T Omega L)^2``.

    Raises:
        ValueError: if ``sigma`` is not symmetric positive definite, the
            eigenvalues do not pair up, or the two routes disagree.
    """
    sigma = check_symmetric(np.asarray(sigma, dtype=float))
    n = n_modes(sigma)
    try:
        chol = np.linalg.cholesky(sigma)
    except np.linalg.LinAlgError:
        raise ValueError("covariance matrix is not positive definite") from None
    a = chol.T @ symplectic_form(n) @ chol
    w = np.linalg.eigvalsh(1j * a)
    lower, upper = -w[:n][::-1], w[n:]
    scale = max(1.0, float(upper[-1]))
    if np.max(np.abs(upper - lower)) > PAIRING_TOL * scale:
        raise ValueError(f"symplectic eigenvalues do not pair: {w}")
    nus = (lower + upper) / 2

    squares = np.linalg.eigvalsh(-a @ a)
    alt = np.sqrt(np.clip(squares[0::2], 0.0, None))
    if np.max(np.abs(alt - nus)) > ROUTE_TOL * scale:
        raise ValueError(f"spectral routes disagree: {nus} vs {alt}")
    return nus


def smallest_pt_eigenvalue(sigma: np.ndarray, mode: int = 1) -> float:
    """Smallest symplectic eigenvalue of the partial transpose."""
    return float(symplectic_eigenvalues(partial_transpose(sigma, mode))[0])


def nu_closed_form(q: float, r: float) -> float:
    """Closed-form smallest PT eigenvalue of the output, for ``u = 0`` and ``h = k = 1/sqrt 2``.

    Evaluates ``sqrt((2c + x - y)^2 - 2 s^2) / 3`` with ``c, s`` from ``r``
    and ``x, y`` from ``q``.

    Raises:
        ValueError: for negative squeezing or a negative radicand.
    """
    if q < 0 or r < 0:
        raise ValueError("squeezing parameters must be >= 0")
    c, s = math.cosh(2 * r), math.sinh(2 * r)
    x_minus_y = math.exp(-2 * q)
    radicand = (2 * c + x_minus_y) ** 2 - 2 * s**2
    if radicand < 0:
        raise ValueError(f"closed form undefined at q={q}, r={r} (radicand {radicand:.3e})")
    return math.sqrt(radicand) / 3


def log_negativity_from_nu(nu: float) -> float:
    """``max(0, -log2 nu)`` in bits."""
    if nu >= 1.0:
        return 0.0
    return -math.log2(nu)


def log_negativity(sigma: np.ndarray, mode: int = 1) -> float:
    """Logarithmic negativity (bits) of a two-mode state across its two modes."""
    if n_modes(sigma) != 2:
        raise ValueError("log_negativity expects a two-mode covariance matrix")
    return log_negativity_from_nu(smallest_pt_eigenvalue(sigma, mode))


def fidelity(sigma_in: np.ndarray, sigma_out: np.ndarray) -> float:
    """Fidelity between two zero-mean Gaussian states from determinants.

    ``F = 1 / (sqrt(det(A + B) + d) - sqrt(d))`` with
    ``d = 4 (det A - 1/4)(det B - 1/4)``, evaluated on the full matrices.
    Note the 1/4 offsets belong to a vacuum-variance-1/2 convention, so
    ``fidelity(s, s) < 1`` in the units used here.
    """
    a, b = np.asarray(sigma_in, dtype=float), np.asarray(sigma_out, dtype=float)
    if a.shape != b.shape:
        raise ValueError(f"shape mismatch {a.shape} vs {b.shape}")
    n_modes(a)
    delta = 4 * (np.linalg.det(a) - 0.25) * (np.linalg.det(b) - 0.25)
    total = np.linalg.det(a + b) + delta
    if total <= 0 or delta < 0:
        raise ValueError(f"fidelity undefined: det sum {total:.3e}, delta {delta:.3e}")
    denom = math.sqrt(total) - math.sqrt(delta)
    if denom <= 0:
        raise ValueError("fidelity undefined: non-positive denominator")
    return 1.0 / denom
