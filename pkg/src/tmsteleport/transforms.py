"""Linear maps of the teleportation circuit and their action on covariance matrices.

The matrices are transcribed once, exactly, with :mod:`sympy` and converted
to floating point on demand. Every 2x2 block acts on one mode in the
interleaved ``(X, P)`` ordering.

Mode labels follow the circuit: TA1 emits modes 1 and 3, TA2 emits 2 and 4,
Bob's beam splitters output 5, 6, 15, 16, the source emits 7 and 8, and the
teleported pair ends up in 13 and 14.
"""

from __future__ import annotations

import enum
from dataclasses import dataclass, field
from fractions import Fraction
from functools import lru_cache
from typing import Optional

import numpy as np
import sympy as sp

from .gaussian import SYMMETRY_TOL, asymmetry, n_modes

# Slot order of the four-mode state fed into B1, and of its output.
B1_INPUT_MODES = (1, 3, 2, 4)
SHARED_MODES = (5, 6, 15, 16)
SIX_MODES = SHARED_MODES + (7, 8)

# B2 mixes slots (1, 5) and (3, 6). This order puts (15, 7) and (6, 8)
# on those slots and reproduces the closed-form output exactly.
B2_INPUT_MODES = (15, 16, 6, 5, 7, 8)
# Also pairs (7, 15) and (8, 6); yields the variant where the amplifier
# correlation term enters X and P with opposite signs.
B2_ALTERNATE_MODES = (7, 16, 8, 5, 15, 6)


class Convention(str, enum.Enum):
    """How the classical feed-forward gain enters the output.

    ``AS_PRINTED`` uses ``U K B2`` literally; ``GAIN_CORRECTED`` uses
    ``sqrt(3) U K B2``, whose entries are all 0 or +-1.
    """

    AS_PRINTED = "as-printed"
    GAIN_CORRECTED = "gain-corrected"

    def __str__(self) -> str:
        return self.value


@dataclass(frozen=True, eq=False)
class LinearTransform:
    """A real ``rows x cols`` map applied to covariance matrices by congruence.

    When ``integer`` is set the map equals ``sqrt(scale_sq) * integer`` and
    :func:`apply` evaluates the congruence in that factored form, so that
    integer-pattern maps introduce no rounding beyond the final division.
    """

    matrix: np.ndarray
    label: str
    exact: Optional[sp.Matrix] = field(default=None, repr=False)
    integer: Optional[np.ndarray] = field(default=None, repr=False)
    scale_sq: Fraction = Fraction(1)

    def __post_init__(self):
        m = np.array(self.matrix, dtype=float)
        rows, cols = m.shape
        if rows % 2 or cols % 2 or rows == 0:
            raise ValueError(f"transform must have even positive dimensions, got {m.shape}")
        if rows > cols:
            raise ValueError(f"transform cannot add modes ({rows} rows > {cols} cols)")
        m.setflags(write=False)
        object.__setattr__(self, "matrix", m)
        if self.integer is not None:
            n = np.array(self.integer, dtype=np.int64)
            n.setflags(write=False)
            object.__setattr__(self, "integer", n)

    @property
    def rows(self) -> int:
        return self.matrix.shape[0]

    @property
    def cols(self) -> int:
        return self.matrix.shape[1]

    @property
    def T(self) -> np.ndarray:
        return self.matrix.T

    def __matmul__(self, other: "LinearTransform") -> "LinearTransform":
        exact = self.exact * other.exact if self.exact is not None and other.exact is not None else None
        return LinearTransform(self.matrix @ other.matrix, f"{self.label}*{other.label}", exact=exact)

    def scaled(self, factor: sp.Expr, label: str) -> "LinearTransform":
        """Exact scalar multiple (requires an exact transcription)."""
        if self.exact is None:
            raise ValueError(f"{self.label} has no exact form")
        return from_exact(sp.nsimplify(factor) * self.exact, label)


def from_exact(exact: sp.Matrix, label: str) -> LinearTransform:
    """Build a transform from an exact sympy matrix, detecting ``sqrt(p/q) * integer`` form."""
    exact = sp.Matrix(exact).applyfunc(sp.nsimplify)
    floats = np.array(exact.evalf(30).tolist(), dtype=float)
    integer, scale_sq = None, Fraction(1)
    nonzero = [e for e in exact if e != 0]
    if nonzero:
        ref = abs(nonzero[0])
        ratios = exact / ref
        if all(e.is_integer for e in ratios):
            sq = sp.nsimplify(ref**2)
            if sq.is_Rational:
                integer = np.array(ratios.tolist(), dtype=np.int64)
                scale_sq = Fraction(int(sq.p), int(sq.q))
    return LinearTransform(floats, label, exact=exact, integer=integer, scale_sq=scale_sq)


def _blocks(pattern: list[list[sp.Expr]]) -> sp.Matrix:
    # Expand a mode-level pattern into 2x2 blocks (each scalar times I2).
    return sp.Matrix(sp.BlockMatrix([[e * sp.eye(2) for e in row] for row in pattern]).as_explicit())


@lru_cache(maxsize=None)
def beam_splitter_B1() -> LinearTransform:
    """Bob's two balanced beam splitters, acting on modes ``(1, 3, 2, 4)``.

    Output slots are modes ``(5, 6, 15, 16)``.
    """
    a = 1 / sp.sqrt(2)
    pattern = [
        [a, 0, 0, a],
        [0, a, a, 0],
        [0, a, -a, 0],
        [a, 0, 0, -a],
    ]
    return from_exact(_blocks(pattern), "B1[1,3,2,4->5,6,15,16]")


@lru_cache(maxsize=None)
def beam_splitter_B2() -> LinearTransform:
    """Alice's two balanced beam splitters on six mode slots.

    Mixes slots 1 with 5 and 3 with 6, leaves slots 2 and 4 alone.
    """
    a = 1 / sp.sqrt(2)
    pattern = [
        [a, 0, 0, 0, a, 0],
        [0, 1, 0, 0, 0, 0],
        [0, 0, a, 0, 0, a],
        [0, 0, 0, 1, 0, 0],
        [a, 0, 0, 0, -a, 0],
        [0, 0, a, 0, 0, -a],
    ]
    return from_exact(_blocks(pattern), "B2")


# 1-based rows of the 12-vector kept by the measurement selector.
K_KEPT_ROWS = (1, 3, 4, 5, 7, 8, 10, 12)


@lru_cache(maxsize=None)
def measurement_selector_K() -> LinearTransform:
    """8x12 row selector that drops the measured quadratures."""
    exact = sp.zeros(len(K_KEPT_ROWS), 12)
    for i, row in enumerate(K_KEPT_ROWS):
        exact[i, row - 1] = 1
    return from_exact(exact, "K")


@lru_cache(maxsize=None)
def gain_matrix_U() -> LinearTransform:
    """Bob's 4x8 feed-forward map onto the output modes 13 and 14."""
    t, o = sp.sqrt(sp.Rational(2, 3)), sp.sqrt(sp.Rational(1, 3))
    exact = sp.Matrix(
        [
            [-t, -o, 0, 0, 0, 0, 0, 0],
            [0, 0, -o, 0, 0, 0, t, 0],
            [0, 0, 0, t, o, 0, 0, 0],
            [0, 0, 0, 0, 0, o, 0, -t],
        ]
    )
    return from_exact(exact, "U")


@lru_cache(maxsize=None)
def composite(convention: Convention | str = Convention.AS_PRINTED) -> LinearTransform:
    """Alice's beam splitters, measurement and Bob's feed-forward as one 4x12 map.

    The map expects its six input modes in :data:`B2_INPUT_MODES` order.
    """
    convention = Convention(convention)
    uk = gain_matrix_U() @ measurement_selector_K() @ beam_splitter_B2()
    slots = ",".join(str(m) for m in B2_INPUT_MODES)
    if convention is Convention.GAIN_CORRECTED:
        return uk.scaled(sp.sqrt(3), f"sqrt3*U*K*B2[{slots}->13,14]")
    return uk.scaled(1, f"U*K*B2[{slots}->13,14]")


def _congruence(t: LinearTransform, sigma: np.ndarray) -> np.ndarray:
    if t.integer is None:
        if sigma.dtype == object:
            raise TypeError(f"{t.label} has no integer form; precise evaluation unsupported")
        return t.matrix @ sigma @ t.matrix.T
    n = t.integer if sigma.dtype != object else t.integer.astype(object)
    out = n @ sigma @ n.T
    if t.scale_sq.numerator != 1:
        out = out * t.scale_sq.numerator
    if t.scale_sq.denominator != 1:
        out = out / t.scale_sq.denominator
    return out


def apply(t: LinearTransform, sigma: np.ndarray) -> np.ndarray:
    """Congruence ``T sigma T^T``.

    The result is symmetrized after checking that its asymmetry is at
    rounding level (relative to the largest entry).

    Raises:
        ValueError: on a dimension mismatch or a non-symmetric result.
    """
    sigma = np.asarray(sigma)
    if t.cols != 2 * n_modes(sigma):
        raise ValueError(f"{t.label} expects {t.cols} quadratures, got {sigma.shape[0]}")
    out = _congruence(t, sigma)
    scale = max(1.0, float(np.max(np.abs(out))))
    err = asymmetry(out)
    if err > SYMMETRY_TOL * scale:
        raise ValueError(f"congruence by {t.label} broke symmetry ({err:.3e})")
    return (out + out.T) / 2


def is_orthogonal(t: LinearTransform, tol: float = 1e-12) -> bool:
    m = t.matrix
    return bool(np.max(np.abs(m @ m.T - np.eye(t.rows))) < tol)
