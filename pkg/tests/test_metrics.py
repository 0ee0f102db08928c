import math

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from tmsteleport.gaussian import SourceSpec, source_state, vacuum
from tmsteleport.metrics import (
    fidelity,
    log_negativity,
    nu_closed_form,
    partial_transpose,
    smallest_pt_eigenvalue,
    symplectic_eigenvalues,
)
from tmsteleport.transforms import apply
from tmsteleport.verification import random_local_symplectic, random_physical_cm, random_symplectic


def test_partial_transpose():
    sigma = source_state(SourceSpec(0.5, math.pi / 4))
    pt = partial_transpose(sigma, 1)
    np.testing.assert_array_equal(partial_transpose(pt, 1), sigma)
    np.testing.assert_array_equal(partial_transpose(vacuum(2), 1), vacuum(2))
    sh = math.sinh(1)
    assert pt[0, 2] == pytest.approx(sh, abs=1e-12)
    assert pt[1, 3] == pytest.approx(sh, abs=1e-12)
    np.testing.assert_array_equal(pt, pt.T)
    with pytest.raises(IndexError):
        partial_transpose(sigma, 2)


def test_spectrum_examples():
    np.testing.assert_array_equal(symplectic_eigenvalues(vacuum(2)), [1.0, 1.0])
    for q, eta in [(0.3, 0.1), (1.2, math.pi / 4), (2.0, 0.0)]:
        np.testing.assert_allclose(symplectic_eigenvalues(source_state(SourceSpec(q, eta))), [1, 1], atol=1e-12 * math.cosh(2 * q))
    assert smallest_pt_eigenvalue(source_state(SourceSpec(0.5, math.pi / 4))) == pytest.approx(math.exp(-1), abs=1e-12)


@pytest.mark.parametrize("seed", range(20))
def test_spectrum_of_thermal_construction(seed):
    # S diag(d1, d1, d2, d2, ...) S^T has symplectic spectrum {d_j} by construction.
    rng = np.random.default_rng(seed)
    n = 1 + seed % 3
    d = np.sort(1 + rng.exponential(1.0, n))
    s = random_symplectic(seed, n)
    sigma = s @ np.diag(np.repeat(d, 2)) @ s.T
    sigma = (sigma + sigma.T) / 2
    np.testing.assert_allclose(symplectic_eigenvalues(sigma), d, rtol=1e-9)


def test_spectrum_rejects_asymmetric():
    with pytest.raises(ValueError):
        symplectic_eigenvalues(np.array([[1.0, 0.2], [0.0, 1.0]]))


@settings(max_examples=40)
@given(st.integers(0, 10_000), st.integers(0, 10_000))
def test_spectrum_symplectic_invariance(state_seed, sym_seed):
    sigma = random_physical_cm(state_seed, 2)
    s = random_local_symplectic(sym_seed, 2)
    np.testing.assert_allclose(symplectic_eigenvalues(apply(s, sigma)), symplectic_eigenvalues(sigma), rtol=1e-9)
    full = random_symplectic(sym_seed, 2)
    moved = full @ sigma @ full.T
    np.testing.assert_allclose(symplectic_eigenvalues((moved + moved.T) / 2), symplectic_eigenvalues(sigma), rtol=1e-8)


@pytest.mark.parametrize(
    "q, expected",
    [(0.0, 1.0), (0.5, (2 + math.exp(-1)) / 3), (1.0, (2 + math.exp(-2)) / 3)],
)
def test_nu_closed_form_at_s0(q, expected):
    assert nu_closed_form(q, 0.0) == pytest.approx(expected, abs=1e-12)


def test_nu_closed_form_values():
    assert nu_closed_form(0.5, 0.0) == pytest.approx(0.78929, abs=1e-5)
    assert nu_closed_form(1.0, 0.0) == pytest.approx(0.71178, abs=1e-5)
    # direct evaluation at r > 0
    c, s = math.cosh(1), math.sinh(1)
    x, y = math.cosh(2), math.sinh(2)
    assert nu_closed_form(1.0, 0.5) == pytest.approx(math.sqrt((2 * c + x - y) ** 2 - 2 * s**2) / 3, rel=1e-12)
    with pytest.raises(ValueError):
        nu_closed_form(-1.0, 0.0)


def test_log_negativity():
    assert log_negativity(vacuum(2)) == 0.0
    assert log_negativity(source_state(SourceSpec(0.5, math.pi / 4))) == pytest.approx(1 / math.log(2), abs=1e-12)
    with pytest.raises(ValueError):
        log_negativity(vacuum(3))


@pytest.mark.parametrize("q", [0.0, 0.25, 0.5, 1.0, 1.5, 2.0])
def test_source_family_closed_form(q):
    sigma = source_state(SourceSpec(q, math.pi / 4))
    assert smallest_pt_eigenvalue(sigma) == pytest.approx(math.exp(-2 * q), abs=1e-12)
    assert log_negativity(sigma) == pytest.approx(2 * q * math.log2(math.e), abs=1e-11)


@settings(max_examples=30)
@given(st.floats(0.0, 2.0), st.integers(0, 1000), st.integers(0, 1))
def test_log_negativity_local_invariance(q, seed, mode):
    sigma = source_state(SourceSpec(q, math.pi / 4))
    s = random_local_symplectic(seed, 2).matrix.copy()
    s[2 * (1 - mode) : 2 * (1 - mode) + 2, :] = np.eye(4)[2 * (1 - mode) : 2 * (1 - mode) + 2, :]
    moved = s @ sigma @ s.T
    moved = (moved + moved.T) / 2
    assert log_negativity(moved) == pytest.approx(log_negativity(sigma), abs=1e-9)


def test_fidelity_identity_anchor():
    assert fidelity(np.eye(4), np.eye(4)) == pytest.approx(1 / (math.sqrt(16 + 9 / 4) - 1.5), abs=1e-12)
    assert fidelity(np.eye(4), np.eye(4)) == pytest.approx(0.36075, abs=1e-5)


def test_fidelity_delta_zero():
    a = np.diag([0.5, 0.5, 1.0, 1.0])
    b = np.diag([1.0, 0.25, 1.0, 1.0])
    assert np.linalg.det(a) == pytest.approx(0.25) and np.linalg.det(b) == pytest.approx(0.25)
    assert fidelity(a, b) == pytest.approx(1 / math.sqrt(np.linalg.det(a + b)), rel=1e-12)


def test_fidelity_decreasing_for_scaled_identity():
    values = [fidelity(lam * np.eye(4), lam * np.eye(4)) for lam in np.linspace(1, 5, 30)]
    assert np.all(np.diff(values) < 0)


def test_fidelity_errors():
    with pytest.raises(ValueError):
        fidelity(np.eye(4), np.eye(2))
    with pytest.raises(ValueError):
        fidelity(np.eye(4), 0.1 * np.eye(4))


@pytest.mark.parametrize("q", [0.0, 1e-13, 1.3107678188247896e-11, 1e-9])
def test_near_vacuum_source_spectrum(q):
    # the general eigensolver fails to converge on q ~ 1e-11
    nu = smallest_pt_eigenvalue(source_state(SourceSpec(q, math.pi / 4)))
    assert nu == pytest.approx(math.exp(-2 * q), abs=1e-15)


def test_spectrum_rejects_indefinite():
    with pytest.raises(ValueError):
        symplectic_eigenvalues(np.diag([1.0, -1.0, 1.0, 1.0]))
