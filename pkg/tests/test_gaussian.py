import math

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from tmsteleport.gaussian import (
    AmplifierSpec,
    SourceSpec,
    direct_sum,
    inverse_permutation,
    is_physical,
    permute_modes,
    source_state,
    symplectic_form,
    two_mode_squeezed,
    vacuum,
)
from tmsteleport.metrics import symplectic_eigenvalues

squeezing = st.floats(min_value=0.0, max_value=2.5)
phase = st.floats(min_value=-math.pi, max_value=math.pi)


@pytest.mark.parametrize("n", [1, 2, 3])
def test_vacuum_is_identity(n):
    np.testing.assert_array_equal(vacuum(n), np.eye(2 * n))


@pytest.mark.parametrize("bad", [0, -1, 1.5])
def test_mode_count_rejected(bad):
    with pytest.raises(ValueError):
        vacuum(bad)
    with pytest.raises(ValueError):
        symplectic_form(bad)


def test_symplectic_form():
    np.testing.assert_array_equal(symplectic_form(1), [[0, 1], [-1, 0]])
    om = symplectic_form(2)
    np.testing.assert_array_equal(om @ om, -np.eye(4))
    np.testing.assert_array_equal(om.T, -om)


def test_specs_validate():
    with pytest.raises(ValueError):
        AmplifierSpec(-0.1, 0.0)
    with pytest.raises(ValueError):
        SourceSpec(float("nan"), 0.0)


@given(squeezing, phase)
def test_derived_identities(sq, ph):
    a, s = AmplifierSpec(sq, ph), SourceSpec(sq, ph)
    assert abs(a.c**2 - a.s**2 - 1) < 1e-12 * a.c**2
    assert abs(a.h**2 + a.k**2 - 1) < 1e-12
    assert abs(s.x**2 - s.y**2 - 1) < 1e-12 * s.x**2
    assert abs(s.u**2 + s.v**2 - 1) < 1e-12


def test_two_mode_squeezed_examples():
    np.testing.assert_array_equal(two_mode_squeezed(AmplifierSpec(0.0, 1.234)), np.eye(4))

    # phi = pi/4: h = 0, k = 1
    sigma = two_mode_squeezed(AmplifierSpec(0.5, math.pi / 4))
    ch, sh = math.cosh(1), math.sinh(1)
    expected = np.array([[ch, 0, sh, 0], [0, ch, 0, -sh], [sh, 0, ch, 0], [0, -sh, 0, ch]])
    np.testing.assert_allclose(sigma, expected, atol=1e-12)

    # phi = 0: h = 1, k = 0
    sigma = two_mode_squeezed(AmplifierSpec(0.5, 0.0))
    np.testing.assert_allclose(sigma, np.diag([ch - sh, ch + sh, ch + sh, ch - sh]), atol=1e-12)


def test_source_state_examples():
    np.testing.assert_array_equal(source_state(SourceSpec(0.0, 0.3)), np.eye(4))
    sigma = source_state(SourceSpec(0.5, math.pi / 4))
    ch, sh = math.cosh(1), math.sinh(1)
    np.testing.assert_allclose(np.diag(sigma), [ch] * 4, atol=1e-12)
    assert sigma[0, 2] == pytest.approx(sh, abs=1e-12)
    assert sigma[1, 3] == pytest.approx(-sh, abs=1e-12)
    sigma = source_state(SourceSpec(0.5, 0.0))
    np.testing.assert_allclose(sigma, np.diag([math.exp(-1), math.e, math.e, math.exp(-1)]), atol=1e-12)


@given(squeezing, phase)
def test_constructors_pure_and_physical(sq, ph):
    for sigma in (two_mode_squeezed(AmplifierSpec(sq, ph)), source_state(SourceSpec(sq, ph))):
        assert abs(np.linalg.det(sigma) - 1) < 1e-9 * max(1.0, np.max(np.abs(sigma)) ** 2)
        assert is_physical(sigma)


@given(squeezing, phase)
def test_amplifier_and_source_share_spectrum(sq, ph):
    a = symplectic_eigenvalues(two_mode_squeezed(AmplifierSpec(sq, ph)))
    b = symplectic_eigenvalues(source_state(SourceSpec(sq, ph)))
    np.testing.assert_allclose(a, [1, 1], atol=1e-9 * math.cosh(2 * sq))
    np.testing.assert_allclose(b, [1, 1], atol=1e-9 * math.cosh(2 * sq))


def test_direct_sum():
    np.testing.assert_array_equal(direct_sum(np.eye(2), np.eye(4)), np.eye(6))
    t = two_mode_squeezed(AmplifierSpec(0.3, 0.2))
    four = direct_sum(t, t)
    np.testing.assert_array_equal(four[:4, 4:], 0)
    np.testing.assert_array_equal(four[4:, :4], 0)
    np.testing.assert_array_equal(four[:4, :4], t)


def test_permute_modes():
    a = two_mode_squeezed(AmplifierSpec(0.3, 0.2))
    b = np.diag([2.0, 3.0])
    np.testing.assert_array_equal(permute_modes(a, [0, 1]), a)
    swapped = permute_modes(a, [1, 0])
    np.testing.assert_array_equal(permute_modes(swapped, [1, 0]), a)
    np.testing.assert_array_equal(permute_modes(direct_sum(a, b), [2, 0, 1]), direct_sum(b, a))
    with pytest.raises(ValueError):
        permute_modes(a, [0, 0])


@settings(max_examples=50)
@given(st.permutations(list(range(4))), squeezing, phase)
def test_permutation_preserves_spectra(perm, sq, ph):
    t = two_mode_squeezed(AmplifierSpec(sq, ph))
    sigma = direct_sum(t, source_state(SourceSpec(sq / 2, ph)))
    moved = permute_modes(sigma, perm)
    np.testing.assert_array_equal(permute_modes(moved, inverse_permutation(perm)), sigma)
    scale = max(1.0, np.max(np.abs(sigma)))
    np.testing.assert_allclose(np.linalg.eigvalsh(moved), np.linalg.eigvalsh(sigma), atol=1e-12 * scale)
    om = symplectic_form(4)
    np.testing.assert_allclose(
        np.linalg.eigvalsh(moved + 1j * om), np.linalg.eigvalsh(sigma + 1j * om), atol=1e-12 * scale
    )


def test_is_physical():
    assert is_physical(vacuum(2))
    assert not is_physical(0.5 * np.eye(2))
    assert is_physical(two_mode_squeezed(AmplifierSpec(1.0, math.pi / 4)))
    with pytest.raises(ValueError):
        is_physical(np.array([[1.0, 0.5], [0.0, 1.0]]))


def test_precise_constructor_matches_float():
    import mpmath

    spec = AmplifierSpec(0.7, 0.3)
    with mpmath.workdps(40):
        precise = two_mode_squeezed(spec, precise=True)
    assert precise.dtype == object
    np.testing.assert_allclose(precise.astype(float), two_mode_squeezed(spec), rtol=1e-15)
