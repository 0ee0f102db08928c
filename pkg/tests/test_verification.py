import json
import math

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from tmsteleport.gaussian import SourceSpec, is_physical, source_state, symplectic_form, vacuum
from tmsteleport.metrics import partial_transpose, symplectic_eigenvalues
from tmsteleport.transforms import B2_ALTERNATE_MODES, B2_INPUT_MODES, Convention
from tmsteleport.verification import (
    FAIL,
    INFO,
    PASS,
    constructed_states,
    local_symplectic,
    oracle_symplectic_spectrum,
    random_local_symplectic,
    random_physical_cm,
    random_symplectic,
    resolve_b2_ordering,
    run_suite,
    symbolic_closed_form,
    symbolic_output,
    textual_b2_orderings,
)


def _symplectic_residual(s, n):
    omega = symplectic_form(n)
    return np.max(np.abs(s @ omega @ s.T - omega))


def test_oracle_vacuum_and_source():
    np.testing.assert_array_equal(oracle_symplectic_spectrum(vacuum(2)), [1.0, 1.0])
    pt = partial_transpose(source_state(SourceSpec(1.0, math.pi / 4)))
    assert oracle_symplectic_spectrum(pt)[0] == pytest.approx(math.exp(-2), abs=1e-12)


def test_oracle_agrees_on_random_and_constructed_states():
    states = constructed_states() + [random_physical_cm(seed, 1 + seed % 4) for seed in range(100)]
    for sigma in states:
        scale = max(1.0, np.max(np.abs(sigma)))
        np.testing.assert_allclose(symplectic_eigenvalues(sigma), oracle_symplectic_spectrum(sigma), atol=1e-9 * scale)


@pytest.mark.parametrize("seed", range(20))
def test_random_states_are_physical(seed):
    n = 1 + seed % 4
    assert _symplectic_residual(random_symplectic(seed, n), n) < 1e-12
    sigma = random_physical_cm(seed, n)
    assert is_physical(sigma)
    assert np.all(symplectic_eigenvalues(sigma) >= 1 - 1e-9)


def test_local_symplectic_identity():
    t = local_symplectic([0.0, 0.0], [0.0, 0.0], [0.0, 0.0])
    np.testing.assert_array_equal(t.matrix, np.eye(4))


@settings(max_examples=50)
@given(st.integers(0, 2**32 - 1), st.integers(1, 4))
def test_random_local_symplectic(seed, n):
    s = random_local_symplectic(seed, n).matrix
    assert _symplectic_residual(s, n) < 1e-12
    np.testing.assert_array_equal(s, random_local_symplectic(seed, n).matrix)
    # block diagonal: modes never mix
    mask = np.kron(np.eye(n), np.ones((2, 2))) == 0
    assert np.all(s[mask] == 0)


def test_b2_ordering_resolution():
    res = resolve_b2_ordering()
    assert res["resolved"] == ",".join(map(str, B2_INPUT_MODES))
    assert len(textual_b2_orderings()) == 8
    kinds = res["candidates"]
    assert set(kinds) == {",".join(map(str, o)) for o in textual_b2_orderings()}
    assert kinds[",".join(map(str, B2_ALTERNATE_MODES))] == "split-noise-variant"
    assert list(kinds.values()).count("closed-form") == 1


def test_symbolic_gain_relation():
    diff = symbolic_output(B2_INPUT_MODES, Convention.GAIN_CORRECTED) - 3 * symbolic_closed_form()
    assert all(e == 0 for e in diff)


@pytest.fixture(scope="module")
def suite():
    return run_suite()


def test_suite_shape(suite):
    names = [c.name for c in suite.checks]
    assert names == sorted(names) and len(names) == len(set(names))
    assert all(c.status in (PASS, FAIL, INFO) for c in suite.checks)
    assert suite.resolved_b2_ordering == list(B2_INPUT_MODES)
    assert "eq14-consistency" in names
    assert suite.eq11_vs_eq14_discrepancy > 0


def test_suite_informational_never_fails(suite):
    informational = [c for c in suite.checks if c.status == INFO]
    assert informational
    assert suite.passed == all(c.status == PASS for c in suite.checks if c.status != INFO)


def test_suite_hard_checks(suite):
    # The q = 2, r = 0.25 entanglement check is a known failure: the derived
    # pipeline gives nu slightly above 1 there (see README, "Findings").
    failing = {c.name for c in suite.failures}
    assert failing <= {"entanglement-positive-q2-r025"}
    assert suite.passed == (not failing)


def test_suite_deterministic(suite):
    again = run_suite()
    assert again.to_json() == suite.to_json()
    json.loads(suite.to_json())
    assert suite.to_text().endswith("\n")
