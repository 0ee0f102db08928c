"""Independent oracles and the self-check suite.

Everything here is deterministic: random states come from fixed seeds and the
report is sorted by check name, so two runs produce identical output.
"""

from __future__ import annotations

import itertools
import json
import math
import time
from dataclasses import asdict, dataclass, field
from typing import Any, Optional, Sequence

import numpy as np
import sympy as sp

from . import metrics
from .gaussian import (
    AmplifierSpec,
    SourceSpec,
    is_physical,
    source_state,
    two_mode_squeezed,
    vacuum,
)
from .protocol import (
    ProtocolConfig,
    decompose_output,
    ideal_limit_check,
    llubo_equivalent,
    output_closed_form,
    output_state,
    shared_four_mode,
    tan_limit_check,
    teleport,
)
from .sweep import SweepGrid, sweep, to_csv
from .transforms import (
    B2_ALTERNATE_MODES,
    B2_INPUT_MODES,
    SIX_MODES,
    Convention,
    LinearTransform,
    apply,
    beam_splitter_B1,
    beam_splitter_B2,
    composite,
    gain_matrix_U,
    measurement_selector_K,
)

PASS, FAIL, INFO = "pass", "fail", "informational"


# --------------------------------------------------------------------------
# oracles and random states
# --------------------------------------------------------------------------


def _omega(n: int) -> np.ndarray:
    out = np.zeros((2 * n, 2 * n))
    for j in range(n):
        out[2 * j, 2 * j + 1] = 1.0
        out[2 * j + 1, 2 * j] = -1.0
    return out


def oracle_symplectic_spectrum(sigma: np.ndarray) -> np.ndarray:
    """Symplectic spectrum from the square roots of the eigenvalues of ``-(Omega sigma)^2``.

    Every value appears twice in that spectrum; one copy of each is kept.
    """
    sigma = np.asarray(sigma, dtype=float)
    if np.max(np.abs(sigma - sigma.T)) > 1e-12:
        raise ValueError("oracle expects a symmetric matrix")
    a = _omega(sigma.shape[0] // 2) @ sigma
    squares = np.sort(np.real(np.linalg.eigvals(-a @ a)))
    if np.max(np.abs(squares[0::2] - squares[1::2])) > 1e-8 * max(1.0, squares[-1]):
        raise ValueError(f"squared spectrum is not doubly degenerate: {squares}")
    return np.sqrt(np.clip(squares[0::2], 0.0, None))


def _rotation(theta: float) -> np.ndarray:
    c, s = math.cos(theta), math.sin(theta)
    return np.array([[c, s], [-s, c]])


def local_symplectic(thetas: Sequence[float], squeezes: Sequence[float], thetas2: Sequence[float]) -> LinearTransform:
    """Per-mode ``R(theta) S(z) R(theta')`` with ``S(z) = diag(e^-z, e^z)``."""
    n = len(thetas)
    out = np.zeros((2 * n, 2 * n))
    for j, (t1, z, t2) in enumerate(zip(thetas, squeezes, thetas2)):
        block = _rotation(t1) @ np.diag([math.exp(-z), math.exp(z)]) @ _rotation(t2)
        out[2 * j : 2 * j + 2, 2 * j : 2 * j + 2] = block
    return LinearTransform(out, f"local[{n}]")


def random_local_symplectic(seed: int, n_modes: int) -> LinearTransform:
    """Seeded local symplectic map; angles in ``[0, 2pi)``, squeezing in ``[-1, 1]``."""
    rng = np.random.default_rng(seed)
    thetas = rng.uniform(0, 2 * math.pi, n_modes)
    zs = rng.uniform(-1, 1, n_modes)
    thetas2 = rng.uniform(0, 2 * math.pi, n_modes)
    t = local_symplectic(thetas, zs, thetas2)
    return LinearTransform(t.matrix, f"random-local[seed={seed}]")


def _passive(rng: np.random.Generator, n: int) -> np.ndarray:
    # Random unitary (QR of a complex Gaussian) in real interleaved form.
    z = rng.normal(size=(n, n)) + 1j * rng.normal(size=(n, n))
    q, r = np.linalg.qr(z)
    u = q * (np.diag(r) / np.abs(np.diag(r)))
    out = np.zeros((2 * n, 2 * n))
    out[0::2, 0::2] = u.real
    out[0::2, 1::2] = -u.imag
    out[1::2, 0::2] = u.imag
    out[1::2, 1::2] = u.real
    return out


def random_symplectic(seed: int, n_modes: int) -> np.ndarray:
    rng = np.random.default_rng(seed)
    squeeze = np.diag(np.repeat(np.exp(rng.uniform(-1, 1, n_modes)), 2) ** np.tile([-1, 1], n_modes))
    return _passive(rng, n_modes) @ squeeze @ _passive(rng, n_modes)


def random_physical_cm(seed: int, n_modes: int) -> np.ndarray:
    """``S D S^T`` with a seeded symplectic ``S`` and thermal diagonal ``D >= 1``."""
    rng = np.random.default_rng(seed + 10_000)
    d = np.repeat(1.0 + rng.exponential(1.0, n_modes), 2)
    s = random_symplectic(seed, n_modes)
    sigma = s @ np.diag(d) @ s.T
    return (sigma + sigma.T) / 2


# --------------------------------------------------------------------------
# symbolic derivation of the output state
# --------------------------------------------------------------------------

C, S, K, H, X, Y, U, V = sp.symbols("c s k h x y u v", real=True)


def _sym_two_mode(a1, a2, b1, b2, g1, g2) -> sp.Matrix:
    return sp.Matrix([[a1, 0, g1, 0], [0, a2, 0, g2], [g1, 0, b1, 0], [0, g2, 0, b2]])


def symbolic_output(b2_modes: Sequence[int] = B2_INPUT_MODES, convention=Convention.AS_PRINTED) -> sp.Matrix:
    """Output covariance matrix with the eight trigonometric quantities as free symbols."""
    tms = _sym_two_mode(C - H * S, C + H * S, C + H * S, C - H * S, K * S, -K * S)
    b1 = beam_splitter_B1().exact
    shared = b1 * sp.diag(tms, tms) * b1.T
    six = sp.diag(shared, _sym_two_mode(X - U * Y, X + U * Y, X + U * Y, X - U * Y, V * Y, -V * Y))
    idx = [2 * SIX_MODES.index(m) + j for m in b2_modes for j in (0, 1)]
    six = six.extract(idx, idx)
    m = composite(convention).exact
    return (m * six * m.T).applyfunc(sp.expand)


def symbolic_closed_form(convention=Convention.AS_PRINTED) -> sp.Matrix:
    d = 2 * C + 2 * K * S
    out = _sym_two_mode(d + X - U * Y, d + X + U * Y, d + X + U * Y, d + X - U * Y, -V * Y, V * Y) / 3
    if Convention(convention) is Convention.GAIN_CORRECTED:
        out = 3 * out
    return out.applyfunc(sp.expand)


def symbolic_split_noise_variant() -> sp.Matrix:
    """Output form consistent with the closed-form eigenvalue: ``2ks`` enters X and P with opposite signs."""
    e = 2 * K * S
    return (
        _sym_two_mode(2 * C + e + X - U * Y, 2 * C - e + X + U * Y, 2 * C + e + X + U * Y, 2 * C - e + X - U * Y, -V * Y, V * Y)
        / 3
    ).applyfunc(sp.expand)


def textual_b2_orderings() -> list[tuple[int, ...]]:
    """Every slot order that puts (15, 7) on slots 1/5 and (6, 8) on slots 3/6."""
    out = []
    for a, b, (c2, c4) in itertools.product(((15, 7), (7, 15)), ((6, 8), (8, 6)), ((5, 16), (16, 5))):
        out.append((a[0], c2, b[0], c4, a[1], b[1]))
    return sorted(out)


def resolve_b2_ordering() -> dict[str, Any]:
    """Classify every textual B2 ordering by the output form it produces."""
    closed, split = symbolic_closed_form(), symbolic_split_noise_variant()
    table = {}
    for order in textual_b2_orderings():
        out = symbolic_output(order)
        if out == closed:
            kind = "closed-form"
        elif out == split:
            kind = "split-noise-variant"
        else:
            kind = "neither"
        table[",".join(map(str, order))] = kind
    matches = [k for k, v in table.items() if v == "closed-form"]
    return {"resolved": matches[0] if len(matches) == 1 else None, "candidates": table}


# --------------------------------------------------------------------------
# report
# --------------------------------------------------------------------------


@dataclass
class Check:
    name: str
    status: str
    measured: Any = None
    expected: Any = None
    tolerance: Optional[float] = None
    detail: str = ""


@dataclass
class VerifyReport:
    checks: list[Check] = field(default_factory=list)
    resolved_b2_ordering: Optional[list[int]] = None
    b2_candidates: dict = field(default_factory=dict)
    eq11_vs_eq14_discrepancy: Optional[float] = None

    @property
    def passed(self) -> bool:
        return all(c.status != FAIL for c in self.checks)

    @property
    def failures(self) -> list[Check]:
        return [c for c in self.checks if c.status == FAIL]

    def to_dict(self) -> dict:
        return {
            "passed": self.passed,
            "resolved_b2_ordering": self.resolved_b2_ordering,
            "b2_candidates": self.b2_candidates,
            "eq11_vs_eq14_discrepancy": self.eq11_vs_eq14_discrepancy,
            "checks": [asdict(c) for c in self.checks],
        }

    def to_json(self) -> str:
        return json.dumps(self.to_dict(), indent=2, sort_keys=True) + "\n"

    def to_text(self) -> str:
        lines = []
        width = max(len(c.name) for c in self.checks) if self.checks else 0
        for c in self.checks:
            line = f"[{c.status.upper():>13}] {c.name:<{width}}  measured={c.measured!r}"
            if c.expected is not None:
                line += f" expected={c.expected!r}"
            if c.tolerance is not None:
                line += f" tol={c.tolerance!r}"
            if c.detail:
                line += f"  ({c.detail})"
            lines.append(line)
        lines.append(f"resolved B2 ordering: {self.resolved_b2_ordering}")
        for order, kind in self.b2_candidates.items():
            lines.append(f"  B2 slots ({order}) -> {kind}")
        lines.append(f"closed-form vs pipeline max |nu difference|: {self.eq11_vs_eq14_discrepancy!r}")
        n_fail = len(self.failures)
        lines.append("OK" if n_fail == 0 else f"FAILED: {n_fail} hard check(s)")
        return "\n".join(lines) + "\n"


def _hard(name, measured, tol, expected=None, detail="", ok=None) -> Check:
    if ok is None:
        ok = measured is not None and measured < tol
    return Check(name, PASS if ok else FAIL, measured, expected, tol, detail)


# --------------------------------------------------------------------------
# checks (one function per acceptance criterion, plus invariants)
# --------------------------------------------------------------------------

GRID5 = (0.0, 0.5, 1.0, 1.5, 2.0)
PHASES5 = tuple(j * math.pi / 8 for j in range(5))
ETA_DEFAULT, PHI_DEFAULT = math.pi / 4, math.pi / 8


def _amplifier_reference(r, phi):
    c, s, k, h = math.cosh(2 * r), math.sinh(2 * r), math.sin(2 * phi), math.cos(2 * phi)
    alpha, beta, gamma = np.diag([c - h * s, c + h * s]), np.diag([c + h * s, c - h * s]), np.diag([k * s, -k * s])
    return np.block([[alpha, gamma], [gamma.T, beta]])


def _source_reference(q, eta):
    x, y, u, v = math.cosh(2 * q), math.sinh(2 * q), math.cos(2 * eta), math.sin(2 * eta)
    return np.array(
        [[x - u * y, 0, v * y, 0], [0, x + u * y, 0, -v * y], [v * y, 0, x + u * y, 0], [0, -v * y, 0, x - u * y]]
    )


def check_constructors() -> list[Check]:
    t0 = time.perf_counter()
    err = 0.0
    for sq, ph in itertools.product(GRID5, PHASES5):
        err = max(err, np.max(np.abs(two_mode_squeezed(AmplifierSpec(sq, ph)) - _amplifier_reference(sq, ph))))
        err = max(err, np.max(np.abs(source_state(SourceSpec(sq, ph)) - _source_reference(sq, ph))))
    elapsed = time.perf_counter() - t0
    return [_hard("constructor-exactness", float(err), 1e-12, 0.0, ok=err < 1e-12 and elapsed < 1.0, detail="5x5 grid, < 1 s")]


def check_transforms() -> list[Check]:
    b1, b2, k, u = beam_splitter_B1(), beam_splitter_B2(), measurement_selector_K(), gain_matrix_U()
    err = max(
        np.max(np.abs(t.matrix @ t.matrix.T - np.eye(t.rows))) for t in (b1, b2, k, u)
    )
    entries = set(composite(Convention.GAIN_CORRECTED).exact)
    ok = err < 1e-12 and entries <= {sp.Integer(-1), sp.Integer(0), sp.Integer(1)}
    return [
        _hard(
            "transform-exactness",
            float(err),
            1e-12,
            0.0,
            ok=ok,
            detail=f"sqrt3*U*K*B2 entries {sorted(int(e) for e in entries)}",
        )
    ]


def check_pipeline() -> list[Check]:
    t0 = time.perf_counter()
    err, gain_err = 0.0, 0.0
    for q, r in itertools.product(GRID5, GRID5):
        for conv in Convention:
            cfg = ProtocolConfig.from_params(q, ETA_DEFAULT, r, PHI_DEFAULT, conv)
            err = max(err, np.max(np.abs(output_state(cfg) - output_closed_form(cfg))))
        a = output_state(ProtocolConfig.from_params(q, ETA_DEFAULT, r, PHI_DEFAULT, Convention.AS_PRINTED))
        g = output_state(ProtocolConfig.from_params(q, ETA_DEFAULT, r, PHI_DEFAULT, Convention.GAIN_CORRECTED))
        gain_err = max(gain_err, np.max(np.abs(g - 3 * a) / np.maximum(1.0, np.abs(g))))
    elapsed = time.perf_counter() - t0
    return [
        _hard("pipeline-closed-form", float(err), 1e-10, 0.0, ok=err < 1e-10 and elapsed < 1.0, detail="q,r in {0..2}, < 1 s"),
        _hard("gain-relation", float(gain_err), float(4 * np.finfo(float).eps), 0.0, detail="gain-corrected = 3 x as-printed, rounding only"),
    ]


def check_tan_limit() -> list[Check]:
    worst = max(tan_limit_check(SourceSpec(q, ETA_DEFAULT)) for q in (0.0, 0.5, 1.0, 2.0))
    return [_hard("tan-limit", float(worst), 1e-12, 0.0)]


def check_ideal_limit() -> list[Check]:
    worst = 0.0
    for r in (0.0, 2.0, 5.0, 10.0):
        expected = 2 * math.exp(-2 * r)
        worst = max(worst, abs(ideal_limit_check(SourceSpec(0.5, ETA_DEFAULT), r) - expected) / expected)
    return [_hard("ideal-limit", float(worst), 1e-9, 0.0, detail="relative error vs 2 exp(-2r), r in {0,2,5,10}")]


def constructed_states() -> list[np.ndarray]:
    states = [vacuum(1), vacuum(2), vacuum(3)]
    for sq, ph in itertools.product(GRID5, PHASES5):
        states.append(two_mode_squeezed(AmplifierSpec(sq, ph)))
        states.append(source_state(SourceSpec(sq, ph)))
    for sq in GRID5:
        states.append(shared_four_mode(AmplifierSpec(sq, PHI_DEFAULT)))
        for conv in Convention:
            states.append(output_state(ProtocolConfig.from_params(sq, ETA_DEFAULT, sq, PHI_DEFAULT, conv)))
    return states


def check_spectra() -> list[Check]:
    states = constructed_states() + [random_physical_cm(seed, 1 + seed % 4) for seed in range(100)]
    route_err = 0.0
    for sigma in states:
        a, b = metrics.symplectic_eigenvalues(sigma), oracle_symplectic_spectrum(sigma)
        route_err = max(route_err, np.max(np.abs(a - b)))
    pt_err, en_err = 0.0, 0.0
    for q in GRID5:
        sigma = source_state(SourceSpec(q, ETA_DEFAULT))
        nu = metrics.smallest_pt_eigenvalue(sigma)
        pt_err = max(pt_err, abs(nu - math.exp(-2 * q)))
        en_err = max(en_err, abs(metrics.log_negativity(sigma) - 2 * q * math.log2(math.e)))
    return [
        _hard("spectral-oracle", float(route_err), 1e-9, 0.0, detail=f"{len(states)} states incl. 100 random"),
        _hard("pt-spectrum-source", float(max(pt_err, en_err)), 1e-12, 0.0, detail="nu = exp(-2q), E_N = 2q log2 e"),
    ]


def check_entanglement_threshold() -> list[Check]:
    en_q0 = max(
        teleport(ProtocolConfig.from_params(0.0, ETA_DEFAULT, r, PHI_DEFAULT, conv)).log_negativity
        for r in np.linspace(0, 2, 41)
        for conv in Convention
    )
    rep = teleport(ProtocolConfig.from_params(2.0, ETA_DEFAULT, 0.25, PHI_DEFAULT))
    return [
        Check("entanglement-zero-at-q0", PASS if en_q0 == 0.0 else FAIL, float(en_q0), 0.0, 0.0, "E_N exactly 0 for q=0, all r"),
        Check(
            "entanglement-positive-q2-r025",
            PASS if rep.log_negativity > 0 else FAIL,
            rep.log_negativity,
            "> 0",
            None,
            f"pipeline nu = {rep.nu_pipeline!r}, closed-form nu = {rep.nu_closed_form!r}",
        ),
    ]


def nu_discrepancy() -> float:
    return max(
        abs(
            teleport(ProtocolConfig.from_params(q, ETA_DEFAULT, r, PHI_DEFAULT)).nu_pipeline
            - metrics.nu_closed_form(q, r)
        )
        for q, r in itertools.product(GRID5, GRID5)
    )


def check_nu_closed_form() -> list[Check]:
    err_cf, err_pipe = 0.0, 0.0
    for q in GRID5:
        expected = (2 + math.exp(-2 * q)) / 3
        err_cf = max(err_cf, abs(metrics.nu_closed_form(q, 0.0) - expected))
        pipe = teleport(ProtocolConfig.from_params(q, ETA_DEFAULT, 0.0, PHI_DEFAULT)).nu_pipeline
        err_pipe = max(err_pipe, abs(pipe - metrics.nu_closed_form(q, 0.0)))
    disc = nu_discrepancy()
    return [
        _hard("nu-closed-form-s0", float(err_cf), 1e-12, 0.0),
        _hard("nu-pipeline-s0", float(err_pipe), 1e-10, 0.0),
        Check("eq14-consistency", INFO, float(disc), 0.0, None, "max |pipeline nu - closed-form nu| over q,r in {0..2}"),
    ]


def check_fidelity() -> list[Check]:
    f = teleport(ProtocolConfig.from_params(0.0, ETA_DEFAULT, 0.0, PHI_DEFAULT)).fidelity
    expected = 1 / (math.sqrt(16 + 9 / 4) - 1.5)
    rows = [row for row in sweep(SweepGrid()) if row.q == 0.0]
    best = max(row.fidelity for row in rows)
    return [
        _hard("fidelity-anchor", abs(f - expected), 1e-9, expected),
        Check(
            "fidelity-max-q0",
            INFO,
            best,
            0.38,
            0.05,
            f"deviation {best - 0.38:+.5f}, within +-0.05: {abs(best - 0.38) <= 0.05}",
        ),
    ]


def check_tradeoff() -> list[Check]:
    worst = 0.0
    qs = [0.25 * j for j in range(9)]
    for r in (0.0, 0.5, 1.0):
        reps = [teleport(ProtocolConfig.from_params(q, ETA_DEFAULT, r, PHI_DEFAULT)) for q in qs]
        ens = np.array([rep.log_negativity for rep in reps])
        fids = np.array([rep.fidelity for rep in reps])
        worst = max(worst, float(np.max(ens[:-1] - ens[1:])), float(np.max(fids[1:] - fids[:-1])))
    worst = max(worst, 0.0)
    return [_hard("tradeoff", worst, 1e-12, 0.0, ok=worst <= 1e-12, detail="largest monotonicity violation")]


def check_sweep_determinism() -> list[Check]:
    grid = SweepGrid()
    t0 = time.perf_counter()
    first = to_csv(sweep(grid))
    elapsed = time.perf_counter() - t0
    second = to_csv(sweep(grid, jobs=4))
    same = first == second
    n_rows = first.count("\n") - 1
    return [
        Check(
            "sweep-determinism",
            PASS if same and elapsed < 5.0 and n_rows == 41 * 41 else FAIL,
            "identical" if same else "differs",
            "identical",
            None,
            f"{n_rows} rows, 41x41 grid under 5 s: {elapsed < 5.0}",
        )
    ]


def check_invariants() -> list[Check]:
    out: list[Check] = []
    # symplectic invariance of the spectrum and LLUBO invariance of E_N
    sym_err, en_err, sp_err = 0.0, 0.0, 0.0
    for seed in range(50):
        s_loc = random_local_symplectic(seed, 2)
        sp_err = max(sp_err, np.max(np.abs(s_loc.matrix @ _omega(2) @ s_loc.T - _omega(2))))
        sigma = random_physical_cm(seed, 2)
        sym_err = max(sym_err, np.max(np.abs(metrics.symplectic_eigenvalues(apply(s_loc, sigma)) - metrics.symplectic_eigenvalues(sigma))))
        sigma_out = output_state(ProtocolConfig.from_params(0.25 * (seed % 9), ETA_DEFAULT, 0.0, PHI_DEFAULT))
        en_err = max(en_err, abs(metrics.log_negativity(apply(s_loc, sigma_out)) - metrics.log_negativity(sigma_out)))
    out.append(_hard("random-local-symplectic", float(sp_err), 1e-12, 0.0))
    out.append(_hard("spectrum-symplectic-invariance", float(sym_err), 1e-9, 0.0))
    out.append(_hard("log-negativity-local-invariance", float(en_err), 1e-9, 0.0))

    # sparsity, physicality (gain-corrected), decomposition
    sparse, unphysical, decomp = 0.0, 0, 0.0
    mixing = [(0, 1), (0, 3), (1, 2), (2, 3)]
    for q, eta, r, phi in itertools.product(GRID5, PHASES5[:3], GRID5, PHASES5[:3]):
        cfg = ProtocolConfig.from_params(q, eta, r, phi, Convention.GAIN_CORRECTED)
        sigma = output_state(cfg)
        sparse = max(sparse, max(abs(sigma[i, j]) for i, j in mixing))
        unphysical += not is_physical(sigma)
        prime, noise = decompose_output(sigma, cfg)
        decomp = max(decomp, np.max(np.abs(prime + noise * np.eye(4) - sigma)) / max(1.0, np.max(np.abs(sigma))))
    out.append(_hard("output-sparsity", float(sparse), 1e-12, 0.0))
    out.append(Check("output-physicality", PASS if unphysical == 0 else FAIL, unphysical, 0, None, "gain-corrected outputs failing sigma + i Omega >= 0"))
    out.append(_hard("noise-decomposition", float(decomp), 1e-12, 0.0))

    # monotone additive noise
    def noise(a: AmplifierSpec) -> float:
        return 2 * (a.c + a.k * a.s)

    rs = np.linspace(0, 2, 41)
    up = [noise(AmplifierSpec(r, PHI_DEFAULT)) for r in rs]
    down = [noise(AmplifierSpec(r, -math.pi / 4)) for r in rs]
    mono = bool(np.all(np.diff(up) > 0) and np.all(np.diff(down) < 0))
    out.append(Check("monotone-noise", PASS if mono else FAIL, mono, True))

    # LLUBO maps sigma' to the source state; involution
    llubo_err = max(
        np.max(np.abs(llubo_equivalent(llubo_equivalent(source_state(SourceSpec(q, e)))) - source_state(SourceSpec(q, e))))
        for q, e in itertools.product(GRID5, PHASES5)
    )
    out.append(_hard("llubo-involution", float(llubo_err), 1e-15, 0.0, ok=llubo_err == 0.0))

    # constructors are pure and physical
    det_err, bad = 0.0, 0
    for sq, ph in itertools.product(GRID5, PHASES5):
        for sigma in (two_mode_squeezed(AmplifierSpec(sq, ph)), source_state(SourceSpec(sq, ph))):
            det_err = max(det_err, abs(np.linalg.det(sigma) - 1))
            bad += not is_physical(sigma)
    out.append(_hard("constructor-purity", float(det_err), 1e-9, 1.0, ok=det_err < 1e-9 and bad == 0))
    return out


def check_b2_ordering(resolution: dict) -> list[Check]:
    resolved = resolution["resolved"]
    expected = ",".join(map(str, B2_INPUT_MODES))
    alt = ",".join(map(str, B2_ALTERNATE_MODES))
    return [
        Check("b2-ordering-symbolic", PASS if resolved == expected else FAIL, resolved, expected, None, "exact symbolic match to the closed form"),
        Check("b2-alternate-ordering", INFO, resolution["candidates"].get(alt), "split-noise-variant", None, f"slots ({alt})"),
    ]


def run_suite() -> VerifyReport:
    """Run every acceptance check and module invariant.

    Failures are recorded in the report, never raised.
    """
    resolution = resolve_b2_ordering()
    groups = [
        check_constructors,
        check_transforms,
        check_pipeline,
        check_tan_limit,
        check_ideal_limit,
        check_spectra,
        check_entanglement_threshold,
        check_nu_closed_form,
        check_fidelity,
        check_tradeoff,
        check_sweep_determinism,
        check_invariants,
        lambda: check_b2_ordering(resolution),
    ]
    checks: list[Check] = []
    for group in groups:
        try:
            checks.extend(group())
        except Exception as exc:  # a crashing check is a failed check
            name = getattr(group, "__name__", "check")
            checks.append(Check(name, FAIL, None, None, None, f"{type(exc).__name__}: {exc}"))
    checks.sort(key=lambda c: c.name)
    names = [c.name for c in checks]
    assert len(names) == len(set(names)), "duplicate check names"
    resolved = resolution["resolved"]
    return VerifyReport(
        checks=checks,
        resolved_b2_ordering=[int(m) for m in resolved.split(",")] if resolved else None,
        b2_candidates=resolution["candidates"],
        eq11_vs_eq14_discrepancy=nu_discrepancy(),
    )
