"""Covariance-matrix simulation of continuous-variable teleportation of two-mode squeezed states."""

from .gaussian import (
    AmplifierSpec,
    SourceSpec,
    direct_sum,
    is_physical,
    permute_modes,
    source_state,
    symplectic_form,
    two_mode_squeezed,
    vacuum,
)
from .metrics import (
    fidelity,
    log_negativity,
    nu_closed_form,
    partial_transpose,
    symplectic_eigenvalues,
)
from .protocol import (
    ProtocolConfig,
    TeleportReport,
    decompose_output,
    ideal_limit_check,
    llubo_equivalent,
    output_closed_form,
    output_state,
    shared_four_mode,
    tan_limit_check,
    teleport,
)
from .transforms import (
    Convention,
    LinearTransform,
    apply,
    beam_splitter_B1,
    beam_splitter_B2,
    composite,
    gain_matrix_U,
    measurement_selector_K,
)

__version__ = "0.1.0"
