"""Two-qubit entanglement measures (concurrence, negativity, binegativity),
state families, decoherence channels, and Haar twirling, with every closed
form cross-checked against a brute-force spectral oracle."""

from .channels import (
    ChannelConfig,
    ClosedFormReport,
    KrausSet,
    apply,
    closed_form_measures,
    closed_form_report,
    closed_form_state,
    kraus,
)
from .measures import (
    MeasureTriple,
    NegativeEigenstate,
    PPTError,
    binegativity_closed,
    binegativity_spectral,
    concurrence,
    ginibre_state,
    measure_triple,
    negative_eigvec_state,
    negativity,
    xstate_measures,
)
from .qmat import (
    ConsistencyError,
    NegativePart,
    SpectralDecomposition,
    ValidationError,
    hermitian_eig,
    kron,
    negative_part,
    partial_transpose,
    trace_norm,
    validate_density_matrix,
)
from .states import (
    bell_diagonal,
    bell_diagonal_measures,
    ew,
    ew_measures,
    gmem,
    gmem_measures,
    load_state_file,
    mem,
    mem_measures,
    state_from_dict,
    werner,
    werner_measures,
)
from .twirl import (
    MonotonicityReport,
    TwirlResult,
    analytic_twirl,
    haar_unitary_2,
    mc_twirl,
    monotonicity_experiment,
)

__version__ = "0.1.0"

__all__ = [
    "ChannelConfig",
    "ClosedFormReport",
    "ConsistencyError",
    "KrausSet",
    "MeasureTriple",
    "MonotonicityReport",
    "NegativeEigenstate",
    "NegativePart",
    "PPTError",
    "SpectralDecomposition",
    "TwirlResult",
    "ValidationError",
    "analytic_twirl",
    "apply",
    "bell_diagonal",
    "bell_diagonal_measures",
    "binegativity_closed",
    "binegativity_spectral",
    "closed_form_measures",
    "closed_form_report",
    "closed_form_state",
    "concurrence",
    "ew",
    "ew_measures",
    "ginibre_state",
    "gmem",
    "gmem_measures",
    "haar_unitary_2",
    "hermitian_eig",
    "kraus",
    "kron",
    "load_state_file",
    "mc_twirl",
    "measure_triple",
    "mem",
    "mem_measures",
    "monotonicity_experiment",
    "negative_eigvec_state",
    "negative_part",
    "negativity",
    "partial_transpose",
    "state_from_dict",
    "trace_norm",
    "validate_density_matrix",
    "werner",
    "werner_measures",
    "xstate_measures",
]
