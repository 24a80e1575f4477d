"""Response functions for harmonic vibronic models via squeezed coherent states.

The package propagates multimode squeezed coherent states through
piecewise-constant vibrational Hamiltonians (state-dependent frequencies,
displacements, Duschinsky rotations) and assembles electronic x vibrational
response functions for multidimensional spectroscopy, verified against a
truncated Fock-space oracle.
"""

from .errors import (
    DimensionMismatch,
    IndexOutOfRange,
    NoConvergence,
    NonHermitian,
    NonSymmetric,
    NotOrthogonal,
    ReconstructionFailure,
    ReflectionInput,
    RespondError,
    SchemaError,
    SingularMatrix,
    SpectralOverflow,
    SqueezeOverflow,
    TruncationTooSmall,
    UnsupportedPathway,
    UnsupportedSides,
)
from .fock import (
    BogoliubovMap,
    FockConfig,
    PathwayOracle,
    build_hamiltonian,
    oracle_response,
    oracle_state,
)
from .matfun import (
    TakagiFactorization,
    matrix_from_tangent,
    orthogonal_log,
    sech_from_tangent,
    takagi,
    tangent_from_matrix,
)
from .model import (
    VibronicModel,
    load_model,
    model_from_dict,
    model_to_dict,
    save_model,
    single_mode_model,
    two_mode_model,
)
from .propagation import (
    IntervalFactorization,
    effective_ket_general_initial,
    factorize_interval_multi,
    factorize_interval_single,
    propagate_pathway,
    propagate_pathway_single,
    step_interval_multi,
    step_interval_single,
)
from .response import (
    PathwaySpec,
    RemappedTimes,
    ResponseGrid,
    electronic_response,
    general_initial_response,
    remap_times,
    scan_grid,
    total_response,
    vibrational_response,
)
from .states import (
    MultiModeState,
    SingleModeState,
    displace_multi,
    displace_single,
    rotate_multi,
    rotate_single,
    squeeze_multi,
    squeeze_single,
    vacuum_multi,
    vacuum_overlap_multi,
    vacuum_overlap_single,
    vacuum_single,
)

__version__ = "0.1.0"

__all__ = [name for name in dir() if not name.startswith("_")]
