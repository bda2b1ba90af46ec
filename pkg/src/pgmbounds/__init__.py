"""
Success probability of the pretty good measurement, lower bounds on state
distinguishability, and random-matrix estimates for random ensembles.
"""
from .bounds import (
    BoundReport,
    MixedBoundReport,
    bound_report,
    constant_overlap_exact,
    constant_overlap_gram,
    eigenvalue_bound,
    inner_product_bound,
    mixed_bound_report,
    mixed_fidelity_bound,
    naive_mixed_bound,
    realize_gram,
    tangent_parabola,
)
from .ensemble import (
    EnsembleError,
    EnsembleFormatError,
    MixedEnsemble,
    PureEnsemble,
    density,
    deserialize,
    gram,
    load,
    make_mixed_ensemble,
    make_pure_ensemble,
    save,
    serialize,
    spectral_refinement,
    state_matrix,
    to_mixed,
)
from .pgm import (
    Povm,
    helstrom,
    helstrom_two_state,
    pgm_measurement,
    pgm_success,
    pgm_success_mixed,
    pgm_success_pure,
    povm_success,
    validate_povm,
)
from .spectral import (
    SpectralDecomposition,
    eig_hermitian,
    fidelity,
    inv_sqrt_on_support,
    matrix_sqrt,
    purity,
    trace_norm,
)

__version__ = "0.1.0"
