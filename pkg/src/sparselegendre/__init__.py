"""Sublinear-time recovery of sparse Legendre and Chebyshev expansions.

Given a function f: [-1, 1] -> R dominated by s unknown Legendre (or
Chebyshev) modes of degree up to N, this package finds the dominant degrees
and estimates their coefficients in time polynomial in s and log N: the
function is resampled onto the unit circle (or a Bernstein ellipse), a
randomized sparse Fourier transform locates the energetic frequencies, and
a Chebyshev-measure random sampling matrix with conjugate-gradient least
squares pins down the coefficients.
"""

from .bench import (
    ExperimentSummary,
    TrialRecord,
    TrialSpec,
    box_muller,
    gen_noisy_trial,
    gen_trial_poly,
    l2_error_on_support,
    run_experiment,
)
from .cgls import CgResult, LsqProblem, cg_normal_solve
from .fourier import (
    FourierSparse,
    PeriodicSampler,
    SftOutcome,
    SftParams,
    dft_dense,
    fft_radix2,
    sft,
    top_s_oracle,
)
from .orthopoly import (
    Basis,
    SparseExpansion,
    chebyshev_eval,
    eval_expansion,
    fourier_to_legendre_weight,
    legendre_eval,
    legendre_row,
)
from .recovery import (
    RecoveryConfig,
    RecoveryDiagnostics,
    RecoveryFailure,
    RecoveryResult,
    SupportIdentification,
    estimate_coefficients,
    expand_candidates,
    identify_support,
    recover_sparse_chebyshev,
    recover_sparse_legendre,
)
from .resample import (
    ResampleMap,
    SupportProfile,
    apply_inverse,
    dense_legendre_transform,
    forward_entry,
    forward_matrix,
    inverse_diag,
    inverse_entry,
    inverse_matrix,
    resampled_sample,
    right_distance,
)
from .sampling import (
    SamplePlan,
    coefficient_scale,
    default_sample_count,
    sample_chebyshev_points,
    sampling_matrix,
    sampling_row,
    submatrix_condition,
    weighted_samples,
)

__version__ = "0.1.0"
