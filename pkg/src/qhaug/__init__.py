"""Quantum harmonic analysis on the cyclic group, for data operators.

Signals of length N live on Z_N, operators are N x N matrices, and the
two convolutions (operator with operator, lattice function with
operator) carry harmonic analysis from functions to operators. On top
of that calculus the package builds time-frequency data augmentation:
averaging a data operator over a phase-space mask equals augmenting the
dataset itself with time-frequency shifts, and the augmented principal
components are measurably smoother.

The public surface re-exports the main operations; see the module
docstrings for conventions (there is exactly one phase convention, in
tfcore.ambiguity_phase, and everything else follows from it).
"""

__version__ = "0.1.0"

from .tfcore import (
    ambiguity_phase,
    cross_ambiguity,
    cross_wigner,
    gaussian_window,
    lattice_weight,
    parity,
    shift_matrix,
    spectrogram,
    stft,
    symplectic_dft,
    tf_shift,
)
from .operators import (
    EigenDecomposition,
    basis_data_operator,
    data_operator,
    eigendecomposition,
    fn_op_convolve,
    fourier_wigner,
    hermitian_defect,
    op_op_convolve,
    op_parity_conj,
    op_translate,
    rank_one,
    trace,
    weyl_quantize,
    weyl_symbol,
)
from .augment import (
    JitterConfig,
    augment_dataset,
    augmented_operator,
    cnn_first_layer,
    disc_mask,
    jitter_dataset,
    localization_operator,
    make_omega,
    mask_points,
    rectangle_mask,
    total_correlation,
    within_radius,
    wrap_norm_grid,
    wrap_norm_sq_grid,
)
from .metrics import (
    MPQ_GRID,
    SmoothnessComparison,
    SmoothnessReport,
    compare_smoothness,
    m1_norm,
    mpq_norm,
    signal_report,
    tail_energy,
)
from .checks import GATE_TOLERANCE, IdentityReport, identity_suite, worst_error
from .audio import WavFormatError, ingest_wav, segment_frames, write_wav
from .experiments import (
    ExperimentConfig,
    RunSummary,
    run_audio_pca,
    run_qha_check,
    run_synthetic_gaussian,
)
from .artifacts import emit_artifacts, spectrogram_to_pgm

__all__ = [
    "__version__",
    "ambiguity_phase",
    "cross_ambiguity",
    "cross_wigner",
    "gaussian_window",
    "lattice_weight",
    "parity",
    "shift_matrix",
    "spectrogram",
    "stft",
    "symplectic_dft",
    "tf_shift",
    "EigenDecomposition",
    "basis_data_operator",
    "data_operator",
    "eigendecomposition",
    "fn_op_convolve",
    "fourier_wigner",
    "hermitian_defect",
    "op_op_convolve",
    "op_parity_conj",
    "op_translate",
    "rank_one",
    "trace",
    "weyl_quantize",
    "weyl_symbol",
    "JitterConfig",
    "augment_dataset",
    "augmented_operator",
    "cnn_first_layer",
    "disc_mask",
    "jitter_dataset",
    "localization_operator",
    "make_omega",
    "mask_points",
    "rectangle_mask",
    "total_correlation",
    "within_radius",
    "wrap_norm_grid",
    "wrap_norm_sq_grid",
    "MPQ_GRID",
    "SmoothnessComparison",
    "SmoothnessReport",
    "compare_smoothness",
    "m1_norm",
    "mpq_norm",
    "signal_report",
    "tail_energy",
    "GATE_TOLERANCE",
    "IdentityReport",
    "identity_suite",
    "worst_error",
    "WavFormatError",
    "ingest_wav",
    "segment_frames",
    "write_wav",
    "ExperimentConfig",
    "RunSummary",
    "run_audio_pca",
    "run_qha_check",
    "run_synthetic_gaussian",
    "emit_artifacts",
    "spectrogram_to_pgm",
]
