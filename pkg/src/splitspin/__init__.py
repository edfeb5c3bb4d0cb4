"""Multiparameter quantum metrology with spatially split spin ensembles.

Closed-form moments and sensitivity matrices for split squeezed and split
Dicke states, eigenvalue witnesses for particle and genuine multimode
entanglement, and an exact small-scale simulation that certifies every
closed form.
"""

from . import closed_forms, errors, experiments, linalg, matrices, oracle, states, witnesses
from .linalg import RankOnePlusDiag, SymMatrix, eig_sym, invert_spd, is_psd, rank1_diag_eigs
from .matrices import (
    EstimationConfig,
    LinearCombination,
    MatrixKind,
    TaggedMatrix,
    apply_pi_flips,
    combo_variance,
    dicke_moment_matrix,
    dicke_optimal_observable,
    estimator_covariance,
    mode_separability_matrix,
    moment_matrix,
    qfi_gain_matrix,
    qfi_mode_gain_matrix,
    squeezing_matrix,
)
from .states import (
    DickeParams,
    Direction,
    MomentSet,
    OatParams,
    SplitConfig,
    dicke_operator_tables,
    optimal_directions,
    split_dicke_quadratic_moments,
    split_dicke_spin_moments,
    split_squeezed_moments,
    squeezing_angle,
    twist_coeffs,
)
from .witnesses import (
    WitnessReport,
    hierarchy_check,
    k_producibility_witness,
    qfi_depth_witness,
    shot_noise_witness,
    witness_report,
)

__version__ = "0.1.0"
