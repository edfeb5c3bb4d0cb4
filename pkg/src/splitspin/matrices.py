"""Sensitivity and squeezing matrices built from moment data.

Given a :class:`~splitspin.states.MomentSet` this module assembles the
moment matrix of the method-of-moments estimator, the estimator covariance,
the multiparameter squeezing matrix and its mode-separability variant, and
the pure-state Fisher-matrix analogues used to gauge measurement quality.
"""

from __future__ import annotations

import enum
import math
from dataclasses import dataclass

import numpy as np

from .errors import (
    DomainError,
    ImpureStateUnsupported,
    SingularMoment,
    VanishingPolarization,
    ZeroGeneratorVariance,
)
from .linalg import SymMatrix, eig_sym, invert_spd, pinv_psd
from .states import (
    DICKE_FAMILY_4,
    DickeParams,
    MomentSet,
    SplitConfig,
    dicke_operator_tables,
)

__all__ = [
    "MatrixKind",
    "TaggedMatrix",
    "EstimationConfig",
    "LinearCombination",
    "moment_matrix",
    "moment_matrix_from_blocks",
    "estimator_covariance",
    "combo_variance",
    "squeezing_matrix",
    "mode_separability_matrix",
    "qfi_gain_matrix",
    "qfi_mode_gain_matrix",
    "apply_pi_flips",
    "dicke_optimal_observable",
    "dicke_moment_matrix",
]

# Below this magnitude a commutator denominator counts as vanished.
_POLARIZATION_TOL = 1e-14
_GENERATOR_VAR_TOL = 1e-16


class MatrixKind(enum.Enum):
    XI2 = "xi2"
    XI2_MS = "xi2_ms"
    CHI_INV2 = "chi_inv2"
    CHI_INV2_MS = "chi_inv2_ms"
    MOMENT = "moment"
    SIGMA = "sigma"
    GAMMA = "gamma"
    COMMUTATOR = "commutator"


@dataclass(frozen=True)
class TaggedMatrix:
    """A sensitivity matrix plus what it is and where it came from."""

    kind: MatrixKind
    matrix: SymMatrix
    provenance: str = "from_moments"  # closed_form | from_moments | from_oracle

    @property
    def dim(self) -> int:
        return self.matrix.dim

    @property
    def array(self) -> np.ndarray:
        return self.matrix.array

    def eig(self):
        return eig_sym(self.matrix)

    def lambda_min(self) -> float:
        return self.eig().lambda_min

    def lambda_max(self) -> float:
        return self.eig().lambda_max


@dataclass(frozen=True)
class EstimationConfig:
    """Repetition count and the shot-noise diagonal diag(N_1, ..., N_M)."""

    repetitions: int
    shot_noise_diag: tuple

    def __post_init__(self):
        if self.repetitions < 1:
            raise DomainError("repetitions must be >= 1")
        diag = tuple(float(x) for x in self.shot_noise_diag)
        if any(x <= 0 for x in diag):
            raise DomainError("shot-noise particle numbers must be positive")
        object.__setattr__(self, "shot_noise_diag", diag)

    @classmethod
    def for_split(cls, cfg: SplitConfig, repetitions: int = 1) -> "EstimationConfig":
        return cls(repetitions, tuple(cfg.mean_counts()))


@dataclass(frozen=True)
class LinearCombination:
    """Coefficients n of a parameter combination n^T theta."""

    coefficients: np.ndarray

    def __post_init__(self):
        c = np.asarray(self.coefficients, dtype=float)
        if c.ndim != 1 or c.size < 1:
            raise DomainError("coefficients must form a nonempty vector")
        c = c.copy()
        c.setflags(write=False)
        object.__setattr__(self, "coefficients", c)

    def require_normalized(self) -> None:
        if abs(np.linalg.norm(self.coefficients) - 1.0) > 1e-12:
            raise DomainError("coefficient vector must have unit norm")


# ---------------------------------------------------------------------------
# moment matrix and estimator covariance
# ---------------------------------------------------------------------------

def moment_matrix_from_blocks(comm: np.ndarray, gamma: SymMatrix,
                              use_pinv: bool = False) -> SymMatrix:
    """C Gamma^{-1} C^T for a (possibly rectangular) commutator block C.

    ``use_pinv`` restricts the inversion to the numerically nonzero
    eigenspace of Gamma, which extends the sensitivity to observable
    families that are linearly dependent on the given state; the rows of C
    must then lie in the range of Gamma for the result to be meaningful.
    """
    inv = pinv_psd(gamma) if use_pinv else invert_spd(gamma).array
    m = comm @ inv @ comm.T
    return SymMatrix((m + m.T) / 2.0)


def moment_matrix(ms: MomentSet, use_pinv: bool = False) -> TaggedMatrix:
    """Moment matrix of the method-of-moments estimator for ``ms``."""
    mat = moment_matrix_from_blocks(ms.comm, ms.cov_ss, use_pinv=use_pinv)
    return TaggedMatrix(MatrixKind.MOMENT, mat)


def estimator_covariance(moment: TaggedMatrix, est: EstimationConfig) -> TaggedMatrix:
    """Estimator covariance (eta * M)^{-1}."""
    if moment.kind is not MatrixKind.MOMENT:
        raise DomainError("estimator covariance needs a MOMENT-kind matrix")
    dec = eig_sym(moment.matrix)
    lam = dec.eigenvalues
    if lam[0] <= 1e-12 * abs(lam[-1]) or lam[0] <= 0.0:
        raise SingularMoment("moment matrix is singular; estimator covariance diverges")
    scaled = SymMatrix(est.repetitions * moment.array)
    return TaggedMatrix(MatrixKind.SIGMA, invert_spd(scaled), moment.provenance)


def combo_variance(sigma: TaggedMatrix, n: LinearCombination) -> float:
    """n^T Sigma n: estimation variance of the combination n^T theta."""
    if sigma.dim != n.coefficients.size:
        raise DomainError("dimension mismatch between Sigma and coefficients")
    c = n.coefficients
    return float(c @ sigma.array @ c)


# ---------------------------------------------------------------------------
# squeezing matrices
# ---------------------------------------------------------------------------

def _comm_denominators(ms: MomentSet) -> np.ndarray:
    d = ms.comm_diag()
    if np.any(np.abs(d) < _POLARIZATION_TOL):
        raise VanishingPolarization(
            "a commutator denominator vanished; the squeezing ratio diverges"
        )
    return d


def squeezing_matrix(ms: MomentSet, est: EstimationConfig) -> TaggedMatrix:
    """Multiparameter squeezing matrix
    sqrt(N_k N_l) Cov(X_k, X_l) / (D_k D_l), D_k = -i<[J_{r_k}, X_k]>."""
    d = _comm_denominators(ms)
    n_k = np.asarray(est.shot_noise_diag)
    if n_k.size != ms.modes:
        raise DomainError("shot-noise diagonal must have one entry per mode")
    scale = np.sqrt(np.outer(n_k, n_k)) / np.outer(d, d)
    return TaggedMatrix(MatrixKind.XI2, SymMatrix(scale * ms.cov_ss.array))


def mode_separability_matrix(ms: MomentSet) -> TaggedMatrix:
    """Mode-separability squeezing matrix
    4 dJ_{r_k} dJ_{r_l} Cov(X_k, X_l) / (D_k D_l)."""
    d = _comm_denominators(ms)
    var_r = np.diag(ms.cov_rr.array)
    if np.any(var_r < _GENERATOR_VAR_TOL):
        raise ZeroGeneratorVariance("a generator variance vanished")
    dr = np.sqrt(var_r)
    scale = 4.0 * np.outer(dr, dr) / np.outer(d, d)
    return TaggedMatrix(MatrixKind.XI2_MS, SymMatrix(scale * ms.cov_ss.array))


def qfi_gain_matrix(ms: MomentSet, est: EstimationConfig,
                    pure_state: bool = False) -> TaggedMatrix:
    """Shot-noise-normalized quantum Fisher matrix of a pure state:
    4 Cov(J_{r_k}, J_{r_l}) / sqrt(N_k N_l).

    Only the pure-state identity F_Q = 4 Gamma_r is implemented; callers
    must assert purity explicitly.
    """
    if not pure_state:
        raise ImpureStateUnsupported("only pure states are supported; pass pure_state=True")
    n_k = np.asarray(est.shot_noise_diag)
    if n_k.size != ms.modes:
        raise DomainError("shot-noise diagonal must have one entry per mode")
    scale = 4.0 / np.sqrt(np.outer(n_k, n_k))
    return TaggedMatrix(MatrixKind.CHI_INV2, SymMatrix(scale * ms.cov_rr.array))


def qfi_mode_gain_matrix(ms: MomentSet, pure_state: bool = False) -> TaggedMatrix:
    """Generator correlation matrix Cov(J_{r_k}, J_{r_l}) / (dJ_{r_k} dJ_{r_l})
    of a pure state; has unit diagonal."""
    if not pure_state:
        raise ImpureStateUnsupported("only pure states are supported; pass pure_state=True")
    var_r = np.diag(ms.cov_rr.array)
    if np.any(var_r < _GENERATOR_VAR_TOL):
        raise ZeroGeneratorVariance("a generator variance vanished")
    dr = np.sqrt(var_r)
    return TaggedMatrix(MatrixKind.CHI_INV2_MS,
                        SymMatrix(ms.cov_rr.array / np.outer(dr, dr)))


def apply_pi_flips(ms: MomentSet, flips) -> MomentSet:
    """Local pi rotations about x in the flagged modes.

    A flipped mode reverses the sign of its covariance rows and columns in
    both direction blocks (diagonals unchanged) and leaves the mean spin
    alone; applying the same flip twice is the identity.
    """
    flips = np.asarray(flips, dtype=bool)
    if flips.shape != (ms.modes,):
        raise DomainError("need one flip flag per mode")
    signs = np.where(flips, -1.0, 1.0)
    conj = np.outer(signs, signs)
    return MomentSet(
        ms.mean_x.copy(),
        SymMatrix(conj * ms.cov_ss.array),
        SymMatrix(conj * ms.cov_rr.array),
        ms.comm * conj,
        dict(ms.labels) | {"pi_flips": tuple(bool(f) for f in flips)},
    )


# ---------------------------------------------------------------------------
# optimal quadratic observable for Dicke states
# ---------------------------------------------------------------------------

def dicke_optimal_observable(dicke: DickeParams, r) -> np.ndarray:
    """Coefficients of the optimal quadratic observable over the family
    (Jx, Jy, {Jx,Jz}/2, {Jy,Jz}/2) for a rotation axis r in the xy plane.

    Proportional to (-m r_y, -m r_x, r_y, r_x); normalized so the
    largest-magnitude coefficient equals one (positive one on ties).
    """
    r = np.asarray(r, dtype=float)
    if r.shape == (2,):
        r = np.array([r[0], r[1], 0.0])
    if r.shape != (3,) or abs(r[2]) > 1e-12:
        raise DomainError("rotation axis must lie in the xy plane")
    if abs(np.linalg.norm(r) - 1.0) > 1e-12:
        raise DomainError("rotation axis must have unit norm")
    m = dicke.m
    coeffs = np.array([-m * r[1], -m * r[0], r[1], r[0]])
    mags = np.abs(coeffs)
    top = mags == mags.max()
    anchor = float(np.max(coeffs[top]))
    if anchor == 0.0:
        anchor = float(coeffs[np.argmax(mags)])
    return coeffs / anchor + 0.0


def dicke_moment_matrix(dicke: DickeParams) -> SymMatrix:
    """Moment matrix of a single-mode Dicke state for rotations generated by
    (Jx, Jy) and the full quadratic observable family.

    At the poles m = +-j the family covariance is rank deficient (the
    quadratic observables become perfectly correlated with the linear ones),
    so the inversion falls back to the range-restricted pseudo-inverse; the
    commutator rows stay inside that range, which keeps the sensitivity
    well defined there.
    """
    cov, comm = dicke_operator_tables(dicke)
    fam = DICKE_FAMILY_4
    gamma = SymMatrix(np.array([[cov[(a, b)] for b in fam] for a in fam]))
    c = np.array([[comm[(g, b)] for b in fam] for g in ("Jx", "Jy")])
    use_pinv = abs(dicke.two_m) == dicke.two_j
    return moment_matrix_from_blocks(c, gamma, use_pinv=use_pinv)
