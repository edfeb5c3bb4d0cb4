"""Rank-one closed forms of the sensitivity matrices and their eigenvalues.

Every matrix here is of the form ``scale * w w^T + diag(d)`` and is exposed
both as a :class:`~splitspin.linalg.RankOnePlusDiag` constructor and, where
a compact expression exists, as a scalar eigenvalue function. The scalar
functions accept real-valued particle numbers so that averaged local
strategies (N/M particles per mode) can be evaluated; log-space variants
keep the extreme dynamic range of the polarization decay out of the
arithmetic when optimizing over the twisting phase.
"""

from __future__ import annotations

import math

import numpy as np

from .errors import DomainError
from .linalg import RankOnePlusDiag
from .states import DickeParams, cos_power, polarization_decay, twist_coeffs

__all__ = [
    "xi2_pn",
    "chi_inv2_pn",
    "xi2_ms_pn",
    "xi2_npn",
    "chi_inv2_npn",
    "xi2_ms_npn",
    "chi_inv2_split_dicke",
    "chi_inv2_ms_split_dicke",
    "lambda_min_xi2_pn",
    "lambda_max_xi2_pn",
    "lambda_min_xi2_npn",
    "lambda_max_xi2_npn",
    "lambda_max_chi_inv2_pn",
    "lambda_max_chi_inv2_npn",
    "lambda_min_xi2_ms_equal",
    "lambda_max_chi_inv2_ms_equal",
    "lambda_max_chi_inv2_dicke",
    "lambda_max_chi_inv2_ms_dicke",
    "log_lambda_min_xi2",
    "log_lambda_min_xi2_ms_equal",
    "single_mode_wineland",
]


def _check_probs(p) -> np.ndarray:
    p = np.asarray(p, dtype=float)
    if np.any(p <= 0) or abs(p.sum() - 1.0) > 1e-12:
        raise DomainError("probabilities must be positive and sum to 1")
    return p


def _check_counts(counts) -> np.ndarray:
    c = np.asarray(counts, dtype=float)
    if np.any(c < 1):
        raise DomainError("mode counts must be >= 1")
    return c


# ---------------------------------------------------------------------------
# split squeezed state with partition noise
# ---------------------------------------------------------------------------

def xi2_pn(n: float, mu: float, p) -> RankOnePlusDiag:
    """Squeezing matrix ((N-1) f^- / c_N) v v^T + (1/c_N) 1, v_k = sqrt(p_k)."""
    p = _check_probs(p)
    fm, _ = twist_coeffs(n, mu)
    c = polarization_decay(n, mu)
    return RankOnePlusDiag((n - 1.0) * fm / c, np.sqrt(p), np.full(p.size, 1.0 / c))


def chi_inv2_pn(n: float, mu: float, p) -> RankOnePlusDiag:
    """Shot-noise-normalized Fisher matrix (N-1) f^+ v v^T + 1."""
    p = _check_probs(p)
    _, fp = twist_coeffs(n, mu)
    return RankOnePlusDiag((n - 1.0) * fp, np.sqrt(p), np.ones(p.size))


def xi2_ms_pn(n: float, mu: float, p) -> RankOnePlusDiag:
    """Mode-separability squeezing matrix for an arbitrary split.

    A_N ((N-1) f^- / c_N) w w^T + diag(D) with
    A_N = 1 + (N-1) f^+ sum_l p_l^2,
    w_k = sqrt(p_k (1 + p_k (N-1) f^+) / A_N),
    D_k = (1 + p_k (N-1) f^+) / c_N.
    """
    p = _check_probs(p)
    fm, fp = twist_coeffs(n, mu)
    c = polarization_decay(n, mu)
    a_n = 1.0 + (n - 1.0) * fp * float(np.sum(p * p))
    w = np.sqrt(p * (1.0 + p * (n - 1.0) * fp) / a_n)
    d = (1.0 + p * (n - 1.0) * fp) / c
    return RankOnePlusDiag(a_n * (n - 1.0) * fm / c, w, d)


def lambda_min_xi2_pn(n: float, mu: float) -> float:
    """((N-1) f^- + 1) / c_N: collective squeezing of the split state.

    Diverges (returns inf) once the polarization decay underflows.
    """
    fm, _ = twist_coeffs(n, mu)
    c = polarization_decay(n, mu)
    return ((n - 1.0) * fm + 1.0) / c if c > 0.0 else math.inf


def lambda_max_xi2_pn(n: float, mu: float) -> float:
    c = polarization_decay(n, mu)
    return 1.0 / c if c > 0.0 else math.inf


def lambda_max_chi_inv2_pn(n: float, mu: float) -> float:
    """(N-1) f^+ + 1: maximal quantum gain detectable by any measurement."""
    _, fp = twist_coeffs(n, mu)
    return (n - 1.0) * fp + 1.0


# ---------------------------------------------------------------------------
# split squeezed state without partition noise
# ---------------------------------------------------------------------------

def xi2_npn(n_total: int, mu: float, counts) -> RankOnePlusDiag:
    """(N f^- / c_N) v v^T + ((1 - f^-)/c_N) 1, v_k = sqrt(N_k / N)."""
    c_arr = _check_counts(counts)
    n = float(n_total)
    fm, _ = twist_coeffs(n, mu)
    c = polarization_decay(n, mu)
    v = np.sqrt(c_arr / n)
    return RankOnePlusDiag(n * fm / c, v, np.full(v.size, (1.0 - fm) / c))


def chi_inv2_npn(n_total: int, mu: float, counts) -> RankOnePlusDiag:
    """N f^+ v v^T + (1 - f^+) 1."""
    c_arr = _check_counts(counts)
    n = float(n_total)
    _, fp = twist_coeffs(n, mu)
    v = np.sqrt(c_arr / n)
    return RankOnePlusDiag(n * fp, v, np.full(v.size, 1.0 - fp))


def xi2_ms_npn(n_total: int, mu: float, counts) -> RankOnePlusDiag:
    """Mode-separability squeezing matrix for deterministic counts.

    A'_N (f^- / c_N) w' w'^T + diag(D') with
    A'_N = N + f^+ sum_l N_l (N_l - 1),
    w'_k = sqrt((N_k + N_k (N_k - 1) f^+) / A'_N),
    D'_k = (1 - f^-)(1 + (N_k - 1) f^+) / c_N.
    """
    c_arr = _check_counts(counts)
    n = float(n_total)
    fm, fp = twist_coeffs(n, mu)
    c = polarization_decay(n, mu)
    a_n = n + fp * float(np.sum(c_arr * (c_arr - 1.0)))
    w = np.sqrt((c_arr + c_arr * (c_arr - 1.0) * fp) / a_n)
    d = (1.0 - fm) * (1.0 + (c_arr - 1.0) * fp) / c
    return RankOnePlusDiag(a_n * fm / c, w, d)


def lambda_min_xi2_npn(n: float, mu: float) -> float:
    """(N f^- + 1 - f^-) / c_N, written as the rank-one spectrum gives it."""
    fm, _ = twist_coeffs(n, mu)
    c = polarization_decay(n, mu)
    if c == 0.0:
        return math.inf
    return (n * fm) / c + (1.0 - fm) / c


def lambda_max_xi2_npn(n: float, mu: float) -> float:
    fm, _ = twist_coeffs(n, mu)
    c = polarization_decay(n, mu)
    return (1.0 - fm) / c if c > 0.0 else math.inf


def lambda_max_chi_inv2_npn(n: float, mu: float) -> float:
    _, fp = twist_coeffs(n, mu)
    return n * fp + (1.0 - fp)


# ---------------------------------------------------------------------------
# equal-split eigenvalues of the mode-separability matrices
# ---------------------------------------------------------------------------

def lambda_min_xi2_ms_equal(n: float, modes: int, mu: float,
                            partition_noise: bool = True) -> float:
    """Minimal mode-separability eigenvalue for p_k = 1/M (or N_k = N/M).

    With partition noise the enhancement factor is (1 + (N-1) f^+ / M);
    without it (1 + (N-M) f^+ / M).
    """
    fm, fp = twist_coeffs(n, mu)
    c = polarization_decay(n, mu)
    if c == 0.0:
        return math.inf
    base = ((n - 1.0) * fm + 1.0) / c
    excess = (n - 1.0) if partition_noise else (n - modes)
    return base * (1.0 + excess / modes * fp)


def lambda_max_chi_inv2_ms_equal(n: float, modes: int, mu: float,
                                 partition_noise: bool = True) -> float:
    """Maximal eigenvalue of the mode-separability Fisher matrix, p_k = 1/M."""
    _, fp = twist_coeffs(n, mu)
    if partition_noise:
        return modes * ((n - 1.0) * fp + 1.0) / ((n - 1.0) * fp + modes)
    return modes * ((n - 1.0) * fp + 1.0) / ((n - modes) * fp + modes)


# ---------------------------------------------------------------------------
# split Dicke states
# ---------------------------------------------------------------------------

def chi_inv2_split_dicke(dicke: DickeParams, p) -> RankOnePlusDiag:
    """((j^2 - m^2)/j) v v^T + 1 with v_k = sqrt(p_k)."""
    p = _check_probs(p)
    j, m = dicke.j, dicke.m
    return RankOnePlusDiag((j * j - m * m) / j, np.sqrt(p), np.ones(p.size))


def chi_inv2_ms_split_dicke(dicke: DickeParams, p) -> RankOnePlusDiag:
    """(j^2 - m^2) u u^T + diag(F) with
    u_k = sqrt(p_k / ((j^2-m^2) p_k + j)), F_k = j / ((j^2-m^2) p_k + j)."""
    p = _check_probs(p)
    j, m = dicke.j, dicke.m
    jm2 = j * j - m * m
    denom = jm2 * p + j
    return RankOnePlusDiag(jm2, np.sqrt(p / denom), j / denom)


def lambda_max_chi_inv2_dicke(dicke: DickeParams) -> float:
    """(j(j+1) - m^2)/j: full quantum gain of the state before splitting."""
    j, m = dicke.j, dicke.m
    return (j * (j + 1.0) - m * m) / j


def lambda_max_chi_inv2_ms_dicke(dicke: DickeParams, modes: int) -> float:
    """(j(j+1) - m^2) / ((j^2 - m^2)/M + j) for a uniform split."""
    j, m = dicke.j, dicke.m
    return (j * (j + 1.0) - m * m) / ((j * j - m * m) / modes + j)


# ---------------------------------------------------------------------------
# log-space objectives (safe across the full dynamic range of c_N)
# ---------------------------------------------------------------------------

def _log_polarization_decay(n: float, mu: float) -> float:
    c = abs(math.cos(mu / 2.0))
    if c == 0.0:
        return -math.inf
    return (2.0 * n - 2.0) * math.log(c)


def log_lambda_min_xi2(n: float, mu: float) -> float:
    """log of the collective squeezing; avoids underflow of c_N at large N."""
    fm, _ = twist_coeffs(n, mu)
    num = (n - 1.0) * fm + 1.0
    if num <= 0.0:
        # The exact value is strictly positive; reaching here means the
        # numerator was destroyed by cancellation far beyond the optimum.
        return math.inf
    return math.log(num) - _log_polarization_decay(n, mu)


def log_lambda_min_xi2_ms_equal(n: float, modes: int, mu: float,
                                partition_noise: bool = True) -> float:
    fm, fp = twist_coeffs(n, mu)
    num = (n - 1.0) * fm + 1.0
    excess = (n - 1.0) if partition_noise else (n - modes)
    factor = 1.0 + excess / modes * fp
    if num <= 0.0 or factor <= 0.0:
        return math.inf
    return math.log(num) + math.log(factor) - _log_polarization_decay(n, mu)


def single_mode_wineland(n: float, mu: float) -> float:
    """Wineland squeezing ratio N Var(J_s) / <J_x>^2 of the unsplit ensemble,
    evaluated from the raw moments rather than the eigenvalue formula."""
    fm, _ = twist_coeffs(n, mu)
    var_s = n / 4.0 + n * (n - 1.0) / 4.0 * fm
    mean_x = n / 2.0 * cos_power(mu / 2.0, n - 1.0)
    if mean_x == 0.0:
        raise DomainError("polarization vanished; squeezing ratio undefined")
    return n * var_s / (mean_x * mean_x)
