"""Dense real-symmetric matrix algebra for small sensitivity matrices.

All matrices in this package are tiny (M <= ~64 modes), real and symmetric.
This module provides eigendecomposition with a deterministic ordering and
sign convention, SPD inversion with a loud condition-number cutoff, a
positive-semidefiniteness test, and an analytic fast path for matrices of
the form ``scale * v v^T + diag(d)`` which covers every closed-form
sensitivity matrix produced by the rest of the package.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field

import numpy as np

from .errors import DegenerateSecular, NonFinite, SingularCovariance

# Relative asymmetry allowed before construction of a SymMatrix fails.
_SYM_TOL = 1e-12
# Condition-number cutoff for SPD inversion.
_SPD_CUTOFF = 1e-12


def _as_matrix(a) -> np.ndarray:
    arr = np.asarray(a, dtype=float)
    if arr.ndim != 2 or arr.shape[0] != arr.shape[1] or arr.shape[0] < 1:
        raise ValueError(f"expected a square matrix, got shape {arr.shape}")
    if not np.all(np.isfinite(arr)):
        raise NonFinite("matrix contains NaN or Inf entries")
    return arr


@dataclass(frozen=True)
class SymMatrix:
    """Immutable dense real symmetric matrix.

    Construction symmetrizes exactly via ``(A + A^T) / 2`` but rejects input
    whose asymmetry exceeds ``1e-12`` relative to its largest entry, so a
    genuinely non-symmetric matrix cannot slip through.
    """

    array: np.ndarray

    def __post_init__(self):
        arr = _as_matrix(self.array)
        scale = max(1.0, float(np.max(np.abs(arr))))
        if float(np.max(np.abs(arr - arr.T))) > _SYM_TOL * scale:
            raise ValueError("matrix is not symmetric")
        sym = (arr + arr.T) / 2.0
        sym.setflags(write=False)
        object.__setattr__(self, "array", sym)

    @property
    def dim(self) -> int:
        return self.array.shape[0]

    def __getitem__(self, idx):
        return self.array[idx]

    def norm(self) -> float:
        """Spectral-scale proxy: largest absolute entry times dimension."""
        return float(np.linalg.norm(self.array, 2))


@dataclass(frozen=True)
class EigenDecomposition:
    """Eigenvalues sorted ascending with orthonormal column eigenvectors."""

    eigenvalues: np.ndarray
    eigenvectors: np.ndarray

    @property
    def lambda_min(self) -> float:
        return float(self.eigenvalues[0])

    @property
    def lambda_max(self) -> float:
        return float(self.eigenvalues[-1])


def _fix_signs(vectors: np.ndarray) -> np.ndarray:
    """First component with magnitude above 1e-12 is made positive."""
    out = vectors.copy()
    for i in range(out.shape[1]):
        col = out[:, i]
        nz = np.nonzero(np.abs(col) > 1e-12)[0]
        if nz.size and col[nz[0]] < 0:
            out[:, i] = -col
    return out


def _make_decomposition(vals: np.ndarray, vecs: np.ndarray) -> EigenDecomposition:
    order = np.argsort(vals, kind="stable")
    vals = np.array(vals, dtype=float)[order]
    vecs = _fix_signs(np.array(vecs, dtype=float)[:, order])
    vals.setflags(write=False)
    vecs.setflags(write=False)
    return EigenDecomposition(vals, vecs)


def eig_sym(a: SymMatrix) -> EigenDecomposition:
    """Full spectrum of a real symmetric matrix, ascending and sign-fixed."""
    vals, vecs = np.linalg.eigh(a.array)
    return _make_decomposition(vals, vecs)


@dataclass(frozen=True)
class RankOnePlusDiag:
    """Matrix of the form ``scale * v v^T + diag(diagonal)``.

    ``v`` is stored as given (not normalized); the reconstruction
    ``to_sym()`` is exact by definition.
    """

    scale: float
    vector: np.ndarray = field()
    diagonal: np.ndarray = field()

    def __post_init__(self):
        v = np.asarray(self.vector, dtype=float)
        d = np.asarray(self.diagonal, dtype=float)
        if v.ndim != 1 or d.ndim != 1 or v.shape != d.shape:
            raise ValueError("vector and diagonal must be 1-d of equal length")
        if not (np.all(np.isfinite(v)) and np.all(np.isfinite(d)) and math.isfinite(self.scale)):
            raise NonFinite("rank-one-plus-diagonal data contains NaN or Inf")
        v = v.copy()
        d = d.copy()
        v.setflags(write=False)
        d.setflags(write=False)
        object.__setattr__(self, "vector", v)
        object.__setattr__(self, "diagonal", d)

    @property
    def dim(self) -> int:
        return self.vector.shape[0]

    def to_sym(self) -> SymMatrix:
        return SymMatrix(self.scale * np.outer(self.vector, self.vector) + np.diag(self.diagonal))


def _orthonormal_complement(u: np.ndarray) -> np.ndarray:
    """Columns spanning the orthogonal complement of unit vector u."""
    n = u.shape[0]
    # Householder reflector mapping e_1 -> u gives an orthogonal basis whose
    # remaining columns are orthogonal to u.
    w = u.copy()
    w[0] += math.copysign(1.0, u[0] if u[0] != 0 else 1.0)
    w /= np.linalg.norm(w)
    q = np.eye(n) - 2.0 * np.outer(w, w)
    return q[:, 1:]


def _secular_roots(rho: float, d: np.ndarray, w: np.ndarray) -> np.ndarray:
    """Roots of ``1 + rho * sum_i w_i / (d_i - x) = 0`` for sorted distinct d.

    One root lies strictly between each pair of consecutive poles, plus one
    exterior root on the side determined by the sign of ``rho``. Bisection on
    each bracket followed by Newton polish reaches ~1e-15 relative accuracy.
    """
    n = d.shape[0]
    wsum = float(np.sum(w))

    def f(x: float) -> float:
        return 1.0 + rho * float(np.sum(w / (d - x)))

    def fprime(x: float) -> float:
        return rho * float(np.sum(w / (d - x) ** 2))

    brackets = []
    if rho > 0:
        for i in range(n - 1):
            brackets.append((d[i], d[i + 1]))
        brackets.append((d[-1], d[-1] + rho * wsum))
    else:
        brackets.append((d[0] + rho * wsum, d[0]))
        for i in range(n - 1):
            brackets.append((d[i], d[i + 1]))

    roots = np.empty(n)
    for idx, (lo, hi) in enumerate(brackets):
        a, b = float(lo), float(hi)
        # Signs at the bracket ends are known analytically: f -> -inf at the
        # left end and +inf at the right end for rho > 0 (reversed for
        # rho < 0), so bisection needs no endpoint evaluation.
        left_negative = rho > 0
        for _ in range(200):
            mid = 0.5 * (a + b)
            if mid <= a or mid >= b or b - a <= 1e-16 * max(1.0, abs(mid)):
                break
            if (f(mid) < 0.0) == left_negative:
                a = mid
            else:
                b = mid
        x = 0.5 * (a + b)
        # Newton polish; stay inside the bracket.
        for _ in range(3):
            fp = fprime(x)
            if fp == 0.0:
                break
            step = f(x) / fp
            x_new = x - step
            if not (a < x_new < b):
                break
            x = x_new
        roots[idx] = x
    return roots


def rank1_diag_eigs(m: RankOnePlusDiag) -> EigenDecomposition:
    """Analytic spectrum of a rank-one update of a diagonal matrix.

    Uniform diagonal ``c * 1`` gives one eigenvalue ``c + scale * |v|^2``
    along ``v`` and ``c`` with multiplicity M-1; otherwise the eigenvalues
    are the secular-equation roots bracketed between consecutive diagonal
    entries.

    Raises
    ------
    DegenerateSecular
        If two diagonal entries coincide within 1e-14 while both carry
        nonzero vector weight; fall back to :func:`eig_sym` in that case.
    """
    v = m.vector
    d = m.diagonal
    n = m.dim
    vnorm2 = float(v @ v)
    if vnorm2 == 0.0 and m.scale != 0.0:
        raise ValueError("rank-one vector must be nonzero")

    if m.scale == 0.0 or vnorm2 == 0.0:
        return _make_decomposition(d, np.eye(n))

    dscale = max(1.0, float(np.max(np.abs(d))))
    if float(np.max(d) - np.min(d)) <= 1e-14 * dscale:
        c = float(d[0])
        u = v / math.sqrt(vnorm2)
        vals = np.concatenate([[c + m.scale * vnorm2], np.full(n - 1, c)])
        vecs = np.empty((n, n))
        vecs[:, 0] = u
        if n > 1:
            vecs[:, 1:] = _orthonormal_complement(u)
        return _make_decomposition(vals, vecs)

    # Deflate components with (numerically) zero weight: their diagonal
    # entries are exact eigenvalues with axis eigenvectors.
    vscale = math.sqrt(vnorm2)
    active = np.abs(v) > 1e-15 * vscale
    fixed_idx = np.nonzero(~active)[0]
    act_idx = np.nonzero(active)[0]

    d_act = d[act_idx]
    order = np.argsort(d_act, kind="stable")
    d_sorted = d_act[order]
    if np.any(np.diff(d_sorted) <= 1e-14 * dscale):
        raise DegenerateSecular(
            "coinciding diagonal entries with nonzero vector weight; use eig_sym"
        )

    u = v[act_idx][order] / vscale
    rho = m.scale * vnorm2
    w = u * u
    roots = _secular_roots(rho, d_sorted, w)

    vals = np.empty(n)
    vecs = np.zeros((n, n))
    col = 0
    for lam in roots:
        x = np.zeros(n)
        x[act_idx[order]] = u / (d_sorted - lam)
        x /= np.linalg.norm(x)
        vals[col] = lam
        vecs[:, col] = x
        col += 1
    for i in fixed_idx:
        vals[col] = d[i]
        vecs[i, col] = 1.0
        col += 1
    return _make_decomposition(vals, vecs)


def is_psd(a: SymMatrix, tol: float) -> bool:
    """True iff the minimal eigenvalue of ``a`` is at least ``-tol``."""
    if tol < 0:
        raise ValueError("tolerance must be nonnegative")
    return eig_sym(a).lambda_min >= -tol


def invert_spd(a: SymMatrix) -> SymMatrix:
    """Inverse of a symmetric positive-definite matrix.

    Raises
    ------
    SingularCovariance
        If ``lambda_min <= 1e-12 * lambda_max``: the matrix is singular at
        working precision and inversion would silently amplify noise.
    """
    dec = eig_sym(a)
    lam = dec.eigenvalues
    if lam[0] <= _SPD_CUTOFF * abs(lam[-1]) or lam[0] <= 0.0:
        raise SingularCovariance(
            f"matrix is numerically singular (lambda_min={lam[0]:.3e}, "
            f"lambda_max={lam[-1]:.3e})"
        )
    inv = (dec.eigenvectors / lam) @ dec.eigenvectors.T
    return SymMatrix((inv + inv.T) / 2.0)


def pinv_psd(a: SymMatrix, rcond: float = 1e-12) -> np.ndarray:
    """Pseudo-inverse of a PSD matrix, zeroing eigenvalues below rcond*max."""
    dec = eig_sym(a)
    lam = dec.eigenvalues
    cutoff = rcond * max(abs(lam[-1]), 1e-300)
    inv_lam = np.zeros_like(lam)
    keep = np.abs(lam) > cutoff
    inv_lam[keep] = 1.0 / lam[keep]
    out = (dec.eigenvectors * inv_lam) @ dec.eigenvectors.T
    return (out + out.T) / 2.0
