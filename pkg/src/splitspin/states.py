"""Closed-form spin moments of split nonclassical spin ensembles.

Covers one-axis-twisted ensembles distributed over M spatial modes, with
partition noise (probabilistic beam-splitter distribution) and without
(deterministic per-mode atom numbers), plus Dicke states split by a beam
splitter, including the second-order observable family needed for their
phase sensitivity.

Conventions: hbar = 1, collective spin operators J_{a,k} = sum_i sigma_a/2
over the atoms in mode k, mean-spin direction along x, squeezing directions
in the yz plane. The twisting strength is parametrized by the accumulated
phase ``mu`` with dynamics periodic in 2*pi.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from .errors import DomainError, UndefinedAngle
from .linalg import SymMatrix, eig_sym

__all__ = [
    "SplitConfig",
    "OatParams",
    "DickeParams",
    "Direction",
    "MomentSet",
    "cos_power",
    "twist_coeffs",
    "squeezing_angle",
    "optimal_directions",
    "split_squeezed_moments",
    "split_dicke_spin_moments",
    "dicke_operator_tables",
    "split_dicke_quadratic_moments",
    "DICKE_FAMILY_4",
    "DICKE_FAMILY_9",
]


# ---------------------------------------------------------------------------
# parameter containers
# ---------------------------------------------------------------------------

@dataclass(frozen=True)
class SplitConfig:
    """How N particles are distributed over M spatial modes.

    Exactly one of ``probabilities`` (beam-splitter distribution, carries
    partition noise) or ``counts`` (deterministic atom numbers per mode,
    partition-noise free) is set.
    """

    n_total: int
    probabilities: tuple[float, ...] | None = None
    counts: tuple[int, ...] | None = None

    def __post_init__(self):
        if self.n_total < 1:
            raise DomainError("n_total must be a positive integer")
        if (self.probabilities is None) == (self.counts is None):
            raise DomainError("set exactly one of probabilities / counts")
        if self.probabilities is not None:
            p = tuple(float(x) for x in self.probabilities)
            if len(p) < 1 or any(x <= 0 for x in p):
                raise DomainError("all splitting probabilities must be > 0")
            if abs(sum(p) - 1.0) > 1e-12:
                raise DomainError("splitting probabilities must sum to 1")
            object.__setattr__(self, "probabilities", p)
        else:
            c = tuple(int(x) for x in self.counts)
            if len(c) < 1 or any(x < 1 for x in c):
                raise DomainError("all mode counts must be >= 1")
            if sum(c) != self.n_total:
                raise DomainError("mode counts must sum to n_total")
            object.__setattr__(self, "counts", c)

    @classmethod
    def probabilistic(cls, n_total: int, probabilities) -> "SplitConfig":
        return cls(n_total, probabilities=tuple(probabilities))

    @classmethod
    def deterministic(cls, counts) -> "SplitConfig":
        counts = tuple(counts)
        return cls(sum(counts), counts=counts)

    @property
    def modes(self) -> int:
        return len(self.probabilities if self.partition_noise else self.counts)

    @property
    def partition_noise(self) -> bool:
        return self.probabilities is not None

    def mean_counts(self) -> np.ndarray:
        """Average particle number per mode (p_k * N or the exact counts)."""
        if self.partition_noise:
            return self.n_total * np.asarray(self.probabilities)
        return np.asarray(self.counts, dtype=float)


@dataclass(frozen=True)
class OatParams:
    """One-axis-twisting evolution: N particles, accumulated phase mu.

    With Hamiltonian chi * J_z^2 the phase mu corresponds to an evolution
    time t = mu / (2 chi); the dynamics is 2*pi periodic so mu is restricted
    to [0, 2*pi).
    """

    n_total: int
    mu: float

    def __post_init__(self):
        if self.n_total < 1:
            raise DomainError("n_total must be a positive integer")
        if not (0.0 <= self.mu < 2.0 * math.pi):
            raise DomainError("mu must lie in [0, 2*pi)")


@dataclass(frozen=True)
class DickeParams:
    """Collective-spin eigenstate labels j = N/2 and m, stored as doubled
    integers so half-integer values and parity checks stay exact."""

    two_j: int
    two_m: int

    def __post_init__(self):
        if self.two_j < 1:
            raise DomainError("j must be positive")
        if abs(self.two_m) > self.two_j:
            raise DomainError("|m| must not exceed j")
        if (self.two_j - self.two_m) % 2 != 0:
            raise DomainError("j and m must have equal integrality")

    @classmethod
    def from_jm(cls, j: float, m: float) -> "DickeParams":
        two_j, two_m = round(2 * j), round(2 * m)
        if abs(2 * j - two_j) > 1e-9 or abs(2 * m - two_m) > 1e-9:
            raise DomainError("j and m must be integers or half-integers")
        return cls(two_j, two_m)

    @property
    def j(self) -> float:
        return self.two_j / 2.0

    @property
    def m(self) -> float:
        return self.two_m / 2.0

    @property
    def n_total(self) -> int:
        return self.two_j


@dataclass(frozen=True)
class Direction:
    """Unit vector (u_x, u_y, u_z) selecting a collective spin component."""

    components: np.ndarray

    def __post_init__(self):
        u = np.asarray(self.components, dtype=float)
        if u.shape != (3,):
            raise DomainError("direction must be a 3-vector")
        if abs(np.linalg.norm(u) - 1.0) > 1e-12:
            raise DomainError("direction must have unit norm")
        u = u.copy()
        u.setflags(write=False)
        object.__setattr__(self, "components", u)

    @classmethod
    def of(cls, x: float, y: float, z: float) -> "Direction":
        return cls(np.array([x, y, z], dtype=float))

    @classmethod
    def x(cls) -> "Direction":
        return cls.of(1.0, 0.0, 0.0)

    @classmethod
    def y(cls) -> "Direction":
        return cls.of(0.0, 1.0, 0.0)

    @classmethod
    def z(cls) -> "Direction":
        return cls.of(0.0, 0.0, 1.0)

    @classmethod
    def squeezed(cls, theta: float) -> "Direction":
        """Minimal-variance axis (0, -sin(theta), cos(theta)) in the yz plane."""
        return cls.of(0.0, -math.sin(theta), math.cos(theta))

    @classmethod
    def anti_squeezed(cls, theta: float) -> "Direction":
        """Maximal-variance axis (0, cos(theta), sin(theta)); orthogonal to
        the squeezed axis and oriented so that r x s = +x."""
        return cls.of(0.0, math.cos(theta), math.sin(theta))


@dataclass(frozen=True)
class MomentSet:
    """First and second moments of per-mode observables.

    ``mean_x``       mean spin <J_{x,k}> per mode,
    ``cov_ss``       covariance matrix of the measured observables,
    ``cov_rr``       covariance matrix of the rotation generators,
    ``comm``         commutator matrix -i<[J_{r_k,k}, X_{s_l,l}]> (diagonal
                     for local observable families),
    ``labels``       human-readable tags for the direction/observable choice.
    """

    mean_x: np.ndarray
    cov_ss: SymMatrix
    cov_rr: SymMatrix
    comm: np.ndarray
    labels: dict

    def __post_init__(self):
        m = self.cov_ss.dim
        if self.cov_rr.dim != m or self.comm.shape != (m, m) or self.mean_x.shape != (m,):
            raise ValueError("inconsistent block dimensions in MomentSet")
        for name, cov in (("cov_ss", self.cov_ss), ("cov_rr", self.cov_rr)):
            scale = max(1.0, float(np.max(np.abs(cov.array))))
            if eig_sym(cov).lambda_min < -1e-10 * scale:
                raise ValueError(f"{name} is not positive semidefinite")

    @property
    def modes(self) -> int:
        return self.cov_ss.dim

    def comm_diag(self) -> np.ndarray:
        return np.diag(self.comm).copy()


# ---------------------------------------------------------------------------
# scalar building blocks
# ---------------------------------------------------------------------------

def cos_power(x: float, k: float) -> float:
    """cos(x)**k with sign tracking for large integer exponents.

    Integer exponents up to 64 use the libm power directly; larger ones go
    through exp(k*log|cos x|) with the sign restored, which keeps gradual
    underflow smooth deep into the cos^~1000 regime. Non-integer exponents
    (real-valued particle numbers in averaged strategies) require
    cos(x) >= 0.
    """
    c = math.cos(x)
    if k == 0:
        return 1.0
    k_int = round(k)
    if abs(k - k_int) < 1e-9:
        if abs(k_int) <= 64:
            return c ** k_int
        if c == 0.0:
            return 0.0
        sign = -1.0 if (c < 0.0 and k_int % 2 != 0) else 1.0
        return sign * math.exp(k_int * math.log(abs(c)))
    if c < 0.0:
        raise DomainError("fractional power of a negative cosine is undefined")
    if c == 0.0:
        return 0.0
    return math.exp(k * math.log(c))


def twist_coeffs(n_total: float, mu: float) -> tuple[float, float]:
    """Pair-correlation coefficients (f_minus, f_plus) of a twisted ensemble.

    These scale the N(N-1)/4 part of the variances along the squeezed and
    anti-squeezed transverse axes; f_minus <= 0 <= f_plus always.
    """
    if n_total < 2:
        raise DomainError("twist coefficients require at least two particles")
    c2 = cos_power(mu, n_total - 2)
    cp2 = cos_power(mu / 2.0, 2.0 * n_total - 4.0)
    s = math.sin(mu / 2.0)
    disc = math.sqrt((c2 - 1.0) ** 2 + 16.0 * s * s * cp2)
    f_minus = (1.0 - c2 - disc) / 4.0
    f_plus = (1.0 - c2 + disc) / 4.0
    return min(f_minus, 0.0), max(f_plus, 0.0)


def polarization_decay(n_total: float, mu: float) -> float:
    """cos^(2N-2)(mu/2): squared decay of the mean spin length."""
    return cos_power(mu / 2.0, 2.0 * n_total - 2.0)


def _squeezing_theta(n_total: int, mu: float) -> float:
    """Minimal-variance angle without domain restrictions.

    mu = 0 is isotropic; pi/4 is the limiting angle for mu -> 0+ and is
    also exact for n_total = 2, where the closed-form denominator vanishes
    identically.
    """
    if mu == 0.0:
        return math.pi / 4.0
    num = 4.0 * math.sin(mu / 2.0) * cos_power(mu / 2.0, n_total - 2)
    den = 1.0 - cos_power(mu, n_total - 2)
    theta = 0.5 * math.atan2(num, den)

    def variance(th: float) -> float:
        u = Direction.squeezed(th).components
        return _pn_pair_form(n_total, mu, 1.0, 1.0, u, u) + n_total / 4.0

    if variance(theta) > variance(theta + math.pi / 2.0):
        theta += math.pi / 2.0
    return theta


def squeezing_angle(n_total: int, mu: float) -> float:
    """Angle theta_s of the minimal-variance transverse axis.

    Measured counterclockwise from +y; the squeezed axis is
    (0, -sin(theta_s), cos(theta_s)) and the anti-squeezed axis
    (0, cos(theta_s), sin(theta_s)). The angle is the same in every mode of
    a split ensemble. The closed form leaves a pi/2 ambiguity, so the two
    candidate axes are compared by their actual variances.
    """
    if n_total < 3:
        raise DomainError("the transverse-variance angle needs n_total >= 3")
    if mu == 0.0:
        raise UndefinedAngle("transverse variance is isotropic at mu = 0")
    return _squeezing_theta(n_total, mu)


def optimal_directions(n_total: int, mu: float) -> tuple[Direction, Direction]:
    """(r, s): anti-squeezed rotation axis and squeezed measurement axis.

    At mu = 0 the transverse variance is isotropic and the limiting angle
    pi/4 is used.
    """
    theta = _squeezing_theta(n_total, mu)
    return Direction.anti_squeezed(theta), Direction.squeezed(theta)


# ---------------------------------------------------------------------------
# split squeezed states: general-direction first and second moments
# ---------------------------------------------------------------------------
#
# The pair terms below are the symmetric bilinear forms underlying the
# second moments, so mixed components <{J_u, J_v}/2> follow from the same
# expressions by polarization.

def _pair_quadratic(n_total: float, mu: float, u, v) -> float:
    c2 = cos_power(mu, n_total - 2)
    cs = cos_power(mu / 2.0, n_total - 2) * math.sin(mu / 2.0)
    return (
        (u[0] * v[0] + u[1] * v[1])
        + (u[0] * v[0] - u[1] * v[1]) * c2
        + 2.0 * (u[1] * v[2] + u[2] * v[1]) * cs
    )


def _pn_mean(n_total: float, mu: float, p_k: float, u) -> float:
    return p_k * n_total / 2.0 * u[0] * cos_power(mu / 2.0, n_total - 1.0)


def _pn_pair_form(n_total: float, mu: float, p_k: float, p_l: float, u, v) -> float:
    """Pair-correlation part p_k p_l N(N-1)/8 * quadratic(u, v)."""
    return p_k * p_l * n_total * (n_total - 1.0) / 8.0 * _pair_quadratic(n_total, mu, u, v)


def _pn_second_same(n_total: float, mu: float, p_k: float, u, v) -> float:
    single = p_k * n_total / 4.0 * float(np.dot(u, v))
    return single + _pn_pair_form(n_total, mu, p_k, p_k, u, v)


def _npn_mean(n_total: int, mu: float, n_k: float, u) -> float:
    return n_k / 2.0 * u[0] * cos_power(mu / 2.0, n_total - 1)


def _npn_second_same(n_total: int, mu: float, n_k: float, u, v) -> float:
    c2 = cos_power(mu, n_total - 2)
    cs = cos_power(mu / 2.0, n_total - 2) * math.sin(mu / 2.0)
    perp = u[0] * v[0] + u[1] * v[1]
    return (
        n_k / 4.0 * u[2] * v[2]
        + n_k / 8.0 * (
            (n_k + 1.0) * perp
            + (n_k - 1.0) * ((u[0] * v[0] - u[1] * v[1]) * c2
                             + 2.0 * (u[1] * v[2] + u[2] * v[1]) * cs)
        )
    )


def _npn_pair_cross(n_total: int, mu: float, n_k: float, n_l: float, u, v) -> float:
    return n_k * n_l / 8.0 * _pair_quadratic(n_total, mu, u, v)


def split_squeezed_moments(
    cfg: SplitConfig,
    mu: float,
    directions: tuple | None = None,
) -> MomentSet:
    """MomentSet of a twisted ensemble split over the modes of ``cfg``.

    ``directions`` is an optional sequence of per-mode (r_k, s_k) Direction
    pairs; by default every mode uses the optimal anti-squeezed/squeezed
    axes. Partition noise follows from ``cfg``: probabilistic splits use the
    multinomial beam-splitter moments, deterministic splits the collectively
    twisted product-ensemble moments.
    """
    n = cfg.n_total
    if n < 2:
        raise DomainError("split squeezed moments require n_total >= 2")
    mmodes = cfg.modes
    if directions is None:
        r, s = optimal_directions(n, mu)
        directions = tuple((r, s) for _ in range(mmodes))
        labels = {"r": "anti-squeezed", "s": "squeezed"}
    else:
        directions = tuple(directions)
        if len(directions) != mmodes:
            raise DomainError("need one (r, s) pair per mode")
        labels = {"r": "custom", "s": "custom"}

    r_vecs = [d[0].components for d in directions]
    s_vecs = [d[1].components for d in directions]
    # The commutator -i<[J_r, J_s]> equals <J_{r x s}>, linear in direction.
    cross = [np.cross(r_vecs[k], s_vecs[k]) for k in range(mmodes)]

    mean_x = np.empty(mmodes)
    comm = np.zeros((mmodes, mmodes))
    cov_ss = np.empty((mmodes, mmodes))
    cov_rr = np.empty((mmodes, mmodes))

    if cfg.partition_noise:
        p = cfg.probabilities
        for k in range(mmodes):
            mean_x[k] = _pn_mean(n, mu, p[k], (1.0, 0.0, 0.0))
            comm[k, k] = _pn_mean(n, mu, p[k], cross[k])
            for vecs, cov in ((s_vecs, cov_ss), (r_vecs, cov_rr)):
                for l in range(k, mmodes):
                    if l == k:
                        second = _pn_second_same(n, mu, p[k], vecs[k], vecs[k])
                    else:
                        second = _pn_pair_form(n, mu, p[k], p[l], vecs[k], vecs[l])
                    mk = _pn_mean(n, mu, p[k], vecs[k])
                    ml = _pn_mean(n, mu, p[l], vecs[l])
                    cov[k, l] = cov[l, k] = second - mk * ml
    else:
        counts = cfg.counts
        for k in range(mmodes):
            mean_x[k] = _npn_mean(n, mu, counts[k], (1.0, 0.0, 0.0))
            comm[k, k] = _npn_mean(n, mu, counts[k], cross[k])
            for vecs, cov in ((s_vecs, cov_ss), (r_vecs, cov_rr)):
                for l in range(k, mmodes):
                    if l == k:
                        second = _npn_second_same(n, mu, counts[k], vecs[k], vecs[k])
                    else:
                        second = _npn_pair_cross(n, mu, counts[k], counts[l], vecs[k], vecs[l])
                    mk = _npn_mean(n, mu, counts[k], vecs[k])
                    ml = _npn_mean(n, mu, counts[l], vecs[l])
                    cov[k, l] = cov[l, k] = second - mk * ml
    return MomentSet(mean_x, SymMatrix(cov_ss), SymMatrix(cov_rr), comm,
                     labels | {"state": "split_squeezed",
                               "partition_noise": cfg.partition_noise})


# ---------------------------------------------------------------------------
# split Dicke states: linear spin moments
# ---------------------------------------------------------------------------

def _sd_mean(dicke: DickeParams, p_k: float, u) -> float:
    return p_k * dicke.m * u[2]


def _sd_second_same(dicke: DickeParams, p_k: float, u, v) -> float:
    j, m = dicke.j, dicke.m
    perp = u[0] * v[0] + u[1] * v[1]
    return p_k / 2.0 * ((j + (j * j - m * m) * p_k) * perp
                        + (j - j * p_k + 2.0 * m * m * p_k) * u[2] * v[2])


def _sd_cross(dicke: DickeParams, p_k: float, p_l: float, u, v) -> float:
    j, m = dicke.j, dicke.m
    perp = u[0] * v[0] + u[1] * v[1]
    return ((j * j - m * m) / 2.0 * p_k * p_l * perp
            + (m * m - j / 2.0) * p_k * p_l * u[2] * v[2])


def split_dicke_spin_moments(
    cfg: SplitConfig,
    dicke: DickeParams,
    u: Direction,
    v: Direction,
    k: int,
    l: int,
) -> tuple[float, float, float]:
    """(mean, second moment, pair moment) of linear spin components of a
    beam-splitter-distributed Dicke state.

    Returns <J_{u,k}>, <J_{u,k}^2> and the symmetrized <J_{u,k} J_{v,l}>
    (same-mode values follow from the quadratic form by polarization).
    """
    if not cfg.partition_noise:
        raise DomainError("split Dicke moments are defined for probabilistic splits")
    if cfg.n_total != dicke.n_total:
        raise DomainError("cfg.n_total must equal 2j")
    p = cfg.probabilities
    uu, vv = u.components, v.components
    mean = _sd_mean(dicke, p[k], uu)
    second = _sd_second_same(dicke, p[k], uu, uu)
    if k == l:
        pair = _sd_second_same(dicke, p[k], uu, vv)
    else:
        pair = _sd_cross(dicke, p[k], p[l], uu, vv)
    return mean, second, pair


# ---------------------------------------------------------------------------
# single-mode Dicke state: second-order observable tables
# ---------------------------------------------------------------------------

# Observable families of a Dicke state: the reduced four-operator set whose
# covariance stays regular, and the full nine-operator second-order basis.
DICKE_FAMILY_4 = ("Jx", "Jy", "{Jx,Jz}/2", "{Jy,Jz}/2")
DICKE_FAMILY_9 = ("Jx", "Jy", "Jz", "{Jx,Jz}/2", "{Jx,Jy}/2", "{Jy,Jz}/2",
                  "Jx2", "Jy2", "Jz2")


def dicke_operator_tables(dicke: DickeParams) -> tuple[dict, dict]:
    """Covariance and commutator tables of a single-mode Dicke state.

    Returns ``(cov, comm)`` where ``cov[(a, b)]`` is the symmetrized
    covariance of the operators labelled ``a, b`` from the nine-operator
    family and ``comm[(a, b)]`` is -i<[A, B]> for the linear operators
    against the family. Entries not stored are identically zero by the
    z-rotation symmetry and m-shift selection rules of |j, m>.
    """
    j, m = dicke.j, dicke.m
    a = j * (j + 1.0)
    quartic = (m * m * (m * m + 5.0) + a * (a - 2.0 * (m * m + 1.0))) / 8.0

    cov: dict[tuple[str, str], float] = {
        (p, q): 0.0 for p in DICKE_FAMILY_9 for q in DICKE_FAMILY_9
    }

    def put(p: str, q: str, value: float) -> None:
        cov[(p, q)] = value
        cov[(q, p)] = value

    put("Jx", "Jx", (a - m * m) / 2.0)
    put("Jy", "Jy", (a - m * m) / 2.0)
    put("Jx2", "Jx2", quartic)
    put("Jy2", "Jy2", quartic)
    put("Jx2", "Jy2", -quartic)
    put("{Jx,Jy}/2", "{Jx,Jy}/2", quartic)
    put("Jx", "{Jx,Jz}/2", m / 4.0 * (2.0 * a - (2.0 * m * m + 1.0)))
    put("Jy", "{Jy,Jz}/2", m / 4.0 * (2.0 * a - (2.0 * m * m + 1.0)))
    put("{Jx,Jz}/2", "{Jx,Jz}/2", (a + (4.0 * a - 5.0) * m * m - 4.0 * m ** 4) / 8.0)
    put("{Jy,Jz}/2", "{Jy,Jz}/2", (a + (4.0 * a - 5.0) * m * m - 4.0 * m ** 4) / 8.0)

    comm: dict[tuple[str, str], float] = {
        (p, q): 0.0 for p in ("Jx", "Jy", "Jz") for q in DICKE_FAMILY_9
    }
    comm[("Jx", "Jy")] = m
    comm[("Jy", "Jx")] = -m
    comm[("Jx", "{Jy,Jz}/2")] = -(a - 3.0 * m * m) / 2.0
    comm[("Jy", "{Jx,Jz}/2")] = (a - 3.0 * m * m) / 2.0
    return cov, comm


# ---------------------------------------------------------------------------
# split Dicke states: second-order observable moments (per-mode family
# (Jx, Jy, {Jx,Jz}/2, {Jy,Jz}/2), rotations about the local x axis)
# ---------------------------------------------------------------------------

def _sd_nl_cov_entries(dicke: DickeParams):
    """Same- and cross-mode covariances of the per-mode quadratic family."""
    j, m = dicke.j, dicke.m
    a = j * (j + 1.0)
    jm2 = j * j - m * m

    def var_lin(pk: float) -> float:
        return 0.5 * pk * (j + jm2 * pk)

    def cov_lin_quad(pk: float) -> float:
        return 0.5 * pk * pk * (0.5 * (2.0 * j - 1.0) * m + m * jm2 * pk)

    def var_quad(pk: float) -> float:
        return pk * pk / 8.0 * (
            j * (3.0 * j - 1.0) - m * m
            + 2.0 * (j - 1.0) * ((j - 1.0) * j + m * m) * pk
            - 2.0 * jm2 * (j - 2.0 * m * m - 1.0) * pk * pk
        )

    def cross_lin_lin(pk: float, pl: float) -> float:
        return 0.5 * pk * pl * jm2

    def cross_lin_quad(pk: float, pl: float) -> float:
        # Cov(J_{a,k}, {J_{a,l},J_{z,l}}/2), quadratic factor on mode l.
        return 0.5 * pk * pl * pl * m * jm2

    def cross_quad_quad(pk: float, pl: float) -> float:
        return -0.25 * pk * pk * pl * pl * jm2 * (j - 2.0 * m * m - 1.0)

    return var_lin, cov_lin_quad, var_quad, cross_lin_lin, cross_lin_quad, cross_quad_quad


def split_dicke_quadratic_moments(cfg: SplitConfig, dicke: DickeParams) -> MomentSet:
    """MomentSet of a split Dicke state under the optimal local second-order
    observables with rotations about the local x axes.

    Measurement in mode k is X_k = -m J_{y,k} + {J_{y,k}, J_{z,k}}/2, the
    optimal member of the quadratic family for a rotation generated by
    J_{x,k}; ``comm`` holds -i<[J_{x,k}, X_k]> on its diagonal and ``cov_rr``
    the generator covariances.
    """
    if not cfg.partition_noise:
        raise DomainError("quadratic split-Dicke moments require a probabilistic split")
    if cfg.n_total != dicke.n_total:
        raise DomainError("cfg.n_total must equal 2j")
    p = cfg.probabilities
    mm = cfg.modes
    j, m = dicke.j, dicke.m
    a = j * (j + 1.0)

    (var_lin, cov_lin_quad, var_quad,
     cross_ll, cross_lq, cross_qq) = _sd_nl_cov_entries(dicke)

    cov_ss = np.empty((mm, mm))
    cov_rr = np.empty((mm, mm))
    comm = np.zeros((mm, mm))
    mean_x = np.zeros(mm)  # <J_{x,k}> = p_k m u_z with u = x, hence zero

    for k in range(mm):
        # X_k = -m J_y + {J_y,J_z}/2; its variance by bilinearity.
        cov_ss[k, k] = (m * m * var_lin(p[k])
                        - 2.0 * m * cov_lin_quad(p[k])
                        + var_quad(p[k]))
        cov_rr[k, k] = var_lin(p[k])
        # -i<[J_x, X_k]> from the two nonvanishing local commutators.
        comm[k, k] = -m * m * p[k] - 0.5 * (a - 3.0 * m * m) * p[k] ** 2
        for l in range(k + 1, mm):
            cs = (m * m * cross_ll(p[k], p[l])
                  - m * cross_lq(p[k], p[l])
                  - m * cross_lq(p[l], p[k])
                  + cross_qq(p[k], p[l]))
            cov_ss[k, l] = cov_ss[l, k] = cs
            cov_rr[k, l] = cov_rr[l, k] = cross_ll(p[k], p[l])
    return MomentSet(mean_x, SymMatrix(cov_ss), SymMatrix(cov_rr), comm,
                     {"state": "split_dicke", "r": "x-axis",
                      "s": "optimal-quadratic", "partition_noise": True})
