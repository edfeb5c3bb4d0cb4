"""Exact small-scale quantum simulation in a bosonic occupation basis.

Every closed-form moment in this package is certified against expectation
values computed here by brute force. States live in the two-internal-level
(up/down) Fock space of M spatial modes; configurations are tuples
``(n_up_1, n_dn_1, ..., n_up_M, n_dn_M)`` with a fixed total particle
number. Collective local spin operators act through the Schwinger
representation J_+ = a_up^dag a_dn etc.

Scale caps keep this a desk-scale verification tool: N <= 64 in a single
mode and at most 1e7 occupation configurations after splitting.
"""

from __future__ import annotations

import itertools
import math
from dataclasses import dataclass

import numpy as np

from .errors import DegreeExceeded, DomainError, ScaleExceeded
from .linalg import SymMatrix
from .states import DickeParams, MomentSet, SplitConfig

MAX_SINGLE_MODE_N = 64
MAX_CONFIGURATIONS = 10_000_000
MAX_OPERATOR_DEGREE = 4

__all__ = [
    "FockState",
    "ProductDickeState",
    "Op",
    "j_op",
    "j_vec_op",
    "identity_op",
    "commutator",
    "anticommutator",
    "expect",
    "expect_real",
    "sym_cov",
    "oat_state",
    "split_state",
    "split_dicke_state",
    "npn_state",
    "kproducible_reference",
    "dense_spin_matrices",
    "dicke_vector_moment",
    "moment_set_from_state",
    "quadratic_family_ops",
    "quadratic_moment_set_from_state",
]


# ---------------------------------------------------------------------------
# state containers
# ---------------------------------------------------------------------------

@dataclass(frozen=True)
class FockState:
    """Sparse multimode bosonic state: configuration tuple -> amplitude."""

    n_total: int
    modes: int
    amplitudes: dict

    def __post_init__(self):
        for cfg in self.amplitudes:
            if len(cfg) != 2 * self.modes or sum(cfg) != self.n_total:
                raise ValueError(f"bad configuration {cfg}")
        norm = self.norm()
        if abs(norm - 1.0) > 1e-12:
            raise ValueError(f"state not normalized: |psi|^2 = {norm!r}")

    def norm(self) -> float:
        return float(sum(abs(a) ** 2 for a in self.amplitudes.values()))

    def overlap(self, other: dict) -> complex:
        acc = 0j
        for cfg, amp in self.amplitudes.items():
            o = other.get(cfg)
            if o is not None:
                acc += np.conj(amp) * o
        return complex(acc)

    def dump(self, stream) -> None:
        """Line format ``n1,n2,...<TAB>real<TAB>imag``, configurations in
        lexicographic order, 17 significant digits."""
        for cfg in sorted(self.amplitudes):
            amp = self.amplitudes[cfg]
            stream.write(
                ",".join(str(n) for n in cfg)
                + f"\t{amp.real:.17g}\t{amp.imag:.17g}\n"
            )


@dataclass(frozen=True)
class ProductDickeState:
    """Dense state over per-mode magnetization indices.

    ``amplitudes[n_up_1, ..., n_up_M]`` with mode k holding exactly
    ``counts[k]`` particles; the collective-spin sector of each mode is the
    full symmetric one, so a local index n_up_k runs over 0..counts[k].
    """

    counts: tuple
    amplitudes: np.ndarray

    def __post_init__(self):
        if self.amplitudes.shape != tuple(c + 1 for c in self.counts):
            raise ValueError("amplitude tensor shape must be prod(counts+1)")
        norm = float(np.vdot(self.amplitudes, self.amplitudes).real)
        if abs(norm - 1.0) > 1e-12:
            raise ValueError(f"state not normalized: |psi|^2 = {norm!r}")

    @property
    def modes(self) -> int:
        return len(self.counts)

    @property
    def n_total(self) -> int:
        return int(sum(self.counts))


# ---------------------------------------------------------------------------
# operator expressions
# ---------------------------------------------------------------------------

class Op:
    """Polynomial in local spin operators.

    Stored as a dict mapping a product of elementary factors - a tuple of
    ``(alpha, mode)`` with alpha in {'+', '-', 'z'} applied right to left -
    to a complex coefficient. Supports +, -, scalar and operator products.
    """

    __slots__ = ("terms",)

    def __init__(self, terms: dict):
        self.terms = {k: v for k, v in terms.items() if v != 0}

    @property
    def degree(self) -> int:
        return max((len(t) for t in self.terms), default=0)

    def __add__(self, other: "Op") -> "Op":
        out = dict(self.terms)
        for t, c in other.terms.items():
            out[t] = out.get(t, 0) + c
        return Op(out)

    def __sub__(self, other: "Op") -> "Op":
        return self + (-1) * other

    def __neg__(self) -> "Op":
        return (-1) * self

    def __mul__(self, other):
        if isinstance(other, Op):
            out: dict = {}
            for t1, c1 in self.terms.items():
                for t2, c2 in other.terms.items():
                    key = t1 + t2
                    out[key] = out.get(key, 0) + c1 * c2
            prod = Op(out)
            if prod.degree > MAX_OPERATOR_DEGREE:
                raise DegreeExceeded(
                    f"operator degree {prod.degree} exceeds {MAX_OPERATOR_DEGREE}"
                )
            return prod
        return Op({t: c * other for t, c in self.terms.items()})

    __rmul__ = __mul__


def identity_op() -> Op:
    return Op({(): 1.0})


def j_op(axis: str, mode: int) -> Op:
    """Collective spin component J_{axis, mode}, axis in {x, y, z, +, -}."""
    if axis == "z":
        return Op({(("z", mode),): 1.0})
    if axis == "+":
        return Op({(("+", mode),): 1.0})
    if axis == "-":
        return Op({(("-", mode),): 1.0})
    if axis == "x":
        return Op({(("+", mode),): 0.5, (("-", mode),): 0.5})
    if axis == "y":
        return Op({(("+", mode),): -0.5j, (("-", mode),): 0.5j})
    raise DomainError(f"unknown spin axis {axis!r}")


def j_vec_op(u, mode: int) -> Op:
    """u_x J_x + u_y J_y + u_z J_z in the given mode."""
    return u[0] * j_op("x", mode) + u[1] * j_op("y", mode) + u[2] * j_op("z", mode)


def commutator(a: Op, b: Op) -> Op:
    return a * b - b * a


def anticommutator(a: Op, b: Op) -> Op:
    return a * b + b * a


# ---------------------------------------------------------------------------
# operator application and expectation values
# ---------------------------------------------------------------------------

def _apply_factor_fock(alpha: str, mode: int, vec: dict) -> dict:
    out: dict = {}
    iu, idn = 2 * mode, 2 * mode + 1
    for cfg, amp in vec.items():
        n_up, n_dn = cfg[iu], cfg[idn]
        if alpha == "z":
            coeff = 0.5 * (n_up - n_dn)
            if coeff != 0.0:
                out[cfg] = out.get(cfg, 0j) + coeff * amp
        elif alpha == "+":
            if n_dn > 0:
                new = list(cfg)
                new[iu] += 1
                new[idn] -= 1
                key = tuple(new)
                out[key] = out.get(key, 0j) + math.sqrt((n_up + 1) * n_dn) * amp
        else:  # '-'
            if n_up > 0:
                new = list(cfg)
                new[iu] -= 1
                new[idn] += 1
                key = tuple(new)
                out[key] = out.get(key, 0j) + math.sqrt(n_up * (n_dn + 1)) * amp
    return out


def _local_matrices(dim_minus_1: int):
    """Dense J_z, J_+, J_- for a single mode with n particles (j = n/2)."""
    n = dim_minus_1
    n_up = np.arange(n + 1)
    jz = np.diag(n_up - n / 2.0)
    jp = np.zeros((n + 1, n + 1))
    for k in range(n):
        # raises n_up k -> k+1: sqrt((n_up+1) * n_dn)
        jp[k + 1, k] = math.sqrt((k + 1) * (n - k))
    return jz, jp, jp.T


def _apply_factor_product(alpha: str, mode: int, state: ProductDickeState,
                          tensor: np.ndarray) -> np.ndarray:
    jz, jp, jm = _local_matrices(state.counts[mode])
    mat = {"z": jz, "+": jp, "-": jm}[alpha]
    moved = np.moveaxis(tensor, mode, 0)
    applied = np.tensordot(mat, moved, axes=(1, 0))
    return np.moveaxis(applied, 0, mode)


def expect(state, op: Op) -> complex:
    """<psi| op |psi> by sparse (Fock) or dense (product-Dicke) application."""
    if op.degree > MAX_OPERATOR_DEGREE:
        raise DegreeExceeded(f"operator degree {op.degree} exceeds {MAX_OPERATOR_DEGREE}")
    total = 0j
    if isinstance(state, FockState):
        for term, coeff in op.terms.items():
            vec = dict(state.amplitudes)
            for alpha, mode in reversed(term):
                if not 0 <= mode < state.modes:
                    raise DomainError(f"mode index {mode} out of range")
                vec = _apply_factor_fock(alpha, mode, vec)
            total += coeff * state.overlap(vec)
        return total
    if isinstance(state, ProductDickeState):
        for term, coeff in op.terms.items():
            tensor = state.amplitudes
            for alpha, mode in reversed(term):
                if not 0 <= mode < state.modes:
                    raise DomainError(f"mode index {mode} out of range")
                tensor = _apply_factor_product(alpha, mode, state, tensor)
            total += coeff * complex(np.vdot(state.amplitudes, tensor))
        return total
    raise TypeError(f"unsupported state type {type(state).__name__}")


def expect_real(state, op: Op, imag_tol: float = 1e-12) -> float:
    val = expect(state, op)
    scale = max(1.0, abs(val))
    if abs(val.imag) > imag_tol * scale:
        raise ValueError(f"expected a real expectation value, got {val!r}")
    return val.real


def sym_cov(state, a: Op, b: Op) -> float:
    """Symmetrized covariance Re<AB> - <A><B> for Hermitian A, B."""
    ab = expect(state, a * b)
    return float(ab.real) - expect_real(state, a) * expect_real(state, b)


# ---------------------------------------------------------------------------
# combinatorial helpers
# ---------------------------------------------------------------------------

def _compositions(total: int, parts: int):
    """All tuples of ``parts`` nonnegative ints summing to ``total``."""
    if parts == 1:
        yield (total,)
        return
    for first in range(total + 1):
        for rest in _compositions(total - first, parts - 1):
            yield (first,) + rest


def _sqrt_multinomial_weight(counts, probs) -> float:
    """sqrt of the multinomial pmf: sqrt(n!/(prod k!) * prod p^k).

    Exact integer arithmetic below n = 20, log-gamma above.
    """
    n = sum(counts)
    if n < 20:
        coef = math.factorial(n)
        for k in counts:
            coef //= math.factorial(k)
        val = float(coef)
        for k, p in zip(counts, probs):
            val *= p ** k
        return math.sqrt(val)
    log_val = math.lgamma(n + 1)
    for k, p in zip(counts, probs):
        log_val -= math.lgamma(k + 1)
        log_val += k * math.log(p)
    return math.exp(0.5 * log_val)


def _split_count(n_total: int, modes: int) -> int:
    return sum(
        math.comb(n_up + modes - 1, modes - 1) * math.comb(n_total - n_up + modes - 1, modes - 1)
        for n_up in range(n_total + 1)
    )


# ---------------------------------------------------------------------------
# state constructors
# ---------------------------------------------------------------------------

def _coherent_amplitudes(n: int) -> np.ndarray:
    """Amplitudes sqrt(C(n, k)) / 2^(n/2) of an x-polarized ensemble,
    computed through log-gamma for large n."""
    if n <= MAX_SINGLE_MODE_N:
        amps = np.sqrt(np.array([math.comb(n, k) for k in range(n + 1)], dtype=float))
        return amps / 2.0 ** (n / 2.0)
    log_norm = n * math.log(2.0)
    return np.array([
        math.exp(0.5 * (math.lgamma(n + 1) - math.lgamma(k + 1)
                        - math.lgamma(n - k + 1) - log_norm))
        for k in range(n + 1)
    ])


def oat_state(n_total: int, mu: float) -> np.ndarray:
    """Twisted coherent state in the collective basis, indexed by n_up.

    Starts from the x-polarized coherent state and applies the phase
    exp(-i mu m^2 / 2) per magnetization m = n_up - N/2.
    """
    if not 1 <= n_total <= MAX_SINGLE_MODE_N:
        raise ScaleExceeded(f"exact single-mode states support 1 <= N <= {MAX_SINGLE_MODE_N}")
    m = np.arange(n_total + 1) - n_total / 2.0
    amps = _coherent_amplitudes(n_total) * np.exp(-0.5j * mu * m ** 2)
    return amps / np.linalg.norm(amps)


def split_state(amps: np.ndarray, probabilities) -> FockState:
    """Beam-splitter distribution of a single-mode collective state.

    Each internal-level creation operator goes to sum_k sqrt(p_k) b_k^dag,
    so the up and down populations each spread multinomially with square
    root weights on the amplitudes.
    """
    probs = tuple(float(p) for p in probabilities)
    if abs(sum(probs) - 1.0) > 1e-12 or any(p <= 0 for p in probs):
        raise DomainError("splitting probabilities must be positive and sum to 1")
    n_total = len(amps) - 1
    modes = len(probs)
    if _split_count(n_total, modes) > MAX_CONFIGURATIONS:
        raise ScaleExceeded("configuration count exceeds the exact-simulation cap")

    out: dict = {}
    for n_up in range(n_total + 1):
        amp = complex(amps[n_up])
        if amp == 0:
            continue
        n_dn = n_total - n_up
        for ups in _compositions(n_up, modes):
            w_up = _sqrt_multinomial_weight(ups, probs)
            for dns in _compositions(n_dn, modes):
                w = w_up * _sqrt_multinomial_weight(dns, probs)
                cfg = tuple(itertools.chain.from_iterable(zip(ups, dns)))
                out[cfg] = out.get(cfg, 0j) + amp * w
    norm = math.sqrt(sum(abs(a) ** 2 for a in out.values()))
    out = {cfg: a / norm for cfg, a in out.items()}
    return FockState(n_total, modes, out)


def split_dicke_state(dicke: DickeParams, probabilities) -> FockState:
    """Beam-splitter distribution of the collective eigenstate |j, m>."""
    n_total = dicke.n_total
    if n_total > MAX_SINGLE_MODE_N:
        raise ScaleExceeded(f"exact single-mode states support N <= {MAX_SINGLE_MODE_N}")
    amps = np.zeros(n_total + 1, dtype=complex)
    amps[(dicke.two_j + dicke.two_m) // 2] = 1.0
    return split_state(amps, probabilities)


def npn_state(cfg: SplitConfig, mu: float) -> ProductDickeState:
    """Collectively twisted product of local x-polarized ensembles.

    The twisting phase acts on the total magnetization, entangling the
    modes while each mode keeps its exact particle number.
    """
    if cfg.partition_noise:
        raise DomainError("partition-noise-free states need deterministic counts")
    counts = cfg.counts
    size = 1
    for c in counts:
        size *= c + 1
    if size > MAX_CONFIGURATIONS:
        raise ScaleExceeded("product-space dimension exceeds the exact-simulation cap")

    locals_ = [_coherent_amplitudes(c) for c in counts]
    amps = locals_[0].astype(complex)
    for loc in locals_[1:]:
        amps = np.multiply.outer(amps, loc)
    grids = np.meshgrid(*[np.arange(c + 1) - c / 2.0 for c in counts], indexing="ij")
    total_m = sum(grids)
    amps = amps * np.exp(-0.5j * mu * total_m ** 2)
    amps = amps / np.linalg.norm(amps)
    return ProductDickeState(tuple(counts), amps)


def kproducible_reference(block_states) -> FockState:
    """Tensor product of independent blocks of modes.

    ``block_states`` is a sequence of FockStates; block b occupies the next
    ``block.modes`` mode slots. Used to falsification-test the depth
    witnesses: the product has no entanglement across blocks.
    """
    blocks = list(block_states)
    if not blocks:
        raise DomainError("need at least one block")
    total_particles = sum(b.n_total for b in blocks)
    total_modes = sum(b.modes for b in blocks)
    count = 1
    for b in blocks:
        count *= len(b.amplitudes)
    if count > MAX_CONFIGURATIONS:
        raise ScaleExceeded("configuration count exceeds the exact-simulation cap")

    amps: dict = {(): 1.0 + 0j}
    for b in blocks:
        new: dict = {}
        for prefix, pa in amps.items():
            for cfg, a in b.amplitudes.items():
                new[prefix + cfg] = pa * a
        amps = new
    return FockState(total_particles, total_modes, amps)


# ---------------------------------------------------------------------------
# dense single-mode algebra (oracle for the Dicke operator tables)
# ---------------------------------------------------------------------------

def dense_spin_matrices(two_j: int):
    """(Jx, Jy, Jz) as dense (2j+1)-dimensional matrices, basis ordered by
    ascending magnetization."""
    j = two_j / 2.0
    dim = two_j + 1
    m = np.arange(dim) - j
    jz = np.diag(m)
    jp = np.zeros((dim, dim))
    for k in range(dim - 1):
        jp[k + 1, k] = math.sqrt(j * (j + 1) - m[k] * (m[k] + 1))
    jx = (jp + jp.T) / 2.0
    jy = (jp - jp.T) / 2.0j
    return jx, jy, jz


def dicke_vector_moment(amps: np.ndarray, matrices) -> complex:
    """<psi| M1 M2 ... |psi> for a collective-basis vector."""
    vec = amps
    for mat in reversed(list(matrices)):
        vec = mat @ vec
    return complex(np.vdot(amps, vec))


# ---------------------------------------------------------------------------
# moment extraction: oracle counterpart of the analytic MomentSets
# ---------------------------------------------------------------------------

def moment_set_from_state(state, r_dirs, s_dirs) -> MomentSet:
    """MomentSet measured on an exact state with per-mode direction lists."""
    modes = state.modes
    r_ops = [j_vec_op(r.components, k) for k, r in enumerate(r_dirs)]
    s_ops = [j_vec_op(s.components, k) for k, s in enumerate(s_dirs)]
    x_ops = [j_op("x", k) for k in range(modes)]

    mean_x = np.array([expect_real(state, op) for op in x_ops])
    cov_ss = np.empty((modes, modes))
    cov_rr = np.empty((modes, modes))
    comm = np.empty((modes, modes))
    for k in range(modes):
        for l in range(modes):
            if l >= k:
                cov_ss[k, l] = cov_ss[l, k] = sym_cov(state, s_ops[k], s_ops[l])
                cov_rr[k, l] = cov_rr[l, k] = sym_cov(state, r_ops[k], r_ops[l])
            comm[k, l] = (-1j * expect(state, commutator(r_ops[k], s_ops[l]))).real
    return MomentSet(mean_x, SymMatrix(cov_ss), SymMatrix(cov_rr), comm,
                     {"provenance": "oracle"})


def quadratic_family_ops(mode: int, m_value: float) -> tuple[Op, Op]:
    """(generator, observable) for the optimal quadratic Dicke measurement
    with rotations about the local x axis:
    X = -m J_y + {J_y, J_z}/2."""
    jy, jz = j_op("y", mode), j_op("z", mode)
    observable = -m_value * jy + 0.5 * anticommutator(jy, jz)
    return j_op("x", mode), observable


def quadratic_moment_set_from_state(state: FockState, dicke: DickeParams) -> MomentSet:
    """Oracle counterpart of the quadratic split-Dicke MomentSet."""
    modes = state.modes
    pairs = [quadratic_family_ops(k, dicke.m) for k in range(modes)]
    r_ops = [p[0] for p in pairs]
    x_ops = [p[1] for p in pairs]

    mean_x = np.array([expect_real(state, j_op("x", k)) for k in range(modes)])
    cov_ss = np.empty((modes, modes))
    cov_rr = np.empty((modes, modes))
    comm = np.empty((modes, modes))
    for k in range(modes):
        for l in range(modes):
            if l >= k:
                cov_ss[k, l] = cov_ss[l, k] = sym_cov(state, x_ops[k], x_ops[l])
                cov_rr[k, l] = cov_rr[l, k] = sym_cov(state, r_ops[k], r_ops[l])
            comm[k, l] = (-1j * expect(state, commutator(r_ops[k], x_ops[l]))).real
    return MomentSet(mean_x, SymMatrix(cov_ss), SymMatrix(cov_rr), comm,
                     {"provenance": "oracle", "s": "optimal-quadratic"})
