"""Parameter sweeps, optimal-twisting searches, strategy comparisons,
figure-data tables and oracle certification runs.

Everything here is deterministic given its arguments (plus the seed for
certification draws); tables come out as ``{"spec": ..., "grid": [...],
"series": {name: [...]}}`` ready for CSV or JSON serialization.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field

import numpy as np

from . import closed_forms as cf
from . import states as _states
from .errors import DomainError, TargetUnreachable, UnknownFigure
from .linalg import eig_sym
from .matrices import (
    EstimationConfig,
    LinearCombination,
    apply_pi_flips,
    mode_separability_matrix,
    qfi_gain_matrix,
    qfi_mode_gain_matrix,
    squeezing_matrix,
)
from .oracle import (
    dense_spin_matrices,
    expect,
    expect_real,
    j_vec_op,
    moment_set_from_state,
    npn_state,
    oat_state,
    quadratic_moment_set_from_state,
    split_dicke_state,
    split_state,
)
from .states import (
    DICKE_FAMILY_9,
    DickeParams,
    Direction,
    SplitConfig,
    dicke_operator_tables,
    optimal_directions,
    split_dicke_quadratic_moments,
    split_dicke_spin_moments,
    split_squeezed_moments,
)

__all__ = [
    "optimal_mu",
    "StrategyComparison",
    "strategy_comparison",
    "figure_data",
    "gradient_example",
    "CertificationReport",
    "oracle_certify",
    "SweepSpec",
    "run_sweep",
]

_GRID_POINTS = 2048
_GOLDEN_TOL = 1e-10


def _search_domain(n: float) -> tuple[float, float]:
    """Twisting-phase search interval.

    The minimized eigenvalues are symmetric under mu -> 2*pi - mu, so
    (0, pi] suffices; real-valued particle numbers additionally require
    cos(mu) > 0, restricting to (0, pi/2).
    """
    integer_n = abs(n - round(n)) < 1e-9
    hi = math.pi if integer_n else math.pi / 2 * (1 - 1e-12)
    return 1e-9, hi


def _golden_section(f, lo: float, hi: float, tol: float) -> tuple[float, float]:
    invphi = (math.sqrt(5.0) - 1.0) / 2.0
    a, b = lo, hi
    c, d = b - invphi * (b - a), a + invphi * (b - a)
    fc, fd = f(c), f(d)
    while b - a > tol:
        if fc < fd:
            b, d, fd = d, c, fc
            c = b - invphi * (b - a)
            fc = f(c)
        else:
            a, c, fc = c, d, fd
            d = a + invphi * (b - a)
            fd = f(d)
    x = 0.5 * (a + b)
    return x, f(x)


def optimal_mu(objective: str, n_total: float, modes: int | None = None,
               partition_noise: bool = True) -> tuple[float, float]:
    """Global minimum of an eigenvalue objective over the twisting phase.

    ``objective`` is ``"lambda_min_xi2"`` or ``"lambda_min_xi2_ms"`` (equal
    split, needs ``modes``). A 2048-point geometric coarse grid over the
    search interval brackets the minimum; golden-section refinement brings
    the bracket below 1e-10. Returns ``(mu_star, value)``. Optimization
    runs on the log of the objective so the polarization decay cannot
    underflow at large particle numbers.
    """
    if n_total < 2:
        raise DomainError("optimization requires n_total >= 2")
    if objective == "lambda_min_xi2":
        def log_obj(mu: float) -> float:
            return cf.log_lambda_min_xi2(n_total, mu)
    elif objective == "lambda_min_xi2_ms":
        if modes is None or modes < 1:
            raise DomainError("the mode-separability objective needs a mode count")

        def log_obj(mu: float) -> float:
            return cf.log_lambda_min_xi2_ms_equal(n_total, modes, mu, partition_noise)
    else:
        raise DomainError(f"unknown objective {objective!r}")

    lo, hi = _search_domain(n_total)
    grid = np.geomspace(lo, hi, _GRID_POINTS)
    values = [log_obj(float(mu)) for mu in grid]
    k = int(np.argmin(values))
    a = float(grid[max(k - 1, 0)])
    b = float(grid[min(k + 1, len(grid) - 1)])
    mu_star, log_val = _golden_section(log_obj, a, b, _GOLDEN_TOL)
    return mu_star, math.exp(log_val)


# ---------------------------------------------------------------------------
# local vs nonlocal strategies
# ---------------------------------------------------------------------------

@dataclass(frozen=True)
class StrategyComparison:
    """Optimized quantum gains of mode-entangled vs mode-local strategies
    for the estimation of one linear parameter combination."""

    n_coefficients: tuple
    xi2_me_opt: float
    xi2_ms_opt: float
    gain_ratio: float
    mu_star_nonlocal: float
    mu_star_local: tuple

    def to_dict(self) -> dict:
        return {
            "n_coefficients": list(self.n_coefficients),
            "xi2_me_opt": self.xi2_me_opt,
            "xi2_ms_opt": self.xi2_ms_opt,
            "gain_ratio": self.gain_ratio,
            "mu_star_nonlocal": self.mu_star_nonlocal,
            "mu_star_local": list(self.mu_star_local),
        }


def strategy_comparison(n_total: float, modes: int,
                        weights: LinearCombination | None = None) -> StrategyComparison:
    """Compare the best mode-entangled strategy against independent local
    squeezing with the same average particle numbers.

    Nonlocal: twist all N particles to the global optimum, split with
    p_k = n_k^2 and flip modes with negative n_k; the achieved gain equals
    the collective squeezing before splitting. Local: each mode holds
    n_k^2 * N particles squeezed to its own optimum; the gain is the
    n_k^2-weighted average of the local optima. ``gain_ratio`` > 1 means
    mode entanglement helps.
    """
    if weights is None:
        weights = LinearCombination(np.full(modes, 1.0 / math.sqrt(modes)))
    weights.require_normalized()
    n_vec = weights.coefficients
    if n_vec.size != modes:
        raise DomainError("need one coefficient per mode")
    if np.any(n_vec == 0.0):
        raise DomainError("zero coefficients leave a mode unused; drop it instead")

    mu_nonlocal, xi2_me = optimal_mu("lambda_min_xi2", n_total)

    locals_mu = []
    xi2_ms = 0.0
    for nk in n_vec:
        n_local = nk * nk * n_total
        if n_local < 2:
            raise DomainError("each local ensemble needs at least two particles")
        mu_k, val_k = optimal_mu("lambda_min_xi2", n_local)
        locals_mu.append(mu_k)
        xi2_ms += nk * nk * val_k

    return StrategyComparison(
        n_coefficients=tuple(float(x) for x in n_vec),
        xi2_me_opt=xi2_me,
        xi2_ms_opt=xi2_ms,
        gain_ratio=xi2_ms / xi2_me,
        mu_star_nonlocal=mu_nonlocal,
        mu_star_local=tuple(locals_mu),
    )


# ---------------------------------------------------------------------------
# figure-data tables
# ---------------------------------------------------------------------------

def _table(spec: dict, grid, series: dict) -> dict:
    return {
        "spec": spec,
        "grid": [float(g) for g in grid],
        "series": {name: [float(v) for v in vals] for name, vals in series.items()},
    }


def _fig2a(n: int = 500, modes_list=(2, 4, 6), mu_lo: float = 1e-3,
           mu_hi: float = 1.0, points: int = 160) -> dict:
    grid = np.geomspace(mu_lo, mu_hi, points)
    series: dict = {}
    for m in modes_list:
        for pn, tag in ((True, "pn"), (False, "npn")):
            series[f"lambda_min_xi2_ms_{tag}_M{m}"] = [
                cf.lambda_min_xi2_ms_equal(n, m, mu, pn) for mu in grid
            ]
            series[f"inv_lambda_max_chi2_ms_{tag}_M{m}"] = [
                1.0 / cf.lambda_max_chi_inv2_ms_equal(n, m, mu, pn) for mu in grid
            ]
    return _table({"figure": "fig2a", "n": n, "modes_list": list(modes_list)},
                  grid, series)


def _fig2b(n_lo: float = 10.0, n_hi: float = 1e5, points: int = 25,
           modes_list=(2, 4, 6)) -> dict:
    grid = np.geomspace(n_lo, n_hi, points)
    series: dict = {}
    for m in modes_list:
        for pn, tag in ((True, "pn"), (False, "npn")):
            vals = [optimal_mu("lambda_min_xi2_ms", n, m, pn)[1] for n in grid]
            series[f"min_lambda_min_xi2_ms_{tag}_M{m}"] = vals
        series[f"bound_1_over_{m - 1}" if m > 1 else "bound_1"] = [
            1.0 / max(m - 1, 1)
        ] * len(grid)
        series[f"asymptote_1_over_{m}"] = [1.0 / m] * len(grid)
    return _table({"figure": "fig2b", "modes_list": list(modes_list)}, grid, series)


def _fig3(axis: str = "M", n_list=(100, 10_000, 1_000_000), m_list=(2, 3, 4),
          m_lo: int = 1, m_hi: int = 8, n_lo: float = 1e2, n_hi: float = 1e6,
          n_points: int = 13) -> dict:
    if axis == "M":
        grid = np.arange(m_lo, m_hi + 1)
        series = {}
        for n in n_list:
            series[f"gain_ratio_N{n}"] = [
                strategy_comparison(n, int(m)).gain_ratio if m > 1 else 1.0
                for m in grid
            ]
        series["asymptote_M23"] = [float(m) ** (2.0 / 3.0) for m in grid]
    elif axis == "N":
        grid = np.geomspace(n_lo, n_hi, n_points)
        series = {}
        for m in m_list:
            series[f"gain_ratio_M{m}"] = [
                strategy_comparison(float(n), int(m)).gain_ratio for n in grid
            ]
            series[f"asymptote_M{m}"] = [float(m) ** (2.0 / 3.0)] * len(grid)
    else:
        raise DomainError("fig3 axis must be 'M' or 'N'")
    return _table({"figure": "fig3", "axis": axis}, grid, series)


def _fig5(n: int = 100, m_list=(0, 10, 25, 40), p_lo: float = 0.05,
          p_hi: float = 0.95, points: int = 46) -> dict:
    grid = np.linspace(p_lo, p_hi, points)
    series: dict = {}
    j = n / 2.0
    for m in m_list:
        dicke = DickeParams.from_jm(j, m)
        vals = []
        for p in grid:
            cfg = SplitConfig.probabilistic(n, (float(p), float(1.0 - p)))
            ms = split_dicke_quadratic_moments(cfg, dicke)
            xi = squeezing_matrix(ms, EstimationConfig.for_split(cfg))
            vals.append(xi.lambda_min())
        series[f"lambda_min_xi2_nl_m{m}"] = vals
        series[f"unsplit_reference_m{m}"] = [
            1.0 / cf.lambda_max_chi_inv2_dicke(dicke)
        ] * len(grid)
    return _table({"figure": "fig5", "n": n, "m_list": list(m_list)}, grid, series)


def _fig6(n: int = 100, m_list=(0, 10, 25, 40), modes_lo: int = 2,
          modes_hi: int = 60) -> dict:
    grid = np.arange(modes_lo, modes_hi + 1)
    series: dict = {}
    j = n / 2.0
    for m in m_list:
        dicke = DickeParams.from_jm(j, m)
        series[f"inv_lambda_max_chi2_ms_m{m}"] = [
            1.0 / cf.lambda_max_chi_inv2_ms_dicke(dicke, int(mm)) for mm in grid
        ]
    return _table({"figure": "fig6", "n": n, "m_list": list(m_list)}, grid, series)


_FIGURES = {"fig2a": _fig2a, "fig2b": _fig2b, "fig3": _fig3, "fig5": _fig5,
            "fig6": _fig6}


def figure_data(which: str, **overrides) -> dict:
    """Regenerate the data behind one of the reference figures."""
    try:
        builder = _FIGURES[which]
    except KeyError:
        raise UnknownFigure(f"unknown figure {which!r}") from None
    return builder(**overrides)


# ---------------------------------------------------------------------------
# gradient-sensing worked example
# ---------------------------------------------------------------------------

def _db(x: float) -> float:
    return 10.0 * math.log10(x)


def gradient_example(n_total: int = 1000, target_db: float = -10.0,
                     repetitions: int = 1) -> dict:
    """Two-mode gradient estimation with a split squeezed ensemble.

    Finds the twisting phase at which the collective squeezing reaches
    ``target_db``, splits equally with a pi flip on the second mode (mapping
    the optimal combination to the difference (theta_A - theta_B)/sqrt(2)),
    and compares against independent local ensembles prepared as the
    reduced single-mode states.

    The absolute phase uncertainty is reported under two conventions,
    ``sqrt(xi^2)/sqrt(eta N)`` (the squeezing-ratio definition) and
    ``xi^2/sqrt(eta N)``; the local-to-nonlocal uncertainty ratio
    ``(xi_A^2/xi^2) * sqrt(N/N_A)`` corresponds to the second reading.
    """
    mu_opt, best = optimal_mu("lambda_min_xi2", n_total)
    if target_db < _db(best):
        raise TargetUnreachable(
            f"target {target_db} dB is below the optimum {_db(best):.3f} dB"
        )
    target = 10.0 ** (target_db / 10.0)

    def resid(mu: float) -> float:
        return _db(cf.lambda_min_xi2_pn(n_total, mu)) - target_db

    lo, hi = 1e-9, mu_opt
    # The collective squeezing decreases monotonically from 1 at mu -> 0 to
    # the optimum; bisect that branch to 1e-6 dB.
    for _ in range(200):
        mid = 0.5 * (lo + hi)
        r = resid(mid)
        if r > 0:
            lo = mid
        else:
            hi = mid
        if abs(r) < 1e-6 and hi - lo < 1e-12:
            break
    mu = 0.5 * (lo + hi)

    cfg = SplitConfig.probabilistic(n_total, (0.5, 0.5))
    ms = apply_pi_flips(split_squeezed_moments(cfg, mu), (False, True))
    est = EstimationConfig.for_split(cfg, repetitions)
    xi = squeezing_matrix(ms, est)
    dec = eig_sym(xi.matrix)
    xi2_global = dec.lambda_min
    # Diagonal entries of the squeezing matrix are the local Wineland
    # ratios of the reduced states.
    xi2_local = float(xi.array[0, 0])

    n_a = n_total / 2.0
    eta = float(repetitions)
    out = {
        "n_total": n_total,
        "repetitions": repetitions,
        "mu": mu,
        "xi2_global": xi2_global,
        "xi2_global_db": _db(xi2_global),
        "xi2_local": xi2_local,
        "xi2_local_db": _db(xi2_local),
        "best_combination": "(theta_A - theta_B)/sqrt(2)",
        # sqrt-convention: Delta = xi / sqrt(eta N)
        "delta_nonlocal_sqrt_convention": math.sqrt(xi2_global / (eta * n_total)),
        "delta_local_sqrt_convention": math.sqrt(xi2_local / (eta * n_a)),
        # squared-convention: Delta = xi^2 / sqrt(eta N)
        "delta_nonlocal_squared_convention": xi2_global / math.sqrt(eta * n_total),
        "delta_local_squared_convention": xi2_local / math.sqrt(eta * n_a),
        "uncertainty_ratio": (xi2_local / xi2_global) * math.sqrt(n_total / n_a),
    }
    return out


# ---------------------------------------------------------------------------
# oracle certification
# ---------------------------------------------------------------------------

@dataclass(frozen=True)
class CertificationReport:
    tolerance: float
    draws: int
    max_deviation: dict = field(default_factory=dict)

    @property
    def passed(self) -> bool:
        return all(v <= self.tolerance for v in self.max_deviation.values())

    def failing_families(self) -> list:
        return [k for k, v in self.max_deviation.items() if v > self.tolerance]

    def to_dict(self) -> dict:
        return {
            "tolerance": self.tolerance,
            "draws": self.draws,
            "max_deviation": dict(self.max_deviation),
            "passed": self.passed,
            "failing_families": self.failing_families(),
        }


def _moment_set_deviation(analytic, oracle_ms) -> float:
    return max(
        float(np.max(np.abs(analytic.mean_x - oracle_ms.mean_x))),
        float(np.max(np.abs(analytic.cov_ss.array - oracle_ms.cov_ss.array))),
        float(np.max(np.abs(analytic.cov_rr.array - oracle_ms.cov_rr.array))),
        float(np.max(np.abs(analytic.comm - oracle_ms.comm))),
    )


def _random_direction(rng) -> Direction:
    v = rng.normal(size=3)
    v /= np.linalg.norm(v)
    return Direction(v)


def _random_probs(rng, modes: int) -> tuple:
    p = rng.dirichlet(np.ones(modes) * 5.0)
    p = np.clip(p, 0.05, None)
    p = p / p.sum()
    return tuple(float(x) for x in p)


def oracle_certify(max_n: int = 8, seed: int = 1, draws: int = 20,
                   tolerance: float = 1e-10) -> CertificationReport:
    """Certify every analytic moment family against the exact simulation.

    Runs ``draws`` seeded random parameter draws per family with particle
    numbers up to ``max_n`` and two or three modes, and records the largest
    absolute deviation between the closed forms and brute-force expectation
    values.
    """
    if max_n > 8:
        raise DomainError("certification is specified for max_n <= 8")
    rng = np.random.default_rng(seed)
    dev: dict[str, float] = {}
    if max_n < 2:
        return CertificationReport(tolerance, draws, {})

    worst = 0.0
    for _ in range(draws):
        n = int(rng.integers(2, max_n + 1))
        modes = int(rng.integers(2, 4))
        mu = float(rng.uniform(0.05, 2.0 * math.pi - 0.05))
        p = _random_probs(rng, modes)
        dirs = [(_random_direction(rng), _random_direction(rng)) for _ in range(modes)]
        if rng.uniform() < 0.5:
            r, s = optimal_directions(n, mu)
            dirs = [(r, s)] * modes
        cfg = SplitConfig.probabilistic(n, p)
        analytic = split_squeezed_moments(cfg, mu, dirs)
        state = split_state(oat_state(n, mu), p)
        oracle_ms = moment_set_from_state(state, [d[0] for d in dirs],
                                          [d[1] for d in dirs])
        worst = max(worst, _moment_set_deviation(analytic, oracle_ms))

        # Certify the squeezed/anti-squeezed pair-coefficient structure of
        # the optimal-direction covariances against the exact state.
        fm, fp = _states.twist_coeffs(n, mu)
        r, s = optimal_directions(n, mu)
        opt = moment_set_from_state(state, [r] * modes, [s] * modes)
        pair = n * (n - 1.0) / 4.0
        pvec = np.asarray(p)
        for coeff, cov in ((fm, opt.cov_ss.array), (fp, opt.cov_rr.array)):
            expected = pair * coeff * np.outer(pvec, pvec) + np.diag(pvec) * n / 4.0
            worst = max(worst, float(np.max(np.abs(cov - expected))))
    dev["split_squeezed_pn"] = worst

    worst = 0.0
    for _ in range(draws):
        modes = int(rng.integers(2, 4))
        while True:
            counts = tuple(int(c) for c in rng.integers(1, 4, size=modes))
            if 2 <= sum(counts) <= max_n:
                break
        n = sum(counts)
        mu = float(rng.uniform(0.05, 2.0 * math.pi - 0.05))
        dirs = [(_random_direction(rng), _random_direction(rng)) for _ in range(modes)]
        cfg = SplitConfig.deterministic(counts)
        analytic = split_squeezed_moments(cfg, mu, dirs)
        oracle_ms = moment_set_from_state(npn_state(cfg, mu),
                                          [d[0] for d in dirs], [d[1] for d in dirs])
        worst = max(worst, _moment_set_deviation(analytic, oracle_ms))
    dev["split_squeezed_npn"] = worst

    worst = 0.0
    for _ in range(draws):
        n = int(rng.integers(2, max_n + 1))
        modes = int(rng.integers(2, 4))
        two_m = int(rng.integers(-n, n + 1))
        if (n - two_m) % 2:
            two_m += 1 if two_m < n else -1
        dicke = DickeParams(n, two_m)
        p = _random_probs(rng, modes)
        cfg = SplitConfig.probabilistic(n, p)
        state = split_dicke_state(dicke, p)
        u, v = _random_direction(rng), _random_direction(rng)
        k = int(rng.integers(0, modes))
        l = int(rng.integers(0, modes))
        mean, second, pair = split_dicke_spin_moments(cfg, dicke, u, v, k, l)
        om = expect_real(state, j_vec_op(u.components, k))
        osec = expect(state, j_vec_op(u.components, k) * j_vec_op(u.components, k)).real
        op_uv = j_vec_op(u.components, k) * j_vec_op(v.components, l)
        op_vu = j_vec_op(v.components, l) * j_vec_op(u.components, k)
        opair = 0.5 * (expect(state, op_uv) + expect(state, op_vu)).real
        worst = max(worst, abs(mean - om), abs(second - osec), abs(pair - opair))
    dev["split_dicke_linear"] = worst

    worst = 0.0
    for _ in range(draws):
        two_j = int(rng.integers(1, max_n + 1))
        two_m = int(rng.integers(-two_j, two_j + 1))
        if (two_j - two_m) % 2:
            two_m += 1 if two_m < two_j else -1
        dicke = DickeParams(two_j, two_m)
        cov, comm = dicke_operator_tables(dicke)
        jx, jy, jz = dense_spin_matrices(two_j)
        ops = {
            "Jx": jx, "Jy": jy, "Jz": jz,
            "{Jx,Jz}/2": (jx @ jz + jz @ jx) / 2.0,
            "{Jx,Jy}/2": (jx @ jy + jy @ jx) / 2.0,
            "{Jy,Jz}/2": (jy @ jz + jz @ jy) / 2.0,
            "Jx2": jx @ jx, "Jy2": jy @ jy, "Jz2": jz @ jz,
        }
        vec = np.zeros(two_j + 1)
        vec[(two_j + two_m) // 2] = 1.0

        def ex(mat) -> complex:
            return complex(np.vdot(vec, mat @ vec))

        for a in DICKE_FAMILY_9:
            for b in DICKE_FAMILY_9:
                num = (ex(ops[a] @ ops[b] + ops[b] @ ops[a]) / 2.0
                       - ex(ops[a]) * ex(ops[b])).real
                worst = max(worst, abs(cov[(a, b)] - num))
        for (a, b), val in comm.items():
            num = (-1j * ex(ops[a] @ ops[b] - ops[b] @ ops[a])).real
            worst = max(worst, abs(val - num))
    dev["dicke_single_mode_tables"] = worst

    worst = 0.0
    for _ in range(draws):
        two_j = int(rng.integers(2, max_n + 1))
        two_m = int(rng.integers(-two_j, two_j + 1))
        if (two_j - two_m) % 2:
            two_m += 1 if two_m < two_j else -1
        dicke = DickeParams(two_j, two_m)
        modes = int(rng.integers(2, 4))
        p = _random_probs(rng, modes)
        cfg = SplitConfig.probabilistic(two_j, p)
        analytic = split_dicke_quadratic_moments(cfg, dicke)
        state = split_dicke_state(dicke, p)
        oracle_ms = quadratic_moment_set_from_state(state, dicke)
        worst = max(worst, _moment_set_deviation(analytic, oracle_ms))
    dev["split_dicke_quadratic"] = worst

    return CertificationReport(tolerance, draws, dev)


# ---------------------------------------------------------------------------
# parameter sweeps
# ---------------------------------------------------------------------------

DEFAULT_SWEEP_OUTPUTS = (
    "lambda_min_xi2",
    "lambda_max_xi2",
    "lambda_min_xi2_ms",
    "inv_lambda_max_chi2",
    "inv_lambda_max_chi2_ms",
)


@dataclass(frozen=True)
class SweepSpec:
    """One sweep: a state family, its split, and a strictly increasing grid.

    For the squeezed families the grid is the twisting phase; for the split
    Dicke family (two modes) it is the first splitting probability at fixed
    magnetization ``m_value``.
    """

    state_kind: str
    n_total: int
    modes: int
    grid: tuple
    split: tuple | None = None
    m_value: float | None = None
    outputs: tuple = DEFAULT_SWEEP_OUTPUTS
    repetitions: int = 1

    def __post_init__(self):
        if self.state_kind not in ("sss_pn", "sss_npn", "dicke_pn"):
            raise DomainError(f"unknown state kind {self.state_kind!r}")
        g = tuple(float(x) for x in self.grid)
        if any(b <= a for a, b in zip(g, g[1:])):
            raise DomainError("sweep grid must be strictly increasing")
        if self.state_kind in ("sss_pn", "sss_npn") and any(
                not 0.0 <= x < 2.0 * math.pi for x in g):
            raise DomainError("twisting grid must lie in [0, 2*pi)")
        object.__setattr__(self, "grid", g)
        if self.state_kind == "dicke_pn":
            if self.m_value is None:
                raise DomainError("the split-Dicke sweep needs m_value")
            if self.modes != 2:
                raise DomainError("the split-Dicke sweep is two-mode")

    def config(self, grid_value: float) -> SplitConfig:
        if self.state_kind == "sss_npn":
            counts = self.split or tuple([self.n_total // self.modes] * self.modes)
            return SplitConfig.deterministic(counts)
        if self.state_kind == "dicke_pn":
            return SplitConfig.probabilistic(
                self.n_total, (grid_value, 1.0 - grid_value))
        p = self.split or tuple([1.0 / self.modes] * self.modes)
        return SplitConfig.probabilistic(self.n_total, p)


def _sweep_point(spec: SweepSpec, value: float) -> dict:
    cfg = spec.config(value)
    est = EstimationConfig.for_split(cfg, spec.repetitions)
    if spec.state_kind == "dicke_pn":
        dicke = DickeParams.from_jm(spec.n_total / 2.0, spec.m_value)
        ms = split_dicke_quadratic_moments(cfg, dicke)
    else:
        ms = split_squeezed_moments(cfg, value)
    quantities = {
        "lambda_min_xi2": lambda: squeezing_matrix(ms, est).lambda_min(),
        "lambda_max_xi2": lambda: squeezing_matrix(ms, est).lambda_max(),
        "lambda_min_xi2_ms": lambda: mode_separability_matrix(ms).lambda_min(),
        "inv_lambda_max_chi2":
            lambda: 1.0 / qfi_gain_matrix(ms, est, pure_state=True).lambda_max(),
        "inv_lambda_max_chi2_ms":
            lambda: 1.0 / qfi_mode_gain_matrix(ms, pure_state=True).lambda_max(),
    }
    out = {}
    for name in spec.outputs:
        if name not in quantities:
            raise DomainError(f"unknown output quantity {name!r}")
        out[name] = quantities[name]()
    return out


def run_sweep(spec: SweepSpec) -> dict:
    """Evaluate all requested quantities over the sweep grid."""
    rows = [_sweep_point(spec, v) for v in spec.grid]
    series = {name: [row[name] for row in rows] for name in spec.outputs}
    meta = {
        "state": spec.state_kind,
        "n": spec.n_total,
        "modes": spec.modes,
        "split": list(spec.split) if spec.split else None,
        "m_value": spec.m_value,
        "repetitions": spec.repetitions,
    }
    return _table(meta, spec.grid, series)
