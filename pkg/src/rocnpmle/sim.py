"""Monte Carlo studies of the constrained and unconstrained AUC estimators.

Each replicate draws ``M`` diseased and ``N`` non-diseased scores from a
normal (``N(mu, 1)`` vs ``N(0, 1)``) or uniform (``U(0, m)`` vs ``U(0, 1)``)
model with a given true AUC, discretizes them into ``k`` categories, and
records both AUC estimates, their ANOVA variances, and the Wald interval
around the constrained AUC.

Coverage reference
------------------
Discretization lowers the attainable AUC (with ``k = 3`` the binned
population AUC can sit 0.1 below the continuous one), so an interval for the
discretized estimator almost never covers the continuous AUC.  The default
reference is therefore the Monte Carlo mean of the constrained AUC over all
replicates of the cell (``"estimator-mean"``), which isolates the accuracy of
the variance estimate.  ``"true-auc"`` compares against the continuous target
and ``"discretized-auc"`` against the exact population AUC after binning.

Replicate ``j`` always uses the random stream
``SeedSequence(seed, spawn_key=(j,))``, so results do not depend on the
number of worker threads or the order in which replicates finish.
"""

from __future__ import annotations

import math
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass, field
from typing import Literal, Sequence

import numpy as np
from numpy.typing import NDArray
from scipy.optimize import brentq
from scipy.special import ndtr, ndtri

from .auc import auc_fraction
from .counts import CategoryCounts, ScoreSample
from .errors import ParamError
from .pava import pava
from .variance import anova_variance, z_quantile

Family = Literal["normal", "uniform"]
BinMode = Literal["mixture-quantile", "population-quantile", "pooled-quantile"]
CoverageReference = Literal["estimator-mean", "true-auc", "discretized-auc"]

DEFAULT_SEED = 20120101
DEFAULT_REPLICATES = 2000
FULL_SCALE_REPLICATES = 10_000
BIAS_GRID = tuple(round(0.60 + 0.01 * i, 2) for i in range(40))  # .60 .. .99
# bias-study sample sizes: 55 non-diseased, 110 diseased
BIAS_N_NONDISEASED = 55
BIAS_M_DISEASED = 110


def model_params(family: Family, target_auc: float) -> float:
    """Location (normal) or upper bound (uniform) giving ``target_auc``.

    normal: ``mu = sqrt(2) * Phi^{-1}(AUC)``; uniform: ``m = 1 / (2 (1 - AUC))``.
    """
    if not 0.5 <= target_auc < 1.0:
        raise ParamError(f"target AUC must lie in [0.5, 1), got {target_auc}")
    if family == "normal":
        return math.sqrt(2.0) * float(ndtri(target_auc))
    if family == "uniform":
        return 1.0 / (2.0 * (1.0 - target_auc))
    raise ParamError(f"unknown family {family!r}")


def _cdfs(family: Family, param: float):
    if family == "normal":
        return (lambda t: ndtr(t - param)), ndtr
    return (lambda t: np.clip(t / param, 0.0, 1.0)), (lambda t: np.clip(t, 0.0, 1.0))


def population_edges(family: Family, k: int) -> NDArray[np.float64]:
    """The ``k - 1`` equal-probability quantiles of the non-diseased model."""
    probs = np.arange(1, k) / k
    if family == "normal":
        return ndtri(probs)
    return probs


def mixture_edges(family: Family, param: float, M: int, N: int, k: int) -> NDArray[np.float64]:
    """The ``k - 1`` equal-probability quantiles of the combined population.

    The combined distribution weights the diseased model by ``M / (M + N)``
    and the non-diseased model by ``N / (M + N)``.
    """
    cdf_y, cdf_x = _cdfs(family, param)
    w = M / (M + N)
    lo, hi = (-12.0, param + 12.0) if family == "normal" else (0.0, param)
    return np.array([
        brentq(lambda t: w * cdf_y(t) + (1 - w) * cdf_x(t) - q, lo, hi, xtol=1e-14)
        for q in np.arange(1, k) / k
    ])


def discretized_auc(family: Family, param: float, edges: NDArray[np.float64]) -> float:
    """Population AUC (ties counted 1/2) after binning at ``edges``."""
    cdf_y, cdf_x = _cdfs(family, param)
    cuts = np.concatenate([[-np.inf], edges, [np.inf]])
    py = np.diff(cdf_y(cuts))
    px = np.diff(cdf_x(cuts))
    below = np.concatenate([[0.0], np.cumsum(px)[:-1]])
    return float(np.sum(py * (below + px / 2)))


@dataclass(frozen=True)
class SimConfig:
    """One simulation cell.

    ``n_nondiseased`` overrides ``N = ratio * M`` when the design is not an
    integer multiple (the bias study uses N=55, M=110).
    """

    family: Family
    target_auc: float
    m_diseased: int
    ratio: int = 1
    categories: int = 7
    replicates: int = DEFAULT_REPLICATES
    alpha: float = 0.05
    seed: int = DEFAULT_SEED
    bin_mode: BinMode = "mixture-quantile"
    n_nondiseased: int | None = None
    coverage_reference: CoverageReference = "estimator-mean"

    def __post_init__(self) -> None:
        if self.family not in ("normal", "uniform"):
            raise ParamError(f"unknown family {self.family!r}")
        if not 0.5 < self.target_auc < 1.0:
            raise ParamError(f"target AUC must lie in (0.5, 1), got {self.target_auc}")
        if self.m_diseased < 2 or self.N < 2:
            raise ParamError("each class needs at least 2 observations per replicate")
        if self.ratio < 1 or self.categories < 1 or self.replicates < 1:
            raise ParamError("ratio, categories and replicates must be positive")
        if not 0.0 < self.alpha < 1.0:
            raise ParamError("alpha must lie in (0, 1)")
        if self.seed < 0:
            raise ParamError("seed must be non-negative")
        if self.bin_mode not in ("mixture-quantile", "population-quantile", "pooled-quantile"):
            raise ParamError(f"unknown bin mode {self.bin_mode!r}")
        if self.coverage_reference not in ("estimator-mean", "true-auc", "discretized-auc"):
            raise ParamError(f"unknown coverage reference {self.coverage_reference!r}")
        if self.coverage_reference == "discretized-auc" and self.bin_mode == "pooled-quantile":
            raise ParamError("discretized-auc reference needs data-independent bins")

    @property
    def M(self) -> int:
        return self.m_diseased

    @property
    def N(self) -> int:
        if self.n_nondiseased is not None:
            return self.n_nondiseased
        return self.ratio * self.m_diseased


@dataclass(frozen=True)
class ReplicateTable:
    """Per-replicate outputs, indexed by replicate number."""

    auc_unconstrained: NDArray[np.float64]
    auc_constrained: NDArray[np.float64]
    var_unconstrained: NDArray[np.float64]
    var_constrained: NDArray[np.float64]
    ci_lower: NDArray[np.float64]
    ci_upper: NDArray[np.float64]

    def misses(self, reference: float) -> NDArray[np.bool_]:
        """Replicates whose constrained-AUC interval excludes ``reference``."""
        return (reference < self.ci_lower) | (reference > self.ci_upper)


@dataclass(frozen=True)
class SimResult:
    config: SimConfig
    mean_auc_unconstrained: float
    mean_auc_constrained: float
    sd_auc_unconstrained: float
    sd_auc_constrained: float
    mean_var_unconstrained: float
    mean_var_constrained: float
    coverage_miss_rate: float
    coverage_reference: float
    replicates_run: int


def replicate_rng(seed: int, index: int) -> np.random.Generator:
    return np.random.default_rng(np.random.SeedSequence(seed, spawn_key=(index,)))


def _draw(
    config: SimConfig, rng: np.random.Generator, param: float
) -> tuple[NDArray[np.float64], NDArray[np.float64]]:
    if config.family == "normal":
        y = rng.normal(param, 1.0, config.M)
        x = rng.normal(0.0, 1.0, config.N)
    else:
        y = rng.uniform(0.0, param, config.M)
        x = rng.uniform(0.0, 1.0, config.N)
    return y, x


def fixed_edges(config: SimConfig, param: float) -> NDArray[np.float64] | None:
    """Data-independent bin edges for ``config``; None for pooled-sample bins."""
    if config.bin_mode == "mixture-quantile":
        return mixture_edges(config.family, param, config.M, config.N, config.categories)
    if config.bin_mode == "population-quantile":
        return population_edges(config.family, config.categories)
    return None


def _edges(
    config: SimConfig, fixed: NDArray | None, y: NDArray, x: NDArray
) -> NDArray[np.float64]:
    if fixed is not None:
        return fixed
    k = config.categories
    return np.quantile(np.concatenate([y, x]), np.arange(1, k) / k)


def draw_sample(
    config: SimConfig, rng: np.random.Generator, param: float | None = None
) -> ScoreSample:
    """One combined sample, discretized into ``config.categories`` bins.

    ``param`` overrides the model parameter derived from ``target_auc``.
    """
    if param is None:
        param = model_params(config.family, config.target_auc)
    y, x = _draw(config, rng, param)
    scores = np.concatenate([y, x])
    labels = np.concatenate([np.ones(config.M, np.int8), np.zeros(config.N, np.int8)])
    edges = _edges(config, fixed_edges(config, param), y, x)
    return ScoreSample.from_scores(scores, labels, edges)


def _counts(
    config: SimConfig, rng: np.random.Generator, param: float, fixed: NDArray | None
) -> CategoryCounts:
    # same draws and binning as draw_sample, without per-observation bookkeeping
    y, x = _draw(config, rng, param)
    edges = _edges(config, fixed, y, x)
    k = config.categories
    m = np.bincount(np.searchsorted(edges, y, side="right"), minlength=k)
    n = np.bincount(np.searchsorted(edges, x, side="right"), minlength=k)
    return CategoryCounts(tuple(m.tolist()), tuple(n.tolist()))


def _run_range(
    config: SimConfig, param: float, fixed: NDArray | None, z: float,
    lo: int, hi: int, out: NDArray,
) -> None:
    for j in range(lo, hi):
        counts = _counts(config, replicate_rng(config.seed, j), param, fixed)
        merged = pava(counts).merged
        a_u = float(auc_fraction(counts))
        a_c = float(auc_fraction(merged))
        v_u = anova_variance(counts).total
        v_c = anova_variance(merged).total
        half = z * math.sqrt(v_c)
        out[j] = (a_u, a_c, v_u, v_c, max(0.0, a_c - half), min(1.0, a_c + half))


def simulate_replicates(config: SimConfig, threads: int = 1) -> ReplicateTable:
    """Run every replicate of ``config`` and keep the per-replicate values."""
    param = model_params(config.family, config.target_auc)
    fixed = fixed_edges(config, param)
    z = z_quantile(config.alpha)
    R = config.replicates
    out = np.empty((R, 6), dtype=np.float64)
    threads = max(1, min(int(threads), R))
    if threads == 1:
        _run_range(config, param, fixed, z, 0, R, out)
    else:
        bounds = np.linspace(0, R, threads + 1).astype(int)
        with ThreadPoolExecutor(max_workers=threads) as pool:
            futures = [
                pool.submit(_run_range, config, param, fixed, z, int(lo), int(hi), out)
                for lo, hi in zip(bounds[:-1], bounds[1:])
            ]
            for f in futures:
                f.result()
    return ReplicateTable(
        auc_unconstrained=out[:, 0].copy(),
        auc_constrained=out[:, 1].copy(),
        var_unconstrained=out[:, 2].copy(),
        var_constrained=out[:, 3].copy(),
        ci_lower=out[:, 4].copy(),
        ci_upper=out[:, 5].copy(),
    )


def _sd(a: NDArray) -> float:
    return float(np.std(a, ddof=1)) if a.size > 1 else 0.0


def coverage_reference(config: SimConfig, table: ReplicateTable) -> float:
    """The AUC value the intervals are checked against (see module notes)."""
    if config.coverage_reference == "estimator-mean":
        return float(np.mean(table.auc_constrained))
    if config.coverage_reference == "true-auc":
        return config.target_auc
    param = model_params(config.family, config.target_auc)
    return discretized_auc(config.family, param, fixed_edges(config, param))


def summarize(config: SimConfig, table: ReplicateTable) -> SimResult:
    ref = coverage_reference(config, table)
    return SimResult(
        config=config,
        mean_auc_unconstrained=float(np.mean(table.auc_unconstrained)),
        mean_auc_constrained=float(np.mean(table.auc_constrained)),
        sd_auc_unconstrained=_sd(table.auc_unconstrained),
        sd_auc_constrained=_sd(table.auc_constrained),
        mean_var_unconstrained=float(np.mean(table.var_unconstrained)),
        mean_var_constrained=float(np.mean(table.var_constrained)),
        coverage_miss_rate=float(np.mean(table.misses(ref))),
        coverage_reference=ref,
        replicates_run=int(table.ci_lower.size),
    )


def run_experiment(config: SimConfig, threads: int = 1) -> SimResult:
    """Aggregate bias, spread, mean variance and CI miss rate for one cell."""
    return summarize(config, simulate_replicates(config, threads))


@dataclass(frozen=True)
class BiasPoint:
    target_auc: float
    mean_unconstrained: float
    mean_constrained: float

    @property
    def fractional_bias_unconstrained(self) -> float:
        return self.mean_unconstrained / self.target_auc

    @property
    def fractional_bias_constrained(self) -> float:
        return self.mean_constrained / self.target_auc


def bias_sweep(
    family: Family,
    auc_grid: Sequence[float] = BIAS_GRID,
    M: int = BIAS_M_DISEASED,
    N: int = BIAS_N_NONDISEASED,
    k: int = 7,
    replicates: int = DEFAULT_REPLICATES,
    seed: int = DEFAULT_SEED,
    threads: int = 1,
    bin_mode: BinMode = "mixture-quantile",
) -> list[BiasPoint]:
    """Mean AUC estimates across a grid of true AUC values.

    Every grid point reuses ``seed`` (common random numbers), which keeps the
    curve smooth across the grid.
    """
    points = []
    for auc in auc_grid:
        cfg = SimConfig(
            family, float(auc), M, categories=k, replicates=replicates,
            seed=seed, n_nondiseased=N, bin_mode=bin_mode,
        )
        r = run_experiment(cfg, threads)
        points.append(BiasPoint(float(auc), r.mean_auc_unconstrained, r.mean_auc_constrained))
    return points


@dataclass(frozen=True)
class CoverageGrid:
    """Cartesian grid of simulation cells in the coverage-table layout."""

    family: Family
    aucs: Sequence[float]
    m_values: Sequence[int]
    ratios: Sequence[int]
    categories: Sequence[int]
    replicates: int = DEFAULT_REPLICATES
    alpha: float = 0.05
    seed: int = DEFAULT_SEED
    bin_mode: BinMode = "mixture-quantile"
    coverage_reference: CoverageReference = "estimator-mean"
    configs: tuple[SimConfig, ...] = field(init=False)

    def __post_init__(self) -> None:
        cells = tuple(
            SimConfig(
                self.family, float(a), int(M), int(r), int(k), self.replicates,
                self.alpha, self.seed, self.bin_mode,
                coverage_reference=self.coverage_reference,
            )
            for a in self.aucs
            for M in self.m_values
            for k in self.categories
            for r in self.ratios
        )
        object.__setattr__(self, "configs", cells)
