"""Variance of AUC estimates and Wald confidence intervals.

The ANOVA estimator treats the ``N x M`` kernel matrix ``I[r, s]`` (1 if
diseased case ``s`` outranks non-diseased case ``r``, 1/2 on a tie, 0
otherwise) as a two-way layout with one observation per cell:
``I = mu + a_r + b_s + e_rs``.  Variance components come from the usual
random-effects moment estimators and combine as

    Var(AUC) = s_a^2 / N + s_b^2 / M + s_e^2 / (N M).

Rows (and columns) falling in the same category share identical kernel
values, so every sum of squares reduces to sums over categories.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Literal

from scipy.special import ndtri

from .counts import CategoryCounts
from .errors import DegenerateSample


@dataclass(frozen=True)
class VarianceEstimate:
    """Estimated variance of an AUC.

    ``sigma_a2`` (between non-diseased cases) and ``sigma_b2`` (between
    diseased cases) are reported unclamped; ``total`` uses
    ``max(0, .)`` of each.  For ``method == "simple"`` the components are NaN.
    """

    total: float
    sigma_a2: float
    sigma_b2: float
    sigma_eps2: float
    method: Literal["anova", "simple"]


@dataclass(frozen=True)
class ConfidenceInterval:
    lower: float
    upper: float
    alpha: float


@dataclass(frozen=True)
class AnovaTable:
    """Mean squares of the two-way layout (kept for inspection and tests)."""

    ms_rows: float
    ms_cols: float
    ms_error: float
    N: int
    M: int


def anova_table(counts: CategoryCounts) -> AnovaTable:
    """Mean squares of the kernel matrix, computed exactly from counts.

    With ``r_c = 2 * #{diseased above c} + m_c`` and
    ``c_d = 2 * #{non-diseased below d} + n_d`` every sum of squares is an
    integer over ``4 N M``; the residual sum is formed in integers, so it is
    never negative.
    """
    m, n = counts.m, counts.n
    M, N = counts.M, counts.N
    if N < 2 or M < 2:
        raise DegenerateSample(
            f"ANOVA variance needs at least 2 cases per class (N={N}, M={M})"
        )
    k = counts.k
    above = [0] * k
    acc = 0
    for i in range(k - 1, -1, -1):
        above[i] = acc
        acc += m[i]
    below = 0
    T = 0  # 2 N M AUC
    sum_n_r2 = 0
    sum_m_c2 = 0
    pairs_lt = 0
    pairs_eq = 0
    for i in range(k):
        r = 2 * above[i] + m[i]
        c = 2 * below + n[i]
        T += m[i] * c
        sum_n_r2 += n[i] * r * r
        sum_m_c2 += m[i] * c * c
        pairs_lt += n[i] * above[i]
        pairs_eq += n[i] * m[i]
        below += n[i]
    ss_rows = N * sum_n_r2 - T * T
    ss_cols = M * sum_m_c2 - T * T
    ss_total = N * M * (4 * pairs_lt + pairs_eq) - T * T
    ss_err = ss_total - ss_rows - ss_cols
    D = 4 * N * M
    return AnovaTable(
        ms_rows=ss_rows / (D * (N - 1)),
        ms_cols=ss_cols / (D * (M - 1)),
        ms_error=ss_err / (D * (N - 1) * (M - 1)),
        N=N,
        M=M,
    )


def anova_variance(counts: CategoryCounts) -> VarianceEstimate:
    """Two-way ANOVA (one observation per cell) variance of the AUC.

    For the constrained AUC pass the pooled counts (``PavaResult.merged``).

    Raises
    ------
    DegenerateSample
        If either class has fewer than two observations.
    """
    t = anova_table(counts)
    sigma_a2 = (t.ms_rows - t.ms_error) / t.M
    sigma_b2 = (t.ms_cols - t.ms_error) / t.N
    sigma_e2 = t.ms_error
    total = max(0.0, sigma_a2) / t.N + max(0.0, sigma_b2) / t.M + sigma_e2 / (t.N * t.M)
    return VarianceEstimate(total, sigma_a2, sigma_b2, sigma_e2, "anova")


def simple_variance(auc: float, N: int, M: int) -> VarianceEstimate:
    """Binomial-like approximation ``AUC (1 - AUC) (1/N + 1/M) / 4``."""
    if not 0.0 <= auc <= 1.0:
        raise ValueError(f"auc must lie in [0, 1], got {auc}")
    if N < 1 or M < 1:
        raise ValueError("N and M must be positive")
    total = auc * (1.0 - auc) * (1.0 / N + 1.0 / M) / 4.0
    return VarianceEstimate(total, math.nan, math.nan, math.nan, "simple")


def z_quantile(alpha: float) -> float:
    """Two-sided normal critical value ``z_{alpha/2}``."""
    return float(ndtri(1.0 - alpha / 2.0))


def wald_ci(auc: float, variance: float, alpha: float = 0.05) -> ConfidenceInterval:
    """``auc +/- z_{alpha/2} sqrt(variance)``, clipped to [0, 1]."""
    if variance < 0:
        raise ValueError("variance must be non-negative")
    if not 0.0 < alpha < 1.0:
        raise ValueError("alpha must lie in (0, 1)")
    half = z_quantile(alpha) * math.sqrt(variance)
    return ConfidenceInterval(max(0.0, auc - half), min(1.0, auc + half), alpha)
