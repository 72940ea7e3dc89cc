"""Convexity-constrained nonparametric maximum-likelihood ROC estimation."""

__version__ = "0.1.0"

from .analysis import AnalysisReport, analyze
from .auc import AucEstimate, auc_constrained, auc_unconstrained, trapezoid_area
from .counts import CategoryCounts, ScoreSample, read_counts_csv, tabulate
from .errors import (
    DegenerateSample,
    MissingClass,
    OracleLimit,
    ParamError,
    ParseError,
    RocNpmleError,
)
from .likelihood import log_likelihood, negloglik_components, oracle_constrained_mle
from .pava import PavaResult, constrained_roc, convex_hull_roc, pava
from .roc import RocCurve, empirical_roc, is_convex
from .sim import SimConfig, SimResult, bias_sweep, model_params, run_experiment
from .variance import anova_variance, simple_variance, wald_ci

__all__ = [
    "AnalysisReport", "AucEstimate", "CategoryCounts", "DegenerateSample",
    "MissingClass", "OracleLimit", "ParamError", "ParseError", "PavaResult",
    "RocCurve", "RocNpmleError", "ScoreSample", "SimConfig", "SimResult",
    "analyze", "anova_variance", "auc_constrained", "auc_unconstrained",
    "bias_sweep", "constrained_roc", "convex_hull_roc", "empirical_roc",
    "is_convex", "log_likelihood", "model_params", "negloglik_components",
    "oracle_constrained_mle", "pava", "read_counts_csv", "run_experiment",
    "simple_variance", "tabulate", "trapezoid_area", "wald_ci",
]
