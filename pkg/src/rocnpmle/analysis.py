"""One-call analysis of a rating dataset: both AUCs, their variances and CIs."""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Any

from .auc import AucEstimate, auc_constrained, auc_unconstrained
from .counts import CategoryCounts
from .errors import DegenerateSample
from .pava import PavaResult, pava
from .variance import (
    ConfidenceInterval,
    VarianceEstimate,
    anova_variance,
    simple_variance,
    wald_ci,
)

SCHEMA_VERSION = 1


@dataclass(frozen=True)
class VariantReport:
    auc: AucEstimate
    anova: VarianceEstimate | None  # None when a class has < 2 cases
    simple: VarianceEstimate
    ci: ConfidenceInterval | None


@dataclass(frozen=True)
class AnalysisReport:
    label: str
    counts: CategoryCounts
    pava: PavaResult
    alpha: float
    unconstrained: VariantReport
    constrained: VariantReport

    @property
    def k(self) -> int:
        return self.counts.k

    @property
    def k_merged(self) -> int:
        return self.pava.k_merged

    @property
    def degenerate(self) -> bool:
        return self.unconstrained.anova is None

    def to_dict(self) -> dict[str, Any]:
        """JSON-ready form; see :data:`ANALYSIS_SCHEMA`."""
        def ratio(v: float) -> float | None:
            return None if math.isinf(v) else v

        def variant(v: VariantReport) -> dict[str, Any]:
            return {
                "auc": v.auc.value,
                "auc_exact": f"{v.auc.exact.numerator}/{v.auc.exact.denominator}",
                "variance_anova": None if v.anova is None else v.anova.total,
                "components": None if v.anova is None else {
                    "sigma_a2": v.anova.sigma_a2,
                    "sigma_b2": v.anova.sigma_b2,
                    "sigma_eps2": v.anova.sigma_eps2,
                },
                "variance_simple": v.simple.total,
                "ci": None if v.ci is None else {"lower": v.ci.lower, "upper": v.ci.upper},
            }

        r = self.pava
        return {
            "schema_version": SCHEMA_VERSION,
            "dataset": self.label,
            "alpha": self.alpha,
            "k": self.k,
            "k_merged": self.k_merged,
            "counts": {
                "labels": list(self.counts.labels),
                "diseased": list(self.counts.m),
                "nondiseased": list(self.counts.n),
            },
            "merged": {
                "labels": list(r.merged.labels),
                "diseased": list(r.merged.m),
                "nondiseased": list(r.merged.n),
                "index_map": list(r.index_map),
                "ratios": [ratio(v) for v in r.ratios],
                "unnormalized_ratios": [ratio(v) for v in r.unnormalized_ratios()],
            },
            "unconstrained": variant(self.unconstrained),
            "constrained": variant(self.constrained),
        }


def _variant(auc: AucEstimate, alpha: float) -> VariantReport:
    c = auc.counts_used
    simple = simple_variance(auc.value, c.N, c.M)
    try:
        anova = anova_variance(c)
    except DegenerateSample:
        return VariantReport(auc, None, simple, None)
    return VariantReport(auc, anova, simple, wald_ci(auc.value, anova.total, alpha))


def analyze(counts: CategoryCounts, alpha: float = 0.05, label: str = "") -> AnalysisReport:
    """Empirical and constrained AUC with ANOVA and simple variances.

    The Wald interval uses the ANOVA variance.  If a class has fewer than two
    cases the ANOVA fields and intervals are ``None``.
    """
    result = pava(counts)
    return AnalysisReport(
        label=label,
        counts=counts,
        pava=result,
        alpha=alpha,
        unconstrained=_variant(auc_unconstrained(counts), alpha),
        constrained=_variant(auc_constrained(result), alpha),
    )


_num_or_null = {"type": ["number", "null"]}
_int_list = {"type": "array", "items": {"type": "integer", "minimum": 0}}
_variant_schema = {
    "type": "object",
    "required": ["auc", "auc_exact", "variance_anova", "components", "variance_simple", "ci"],
    "additionalProperties": False,
    "properties": {
        "auc": {"type": "number", "minimum": 0, "maximum": 1},
        "auc_exact": {"type": "string", "pattern": r"^\d+/\d+$"},
        "variance_anova": {"type": ["number", "null"], "minimum": 0},
        "components": {
            "type": ["object", "null"],
            "required": ["sigma_a2", "sigma_b2", "sigma_eps2"],
            "properties": {
                "sigma_a2": {"type": "number"},
                "sigma_b2": {"type": "number"},
                "sigma_eps2": {"type": "number", "minimum": 0},
            },
        },
        "variance_simple": {"type": "number", "minimum": 0},
        "ci": {
            "type": ["object", "null"],
            "required": ["lower", "upper"],
            "properties": {
                "lower": {"type": "number", "minimum": 0, "maximum": 1},
                "upper": {"type": "number", "minimum": 0, "maximum": 1},
            },
        },
    },
}

ANALYSIS_SCHEMA: dict[str, Any] = {
    "$schema": "https://json-schema.org/draft/2020-12/schema",
    "title": "roc-npmle analysis report",
    "type": "object",
    "required": [
        "schema_version", "dataset", "alpha", "k", "k_merged",
        "counts", "merged", "unconstrained", "constrained",
    ],
    "additionalProperties": False,
    "properties": {
        "schema_version": {"const": SCHEMA_VERSION},
        "dataset": {"type": "string"},
        "alpha": {"type": "number", "exclusiveMinimum": 0, "exclusiveMaximum": 1},
        "k": {"type": "integer", "minimum": 1},
        "k_merged": {"type": "integer", "minimum": 1},
        "counts": {
            "type": "object",
            "required": ["labels", "diseased", "nondiseased"],
            "properties": {
                "labels": {"type": "array", "items": {"type": "string"}},
                "diseased": _int_list,
                "nondiseased": _int_list,
            },
        },
        "merged": {
            "type": "object",
            "required": ["labels", "diseased", "nondiseased", "index_map", "ratios", "unnormalized_ratios"],
            "properties": {
                "labels": {"type": "array", "items": {"type": "string"}},
                "diseased": _int_list,
                "nondiseased": _int_list,
                "index_map": {"type": "array", "items": {"type": "integer", "minimum": 1}},
                # null encodes +inf
                "ratios": {"type": "array", "items": _num_or_null},
                "unnormalized_ratios": {"type": "array", "items": _num_or_null},
            },
        },
        "unconstrained": _variant_schema,
        "constrained": _variant_schema,
    },
}
