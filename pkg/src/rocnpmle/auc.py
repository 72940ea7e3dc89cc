"""Area under the ROC curve from category counts (Mann-Whitney form)."""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Literal

from .counts import CategoryCounts
from .pava import PavaResult
from .roc import RocCurve

Variant = Literal["unconstrained", "constrained"]


@dataclass(frozen=True)
class AucEstimate:
    """AUC point estimate.

    ``exact`` is the rational value; ``value`` its float.
    """

    exact: Fraction
    variant: Variant
    counts_used: CategoryCounts

    @property
    def value(self) -> float:
        return float(self.exact)


def auc_fraction(counts: CategoryCounts) -> Fraction:
    """Exact ``P(Y > X) + P(Y = X)/2`` over category indices.

    Uses ``2 NM AUC = sum_j m_j (2 * #{n below j} + n_j)`` in integers.
    """
    twice = 0
    below = 0
    for mj, nj in zip(counts.m, counts.n):
        twice += mj * (2 * below + nj)
        below += nj
    return Fraction(twice, 2 * counts.N * counts.M)


def auc_unconstrained(counts: CategoryCounts) -> AucEstimate:
    return AucEstimate(auc_fraction(counts), "unconstrained", counts)


def auc_constrained(result: PavaResult) -> AucEstimate:
    """Same kernel applied to the pooled categories."""
    return AucEstimate(auc_fraction(result.merged), "constrained", result.merged)


def trapezoid_area(curve: RocCurve) -> float:
    """Trapezoidal area under the vertex sequence."""
    area = 0.0
    for (x0, y0), (x1, y1) in zip(curve.vertices, curve.vertices[1:]):
        area += (x1 - x0) * (y0 + y1) / 2
    return area
