"""Convexity-constrained NPMLE of the ROC curve by pooling adjacent violators.

Adjacent categories whose likelihood ratios decrease are pooled (counts
added) until the ratios are non-decreasing.  The pooled counts are the
constrained maximum-likelihood estimate; their ROC curve is the concave
hull of the empirical curve, which :func:`convex_hull_roc` computes
independently.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np
from numpy.typing import NDArray

from .counts import CategoryCounts
from .roc import RocCurve, curve_from_cumulative, empirical_roc, likelihood_ratio


@dataclass(frozen=True)
class PavaResult:
    """Pooled categories and the map from original to pooled index.

    Attributes
    ----------
    original : CategoryCounts
        Input counts.
    merged : CategoryCounts
        Pooled counts, ``k_merged <= k`` categories.  Labels are the original
        labels of each block joined with ``";"``.
    index_map : tuple of int
        ``index_map[i - 1]`` is the 1-based pooled category holding original
        category ``i``.
    ratios : tuple of float
        Pooled likelihood ratios ``(m/M) / (n/N)``; ``inf`` where ``n == 0``.
    """

    original: CategoryCounts
    merged: CategoryCounts
    index_map: tuple[int, ...]
    ratios: tuple[float, ...]

    @property
    def k_merged(self) -> int:
        return self.merged.k

    @property
    def blocks(self) -> list[tuple[int, ...]]:
        """Original 1-based category indices in each pooled category."""
        out: list[list[int]] = [[] for _ in range(self.merged.k)]
        for i, j in enumerate(self.index_map, start=1):
            out[j - 1].append(i)
        return [tuple(b) for b in out]

    def reassign(self, category_of: NDArray[np.intp]) -> NDArray[np.intp]:
        """Map per-observation original category indices to pooled ones."""
        lookup = np.asarray((0, *self.index_map), dtype=np.intp)
        return lookup[np.asarray(category_of, dtype=np.intp)]

    def unnormalized_ratios(self) -> tuple[float, ...]:
        """Pooled ``m/n`` without the ``N/M`` factor, as tabulated by hand."""
        return tuple(likelihood_ratio(a, b, 1, 1) for a, b in zip(self.merged.m, self.merged.n))


def _violates(m1: int, n1: int, m2: int, n2: int) -> bool:
    # m1/n1 > m2/n2 by cross-multiplication; inf > finite, inf == inf
    return m1 * n2 > m2 * n1


def pava(counts: CategoryCounts) -> PavaResult:
    """Pool adjacent violators until the likelihood ratios are monotone.

    Scans left to right; after each pooling the new block is re-checked
    against its left neighbour.  Only strict decreases are pooled, so
    adjacent equal ratios stay separate.
    """
    # each block: [m, n, first original index, last original index]
    stack: list[list[int]] = []
    for i, (mi, ni) in enumerate(zip(counts.m, counts.n)):
        stack.append([mi, ni, i, i])
        while len(stack) > 1 and _violates(stack[-2][0], stack[-2][1], stack[-1][0], stack[-1][1]):
            top = stack.pop()
            stack[-1][0] += top[0]
            stack[-1][1] += top[1]
            stack[-1][3] = top[3]

    index_map: list[int] = []
    labels: list[str] = []
    for j, (_, _, lo, hi) in enumerate(stack, start=1):
        index_map.extend([j] * (hi - lo + 1))
        labels.append(";".join(counts.labels[lo : hi + 1]))
    merged = CategoryCounts(
        tuple(b[0] for b in stack), tuple(b[1] for b in stack), tuple(labels)
    )
    M, N = counts.M, counts.N
    return PavaResult(
        original=counts,
        merged=merged,
        index_map=tuple(index_map),
        ratios=tuple(likelihood_ratio(b[0], b[1], M, N) for b in stack),
    )


def constrained_roc(result: PavaResult) -> RocCurve:
    """ROC curve of the pooled counts; convex by construction."""
    return empirical_roc(result.merged)


def convex_hull_roc(curve: RocCurve) -> RocCurve:
    """Least concave majorant of the ROC vertices.

    Upper hull by a monotone-chain sweep over the integer vertex
    coordinates ``(cum_n, cum_m)``.  Collinear vertices are kept, matching
    the strict pooling rule of :func:`pava`.
    """
    xs, ys = curve.cum_n, curve.cum_m
    hull: list[int] = []
    for j in range(len(xs)):
        while len(hull) >= 2:
            a, b = hull[-2], hull[-1]
            cross = (xs[b] - xs[a]) * (ys[j] - ys[a]) - (ys[b] - ys[a]) * (xs[j] - xs[a])
            if cross > 0:  # b strictly below chord a -> j
                hull.pop()
            else:
                break
        hull.append(j)
    return curve_from_cumulative(
        tuple(ys[j] for j in hull), tuple(xs[j] for j in hull)
    )
