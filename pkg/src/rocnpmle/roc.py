"""Empirical (unconstrained NPMLE) ROC curve.

Orientation
-----------
Vertices run from ``(0, 0)`` (cutoff above the highest category) to
``(1, 1)`` (cutoff at the lowest category).  Vertex ``j`` counts everything in
the top ``j`` categories, so category ``i`` (1-based, lowest first) is the
segment between vertices ``k - i`` and ``k - i + 1``.  In the tail-sum
notation ``P_i, Q_i`` that runs from ``(1, 1)`` downward, vertex ``j`` here is
``(Q_{k-j}, P_{k-j})``.

``ratios`` are listed per category, lowest first, so a proper (convex) curve
has non-decreasing ``ratios``.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from itertools import accumulate

from .counts import CategoryCounts


@dataclass(frozen=True)
class RocCurve:
    """Piecewise-linear ROC curve built from category counts.

    ``cum_n`` and ``cum_m`` are the integer numerators of the vertex
    coordinates (``fpr = cum_n / N``, ``tpr = cum_m / M``); exact geometry
    uses them instead of the floats.
    """

    fpr: tuple[float, ...]
    tpr: tuple[float, ...]
    ratios: tuple[float, ...]
    p: tuple[float, ...]
    q: tuple[float, ...]
    cum_m: tuple[int, ...]
    cum_n: tuple[int, ...]

    @property
    def k(self) -> int:
        return len(self.ratios)

    @property
    def M(self) -> int:
        return self.cum_m[-1]

    @property
    def N(self) -> int:
        return self.cum_n[-1]

    @property
    def vertices(self) -> list[tuple[float, float]]:
        return list(zip(self.fpr, self.tpr))

    def counts(self) -> CategoryCounts:
        """Recover per-category counts (lowest category first)."""
        dm = [b - a for a, b in zip(self.cum_m, self.cum_m[1:])][::-1]
        dn = [b - a for a, b in zip(self.cum_n, self.cum_n[1:])][::-1]
        return CategoryCounts(tuple(dm), tuple(dn))


def likelihood_ratio(m_i: int, n_i: int, M: int, N: int) -> float:
    """``(m_i/M) / (n_i/N)``, with ``+inf`` when ``n_i == 0 < m_i``."""
    if n_i == 0:
        return math.inf if m_i > 0 else math.nan
    return (m_i * N) / (n_i * M)


def curve_from_cumulative(cum_m: tuple[int, ...], cum_n: tuple[int, ...]) -> RocCurve:
    """Build a curve from integer cumulative counts taken from the top down."""
    M, N = cum_m[-1], cum_n[-1]
    dm = [b - a for a, b in zip(cum_m, cum_m[1:])][::-1]
    dn = [b - a for a, b in zip(cum_n, cum_n[1:])][::-1]
    return RocCurve(
        fpr=tuple(c / N for c in cum_n),
        tpr=tuple(c / M for c in cum_m),
        ratios=tuple(likelihood_ratio(a, b, M, N) for a, b in zip(dm, dn)),
        p=tuple(a / M for a in dm),
        q=tuple(b / N for b in dn),
        cum_m=tuple(cum_m),
        cum_n=tuple(cum_n),
    )


def empirical_roc(counts: CategoryCounts) -> RocCurve:
    """The usual empirical ROC curve, ``p_i = m_i/M`` and ``q_i = n_i/N``."""
    cum_m = (0, *accumulate(reversed(counts.m)))
    cum_n = (0, *accumulate(reversed(counts.n)))
    return curve_from_cumulative(cum_m, cum_n)


def is_convex(curve: RocCurve) -> bool:
    """True iff the per-category likelihood ratios are non-decreasing.

    Compared exactly through the integer counts: ``w_i <= w_{i+1}`` iff
    ``m_i n_{i+1} <= m_{i+1} n_i``, which also orders ``inf`` correctly.
    """
    c = curve.counts()
    return all(
        c.m[i] * c.n[i + 1] <= c.m[i + 1] * c.n[i] for i in range(c.k - 1)
    )
