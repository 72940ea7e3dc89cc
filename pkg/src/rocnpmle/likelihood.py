"""Categorical likelihood of the two rating distributions and an exact oracle.

The log-likelihood is ``sum m_i log p_i + sum n_i log q_i`` (natural log,
multinomial constant dropped).  :func:`oracle_constrained_mle` enumerates
every partition of the categories into contiguous blocks and certifies the
pooled estimate without relying on :mod:`rocnpmle.pava`.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Sequence

import numpy as np
from numpy.typing import ArrayLike, NDArray

from .counts import CategoryCounts
from .errors import OracleLimit

ORACLE_MAX_K = 20


@dataclass(frozen=True)
class LikelihoodValue:
    loglik: float
    convex: bool


def _xlogy(x: float, y: float) -> float:
    if x == 0:
        return 0.0
    if y <= 0:
        return -math.inf
    return x * math.log(y)


def _ratios_monotone(p: Sequence[float], q: Sequence[float], rtol: float = 1e-12) -> bool:
    # p_i/q_i <= p_{i+1}/q_{i+1}, cross-multiplied so q == 0 means +inf;
    # rtol absorbs rounding between equal ratios of a pooled block
    for i in range(len(p) - 1):
        lhs, rhs = p[i] * q[i + 1], p[i + 1] * q[i]
        if lhs > rhs + rtol * max(lhs, rhs):
            return False
    return True


def log_likelihood(
    counts: CategoryCounts, p: Sequence[float], q: Sequence[float]
) -> LikelihoodValue:
    """Log-likelihood of ``counts`` under category probabilities ``p`` and ``q``.

    ``0 * log 0`` is taken as 0; a positive count in a zero-probability
    category gives ``-inf``.
    """
    p = [float(v) for v in p]
    q = [float(v) for v in q]
    if len(p) != counts.k or len(q) != counts.k:
        raise ValueError(f"p and q must have length k={counts.k}")
    if any(v < 0 for v in p + q):
        raise ValueError("probabilities must be non-negative")
    if abs(math.fsum(p) - 1) > 1e-9 or abs(math.fsum(q) - 1) > 1e-9:
        raise ValueError("p and q must each sum to 1")
    terms = [_xlogy(mi, pi) for mi, pi in zip(counts.m, p)]
    terms += [_xlogy(ni, qi) for ni, qi in zip(counts.n, q)]
    total = -math.inf if -math.inf in terms else math.fsum(terms)
    return LikelihoodValue(total, _ratios_monotone(p, q))


def negloglik_components(counts: CategoryCounts, w: ArrayLike) -> NDArray[np.float64]:
    """Per-category terms ``(m_i + n_i) log(N + M w_i) - m_i log w_i``.

    Limits at the boundary: at ``w = inf`` the term is ``m_i log M`` when
    ``n_i == 0`` and ``+inf`` otherwise; at ``w = 0`` it is ``n_i log N`` when
    ``m_i == 0`` and ``+inf`` otherwise.
    """
    w = np.asarray(w, dtype=np.float64)
    m = np.asarray(counts.m, dtype=np.float64)
    n = np.asarray(counts.n, dtype=np.float64)
    if w.shape != m.shape:
        raise ValueError(f"w must have length k={counts.k}")
    if np.any(w < 0) or np.any(np.isnan(w)):
        raise ValueError("likelihood ratios must be non-negative")
    M, N = float(counts.M), float(counts.N)
    out = np.empty_like(w)
    for i, (mi, ni, wi) in enumerate(zip(m, n, w)):
        if np.isinf(wi):
            out[i] = mi * math.log(M) if ni == 0 else math.inf
        elif wi == 0:
            out[i] = ni * math.log(N) if mi == 0 else math.inf
        else:
            out[i] = (mi + ni) * math.log(N + M * wi) - mi * math.log(wi)
    return out


def pooled_probabilities(
    counts: CategoryCounts, blocks: Sequence[Sequence[int]]
) -> tuple[list[float], list[float]]:
    """Maximum-likelihood ``(p, q)`` when each block shares one ratio.

    ``blocks`` lists 1-based original category indices.  Within a block with
    totals ``m_B, n_B`` category ``i`` gets
    ``q_i = (m_i + n_i) n_B / (N (m_B + n_B))`` and
    ``p_i = (m_i + n_i) m_B / (M (m_B + n_B))``.
    """
    M, N = counts.M, counts.N
    p = [0.0] * counts.k
    q = [0.0] * counts.k
    for block in blocks:
        mB = sum(counts.m[i - 1] for i in block)
        nB = sum(counts.n[i - 1] for i in block)
        for i in block:
            t = counts.m[i - 1] + counts.n[i - 1]
            p[i - 1] = t * mB / (M * (mB + nB))
            q[i - 1] = t * nB / (N * (mB + nB))
    return p, q


def _block_loglik(counts: CategoryCounts, lo: int, hi: int) -> float:
    # log-likelihood contribution of 0-based categories lo..hi pooled together
    M, N = counts.M, counts.N
    mB = sum(counts.m[lo : hi + 1])
    nB = sum(counts.n[lo : hi + 1])
    tB = mB + nB
    s = 0.0
    for i in range(lo, hi + 1):
        t = counts.m[i] + counts.n[i]
        s += _xlogy(counts.m[i], t * mB / (M * tB)) + _xlogy(counts.n[i], t * nB / (N * tB))
    return s


@dataclass(frozen=True)
class OracleResult:
    """Outcome of exhaustive contiguous-partition search.

    ``blocks`` is the canonical maximiser (most blocks, then
    lexicographically smallest); ``maximizers`` lists every feasible
    partition whose log-likelihood is within ``tol`` of the maximum.
    """

    blocks: tuple[tuple[int, ...], ...]
    loglik: float
    maximizers: tuple[tuple[tuple[int, ...], ...], ...]
    n_feasible: int


def oracle_constrained_mle(
    counts: CategoryCounts, max_k: int = ORACLE_MAX_K, tol: float = 1e-9
) -> OracleResult:
    """Maximise the likelihood over all monotone contiguous poolings.

    Every partition of ``1..k`` into contiguous blocks whose pooled ratios
    are non-decreasing is visited (depth first, pruning infeasible
    prefixes) and scored by the log-likelihood at its pooled ``(p, q)``.

    Raises
    ------
    OracleLimit
        If ``k`` exceeds ``min(max_k, ORACLE_MAX_K)``.
    """
    k = counts.k
    limit = min(max_k, ORACLE_MAX_K)
    if k > limit:
        raise OracleLimit(f"k={k} exceeds the enumeration limit of {limit} categories")

    # block log-likelihoods and totals, memoised over (lo, hi)
    cache: dict[tuple[int, int], tuple[float, int, int]] = {}

    def block(lo: int, hi: int) -> tuple[float, int, int]:
        key = (lo, hi)
        if key not in cache:
            cache[key] = (
                _block_loglik(counts, lo, hi),
                sum(counts.m[lo : hi + 1]),
                sum(counts.n[lo : hi + 1]),
            )
        return cache[key]

    found: list[tuple[float, tuple[tuple[int, ...], ...]]] = []

    def visit(start: int, prev: tuple[int, int] | None, parts: list[tuple[int, int]], ll: list[float]) -> None:
        if start == k:
            blocks = tuple(tuple(range(lo + 1, hi + 2)) for lo, hi in parts)
            found.append((math.fsum(ll), blocks))
            return
        for hi in range(start, k):
            bl, mB, nB = block(start, hi)
            # pooled ratio must not drop below the previous block's
            if prev is not None and prev[0] * nB > mB * prev[1]:
                continue
            parts.append((start, hi))
            ll.append(bl)
            visit(hi + 1, (mB, nB), parts, ll)
            parts.pop()
            ll.pop()

    visit(0, None, [], [])
    best = max(v for v, _ in found)
    close = [b for v, b in found if v >= best - tol * max(1.0, abs(best))]
    canonical = min(close, key=lambda b: (-len(b), [len(x) for x in b]))
    return OracleResult(
        blocks=canonical,
        loglik=best,
        maximizers=tuple(close),
        n_feasible=len(found),
    )
