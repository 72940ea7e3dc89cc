"""Categorized two-class rating data.

A rating study with ``k`` ordered categories is summarised by two count
vectors: ``m`` (signal-present / diseased) and ``n`` (signal-absent /
non-diseased).  Category 1 is the lowest rating, category ``k`` the highest.
"""

from __future__ import annotations

import csv
from dataclasses import dataclass, field
from pathlib import Path
from typing import Iterable, Sequence

import numpy as np
from numpy.typing import NDArray

from .errors import MissingClass, ParseError

COUNTS_HEADER = ("category", "diseased", "nondiseased")
SCORES_HEADER = ("score", "label")


@dataclass(frozen=True)
class CategoryCounts:
    """Per-category counts for the two classes.

    Empty categories (``m_i == n_i == 0``) are dropped on construction; the
    labels of the surviving categories are kept in ``labels``.

    Attributes
    ----------
    m : tuple of int
        Signal-present counts per category, lowest category first.
    n : tuple of int
        Signal-absent counts per category.
    labels : tuple of str
        Original category labels.  Defaults to ``"1".."k"`` before dropping.
    """

    m: tuple[int, ...]
    n: tuple[int, ...]
    labels: tuple[str, ...] = field(default=())

    def __post_init__(self) -> None:
        m = tuple(int(v) for v in self.m)
        n = tuple(int(v) for v in self.n)
        if len(m) != len(n):
            raise ValueError(f"m and n differ in length: {len(m)} != {len(n)}")
        labels = tuple(str(v) for v in self.labels) or tuple(
            str(i + 1) for i in range(len(m))
        )
        if len(labels) != len(m):
            raise ValueError("labels must have one entry per category")
        if any(v < 0 for v in m + n):
            raise ValueError("counts must be non-negative")
        keep = [i for i in range(len(m)) if m[i] or n[i]]
        m = tuple(m[i] for i in keep)
        n = tuple(n[i] for i in keep)
        labels = tuple(labels[i] for i in keep)
        if sum(m) < 1:
            raise MissingClass("no signal-present (diseased) observations")
        if sum(n) < 1:
            raise MissingClass("no signal-absent (non-diseased) observations")
        object.__setattr__(self, "m", m)
        object.__setattr__(self, "n", n)
        object.__setattr__(self, "labels", labels)

    @property
    def k(self) -> int:
        return len(self.m)

    @property
    def M(self) -> int:
        """Total signal-present count."""
        return sum(self.m)

    @property
    def N(self) -> int:
        """Total signal-absent count."""
        return sum(self.n)

    def swap_classes(self) -> CategoryCounts:
        """Exchange the roles of the two classes."""
        return CategoryCounts(self.n, self.m, self.labels)


@dataclass(frozen=True)
class ScoreSample:
    """Per-observation ratings with their class and category index.

    ``labels`` holds 1 for signal-present and 0 for signal-absent;
    ``category_of`` holds 1-based category indices.  ``category_labels``
    optionally names each index (entry ``j - 1`` names category ``j``).
    """

    scores: NDArray[np.float64]
    labels: NDArray[np.int8]
    category_of: NDArray[np.intp]
    category_labels: tuple[str, ...] = ()

    def __post_init__(self) -> None:
        scores = np.asarray(self.scores, dtype=np.float64)
        labels = np.asarray(self.labels, dtype=np.int8)
        cats = np.asarray(self.category_of, dtype=np.intp)
        if not (scores.shape == labels.shape == cats.shape) or scores.ndim != 1:
            raise ValueError("scores, labels and category_of must be 1-D of equal length")
        if not np.isin(labels, (0, 1)).all():
            raise ValueError("labels must be 0 (signal-absent) or 1 (signal-present)")
        if cats.size and cats.min() < 1:
            raise ValueError("category indices start at 1")
        order = np.argsort(scores, kind="stable")
        if np.any(np.diff(cats[order]) < 0):
            raise ValueError("category indices are not order-consistent with scores")
        object.__setattr__(self, "scores", scores)
        object.__setattr__(self, "labels", labels)
        object.__setattr__(self, "category_of", cats)
        object.__setattr__(self, "category_labels", tuple(self.category_labels))

    @classmethod
    def from_scores(
        cls,
        scores: Sequence[float],
        labels: Sequence[int],
        edges: Sequence[float] | None = None,
    ) -> ScoreSample:
        """Bin raw scores into ordered categories.

        Without ``edges`` every distinct score value is its own category.
        With ascending ``edges`` a score ``x`` falls in category
        ``1 + #{edges <= x}``.
        """
        scores = np.asarray(scores, dtype=np.float64)
        if edges is None:
            values, cats = np.unique(scores, return_inverse=True)
            names = tuple(f"{v:g}" for v in values)
            return cls(scores, labels, cats.reshape(-1) + 1, names)
        edges = np.asarray(edges, dtype=np.float64)
        if np.any(np.diff(edges) <= 0):
            raise ValueError("bin edges must be strictly increasing")
        cats = np.searchsorted(edges, scores, side="right") + 1
        return cls(scores, labels, cats, tuple(str(i) for i in range(1, len(edges) + 2)))


def tabulate(sample: ScoreSample) -> CategoryCounts:
    """Count observations per category and class."""
    if sample.scores.size == 0:
        raise MissingClass("empty sample")
    k = int(sample.category_of.max())
    present = sample.labels == 1
    m = np.bincount(sample.category_of[present], minlength=k + 1)[1:]
    n = np.bincount(sample.category_of[~present], minlength=k + 1)[1:]
    names = sample.category_labels
    if len(names) < k:
        names = tuple(str(i) for i in range(1, k + 1))
    return CategoryCounts(tuple(m.tolist()), tuple(n.tolist()), names[:k])


def expand(counts: CategoryCounts) -> ScoreSample:
    """One observation per count, scored by its category index."""
    idx = np.arange(1, counts.k + 1)
    cats = np.concatenate([np.repeat(idx, counts.m), np.repeat(idx, counts.n)])
    labels = np.concatenate([np.ones(counts.M, np.int8), np.zeros(counts.N, np.int8)])
    return ScoreSample(cats.astype(np.float64), labels, cats, counts.labels)


def _as_number(label: str) -> float | None:
    try:
        return float(label)
    except ValueError:
        return None


def _parse_count(token: str, what: str, row: int) -> int:
    try:
        value = int(token.strip())
    except ValueError:
        raise ParseError(f"{what} count {token!r} is not an integer", row) from None
    if value < 0:
        raise ParseError(f"{what} count is negative ({value})", row)
    return value


def parse_counts_rows(lines: Iterable[str]) -> CategoryCounts:
    """Parse ``category,diseased,nondiseased`` CSV text."""
    reader = csv.reader(lines)
    header = next(reader, None)
    if header is None or tuple(h.strip().lower() for h in header) != COUNTS_HEADER:
        raise ParseError(f"expected header {','.join(COUNTS_HEADER)}", 1)
    labels: list[str] = []
    m: list[int] = []
    n: list[int] = []
    for row_no, row in enumerate(reader, start=2):
        if not row or all(not c.strip() for c in row):
            continue
        if len(row) != 3:
            raise ParseError(f"expected 3 fields, got {len(row)}", row_no)
        label = row[0].strip()
        if not label:
            raise ParseError("empty category label", row_no)
        if label in labels:
            raise ParseError(f"duplicate category {label!r}", row_no)
        # numeric labels must ascend; other tokens are ordered as listed
        if labels:
            prev, cur = _as_number(labels[-1]), _as_number(label)
            if prev is not None and cur is not None and cur <= prev:
                raise ParseError(f"category {label!r} is out of ascending order", row_no)
        labels.append(label)
        m.append(_parse_count(row[1], "diseased", row_no))
        n.append(_parse_count(row[2], "nondiseased", row_no))
    if not labels:
        raise ParseError("no data rows")
    return CategoryCounts(tuple(m), tuple(n), tuple(labels))


def read_counts_csv(path: str | Path) -> CategoryCounts:
    """Read a counts file with header ``category,diseased,nondiseased``."""
    with open(path, newline="", encoding="utf-8") as fh:
        return parse_counts_rows(fh)


def read_scores_csv(
    path: str | Path, edges: Sequence[float] | None = None
) -> ScoreSample:
    """Read a ``score,label`` file (label 1 = signal-present, 0 = absent)."""
    scores: list[float] = []
    labels: list[int] = []
    with open(path, newline="", encoding="utf-8") as fh:
        reader = csv.reader(fh)
        header = next(reader, None)
        if header is None or tuple(h.strip().lower() for h in header) != SCORES_HEADER:
            raise ParseError(f"expected header {','.join(SCORES_HEADER)}", 1)
        for row_no, row in enumerate(reader, start=2):
            if not row or all(not c.strip() for c in row):
                continue
            if len(row) != 2:
                raise ParseError(f"expected 2 fields, got {len(row)}", row_no)
            try:
                score = float(row[0])
            except ValueError:
                raise ParseError(f"score {row[0]!r} is not a number", row_no) from None
            if not np.isfinite(score):
                raise ParseError("score must be finite", row_no)
            label = row[1].strip()
            if label not in ("0", "1"):
                raise ParseError(f"label must be 0 or 1, got {label!r}", row_no)
            scores.append(score)
            labels.append(int(label))
    if not scores:
        raise ParseError("no data rows")
    return ScoreSample.from_scores(scores, labels, edges)


def read_bin_edges(path: str | Path) -> list[float]:
    """One bin edge per line, ascending.  Blank lines and ``#`` comments skipped."""
    edges: list[float] = []
    with open(path, encoding="utf-8") as fh:
        for row_no, line in enumerate(fh, start=1):
            line = line.split("#", 1)[0].strip()
            if not line:
                continue
            try:
                edges.append(float(line))
            except ValueError:
                raise ParseError(f"bin edge {line!r} is not a number", row_no) from None
    if any(b <= a for a, b in zip(edges, edges[1:])):
        raise ParseError("bin edges must be strictly increasing")
    return edges


def sniff_format(path: str | Path) -> str:
    """Return ``"counts"`` or ``"scores"`` according to the file header."""
    with open(path, newline="", encoding="utf-8") as fh:
        header = next(csv.reader(fh), None)
    cols = tuple(h.strip().lower() for h in header or ())
    if cols == COUNTS_HEADER:
        return "counts"
    if cols == SCORES_HEADER:
        return "scores"
    raise ParseError(
        f"unrecognised header {','.join(cols)!r}; expected "
        f"{','.join(COUNTS_HEADER)} or {','.join(SCORES_HEADER)}",
        1,
    )


def random_counts(
    rng: np.random.Generator, max_k: int = 8, max_count: int = 20
) -> CategoryCounts:
    """Random counts with ``k <= max_k`` and per-category counts ``<= max_count``.

    A quarter of the cells are forced to zero so infinite and zero likelihood
    ratios show up often.  Draws are repeated until both classes are non-empty.
    """
    while True:
        k = int(rng.integers(1, max_k + 1))
        m = rng.integers(0, max_count + 1, size=k) * (rng.random(k) >= 0.25)
        n = rng.integers(0, max_count + 1, size=k) * (rng.random(k) >= 0.25)
        if m.sum() > 0 and n.sum() > 0:
            return CategoryCounts(tuple(m.tolist()), tuple(n.tolist()))
