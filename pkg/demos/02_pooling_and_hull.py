"""
Pooling adjacent violators and the convex hull
==============================================

A proper ROC curve has non-decreasing likelihood ratios along the rating
scale.  Pooling adjacent categories that break this order gives the
constrained estimate, whose curve is exactly the upper convex hull of the
empirical one.
"""

import math
from pathlib import Path

from rocnpmle import constrained_roc, convex_hull_roc, empirical_roc, is_convex, pava, read_counts_csv

DATA = Path(__file__).resolve().parent.parent / "data" / "radiologist5.csv"
counts = read_counts_csv(DATA)


def fmt(ratios):
    return " ".join("inf" if math.isinf(r) else f"{r:.2f}" for r in ratios)


# Raw ratios m_i / n_i dip at category 4 and again at category 8.
print("raw ratios:   ", fmt(a / b if b else math.inf for a, b in zip(counts.m, counts.n)))
print("convex?", is_convex(empirical_roc(counts)))

result = pava(counts)
print("pooled blocks:", result.blocks)
print("pooled ratios:", fmt(result.unnormalized_ratios()))

# The curve through the pooled counts coincides with the hull of the
# empirical curve, vertex for vertex.
pooled = constrained_roc(result)
hull = convex_hull_roc(empirical_roc(counts))
print("hull == pooled curve:", pooled.vertices == hull.vertices)
for x, y in pooled.vertices:
    print(f"  ({x:.4f}, {y:.4f})")
