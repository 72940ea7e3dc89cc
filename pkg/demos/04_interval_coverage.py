"""
How often does the 95% interval miss?
=====================================

Simulate rating studies from a normal model, bin the scores into seven
categories, and count how often the Wald interval around the constrained
AUC fails to cover the mean of the estimator.
"""

from rocnpmle.sim import SimConfig, run_experiment

for family, auc, M, ratio, k in [("normal", 0.84, 100, 3, 7), ("uniform", 0.94, 55, 9, 16)]:
    cfg = SimConfig(family, auc, M, ratio=ratio, categories=k, replicates=2000)
    r = run_experiment(cfg, threads=4)
    print(
        f"{family:7s} AUC={auc}  M={M} N={cfg.N} k={k}: "
        f"miss rate {r.coverage_miss_rate:.4f}  (reference AUC {r.coverage_reference:.4f})"
    )

# With only three categories the binned estimator sits well below the
# continuous AUC, so intervals judged against that value miss often even
# though they cover the estimator's own mean at close to the nominal rate.
for reference in ("estimator-mean", "true-auc"):
    cfg = SimConfig("normal", 0.84, 100, ratio=3, categories=3, replicates=2000,
                    coverage_reference=reference)
    r = run_experiment(cfg, threads=4)
    print(f"k=3, reference {reference:15s} ({r.coverage_reference:.4f}): "
          f"miss rate {r.coverage_miss_rate:.4f}")
