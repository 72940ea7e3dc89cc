from __future__ import annotations

import math

import numpy as np
import pytest
from hypothesis import given, settings
from scipy.optimize import minimize_scalar

from rocnpmle.counts import CategoryCounts
from rocnpmle.errors import OracleLimit
from rocnpmle.likelihood import (
    log_likelihood,
    negloglik_components,
    oracle_constrained_mle,
    pooled_probabilities,
)
from rocnpmle.pava import pava

from .conftest import category_counts
from .oracles import contiguous_partitions


def _empirical(c):
    return [v / c.M for v in c.m], [v / c.N for v in c.n]


def test_single_category_loglik_is_zero():
    assert log_likelihood(CategoryCounts((7,), (3,)), [1.0], [1.0]).loglik == 0.0


def test_half_half():
    v = log_likelihood(CategoryCounts((1, 1), (1, 1)), [0.5, 0.5], [0.5, 0.5])
    assert v.loglik == pytest.approx(4 * math.log(0.5))
    assert v.loglik == pytest.approx(-2.7726, abs=5e-5)
    assert v.convex


def test_radiologist_unconstrained_loglik(rad5):
    expected = sum(m * math.log(m / 40) for m in rad5.m if m) + sum(
        n * math.log(n / 72) for n in rad5.n if n
    )
    v = log_likelihood(rad5, *_empirical(rad5))
    assert v.loglik == pytest.approx(expected, rel=1e-13)
    assert not v.convex


def test_zero_probability_with_positive_count():
    c = CategoryCounts((1, 1), (1, 1))
    assert log_likelihood(c, [1.0, 0.0], [0.5, 0.5]).loglik == -math.inf


def test_invalid_probability_vectors():
    c = CategoryCounts((1, 1), (1, 1))
    with pytest.raises(ValueError):
        log_likelihood(c, [0.6, 0.6], [0.5, 0.5])
    with pytest.raises(ValueError):
        log_likelihood(c, [1.0], [1.0])


def test_component_example():
    c = CategoryCounts((1, 1), (1, 1))
    comp = negloglik_components(c, [1.0, 1.0])
    assert comp[0] == pytest.approx(2 * math.log(4))
    assert comp[0] == pytest.approx(2.7726, abs=5e-5)


def test_component_limits():
    c = CategoryCounts((2, 3), (4, 0))
    comp = negloglik_components(c, [0.0, math.inf])
    assert comp[0] == math.inf  # m > 0 at w = 0
    assert comp[1] == pytest.approx(3 * math.log(5))
    c2 = CategoryCounts((0, 3), (4, 1))
    assert negloglik_components(c2, [0.0, 1.0])[0] == pytest.approx(4 * math.log(5))


@pytest.mark.parametrize("mi, ni", [(3, 5), (10, 2), (1, 1), (7, 20)])
def test_component_minimised_at_empirical_ratio(mi, ni):
    c = CategoryCounts((mi, 4), (ni, 6))
    w_bar = (mi / c.M) / (ni / c.N)
    res = minimize_scalar(
        lambda w: negloglik_components(c, [w, 1.0])[0],
        bounds=(1e-6, 50 * w_bar), method="bounded", options={"xatol": 1e-10},
    )
    assert res.x == pytest.approx(w_bar, rel=1e-5)


@settings(max_examples=100, deadline=None)
@given(category_counts(max_k=5))
def test_component_decreases_then_increases(c):
    M, N = c.M, c.N
    for i, (mi, ni) in enumerate(zip(c.m, c.n)):
        if mi == 0 or ni == 0:
            continue
        w_bar = (mi / M) / (ni / N)

        def ell(w):
            w_vec = np.ones(c.k)
            w_vec[i] = w
            return negloglik_components(c, w_vec)[i]

        for t in (0.1, 0.5, 0.9):
            lo, hi = w_bar * t, w_bar / t
            h = 1e-6 * w_bar
            assert ell(lo + h) < ell(lo)
            assert ell(hi + h) > ell(hi)


def test_pooled_probabilities_maximise_within_block():
    c = CategoryCounts((2, 1, 5), (3, 6, 1))
    blocks = ((1, 2), (3,))
    p, q = pooled_probabilities(c, blocks)
    base = log_likelihood(c, p, q).loglik
    rng = np.random.default_rng(3)
    for _ in range(200):
        # perturb within the family sharing one ratio over block (1, 2)
        w = p[0] / q[0]
        s = q[0] + q[1]
        q0 = float(rng.uniform(0.01, s - 0.01))
        q_alt = [q0, s - q0, q[2]]
        p_alt = [w * q0, w * (s - q0), p[2]]
        assert log_likelihood(c, p_alt, q_alt).loglik <= base + 1e-12


def test_oracle_radiologist(rad5):
    o = oracle_constrained_mle(rad5)
    assert o.blocks == ((1,), (2, 3, 4), (5,), (6, 7, 8), (9,), (10,))
    assert tuple(pava(rad5).blocks) in o.maximizers


def test_oracle_single_category():
    o = oracle_constrained_mle(CategoryCounts((4,), (9,)))
    assert o.blocks == ((1,),)
    assert o.loglik == 0.0


def test_oracle_limit():
    c = CategoryCounts(tuple([1] * 25), tuple([1] * 25))
    with pytest.raises(OracleLimit):
        oracle_constrained_mle(c, max_k=30)
    with pytest.raises(OracleLimit):
        oracle_constrained_mle(CategoryCounts((1, 2, 3), (3, 2, 1)), max_k=2)


def test_oracle_visits_every_feasible_partition():
    c = CategoryCounts((3, 1, 4, 1, 5), (2, 6, 5, 3, 5))
    feasible = 0
    for blocks in contiguous_partitions(c.k):
        if log_likelihood(c, *pooled_probabilities(c, blocks)).convex:
            feasible += 1
    assert oracle_constrained_mle(c).n_feasible == feasible


@settings(max_examples=200, deadline=None)
@given(category_counts())
def test_unconstrained_dominates_with_equality_iff_convex(c):
    r = pava(c)
    ll_c = log_likelihood(c, *pooled_probabilities(c, r.blocks)).loglik
    v = log_likelihood(c, *_empirical(c))
    assert v.loglik >= ll_c - 1e-9
    if v.convex:
        assert r.k_merged == c.k
        assert v.loglik == pytest.approx(ll_c, abs=1e-9)
    else:
        assert v.loglik > ll_c + 1e-12
