import random

import numpy as np
import pytest
from hypothesis import assume, given, settings, strategies as st

import oracle_direct as od
from gendercite.stats import (StatsError, confidence_interval, group_impact, mnlcs,
                              shape_diagnostics, t_quantile)

T_975_DF1 = 12.706204736174704646
T_975_DF2 = 4.3026527297494638523
G1_0001 = 1.1547005383792515290
G2_0001 = -2 / 3


def test_mnlcs_basic():
    assert mnlcs([1.0, 1.0, 1.0]) == 1.0
    assert mnlcs([2.5]) == 2.5
    assert mnlcs([0, 0.969208, 2.031082]) == pytest.approx(1.0000966666666667, abs=1e-12)
    with pytest.raises(StatsError, match="empty group"):
        mnlcs([])


def test_t_quantiles_against_mpmath_values():
    assert t_quantile(0.95, 1) == pytest.approx(T_975_DF1, abs=1e-9)
    assert t_quantile(0.95, 2) == pytest.approx(T_975_DF2, abs=1e-9)
    assert t_quantile(0.95, 10 ** 7) == pytest.approx(1.959964, abs=1e-5)


def test_ci_zero_variance():
    assert confidence_interval([1.2] * 4) == (1.2, 1.2)


def test_ci_two_points():
    lo, hi = confidence_interval([0.0, 2.0])
    assert lo == pytest.approx(1 - T_975_DF1, abs=1e-9)
    assert hi == pytest.approx(1 + T_975_DF1, abs=1e-9)


def test_ci_needs_two():
    with pytest.raises(StatsError, match="CI undefined"):
        confidence_interval([1.0])


def test_ci_large_normal_half_width():
    rng = np.random.default_rng(7)
    lo, hi = confidence_interval(rng.standard_normal(10_000).tolist())
    assert (hi - lo) / 2 == pytest.approx(0.0196, rel=0.10)


def test_shape_examples():
    g1, _ = shape_diagnostics([0.0, 1.0, 2.0])
    assert g1 == pytest.approx(0.0, abs=1e-15)
    g1, g2 = shape_diagnostics([0.0, 0.0, 0.0, 1.0])
    assert g1 == pytest.approx(G1_0001, abs=1e-12)
    assert g2 == pytest.approx(G2_0001, abs=1e-12)


def test_shape_oracle_agrees_on_example():
    g1, g2 = od.g1_g2([0, 0, 0, 1])
    assert float(g1) == pytest.approx(G1_0001, abs=1e-15)
    assert float(g2) == pytest.approx(G2_0001, abs=1e-15)


def test_shape_large_normal():
    rng = np.random.default_rng(11)
    g1, g2 = shape_diagnostics(rng.standard_normal(100_000).tolist())
    assert abs(g1) < 0.05 and abs(g2) < 0.1


@pytest.mark.parametrize("xs", [[1.0, 2.0], [3.0, 3.0, 3.0]])
def test_shape_degenerate(xs):
    with pytest.raises(StatsError):
        shape_diagnostics(xs)


def test_group_impact_constant():
    g = group_impact([1, 1, 1, 1])
    assert (g.mnlcs, g.ci_low, g.ci_high) == (1, 1, 1)
    assert g.skewness is None and not g.reliable and "unavailable" in g.reason


def test_group_impact_single():
    g = group_impact([0.7])
    assert g.n == 1 and g.ci_low is None and not g.reliable


def test_group_impact_three_article_corpus():
    scores = [0.0, 0.96902252241346342554, 2.0309774775865365745]
    g = group_impact(scores)
    lo, hi = od.ci(scores)
    assert g.mnlcs == pytest.approx(1.0, abs=1e-15)
    assert g.ci_low == pytest.approx(float(lo), abs=1e-9)
    assert g.ci_high == pytest.approx(float(hi), abs=1e-9)
    assert g.reliable


def test_group_impact_flags_heavy_tail():
    g = group_impact([0.0] * 99 + [10.0])
    assert g.excess_kurtosis > 3 and not g.reliable


def test_reliable_lognormal_cell():
    rng = np.random.default_rng(3)
    c = np.maximum(0, np.rint(np.expm1(rng.normal(1.5, 0.8, 5000))))
    x = np.log1p(c)
    g = group_impact((x / x.mean()).tolist())
    assert abs(g.skewness) <= 3 and g.excess_kurtosis <= 3 and g.reliable


finite = st.floats(-1e3, 1e3, allow_nan=False)


@settings(max_examples=60)
@given(st.lists(finite, min_size=3, max_size=40))
def test_skew_sign_flip_and_kurtosis_affine(xs):
    m = sum(xs) / len(xs)
    assume(sum((x - m) ** 2 for x in xs) / len(xs) > 1e-6)
    g1, g2 = shape_diagnostics(xs)
    h1, h2 = shape_diagnostics([-x for x in xs])
    assert h1 == pytest.approx(-g1, abs=1e-6)
    k1, k2 = shape_diagnostics([2.5 * x + 7 for x in xs])
    assert k2 == pytest.approx(g2, abs=1e-6)
    assert h2 == pytest.approx(g2, abs=1e-6)


@given(st.lists(finite, min_size=1, max_size=40), st.floats(-100, 100), st.randoms())
def test_mnlcs_translation_and_permutation(xs, c, rnd):
    ys = list(xs)
    rnd.shuffle(ys)
    assert mnlcs(ys) == mnlcs(xs)
    assert mnlcs([x + c for x in xs]) == pytest.approx(mnlcs(xs) + c, abs=1e-9)


@given(st.lists(finite, min_size=2, max_size=40))
def test_ci_contains_mean(xs):
    lo, hi = confidence_interval(xs)
    assert lo <= mnlcs(xs) <= hi


def test_ci_shrinks_like_root_n():
    rng = np.random.default_rng(5)
    w = {}
    for n in (400, 1600):
        halves = []
        for _ in range(300):
            lo, hi = confidence_interval(rng.exponential(1.0, n).tolist())
            halves.append((hi - lo) / 2)
        w[n] = sum(halves) / len(halves)
    assert w[400] / w[1600] == pytest.approx(2.0, rel=0.10)


def test_ci_coverage_normal():
    rng = random.Random(17)
    hits = 0
    for _ in range(1000):
        xs = [rng.gauss(3.0, 2.0) for _ in range(30)]
        lo, hi = confidence_interval(xs)
        hits += lo <= 3.0 <= hi
    assert abs(hits / 10 - 95) <= 2
