import random

import pytest
from hypothesis import given, strategies as st

import oracle_direct as od
from gendercite.percentile import EmptyDistribution, cumulative_curve, resample, top_share

FOUR = [(2.0, "female"), (1.5, "male"), (1.0, "female"), (0.0, "male")]


def test_four_article_curve():
    c = cumulative_curve(FOUR)
    assert c.points[0] == (25.0, 100.0)
    assert c.points[1] == (50.0, 50.0)
    assert c.points[2][0] == 75.0
    assert c.points[2][1] == pytest.approx(200 / 3)
    assert len(c.points) == 3
    assert c.overall_point == (100.0, 50.0)
    assert c.uncited_pct == 25.0


def test_four_article_oracle():
    pts, overall, unc = od.curve(FOUR)
    c = cumulative_curve(FOUR)
    assert [(float(x), float(y)) for x, y in pts] == pytest.approx(list(c.points), abs=1e-12)
    assert float(unc) == c.uncited_pct and float(overall[1]) == c.overall_share


def test_top_share():
    c = cumulative_curve(FOUR)
    assert top_share(c, 50) == 50.0
    assert top_share(c, 60) == 50.0
    assert top_share(c, 75) == pytest.approx(200 / 3)
    assert top_share(c, 80) == 50.0   # beyond the last point: the overall share
    assert top_share(c, 100) == 50.0
    assert top_share(c, 10) is None   # finer than 100/N


def test_all_female():
    c = cumulative_curve([(x, "female") for x in (3.0, 2.0, 2.0, 0.0)])
    assert all(s == 100.0 for _, s in c.points) and c.overall_share == 100.0


def test_unknown_ignored_and_empty():
    c = cumulative_curve(FOUR + [(5.0, "unknown")])
    assert c == cumulative_curve(FOUR)
    with pytest.raises(EmptyDistribution, match="empty distribution"):
        cumulative_curve([(1.0, "unknown")])


def test_no_uncited_ends_at_100():
    c = cumulative_curve([(1.0, "male"), (2.0, "female")])
    assert c.points[-1][0] == 100.0 and c.uncited_pct == 0.0


def test_resample_grid():
    g = resample(cumulative_curve(FOUR), step=25)
    assert [x for x, _ in g] == [25.0, 50.0, 75.0, 100.0]
    assert g[0][1] == 100.0 and g[-1][1] == 50.0


pairs = st.lists(st.tuples(st.sampled_from([0.0, 0.5, 1.0, 1.25, 2.0, 3.5]),
                           st.sampled_from(["female", "male"])), min_size=1, max_size=40)


@given(pairs)
def test_ties_atomic_and_counts_consistent(ps):
    c = cumulative_curve(ps)
    n = len(ps)
    positive = sorted({s for s, _ in ps if s > 0}, reverse=True)
    assert len(c.points) == len(positive)
    prev_fem = 0
    for (cum, share), v in zip(c.points, positive):
        block = [g for s, g in ps if s >= v]
        assert round(cum * n / 100) == len(block)
        fem = round(share * len(block) / 100)
        assert fem == block.count("female") and fem >= prev_fem
        prev_fem = fem
    if any(s == 0 for s, _ in ps) and c.points:
        assert c.points[-1][0] == 100 - c.uncited_pct


@given(pairs)
def test_matches_quadratic_oracle(ps):
    pts, overall, unc = od.curve(ps)
    c = cumulative_curve(ps)
    assert len(pts) == len(c.points)
    for (x, y), (cx, cy) in zip(pts, c.points):
        assert abs(float(x) - cx) <= 1e-12 and abs(float(y) - cy) <= 1e-12
    assert abs(float(unc) - c.uncited_pct) <= 1e-12


@given(pairs)
def test_dropping_uncited_keeps_threshold_points(ps):
    cited = [p for p in ps if p[0] > 0]
    if not cited:
        return
    a, b = cumulative_curve(ps), cumulative_curve(cited)
    # same articles above each threshold, only the denominator N differs
    na, nb = a.n, b.n
    assert [(round(x * na / 100), y) for x, y in a.points] == \
           [(round(x * nb / 100), y) for x, y in b.points]
    assert b.uncited_pct == 0


def test_large_random_tie_blocks():
    rng = random.Random(2)
    ps = [(float(rng.randint(0, 5)), rng.choice(["female", "male"])) for _ in range(500)]
    c = cumulative_curve(ps)
    assert len(c.points) == 5
