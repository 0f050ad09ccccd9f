import math

import pytest
from hypothesis import given, settings, strategies as st

from conftest import make_article
from gendercite.normalize import ScoredArticle
from gendercite.trends import (diff_half_width, period_impacts, period_summary, solo_series,
                               yearly_series)


def scored(country="AUS", year=2001, gender="female", nlcs=1.0, n_authors=2, idx=[0]):
    idx[0] += 1
    return ScoredArticle(make_article(f"s{idx[0]}", year=year, country=country,
                                      n_authors=n_authors), gender, nlcs)


def test_female_share_over_gendered_only():
    data = [scored(gender=g) for g in ("female", "female", "male", "unknown")]
    (row,) = yearly_series(data, "AUS", [2001])
    assert row.female_share_pct == pytest.approx(200 / 3)
    assert row.female_share_all_pct == 50.0
    assert (row.n_female, row.n_male, row.n_unknown) == (2, 1, 1)


def test_all_unknown_year_has_markers():
    (row,) = yearly_series([scored(gender="unknown")], "AUS", [2001])
    assert row.female_share_pct is None and row.female is None and row.male is None


def test_missing_year_and_country_rows():
    rows = yearly_series([scored(year=2001)], "AUS", range(2000, 2003))
    assert [r.year for r in rows] == [2000, 2001, 2002]
    assert rows[0].female is None and rows[1].female is not None
    assert all(r.female is None and r.male is None for r in yearly_series([scored()], "NZL", [2001]))


def test_period_summary_diff_exact_and_symmetric():
    data = [scored(year=y, gender=g, nlcs=v) for y, g, v in
            [(1996, "female", 1.3), (2000, "female", 0.9), (2016, "female", 2.0),
             (1997, "male", 1.0), (2015, "male", 1.1), (2018, "male", 0.2)]]
    full, early = period_summary(data, "AUS")
    assert (full.period, early.period) == ("1996-2018", "1996-2015")
    assert full.female_mnlcs == pytest.approx((1.3 + 0.9 + 2.0) / 3)
    assert early.male_mnlcs == pytest.approx(1.05)
    assert full.diff == full.female_mnlcs - full.male_mnlcs
    swapped = [ScoredArticle(s.article, {"female": "male", "male": "female"}[s.gender], s.nlcs)
               for s in data]
    assert period_summary(swapped, "AUS")[0].diff == -full.diff


def test_identical_multisets_zero_diff():
    data = [scored(gender=g, nlcs=v) for v in (0.0, 0.5, 2.0) for g in ("female", "male")]
    assert period_summary(data, "AUS")[0].diff == 0.0


def test_empty_period_markers():
    (row,) = period_summary([scored(year=2001, gender="female")], "AUS", [(1990, 1995)])
    assert row.female_mnlcs is None and row.diff is None


gendered = st.lists(st.tuples(st.integers(1996, 2018),
                              st.sampled_from(["female", "male", "unknown"]),
                              st.floats(0, 5, allow_nan=False)), min_size=1, max_size=60)


@settings(max_examples=50)
@given(gendered)
def test_pooled_is_count_weighted_yearly(items):
    data = [scored(year=y, gender=g, nlcs=v) for y, g, v in items]
    rows = yearly_series(data, "AUS", range(1996, 2019))
    (summ,) = period_summary(data, "AUS", [(1996, 2018)])
    for attr, pooled in (("female", summ.female_mnlcs), ("male", summ.male_mnlcs)):
        groups = [getattr(r, attr) for r in rows if getattr(r, attr) is not None]
        if not groups:
            assert pooled is None
            continue
        weighted = math.fsum(g.n * g.mnlcs for g in groups) / sum(g.n for g in groups)
        assert pooled == pytest.approx(weighted, abs=1e-9)


@settings(max_examples=50)
@given(gendered)
def test_unknown_never_changes_impacts(items):
    data = [scored(year=y, gender=g, nlcs=v) for y, g, v in items]
    known = [s for s in data if s.gender != "unknown"]
    assert period_summary(data, "AUS") == period_summary(known, "AUS")


def test_solo_series_is_filter_then_series():
    from gendercite.corpus import Predicate
    data = [scored(year=2001, gender=g, nlcs=v, n_authors=n) for g, v, n in
            [("female", 1.0, 1), ("female", 2.0, 3), ("male", 0.5, 1), ("male", 1.5, 1),
             ("male", 3.0, 2)]]
    solo_rows, solo_summary = solo_series(data, "AUS", [2001])
    solo_only = [s for s in data if Predicate(solo_only=True)(s.article)]
    assert solo_rows[0].female == yearly_series(solo_only, "AUS", [2001])[0].female
    assert solo_rows[0].male.mnlcs == pytest.approx(1.0)
    assert solo_summary == period_summary(solo_only, "AUS")


def test_no_solo_articles_gives_markers():
    rows, summ = solo_series([scored(n_authors=3)], "AUS", [2001])
    assert rows[0].female is None and summ[0].female_mnlcs is None


def test_diff_half_width():
    data = [scored(gender=g, nlcs=v) for v in (0.5, 1.0, 1.5, 2.0) for g in ("female", "male")]
    f, m = period_impacts(data, "AUS", (1996, 2018))
    assert diff_half_width(f, m) == pytest.approx(math.sqrt(2) * f.half_width)
    assert diff_half_width(None, m) is None
