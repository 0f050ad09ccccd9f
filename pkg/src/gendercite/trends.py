"""Yearly gender share / impact series and period summaries per country."""

from __future__ import annotations

import math
from collections import defaultdict
from dataclasses import dataclass
from typing import Iterable, Sequence

from .corpus import FEMALE, MALE, UNKNOWN
from .normalize import ScoredArticle
from .stats import GroupImpact, group_impact

DEFAULT_PERIODS = ((1996, 2018), (1996, 2015))


@dataclass(frozen=True)
class YearlyGenderRow:
    country: str
    year: int
    n_female: int
    n_male: int
    n_unknown: int
    female_share_pct: float | None  # of gendered articles
    female_share_all_pct: float | None  # of all articles, unknown included
    female: GroupImpact | None
    male: GroupImpact | None


@dataclass(frozen=True)
class PeriodSummaryRow:
    country: str
    period: str
    female_mnlcs: float | None
    male_mnlcs: float | None
    n_female: int = 0
    n_male: int = 0

    @property
    def diff(self) -> float | None:
        if self.female_mnlcs is None or self.male_mnlcs is None:
            return None
        return self.female_mnlcs - self.male_mnlcs


def period_label(period: tuple[int, int]) -> str:
    return f"{period[0]}-{period[1]}"


def _by_year_gender(scored: Iterable[ScoredArticle], country: str, solo_only: bool = False):
    groups: dict[tuple[int, str], list[float]] = defaultdict(list)
    for s in scored:
        a = s.article
        if a.country != country or (solo_only and a.n_authors != 1):
            continue
        groups[(a.year, s.gender)].append(s.nlcs)
    return groups


def yearly_series(scored: Iterable[ScoredArticle], country: str, years: Sequence[int] | range,
                  *, solo_only: bool = False, level: float = 0.95) -> list[YearlyGenderRow]:
    """One row per year. Unknown-gender articles count only towards ``n_unknown``
    and the all-articles share; empty gender groups give ``None`` impacts."""
    groups = _by_year_gender(scored, country, solo_only)
    rows = []
    for y in years:
        fem = groups.get((y, FEMALE), [])
        mal = groups.get((y, MALE), [])
        unk = len(groups.get((y, UNKNOWN), []))
        gendered = len(fem) + len(mal)
        everyone = gendered + unk
        rows.append(YearlyGenderRow(
            country=country,
            year=y,
            n_female=len(fem),
            n_male=len(mal),
            n_unknown=unk,
            female_share_pct=100 * len(fem) / gendered if gendered else None,
            female_share_all_pct=100 * len(fem) / everyone if everyone else None,
            female=group_impact(fem, level) if fem else None,
            male=group_impact(mal, level) if mal else None,
        ))
    return rows


def period_summary(scored: Iterable[ScoredArticle], country: str,
                   periods: Sequence[tuple[int, int]] = DEFAULT_PERIODS,
                   *, solo_only: bool = False) -> list[PeriodSummaryRow]:
    """Pooled MNLCS per gender for each period (inclusive year bounds)."""
    groups = _by_year_gender(scored, country, solo_only)
    rows = []
    for lo, hi in periods:
        fem = [x for (y, g), xs in sorted(groups.items()) if g == FEMALE and lo <= y <= hi
               for x in xs]
        mal = [x for (y, g), xs in sorted(groups.items()) if g == MALE and lo <= y <= hi
               for x in xs]
        rows.append(PeriodSummaryRow(
            country=country,
            period=period_label((lo, hi)),
            female_mnlcs=math.fsum(fem) / len(fem) if fem else None,
            male_mnlcs=math.fsum(mal) / len(mal) if mal else None,
            n_female=len(fem),
            n_male=len(mal),
        ))
    return rows


def solo_series(scored: Iterable[ScoredArticle], country: str, years: Sequence[int] | range,
                periods: Sequence[tuple[int, int]] = DEFAULT_PERIODS):
    """Yearly rows and period rows restricted to single-author articles."""
    scored = list(scored)
    return (yearly_series(scored, country, years, solo_only=True),
            period_summary(scored, country, periods, solo_only=True))


def diff_half_width(female: GroupImpact | None, male: GroupImpact | None) -> float | None:
    """Half-width of the F - M difference, combining the two group CIs in quadrature."""
    if female is None or male is None or female.half_width is None or male.half_width is None:
        return None
    return math.hypot(female.half_width, male.half_width)


def period_impacts(scored: Iterable[ScoredArticle], country: str, period: tuple[int, int],
                   *, solo_only: bool = False) -> tuple[GroupImpact | None, GroupImpact | None]:
    """Full ``GroupImpact`` (CI and diagnostics) for each gender pooled over ``period``."""
    lo, hi = period
    fem, mal = [], []
    for s in scored:
        a = s.article
        if a.country != country or not lo <= a.year <= hi or (solo_only and a.n_authors != 1):
            continue
        if s.gender == FEMALE:
            fem.append(s.nlcs)
        elif s.gender == MALE:
            mal.append(s.nlcs)
    return (group_impact(fem) if fem else None, group_impact(mal) if mal else None)
