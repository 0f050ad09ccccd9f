"""Cumulative top-percentile female share curves over NLCS rankings."""

from __future__ import annotations

from dataclasses import dataclass
from itertools import groupby
from typing import Iterable

from .corpus import FEMALE, MALE
from .normalize import ScoredArticle


class EmptyDistribution(ValueError):
    pass


@dataclass(frozen=True)
class PercentileCurve:
    points: tuple[tuple[float, float], ...]
    overall_point: tuple[float, float]
    uncited_pct: float
    n: int

    @property
    def overall_share(self) -> float:
        return self.overall_point[1]


def cumulative_curve(items: Iterable[ScoredArticle] | Iterable[tuple[float, str]]) -> PercentileCurve:
    """Female share among articles with NLCS at least ``v``, for each distinct ``v > 0``.

    Accepts scored articles or ``(nlcs, gender)`` pairs; only female and male
    items are used. Ties enter together because points are emitted per
    distinct value. Uncited items (NLCS 0) show up only in ``uncited_pct``
    and the overall point.
    """
    pairs = []
    for it in items:
        score, gender = (it.nlcs, it.gender) if isinstance(it, ScoredArticle) else it
        if gender in (FEMALE, MALE):
            pairs.append((score, gender))
    n = len(pairs)
    if n == 0:
        raise EmptyDistribution("empty distribution")
    pairs.sort(key=lambda p: p[0], reverse=True)
    points = []
    seen = fem = 0
    for v, block in groupby(pairs, key=lambda p: p[0]):
        if v <= 0:
            break
        for _, g in block:
            seen += 1
            fem += g == FEMALE
        # written as 100 - tail so the last point sits at exactly 100 - uncited_pct
        points.append((100 - 100 * (n - seen) / n, 100 * fem / seen))
    total_fem = sum(1 for _, g in pairs if g == FEMALE)
    uncited = sum(1 for s, _ in pairs if s == 0)
    return PercentileCurve(tuple(points), (100.0, 100 * total_fem / n), 100 * uncited / n, n)


def top_share(curve: PercentileCurve, p: float) -> float | None:
    """Female share in the top ``p`` percent.

    Uses the largest emitted point with ``cum_pct <= p``; beyond the last
    point the overall share is returned. ``None`` signals ``p`` is finer than
    the distribution resolves.
    """
    if not 0 < p <= 100:
        raise ValueError("p must lie in (0, 100]")
    if not curve.points or p > curve.points[-1][0]:
        return curve.overall_share
    best = None
    for cum, share in curve.points:
        if cum <= p:
            best = share
        else:
            break
    return best


def resample(curve: PercentileCurve, step: float = 1.0) -> list[tuple[float, float | None]]:
    """Curve read off on a fixed grid ``step, 2*step, ..., 100``, for plotting."""
    k = round(100 / step)
    grid = [100 * i / k for i in range(1, k + 1)]
    return [(g, top_share(curve, g)) for g in grid]
