"""Group statistics for NLCS values: MNLCS, t-based CI and shape diagnostics."""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Iterable, Sequence

from scipy import stats as _sps

SHAPE_LIMIT = 3.0


class StatsError(ValueError):
    pass


def _values(scores: Iterable[float]) -> list[float]:
    return scores if isinstance(scores, list) else [float(x) for x in scores]


def mnlcs(scores: Iterable[float]) -> float:
    xs = _values(scores)
    if not xs:
        raise StatsError("empty group")
    return math.fsum(xs) / len(xs)


def sample_sd(xs: Sequence[float], mean: float | None = None) -> float:
    n = len(xs)
    if n < 2:
        raise StatsError("standard deviation needs at least two values")
    m = mnlcs(xs) if mean is None else mean
    return math.sqrt(math.fsum((x - m) ** 2 for x in xs) / (n - 1))


def t_quantile(level: float, df: int) -> float:
    """Two-sided critical value ``t_{1-(1-level)/2, df}``."""
    return float(_sps.t.ppf(1 - (1 - level) / 2, df))


def confidence_interval(scores: Iterable[float], level: float = 0.95) -> tuple[float, float]:
    """``mean ± t · s / sqrt(n)``; the t quantile is used at every n."""
    xs = _values(scores)
    n = len(xs)
    if n < 2:
        raise StatsError("CI undefined for fewer than two values")
    m = mnlcs(xs)
    s = sample_sd(xs, m)
    if s == 0.0:
        return m, m
    half = t_quantile(level, n - 1) * s / math.sqrt(n)
    return m - half, m + half


def central_moments(xs: Sequence[float]) -> tuple[float, float, float]:
    """Second, third and fourth central moments with denominator n (two-pass)."""
    n = len(xs)
    m = math.fsum(xs) / n
    d = [x - m for x in xs]
    m2 = math.fsum(v * v for v in d) / n
    m3 = math.fsum(v * v * v for v in d) / n
    m4 = math.fsum((v * v) * (v * v) for v in d) / n
    return m2, m3, m4


def shape_diagnostics(scores: Iterable[float]) -> tuple[float, float]:
    """Skewness ``g1 = m3 / m2^1.5`` and excess kurtosis ``g2 = m4 / m2^2 - 3``."""
    xs = _values(scores)
    if len(xs) < 3:
        raise StatsError("shape diagnostics need at least three values")
    m2, m3, m4 = central_moments(xs)
    if m2 == 0.0:
        raise StatsError("shape diagnostics undefined for zero variance")
    return m3 / m2 ** 1.5, m4 / (m2 * m2) - 3.0


@dataclass(frozen=True)
class GroupImpact:
    n: int
    mnlcs: float
    ci_low: float | None
    ci_high: float | None
    skewness: float | None
    excess_kurtosis: float | None
    reliable: bool
    reason: str = ""

    @property
    def half_width(self) -> float | None:
        if self.ci_low is None:
            return None
        return (self.ci_high - self.ci_low) / 2


def is_reliable(g1: float, g2: float, limit: float = SHAPE_LIMIT) -> bool:
    return abs(g1) <= limit and g2 <= limit


def group_impact(scores: Iterable[float], level: float = 0.95) -> GroupImpact:
    xs = _values(scores)
    m = mnlcs(xs)
    n = len(xs)
    lo = hi = None
    if n >= 2:
        lo, hi = confidence_interval(xs, level)
    try:
        g1, g2 = shape_diagnostics(xs)
    except StatsError as exc:
        return GroupImpact(n, m, lo, hi, None, None, False, f"diagnostics unavailable: {exc}")
    ok = is_reliable(g1, g2)
    reason = "" if ok else f"shape beyond {SHAPE_LIMIT:g} (g1={g1:.3f}, g2={g2:.3f})"
    return GroupImpact(n, m, lo, hi, g1, g2, ok, reason)
