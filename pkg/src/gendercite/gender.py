"""First-author gender assignment from an evidence-weighted name table."""

from __future__ import annotations

import math
from collections import Counter
from dataclasses import dataclass
from fractions import Fraction
from typing import Iterable, Mapping

from .corpus import FEMALE, MALE, UNKNOWN, Article, CorpusError, GenderedArticle

REJECT = "reject"
NA = "n/a"


@dataclass(frozen=True, slots=True)
class NameEvidence:
    majority_gender: str
    share_pct: float
    samples: int


class NameGenderTable:
    """Name evidence keyed by ``(casefolded name, country)``; country ``None`` is global.

    Lookups try the article's country first and fall back to the global entry.
    """

    def __init__(self, entries: Mapping[tuple[str, str | None], NameEvidence] | None = None):
        self._entries: dict[tuple[str, str | None], NameEvidence] = {}
        for (name, country), ev in (entries or {}).items():
            self.add(name, country, ev)

    def add(self, name: str, country: str | None, evidence: NameEvidence) -> None:
        key = (normalize_name(name), country or None)
        if key in self._entries:
            raise CorpusError(f"duplicate name table key {key}")
        if evidence.majority_gender not in (FEMALE, MALE):
            raise CorpusError(f"majority_gender must be female or male, got {evidence.majority_gender!r}")
        if not 0 <= evidence.share_pct <= 100:
            raise CorpusError(f"share_pct {evidence.share_pct} outside [0, 100]")
        if evidence.samples < 1:
            raise CorpusError(f"samples must be positive, got {evidence.samples}")
        self._entries[key] = evidence

    def lookup(self, name: str, country: str | None = None) -> NameEvidence | None:
        name = normalize_name(name)
        if country:
            hit = self._entries.get((name, country))
            if hit is not None:
                return hit
        return self._entries.get((name, None))

    def items(self):
        return sorted(self._entries.items(), key=lambda kv: (kv[0][0], kv[0][1] or ""))

    def __len__(self) -> int:
        return len(self._entries)

    def __contains__(self, key) -> bool:
        name, country = key
        return (normalize_name(name), country or None) in self._entries

    def __eq__(self, other) -> bool:
        return isinstance(other, NameGenderTable) and self._entries == other._entries


def normalize_name(name: str) -> str:
    # plain lowercase; diacritics are kept so distinct names stay distinct
    return name.strip().lower()


@dataclass(frozen=True)
class ThresholdRule:
    min_share_pct: float = 90
    samples_at_100: int = 10
    samples_at_min: int = 500

    def __post_init__(self):
        if not 0 <= self.min_share_pct <= 100:
            raise ValueError("min_share_pct must lie in [0, 100]")
        if not 1 <= self.samples_at_100 <= self.samples_at_min:
            raise ValueError("need 1 <= samples_at_100 <= samples_at_min")


def _exact(x) -> Fraction:
    # decimal-string route so 89.9 means 899/10, not its binary neighbour
    return Fraction(str(x))


def required_evidence(share_pct: float, rule: ThresholdRule = ThresholdRule()) -> int | str:
    """Minimum sample count needed to trust a name at ``share_pct``, or ``REJECT``.

    Linear between (100%, samples_at_100) and (min_share_pct, samples_at_min),
    rounded up. With the defaults this is ``10 + 49 * (100 - share_pct)``.
    """
    if not 0 <= share_pct <= 100:
        raise ValueError(f"share_pct {share_pct} outside [0, 100]")
    share = _exact(share_pct)
    lo = _exact(rule.min_share_pct)
    if share < lo:
        return REJECT
    if lo == 100:
        return rule.samples_at_100
    frac = (100 - share) / (100 - lo)
    return math.ceil(rule.samples_at_100 + frac * (rule.samples_at_min - rule.samples_at_100))


def infer_gender(given_name: str | None, country: str | None, table: NameGenderTable,
                 rule: ThresholdRule = ThresholdRule()) -> str:
    if not given_name:
        return UNKNOWN
    ev = table.lookup(given_name, country)
    if ev is None:
        return UNKNOWN
    need = required_evidence(ev.share_pct, rule)
    if need == REJECT or ev.samples < need:
        return UNKNOWN
    return ev.majority_gender


def assign_gender(article: Article, table: NameGenderTable,
                  rule: ThresholdRule = ThresholdRule()) -> GenderedArticle:
    return GenderedArticle(article, infer_gender(article.given_name, article.country, table, rule))


def assign_all(articles: Iterable[Article], table: NameGenderTable,
               rule: ThresholdRule = ThresholdRule()) -> list[GenderedArticle]:
    cache: dict[tuple[str | None, str], str] = {}
    out = []
    for a in articles:
        key = (a.given_name, a.country)
        g = cache.get(key)
        if g is None:
            g = cache[key] = infer_gender(a.given_name, a.country, table, rule)
        out.append(GenderedArticle(a, g))
    return out


@dataclass(frozen=True)
class CoverageRow:
    country: str
    total: int
    gendered_count: int
    gendered_pct: int | str


def round_half_up(x: Fraction) -> int:
    return math.floor(x + Fraction(1, 2))


def coverage_summary(gendered: Iterable[GenderedArticle],
                     countries: Iterable[str] | None = None) -> list[CoverageRow]:
    """Per-country gendered coverage, plus a final ``Total`` row.

    ``countries`` forces rows (possibly empty) for the named countries; by
    default every country present gets a row, sorted by code.
    """
    totals: Counter[str] = Counter()
    hits: Counter[str] = Counter()
    for ga in gendered:
        totals[ga.article.country] += 1
        if ga.gender in (FEMALE, MALE):
            hits[ga.article.country] += 1
    keys = sorted(totals) if countries is None else list(countries)
    rows = [_coverage_row(c, totals[c], hits[c]) for c in keys]
    rows.append(_coverage_row("Total", sum(totals[c] for c in keys), sum(hits[c] for c in keys)))
    return rows


def _coverage_row(country: str, total: int, hit: int) -> CoverageRow:
    pct = NA if total == 0 else round_half_up(Fraction(100 * hit, total))
    return CoverageRow(country, total, hit, pct)
