"""Field-and-year normalised log citation scores (NLCS)."""

from __future__ import annotations

import math
from collections import defaultdict
from dataclasses import dataclass, field
from typing import Iterable, Mapping

from .corpus import GENDERS, Article, Corpus, CorpusError, GenderedArticle

Cell = tuple[str, int]


def log_citations(c: int) -> float:
    if c < 0:
        raise ValueError(f"citation count must be non-negative, got {c}")
    return math.log1p(c)


@dataclass(frozen=True)
class ReferenceMeans:
    """Mean ``ln(1 + C)`` (``A``) and article count per (field, year) cell."""

    means: Mapping[Cell, float]
    counts: Mapping[Cell, int]

    def __contains__(self, cell: Cell) -> bool:
        return cell in self.means

    def __getitem__(self, cell: Cell) -> float:
        return self.means[cell]

    def __len__(self) -> int:
        return len(self.means)

    def is_degenerate(self, cell: Cell) -> bool:
        return self.means[cell] == 0.0

    @property
    def degenerate(self) -> list[Cell]:
        return sorted(c for c, v in self.means.items() if v == 0.0)


def reference_means(reference: Corpus | Iterable[Article]) -> ReferenceMeans:
    """Per-cell mean log citations over the reference set.

    An article listed in k fields contributes to each of its k cells.
    Sums use ``math.fsum``, which is exactly rounded, so the result does not
    depend on article order.
    """
    articles = reference.articles if isinstance(reference, Corpus) else tuple(reference)
    if not articles:
        raise CorpusError("reference corpus is empty")
    logs: dict[Cell, list[float]] = defaultdict(list)
    for a in articles:
        lc = math.log1p(a.citations)
        for f in a.fields:
            logs[(f, a.year)].append(lc)
    means = {}
    counts = {}
    for cell in sorted(logs):
        vals = logs[cell]
        means[cell] = math.fsum(vals) / len(vals)
        counts[cell] = len(vals)
    return ReferenceMeans(means, counts)


class Excluded(Exception):
    """Every cell of the article is degenerate (A = 0); no score exists."""


def nlcs(article: Article, means: ReferenceMeans) -> float:
    """``ln(1 + C) / A`` averaged over the article's non-degenerate field cells.

    Raises ``CorpusError`` for a cell absent from ``means`` and ``Excluded``
    when all of the article's cells are degenerate.
    """
    lc = math.log1p(article.citations)
    ratios = []
    for f in article.fields:
        cell = (f, article.year)
        a = means.means.get(cell)
        if a is None:
            raise CorpusError(f"field-year cell ({f}, {article.year}) missing from reference "
                              f"means (article {article.id})")
        if a > 0.0:
            ratios.append(lc / a)
    if not ratios:
        raise Excluded(article.id)
    if len(ratios) == 1:
        return ratios[0]
    return math.fsum(ratios) / len(ratios)


@dataclass(frozen=True, slots=True)
class ScoredArticle:
    article: Article
    gender: str
    nlcs: float

    def __post_init__(self):
        if self.gender not in GENDERS:
            raise CorpusError(f"unknown gender {self.gender!r}")


@dataclass
class ScoreReport:
    scored: int = 0
    excluded: list[str] = field(default_factory=list)


def score_corpus(gendered: Iterable[GenderedArticle], means: ReferenceMeans,
                 report: ScoreReport | None = None) -> list[ScoredArticle]:
    """NLCS for every gendered article, in input order, skipping excluded ones."""
    report = report if report is not None else ScoreReport()
    out = []
    for ga in gendered:
        try:
            s = nlcs(ga.article, means)
        except Excluded:
            report.excluded.append(ga.article.id)
            continue
        out.append(ScoredArticle(ga.article, ga.gender, s))
    report.scored = len(out)
    return out
