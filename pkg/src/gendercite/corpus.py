"""In-memory corpus types shared by every pipeline stage."""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Iterable

FEMALE = "female"
MALE = "male"
UNKNOWN = "unknown"
GENDERS = (FEMALE, MALE, UNKNOWN)

ARTICLE = "article"
OTHER = "other"

REFERENCE = "reference"
ANALYSIS = "analysis"

DEFAULT_YEARS = (1996, 2018)


class CorpusError(ValueError):
    """Invalid corpus data. Carries the location when it came from a file."""

    def __init__(self, message: str, *, line: int | None = None, column: str | None = None,
                 source: str | None = None):
        self.message = message
        self.line = line
        self.column = column
        self.source = source
        super().__init__(self._render())

    def with_source(self, source) -> "CorpusError":
        return CorpusError(self.message, line=self.line, column=self.column, source=str(source))

    def _render(self) -> str:
        where = []
        if self.source:
            where.append(str(self.source))
        if self.line is not None:
            where.append(f"line {self.line}")
        if self.column:
            where.append(f"column {self.column}")
        return f"{', '.join(where)}: {self.message}" if where else self.message


@dataclass(frozen=True, slots=True)
class Article:
    id: str
    year: int
    country: str
    fields: tuple[str, ...]
    given_name: str | None
    citations: int
    n_authors: int
    doc_type: str = ARTICLE

    def __post_init__(self):
        if self.citations < 0:
            raise CorpusError(f"negative citation count in article {self.id}")
        if self.n_authors < 1:
            raise CorpusError(f"n_authors must be >= 1 in article {self.id}")
        if not self.fields:
            raise CorpusError(f"empty fields set in article {self.id}")
        if self.doc_type not in (ARTICLE, OTHER):
            raise CorpusError(f"unknown doc_type {self.doc_type!r} in article {self.id}")

    @property
    def solo(self) -> bool:
        return self.n_authors == 1


@dataclass(frozen=True)
class Corpus:
    articles: tuple[Article, ...]
    role: str = ANALYSIS

    def __post_init__(self):
        if not isinstance(self.articles, tuple):
            object.__setattr__(self, "articles", tuple(self.articles))
        if self.role not in (REFERENCE, ANALYSIS):
            raise CorpusError(f"unknown corpus role {self.role!r}")
        seen: set[str] = set()
        for a in self.articles:
            if a.id in seen:
                raise CorpusError(f"duplicate article id {a.id!r}")
            seen.add(a.id)

    def __len__(self) -> int:
        return len(self.articles)

    def __iter__(self):
        return iter(self.articles)

    def countries(self) -> list[str]:
        return sorted({a.country for a in self.articles})


@dataclass(frozen=True, slots=True)
class GenderedArticle:
    article: Article
    gender: str

    def __post_init__(self):
        if self.gender not in GENDERS:
            raise CorpusError(f"unknown gender {self.gender!r}")


@dataclass(frozen=True)
class Predicate:
    """Selection clauses; ``None`` means the clause is not applied."""

    country: str | Iterable[str] | None = None
    years: tuple[int, int] | None = None
    solo_only: bool = False
    doc_type: str | None = None
    _countries: frozenset[str] | None = field(init=False, repr=False, compare=False, default=None)

    def __post_init__(self):
        if self.country is None:
            countries = None
        elif isinstance(self.country, str):
            countries = frozenset([self.country])
        else:
            countries = frozenset(self.country)
        object.__setattr__(self, "_countries", countries)

    def __call__(self, a: Article) -> bool:
        if self._countries is not None and a.country not in self._countries:
            return False
        if self.years is not None and not (self.years[0] <= a.year <= self.years[1]):
            return False
        if self.solo_only and a.n_authors != 1:
            return False
        if self.doc_type is not None and a.doc_type != self.doc_type:
            return False
        return True


def filter_corpus(corpus: Corpus, predicate: Predicate | None = None) -> Corpus:
    """Analysis corpus holding the articles that satisfy every clause of ``predicate``."""
    if predicate is None:
        predicate = Predicate()
    return Corpus(tuple(a for a in corpus.articles if predicate(a)), role=ANALYSIS)
