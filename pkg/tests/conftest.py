import random
import sys
from pathlib import Path

import pytest

from gendercite.corpus import Article, Corpus, GenderedArticle

sys.path.insert(0, str(Path(__file__).parent))


def make_article(id, year=2001, country="AUS", fields=("2746",), given_name="alice",
                 citations=0, n_authors=1, doc_type="article"):
    return Article(id, year, country, tuple(fields), given_name, citations, n_authors, doc_type)


@pytest.fixture
def art():
    return make_article


def fixed_records(n=50, seed=50):
    """(id, year, fields, citations, gender) tuples for the 50-article equivalence corpus."""
    rng = random.Random(seed)
    fields = ["1101", "1102", "1103"]
    records = []
    for i in range(n):
        k = 2 if i % 7 == 0 else 1
        fs = tuple(sorted(rng.sample(fields, k)))
        c = 0 if rng.random() < 0.2 else int(rng.lognormvariate(1.5, 1.2))
        g = "female" if rng.random() < 0.45 else "male"
        records.append((f"A{i:03d}", 2000 + (i % 2), fs, c, g))
    return records


@pytest.fixture
def fixed50():
    recs = fixed_records()
    gendered = [GenderedArticle(Article(r[0], r[1], "AUS", r[2], r[4], r[3], 2), r[4])
                for r in recs]
    return recs, gendered


@pytest.fixture
def small_corpus():
    return Corpus((make_article("A", 2001, "AUS"), make_article("B", 2002, "AUS"),
                   make_article("C", 2001, "CAN")))
