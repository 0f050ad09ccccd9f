"""Reading and writing corpus, gendered, scored and name-table files.

Two corpus encodings share one field list: comma-delimited with a header row,
and one JSON object per line. ``fields`` is a ``;``-joined string in both.
"""

from __future__ import annotations

import csv
import io
import json
from dataclasses import dataclass
from typing import IO, Iterable, Iterator

from .corpus import (ANALYSIS, ARTICLE, GENDERS, OTHER, Article, Corpus, CorpusError,
                     GenderedArticle)
from .gender import NameEvidence, NameGenderTable

CORPUS_COLUMNS = ("id", "year", "country", "fields", "given_name", "citations", "n_authors",
                  "doc_type")
GENDERED_COLUMNS = CORPUS_COLUMNS + ("gender",)
SCORED_COLUMNS = CORPUS_COLUMNS + ("gender", "nlcs")
NAME_COLUMNS = ("name", "country", "majority_gender", "share_pct", "samples")

DELIMITED = "delimited"
JSONL = "jsonl"
FORMATS = (DELIMITED, JSONL)


@dataclass
class ParseReport:
    rows: int = 0
    dropped_doc_type: int = 0
    dropped_year: int = 0

    @property
    def dropped(self) -> int:
        return self.dropped_doc_type + self.dropped_year


def guess_format(path) -> str:
    name = str(path).lower()
    return JSONL if name.endswith((".jsonl", ".ndjson", ".json")) else DELIMITED


def _text(source: IO | bytes | str) -> IO[str]:
    if isinstance(source, bytes):
        try:
            return io.StringIO(source.decode("utf-8"), newline="")
        except UnicodeDecodeError as exc:
            raise CorpusError(f"input is not valid UTF-8: {exc.reason} at byte {exc.start}") from None
    if isinstance(source, str):
        return io.StringIO(source, newline="")
    if isinstance(source, io.TextIOBase):
        return source
    return io.TextIOWrapper(source, encoding="utf-8", newline="")


def _rows_delimited(stream: IO[str], columns: tuple[str, ...]) -> Iterator[tuple[int, dict]]:
    reader = csv.reader(stream)
    try:
        header = next(reader)
    except StopIteration:
        raise CorpusError("missing header row", line=1) from None
    header = [h.strip() for h in header]
    if header and header[0].startswith("﻿"):
        header[0] = header[0][1:]
    if tuple(header) != columns:
        raise CorpusError(f"header must be {','.join(columns)}; got {','.join(header)}", line=1)
    for row in reader:
        line = reader.line_num
        if not row or (len(row) == 1 and not row[0].strip()):
            continue
        if len(row) != len(columns):
            raise CorpusError(f"expected {len(columns)} columns, got {len(row)}", line=line)
        yield line, dict(zip(columns, row))


def _rows_jsonl(stream: IO[str], columns: tuple[str, ...]) -> Iterator[tuple[int, dict]]:
    for line, text in enumerate(stream, start=1):
        if not text.strip():
            continue
        try:
            obj = json.loads(text)
        except json.JSONDecodeError as exc:
            raise CorpusError(f"invalid JSON: {exc.msg}", line=line) from None
        if not isinstance(obj, dict):
            raise CorpusError("expected a JSON object", line=line)
        missing = [c for c in columns if c not in obj]
        if missing:
            raise CorpusError("missing key", line=line, column=missing[0])
        unknown = sorted(set(obj) - set(columns))
        if unknown:
            raise CorpusError("unknown key", line=line, column=unknown[0])
        yield line, obj


def _int(row: dict, col: str, line: int) -> int:
    v = row[col]
    if isinstance(v, bool):
        raise CorpusError(f"{col} must be an integer", line=line, column=col)
    if isinstance(v, int):
        return v
    try:
        return int(str(v).strip())
    except ValueError:
        raise CorpusError(f"{col} must be an integer, got {v!r}", line=line, column=col) from None


def _str(row: dict, col: str) -> str:
    v = row[col]
    return "" if v is None else str(v).strip()


def _article(row: dict, line: int) -> Article:
    art_id = _str(row, "id")
    if not art_id:
        raise CorpusError("empty id", line=line, column="id")
    year = _int(row, "year", line)
    country = _str(row, "country").upper()
    if not country:
        raise CorpusError("empty country", line=line, column="country")
    raw_fields = row["fields"]
    if isinstance(raw_fields, list):
        codes = [str(f).strip() for f in raw_fields]
    else:
        codes = _str(row, "fields").split(";")
    codes = tuple(sorted({c for c in (x.strip() for x in codes) if c}))
    if not codes:
        raise CorpusError("empty fields set", line=line, column="fields")
    citations = _int(row, "citations", line)
    if citations < 0:
        raise CorpusError(f"negative citation count, line {line}", line=line, column="citations")
    n_authors = _int(row, "n_authors", line)
    if n_authors < 1:
        raise CorpusError("n_authors must be >= 1", line=line, column="n_authors")
    doc = _str(row, "doc_type").lower()
    if not doc:
        raise CorpusError("empty doc_type", line=line, column="doc_type")
    return Article(
        id=art_id,
        year=year,
        country=country,
        fields=codes,
        given_name=_str(row, "given_name") or None,
        citations=citations,
        n_authors=n_authors,
        doc_type=ARTICLE if doc == ARTICLE else OTHER,
    )


def _iter_articles(source, fmt: str, columns: tuple[str, ...], years: tuple[int, int] | None,
                   report: ParseReport) -> Iterator[tuple[int, dict, Article]]:
    if fmt not in FORMATS:
        raise ValueError(f"unknown format {fmt!r}")
    stream = _text(source)
    rows = _rows_delimited(stream, columns) if fmt == DELIMITED else _rows_jsonl(stream, columns)
    first_line: dict[str, int] = {}
    try:
        for line, row in rows:
            report.rows += 1
            art = _article(row, line)
            prev = first_line.get(art.id)
            if prev is not None:
                raise CorpusError(f"duplicate id {art.id!r} on lines {prev} and {line}",
                                  line=line, column="id")
            first_line[art.id] = line
            if art.doc_type != ARTICLE:
                report.dropped_doc_type += 1
                continue
            if years is not None and not (years[0] <= art.year <= years[1]):
                report.dropped_year += 1
                continue
            yield line, row, art
    except UnicodeDecodeError as exc:
        raise CorpusError(f"input is not valid UTF-8: {exc.reason}") from None


def parse_corpus(source, fmt: str = DELIMITED, role: str = ANALYSIS,
                 years: tuple[int, int] | None = None,
                 report: ParseReport | None = None) -> Corpus:
    """Parse a corpus file.

    Rows whose doc_type is not ``article``, and rows outside ``years`` when a
    window is given, are dropped and counted in ``report`` rather than
    rejected.
    """
    report = report if report is not None else ParseReport()
    arts = [a for _, _, a in _iter_articles(source, fmt, CORPUS_COLUMNS, years, report)]
    return Corpus(tuple(arts), role=role)


def _gender(row: dict, line: int) -> str:
    g = _str(row, "gender").lower()
    if g not in GENDERS:
        raise CorpusError(f"gender must be one of {', '.join(GENDERS)}", line=line, column="gender")
    return g


def parse_gendered(source, fmt: str = DELIMITED,
                   report: ParseReport | None = None) -> list[GenderedArticle]:
    report = report if report is not None else ParseReport()
    return [GenderedArticle(a, _gender(row, line))
            for line, row, a in _iter_articles(source, fmt, GENDERED_COLUMNS, None, report)]


def parse_scored(source, fmt: str = DELIMITED, report: ParseReport | None = None):
    from .normalize import ScoredArticle

    report = report if report is not None else ParseReport()
    out = []
    for line, row, a in _iter_articles(source, fmt, SCORED_COLUMNS, None, report):
        try:
            score = float(row["nlcs"])
        except (TypeError, ValueError):
            raise CorpusError(f"nlcs must be a number, got {row['nlcs']!r}",
                              line=line, column="nlcs") from None
        if not score >= 0 or score == float("inf"):
            raise CorpusError("nlcs must be finite and non-negative", line=line, column="nlcs")
        out.append(ScoredArticle(a, _gender(row, line), score))
    return out


def _article_values(a: Article) -> list:
    return [a.id, a.year, a.country, ";".join(a.fields), a.given_name or "", a.citations,
            a.n_authors, a.doc_type]


def format_nlcs(x: float) -> str:
    return format(x, ".12g")


def _write(out: IO[str], fmt: str, columns: tuple[str, ...], rows: Iterable[list]) -> None:
    if fmt == DELIMITED:
        w = csv.writer(out, lineterminator="\n")
        w.writerow(columns)
        for r in rows:
            w.writerow(r)
    elif fmt == JSONL:
        for r in rows:
            out.write(json.dumps(dict(zip(columns, r)), ensure_ascii=False) + "\n")
    else:
        raise ValueError(f"unknown format {fmt!r}")


def write_corpus(articles: Iterable[Article], out: IO[str], fmt: str = DELIMITED) -> None:
    _write(out, fmt, CORPUS_COLUMNS, (_article_values(a) for a in articles))


def write_gendered(items: Iterable[GenderedArticle], out: IO[str], fmt: str = DELIMITED) -> None:
    _write(out, fmt, GENDERED_COLUMNS, (_article_values(g.article) + [g.gender] for g in items))


def write_scored(items, out: IO[str], fmt: str = DELIMITED) -> None:
    # nlcs stays a string in JSONL too, so both encodings carry identical digits
    _write(out, fmt, SCORED_COLUMNS,
           (_article_values(s.article) + [s.gender, format_nlcs(s.nlcs)] for s in items))


def serialize_corpus(corpus: Corpus, fmt: str = DELIMITED) -> str:
    buf = io.StringIO(newline="")
    write_corpus(corpus.articles, buf, fmt)
    return buf.getvalue()


def parse_name_table(source) -> NameGenderTable:
    stream = _text(source)
    table = NameGenderTable()
    first_line: dict[tuple, int] = {}
    try:
        for line, row in _rows_delimited(stream, NAME_COLUMNS):
            name = _str(row, "name")
            if not name:
                raise CorpusError("empty name", line=line, column="name")
            country = _str(row, "country").upper() or None
            gender = _str(row, "majority_gender").lower()
            if gender not in ("female", "male"):
                raise CorpusError(f"majority_gender must be female or male, got {gender!r}",
                                  line=line, column="majority_gender")
            try:
                share = float(_str(row, "share_pct"))
            except ValueError:
                raise CorpusError("share_pct must be a number", line=line,
                                  column="share_pct") from None
            if not 0 <= share <= 100:
                raise CorpusError(f"share_pct {share:g} outside [0, 100]", line=line,
                                  column="share_pct")
            samples = _int(row, "samples", line)
            if samples < 1:
                raise CorpusError("samples must be a positive integer", line=line,
                                  column="samples")
            key = (name.lower(), country)
            if key in first_line:
                raise CorpusError(f"duplicate (name, country) {key} on lines {first_line[key]} "
                                  f"and {line}", line=line, column="name")
            first_line[key] = line
            table.add(name, country, NameEvidence(gender, share, samples))
    except UnicodeDecodeError as exc:
        raise CorpusError(f"input is not valid UTF-8: {exc.reason}") from None
    return table


def write_name_table(table: NameGenderTable, out: IO[str]) -> None:
    w = csv.writer(out, lineterminator="\n")
    w.writerow(NAME_COLUMNS)
    for (name, country), ev in table.items():
        w.writerow([name, country or "", ev.majority_gender, format(ev.share_pct, "g"),
                    ev.samples])
