"""File-to-file pipeline stages driven by a ``RunConfig``.

Every stage reads plain files and writes plain files, so stages can be run one
at a time or chained by ``report`` with identical results.
"""

from __future__ import annotations

import csv
import hashlib
import io
import json
import logging
from pathlib import Path

from . import ingest, svg
from .config import RunConfig
from .corpus import REFERENCE, CorpusError
from .gender import NA, assign_all, coverage_summary
from .ingest import ParseReport
from .normalize import ScoreReport, reference_means, score_corpus
from .percentile import EmptyDistribution, cumulative_curve, resample
from .synth import generate, parse_spec_text, write_outputs
from .trends import PeriodSummaryRow, period_label, period_summary, yearly_series

log = logging.getLogger(__name__)

YEARLY_COLUMNS = (
    "country", "year", "n_female", "n_male", "n_unknown", "female_share_pct",
    "female_share_all_pct",
    "female_mnlcs", "female_ci_low", "female_ci_high", "female_skewness",
    "female_excess_kurtosis", "female_reliable",
    "male_mnlcs", "male_ci_low", "male_ci_high", "male_skewness",
    "male_excess_kurtosis", "male_reliable",
)
SUMMARY_COLUMNS = ("country", "period", "female_mnlcs", "male_mnlcs", "diff")
COVERAGE_COLUMNS = ("country", "articles", "gendered", "gendered_pct")
CURVE_COLUMNS = ("cum_pct", "female_share_pct")
CURVE_SUMMARY_COLUMNS = ("overall_share", "uncited_pct")


def num(x) -> str:
    if x is None:
        return NA
    if isinstance(x, bool):
        return "true" if x else "false"
    if isinstance(x, int):
        return str(x)
    return format(x, ".12g")


def _fmt(cfg: RunConfig, path: Path) -> str:
    return ingest.guess_format(path) if cfg.input_format == "auto" else cfg.input_format


def _parse(path: Path, parser, *args, **kwargs):
    with open(path, "rb") as fh:
        try:
            return parser(fh, *args, **kwargs)
        except CorpusError as exc:
            raise exc.with_source(path) from None


def _write_text(path: Path, text: str) -> Path:
    path.parent.mkdir(parents=True, exist_ok=True)
    with open(path, "w", encoding="utf-8", newline="") as fh:
        fh.write(text)
    return path


def _csv_text(columns, rows) -> str:
    buf = io.StringIO(newline="")
    w = csv.writer(buf, lineterminator="\n")
    w.writerow(columns)
    w.writerows(rows)
    return buf.getvalue()


def _require(cfg: RunConfig, key: str) -> Path:
    p = getattr(cfg, key)
    if p is None:
        raise ValueError(f"missing required setting {key!r}")
    if not Path(p).exists():
        raise FileNotFoundError(f"{key}: no such file {p}")
    return Path(p)


# ---- validate ---------------------------------------------------------------

def validate(cfg: RunConfig) -> str:
    lines = []
    if cfg.corpus is not None:
        path = _require(cfg, "corpus")
        rep = ParseReport()
        corpus = _parse(path, ingest.parse_corpus, _fmt(cfg, path), years=cfg.year_window,
                        report=rep)
        years = sorted({a.year for a in corpus})
        lines += [
            f"corpus: {path}",
            f"rows: {rep.rows}",
            f"articles: {len(corpus)}",
            f"dropped_non_article: {rep.dropped_doc_type}",
            f"dropped_out_of_window: {rep.dropped_year}",
            f"countries: {','.join(corpus.countries())}",
            f"years: {f'{years[0]}-{years[-1]}' if years else NA}",
            f"without_given_name: {sum(1 for a in corpus if a.given_name is None)}",
            f"solo: {sum(1 for a in corpus if a.n_authors == 1)}",
            f"uncited: {sum(1 for a in corpus if a.citations == 0)}",
        ]
    if cfg.names is not None:
        path = _require(cfg, "names")
        table = _parse(path, ingest.parse_name_table)
        lines += [f"names: {path}", f"name_entries: {len(table)}"]
    if not lines:
        raise ValueError("validate needs a corpus or a names file")
    return "\n".join(lines) + "\n"


# ---- gender -----------------------------------------------------------------

def gender_stage(cfg: RunConfig) -> list[Path]:
    cpath, npath = _require(cfg, "corpus"), _require(cfg, "names")
    rep = ParseReport()
    corpus = _parse(cpath, ingest.parse_corpus, _fmt(cfg, cpath), role=REFERENCE,
                    years=cfg.year_window, report=rep)
    table = _parse(npath, ingest.parse_name_table)
    gendered = assign_all(corpus.articles, table, cfg.rule)

    buf = io.StringIO(newline="")
    ingest.write_gendered(gendered, buf)
    out = [_write_text(cfg.out("gendered.csv"), buf.getvalue())]
    cov = coverage_summary(gendered, cfg.countries or None)
    out.append(_write_text(cfg.out("coverage.csv"), _csv_text(
        COVERAGE_COLUMNS,
        [[r.country, r.total, r.gendered_count, r.gendered_pct] for r in cov])))
    log.info("gender: %d articles, %d dropped rows", len(corpus), rep.dropped)
    return out


# ---- normalize --------------------------------------------------------------

def normalize_stage(cfg: RunConfig) -> list[Path]:
    gpath = cfg.gendered or cfg.out("gendered.csv")
    if not Path(gpath).exists():
        raise FileNotFoundError(f"gendered: no such file {gpath}")
    gendered = _parse(gpath, ingest.parse_gendered)
    if cfg.reference is not None:
        rpath = _require(cfg, "reference")
        ref = _parse(rpath, ingest.parse_corpus, _fmt(cfg, rpath), role=REFERENCE,
                     years=cfg.year_window)
        ref_articles = ref.articles
    else:
        ref_articles = [g.article for g in gendered]
    means = reference_means(ref_articles)
    rep = ScoreReport()
    scored = score_corpus(gendered, means, rep)

    buf = io.StringIO(newline="")
    ingest.write_scored(scored, buf)
    out = [_write_text(cfg.out("scored.csv"), buf.getvalue())]
    out.append(_write_text(cfg.out("exclusions.csv"), _csv_text(
        ("id", "reason"), [[i, "all field-year cells degenerate"] for i in rep.excluded])))
    log.info("normalize: %d scored, %d excluded, %d degenerate cells",
             rep.scored, len(rep.excluded), len(means.degenerate))
    return out


def _load_scored(cfg: RunConfig):
    spath = cfg.scored or cfg.out("scored.csv")
    if not Path(spath).exists():
        raise FileNotFoundError(f"scored: no such file {spath}")
    return _parse(spath, ingest.parse_scored)


def _countries(cfg: RunConfig, scored) -> list[str]:
    if cfg.countries:
        return list(cfg.countries)
    return sorted({s.article.country for s in scored})


# ---- trends -----------------------------------------------------------------

def _impact_cells(g):
    if g is None:
        return [NA] * 6
    return [num(g.mnlcs), num(g.ci_low), num(g.ci_high), num(g.skewness),
            num(g.excess_kurtosis), num(g.reliable)]


def yearly_table(rows) -> list[list[str]]:
    return [[r.country, str(r.year), str(r.n_female), str(r.n_male), str(r.n_unknown),
             num(r.female_share_pct), num(r.female_share_all_pct)]
            + _impact_cells(r.female) + _impact_cells(r.male) for r in rows]


def summary_table(rows: list[PeriodSummaryRow]) -> list[list[str]]:
    return [[r.country, r.period, num(r.female_mnlcs), num(r.male_mnlcs), num(r.diff)]
            for r in rows]


def wide_table(rows: list[PeriodSummaryRow], periods) -> tuple[list[str], list[list[str]]]:
    """Wide layout: one row per country, (female, male, F-M) per period."""
    labels = [period_label(p) for p in periods]
    header = ["country"] + [f"{k}_{lab}" for lab in labels for k in ("female", "male", "diff")]
    by_country: dict[str, dict[str, PeriodSummaryRow]] = {}
    for r in rows:
        by_country.setdefault(r.country, {})[r.period] = r
    body = []
    for c, per in by_country.items():
        line = [c]
        for lab in labels:
            r = per[lab]
            line += [num(r.female_mnlcs), num(r.male_mnlcs), num(r.diff)]
        body.append(line)
    return header, body


def _impact_json(g):
    if g is None:
        return None
    return {"n": g.n, "mnlcs": g.mnlcs, "ci_low": g.ci_low, "ci_high": g.ci_high,
            "skewness": g.skewness, "excess_kurtosis": g.excess_kurtosis,
            "reliable": g.reliable, "reason": g.reason}


def trends_stage(cfg: RunConfig, scored=None) -> list[Path]:
    scored = _load_scored(cfg) if scored is None else scored
    countries = _countries(cfg, scored)
    variants = [("", False)] + ([("solo_", True)] if cfg.solo else [])
    out = []
    for prefix, solo in variants:
        yearly, summary = [], []
        for c in countries:
            yearly += yearly_series(scored, c, cfg.years, solo_only=solo)
            summary += period_summary(scored, c, cfg.periods, solo_only=solo)
        if "delimited" in cfg.outputs:
            out.append(_write_text(cfg.out(f"trends_{prefix}yearly.csv"),
                                   _csv_text(YEARLY_COLUMNS, yearly_table(yearly))))
            out.append(_write_text(cfg.out(f"trends_{prefix}summary.csv"),
                                   _csv_text(SUMMARY_COLUMNS, summary_table(summary))))
            header, body = wide_table(summary, cfg.periods)
            out.append(_write_text(cfg.out(f"trends_{prefix}wide.csv"), _csv_text(header, body)))
        if "json" in cfg.outputs:
            doc = {
                "yearly": [{"country": r.country, "year": r.year, "n_female": r.n_female,
                            "n_male": r.n_male, "n_unknown": r.n_unknown,
                            "female_share_pct": r.female_share_pct,
                            "female_share_all_pct": r.female_share_all_pct,
                            "female": _impact_json(r.female), "male": _impact_json(r.male)}
                           for r in yearly],
                "summary": [{"country": r.country, "period": r.period,
                             "female_mnlcs": r.female_mnlcs, "male_mnlcs": r.male_mnlcs,
                             "diff": r.diff, "n_female": r.n_female, "n_male": r.n_male}
                            for r in summary],
            }
            out.append(_write_text(cfg.out(f"trends_{prefix}yearly.json"),
                                   json.dumps(doc, indent=1, sort_keys=True) + "\n"))
        if "svg" in cfg.outputs:
            for c in countries:
                rows = [r for r in yearly if r.country == c]
                title = f"{c}: female share and MNLCS by year" + (" (solo)" if solo else "")
                out.append(_write_text(cfg.out(f"trends_{prefix}{c}.svg"),
                                       svg.trend_chart(rows, title)))
    return out


# ---- distribution -----------------------------------------------------------

def distribution_stage(cfg: RunConfig, scored=None) -> list[Path]:
    scored = _load_scored(cfg) if scored is None else scored
    out = []
    curves = {}
    for c in _countries(cfg, scored):
        try:
            curve = cumulative_curve(s for s in scored if s.article.country == c)
        except EmptyDistribution:
            curve = None
        curves[c] = curve
        if "delimited" in cfg.outputs:
            pts = [] if curve is None else [[num(x), num(y)] for x, y in curve.points]
            out.append(_write_text(cfg.out(f"distribution_{c}.csv"), _csv_text(CURVE_COLUMNS, pts)))
            summ = [[NA, NA]] if curve is None else [[num(curve.overall_share),
                                                     num(curve.uncited_pct)]]
            out.append(_write_text(cfg.out(f"distribution_{c}_summary.csv"),
                                   _csv_text(CURVE_SUMMARY_COLUMNS, summ)))
            grid = [] if curve is None else [[num(x), num(y)] for x, y in resample(curve)]
            out.append(_write_text(cfg.out(f"distribution_{c}_grid.csv"),
                                   _csv_text(CURVE_COLUMNS, grid)))
        if "svg" in cfg.outputs and curve is not None:
            out.append(_write_text(cfg.out(f"distribution_{c}.svg"), svg.curve_chart(
                curve, f"{c}: female share of top-cited articles (NLCS)")))
    if "json" in cfg.outputs:
        doc = {c: None if cv is None else {
            "points": [list(p) for p in cv.points], "overall_point": list(cv.overall_point),
            "uncited_pct": cv.uncited_pct, "n": cv.n} for c, cv in curves.items()}
        out.append(_write_text(cfg.out("distribution.json"),
                               json.dumps(doc, indent=1, sort_keys=True) + "\n"))
    return out


# ---- synth ------------------------------------------------------------------

def synth_stage(cfg: RunConfig) -> list[Path]:
    spath = _require(cfg, "spec")
    spec = parse_spec_text(spath.read_text(encoding="utf-8"))
    corpus, table, truth = generate(spec, oracle_draws=cfg.oracle_draws)
    paths = write_outputs(cfg.output_dir, corpus, table, truth)
    return [paths["corpus"], paths["names"], paths["truth"]]


# ---- report -----------------------------------------------------------------

def digest(path: Path) -> str:
    h = hashlib.sha256()
    with open(path, "rb") as fh:
        for chunk in iter(lambda: fh.read(1 << 20), b""):
            h.update(chunk)
    return h.hexdigest()


def report_stage(cfg: RunConfig) -> list[Path]:
    """gender -> normalize -> trends -> distribution, then a JSON manifest of everything."""
    outputs = []
    outputs += gender_stage(cfg)
    outputs += normalize_stage(cfg)
    outputs += trends_stage(cfg)
    outputs += distribution_stage(cfg)
    inputs = {k: getattr(cfg, k) for k in ("corpus", "names", "reference")
              if getattr(cfg, k) is not None}
    manifest = {
        "inputs": [{"role": k, "name": Path(p).name, "sha256": digest(Path(p))}
                   for k, p in sorted(inputs.items())],
        "outputs": [{"path": p.relative_to(cfg.output_dir).as_posix(), "sha256": digest(p),
                     "bytes": p.stat().st_size} for p in outputs],
        "settings": {
            "year_window": period_label(cfg.year_window),
            "periods": [period_label(p) for p in cfg.periods],
            "min_share_pct": cfg.min_share_pct,
            "samples_at_100": cfg.samples_at_100,
            "samples_at_min": cfg.samples_at_min,
            "countries": list(cfg.countries),
            "outputs": list(cfg.outputs),
            "solo": cfg.solo,
        },
    }
    mpath = _write_text(cfg.out("manifest.json"), json.dumps(manifest, indent=1) + "\n")
    return outputs + [mpath]
