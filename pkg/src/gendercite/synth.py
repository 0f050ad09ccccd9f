"""Synthetic corpora with known gender effects, and a Monte-Carlo oracle for them.

Each (field, year) cell draws from its own generator seeded with
``blake2b("{seed}|{field}|{year}", digest_size=8)`` read big-endian, so cells
can be produced in any order or in parallel with identical output.

Per article, in this draw order: female ~ Bernoulli(p_female);
solo ~ Bernoulli(solo_fraction); co-author count ~ U{2..8};
initials-only ~ Bernoulli(unknown_fraction); country uniform over
``countries``; latent ~ Normal(mu_fy + delta*female + solo_shift*solo, sigma).
Citations are ``max(0, rint(exp(latent) - 1))``.
"""

from __future__ import annotations

import hashlib
import json
import math
from dataclasses import asdict, dataclass, field, fields as dc_fields
from pathlib import Path

import numpy as np

from .corpus import FEMALE, MALE, REFERENCE, Article, Corpus
from .gender import NameEvidence, NameGenderTable

FEMALE_NAME = "synthfemale"
MALE_NAME = "synthmale"
SENTINEL_SAMPLES = 1000
MAX_LATENT = 40.0  # keeps exp() inside int64


def default_fields() -> tuple[str, ...]:
    return tuple(str(2701 + i) for i in range(10))


@dataclass(frozen=True)
class SynthSpec:
    fields: tuple[str, ...] = field(default_factory=default_fields)
    years: tuple[int, int] = (1996, 2015)
    n_cell: int = 500
    p_female: float = 0.4
    mu: float = 1.0
    sigma: float = 1.0
    delta: float = 0.0
    solo_fraction: float = 0.1
    solo_shift: float = 0.0
    mu_field_sd: float = 0.0
    mu_year_trend: float = 0.0
    unknown_fraction: float = 0.0
    countries: tuple[str, ...] = ("SYN",)
    seed: int = 0

    def __post_init__(self):
        object.__setattr__(self, "fields", tuple(str(f) for f in self.fields))
        object.__setattr__(self, "countries", tuple(c.upper() for c in self.countries))
        object.__setattr__(self, "years", (int(self.years[0]), int(self.years[1])))
        if not self.fields:
            raise ValueError("need at least one field")
        if len(set(self.fields)) != len(self.fields):
            raise ValueError("field codes must be unique")
        if any((";" in f or "," in f or not f) for f in self.fields):
            raise ValueError("field codes must be non-empty and free of ';' and ','")
        if not self.countries:
            raise ValueError("need at least one country")
        if self.years[0] > self.years[1]:
            raise ValueError("years must be an increasing range")
        if self.n_cell < 1:
            raise ValueError("n_cell must be >= 1")
        if self.sigma < 0:
            raise ValueError("sigma must be >= 0")
        for name in ("p_female", "solo_fraction", "unknown_fraction"):
            if not 0 <= getattr(self, name) <= 1:
                raise ValueError(f"{name} must lie in [0, 1]")
        if not 0 <= self.seed < 2 ** 64:
            raise ValueError("seed must be a 64-bit unsigned integer")

    @property
    def year_list(self) -> list[int]:
        return list(range(self.years[0], self.years[1] + 1))

    def cells(self):
        return [(f, y) for f in self.fields for y in self.year_list]


def mix_seed(*parts) -> int:
    digest = hashlib.blake2b("|".join(str(p) for p in parts).encode(), digest_size=8).digest()
    return int.from_bytes(digest, "big")


def field_offset(spec: SynthSpec, f: str) -> float:
    if spec.mu_field_sd == 0:
        return 0.0
    rng = np.random.default_rng(mix_seed(spec.seed, f, "offset"))
    return float(rng.normal(0.0, spec.mu_field_sd))


def cell_location(spec: SynthSpec, f: str, year: int) -> float:
    return spec.mu + field_offset(spec, f) + spec.mu_year_trend * (year - spec.years[0])


@dataclass
class CellDraw:
    female: np.ndarray
    solo: np.ndarray
    n_authors: np.ndarray
    unknown: np.ndarray
    country: np.ndarray
    citations: np.ndarray


def draw_cell(spec: SynthSpec, rng: np.random.Generator, loc: float, n: int) -> CellDraw:
    female = rng.random(n) < spec.p_female
    solo = rng.random(n) < spec.solo_fraction
    coauthors = rng.integers(2, 9, n)
    unknown = rng.random(n) < spec.unknown_fraction
    country = rng.integers(0, len(spec.countries), n)
    latent = loc + spec.delta * female + spec.solo_shift * solo
    if spec.sigma > 0:
        latent = latent + spec.sigma * rng.standard_normal(n)
    latent = np.minimum(latent, MAX_LATENT)
    citations = np.maximum(0.0, np.rint(np.expm1(latent))).astype(np.int64)
    return CellDraw(female, solo, np.where(solo, 1, coauthors), unknown, country, citations)


@dataclass(frozen=True)
class SynthTruth:
    spec: SynthSpec
    n_articles: int
    n_female: int
    n_male: int
    n_unknown: int
    n_solo: int
    n_uncited: int
    oracle_diff: float | None = None
    oracle_se: float | None = None
    oracle_seed: int | None = None
    oracle_draws: int = 0

    def to_json(self) -> str:
        d = asdict(self)
        d["spec"] = spec_to_dict(self.spec)
        return json.dumps(d, sort_keys=True, indent=2) + "\n"


def name_table() -> NameGenderTable:
    t = NameGenderTable()
    t.add(FEMALE_NAME, None, NameEvidence(FEMALE, 100.0, SENTINEL_SAMPLES))
    t.add(MALE_NAME, None, NameEvidence(MALE, 100.0, SENTINEL_SAMPLES))
    return t


def generate(spec: SynthSpec, *, oracle_draws: int = 0, oracle_seed: int | None = None):
    """Build ``(corpus, name_table, truth)`` for ``spec``.

    True genders are baked into sentinel given names that the name table maps
    with certainty; initials-only articles carry no given name. With
    ``oracle_draws > 0`` the truth also carries ``oracle_diff`` for the spec.
    """
    articles = []
    n_f = n_m = n_u = n_solo = n_unc = 0
    for f in spec.fields:
        for y in spec.year_list:
            rng = np.random.default_rng(mix_seed(spec.seed, f, y))
            d = draw_cell(spec, rng, cell_location(spec, f, y), spec.n_cell)
            fem = d.female.tolist()
            unk = d.unknown.tolist()
            cites = d.citations.tolist()
            auth = d.n_authors.tolist()
            ctry = d.country.tolist()
            for i in range(spec.n_cell):
                name = None if unk[i] else (FEMALE_NAME if fem[i] else MALE_NAME)
                articles.append(Article(f"S{f}-{y}-{i:06d}", y, spec.countries[ctry[i]], (f,),
                                        name, cites[i], auth[i]))
            n_u += sum(unk)
            n_f += sum(1 for a, b in zip(fem, unk) if a and not b)
            n_m += sum(1 for a, b in zip(fem, unk) if not a and not b)
            n_solo += int(d.solo.sum())
            n_unc += int((d.citations == 0).sum())
    od = se = None
    if oracle_draws > 0:
        oracle_seed = spec.seed + 1 if oracle_seed is None else oracle_seed
        od, se = oracle_diff(spec, draws=oracle_draws, oracle_seed=oracle_seed)
    truth = SynthTruth(spec, len(articles), n_f, n_m, n_u, n_solo, n_unc, od, se,
                       oracle_seed if oracle_draws > 0 else None, oracle_draws)
    return Corpus(tuple(articles), role=REFERENCE), name_table(), truth


def oracle_diff(spec: SynthSpec, *, draws: int = 10_000_000,
                oracle_seed: int = 1) -> tuple[float, float]:
    """Monte-Carlo estimate of expected pooled ``MNLCS_F - MNLCS_M`` and its standard error.

    Samples each cell directly with ``draws / n_cells`` articles and computes
    log-citation means and ratios with plain array arithmetic, sharing nothing
    with the normalisation pipeline. Cells are pooled with equal weight, as
    every cell of a generated corpus has ``n_cell`` articles. With
    ``sigma == 0`` the limit is returned exactly with zero error.
    """
    if spec.sigma == 0:
        return _closed_form_diff(spec), 0.0
    cells = spec.cells()
    per_cell = max(2, draws // len(cells))
    sum_f = sum_m = sq_f = sq_m = 0.0
    cnt_f = cnt_m = 0
    for k, (f, y) in enumerate(cells):
        rng = np.random.default_rng([oracle_seed, k])
        d = draw_cell(spec, rng, cell_location(spec, f, y), per_cell)
        logs = np.log(d.citations + 1.0)
        a = float(logs.mean())
        if a == 0:
            continue
        r = logs / a
        fm = d.female & ~d.unknown
        mm = ~d.female & ~d.unknown
        sum_f += float(r[fm].sum())
        sq_f += float((r[fm] ** 2).sum())
        cnt_f += int(fm.sum())
        sum_m += float(r[mm].sum())
        sq_m += float((r[mm] ** 2).sum())
        cnt_m += int(mm.sum())
    if cnt_f == 0 or cnt_m == 0:
        return math.nan, math.nan
    mf, mm_ = sum_f / cnt_f, sum_m / cnt_m
    vf = max(sq_f / cnt_f - mf * mf, 0.0)
    vm = max(sq_m / cnt_m - mm_ * mm_, 0.0)
    return mf - mm_, math.sqrt(vf / cnt_f + vm / cnt_m)


def _closed_form_diff(spec: SynthSpec) -> float:
    # sigma = 0: citations are fixed per (gender, solo) class; weights are the
    # class probabilities, unknown-name articles are gender-independent
    p, q = spec.p_female, spec.solo_fraction
    if p in (0, 1) or spec.unknown_fraction == 1:
        return math.nan
    num_f = num_m = 0.0
    for f, y in spec.cells():
        loc = cell_location(spec, f, y)

        def lg(fem, solo):
            lat = min(loc + spec.delta * fem + spec.solo_shift * solo, MAX_LATENT)
            return math.log1p(max(0.0, float(np.rint(math.expm1(lat)))))

        ef = q * lg(1, 1) + (1 - q) * lg(1, 0)
        em = q * lg(0, 1) + (1 - q) * lg(0, 0)
        a = p * ef + (1 - p) * em
        if a == 0:
            continue
        num_f += ef / a
        num_m += em / a
    n = len(spec.cells())
    return num_f / n - num_m / n


# ---- spec files -------------------------------------------------------------

_TUPLE_STR = {"fields", "countries"}


def spec_to_dict(spec: SynthSpec) -> dict:
    d = asdict(spec)
    d["fields"] = list(spec.fields)
    d["countries"] = list(spec.countries)
    d["years"] = list(spec.years)
    return d


def parse_spec_text(text: str) -> SynthSpec:
    """Parse ``key = value`` lines (``#`` comments allowed) into a ``SynthSpec``."""
    known = {f.name: f for f in dc_fields(SynthSpec)}
    kwargs = {}
    for lineno, raw in enumerate(text.splitlines(), start=1):
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue
        if "=" not in line:
            raise ValueError(f"line {lineno}: expected key = value")
        key, value = (s.strip() for s in line.split("=", 1))
        if key not in known:
            raise ValueError(f"line {lineno}: unknown key {key!r}")
        if key in kwargs:
            raise ValueError(f"line {lineno}: duplicate key {key!r}")
        try:
            kwargs[key] = _coerce(key, value)
        except ValueError as exc:
            raise ValueError(f"line {lineno}: bad value for {key}: {exc}") from None
    return SynthSpec(**kwargs)


def _coerce(key: str, value: str):
    if key in _TUPLE_STR:
        return tuple(v.strip() for v in value.split(",") if v.strip())
    if key == "years":
        lo, _, hi = value.partition("-")
        return (int(lo), int(hi or lo))
    if key in ("n_cell", "seed"):
        return int(value)
    return float(value)


def spec_to_text(spec: SynthSpec) -> str:
    d = spec_to_dict(spec)
    lines = []
    for k in sorted(d):
        v = d[k]
        if k == "years":
            v = f"{v[0]}-{v[1]}"
        elif isinstance(v, list):
            v = ",".join(v)
        lines.append(f"{k} = {v}")
    return "\n".join(lines) + "\n"


def write_outputs(outdir: Path, corpus: Corpus, table: NameGenderTable, truth: SynthTruth) -> dict:
    from .ingest import write_corpus, write_name_table

    outdir.mkdir(parents=True, exist_ok=True)
    paths = {"corpus": outdir / "corpus.csv", "names": outdir / "names.csv",
             "truth": outdir / "truth.json"}
    with open(paths["corpus"], "w", encoding="utf-8", newline="") as fh:
        write_corpus(corpus.articles, fh)
    with open(paths["names"], "w", encoding="utf-8", newline="") as fh:
        write_name_table(table, fh)
    paths["truth"].write_text(truth.to_json(), encoding="utf-8")
    return paths
