"""Run configuration: ``key = value`` files merged with command-line overrides."""

from __future__ import annotations

from dataclasses import dataclass, fields, replace
from pathlib import Path

from .corpus import DEFAULT_YEARS
from .gender import ThresholdRule
from .trends import DEFAULT_PERIODS

OUTPUT_KINDS = ("delimited", "json", "svg")


class ConfigError(ValueError):
    pass


def _range(text: str) -> tuple[int, int]:
    lo, sep, hi = text.strip().partition("-")
    try:
        a, b = int(lo), int(hi if sep else lo)
    except ValueError:
        raise ConfigError(f"bad year range {text!r}; expected YYYY-YYYY") from None
    if a > b:
        raise ConfigError(f"year range {text!r} is decreasing")
    return a, b


def _bool(text: str) -> bool:
    t = text.strip().lower()
    if t in ("1", "true", "yes", "on"):
        return True
    if t in ("0", "false", "no", "off"):
        return False
    raise ConfigError(f"bad boolean {text!r}")


def _list(text: str) -> tuple[str, ...]:
    return tuple(s.strip() for s in text.split(",") if s.strip())


@dataclass(frozen=True)
class RunConfig:
    corpus: Path | None = None
    reference: Path | None = None
    names: Path | None = None
    gendered: Path | None = None
    scored: Path | None = None
    spec: Path | None = None
    output_dir: Path = Path("out")
    input_format: str = "auto"
    min_share_pct: float = 90.0
    samples_at_100: int = 10
    samples_at_min: int = 500
    periods: tuple[tuple[int, int], ...] = DEFAULT_PERIODS
    year_window: tuple[int, int] = DEFAULT_YEARS
    countries: tuple[str, ...] = ()
    outputs: tuple[str, ...] = ("delimited",)
    solo: bool = False
    oracle_draws: int = 0

    @property
    def rule(self) -> ThresholdRule:
        return ThresholdRule(self.min_share_pct, self.samples_at_100, self.samples_at_min)

    @property
    def years(self) -> range:
        return range(self.year_window[0], self.year_window[1] + 1)

    def out(self, name: str) -> Path:
        return self.output_dir / name


_PATH_KEYS = {"corpus", "reference", "names", "gendered", "scored", "spec", "output_dir"}


def coerce(key: str, value: str):
    if key in _PATH_KEYS:
        return Path(value.strip())
    if key == "input_format":
        v = value.strip().lower()
        if v not in ("auto", "delimited", "jsonl"):
            raise ConfigError(f"input_format must be auto, delimited or jsonl, got {v!r}")
        return v
    if key == "min_share_pct":
        return float(value)
    if key in ("samples_at_100", "samples_at_min", "oracle_draws"):
        return int(value)
    if key == "periods":
        return tuple(_range(p) for p in _list(value))
    if key == "year_window":
        return _range(value)
    if key == "countries":
        return tuple(c.upper() for c in _list(value))
    if key == "outputs":
        kinds = _list(value.lower())
        bad = [k for k in kinds if k not in OUTPUT_KINDS]
        if bad:
            raise ConfigError(f"unknown output kind {bad[0]!r}")
        return kinds
    if key == "solo":
        return _bool(value)
    raise ConfigError(f"unknown key {key!r}")


KEYS = tuple(f.name for f in fields(RunConfig))


def parse_config(text: str, source: str = "config") -> dict:
    values = {}
    for lineno, raw in enumerate(text.splitlines(), start=1):
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue
        key, sep, value = line.partition("=")
        key = key.strip()
        if not sep:
            raise ConfigError(f"{source}, line {lineno}: expected key = value")
        if key not in KEYS:
            raise ConfigError(f"{source}, line {lineno}: unknown key {key!r}")
        try:
            values[key] = coerce(key, value)
        except (ConfigError, ValueError) as exc:
            raise ConfigError(f"{source}, line {lineno}: {exc}") from None
    return values


def load_config(path: Path | None, overrides: dict | None = None) -> RunConfig:
    values = {}
    if path is not None:
        values.update(parse_config(Path(path).read_text(encoding="utf-8"), str(path)))
    values.update({k: v for k, v in (overrides or {}).items() if v is not None})
    cfg = replace(RunConfig(), **values)
    try:
        cfg.rule
    except ValueError as exc:
        raise ConfigError(str(exc)) from None
    return cfg
