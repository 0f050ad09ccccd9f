"""Command-line entry point.

Exit status: 0 success, 2 validation or data error, 3 I/O error.
"""

from __future__ import annotations

import argparse
import logging
import sys
from pathlib import Path

from . import pipeline
from .config import KEYS, ConfigError, coerce, load_config
from .corpus import CorpusError

EXIT_OK, EXIT_DATA, EXIT_IO = 0, 2, 3

SUBCOMMANDS = {
    "validate": "check a corpus and/or name table file and print counts",
    "gender": "assign first-author genders (writes gendered.csv, coverage.csv)",
    "normalize": "compute NLCS against reference means (writes scored.csv)",
    "trends": "yearly share/MNLCS series and period summaries",
    "distribution": "cumulative top-percentile female share curves",
    "synth": "generate a synthetic corpus, name table and truth manifest",
    "report": "gender -> normalize -> trends -> distribution plus a manifest",
}


def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("-c", "--config", type=Path, help="key = value configuration file")
    common.add_argument("--set", action="append", default=[], metavar="KEY=VALUE",
                        help="override one configuration key (repeatable)")
    common.add_argument("-o", "--output-dir", type=Path)
    common.add_argument("--corpus", type=Path)
    common.add_argument("--reference", type=Path)
    common.add_argument("--names", type=Path)
    common.add_argument("--gendered", type=Path)
    common.add_argument("--scored", type=Path)
    common.add_argument("--countries")
    common.add_argument("-v", "--verbose", action="store_true")

    parser = argparse.ArgumentParser(prog="gendercite", description=__doc__.splitlines()[0])
    sub = parser.add_subparsers(dest="command", required=True)
    for name, help_text in SUBCOMMANDS.items():
        p = sub.add_parser(name, parents=[common], help=help_text, description=help_text)
        if name == "synth":
            p.add_argument("spec", type=Path, nargs="?", help="synthetic spec file")
            p.add_argument("--oracle-draws", type=int)
    return parser


def _overrides(args) -> dict:
    values = {}
    for item in args.set:
        key, sep, value = item.partition("=")
        key = key.strip()
        if not sep:
            raise ConfigError(f"--set expects KEY=VALUE, got {item!r}")
        if key not in KEYS:
            raise ConfigError(f"unknown key {key!r}")
        values[key] = coerce(key, value)
    for key in ("output_dir", "corpus", "reference", "names", "gendered", "scored"):
        if getattr(args, key, None) is not None:
            values[key] = getattr(args, key)
    if args.countries is not None:
        values["countries"] = coerce("countries", args.countries)
    if getattr(args, "spec", None) is not None:
        values["spec"] = args.spec
    if getattr(args, "oracle_draws", None) is not None:
        values["oracle_draws"] = args.oracle_draws
    return values


def run(argv: list[str] | None = None) -> int:
    args = build_parser().parse_args(argv)
    logging.basicConfig(level=logging.INFO if args.verbose else logging.WARNING,
                        stream=sys.stderr, format="%(levelname)s %(message)s")
    try:
        cfg = load_config(args.config, _overrides(args))
        if args.command == "validate":
            sys.stdout.write(pipeline.validate(cfg))
            return EXIT_OK
        stage = {
            "gender": pipeline.gender_stage,
            "normalize": pipeline.normalize_stage,
            "trends": pipeline.trends_stage,
            "distribution": pipeline.distribution_stage,
            "synth": pipeline.synth_stage,
            "report": pipeline.report_stage,
        }[args.command]
        for path in stage(cfg):
            sys.stdout.write(f"wrote {path}\n")
        return EXIT_OK
    except (CorpusError, ConfigError, ValueError) as exc:
        print(f"gendercite {args.command}: {exc}", file=sys.stderr)
        return EXIT_DATA
    except OSError as exc:
        print(f"gendercite {args.command}: {exc}", file=sys.stderr)
        return EXIT_IO


def main() -> None:
    sys.exit(run())


if __name__ == "__main__":
    main()
