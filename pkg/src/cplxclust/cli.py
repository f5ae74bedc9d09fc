"""Command-line interface.

Subcommands mirror the analysis stages so each can be run standalone:

    cplxclust distance  ...   pairwise Hellinger distance matrix
    cplxclust score     ...   matrix plus complexity scores
    cplxclust cluster   ...   scores plus dendrogram and k-cut
    cplxclust analyze   ...   everything, plus the combined report

Exit codes: 0 success, 2 usage, 3 schema or value problems in the
input, 4 numerical failure, 5 I/O failure.
"""

import argparse
import logging
import sys

from ._version import __version__
from .errors import DataError, DomainError, NumericalError, SchemaError, UsageError
from .hellinger import build_matrix
from .pipeline import RunConfig, run_pipeline
from .report import emit_dendrogram, emit_score_table

EXIT_OK = 0
EXIT_USAGE = 2
EXIT_DATA = 3
EXIT_NUMERIC = 4
EXIT_IO = 5


def _csv_list(text: str) -> tuple[str, ...]:
    return tuple(part.strip() for part in text.split(",") if part.strip())


def _add_common(sub: argparse.ArgumentParser) -> None:
    sub.add_argument("--input", required=True, help="input CSV file")
    sub.add_argument(
        "--mode",
        choices=("raw", "aggregated"),
        default="aggregated",
        help="raw per-item rows or pre-aggregated per-type counts",
    )
    sub.add_argument("--type-col", default="type_id", help="type id column (aggregated mode)")
    sub.add_argument(
        "--attrs",
        type=_csv_list,
        default=(),
        metavar="COL1,COL2,...",
        help="attribute columns; raw mode groups records by these",
    )
    sub.add_argument("--result-col", default="result", help="result column (raw mode)")
    sub.add_argument("--inspected-col", default="inspected")
    sub.add_argument("--repaired-col", default="repaired")
    sub.add_argument(
        "--total-col",
        default=None,
        help="production total column; defaults to 'total' when present",
    )
    sub.add_argument("--top", type=int, default=None, help="keep only the top N types by total")
    sub.add_argument(
        "--grand-total",
        type=int,
        default=None,
        help="population grand total for business fractions, when the "
        "input is already a truncation of a larger dataset",
    )
    sub.add_argument("--k", type=int, default=None, help="number of clusters to cut")
    sub.add_argument("--out", default=None, help="output directory for artifacts")
    sub.add_argument(
        "--emit",
        type=_csv_list,
        default=("csv", "json"),
        metavar="FMT1,FMT2,...",
        help="artifact formats: csv,json,newick,ascii,svg",
    )
    sub.add_argument("--run-id", default="", help="identifier recorded in provenance")
    sub.add_argument("-v", "--verbose", action="store_true")


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="cplxclust",
        description="Score and cluster product-type complexity from "
        "pass/fail inspection counts.",
    )
    parser.add_argument("--version", action="version", version=f"%(prog)s {__version__}")
    subs = parser.add_subparsers(dest="command", required=True)
    for name, doc in (
        ("analyze", "run the full pipeline and write all artifacts"),
        ("distance", "stop after the distance matrix"),
        ("score", "stop after complexity scoring"),
        ("cluster", "stop after clustering"),
    ):
        _add_common(subs.add_parser(name, help=doc))
    return parser


def _config_from_args(args: argparse.Namespace) -> RunConfig:
    return RunConfig(
        input_path=args.input,
        mode=args.mode,
        type_column=args.type_col,
        attribute_columns=tuple(args.attrs),
        result_column=args.result_col,
        inspected_column=args.inspected_col,
        repaired_column=args.repaired_col,
        total_column=args.total_col,
        top=args.top,
        k=args.k,
        out_dir=args.out,
        emit=tuple(args.emit),
        grand_total=args.grand_total,
        run_id=args.run_id,
        stage=args.command,
    )


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    logging.basicConfig(
        level=logging.INFO if args.verbose else logging.WARNING,
        format="%(levelname)s: %(message)s",
        stream=sys.stderr,
    )
    try:
        config = _config_from_args(args)
        report = run_pipeline(config)
    except UsageError as exc:
        print(f"cplxclust: usage error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    except (SchemaError, DataError) as exc:
        print(f"cplxclust: input error: {exc}", file=sys.stderr)
        return EXIT_DATA
    except (DomainError, NumericalError) as exc:
        print(f"cplxclust: numerical error: {exc}", file=sys.stderr)
        return EXIT_NUMERIC
    except OSError as exc:
        print(f"cplxclust: i/o error: {exc}", file=sys.stderr)
        return EXIT_IO

    if config.out_dir is None:
        # No output directory: print the stage's principal artifact.
        if config.stage in ("cluster", "analyze"):
            sys.stdout.write(emit_dendrogram(report, "ascii"))
        elif config.stage == "distance":
            matrix = build_matrix([(s.type_id, s.posterior) for s in report.scored])
            sys.stdout.write(matrix.to_csv())
        else:
            sys.stdout.write(emit_score_table(report, "csv"))
    print(
        f"analyzed {len(report.scored)} type(s)"
        + (f", wrote artifacts to {config.out_dir}" if config.out_dir else ""),
        file=sys.stderr,
    )
    return EXIT_OK


if __name__ == "__main__":
    sys.exit(main())
