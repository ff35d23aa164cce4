"""Command line: run, validate, aggregate, synth and plot."""
import argparse
import sys
from pathlib import Path
from typing import Any, Callable

from src.config import PUBLISHED_F1_PATH
from src.errors import ConfigError, DataError

EXIT_OK = 0
EXIT_CONFIG = 1
EXIT_DATA = 2
EXIT_PARTIAL = 3


def _add_overrides(parser: argparse.ArgumentParser) -> None:
    parser.add_argument("--seed", type=int, help="master seed (overrides the config)")
    parser.add_argument("--workers", type=int, help="cells evaluated in parallel")
    parser.add_argument("--out-dir", type=Path, help="directory for report files")
    parser.add_argument("--folds", type=int, help="cross-validation folds")


def _overrides(args: argparse.Namespace) -> dict[str, Any]:
    return {"seed": args.seed, "workers": args.workers, "out_dir": args.out_dir, "folds": args.folds}


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="main.py",
        description="Classifier x variable-group experiments for bariatric surgery outcome prediction.",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    run = sub.add_parser("run", help="run the experiment matrix of a config and write reports")
    run.add_argument("config", type=Path)
    _add_overrides(run)

    validate = sub.add_parser("validate", help="check a config without running it")
    validate.add_argument("config", type=Path)
    _add_overrides(validate)

    aggregate = sub.add_parser("aggregate", help="per-group mean and SD of an f1 matrix file")
    aggregate.add_argument(
        "matrix", type=Path, nargs="?", default=None, help="f1 matrix CSV (default: the published table)"
    )
    aggregate.add_argument("-o", "--output", type=Path, help="write CSV here instead of stdout")

    synth = sub.add_parser("synth", help="write a seeded synthetic table and its schema")
    synth.add_argument("spec", type=Path)
    synth.add_argument("-o", "--output", type=Path, required=True)
    synth.add_argument("--seed", type=int)

    plot = sub.add_parser("plot", help="grouped bar chart of an f1 matrix file")
    plot.add_argument("matrix", type=Path)
    plot.add_argument("-o", "--output", type=Path, required=True)
    return parser


def cmd_run(args: argparse.Namespace) -> int:
    from src.harness.experiment import load_config
    from src.harness.reports import emit_reports
    from src.harness.runner import run_matrix

    cfg = load_config(args.config, _overrides(args))
    m = run_matrix(cfg)
    for path in emit_reports(m):
        print(f"[wrote {path}]", file=sys.stderr)
    if m.is_partial:
        print(f"[{len(m.failed())} cell(s) failed; see manifest.json]", file=sys.stderr)
        return EXIT_PARTIAL
    return EXIT_OK


def cmd_validate(args: argparse.Namespace) -> int:
    from src.harness.experiment import validate_config

    diagnostics = validate_config(args.config, _overrides(args))
    if diagnostics:
        for line in diagnostics:
            print(f"invalid: {line}", file=sys.stderr)
        return EXIT_CONFIG
    print(f"{args.config}: ok")
    return EXIT_OK


def cmd_aggregate(args: argparse.Namespace) -> int:
    from src.harness.reports import aggregate_matrix_file, stats_table

    matrix = args.matrix or PUBLISHED_F1_PATH
    text = stats_table(aggregate_matrix_file(matrix)).to_csv(index=False, lineterminator="\n")
    if args.output:
        args.output.parent.mkdir(parents=True, exist_ok=True)
        args.output.write_text(text, encoding="utf-8")
    else:
        sys.stdout.write(text)
    return EXIT_OK


def cmd_synth(args: argparse.Namespace) -> int:
    from src.data import generate_from_spec, write_schema
    from src.harness.experiment import load_synthetic_spec

    t = generate_from_spec(load_synthetic_spec(args.spec, args.seed))
    schema_path = args.output.with_suffix(".schema.json")
    t.to_csv(args.output)
    write_schema(list(t.schema), schema_path)
    print(f"[wrote {args.output} ({t.row_count} rows) and {schema_path}]", file=sys.stderr)
    return EXIT_OK


def cmd_plot(args: argparse.Namespace) -> int:
    from src.harness.reports import plot_matrix, read_matrix_csv

    path = plot_matrix(read_matrix_csv(args.matrix), args.output)
    print(f"[wrote {path}]", file=sys.stderr)
    return EXIT_OK


COMMANDS: dict[str, Callable[[argparse.Namespace], int]] = {
    "run": cmd_run,
    "validate": cmd_validate,
    "aggregate": cmd_aggregate,
    "synth": cmd_synth,
    "plot": cmd_plot,
}


def run_cli(argv: list[str] | None = None) -> int:
    """Parse argv, run the command, map errors to exit codes."""
    try:
        args = build_parser().parse_args(argv)
    except SystemExit as e:
        # argparse exits 2 on usage errors, which would read as a data error
        return EXIT_OK if e.code in (0, None) else EXIT_CONFIG
    try:
        return COMMANDS[args.command](args)
    except ConfigError as e:
        for line in e.diagnostics:
            print(f"config error: {line}", file=sys.stderr)
        return EXIT_CONFIG
    except DataError as e:
        print(f"data error: {e}", file=sys.stderr)
        return EXIT_DATA
    except OSError as e:
        print(f"I/O error: {e}", file=sys.stderr)
        return EXIT_DATA
