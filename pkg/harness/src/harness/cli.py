"""`harness run`: benchmark a feature CSV and write the result tables.

Two modes cover the two table layouts. `table1` compares curvature
statistics against traditional graph summaries (one repetition by default)
and adds the importance ranking of the combined model; `table3` compares
WL histograms against curvature statistics over twenty repetitions and adds
the pairwise signed-rank table. The Wilcoxon table also appears in `table1`
runs when the configuration yields at least ten splits.

Artifacts land under --out with fixed names: summary.md, summary.csv,
scores.csv, plus importance.csv (table1) and wilcoxon.csv (when computed).
Failures print ``error[Category]: message`` to stderr and exit 1.
"""

from __future__ import annotations

import argparse
import sys
from pathlib import Path

from .errors import HarnessError
from .experiment import ExperimentConfig, feature_importance, run_comparison
from .features_io import load_feature_table
from .render import (
    render_markdown,
    write_importance_csv,
    write_scores_csv,
    write_summary_csv,
    write_wilcoxon_csv,
)

MODE_SELECTORS = {
    "table1": (("ce",), ("trad",), ("ce", "trad")),
    "table3": (("wl",), ("ce",), ("wl", "ce")),
}
MODE_REPETITIONS = {"table1": 1, "table3": 20}


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="harness")
    sub = parser.add_subparsers(dest="command", required=True)
    run = sub.add_parser("run", help="cross-validate one feature CSV")
    run.add_argument("--features", required=True, help="feature CSV from multicurv")
    run.add_argument("--mode", required=True, choices=sorted(MODE_SELECTORS))
    run.add_argument("--seed", type=int, required=True)
    run.add_argument("--out", required=True, help="output directory")
    run.add_argument("--folds", type=int, default=5)
    run.add_argument(
        "--repetitions",
        type=int,
        default=None,
        help="CV repetitions (default: 1 for table1, 20 for table3)",
    )
    run.add_argument("--top-k", type=int, default=10, dest="top_k")
    run.set_defaults(func=_cmd_run)
    return parser


def _cmd_run(args: argparse.Namespace) -> None:
    repetitions = (
        MODE_REPETITIONS[args.mode] if args.repetitions is None else args.repetitions
    )
    config = ExperimentConfig(
        selectors=MODE_SELECTORS[args.mode],
        folds=args.folds,
        repetitions=repetitions,
        seed=args.seed,
        top_k=args.top_k,
    )
    table = load_feature_table(args.features)
    result = run_comparison(table, config)
    importance = None
    if args.mode == "table1":
        importance = feature_importance(table, config, ("ce", "trad"))

    out = Path(args.out)
    out.mkdir(parents=True, exist_ok=True)
    (out / "summary.md").write_text(render_markdown(result, importance))
    write_summary_csv(out / "summary.csv", result)
    write_scores_csv(out / "scores.csv", result)
    if result.wilcoxon:
        write_wilcoxon_csv(out / "wilcoxon.csv", result)
    if importance is not None:
        write_importance_csv(out / "importance.csv", importance)


def main(argv: list[str] | None = None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        args.func(args)
    except HarnessError as exc:
        print(f"error[{exc.category}]: {exc}", file=sys.stderr)
        return 1
    except OSError as exc:
        print(f"error[IO]: {exc}", file=sys.stderr)
        return 1
    return 0


if __name__ == "__main__":
    raise SystemExit(main())
