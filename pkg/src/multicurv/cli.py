"""Command-line interface.

Every subcommand takes ``--out DIR`` and writes fixed-name artifacts there;
outputs are byte-identical for identical (input, flags, seed) triples: rows
are canonically ordered, floats use shortest round-trip formatting, and no
timestamps or environment details are embedded. Failures print one line,
``error[Category]: message``, to stderr and exit 1.

Graphs come from exactly one of ``--input FILE`` (the JSON format of
:mod:`multicurv.io`) or repeated ``--generate SPEC`` flags, one per layer
(``kind`` or ``kind:key=value,...``; see
:func:`multicurv.generators.parse_generator_spec`). Weight normalization
runs per layer before inter-layer weights are derived; commands that score
cross-layer structure default to bounded scaling onto [1, 10], the others
default to none. Files carrying explicit inter-layer weights cannot be
normalized (the derived weights would go stale), only loaded as-is.
"""

from __future__ import annotations

import argparse
import csv
import json
import sys
from dataclasses import replace
from pathlib import Path

import numpy as np

from .curvature import curvature_report
from .errors import InvalidConfig, MulticurvError, NoEdges
from .evaluation import ce_lower_bound, difference_scores, identify_weakness
from .features import extract_features
from .generators import generate, parse_generator_spec
from .graph import CompileGraph, MultiplexGraph, compile_layers
from .io import parse_graph_file, write_graph_file
from .normalization import NormalizationScheme, normalize_layers
from .sensitivity import sensitivity_map

__all__ = ["main", "build_parser"]


def _parse_range(text: str, flag: str) -> tuple[float, float]:
    lo, sep, hi = text.partition(":")
    if not sep:
        raise InvalidConfig(f"{flag} expects lo:hi, got {text!r}")
    try:
        return float(lo), float(hi)
    except ValueError:
        raise InvalidConfig(f"{flag} expects numeric lo:hi, got {text!r}") from None


def _add_input_args(p: argparse.ArgumentParser, default_normalize: str) -> None:
    p.add_argument("--input", metavar="PATH", help="graph file to load")
    p.add_argument(
        "--generate",
        action="append",
        metavar="SPEC",
        help="generator spec, once per layer (e.g. er:n=25,p=0.2)",
    )
    p.add_argument("--seed", type=int, help="master seed for --generate")
    p.add_argument(
        "--normalize",
        choices=("none", "mean", "bounded"),
        default=default_normalize,
        help=f"per-layer edge-weight normalization (default: {default_normalize})",
    )
    p.add_argument(
        "--range",
        dest="bounded_range",
        default="1:10",
        metavar="LO:HI",
        help="target interval for --normalize bounded (default 1:10)",
    )
    p.add_argument(
        "--vertex-weights",
        default="0.01:1",
        metavar="LO:HI",
        help="vertex-weight range for generated layers (default 0.01:1)",
    )
    p.add_argument(
        "--edge-weights",
        default="1:10",
        metavar="LO:HI",
        help="edge-weight range for generated layers (default 1:10)",
    )


def _add_output_args(p: argparse.ArgumentParser, formats: bool = True) -> None:
    p.add_argument("--out", required=True, metavar="DIR", help="output directory")
    if formats:
        p.add_argument("--format", choices=("csv", "json"), default="csv")


def _scheme(args) -> NormalizationScheme | None:
    if args.normalize == "none":
        return None
    return NormalizationScheme(
        args.normalize, _parse_range(args.bounded_range, "--range")
    )


def _generated_layers(args) -> list:
    specs = [parse_generator_spec(s) for s in args.generate]
    vw = _parse_range(args.vertex_weights, "--vertex-weights")
    ew = _parse_range(args.edge_weights, "--edge-weights")
    specs = [replace(s, vertex_weight_range=vw, edge_weight_range=ew) for s in specs]
    if args.seed is not None:
        children = np.random.SeedSequence(args.seed).spawn(len(specs))
        return [generate(s, np.random.default_rng(c)) for s, c in zip(specs, children)]
    return [generate(s) for s in specs]


def _resolve_graph(args) -> MultiplexGraph:
    if bool(args.input) == bool(args.generate):
        raise InvalidConfig("exactly one of --input or --generate is required")
    scheme = _scheme(args)
    if args.input:
        g = parse_graph_file(args.input).graph
        if scheme is None:
            return g
        if not isinstance(g, CompileGraph):
            raise InvalidConfig(
                "cannot normalize a file with explicit inter-layer weights; "
                "store the layer stack without inter_edges or pass --normalize none"
            )
        return compile_layers(normalize_layers(g.layers, scheme))
    layers = _generated_layers(args)
    if scheme is not None:
        layers = normalize_layers(layers, scheme)
    return compile_layers(layers)


def _write_csv(path: Path, header: list[str], rows) -> None:
    with open(path, "w", newline="") as f:
        writer = csv.writer(f, lineterminator="\n")
        writer.writerow(header)
        writer.writerows(rows)


def _write_json(path: Path, payload) -> None:
    path.write_text(json.dumps(payload, indent=2) + "\n")


def _cmd_curvature(args, out: Path) -> None:
    report = curvature_report(_resolve_graph(args))
    if args.format == "csv":
        _write_csv(
            out / "curvature.csv",
            ["kind", "vertex_a", "layer_a", "vertex_b", "layer_b", "weight", "curvature"],
            [
                [e.kind, e.a.vertex, e.a.layer, e.b.vertex, e.b.layer, e.weight, e.value]
                for e in report
            ],
        )
    else:
        _write_json(
            out / "curvature.json",
            {
                "entries": [
                    {
                        "kind": e.kind,
                        "a": {"vertex": e.a.vertex, "layer": e.a.layer},
                        "b": {"vertex": e.b.vertex, "layer": e.b.layer},
                        "weight": e.weight,
                        "curvature": e.value,
                    }
                    for e in report
                ],
                "summary": {
                    "edges": len(report),
                    "min": report.minimum,
                    "max": report.maximum,
                    "mean": report.mean,
                },
            },
        )


def _cmd_sensitivity(args, out: Path) -> None:
    g = _resolve_graph(args)
    if g.num_layers != 1:
        raise InvalidConfig("sensitivity is defined on single-layer graphs")
    records = sensitivity_map(g.layer_subgraph(1))
    if args.format == "csv":
        _write_csv(
            out / "sensitivity.csv",
            ["vertex_a", "vertex_b", "parameter", "partial", "dimensionless"],
            [
                [
                    r.edge[0],
                    r.edge[1],
                    r.parameter_label,
                    r.partial,
                    "" if r.dimensionless is None else r.dimensionless,
                ]
                for r in records
            ],
        )
    else:
        _write_json(
            out / "sensitivity.json",
            [
                {
                    "edge": list(r.edge),
                    "parameter": r.parameter_label,
                    "partial": r.partial,
                    "dimensionless": r.dimensionless,
                }
                for r in records
            ],
        )


def _evaluation_payload(g: CompileGraph):
    report = difference_scores(g)
    for row in report:
        yield row, ce_lower_bound(g, row.vertex)


def _cmd_evaluate(args, out: Path) -> None:
    g = _resolve_graph(args)
    if args.format == "csv":
        _write_csv(
            out / "evaluation.csv",
            [
                "vertex",
                "ce",
                "ce_uniform",
                "ce_uniform_printed",
                "difference",
                "ce_lower_bound",
                "degenerate_layers",
            ],
            [
                [
                    row.vertex,
                    row.ce,
                    row.ce_uniform,
                    row.ce_uniform_printed,
                    row.difference,
                    bound,
                    ";".join(str(layer) for layer in row.degenerate_layers),
                ]
                for row, bound in _evaluation_payload(g)
            ],
        )
    else:
        _write_json(
            out / "evaluation.json",
            [
                {
                    "vertex": row.vertex,
                    "ce": row.ce,
                    "ce_uniform": row.ce_uniform,
                    "ce_uniform_printed": row.ce_uniform_printed,
                    "difference": row.difference,
                    "ce_lower_bound": bound,
                    "degenerate_layers": list(row.degenerate_layers),
                }
                for row, bound in _evaluation_payload(g)
            ],
        )


def _cmd_identify(args, out: Path) -> None:
    finding = identify_weakness(_resolve_graph(args))
    if args.format == "csv":
        _write_csv(
            out / "weakness_summary.csv",
            ["vertex", "layer", "edge_u", "edge_v", "low_confidence"],
            [
                [
                    finding.vertex,
                    finding.layer,
                    finding.edge[0],
                    finding.edge[1],
                    str(finding.low_confidence).lower(),
                ]
            ],
        )
        _write_csv(
            out / "weakness_step1.csv",
            ["vertex", "difference"],
            [[r.vertex, r.difference] for r in finding.step1],
        )
        _write_csv(
            out / "weakness_step2.csv",
            ["layer", "intra_curvature_sum", "has_intra"],
            [[r.layer, r.total, str(r.has_intra).lower()] for r in finding.step2],
        )
        _write_csv(
            out / "weakness_step3.csv",
            ["vertex_a", "vertex_b", "curvature"],
            [[finding.vertex, r.neighbor, r.value] for r in finding.step3],
        )
    else:
        _write_json(
            out / "weakness.json",
            {
                "vertex": finding.vertex,
                "layer": finding.layer,
                "edge": list(finding.edge),
                "low_confidence": finding.low_confidence,
                "step1": [{"vertex": r.vertex, "difference": r.difference} for r in finding.step1],
                "step2": [
                    {"layer": r.layer, "intra_curvature_sum": r.total, "has_intra": r.has_intra}
                    for r in finding.step2
                ],
                "step3": [
                    {"edge": [finding.vertex, r.neighbor], "curvature": r.value}
                    for r in finding.step3
                ],
            },
        )


def _cmd_generate(args, out: Path) -> None:
    if not args.generate:
        raise InvalidConfig("generate needs at least one --generate spec")
    args.input = None
    write_graph_file(out / "graph.json", _resolve_graph(args))


def _cmd_features(args, out: Path) -> None:
    if args.seed is None:
        raise InvalidConfig("features needs --seed")
    if args.dataset == "bridge":
        from .generators import synthesize_classification_dataset as build
    else:
        from .generators import synthesize_weight_noise_dataset as build
    samples = build(args.count, args.seed)
    matrix = extract_features(samples, iterations=args.iterations)
    (out / "features.csv").write_text(matrix.to_csv_text())


def _cmd_hist(args, out: Path) -> None:
    report = curvature_report(_resolve_graph(args))
    values = report.values
    if not values:
        raise NoEdges("graph has no edges to histogram")
    counts, edges = np.histogram(np.asarray(values), bins=args.bins)
    rows = [
        [float(edges[i]), float(edges[i + 1]), int(counts[i])] for i in range(len(counts))
    ]
    if args.format == "csv":
        _write_csv(out / "hist.csv", ["bin_left", "bin_right", "count"], rows)
    else:
        _write_json(
            out / "hist.json",
            [{"bin_left": lo, "bin_right": hi, "count": c} for lo, hi, c in rows],
        )


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="multicurv",
        description="Curvature analytics for doubly-weighted monolayer and multiplex graphs.",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    spec = [
        ("curvature", _cmd_curvature, "none", "per-edge curvature report"),
        ("sensitivity", _cmd_sensitivity, "none", "weight-sensitivity table (single layer)"),
        ("evaluate", _cmd_evaluate, "bounded", "per-vertex cross-layer scores"),
        ("identify", _cmd_identify, "bounded", "weakness-identification cascade"),
        ("generate", _cmd_generate, "none", "write a generated graph file"),
        ("hist", _cmd_hist, "none", "curvature histogram bins"),
    ]
    for name, func, default_norm, help_text in spec:
        p = sub.add_parser(name, help=help_text)
        _add_input_args(p, default_norm)
        _add_output_args(p, formats=name != "generate")
        if name == "hist":
            p.add_argument("--bins", type=int, default=50)
        p.set_defaults(func=func)

    p = sub.add_parser("features", help="synthesize a labeled dataset and emit feature CSV")
    p.add_argument("--dataset", choices=("bridge", "weight-noise"), default="bridge")
    p.add_argument("--count", type=int, default=300, help="number of samples (even)")
    p.add_argument("--seed", type=int)
    p.add_argument("--iterations", type=int, default=3, help="WL refinement rounds")
    _add_output_args(p, formats=False)
    p.set_defaults(func=_cmd_features)

    return parser


def main(argv: list[str] | None = None) -> int:
    args = build_parser().parse_args(argv)
    try:
        out = Path(args.out)
        out.mkdir(parents=True, exist_ok=True)
        args.func(args, out)
    except MulticurvError as exc:
        print(f"error[{exc.category}]: {exc}", file=sys.stderr)
        return 1
    except OSError as exc:
        print(f"error[IO]: {exc}", file=sys.stderr)
        return 1
    return 0


if __name__ == "__main__":
    sys.exit(main())
