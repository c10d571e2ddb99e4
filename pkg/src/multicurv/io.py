"""The canonical graph file format: versioned JSON, lossless round-trips.

Layout::

    {
      "format": "multiplex-graph",
      "version": 1,
      "n": 7,
      "layers": [
        {"vertex_weights": [1.0, ...], "edges": [[0, 1, 2.5], ...]},
        ...
      ],
      "inter_edges": [[1, 1, 2, 4.0], ...],   // optional: vertex, layerA, layerB, weight
      "labels": {"0": "alice", ...}           // optional display names
    }

Layers are 1-based in ``inter_edges``, vertices 0-based everywhere. A file
*without* ``inter_edges`` describes a layer stack whose inter-layer weights
are derived on load (:func:`multicurv.graph.compile_layers`); a file *with*
the key (even empty) pins them explicitly. Serializing a compile graph
omits the key, so derived weights are never stored stale.
"""

from __future__ import annotations

import json
from pathlib import Path
from typing import NamedTuple

from .errors import GraphFileSyntaxError, IndexOutOfRange, ValidationError
from .graph import CompileGraph, DoublyWeightedGraph, MultiplexGraph, compile_layers

__all__ = [
    "GraphDocument",
    "parse_graph_text",
    "parse_graph_file",
    "serialize_graph",
    "write_graph_file",
]

_FORMAT = "multiplex-graph"
_VERSION = 1


class GraphDocument(NamedTuple):
    """A parsed graph plus its optional vertex display names."""

    graph: MultiplexGraph
    labels: dict[int, str] | None


def _expect(condition: bool, message: str) -> None:
    if not condition:
        raise ValidationError(message)


def _parse_layer(index: int, raw: object, n: int) -> DoublyWeightedGraph:
    _expect(isinstance(raw, dict), f"layer {index}: expected an object")
    _expect(
        isinstance(raw.get("vertex_weights"), list),
        f"layer {index}: missing 'vertex_weights' array",
    )
    _expect(isinstance(raw.get("edges"), list), f"layer {index}: missing 'edges' array")
    edges = []
    weights = []
    for pos, row in enumerate(raw["edges"]):
        _expect(
            isinstance(row, list) and len(row) == 3,
            f"layer {index}: edge #{pos} must be [u, v, weight]",
        )
        u, v, w = row
        _expect(
            isinstance(u, int) and isinstance(v, int),
            f"layer {index}: edge #{pos} endpoints must be integers",
        )
        edges.append((u, v))
        weights.append(w)
    try:
        return DoublyWeightedGraph(n, edges, raw["vertex_weights"], weights)
    except ValidationError as exc:
        raise type(exc)(f"layer {index}: {exc}") from None


def parse_graph_text(text: str) -> GraphDocument:
    """Parse a document; syntax errors carry line and column."""
    try:
        data = json.loads(text)
    except json.JSONDecodeError as exc:
        raise GraphFileSyntaxError(exc.msg, exc.lineno, exc.colno) from None
    _expect(isinstance(data, dict), "top level must be an object")
    _expect(
        data.get("format") == _FORMAT,
        f"'format' must be {_FORMAT!r}, got {data.get('format')!r}",
    )
    _expect(data.get("version") == _VERSION, f"unsupported version {data.get('version')!r}")
    n = data.get("n")
    _expect(isinstance(n, int) and n >= 0, "'n' must be a non-negative integer")
    raw_layers = data.get("layers")
    _expect(isinstance(raw_layers, list) and raw_layers, "'layers' must be a non-empty array")
    layers = [_parse_layer(i, raw, n) for i, raw in enumerate(raw_layers, start=1)]

    if "inter_edges" in data:
        raw_inter = data["inter_edges"]
        _expect(isinstance(raw_inter, list), "'inter_edges' must be an array")
        rows = []
        for pos, row in enumerate(raw_inter):
            _expect(
                isinstance(row, list) and len(row) == 4,
                f"inter_edges #{pos} must be [vertex, layerA, layerB, weight]",
            )
            rows.append(tuple(row))
        graph: MultiplexGraph = MultiplexGraph(layers, rows)
    else:
        graph = compile_layers(layers)

    labels = None
    if "labels" in data:
        raw_labels = data["labels"]
        _expect(isinstance(raw_labels, dict), "'labels' must be an object")
        labels = {}
        for key, value in raw_labels.items():
            try:
                vertex = int(key)
            except ValueError:
                raise ValidationError(f"label key {key!r} is not a vertex id") from None
            if not (0 <= vertex < n):
                raise IndexOutOfRange(f"label key {vertex} outside 0..{n - 1}")
            _expect(isinstance(value, str), f"label for vertex {vertex} must be a string")
            labels[vertex] = value
    return GraphDocument(graph, labels)


def parse_graph_file(path: str | Path) -> GraphDocument:
    return parse_graph_text(Path(path).read_text())


def serialize_graph(
    graph: MultiplexGraph | DoublyWeightedGraph | GraphDocument,
    labels: dict[int, str] | None = None,
) -> str:
    """Canonical text for a graph; ``parse(serialize(x)) == x``.

    Single-layer graphs are wrapped as one layer. Compile graphs omit
    ``inter_edges`` (re-derived on load); other multiplex graphs pin theirs
    explicitly.
    """
    if isinstance(graph, GraphDocument):
        graph, labels = graph.graph, graph.labels if labels is None else labels
    if isinstance(graph, DoublyWeightedGraph):
        graph = compile_layers([graph])
    doc: dict[str, object] = {
        "format": _FORMAT,
        "version": _VERSION,
        "n": graph.n,
        "layers": [
            {
                "vertex_weights": list(layer.vertex_weights),
                "edges": [[u, v, layer.edge_weight(u, v)] for u, v in layer.edges],
            }
            for layer in graph.layers
        ],
    }
    if not isinstance(graph, CompileGraph):
        doc["inter_edges"] = [list(row) for row in graph.iter_inter_edges()]
    if labels is not None:
        doc["labels"] = {str(k): labels[k] for k in sorted(labels)}
    return json.dumps(doc, indent=2) + "\n"


def write_graph_file(
    path: str | Path,
    graph: MultiplexGraph | DoublyWeightedGraph | GraphDocument,
    labels: dict[int, str] | None = None,
) -> None:
    Path(path).write_text(serialize_graph(graph, labels))
