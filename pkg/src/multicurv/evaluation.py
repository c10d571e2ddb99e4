"""Per-vertex cross-layer scoring and the weakness-identification cascade.

A vertex's *comprehensive evaluation* sums the curvature of its inter-layer
edges over all layer pairs. The reference point is the same sum evaluated
on a hypothetical configuration in which the vertex is attached equally
strongly in every layer; the gap between the two measures how unevenly the
vertex's embedding is spread across layers. The identification cascade then
drills down: most uneven vertex, then its dominant layer by intra-layer
curvature mass, then the single most positive edge there.

The uniform baseline is computed by direct evaluation of the equal-
attachment configuration, which carries a factor (number of layers minus
two) on every pair term. A flat pair-sum variant without that factor is
also reported (``ce_uniform_printed``) because it circulates as a closed
form; the two disagree for L != 3 and the direct evaluation is the one
consistent with the curvature definition (for L = 2 it is exactly 0).
"""

from __future__ import annotations

import math
from typing import NamedTuple

from .curvature import _inter_curvature_core, _resolve_inter_edge, forman_multiplex
from .errors import DegenerateGraph, NotACompileGraph
from .graph import CompileGraph

__all__ = [
    "EvaluationRow",
    "EvaluationReport",
    "LayerSums",
    "Step1Row",
    "Step2Row",
    "Step3Row",
    "WeaknessFinding",
    "comprehensive_evaluation",
    "ce_uniform",
    "ce_uniform_printed",
    "ce_lower_bound",
    "difference_scores",
    "intra_curvature_sums_by_layer",
    "identify_weakness",
]

# Differences whose spread is below this (relative) threshold are treated
# as all-tied, marking the finding low-confidence.
_TIE_RTOL = 1e-12


def _require_compile(g) -> CompileGraph:
    if not isinstance(g, CompileGraph):
        raise NotACompileGraph("evaluation is defined on compile graphs")
    return g


def comprehensive_evaluation(cg: CompileGraph, vertex: int) -> float:
    """Sum of inter-layer curvature over all layer pairs at ``vertex``.

    Pairs omitted because a copy is isolated in its layer contribute 0;
    they are surfaced through ``degenerate_layers`` on the report rows.
    """
    cg = _require_compile(cg)
    values = []
    for i in range(1, cg.num_layers + 1):
        for j in range(i + 1, cg.num_layers + 1):
            if cg.has_inter_edge(vertex, i, j):
                e = _resolve_inter_edge(cg, vertex, i, j)
                values.append(
                    _inter_curvature_core(
                        e.m_low, e.m_high, e.w_low, e.w_high, (w for _, w in e.others)
                    )
                )
    return math.fsum(values)


def ce_uniform(cg: CompileGraph, vertex: int) -> float:
    """The same sum on the hypothetical equal-attachment configuration.

    All layer copies participate (the hypothetical configuration has no
    isolated copies) and vertex weights are held fixed. Equals
    ``-(L-2) * sum over pairs of (m_i + m_j)``.
    """
    cg = _require_compile(cg)
    L = cg.num_layers
    m = [cg.vertex_weight(vertex, layer) for layer in range(1, L + 1)]
    ones = (1.0,) * (L - 2)
    values = [
        _inter_curvature_core(m[i], m[j], 1.0, 1.0, ones)
        for i in range(L)
        for j in range(i + 1, L)
    ]
    return math.fsum(values)


def ce_uniform_printed(cg: CompileGraph, vertex: int) -> float:
    """The flat pair-sum variant of the uniform baseline (no L-2 factor)."""
    cg = _require_compile(cg)
    L = cg.num_layers
    m = [cg.vertex_weight(vertex, layer) for layer in range(1, L + 1)]
    return -math.fsum(m[i] + m[j] for i in range(L) for j in range(i + 1, L))


def ce_lower_bound(cg: CompileGraph, vertex: int) -> float:
    """A computable floor for :func:`comprehensive_evaluation`.

    Pools the per-edge lower envelope: each present pair (i, j) is bounded
    below by ``-(m_i + m_j) * |third-party layers| * (w_lo / w_min)`` where
    ``w_lo`` is the pair's smaller attachment and ``w_min`` the smallest
    attachment among the vertex's non-isolated copies. (A variant of this
    floor that counts only the layers below ``w_lo`` is not valid; the
    layers between the two endpoint attachments contribute too.)
    """
    cg = _require_compile(cg)
    profile = cg.attachment_profile(vertex)
    active = [layer for layer in range(1, cg.num_layers + 1) if profile[layer - 1] > 0.0]
    if len(active) < 2:
        return 0.0
    w_min = min(profile[layer - 1] for layer in active)
    gamma = len(active) - 2
    terms = []
    for a in range(len(active)):
        for b in range(a + 1, len(active)):
            i, j = active[a], active[b]
            m_i = cg.vertex_weight(vertex, i)
            m_j = cg.vertex_weight(vertex, j)
            w_lo = min(profile[i - 1], profile[j - 1])
            terms.append((m_i + m_j) * gamma * (w_lo / w_min))
    total = math.fsum(terms)
    return -total if total else 0.0


class EvaluationRow(NamedTuple):
    vertex: int
    ce: float
    ce_uniform: float
    ce_uniform_printed: float
    difference: float  # ce - ce_uniform
    degenerate_layers: tuple[int, ...]


class EvaluationReport:
    """One :class:`EvaluationRow` per vertex, in vertex order."""

    __slots__ = ("rows",)

    def __init__(self, rows):
        self.rows = tuple(rows)

    def __iter__(self):
        return iter(self.rows)

    def __len__(self):
        return len(self.rows)

    @property
    def differences(self) -> tuple[float, ...]:
        return tuple(r.difference for r in self.rows)

    @property
    def spread(self) -> float:
        """max - min of the difference column (0 for an empty report)."""
        diffs = self.differences
        return max(diffs) - min(diffs) if diffs else 0.0

    def __repr__(self):
        return f"EvaluationReport(vertices={len(self.rows)})"


def difference_scores(cg: CompileGraph) -> EvaluationReport:
    cg = _require_compile(cg)
    rows = []
    for x in range(cg.n):
        ce = comprehensive_evaluation(cg, x)
        uni = ce_uniform(cg, x)
        rows.append(
            EvaluationRow(
                x,
                ce,
                uni,
                ce_uniform_printed(cg, x),
                ce - uni,
                cg.degenerate_layers_of(x),
            )
        )
    return EvaluationReport(rows)


class LayerSums(NamedTuple):
    """Per-layer intra-curvature sums at one vertex.

    ``sums[layer]`` is present for every layer; layers where the vertex has
    no intra-layer edges hold 0.0 and appear in ``empty_layers``.
    """

    sums: dict[int, float]
    empty_layers: frozenset[int]


def intra_curvature_sums_by_layer(cg: CompileGraph, vertex: int) -> LayerSums:
    """Sum of multiplex curvature over the vertex's intra edges, per layer.

    Multiplex curvature (with inter-layer correction terms), not the
    layer-local value: the layer comparison should see the same quantity
    the rest of the cascade uses.
    """
    cg = _require_compile(cg)
    sums: dict[int, float] = {}
    empty = []
    for layer in range(1, cg.num_layers + 1):
        neighbors = cg.intra_neighbors(vertex, layer)
        if not neighbors:
            sums[layer] = 0.0
            empty.append(layer)
            continue
        sums[layer] = math.fsum(
            forman_multiplex(cg, (vertex, layer), (y, layer)) for y in neighbors
        )
    return LayerSums(sums, frozenset(empty))


class Step1Row(NamedTuple):
    vertex: int
    difference: float


class Step2Row(NamedTuple):
    layer: int
    total: float
    has_intra: bool


class Step3Row(NamedTuple):
    neighbor: int
    value: float


class WeaknessFinding(NamedTuple):
    """Result of the cascade plus the full trace of each stage."""

    vertex: int
    layer: int
    edge: tuple[int, int]
    low_confidence: bool
    step1: tuple[Step1Row, ...]  # difference ranking, best first
    step2: tuple[Step2Row, ...]  # all layers of the chosen vertex
    step3: tuple[Step3Row, ...]  # intra edges in the chosen layer


def identify_weakness(cg: CompileGraph) -> WeaknessFinding:
    """Vertex, layer, and edge where cross-layer importance is most uneven.

    Expects already-normalized layers; weight normalization is a separate,
    earlier pipeline stage. Every argmax breaks ties toward the smallest
    index, so the result is a pure function of the graph. When the
    difference column is flat (spread below 1e-12 relative) the finding is
    still produced but flagged ``low_confidence``.
    """
    cg = _require_compile(cg)
    if cg.num_layers < 2:
        raise DegenerateGraph("weakness identification needs at least two layers")
    report = difference_scores(cg)
    if not report.rows:
        raise DegenerateGraph("graph has no vertices")
    ranking = sorted(report.rows, key=lambda r: (-r.difference, r.vertex))
    step1 = tuple(Step1Row(r.vertex, r.difference) for r in ranking)
    x0 = ranking[0].vertex

    diffs = report.differences
    d_max, d_min = max(diffs), min(diffs)
    low_confidence = (d_max - d_min) <= _TIE_RTOL * max(1.0, abs(d_max), abs(d_min))

    layer_sums = intra_curvature_sums_by_layer(cg, x0)
    step2 = tuple(
        Step2Row(layer, layer_sums.sums[layer], layer not in layer_sums.empty_layers)
        for layer in range(1, cg.num_layers + 1)
    )
    candidates = [row for row in step2 if row.has_intra]
    if not candidates:
        raise DegenerateGraph(f"vertex {x0} has no intra-layer edges in any layer")
    layer0 = min(candidates, key=lambda row: (-row.total, row.layer)).layer

    step3 = tuple(
        Step3Row(y, forman_multiplex(cg, (x0, layer0), (y, layer0)))
        for y in cg.intra_neighbors(x0, layer0)
    )
    y0 = min(step3, key=lambda row: (-row.value, row.neighbor)).neighbor
    return WeaknessFinding(x0, layer0, (x0, y0), low_confidence, step1, step2, step3)
