"""Edge curvature for doubly-weighted monolayer and multiplex graphs.

For an edge ``(a, b)`` with vertex weights ``m`` and edge weight ``w`` the
curvature is

    F = 2*(m(a) + m(b)) - sqrt(w) * (m(a)*S(a) + m(b)*S(b))

where ``S(v)`` sums ``1/sqrt(w(e))`` over *every* edge incident to ``v``,
including ``(a, b)`` itself. The inclusive sum is deliberate: it is the
convention under which the unit-weight case reduces to the classical
``4 - deg(a) - deg(b)``.

For inter-layer edges of a compile graph the same quantity collapses to a
closed form in the attachment strengths alone (:func:`forman_inter_compile`),
together with computable lower/upper envelopes
(:func:`inter_curvature_bounds`). The lower envelope here is *not* the
literal two-factor product form sometimes quoted for it; that form ignores
the layers strictly between the two endpoint attachments and can exceed the
true curvature. The envelope below keeps a unit term per such layer, which
restores validity and keeps the same equality condition (every third-party
layer at or below the smaller endpoint attachment).
"""

from __future__ import annotations

import math
from typing import Iterable, NamedTuple, Sequence

from .errors import EdgeNotFound, NotACompileGraph, NotAnInterEdge
from .graph import CompileGraph, DoublyWeightedGraph, MultiplexGraph, StateVertex

__all__ = [
    "EdgeCurvature",
    "CurvatureReport",
    "GammaPartition",
    "CurvatureBounds",
    "forman_monolayer",
    "forman_multiplex",
    "forman_inter_compile",
    "gamma_partition",
    "inter_curvature_bounds",
    "curvature_report",
]


def forman_monolayer(g: DoublyWeightedGraph, u: int, v: int) -> float:
    """Curvature of the edge ``(u, v)`` in a single-layer graph."""
    w = g.edge_weight(u, v)
    mu = g.vertex_weight(u)
    mv = g.vertex_weight(v)
    return 2.0 * (mu + mv) - math.sqrt(w) * (
        mu * g.incident_inv_sqrt_sum(u) + mv * g.incident_inv_sqrt_sum(v)
    )


def forman_multiplex(
    g: MultiplexGraph,
    a: StateVertex | tuple[int, int],
    b: StateVertex | tuple[int, int],
) -> float:
    """Curvature of any multiplex edge, intra- or inter-layer.

    The incident sums run over the full mixed neighborhood of each endpoint
    (intra-layer neighbors plus coupled layer copies), so on multi-layer
    graphs intra-layer values pick up inter-layer correction terms. On a
    single-layer graph this agrees with :func:`forman_monolayer` exactly.
    """
    a = StateVertex(*a)
    b = StateVertex(*b)
    w = g.edge_weight(a, b)
    ma = g.vertex_weight(a.vertex, a.layer)
    mb = g.vertex_weight(b.vertex, b.layer)
    return 2.0 * (ma + mb) - math.sqrt(w) * (
        ma * g.incident_inv_sqrt_sum(a.vertex, a.layer)
        + mb * g.incident_inv_sqrt_sum(b.vertex, b.layer)
    )


def _inter_curvature_core(
    m_low: float,
    m_high: float,
    w_low: float,
    w_high: float,
    other_attachments: Iterable[float],
) -> float:
    """Closed-form inter-layer curvature from attachment strengths.

    ``w_low <= w_high`` are the endpoint attachments (the edge weight is
    ``w_low**2``); ``other_attachments`` are the strictly positive
    attachments of the remaining coupled layers, in a deterministic order.
    """
    rho = w_low / w_high
    penalty = math.fsum(
        m_low * max(1.0, w_low / wk) + m_high * max(rho, w_low / wk)
        for wk in other_attachments
    )
    return m_high * (1.0 - rho) - penalty


def _require_compile(g: MultiplexGraph) -> CompileGraph:
    if not isinstance(g, CompileGraph):
        raise NotACompileGraph(
            "operation needs derived inter-layer weights; build the graph with compile_layers()"
        )
    return g


class _InterEdgeView(NamedTuple):
    """Resolved inter-layer edge with endpoints ordered by attachment."""

    vertex: int
    low_layer: int
    high_layer: int
    m_low: float
    m_high: float
    w_low: float
    w_high: float
    others: tuple[tuple[int, float], ...]  # (layer, attachment), positive only


def _resolve_inter_edge(cg: CompileGraph, vertex: int, layer_a: int, layer_b: int) -> _InterEdgeView:
    if layer_a == layer_b:
        raise NotAnInterEdge(
            f"layers must differ for an inter-layer edge, got {layer_a} twice"
        )
    cg._check_layer(layer_a)
    cg._check_layer(layer_b)
    if not cg.has_inter_edge(vertex, layer_a, layer_b):
        # Distinguish "outside the graph" from "omitted as degenerate".
        cg.layer_subgraph(layer_a)._check_vertex(vertex)
        raise EdgeNotFound(
            f"no inter-layer edge at vertex {vertex} between layers {layer_a} and {layer_b}"
            " (at least one endpoint is isolated in its layer)"
        )
    profile = cg.attachment_profile(vertex)
    wa, wb = profile[layer_a - 1], profile[layer_b - 1]
    if (wa, layer_a) <= (wb, layer_b):
        low, high = layer_a, layer_b
    else:
        low, high = layer_b, layer_a
    others = tuple(
        (k, profile[k - 1])
        for k in range(1, cg.num_layers + 1)
        if k != layer_a and k != layer_b and profile[k - 1] > 0.0
    )
    return _InterEdgeView(
        vertex,
        low,
        high,
        cg.vertex_weight(vertex, low),
        cg.vertex_weight(vertex, high),
        profile[low - 1],
        profile[high - 1],
        others,
    )


def forman_inter_compile(cg: CompileGraph, vertex: int, layer_a: int, layer_b: int) -> float:
    """Closed-form curvature of the inter-layer edge at ``vertex``.

    Equals :func:`forman_multiplex` on the same edge (the general formula
    collapses because every inter-layer weight is the squared minimum of two
    attachment strengths); the equivalence is pinned down to 1e-9 relative
    tolerance in the test suite.
    """
    e = _resolve_inter_edge(_require_compile(cg), vertex, layer_a, layer_b)
    return _inter_curvature_core(e.m_low, e.m_high, e.w_low, e.w_high, (w for _, w in e.others))


class GammaPartition(NamedTuple):
    """Third-party layers of an inter-layer edge, split by attachment.

    ``c_all`` holds every other layer coupled to the vertex; ``c_minus``
    those at or below the smaller endpoint attachment; ``c_plus`` those at
    or above the larger one. A layer tying both thresholds appears in both.
    Comparisons are exact; pre-quantize attachments for tolerant ties.
    """

    c_all: frozenset[int]
    c_minus: frozenset[int]
    c_plus: frozenset[int]


def gamma_partition(cg: CompileGraph, vertex: int, layer_a: int, layer_b: int) -> GammaPartition:
    e = _resolve_inter_edge(_require_compile(cg), vertex, layer_a, layer_b)
    return GammaPartition(
        frozenset(k for k, _ in e.others),
        frozenset(k for k, w in e.others if w <= e.w_low),
        frozenset(k for k, w in e.others if w >= e.w_high),
    )


class CurvatureBounds(NamedTuple):
    lower: float
    upper: float


def inter_curvature_bounds(
    cg: CompileGraph, vertex: int, layer_a: int, layer_b: int
) -> CurvatureBounds:
    """Envelopes ``lower <= F(e) <= upper`` for a derived inter-layer edge.

    With endpoint attachments ``w_low <= w_high``, ``rho = w_low/w_high``,
    and third-party layers split as in :func:`gamma_partition`:

    - ``upper = -|all|*m_low + m_high*(1 - (|all|+1)*rho)``, tight exactly
      when every third-party attachment is >= ``w_high``.
    - ``lower = m_high*(1-rho) - (m_low+m_high) * (sum of w_low/w_k over
      layers with w_k <= w_low, plus one unit per remaining layer)``, tight
      exactly when every third-party attachment is <= ``w_low``.

    Both collapse to ``F`` itself on 2-layer graphs. The sums below mirror
    the term structure of the curvature evaluation so the sandwich holds in
    plain 64-bit arithmetic, bitwise in the tight cases, with no tolerance.
    """
    e = _resolve_inter_edge(_require_compile(cg), vertex, layer_a, layer_b)
    rho = e.w_low / e.w_high
    low_penalty = []
    high_penalty = []
    for _, wk in e.others:
        r = e.w_low / wk
        if r >= 1.0:
            term = e.m_low * max(1.0, r) + e.m_high * max(rho, r)
            low_penalty.append(term)
        else:
            low_penalty.append(e.m_low + e.m_high)
        high_penalty.append(e.m_low + e.m_high * rho)
    base = e.m_high * (1.0 - rho)
    return CurvatureBounds(
        base - math.fsum(low_penalty), base - math.fsum(high_penalty)
    )


class EdgeCurvature(NamedTuple):
    """One report row: an edge, its weight, and its curvature.

    ``kind`` is ``"intra"`` or ``"inter"``. Inter-layer rows are oriented so
    ``a`` is the endpoint with the smaller attachment strength (ties broken
    by layer index), recording the normalization the closed form applies.
    """

    a: StateVertex
    b: StateVertex
    kind: str
    weight: float
    value: float


class CurvatureReport:
    """Curvature of every edge of a graph, with summary statistics."""

    __slots__ = ("entries",)

    def __init__(self, entries: Sequence[EdgeCurvature]):
        self.entries = tuple(entries)

    def __iter__(self):
        return iter(self.entries)

    def __len__(self) -> int:
        return len(self.entries)

    @property
    def values(self) -> tuple[float, ...]:
        return tuple(e.value for e in self.entries)

    @property
    def minimum(self) -> float | None:
        return min(self.values) if self.entries else None

    @property
    def maximum(self) -> float | None:
        return max(self.values) if self.entries else None

    @property
    def mean(self) -> float | None:
        if not self.entries:
            return None
        return math.fsum(self.values) / len(self.entries)

    def intra_entries(self) -> tuple[EdgeCurvature, ...]:
        return tuple(e for e in self.entries if e.kind == "intra")

    def inter_entries(self) -> tuple[EdgeCurvature, ...]:
        return tuple(e for e in self.entries if e.kind == "inter")

    def __repr__(self) -> str:
        return f"CurvatureReport(edges={len(self.entries)})"


def curvature_report(g: DoublyWeightedGraph | MultiplexGraph) -> CurvatureReport:
    """Curvature of every edge, intra-layer rows first, canonical order.

    Single-layer inputs are reported as layer 1. On compile graphs the
    inter-layer rows use the closed form; on explicitly-weighted multiplex
    graphs they fall back to the general formula.
    """
    if isinstance(g, DoublyWeightedGraph):
        entries = [
            EdgeCurvature(
                StateVertex(u, 1),
                StateVertex(v, 1),
                "intra",
                g.edge_weight(u, v),
                forman_monolayer(g, u, v),
            )
            for u, v in g.edges
        ]
        return CurvatureReport(entries)

    entries = [
        EdgeCurvature(
            StateVertex(u, layer),
            StateVertex(v, layer),
            "intra",
            w,
            forman_multiplex(g, (u, layer), (v, layer)),
        )
        for layer, u, v, w in g.iter_intra_edges()
    ]
    is_compile = isinstance(g, CompileGraph)
    for x, i, j, w in g.iter_inter_edges():
        if is_compile:
            e = _resolve_inter_edge(g, x, i, j)  # type: ignore[arg-type]
            value = _inter_curvature_core(
                e.m_low, e.m_high, e.w_low, e.w_high, (wk for _, wk in e.others)
            )
            lo, hi = e.low_layer, e.high_layer
        else:
            value = forman_multiplex(g, (x, i), (x, j))
            pa, pb = g.attachment_strength(x, i), g.attachment_strength(x, j)
            lo, hi = (i, j) if (pa, i) <= (pb, j) else (j, i)
        entries.append(
            EdgeCurvature(StateVertex(x, lo), StateVertex(x, hi), "inter", w, value)
        )
    return CurvatureReport(entries)
