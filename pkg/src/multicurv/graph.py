"""Doubly-weighted graphs, multiplex stacks, and layer compilation.

The data model is small on purpose. A single layer is a simple undirected
graph with strictly positive weights on both vertices and edges. A multiplex
graph stacks ``L`` such layers over a shared vertex set ``0..n-1`` and adds
inter-layer edges, which only ever connect copies of the same vertex in two
different layers (layers are numbered ``1..L``). A :class:`CompileGraph` is
the multiplex graph whose inter-layer weights are *derived* from the layers:
every vertex is coupled between each pair of layers in which it has at least
one intra-layer edge, with weight ``min(a_i^2, a_j^2)`` of the two attachment
strengths.

All graphs are immutable after construction; every read operation is pure,
so instances can be shared freely across threads.
"""

from __future__ import annotations

import math
from typing import Iterable, Iterator, Mapping, NamedTuple, Sequence

from .errors import (
    DuplicateEdge,
    EdgeNotFound,
    EmptyLayerList,
    IndexOutOfRange,
    MismatchedVertexCounts,
    NonPositiveWeight,
    SelfLoop,
    ValidationError,
)

__all__ = [
    "StateVertex",
    "DoublyWeightedGraph",
    "MultiplexGraph",
    "CompileGraph",
    "compile_layers",
    "edge_key",
]


class StateVertex(NamedTuple):
    """A vertex together with the layer it lives in (1-based layers)."""

    vertex: int
    layer: int


def edge_key(u: int, v: int) -> tuple[int, int]:
    """Canonical unordered key for the edge between ``u`` and ``v``."""
    return (u, v) if u <= v else (v, u)


def _checked_weight(value: object, what: str) -> float:
    try:
        w = float(value)  # type: ignore[arg-type]
    except (TypeError, ValueError):
        raise NonPositiveWeight(f"{what} is not a number: {value!r}") from None
    if not math.isfinite(w) or w <= 0.0:
        raise NonPositiveWeight(f"{what} must be a strictly positive finite number, got {value!r}")
    return w


class DoublyWeightedGraph:
    """Simple undirected graph with positive weights on vertices and edges.

    Parameters
    ----------
    n:
        Number of vertices; vertices are the dense integers ``0..n-1``.
    edges:
        Iterable of ``(u, v)`` pairs. Self-loops and repeated pairs (in
        either orientation) are rejected.
    vertex_weights:
        Sequence of ``n`` strictly positive weights.
    edge_weights:
        Strictly positive weights aligned with the *input* order of
        ``edges``. (The :attr:`edges` property re-exposes edges in canonical
        sorted order.)
    """

    __slots__ = ("n", "_vw", "_adj", "_edges", "_inv_sqrt")

    def __init__(
        self,
        n: int,
        edges: Iterable[tuple[int, int]],
        vertex_weights: Sequence[float],
        edge_weights: Sequence[float],
    ):
        n = int(n)
        if n < 0:
            raise ValidationError(f"vertex count must be non-negative, got {n}")
        edge_list = [(int(u), int(v)) for u, v in edges]
        weight_list = list(edge_weights)
        if len(vertex_weights) != n:
            raise ValidationError(f"expected {n} vertex weights, got {len(vertex_weights)}")
        if len(weight_list) != len(edge_list):
            raise ValidationError(
                f"expected {len(edge_list)} edge weights, got {len(weight_list)}"
            )
        self.n = n
        self._vw = tuple(
            _checked_weight(w, f"vertex weight m[{v}]") for v, w in enumerate(vertex_weights)
        )
        adj: list[dict[int, float]] = [{} for _ in range(n)]
        for (u, v), w in zip(edge_list, weight_list):
            if not (0 <= u < n and 0 <= v < n):
                raise IndexOutOfRange(f"edge ({u}, {v}) uses a vertex outside 0..{n - 1}")
            if u == v:
                raise SelfLoop(f"self-loop at vertex {u}")
            wf = _checked_weight(w, f"edge weight w[({u}, {v})]")
            if v in adj[u]:
                raise DuplicateEdge(f"edge ({u}, {v}) listed more than once")
            adj[u][v] = wf
            adj[v][u] = wf
        self._adj = tuple(adj)
        self._edges = tuple(sorted(edge_key(u, v) for u, v in edge_list))
        # Summed in ascending neighbor order so numerically identical graphs
        # produce bitwise identical values regardless of input edge order.
        self._inv_sqrt = tuple(
            math.fsum(1.0 / math.sqrt(adj[v][u]) for u in sorted(adj[v])) for v in range(n)
        )

    # -- structure -----------------------------------------------------

    @property
    def edges(self) -> tuple[tuple[int, int], ...]:
        """All edges as canonical ``(u, v)`` pairs with ``u < v``, sorted."""
        return self._edges

    @property
    def edge_count(self) -> int:
        return len(self._edges)

    @property
    def vertex_weights(self) -> tuple[float, ...]:
        return self._vw

    def _check_vertex(self, v: int) -> int:
        if not (0 <= v < self.n):
            raise IndexOutOfRange(f"vertex {v} outside 0..{self.n - 1}")
        return v

    def vertex_weight(self, v: int) -> float:
        return self._vw[self._check_vertex(v)]

    def has_edge(self, u: int, v: int) -> bool:
        self._check_vertex(u)
        self._check_vertex(v)
        return v in self._adj[u]

    def edge_weight(self, u: int, v: int) -> float:
        """Weight of the edge between ``u`` and ``v`` (orientation-free)."""
        self._check_vertex(u)
        self._check_vertex(v)
        try:
            return self._adj[u][v]
        except KeyError:
            raise EdgeNotFound(f"no edge between {u} and {v}") from None

    def neighbors(self, v: int) -> tuple[int, ...]:
        return tuple(sorted(self._adj[self._check_vertex(v)]))

    def degree(self, v: int) -> int:
        """Number of incident edges (unweighted)."""
        return len(self._adj[self._check_vertex(v)])

    def weighted_degree(self, v: int) -> float:
        """Sum of incident edge weights."""
        adj = self._adj[self._check_vertex(v)]
        return math.fsum(adj[u] for u in sorted(adj))

    def incident_inv_sqrt_sum(self, v: int) -> float:
        """``sum(1/sqrt(w))`` over the edges incident to ``v`` (0 if isolated)."""
        return self._inv_sqrt[self._check_vertex(v)]

    def attachment_strength(self, v: int) -> float:
        """How firmly ``v`` is wired into the graph.

        Defined as the inverse of :meth:`incident_inv_sqrt_sum`, or ``0.0``
        for an isolated vertex. With unit edge weights this is
        ``1 / degree``. Increasing any single incident edge weight strictly
        increases the value.
        """
        s = self._inv_sqrt[self._check_vertex(v)]
        return 0.0 if s == 0.0 else 1.0 / s

    # -- derived copies --------------------------------------------------

    def with_edge_weights(self, weights: Sequence[float]) -> "DoublyWeightedGraph":
        """New graph with the same structure and ``weights`` aligned to :attr:`edges`."""
        return DoublyWeightedGraph(self.n, self._edges, self._vw, weights)

    def with_edge_weight(self, u: int, v: int, weight: float) -> "DoublyWeightedGraph":
        key = edge_key(u, v)
        if not self.has_edge(u, v):
            raise EdgeNotFound(f"no edge between {u} and {v}")
        new = [weight if e == key else self._adj[e[0]][e[1]] for e in self._edges]
        return self.with_edge_weights(new)

    def with_vertex_weights(self, weights: Sequence[float]) -> "DoublyWeightedGraph":
        return DoublyWeightedGraph(
            self.n, self._edges, weights, [self._adj[u][v] for u, v in self._edges]
        )

    def with_vertex_weight(self, v: int, weight: float) -> "DoublyWeightedGraph":
        self._check_vertex(v)
        new = list(self._vw)
        new[v] = weight
        return self.with_vertex_weights(new)

    # -- dunder ----------------------------------------------------------

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, DoublyWeightedGraph):
            return NotImplemented
        return (
            self.n == other.n
            and self._vw == other._vw
            and self._edges == other._edges
            and all(self._adj[u][v] == other._adj[u][v] for u, v in self._edges)
        )

    def __hash__(self) -> int:
        return hash((self.n, self._vw, self._edges))

    def __repr__(self) -> str:
        return f"DoublyWeightedGraph(n={self.n}, edges={self.edge_count})"


class MultiplexGraph:
    """A stack of layers over one vertex set, plus inter-layer edges.

    ``layers`` are :class:`DoublyWeightedGraph` instances with equal vertex
    counts. ``inter_edges`` maps ``(vertex, layer_a, layer_b)`` (or provides
    ``(vertex, layer_a, layer_b, weight)`` rows) to strictly positive
    weights; layer pairs are unordered and stored with ``layer_a < layer_b``.
    """

    __slots__ = ("n", "num_layers", "_layers", "_inter", "_inter_adj")

    def __init__(
        self,
        layers: Sequence[DoublyWeightedGraph],
        inter_edges: Mapping[tuple[int, int, int], float] | Iterable[tuple[int, int, int, float]] = (),
    ):
        layers = tuple(layers)
        if not layers:
            raise EmptyLayerList("a multiplex graph needs at least one layer")
        n = layers[0].n
        for idx, g in enumerate(layers):
            if g.n != n:
                raise MismatchedVertexCounts(
                    f"layer {idx + 1} has {g.n} vertices, layer 1 has {n}"
                )
        self.n = n
        self.num_layers = len(layers)
        self._layers = layers

        if isinstance(inter_edges, Mapping):
            rows = [(x, i, j, w) for (x, i, j), w in inter_edges.items()]
        else:
            rows = [tuple(r) for r in inter_edges]  # type: ignore[assignment]
        inter: dict[tuple[int, int, int], float] = {}
        inter_adj: dict[tuple[int, int], dict[int, float]] = {}
        for x, i, j, w in rows:
            x, i, j = int(x), int(i), int(j)
            if not (0 <= x < n):
                raise IndexOutOfRange(f"inter-layer edge vertex {x} outside 0..{n - 1}")
            for layer in (i, j):
                if not (1 <= layer <= self.num_layers):
                    raise IndexOutOfRange(
                        f"inter-layer edge layer {layer} outside 1..{self.num_layers}"
                    )
            if i == j:
                raise ValidationError(f"inter-layer edge at vertex {x} must join two distinct layers")
            if j < i:
                i, j = j, i
            key = (x, i, j)
            if key in inter:
                raise DuplicateEdge(f"inter-layer edge {key} listed more than once")
            wf = _checked_weight(w, f"inter-layer weight w[{key}]")
            inter[key] = wf
            inter_adj.setdefault((x, i), {})[j] = wf
            inter_adj.setdefault((x, j), {})[i] = wf
        self._inter = inter
        self._inter_adj = inter_adj

    # -- structure -------------------------------------------------------

    @property
    def layers(self) -> tuple[DoublyWeightedGraph, ...]:
        return self._layers

    def layer_subgraph(self, layer: int) -> DoublyWeightedGraph:
        """The single layer ``layer`` as a standalone graph."""
        return self._layers[self._check_layer(layer) - 1]

    @property
    def intra_edge_count(self) -> int:
        return sum(g.edge_count for g in self._layers)

    @property
    def inter_edge_count(self) -> int:
        return len(self._inter)

    @property
    def edge_count(self) -> int:
        return self.intra_edge_count + self.inter_edge_count

    def _check_layer(self, layer: int) -> int:
        if not (1 <= layer <= self.num_layers):
            raise IndexOutOfRange(f"layer {layer} outside 1..{self.num_layers}")
        return layer

    # -- weights ----------------------------------------------------------

    def vertex_weight(self, vertex: int, layer: int) -> float:
        return self.layer_subgraph(layer).vertex_weight(vertex)

    def intra_edge_weight(self, layer: int, u: int, v: int) -> float:
        return self.layer_subgraph(layer).edge_weight(u, v)

    def inter_edge_weight(self, vertex: int, layer_a: int, layer_b: int) -> float:
        self._check_layer(layer_a)
        self._check_layer(layer_b)
        key = (vertex, *edge_key(layer_a, layer_b))
        try:
            return self._inter[key]
        except KeyError:
            raise EdgeNotFound(
                f"no inter-layer edge at vertex {vertex} between layers {layer_a} and {layer_b}"
            ) from None

    def edge_weight(self, a: StateVertex | tuple[int, int], b: StateVertex | tuple[int, int]) -> float:
        """Weight of the edge between two state vertices (orientation-free)."""
        (xa, la), (xb, lb) = a, b
        if la == lb and xa != xb:
            return self.intra_edge_weight(la, xa, xb)
        if xa == xb and la != lb:
            return self.inter_edge_weight(xa, la, lb)
        raise EdgeNotFound(
            f"state vertices {tuple(a)} and {tuple(b)} cannot share an edge"
        )

    def has_inter_edge(self, vertex: int, layer_a: int, layer_b: int) -> bool:
        return (vertex, *edge_key(layer_a, layer_b)) in self._inter

    # -- adjacency ----------------------------------------------------------

    def intra_neighbors(self, vertex: int, layer: int) -> tuple[int, ...]:
        return self.layer_subgraph(layer).neighbors(vertex)

    def inter_layers(self, vertex: int, layer: int) -> tuple[int, ...]:
        """Layers coupled to ``vertex``'s copy in ``layer``, ascending."""
        self._check_layer(layer)
        self.layer_subgraph(layer)._check_vertex(vertex)
        return tuple(sorted(self._inter_adj.get((vertex, layer), ())))

    def neighbors(self, vertex: int, layer: int) -> tuple[StateVertex, ...]:
        """All state-vertex neighbors: intra-layer first, then other layers."""
        intra = tuple(StateVertex(y, layer) for y in self.intra_neighbors(vertex, layer))
        inter = tuple(StateVertex(vertex, j) for j in self.inter_layers(vertex, layer))
        return intra + inter

    def weighted_degree(self, vertex: int, layer: int) -> float:
        """Sum of all incident weights, intra- and inter-layer."""
        intra = self.layer_subgraph(layer).weighted_degree(vertex)
        coupling = self._inter_adj.get((vertex, layer), {})
        return intra + math.fsum(coupling[j] for j in sorted(coupling))

    def incident_inv_sqrt_sum(self, vertex: int, layer: int) -> float:
        """``sum(1/sqrt(w))`` over every edge incident to the state vertex."""
        intra = self.layer_subgraph(layer).incident_inv_sqrt_sum(vertex)
        coupling = self._inter_adj.get((vertex, layer), {})
        return intra + math.fsum(1.0 / math.sqrt(coupling[j]) for j in sorted(coupling))

    def attachment_strength(self, vertex: int, layer: int) -> float:
        """Intra-layer attachment of a vertex copy (inter edges play no part)."""
        return self.layer_subgraph(layer).attachment_strength(vertex)

    def attachment_profile(self, vertex: int) -> tuple[float, ...]:
        """Attachment strength of ``vertex`` in every layer, in layer order."""
        return tuple(g.attachment_strength(vertex) for g in self._layers)

    # -- iteration ----------------------------------------------------------

    def iter_intra_edges(self) -> Iterator[tuple[int, int, int, float]]:
        """Yield ``(layer, u, v, weight)`` in canonical order."""
        for idx, g in enumerate(self._layers, start=1):
            for u, v in g.edges:
                yield idx, u, v, g.edge_weight(u, v)

    def iter_inter_edges(self) -> Iterator[tuple[int, int, int, float]]:
        """Yield ``(vertex, layer_a, layer_b, weight)`` in canonical order."""
        for key in sorted(self._inter):
            yield (*key, self._inter[key])

    # -- dunder ----------------------------------------------------------

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, MultiplexGraph):
            return NotImplemented
        return self._layers == other._layers and self._inter == other._inter

    def __hash__(self) -> int:
        return hash((self._layers, tuple(sorted(self._inter.items()))))

    def __repr__(self) -> str:
        return (
            f"{type(self).__name__}(n={self.n}, layers={self.num_layers}, "
            f"intra={self.intra_edge_count}, inter={self.inter_edge_count})"
        )


class CompileGraph(MultiplexGraph):
    """Multiplex graph whose inter-layer weights were derived from its layers.

    Built by :func:`compile_layers`; carries the source layers and the set of
    *degenerate* vertex copies (isolated inside their layer, attachment 0)
    which received no inter-layer edges.
    """

    __slots__ = ("degenerate_vertices",)

    def __init__(
        self,
        layers: Sequence[DoublyWeightedGraph],
        inter_edges: Mapping[tuple[int, int, int], float],
        degenerate_vertices: Iterable[StateVertex] = (),
    ):
        super().__init__(layers, inter_edges)
        self.degenerate_vertices = frozenset(StateVertex(*sv) for sv in degenerate_vertices)

    @property
    def source_layers(self) -> tuple[DoublyWeightedGraph, ...]:
        return self.layers

    def degenerate_layers_of(self, vertex: int) -> tuple[int, ...]:
        """Layers in which ``vertex`` is isolated, ascending."""
        return tuple(
            sorted(sv.layer for sv in self.degenerate_vertices if sv.vertex == vertex)
        )


def compile_layers(layers: Sequence[DoublyWeightedGraph]) -> CompileGraph:
    """Stack ``layers`` into a :class:`CompileGraph`.

    Intra-layer edges, edge weights and vertex weights are inherited from
    the layers unchanged. Every vertex ``x`` gets an inter-layer edge between
    each pair of layers where both copies have positive attachment strength,
    weighted by the smaller squared attachment. Copies with attachment 0 get
    no inter-layer edges and are reported in ``degenerate_vertices``.

    Deterministic: identical inputs produce structurally identical graphs.
    """
    layers = tuple(layers)
    if not layers:
        raise EmptyLayerList("cannot compile an empty list of layers")
    n = layers[0].n
    for idx, g in enumerate(layers):
        if g.n != n:
            raise MismatchedVertexCounts(f"layer {idx + 1} has {g.n} vertices, layer 1 has {n}")
    num_layers = len(layers)
    attach = [[g.attachment_strength(x) for x in range(n)] for g in layers]
    inter: dict[tuple[int, int, int], float] = {}
    degenerate = [
        StateVertex(x, i + 1) for i in range(num_layers) for x in range(n) if attach[i][x] == 0.0
    ]
    for x in range(n):
        for i in range(num_layers):
            a_i = attach[i][x]
            if a_i == 0.0:
                continue
            for j in range(i + 1, num_layers):
                a_j = attach[j][x]
                if a_j == 0.0:
                    continue
                inter[(x, i + 1, j + 1)] = min(a_i * a_i, a_j * a_j)
    return CompileGraph(layers, inter, degenerate)
