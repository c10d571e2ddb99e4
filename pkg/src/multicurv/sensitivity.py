"""Weight sensitivities of single-layer edge curvature.

Each partial derivative below is the true derivative of the curvature
implemented in :mod:`multicurv.curvature`, i.e. of

    F = 2*(m(x) + m(y)) - sqrt(w_e) * (m(x)*S(x) + m(y)*S(y))

with inclusive incident sums ``S``. Because ``sqrt(w_e)*S(x)`` contributes
the constant 1 from the edge's own term, the derivative with respect to an
endpoint weight is ``2 - sqrt(w_e)*S(x)`` (``2 - deg(x)`` in the unit-weight
case, so a degree-1 endpoint gives 1, not 0), and the derivative with
respect to ``w_e`` involves only the *other* incident edges, vanishing for
an isolated edge. Every formula here is pinned against the central
finite-difference oracle :func:`finite_difference_partial` in the tests.

Parameters are addressed by a plain union: an ``int`` means the vertex
weight of that vertex, an ``(a, b)`` pair means the edge weight of that
edge.
"""

from __future__ import annotations

import math
from typing import NamedTuple, Sequence

import numpy as np
from scipy import stats

from .curvature import forman_monolayer
from .errors import SameEdge, VertexNotOnEdge
from .graph import DoublyWeightedGraph, edge_key

__all__ = [
    "SensitivityRecord",
    "partial_wrt_vertex_weight",
    "partial_wrt_own_edge_weight",
    "partial_wrt_other_edge_weight",
    "partial_derivative",
    "dimensionless_sensitivity",
    "sensitivity_records_for_edge",
    "sensitivity_map",
    "finite_difference_partial",
    "reweighting_stability",
]

Parameter = int | tuple[int, int]


def partial_wrt_vertex_weight(g: DoublyWeightedGraph, u: int, v: int, vertex: int) -> float:
    """d F(u,v) / d m(vertex), for ``vertex`` an endpoint of the edge."""
    w = g.edge_weight(u, v)
    if vertex != u and vertex != v:
        raise VertexNotOnEdge(f"vertex {vertex} is not an endpoint of ({u}, {v})")
    return 2.0 - math.sqrt(w) * g.incident_inv_sqrt_sum(vertex)


def partial_wrt_own_edge_weight(g: DoublyWeightedGraph, u: int, v: int) -> float:
    """d F(u,v) / d w(u,v); zero iff the edge is isolated, negative otherwise."""
    sw = math.sqrt(g.edge_weight(u, v))
    excl_u = g.incident_inv_sqrt_sum(u) - 1.0 / sw
    excl_v = g.incident_inv_sqrt_sum(v) - 1.0 / sw
    return -(g.vertex_weight(u) * excl_u + g.vertex_weight(v) * excl_v) / (2.0 * sw)


def partial_wrt_other_edge_weight(
    g: DoublyWeightedGraph, edge: tuple[int, int], other: tuple[int, int]
) -> float:
    """d F(edge) / d w(other); zero when the edges share no endpoint."""
    u, v = edge
    if edge_key(u, v) == edge_key(*other):
        raise SameEdge(f"({u}, {v}) is the edge itself; use partial_wrt_own_edge_weight")
    w_e = g.edge_weight(u, v)
    w_o = g.edge_weight(*other)
    touched = u if u in other else v if v in other else None
    if touched is None:
        return 0.0
    return g.vertex_weight(touched) * math.sqrt(w_e) / (2.0 * w_o * math.sqrt(w_o))


def partial_derivative(g: DoublyWeightedGraph, edge: tuple[int, int], parameter: Parameter) -> float:
    """Dispatch on the parameter kind; see the module docstring."""
    u, v = edge
    if isinstance(parameter, int):
        return partial_wrt_vertex_weight(g, u, v, parameter)
    if edge_key(*parameter) == edge_key(u, v):
        return partial_wrt_own_edge_weight(g, u, v)
    return partial_wrt_other_edge_weight(g, edge, parameter)


def dimensionless_sensitivity(
    g: DoublyWeightedGraph, edge: tuple[int, int], parameter: Parameter
) -> float | None:
    """Elasticity ``dF/dp * p/F``, or ``None`` on a zero-curvature edge.

    ``None`` (rather than an infinity or NaN) keeps zero-curvature edges,
    such as every edge of an unweighted cycle, explicit in downstream
    tables.
    """
    f = forman_monolayer(g, *edge)
    if f == 0.0:
        return None
    partial = partial_derivative(g, edge, parameter)
    p = g.vertex_weight(parameter) if isinstance(parameter, int) else g.edge_weight(*parameter)
    return partial * p / f


class SensitivityRecord(NamedTuple):
    """One (edge, parameter) sensitivity row."""

    edge: tuple[int, int]
    kind: str  # "vertex_weight" | "edge_weight"
    target: int | tuple[int, int]
    partial: float
    dimensionless: float | None

    @property
    def parameter_label(self) -> str:
        if self.kind == "vertex_weight":
            return f"m({self.target})"
        a, b = self.target  # type: ignore[misc]
        return f"w({a},{b})"


def _adjacent_edges(g: DoublyWeightedGraph, u: int, v: int) -> list[tuple[int, int]]:
    own = edge_key(u, v)
    seen = {own}
    out = []
    for t in (u, v):
        for z in g.neighbors(t):
            k = edge_key(t, z)
            if k not in seen:
                seen.add(k)
                out.append(k)
    return sorted(out)


def sensitivity_records_for_edge(g: DoublyWeightedGraph, u: int, v: int) -> list[SensitivityRecord]:
    """Records for every parameter the edge structurally depends on.

    Order: m(u), m(v), w(e), then adjacent edge weights by edge key, with
    ``u < v`` canonicalized first.
    """
    u, v = edge_key(u, v)
    e = (u, v)
    f = forman_monolayer(g, u, v)

    def record(kind: str, target, partial: float) -> SensitivityRecord:
        if f == 0.0:
            s = None
        else:
            p = g.vertex_weight(target) if kind == "vertex_weight" else g.edge_weight(*target)
            s = partial * p / f
        return SensitivityRecord(e, kind, target, partial, s)

    out = [
        record("vertex_weight", u, partial_wrt_vertex_weight(g, u, v, u)),
        record("vertex_weight", v, partial_wrt_vertex_weight(g, u, v, v)),
        record("edge_weight", e, partial_wrt_own_edge_weight(g, u, v)),
    ]
    out.extend(
        record("edge_weight", other, partial_wrt_other_edge_weight(g, e, other))
        for other in _adjacent_edges(g, u, v)
    )
    return out


def sensitivity_map(g: DoublyWeightedGraph) -> list[SensitivityRecord]:
    """All records for all edges, edges in canonical order; deterministic."""
    out: list[SensitivityRecord] = []
    for u, v in g.edges:
        out.extend(sensitivity_records_for_edge(g, u, v))
    return out


def finite_difference_partial(
    g: DoublyWeightedGraph,
    edge: tuple[int, int],
    parameter: Parameter,
    *,
    rel_step: float = 1e-6,
    abs_floor: float = 1e-9,
) -> float:
    """Central-difference estimate of :func:`partial_derivative`.

    The step is ``max(rel_step*|p|, abs_floor)``, balancing truncation
    against round-off for 64-bit floats. Weights stay positive because the
    step is tiny relative to any admissible weight.
    """
    u, v = edge
    if isinstance(parameter, int):
        p = g.vertex_weight(parameter)
        h = max(rel_step * abs(p), abs_floor)
        hi = g.with_vertex_weight(parameter, p + h)
        lo = g.with_vertex_weight(parameter, p - h)
    else:
        a, b = parameter
        p = g.edge_weight(a, b)
        h = max(rel_step * abs(p), abs_floor)
        hi = g.with_edge_weight(a, b, p + h)
        lo = g.with_edge_weight(a, b, p - h)
    return (forman_monolayer(hi, u, v) - forman_monolayer(lo, u, v)) / (2.0 * h)


def reweighting_stability(
    g: DoublyWeightedGraph,
    seed: int,
    *,
    lo: float = 0.9,
    hi: float = 1.1,
) -> float:
    """Spearman rank correlation of per-edge curvature under re-weighting.

    Every vertex and edge weight is multiplied by an independent uniform
    factor in ``[lo, hi]``; the return value is the rank correlation between
    the original and perturbed curvature across edges, a summary of how
    stable the curvature *ranking* is against weight noise. Reported, never
    hard-asserted: there is no principled threshold.
    """
    rng = np.random.default_rng(seed)
    factors_v = rng.uniform(lo, hi, size=g.n)
    factors_e = rng.uniform(lo, hi, size=g.edge_count)
    perturbed = DoublyWeightedGraph(
        g.n,
        g.edges,
        [m * f for m, f in zip(g.vertex_weights, factors_v)],
        [g.edge_weight(u, v) * f for (u, v), f in zip(g.edges, factors_e)],
    )
    before = [forman_monolayer(g, u, v) for u, v in g.edges]
    after = [forman_monolayer(perturbed, u, v) for u, v in g.edges]
    rho = stats.spearmanr(before, after).statistic
    return float(rho)
