"""Per-layer edge-weight rescaling applied before curvature computation.

Two schemes: rescale to mean 1 (ratio-preserving), or affinely map onto a
fixed interval such as ``[1, 10]`` (range-compressing). Vertex weights are
never touched, and layers are always normalized independently of each
other; inter-layer weights are not normalized directly but re-derived from
the normalized layers.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Sequence

from .errors import InvalidConfig, NoEdges
from .graph import DoublyWeightedGraph

__all__ = [
    "NormalizationScheme",
    "mean_normalize",
    "bounded_scale",
    "apply_scheme",
    "normalize_layers",
]


@dataclass(frozen=True)
class NormalizationScheme:
    """Selected scheme: ``kind`` is ``"mean"`` or ``"bounded"``."""

    kind: str
    bounded_range: tuple[float, float] = (1.0, 10.0)

    def __post_init__(self):
        if self.kind not in ("mean", "bounded"):
            raise InvalidConfig(f"unknown normalization kind {self.kind!r}")
        lo, hi = self.bounded_range
        if not (lo > 0.0 and lo < hi and math.isfinite(lo) and math.isfinite(hi)):
            raise InvalidConfig(
                f"bounded range must satisfy 0 < lo < hi, got ({lo}, {hi})"
            )


def mean_normalize(g: DoublyWeightedGraph) -> DoublyWeightedGraph:
    """Divide every edge weight by the mean; output mean is 1.

    Preserves all pairwise weight ratios exactly up to one rounding each.
    """
    if g.edge_count == 0:
        raise NoEdges("mean normalization needs at least one edge")
    weights = [g.edge_weight(u, v) for u, v in g.edges]
    mean = math.fsum(weights) / len(weights)
    return g.with_edge_weights([w / mean for w in weights])


def bounded_scale(
    g: DoublyWeightedGraph, lo: float = 1.0, hi: float = 10.0
) -> DoublyWeightedGraph:
    """Affinely map edge weights onto ``[lo, hi]``.

    The extremes land on ``lo`` and ``hi`` exactly (not merely up to
    rounding). All-equal weights collapse to ``lo``, the only positive
    choice the degenerate affine map leaves.
    """
    if not (lo > 0.0 and lo < hi):
        raise InvalidConfig(f"bounded range must satisfy 0 < lo < hi, got ({lo}, {hi})")
    if g.edge_count == 0:
        raise NoEdges("bounded scaling needs at least one edge")
    weights = [g.edge_weight(u, v) for u, v in g.edges]
    w_min = min(weights)
    w_max = max(weights)
    if w_min == w_max:
        return g.with_edge_weights([lo] * len(weights))
    span = w_max - w_min
    scale = hi - lo

    def remap(w: float) -> float:
        if w == w_min:
            return lo
        if w == w_max:
            return hi
        return lo + scale * ((w - w_min) / span)

    return g.with_edge_weights([remap(w) for w in weights])


def apply_scheme(g: DoublyWeightedGraph, scheme: NormalizationScheme) -> DoublyWeightedGraph:
    if scheme.kind == "mean":
        return mean_normalize(g)
    return bounded_scale(g, *scheme.bounded_range)


def normalize_layers(
    layers: Sequence[DoublyWeightedGraph], scheme: NormalizationScheme
) -> list[DoublyWeightedGraph]:
    """Apply ``scheme`` to each layer independently."""
    return [apply_scheme(g, scheme) for g in layers]
