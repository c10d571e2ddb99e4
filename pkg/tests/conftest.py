"""Shared builders for the test suite.

Everything here is deterministic: topology helpers are pure, random
builders take explicit seeds or generators.
"""

from __future__ import annotations

import numpy as np
import pytest

from multicurv import DoublyWeightedGraph, compile_layers


def cycle_edges(n: int) -> list[tuple[int, int]]:
    return [(i, (i + 1) % n) for i in range(n)]


def complete_edges(n: int) -> list[tuple[int, int]]:
    return [(i, j) for i in range(n) for j in range(i + 1, n)]


def unit_graph(n: int, edges) -> DoublyWeightedGraph:
    edges = list(edges)
    return DoublyWeightedGraph(n, edges, [1.0] * n, [1.0] * len(edges))


def weighted_graph(n, weighted_edges, m=None) -> DoublyWeightedGraph:
    """Build from (u, v, w) triples; vertex weights default to 1."""
    m = [1.0] * n if m is None else list(m)
    pairs = [(u, v) for u, v, _ in weighted_edges]
    weights = [w for _, _, w in weighted_edges]
    return DoublyWeightedGraph(n, pairs, m, weights)


def random_layer(
    rng: np.random.Generator,
    n: int,
    p: float = 0.35,
    edge_weights: tuple[float, float] = (0.5, 5.0),
    vertex_weights: tuple[float, float] = (0.1, 2.0),
) -> DoublyWeightedGraph:
    mask = rng.random((n, n)) < p
    pairs = [(i, j) for i in range(n) for j in range(i + 1, n) if mask[i, j]]
    weights = [float(rng.uniform(*edge_weights)) for _ in pairs]
    m = rng.uniform(*vertex_weights, size=n).tolist()
    return DoublyWeightedGraph(n, pairs, m, weights)


def random_stack(seed: int, n: int | None = None, layers: int | None = None):
    rng = np.random.default_rng(seed)
    n = int(rng.integers(4, 21)) if n is None else n
    layers = int(rng.integers(2, 6)) if layers is None else layers
    return [random_layer(rng, n, p=float(rng.uniform(0.2, 0.6))) for _ in range(layers)]


def random_compile(seed: int, n: int | None = None, layers: int | None = None):
    return compile_layers(random_stack(seed, n, layers))


def attachment_stack(attachments, m=None):
    """Layers of one 2-vertex edge each, with prescribed attachment values.

    A lone edge of weight a**2 gives both endpoints attachment a, so the
    compiled stack realizes any attachment profile exactly (both vertices
    share it). ``m`` gives per-layer vertex weights (applied to both ends).
    """
    m = [1.0] * len(attachments) if m is None else list(m)
    return compile_layers(
        [
            DoublyWeightedGraph(2, [(0, 1)], [m[i], m[i]], [a * a])
            for i, a in enumerate(attachments)
        ]
    )


@pytest.fixture
def karate_unit():
    from multicurv import GeneratorSpec, generate

    return generate(
        GeneratorSpec(
            "karate", vertex_weight_range=(1.0, 1.0), edge_weight_range=(1.0, 1.0)
        )
    )
