"""Seeded graph generators and the synthetic classification datasets.

Every stochastic construction threads an explicit seed; a given seed always
reproduces the same graph, byte for byte, regardless of how many other
graphs were generated before it (independent streams are spawned per layer
and per sample). Random draws always happen in a fixed documented order:
topology first, then vertex weights, then edge weights.

The two dataset builders mirror two experiment flavors:

- :func:`synthesize_classification_dataset` ("bridge"): class A samples
  stack independent draws of a two-community topology (two equal dense
  blocks joined by a few bridge edges); class B samples stack independent
  degree-preserving rewirings of one fresh draw. Within class B every layer
  has the *same* per-vertex degree sequence, so a vertex's attachment
  strength varies across layers only through weight noise, while class A
  keeps full structural variation; cross-layer curvature statistics pick up
  that contrast.
- :func:`synthesize_weight_noise_dataset` ("weight-noise"): fixed topology
  (karate club) in every layer, shared base edge weights, per-layer
  multiplicative log-normal noise whose scale is the class difference.
  Topology-only features are identical across classes by construction.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from importlib import resources
from typing import NamedTuple, Sequence

import networkx as nx
import numpy as np

from .errors import InvalidSpec
from .graph import CompileGraph, DoublyWeightedGraph, compile_layers

__all__ = [
    "GeneratorSpec",
    "DatasetSample",
    "generate",
    "build_compile_experiment",
    "karate_club_edges",
    "parse_generator_spec",
    "synthesize_classification_dataset",
    "synthesize_weight_noise_dataset",
]

_KINDS = ("complete", "cycle", "tree", "er", "karate")


@dataclass(frozen=True)
class GeneratorSpec:
    """One graph to generate.

    ``kind`` selects the topology: ``complete``/``cycle`` (need ``n``),
    ``tree`` (needs ``branching`` and ``depth``; interior vertices get
    degree ``branching``), ``er`` (needs ``n`` and ``p``), or ``karate``
    (fixed 34-vertex topology). ``seed`` is mandatory whenever anything is
    random: always for ``er``, and for any kind whose weight ranges are
    non-degenerate. A degenerate range ``(a, a)`` assigns the constant ``a``
    without consuming random state.
    """

    kind: str
    n: int | None = None
    p: float | None = None
    branching: int | None = None
    depth: int | None = None
    seed: int | None = None
    vertex_weight_range: tuple[float, float] = (0.01, 1.0)
    edge_weight_range: tuple[float, float] = (1.0, 10.0)

    def needs_rng(self) -> bool:
        return (
            self.kind == "er"
            or self.vertex_weight_range[0] != self.vertex_weight_range[1]
            or self.edge_weight_range[0] != self.edge_weight_range[1]
        )

    def validate(self) -> None:
        if self.kind not in _KINDS:
            raise InvalidSpec(f"unknown generator kind {self.kind!r}; choose from {_KINDS}")
        allowed = {
            "complete": ("n",),
            "cycle": ("n",),
            "tree": ("branching", "depth"),
            "er": ("n", "p"),
            "karate": (),
        }[self.kind]
        for field in ("n", "p", "branching", "depth"):
            value = getattr(self, field)
            if value is not None and field not in allowed:
                raise InvalidSpec(f"{self.kind!r} does not take parameter {field!r}")
            if value is None and field in allowed:
                raise InvalidSpec(f"{self.kind!r} requires parameter {field!r}")
        if self.kind in ("complete", "cycle", "er"):
            if self.n < (3 if self.kind == "cycle" else 1):  # type: ignore[operator]
                raise InvalidSpec(f"{self.kind!r} needs n >= {3 if self.kind == 'cycle' else 1}")
        if self.kind == "er" and not (0.0 <= self.p <= 1.0):  # type: ignore[operator]
            raise InvalidSpec(f"edge probability must lie in [0, 1], got {self.p}")
        if self.kind == "tree" and (self.branching < 2 or self.depth < 1):  # type: ignore[operator]
            raise InvalidSpec("tree needs branching >= 2 and depth >= 1")
        for name, (lo, hi) in (
            ("vertex_weight_range", self.vertex_weight_range),
            ("edge_weight_range", self.edge_weight_range),
        ):
            if not (math.isfinite(lo) and math.isfinite(hi) and 0.0 < lo <= hi):
                raise InvalidSpec(f"{name} must satisfy 0 < lo <= hi, got ({lo}, {hi})")


def karate_club_edges() -> tuple[int, list[tuple[int, int]]]:
    """Vertex count and edge list of the bundled karate-club graph."""
    text = resources.files("multicurv.data").joinpath("zachary_karate.tsv").read_text()
    edges = []
    for line in text.splitlines():
        line = line.strip()
        if not line or line.startswith("#"):
            continue
        u, v = line.split("\t")
        edges.append((int(u), int(v)))
    return 34, edges


def _tree_edges(branching: int, depth: int) -> tuple[int, list[tuple[int, int]]]:
    # Root gets `branching` children, every later interior vertex
    # branching-1, so interior degrees all equal `branching`.
    edges = []
    next_id = 1
    frontier = [0]
    for level in range(depth):
        fanout = branching if level == 0 else branching - 1
        new_frontier = []
        for parent in frontier:
            for _ in range(fanout):
                edges.append((parent, next_id))
                new_frontier.append(next_id)
                next_id += 1
        frontier = new_frontier
    return next_id, edges


def _er_edges(n: int, p: float, rng: np.random.Generator) -> list[tuple[int, int]]:
    iu, ju = np.triu_indices(n, k=1)
    mask = rng.random(iu.shape[0]) < p
    return [(int(u), int(v)) for u, v in zip(iu[mask], ju[mask])]


def _draw_weights(
    count: int, weight_range: tuple[float, float], rng: np.random.Generator | None
) -> list[float]:
    lo, hi = weight_range
    if lo == hi:
        return [lo] * count
    assert rng is not None
    return [float(w) for w in rng.uniform(lo, hi, size=count)]


def generate(spec: GeneratorSpec, rng: np.random.Generator | None = None) -> DoublyWeightedGraph:
    """Build the graph described by ``spec``.

    The random stream defaults to ``default_rng(spec.seed)``; passing
    ``rng`` overrides it (used to spawn independent per-layer streams).
    """
    spec.validate()
    if spec.needs_rng() and rng is None:
        if spec.seed is None:
            raise InvalidSpec(f"{spec.kind!r} spec is stochastic and needs a seed")
        rng = np.random.default_rng(spec.seed)

    if spec.kind == "complete":
        n = spec.n
        edges = [(i, j) for i in range(n) for j in range(i + 1, n)]
    elif spec.kind == "cycle":
        n = spec.n
        edges = [(i, (i + 1) % n) for i in range(n)]
    elif spec.kind == "tree":
        n, edges = _tree_edges(spec.branching, spec.depth)
    elif spec.kind == "karate":
        n, edges = karate_club_edges()
    else:
        n = spec.n
        edges = _er_edges(n, spec.p, rng)

    m = _draw_weights(n, spec.vertex_weight_range, rng)
    w = _draw_weights(len(edges), spec.edge_weight_range, rng)
    return DoublyWeightedGraph(n, edges, m, w)


def build_compile_experiment(specs: Sequence[GeneratorSpec], seed: int | None = None) -> CompileGraph:
    """Generate one layer per spec and stack them.

    With a master ``seed``, independent child streams are spawned per layer
    (any per-spec seeds are ignored); without one, each spec must carry its
    own seed if it is stochastic.
    """
    specs = list(specs)
    if seed is not None:
        children = np.random.SeedSequence(seed).spawn(len(specs))
        layers = [generate(s, np.random.default_rng(c)) for s, c in zip(specs, children)]
    else:
        layers = [generate(s) for s in specs]
    return compile_layers(layers)


def parse_generator_spec(text: str) -> GeneratorSpec:
    """Parse the CLI form ``kind`` or ``kind:key=value,key=value``.

    Recognized keys: ``n``, ``p``, ``branching``, ``depth``, ``seed``.
    Weight ranges are not part of the string; the CLI sets them globally.
    """
    kind, _, params = text.partition(":")
    kind = kind.strip()
    kwargs: dict[str, object] = {}
    if params:
        for item in params.split(","):
            key, sep, value = item.partition("=")
            key = key.strip()
            if not sep or not value.strip():
                raise InvalidSpec(f"malformed generator parameter {item!r} in {text!r}")
            if key in ("n", "branching", "depth", "seed"):
                try:
                    kwargs[key] = int(value)
                except ValueError:
                    raise InvalidSpec(f"parameter {key!r} must be an integer, got {value!r}") from None
            elif key == "p":
                try:
                    kwargs[key] = float(value)
                except ValueError:
                    raise InvalidSpec(f"parameter 'p' must be a number, got {value!r}") from None
            else:
                raise InvalidSpec(f"unknown generator parameter {key!r} in {text!r}")
    spec = GeneratorSpec(kind=kind, **kwargs)  # type: ignore[arg-type]
    spec.validate()
    return spec


class DatasetSample(NamedTuple):
    """One labeled multiplex sample, as layers ready to compile."""

    graph_id: int
    label: str
    layers: tuple[DoublyWeightedGraph, ...]


def _seed_int(seq: np.random.SeedSequence) -> int:
    return int(seq.generate_state(1)[0])


def _two_community_edges(
    n: int, p_in: float, bridges: int, rng: np.random.Generator
) -> list[tuple[int, int]]:
    half = n // 2
    edges = []
    for offset, size in ((0, half), (half, n - half)):
        iu, ju = np.triu_indices(size, k=1)
        mask = rng.random(iu.shape[0]) < p_in
        edges.extend((offset + int(u), offset + int(v)) for u, v in zip(iu[mask], ju[mask]))
    chosen: set[tuple[int, int]] = set()
    while len(chosen) < bridges:
        a = int(rng.integers(0, half))
        b = int(rng.integers(half, n))
        chosen.add((a, b))
    edges.extend(sorted(chosen))
    return edges


def _rewired_edges(
    base: list[tuple[int, int]], n: int, swaps: int, seed: int
) -> list[tuple[int, int]]:
    g = nx.Graph()
    g.add_nodes_from(range(n))
    g.add_edges_from(base)
    nx.double_edge_swap(g, nswap=swaps, max_tries=swaps * 100, seed=seed)
    return sorted((min(u, v), max(u, v)) for u, v in g.edges())


def _weighted_layer(
    n: int,
    edges: list[tuple[int, int]],
    rng: np.random.Generator,
    vertex_weight_range: tuple[float, float],
    edge_weight_range: tuple[float, float],
) -> DoublyWeightedGraph:
    m = _draw_weights(n, vertex_weight_range, rng)
    w = _draw_weights(len(edges), edge_weight_range, rng)
    return DoublyWeightedGraph(n, edges, m, w)


def synthesize_classification_dataset(
    count: int,
    seed: int,
    *,
    n: int = 30,
    p_in: float = 0.3,
    bridges: int = 1,
    rewires: int = 40,
    layers: int = 3,
    vertex_weight_range: tuple[float, float] = (0.01, 1.0),
    edge_weight_range: tuple[float, float] = (1.0, 10.0),
) -> list[DatasetSample]:
    """The bridge-vs-rewired dataset; see the module docstring.

    Labels alternate A, B, A, B, ... so any even ``count`` is balanced.
    """
    if count % 2 != 0:
        raise InvalidSpec(f"dataset count must be even for balanced classes, got {count}")
    if n < 4 or not (0.0 < p_in <= 1.0) or bridges < 1 or rewires < 1 or layers < 2:
        raise InvalidSpec("bridge dataset needs n>=4, 0<p_in<=1, bridges>=1, rewires>=1, layers>=2")
    samples = []
    for graph_id, sample_seq in enumerate(np.random.SeedSequence(seed).spawn(count)):
        label = "A" if graph_id % 2 == 0 else "B"
        layer_seqs = sample_seq.spawn(layers + 1)
        built = []
        if label == "A":
            for layer_seq in layer_seqs[:layers]:
                rng = np.random.default_rng(layer_seq)
                edges = _two_community_edges(n, p_in, bridges, rng)
                built.append(_weighted_layer(n, edges, rng, vertex_weight_range, edge_weight_range))
        else:
            base_rng = np.random.default_rng(layer_seqs[layers])
            base = _two_community_edges(n, p_in, bridges, base_rng)
            for layer_seq in layer_seqs[:layers]:
                rng = np.random.default_rng(layer_seq)
                edges = _rewired_edges(base, n, rewires, _seed_int(layer_seq))
                built.append(_weighted_layer(n, edges, rng, vertex_weight_range, edge_weight_range))
        samples.append(DatasetSample(graph_id, label, tuple(built)))
    return samples


def synthesize_weight_noise_dataset(
    count: int,
    seed: int,
    *,
    layers: int = 3,
    sigma_a: float = 0.1,
    sigma_b: float = 0.5,
    base_weight_range: tuple[float, float] = (0.5, 5.0),
    vertex_weight_range: tuple[float, float] = (0.01, 1.0),
) -> list[DatasetSample]:
    """Karate-club layers with class-dependent multiplicative weight noise.

    Every layer of every sample shares the karate topology; per sample, one
    base edge-weight vector is drawn and each layer multiplies it by
    independent log-normal factors with the class's sigma. Classes differ
    only in how much edge weights vary across layers.
    """
    if count % 2 != 0:
        raise InvalidSpec(f"dataset count must be even for balanced classes, got {count}")
    if not (0.0 < sigma_a and 0.0 < sigma_b) or layers < 2:
        raise InvalidSpec("weight-noise dataset needs positive sigmas and layers >= 2")
    n, edges = karate_club_edges()
    samples = []
    for graph_id, sample_seq in enumerate(np.random.SeedSequence(seed).spawn(count)):
        label = "A" if graph_id % 2 == 0 else "B"
        sigma = sigma_a if label == "A" else sigma_b
        rng = np.random.default_rng(sample_seq)
        m = _draw_weights(n, vertex_weight_range, rng)
        base_w = np.array(_draw_weights(len(edges), base_weight_range, rng))
        built = []
        for _ in range(layers):
            factors = rng.lognormal(mean=0.0, sigma=sigma, size=len(edges))
            built.append(DoublyWeightedGraph(n, edges, m, [float(x) for x in base_w * factors]))
        samples.append(DatasetSample(graph_id, label, tuple(built)))
    return samples
