"""Feature extraction: curvature statistics, classical metrics, WL histograms.

Three feature families per sample, matching the downstream CSV layout:

- ``CE_stat_0..11``: distribution summary of the per-vertex cross-layer
  curvature scores of a compiled sample (mean, population std, min, max,
  median, Q1, Q3, IQR, skewness, excess kurtosis, fraction negative, sum,
  in that order).
- ``TRAD_stat_0..5``: (mean, std) of degree, clustering coefficient, and
  unnormalized betweenness centrality on the unweighted skeleton,
  metric-major.
- ``wl_<id>``: Weisfeiler-Lehman subtree label counts over iterations
  0..h on the unweighted skeleton, with degree-based initial labels. Label
  ids come from a dictionary shared across graphs so histograms align.

Scikit-learn style transformers wrap the same computations for pipeline
use; the plain functions remain the single source of truth.
"""

from __future__ import annotations

import math
from collections import Counter
from typing import Iterable, NamedTuple, Sequence

import networkx as nx
import numpy as np
from sklearn.base import BaseEstimator, TransformerMixin
from sklearn.utils.validation import check_is_fitted

from .errors import DegenerateGraph
from .evaluation import comprehensive_evaluation
from .generators import DatasetSample
from .graph import CompileGraph, DoublyWeightedGraph, MultiplexGraph, compile_layers

__all__ = [
    "WLLabelDictionary",
    "FeatureRow",
    "FeatureMatrix",
    "ce_statistics",
    "ce_stat_features",
    "traditional_features",
    "wl_histogram",
    "extract_features",
    "CurvatureStatsFeaturizer",
    "TraditionalStatsFeaturizer",
    "WLSubtreeFeaturizer",
]

CE_STAT_NAMES = tuple(f"CE_stat_{i}" for i in range(12))
TRAD_STAT_NAMES = tuple(f"TRAD_stat_{i}" for i in range(6))


def ce_statistics(values: Sequence[float]) -> tuple[float, ...]:
    """The 12 fixed-order summary statistics of a score distribution.

    Skewness and excess kurtosis are defined as 0 for a constant sample
    instead of propagating a 0/0.
    """
    if len(values) == 0:
        raise DegenerateGraph("cannot summarize an empty score distribution")
    arr = np.asarray(values, dtype=float)
    mean = float(arr.mean())
    std = float(arr.std())
    q1 = float(np.percentile(arr, 25))
    q3 = float(np.percentile(arr, 75))
    if std == 0.0:
        skew = kurt = 0.0
    else:
        z = (arr - mean) / std
        skew = float(np.mean(z**3))
        kurt = float(np.mean(z**4) - 3.0)
    return (
        mean,
        std,
        float(arr.min()),
        float(arr.max()),
        float(np.median(arr)),
        q1,
        q3,
        q3 - q1,
        skew,
        kurt,
        float(np.mean(arr < 0.0)),
        float(math.fsum(float(v) for v in values)),
    )


def ce_stat_features(cg: CompileGraph) -> tuple[float, ...]:
    """CE_stat_0..11 over the per-vertex scores of a compiled sample."""
    return ce_statistics([comprehensive_evaluation(cg, x) for x in range(cg.n)])


def _skeleton(g: DoublyWeightedGraph) -> nx.Graph:
    s = nx.Graph()
    s.add_nodes_from(range(g.n))
    s.add_edges_from(g.edges)
    return s


def traditional_features(g: DoublyWeightedGraph) -> tuple[float, ...]:
    """TRAD_stat_0..5 on the unweighted skeleton.

    Betweenness is the raw shortest-path pair count (unnormalized), so a
    star center with k leaves scores k-choose-2.
    """
    if g.n == 0:
        raise DegenerateGraph("traditional features need at least one vertex")
    s = _skeleton(g)
    clustering = nx.clustering(s)
    betweenness = nx.betweenness_centrality(s, normalized=False)
    out = []
    for column in (
        [float(s.degree(v)) for v in range(g.n)],
        [float(clustering[v]) for v in range(g.n)],
        [float(betweenness[v]) for v in range(g.n)],
    ):
        arr = np.asarray(column)
        out.append(float(arr.mean()))
        out.append(float(arr.std()))
    return tuple(out)


class WLLabelDictionary:
    """Injective map from refinement keys to dense integer label ids.

    Share one instance across the graphs of a dataset so equal subtree
    structures get equal ids everywhere.
    """

    __slots__ = ("_ids",)

    def __init__(self):
        self._ids: dict[object, int] = {}

    def label_for(self, key: object) -> int:
        try:
            return self._ids[key]
        except KeyError:
            self._ids[key] = len(self._ids)
            return self._ids[key]

    def __len__(self) -> int:
        return len(self._ids)

    def __contains__(self, key: object) -> bool:
        return key in self._ids

    def copy(self) -> "WLLabelDictionary":
        clone = WLLabelDictionary()
        clone._ids = dict(self._ids)
        return clone


def wl_histogram(
    g: DoublyWeightedGraph,
    iterations: int = 3,
    dictionary: WLLabelDictionary | None = None,
) -> dict[int, int]:
    """Label counts over WL iterations 0..``iterations`` (skeleton only).

    Iteration 0 is the degree histogram; each round relabels a vertex by
    its own label plus the sorted multiset of neighbor labels.
    """
    if iterations < 0:
        raise DegenerateGraph(f"iteration count must be >= 0, got {iterations}")
    d = dictionary if dictionary is not None else WLLabelDictionary()
    adjacency = [g.neighbors(v) for v in range(g.n)]
    labels = [d.label_for(("init", len(adjacency[v]))) for v in range(g.n)]
    hist: Counter[int] = Counter(labels)
    for _ in range(iterations):
        labels = [
            d.label_for(("wl", labels[v], tuple(sorted(labels[u] for u in adjacency[v]))))
            for v in range(g.n)
        ]
        hist.update(labels)
    return dict(hist)


class FeatureRow(NamedTuple):
    graph_id: int
    label: str
    ce_stats: tuple[float, ...]
    trad_stats: tuple[float, ...]
    wl_histogram: dict[int, int]


class FeatureMatrix:
    """Aligned feature rows; WL columns are the union over all rows."""

    __slots__ = ("rows",)

    def __init__(self, rows: Iterable[FeatureRow]):
        self.rows = tuple(rows)

    def __iter__(self):
        return iter(self.rows)

    def __len__(self):
        return len(self.rows)

    @property
    def wl_label_ids(self) -> tuple[int, ...]:
        ids: set[int] = set()
        for row in self.rows:
            ids.update(row.wl_histogram)
        return tuple(sorted(ids))

    def header(self) -> list[str]:
        return (
            ["graphId", "label"]
            + list(CE_STAT_NAMES)
            + list(TRAD_STAT_NAMES)
            + [f"wl_{i}" for i in self.wl_label_ids]
        )

    def to_csv_text(self) -> str:
        wl_ids = self.wl_label_ids
        lines = [",".join(self.header())]
        for row in self.rows:
            cells = [str(row.graph_id), row.label]
            cells += [str(v) for v in row.ce_stats]
            cells += [str(v) for v in row.trad_stats]
            cells += [str(row.wl_histogram.get(i, 0)) for i in wl_ids]
            lines.append(",".join(cells))
        return "\n".join(lines) + "\n"


def extract_features(
    samples: Sequence[DatasetSample], *, iterations: int = 3
) -> FeatureMatrix:
    """One feature row per sample.

    Curvature statistics come from the compiled layer stack; traditional
    and WL features from the first layer's skeleton (the dataset builders
    make layers exchangeable, so the choice is a convention, not a leak).
    One shared label dictionary keeps WL columns aligned across samples.
    """
    dictionary = WLLabelDictionary()
    rows = []
    for sample in samples:
        cg = compile_layers(sample.layers)
        rows.append(
            FeatureRow(
                sample.graph_id,
                sample.label,
                ce_stat_features(cg),
                traditional_features(sample.layers[0]),
                wl_histogram(sample.layers[0], iterations, dictionary),
            )
        )
    return FeatureMatrix(rows)


def _as_compile_graph(item) -> CompileGraph:
    if isinstance(item, CompileGraph):
        return item
    if isinstance(item, MultiplexGraph):
        raise DegenerateGraph(
            "curvature statistics need derived inter-layer weights; pass layers or a compile graph"
        )
    return compile_layers(tuple(item))


class CurvatureStatsFeaturizer(BaseEstimator, TransformerMixin):
    """Per-sample CE_stat_0..11; samples are compile graphs or layer lists."""

    def fit(self, X, y=None):
        self.n_features_in_ = 1
        return self

    def transform(self, X) -> np.ndarray:
        check_is_fitted(self, "n_features_in_")
        return np.asarray([ce_stat_features(_as_compile_graph(item)) for item in X])

    def get_feature_names_out(self, input_features=None) -> np.ndarray:
        return np.asarray(CE_STAT_NAMES, dtype=object)


class TraditionalStatsFeaturizer(BaseEstimator, TransformerMixin):
    """Per-sample TRAD_stat_0..5; samples are single-layer graphs."""

    def fit(self, X, y=None):
        self.n_features_in_ = 1
        return self

    def transform(self, X) -> np.ndarray:
        check_is_fitted(self, "n_features_in_")
        return np.asarray([traditional_features(g) for g in X])

    def get_feature_names_out(self, input_features=None) -> np.ndarray:
        return np.asarray(TRAD_STAT_NAMES, dtype=object)


class WLSubtreeFeaturizer(BaseEstimator, TransformerMixin):
    """WL label-count columns with the label space frozen at fit time.

    ``fit`` builds the shared dictionary over the training graphs and fixes
    the output columns to the labels seen there. ``transform`` refines each
    graph against a throwaway copy of that dictionary, so unseen structures
    get consistent temporary ids for further refinement but produce no
    columns; the fitted state never mutates.
    """

    def __init__(self, iterations: int = 3):
        self.iterations = iterations

    def fit(self, X, y=None):
        dictionary = WLLabelDictionary()
        histograms = [wl_histogram(g, self.iterations, dictionary) for g in X]
        ids: set[int] = set()
        for h in histograms:
            ids.update(h)
        self.dictionary_ = dictionary
        self.feature_ids_ = tuple(sorted(ids))
        return self

    def transform(self, X) -> np.ndarray:
        check_is_fitted(self, "feature_ids_")
        out = np.zeros((len(X), len(self.feature_ids_)))
        column = {label: idx for idx, label in enumerate(self.feature_ids_)}
        for row, g in enumerate(X):
            hist = wl_histogram(g, self.iterations, self.dictionary_.copy())
            for label, count in hist.items():
                idx = column.get(label)
                if idx is not None:
                    out[row, idx] = count
        return out

    def get_feature_names_out(self, input_features=None) -> np.ndarray:
        check_is_fitted(self, "feature_ids_")
        return np.asarray([f"wl_{i}" for i in self.feature_ids_], dtype=object)
