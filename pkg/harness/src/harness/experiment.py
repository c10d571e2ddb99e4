"""Cross-validated random-forest comparison of feature-column groups.

One experiment fits the same classifier on several column selections of one
feature table and reports accuracy and macro-F1 per selection, mean and
standard deviation over ``repetitions x folds`` stratified splits. The fold
partitions are built once per repetition and reused for every selection, so
score vectors are aligned split by split and the signed-rank comparison is
genuinely paired.

Hyperparameters are deliberately fixed (100 trees, default depth) and are
echoed into every rendered table. All randomness, fold shuffling and tree
construction alike, derives from the single experiment seed.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import NamedTuple, Sequence

import numpy as np
from scipy import stats
from sklearn.ensemble import RandomForestClassifier
from sklearn.metrics import accuracy_score, f1_score
from sklearn.model_selection import StratifiedKFold

from .errors import AllTies, DegenerateLabels, InvalidConfig
from .features_io import FeatureTable, select_columns

__all__ = [
    "N_TREES",
    "ExperimentConfig",
    "SplitScore",
    "SelectorSummary",
    "ImportanceReport",
    "ResultTable",
    "selector_name",
    "make_splits",
    "run_comparison",
    "feature_importance",
    "wilcoxon_compare",
]

N_TREES = 100


@dataclass(frozen=True)
class ExperimentConfig:
    """What to run: column selections, CV shape, seed, importance depth."""

    selectors: tuple[tuple[str, ...], ...]
    folds: int = 5
    repetitions: int = 1
    seed: int = 0
    top_k: int = 10

    def __post_init__(self) -> None:
        if not self.selectors:
            raise InvalidConfig("at least one feature selector is required")
        if any(not groups for groups in self.selectors):
            raise InvalidConfig("a selector must name at least one feature group")
        if self.folds < 2:
            raise InvalidConfig(f"folds must be >= 2, got {self.folds}")
        if self.repetitions < 1:
            raise InvalidConfig(f"repetitions must be >= 1, got {self.repetitions}")
        if self.top_k < 1:
            raise InvalidConfig(f"top_k must be >= 1, got {self.top_k}")


def selector_name(groups: Sequence[str]) -> str:
    return "+".join(groups)


class SplitScore(NamedTuple):
    selector: str
    repetition: int
    fold: int
    accuracy: float
    macro_f1: float


class SelectorSummary(NamedTuple):
    selector: str
    mean_accuracy: float
    std_accuracy: float
    mean_macro_f1: float
    std_macro_f1: float


class ImportanceReport(NamedTuple):
    """Impurity importances of one model fit on the full table."""

    selector: str
    ranking: tuple[tuple[str, float], ...]
    group_shares: tuple[tuple[str, float], ...]
    degenerate: bool


class ResultTable(NamedTuple):
    folds: int
    repetitions: int
    seed: int
    n_rows: int
    classes: tuple[str, ...]
    summaries: tuple[SelectorSummary, ...]
    scores: tuple[SplitScore, ...]
    # (selector_a, selector_b, two-sided p); None when the paired vectors tie
    # everywhere, which the signed-rank statistic cannot score.
    wilcoxon: tuple[tuple[str, str, float | None], ...]


def _seed_state(config: ExperimentConfig) -> np.ndarray:
    return np.random.SeedSequence(config.seed).generate_state(2 * config.repetitions)


def make_splits(
    labels: Sequence[str], config: ExperimentConfig
) -> list[tuple[int, int, np.ndarray, np.ndarray]]:
    """Stratified ``(repetition, fold, train, test)`` index quadruples.

    Each repetition reshuffles with its own derived seed; within one
    repetition the folds partition the rows.
    """
    y = np.asarray(labels)
    classes, counts = np.unique(y, return_counts=True)
    smallest = int(counts.min())
    if smallest < config.folds:
        raise InvalidConfig(
            f"class {classes[counts.argmin()]!r} has {smallest} rows, "
            f"fewer than folds={config.folds}"
        )
    state = _seed_state(config)
    splits = []
    for rep in range(config.repetitions):
        skf = StratifiedKFold(
            n_splits=config.folds, shuffle=True, random_state=int(state[rep])
        )
        try:
            for fold, (train, test) in enumerate(skf.split(np.zeros(len(y)), y)):
                splits.append((rep, fold, train, test))
        except ValueError as exc:
            # sklearn rejects classes smaller than the fold count.
            raise InvalidConfig(str(exc)) from None
    return splits


def _rf_seed(state: np.ndarray, rep: int, fold: int, sel_index: int, reps: int) -> int:
    return int((int(state[reps + rep]) + 977 * fold + 10_007 * sel_index) % 2**32)


def run_comparison(table: FeatureTable, config: ExperimentConfig) -> ResultTable:
    labels = np.asarray(table.labels)
    classes = tuple(sorted(set(table.labels)))
    if len(classes) < 2:
        raise DegenerateLabels(f"need at least two classes, got {classes}")
    column_sets = [select_columns(table, groups) for groups in config.selectors]
    splits = make_splits(table.labels, config)
    state = _seed_state(config)

    scores: list[SplitScore] = []
    per_selector: list[list[float]] = []
    summaries: list[SelectorSummary] = []
    for sel_index, (groups, cols) in enumerate(zip(config.selectors, column_sets)):
        name = selector_name(groups)
        X = table.matrix[:, cols]
        accs: list[float] = []
        f1s: list[float] = []
        for rep, fold, train, test in splits:
            clf = RandomForestClassifier(
                n_estimators=N_TREES,
                random_state=_rf_seed(state, rep, fold, sel_index, config.repetitions),
                n_jobs=-1,
            )
            clf.fit(X[train], labels[train])
            predicted = clf.predict(X[test])
            acc = float(accuracy_score(labels[test], predicted))
            f1 = float(f1_score(labels[test], predicted, average="macro"))
            scores.append(SplitScore(name, rep, fold, acc, f1))
            accs.append(acc)
            f1s.append(f1)
        per_selector.append(accs)
        summaries.append(
            SelectorSummary(
                name,
                float(np.mean(accs)),
                float(np.std(accs)),
                float(np.mean(f1s)),
                float(np.std(f1s)),
            )
        )

    pairs: list[tuple[str, str, float | None]] = []
    if len(splits) >= 10:
        for i in range(len(config.selectors)):
            for j in range(i + 1, len(config.selectors)):
                try:
                    p = wilcoxon_compare(per_selector[i], per_selector[j])
                except AllTies:
                    p = None
                pairs.append((summaries[i].selector, summaries[j].selector, p))

    return ResultTable(
        config.folds,
        config.repetitions,
        config.seed,
        table.n_rows,
        classes,
        tuple(summaries),
        tuple(scores),
        tuple(pairs),
    )


def feature_importance(
    table: FeatureTable, config: ExperimentConfig, groups: Sequence[str]
) -> ImportanceReport:
    """Impurity-based ranking from one forest fit on every row.

    ``degenerate`` flags the all-zero case (no split ever reduced impurity,
    e.g. constant features); the ranking is then meaningless and rendered
    as such rather than dressed up as an ordering.
    """
    labels = np.asarray(table.labels)
    if len(set(table.labels)) < 2:
        raise DegenerateLabels("need at least two classes")
    cols = select_columns(table, groups)
    clf = RandomForestClassifier(
        n_estimators=N_TREES, random_state=int(config.seed) % 2**32, n_jobs=-1
    )
    clf.fit(table.matrix[:, cols], labels)
    importances = clf.feature_importances_
    names = [table.columns[c] for c in cols]
    order = sorted(range(len(cols)), key=lambda i: (-importances[i], names[i]))
    ranking = tuple(
        (names[i], float(importances[i])) for i in order[: config.top_k]
    )
    shares = tuple(
        (
            key,
            float(
                sum(
                    importances[i]
                    for i, c in enumerate(cols)
                    if table.columns[c].startswith(prefix)
                )
            ),
        )
        for key, prefix in (("ce", "CE_stat_"), ("trad", "TRAD_stat_"), ("wl", "wl_"))
        if any(table.columns[c].startswith(prefix) for c in cols)
    )
    return ImportanceReport(
        selector_name(groups), ranking, shares, bool(np.all(importances == 0.0))
    )


def wilcoxon_compare(a: Sequence[float], b: Sequence[float]) -> float:
    """Two-sided signed-rank p-value for paired score vectors."""
    x = np.asarray(a, dtype=float)
    y = np.asarray(b, dtype=float)
    if x.ndim != 1 or x.shape != y.shape:
        raise InvalidConfig(
            f"paired score vectors must share one length, got {x.shape} and {y.shape}"
        )
    if len(x) < 10:
        raise InvalidConfig(f"need at least 10 paired scores, got {len(x)}")
    if np.all(x == y):
        raise AllTies("score vectors are identical everywhere")
    return float(stats.wilcoxon(x, y, alternative="two-sided").pvalue)
