import numpy as np
import pytest

from harness import (
    AllTies,
    DegenerateLabels,
    ExperimentConfig,
    InvalidConfig,
    feature_importance,
    load_feature_table,
    make_splits,
    run_comparison,
    selector_name,
    wilcoxon_compare,
)
from _fixtures import (
    constant_csv,
    noise_csv,
    separable_csv,
    shuffled_csv,
    single_class_csv,
    write_feature_csv,
)


@pytest.mark.parametrize(
    "kwargs",
    [
        {"selectors": ()},
        {"selectors": (("ce",), ())},
        {"selectors": (("ce",),), "folds": 1},
        {"selectors": (("ce",),), "repetitions": 0},
        {"selectors": (("ce",),), "top_k": 0},
    ],
)
def test_config_validation(kwargs):
    with pytest.raises(InvalidConfig):
        ExperimentConfig(**kwargs)


def test_selector_name():
    assert selector_name(("wl", "ce")) == "wl+ce"


def test_separable_features_reach_the_ceiling(tmp_path):
    table = load_feature_table(separable_csv(tmp_path / "f.csv"))
    result = run_comparison(table, ExperimentConfig(selectors=(("ce",),), seed=7))
    (summary,) = result.summaries
    assert summary.mean_accuracy == 1.0
    assert summary.std_accuracy == 0.0
    assert summary.mean_macro_f1 == 1.0


def test_shuffled_labels_sit_at_chance(tmp_path):
    table = load_feature_table(shuffled_csv(tmp_path / "f.csv", n=80))
    config = ExperimentConfig(selectors=(("ce",),), repetitions=10, seed=11)
    result = run_comparison(table, config)
    (summary,) = result.summaries
    # Null std of a 5-fold mean with 16-row test sets; repetitions reuse the
    # same rows, so they are not counted as extra independent splits.
    band = 3.0 * (0.25 / 16 / 5) ** 0.5
    assert abs(summary.mean_accuracy - 0.5) < band


def test_single_class_is_degenerate(tmp_path):
    table = load_feature_table(single_class_csv(tmp_path / "f.csv"))
    with pytest.raises(DegenerateLabels):
        run_comparison(table, ExperimentConfig(selectors=(("ce",),)))


def test_class_smaller_than_fold_count(tmp_path):
    path = tmp_path / "f.csv"
    rows = [(str(i), "A", [float(i)]) for i in range(8)] + [("8", "B", [9.0])]
    write_feature_csv(path, ["CE_stat_0"], rows)
    table = load_feature_table(path)
    with pytest.raises(InvalidConfig):
        run_comparison(table, ExperimentConfig(selectors=(("ce",),)))


def test_splits_are_stratified(tmp_path):
    path = tmp_path / "f.csv"
    labels = ["A"] * 60 + ["B"] * 20
    rows = [(str(i), labels[i], [float(i)]) for i in range(80)]
    write_feature_csv(path, ["CE_stat_0"], rows)
    table = load_feature_table(path)
    config = ExperimentConfig(selectors=(("ce",),), repetitions=2, seed=3)
    for _, _, train, test in make_splits(table.labels, config):
        assert sorted(labels[i] for i in test) == ["A"] * 12 + ["B"] * 4
        assert len(train) + len(test) == 80


def test_scores_are_paired_across_selectors(tmp_path):
    table = load_feature_table(noise_csv(tmp_path / "f.csv", n=40))
    config = ExperimentConfig(
        selectors=(("ce",), ("trad",), ("wl",)), repetitions=3, seed=5
    )
    result = run_comparison(table, config)
    by_selector = {}
    for s in result.scores:
        by_selector.setdefault(s.selector, []).append((s.repetition, s.fold))
    keys = list(by_selector.values())
    assert keys[0] == keys[1] == keys[2]
    assert len(keys[0]) == 15


def test_identical_config_reproduces_identical_results(tmp_path):
    table = load_feature_table(noise_csv(tmp_path / "f.csv", n=40))
    config = ExperimentConfig(selectors=(("ce",), ("wl",)), repetitions=2, seed=9)
    assert run_comparison(table, config) == run_comparison(table, config)


def test_seed_changes_the_scores(tmp_path):
    table = load_feature_table(noise_csv(tmp_path / "f.csv", n=40))
    a = run_comparison(table, ExperimentConfig(selectors=(("ce",),), seed=1))
    b = run_comparison(table, ExperimentConfig(selectors=(("ce",),), seed=2))
    assert a.scores != b.scores


def test_wilcoxon_requires_ten_splits(tmp_path):
    table = load_feature_table(separable_csv(tmp_path / "f.csv"))
    one_rep = run_comparison(
        table, ExperimentConfig(selectors=(("ce",), ("trad",)), seed=1)
    )
    assert one_rep.wilcoxon == ()
    two_reps = run_comparison(
        table, ExperimentConfig(selectors=(("ce",), ("trad",)), repetitions=2, seed=1)
    )
    assert len(two_reps.wilcoxon) == 1


def test_wilcoxon_ties_render_as_none(tmp_path):
    # Both selectors include the informative column, so both score vectors
    # are all ones and the pair is reported without a p-value.
    table = load_feature_table(separable_csv(tmp_path / "f.csv"))
    config = ExperimentConfig(selectors=(("ce",), ("ce", "trad")), repetitions=2, seed=1)
    result = run_comparison(table, config)
    ((a, b, p),) = result.wilcoxon
    assert (a, b) == ("ce", "ce+trad")
    assert p is None


def test_wilcoxon_compare_contract():
    with pytest.raises(AllTies):
        wilcoxon_compare([0.5] * 20, [0.5] * 20)
    with pytest.raises(InvalidConfig):
        wilcoxon_compare([0.1] * 9, [0.2] * 9)
    with pytest.raises(InvalidConfig):
        wilcoxon_compare([0.1] * 12, [0.2] * 11)
    a = np.linspace(0.0, 1.0, 100)
    p = wilcoxon_compare(a, a + 1.0)
    assert p < 0.01


def test_wilcoxon_compare_tolerates_partial_ties():
    a = [0.5] * 30
    b = [0.5] * 15 + [0.6] * 15
    p = wilcoxon_compare(a, b)
    assert 0.0 <= p <= 1.0


def test_importance_ranks_informative_feature_first(tmp_path):
    table = load_feature_table(separable_csv(tmp_path / "f.csv", n=60))
    config = ExperimentConfig(selectors=(("ce", "trad"),), seed=4)
    report = feature_importance(table, config, ("ce", "trad"))
    assert report.selector == "ce+trad"
    assert report.ranking[0][0] == "CE_stat_0"
    assert not report.degenerate
    shares = dict(report.group_shares)
    assert set(shares) == {"ce", "trad"}
    assert shares["ce"] > shares["trad"]
    assert shares["ce"] + shares["trad"] == pytest.approx(1.0)


def test_importance_on_constant_features_is_flagged(tmp_path):
    table = load_feature_table(constant_csv(tmp_path / "f.csv"))
    report = feature_importance(
        table, ExperimentConfig(selectors=(("ce",),), seed=4), ("ce",)
    )
    assert report.degenerate
    assert all(value == 0.0 for _, value in report.ranking)


def test_importance_top_k_truncates(tmp_path):
    table = load_feature_table(separable_csv(tmp_path / "f.csv"))
    config = ExperimentConfig(selectors=(("ce",),), seed=4, top_k=2)
    report = feature_importance(table, config, ("ce",))
    assert len(report.ranking) == 2
