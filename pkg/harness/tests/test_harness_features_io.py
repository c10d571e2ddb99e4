import numpy as np
import pytest

from harness import (
    InvalidConfig,
    MalformedFeatures,
    MissingColumns,
    load_feature_table,
    select_columns,
)
from _fixtures import ALL_COLS, separable_csv, write_feature_csv


def test_round_trip(tmp_path):
    path = tmp_path / "f.csv"
    write_feature_csv(path, ["CE_stat_0", "wl_7"], [("g0", "A", [1.5, 0.0]), ("g1", "B", [-2.0, 3.0])])
    table = load_feature_table(path)
    assert table.graph_ids == ("g0", "g1")
    assert table.labels == ("A", "B")
    assert table.columns == ("CE_stat_0", "wl_7")
    assert table.matrix.shape == (2, 2)
    assert table.matrix[1, 0] == -2.0
    assert table.n_rows == 2


def test_missing_id_and_label_columns(tmp_path):
    path = tmp_path / "f.csv"
    path.write_text("id,y,CE_stat_0\n0,A,1.0\n")
    with pytest.raises(MissingColumns):
        load_feature_table(path)


def test_no_feature_columns(tmp_path):
    path = tmp_path / "f.csv"
    path.write_text("graphId,label\n0,A\n")
    with pytest.raises(MissingColumns):
        load_feature_table(path)


def test_duplicate_feature_column(tmp_path):
    path = tmp_path / "f.csv"
    path.write_text("graphId,label,CE_stat_0,CE_stat_0\n0,A,1.0,2.0\n")
    with pytest.raises(MalformedFeatures, match="duplicate"):
        load_feature_table(path)


def test_ragged_row_reports_line_number(tmp_path):
    path = tmp_path / "f.csv"
    path.write_text("graphId,label,CE_stat_0\n0,A,1.0\n1,B\n")
    with pytest.raises(MalformedFeatures, match="line 3"):
        load_feature_table(path)


def test_non_numeric_cell(tmp_path):
    path = tmp_path / "f.csv"
    path.write_text("graphId,label,CE_stat_0\n0,A,oops\n")
    with pytest.raises(MalformedFeatures, match="line 2"):
        load_feature_table(path)


def test_empty_file_and_header_only(tmp_path):
    empty = tmp_path / "empty.csv"
    empty.write_text("")
    with pytest.raises(MalformedFeatures):
        load_feature_table(empty)
    header_only = tmp_path / "h.csv"
    header_only.write_text("graphId,label,CE_stat_0\n")
    with pytest.raises(MalformedFeatures, match="no rows"):
        load_feature_table(header_only)


def test_select_columns_groups_and_order(tmp_path):
    table = load_feature_table(separable_csv(tmp_path / "f.csv"))
    ce = select_columns(table, ["ce"])
    assert [table.columns[i] for i in ce] == [c for c in ALL_COLS if c.startswith("CE_")]
    both = select_columns(table, ["wl", "ce"])
    # header order, not selector order
    assert [table.columns[i] for i in both] == [
        c for c in table.columns if c.startswith(("CE_stat_", "wl_"))
    ]
    assert select_columns(table, ["trad"]) == [4, 5]


def test_select_columns_unknown_group(tmp_path):
    table = load_feature_table(separable_csv(tmp_path / "f.csv"))
    with pytest.raises(InvalidConfig, match="unknown feature group"):
        select_columns(table, ["degree"])


def test_select_columns_absent_group(tmp_path):
    path = tmp_path / "f.csv"
    write_feature_csv(path, ["CE_stat_0"], [("0", "A", [1.0]), ("1", "B", [2.0])])
    table = load_feature_table(path)
    with pytest.raises(MissingColumns, match="wl"):
        select_columns(table, ["wl"])


def test_matrix_is_float64(tmp_path):
    table = load_feature_table(separable_csv(tmp_path / "f.csv"))
    assert table.matrix.dtype == np.float64
