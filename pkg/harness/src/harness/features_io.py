"""Loading of per-graph feature tables.

The harness deliberately understands nothing about graphs. Its input is a
flat CSV, one row per graph: ``graphId``, ``label``, then numeric feature
columns. Column names carry the only semantics used here, through the group
prefixes ``CE_stat_`` (curvature statistics), ``TRAD_stat_`` (degree,
clustering and betweenness summaries) and ``wl_`` (Weisfeiler-Lehman
subtree counts). Anything else is rejected up front so a typo fails loudly
instead of silently training on the wrong columns.
"""

from __future__ import annotations

import csv
from pathlib import Path
from typing import NamedTuple, Sequence

import numpy as np

from .errors import InvalidConfig, MalformedFeatures, MissingColumns

__all__ = ["GROUP_PREFIXES", "FeatureTable", "load_feature_table", "select_columns"]

# Selector key -> column-name prefix. Selectors are combinations of keys.
GROUP_PREFIXES = {"ce": "CE_stat_", "trad": "TRAD_stat_", "wl": "wl_"}


class FeatureTable(NamedTuple):
    """A parsed feature CSV: ids, class labels, and a dense float matrix."""

    graph_ids: tuple[str, ...]
    labels: tuple[str, ...]
    columns: tuple[str, ...]
    matrix: np.ndarray

    @property
    def n_rows(self) -> int:
        return len(self.graph_ids)


def load_feature_table(path: str | Path) -> FeatureTable:
    with open(path, newline="") as fh:
        reader = csv.reader(fh)
        try:
            header = next(reader)
        except StopIteration:
            raise MalformedFeatures("feature file is empty") from None
        if header[:2] != ["graphId", "label"]:
            raise MissingColumns(
                "feature file must start with columns graphId,label; "
                f"got {header[:2]}"
            )
        columns = tuple(header[2:])
        if not columns:
            raise MissingColumns("feature file has no feature columns")
        seen = set()
        for name in columns:
            if name in seen:
                raise MalformedFeatures(f"duplicate feature column {name!r}")
            seen.add(name)
        ids: list[str] = []
        labels: list[str] = []
        rows: list[list[float]] = []
        for lineno, row in enumerate(reader, start=2):
            if len(row) != len(header):
                raise MalformedFeatures(
                    f"line {lineno}: expected {len(header)} fields, got {len(row)}"
                )
            ids.append(row[0])
            labels.append(row[1])
            try:
                rows.append([float(v) for v in row[2:]])
            except ValueError as exc:
                raise MalformedFeatures(f"line {lineno}: {exc}") from None
    if not rows:
        raise MalformedFeatures("feature file has a header but no rows")
    return FeatureTable(tuple(ids), tuple(labels), columns, np.asarray(rows))


def select_columns(table: FeatureTable, groups: Sequence[str]) -> list[int]:
    """Indices of the columns belonging to any of the selector ``groups``.

    Order follows the file header. Every group must be known and must match
    at least one column, so an empty design matrix cannot slip through.
    """
    prefixes = []
    for key in groups:
        try:
            prefixes.append(GROUP_PREFIXES[key])
        except KeyError:
            raise InvalidConfig(
                f"unknown feature group {key!r}; "
                f"expected one of {sorted(GROUP_PREFIXES)}"
            ) from None
    for key, prefix in zip(groups, prefixes):
        if not any(name.startswith(prefix) for name in table.columns):
            raise MissingColumns(f"no columns match group {key!r} (prefix {prefix!r})")
    return [
        i
        for i, name in enumerate(table.columns)
        if any(name.startswith(p) for p in prefixes)
    ]
