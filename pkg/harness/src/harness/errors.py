"""Errors with stable categories, printed by the CLI as ``error[Category]``."""

from __future__ import annotations

__all__ = [
    "HarnessError",
    "MalformedFeatures",
    "MissingColumns",
    "DegenerateLabels",
    "AllTies",
    "InvalidConfig",
]


class HarnessError(Exception):
    category = "Error"


class MalformedFeatures(HarnessError):
    """The feature file parses as CSV but is not a usable feature table."""

    category = "MalformedFeatures"


class MissingColumns(HarnessError):
    """A required column, or every column of a selected group, is absent."""

    category = "MissingColumns"


class DegenerateLabels(HarnessError):
    """Fewer than two classes; nothing to cross-validate."""

    category = "DegenerateLabels"


class AllTies(HarnessError):
    """Paired score vectors are identical, so the signed-rank test is void."""

    category = "AllTies"


class InvalidConfig(HarnessError):
    category = "InvalidConfig"
