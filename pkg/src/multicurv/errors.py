"""Exception hierarchy with stable, machine-readable categories.

Every error raised by this package carries a ``category`` string which the
CLI prints verbatim (``error[Category]: message``), so scripted callers can
dispatch on the category without parsing prose.

Structural invariant violations (bad weights, duplicate edges, index range
errors and the like) subclass :class:`ValidationError`, so file parsing can
be guarded with a single ``except ValidationError`` while the category stays
specific.
"""

from __future__ import annotations

__all__ = [
    "MulticurvError",
    "ValidationError",
    "NonPositiveWeight",
    "DuplicateEdge",
    "SelfLoop",
    "IndexOutOfRange",
    "MismatchedVertexCounts",
    "EmptyLayerList",
    "EdgeNotFound",
    "NotAnInterEdge",
    "NotACompileGraph",
    "VertexNotOnEdge",
    "SameEdge",
    "NoEdges",
    "DegenerateGraph",
    "InvalidSpec",
    "InvalidConfig",
    "GraphFileSyntaxError",
]


class MulticurvError(Exception):
    """Base class for all errors raised by multicurv."""

    category = "Error"


class ValidationError(MulticurvError):
    """A graph or document is well-formed but violates an invariant."""

    category = "ValidationError"


class NonPositiveWeight(ValidationError):
    """A vertex or edge weight is not a strictly positive finite number."""

    category = "NonPositiveWeight"


class DuplicateEdge(ValidationError):
    category = "DuplicateEdge"


class SelfLoop(ValidationError):
    category = "SelfLoop"


class IndexOutOfRange(ValidationError):
    """A vertex or layer index falls outside the declared range."""

    category = "IndexOutOfRange"


class MismatchedVertexCounts(ValidationError):
    category = "MismatchedVertexCounts"


class EmptyLayerList(ValidationError):
    category = "EmptyLayerList"


class EdgeNotFound(MulticurvError):
    category = "EdgeNotFound"


class NotAnInterEdge(MulticurvError):
    """The named edge does not join two layer copies of one vertex."""

    category = "NotAnInterEdge"


class NotACompileGraph(MulticurvError):
    """The operation needs inter-layer weights derived from the layers."""

    category = "NotACompileGraph"


class VertexNotOnEdge(MulticurvError):
    category = "VertexNotOnEdge"


class SameEdge(MulticurvError):
    category = "SameEdge"


class NoEdges(MulticurvError):
    category = "NoEdges"


class DegenerateGraph(MulticurvError):
    """The graph lacks the structure an algorithm needs to proceed."""

    category = "DegenerateGraph"


class InvalidSpec(MulticurvError):
    """A generator specification is malformed or incomplete."""

    category = "InvalidSpec"


class InvalidConfig(MulticurvError):
    """A run configuration is inconsistent (CLI-level misuse)."""

    category = "InvalidConfig"


class GraphFileSyntaxError(MulticurvError):
    """Graph file is not even well-formed; reports line and column."""

    category = "SyntaxError"

    def __init__(self, message: str, line: int | None = None, column: int | None = None):
        if line is not None:
            message = f"{message} (line {line}, column {column})"
        super().__init__(message)
        self.line = line
        self.column = column
