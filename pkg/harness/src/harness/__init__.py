"""Random-forest benchmark harness for per-graph feature CSVs.

Consumes the feature tables written by ``multicurv features`` (or any CSV
with the same column conventions) and produces seeded, byte-reproducible
comparison tables: accuracy and macro-F1 per feature group, impurity
importance rankings, and paired Wilcoxon signed-rank tests between groups.
The harness never touches graph files; the CSV is the entire interface.
"""

from .errors import (
    AllTies,
    DegenerateLabels,
    HarnessError,
    InvalidConfig,
    MalformedFeatures,
    MissingColumns,
)
from .experiment import (
    N_TREES,
    ExperimentConfig,
    ImportanceReport,
    ResultTable,
    SelectorSummary,
    SplitScore,
    feature_importance,
    make_splits,
    run_comparison,
    selector_name,
    wilcoxon_compare,
)
from .features_io import (
    GROUP_PREFIXES,
    FeatureTable,
    load_feature_table,
    select_columns,
)
from .render import (
    format_mean_std,
    render_markdown,
    write_importance_csv,
    write_scores_csv,
    write_summary_csv,
    write_wilcoxon_csv,
)

__version__ = "0.1.0"

__all__ = [
    "AllTies",
    "DegenerateLabels",
    "ExperimentConfig",
    "FeatureTable",
    "GROUP_PREFIXES",
    "HarnessError",
    "ImportanceReport",
    "InvalidConfig",
    "MalformedFeatures",
    "MissingColumns",
    "N_TREES",
    "ResultTable",
    "SelectorSummary",
    "SplitScore",
    "feature_importance",
    "format_mean_std",
    "load_feature_table",
    "make_splits",
    "render_markdown",
    "run_comparison",
    "select_columns",
    "selector_name",
    "wilcoxon_compare",
    "write_importance_csv",
    "write_scores_csv",
    "write_summary_csv",
    "write_wilcoxon_csv",
]
