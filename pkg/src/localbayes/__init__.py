"""Neighborhood-weighted Bayes classification with baselines and a benchmark harness."""

from .classifiers import (
    KINDS,
    ClassifierSpec,
    ClassScore,
    FittedModel,
    fit,
    m_estimate_conditional,
    predict,
    score,
    spec_from_text,
    spec_to_text,
)
from .dataset import (
    CURATED_SUBSETS,
    Dataset,
    DatasetError,
    DatasetManifest,
    EmptyDatasetError,
    FoldPlan,
    MalformedRowError,
    RawTable,
    bundled_example_path,
    encode,
    load_csv,
    load_dataset,
    load_manifest,
    make_folds,
    select_features,
)
from .distance import DistanceConfig, compute_ranges, distance, pairwise_distances
from .evaluation import (
    ClassifierResult,
    EvalReport,
    ExperimentConfig,
    LeakageError,
    SweepResult,
    compare,
    cross_validate,
    evaluate_specs,
    resample_fold_plans,
    sweep,
)
from .example import (
    ExampleOutcome,
    crossing_kappa,
    load_example_split,
    run_example,
    score_ratio,
)
from .reporting import (
    REPORT_COLUMNS,
    format_curve_table,
    format_report_table,
    render_curve_figure,
    render_ratio_figure,
    render_report_figure,
    write_curve_csv,
    write_report_csv,
)

__version__ = "0.1.0"

__all__ = [
    "KINDS",
    "ClassifierSpec",
    "ClassScore",
    "FittedModel",
    "fit",
    "score",
    "predict",
    "m_estimate_conditional",
    "spec_to_text",
    "spec_from_text",
    "Dataset",
    "RawTable",
    "FoldPlan",
    "DatasetManifest",
    "DatasetError",
    "MalformedRowError",
    "EmptyDatasetError",
    "CURATED_SUBSETS",
    "load_csv",
    "encode",
    "select_features",
    "make_folds",
    "load_manifest",
    "load_dataset",
    "bundled_example_path",
    "DistanceConfig",
    "compute_ranges",
    "distance",
    "pairwise_distances",
    "ExperimentConfig",
    "ClassifierResult",
    "EvalReport",
    "SweepResult",
    "LeakageError",
    "cross_validate",
    "sweep",
    "compare",
    "evaluate_specs",
    "resample_fold_plans",
    "ExampleOutcome",
    "load_example_split",
    "score_ratio",
    "crossing_kappa",
    "run_example",
    "REPORT_COLUMNS",
    "format_report_table",
    "format_curve_table",
    "write_report_csv",
    "write_curve_csv",
    "render_curve_figure",
    "render_report_figure",
    "render_ratio_figure",
    "__version__",
]
