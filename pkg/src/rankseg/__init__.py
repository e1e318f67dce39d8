"""Rank-based multiple change-point detection via expanding-interval isolation.

The detector scans alternating right- and left-expanding intervals so that
each true change-point is examined, with high probability, in an interval
containing no other change-point, then tests the best split against a
``C * sqrt(log T)`` threshold on a mean-dominant norm of weighted ECDF
differences. An information-criterion pipeline (overestimate, order by
importance, select by a Schwarz-type criterion) removes the dependence on the
threshold constant. All statistics depend on the data only through ranks, so
results are invariant under strictly increasing transformations.
"""

from .aggregation import ContrastProfile, Norm, aggregate, norm_value
from .contrast import (
    CusumTable,
    EvalPoints,
    Series,
    as_series,
    cusum,
    ecdf,
    full_points,
    grid_points,
    rescale_factors,
    rescale_sd,
)
from .detector import (
    DetectorConfig,
    ExpansionSchedule,
    RestartRule,
    Segmentation,
    StopRule,
    default_constant,
    detect,
    expansion_sequences,
    interval_sequences,
    threshold,
)
from .evaluation import Replication, StudyReport, hausdorff, largest_segment, replicate_study
from .selector import (
    BicResult,
    SolutionPath,
    bic_penalty,
    bic_select,
    detect_bic,
    overestimate,
    segment,
    solution_path,
    st_likelihood,
)
from .simulate import ModelSpec, generate, list_models, parse_model

__version__ = "0.1.0"

__all__ = [
    "ContrastProfile",
    "Norm",
    "aggregate",
    "norm_value",
    "CusumTable",
    "EvalPoints",
    "Series",
    "as_series",
    "cusum",
    "ecdf",
    "full_points",
    "grid_points",
    "rescale_factors",
    "rescale_sd",
    "DetectorConfig",
    "ExpansionSchedule",
    "RestartRule",
    "Segmentation",
    "StopRule",
    "default_constant",
    "detect",
    "expansion_sequences",
    "interval_sequences",
    "threshold",
    "Replication",
    "StudyReport",
    "hausdorff",
    "largest_segment",
    "replicate_study",
    "BicResult",
    "SolutionPath",
    "bic_penalty",
    "bic_select",
    "detect_bic",
    "overestimate",
    "segment",
    "solution_path",
    "st_likelihood",
    "ModelSpec",
    "generate",
    "list_models",
    "parse_model",
    "__version__",
]
