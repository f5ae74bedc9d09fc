"""cplxclust: complexity scoring and clustering of product types from
pass/fail inspection counts.

Each product type's failure fraction gets a Jeffreys-prior beta
posterior; types are compared with the closed-form Hellinger distance
between those posteriors, scored on a 0..10 scale by accumulating
distances along the median order, and grouped by complete-linkage
hierarchical clustering.
"""

from ._version import __version__
from .cluster import (
    ClusterAssignment,
    ClusterGroup,
    Dendrogram,
    agglomerate,
    cut,
    label_clusters,
)
from .errors import (
    CplxClustError,
    DataError,
    DomainError,
    NumericalError,
    SchemaError,
    UsageError,
)
from .estimator import ComplexityClusterer
from .hellinger import DistanceMatrix, build_matrix, hellinger_beta, hellinger_numeric
from .ingest import (
    BusinessShare,
    BusinessSummary,
    InspectionRecord,
    aggregate,
    expand_counts,
    read_aggregated,
    read_raw,
    top_n_by_business,
)
from .pipeline import RunConfig, analyze, run_pipeline
from .posterior import (
    BetaDist,
    FiveNumberSummary,
    TypeCounts,
    five_number_summary,
    fraction_nonconforming,
    median,
    posterior_from_counts,
    variance,
)
from .report import AnalysisReport, Provenance, emit_dendrogram, emit_report
from .scoring import ScoredType, raw_scores, scale_scores, score_types, sort_by_complexity
from .special import beta_quantile, log_beta, log_gamma, reg_inc_beta

__all__ = [
    "__version__",
    "AnalysisReport",
    "BetaDist",
    "BusinessShare",
    "BusinessSummary",
    "ClusterAssignment",
    "ClusterGroup",
    "ComplexityClusterer",
    "CplxClustError",
    "DataError",
    "Dendrogram",
    "DistanceMatrix",
    "DomainError",
    "FiveNumberSummary",
    "InspectionRecord",
    "NumericalError",
    "Provenance",
    "RunConfig",
    "SchemaError",
    "ScoredType",
    "TypeCounts",
    "UsageError",
    "aggregate",
    "agglomerate",
    "analyze",
    "beta_quantile",
    "build_matrix",
    "cut",
    "emit_dendrogram",
    "emit_report",
    "expand_counts",
    "five_number_summary",
    "fraction_nonconforming",
    "hellinger_beta",
    "hellinger_numeric",
    "label_clusters",
    "log_beta",
    "log_gamma",
    "median",
    "posterior_from_counts",
    "raw_scores",
    "read_aggregated",
    "read_raw",
    "reg_inc_beta",
    "run_pipeline",
    "scale_scores",
    "score_types",
    "sort_by_complexity",
    "top_n_by_business",
    "variance",
]
