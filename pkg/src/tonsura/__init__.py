"""Anti-robust exploratory statistics for paired series.

Ordinary robust methods downweight extremes; this package does the
opposite.  It removes the observations closest to the center
(tonsuring), recomputes association measures on the extreme remainder,
and compares the resulting curves against seeded Gaussian null
envelopes.  Corner tail dependence, edge tail insulation, octant
population tables, and thresholded regression slopes round out the
toolkit.
"""

from .association import (
    AssociationValue,
    pearson,
    somers_dba,
    spearman,
    tonsured_scan,
)
from .distance import DistanceVector, l2_distances, r1_distances
from .engine import TonsureResult, tonsure_by_percent, tonsure_grid
from .errors import (
    ConstantSeries,
    ConstantSubset,
    DataError,
    DegenerateOctants,
    DegenerateStatistics,
    DegenerateSubset,
    EmptyAfterCleaning,
    InvalidPercent,
    NonPositiveLevel,
    NoSuchColumn,
    TonsuraError,
    TooFewAligned,
    TooFewSurvivors,
)
from .ingest import (
    AlignResult,
    ColumnSpec,
    LoadedColumn,
    align,
    load_column,
    transform_levels,
    transformed_column,
)
from .scans import (
    NullSettings,
    ScanCurve,
    ScanPoint,
    distances_for,
    run_beta_scan,
    run_octant_scan,
    run_tail_scan,
    run_tonsure_scan,
    series_digest,
)
from .series import (
    LOW_CONFIDENCE_FLOOR,
    Centroid,
    PairedSeries,
    RankedSeries,
    compute_centroid,
    compute_ranks,
)
from .simulate import (
    GandHSpec,
    GaussianPairSpec,
    NullEnvelope,
    gen_gaussian_pair,
    gh_transform,
    null_envelope,
)
from .tails import (
    OctantSummary,
    PseudoObservations,
    TailCurve,
    default_u_grid,
    octant_summary,
    pseudo_observations,
    tail_dependence,
    tail_insulation,
)

__version__ = "0.1.0"

__all__ = [
    "AlignResult",
    "AssociationValue",
    "Centroid",
    "ColumnSpec",
    "ConstantSeries",
    "ConstantSubset",
    "DataError",
    "DegenerateOctants",
    "DegenerateStatistics",
    "DegenerateSubset",
    "DistanceVector",
    "EmptyAfterCleaning",
    "GandHSpec",
    "GaussianPairSpec",
    "InvalidPercent",
    "LOW_CONFIDENCE_FLOOR",
    "LoadedColumn",
    "NoSuchColumn",
    "NonPositiveLevel",
    "NullEnvelope",
    "NullSettings",
    "OctantSummary",
    "PairedSeries",
    "PseudoObservations",
    "RankedSeries",
    "ScanCurve",
    "ScanPoint",
    "TailCurve",
    "TonsuraError",
    "TonsureResult",
    "TooFewAligned",
    "TooFewSurvivors",
    "align",
    "compute_centroid",
    "compute_ranks",
    "default_u_grid",
    "distances_for",
    "gen_gaussian_pair",
    "gh_transform",
    "l2_distances",
    "load_column",
    "null_envelope",
    "octant_summary",
    "pearson",
    "pseudo_observations",
    "r1_distances",
    "run_beta_scan",
    "run_octant_scan",
    "run_tail_scan",
    "run_tonsure_scan",
    "series_digest",
    "somers_dba",
    "spearman",
    "tail_dependence",
    "tail_insulation",
    "tonsure_by_percent",
    "tonsure_grid",
    "tonsured_scan",
    "transform_levels",
    "transformed_column",
]
