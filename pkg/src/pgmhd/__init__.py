"""Leveled frequency-weighted graphical model for massive hierarchical data.

Training accumulates co-occurrence frequencies on arcs between adjacent
levels; all probabilistic queries (classification, similarity, ambiguity)
are answered lazily from those raw counts at query time.
"""

from .ambiguity import AmbiguityReport, Sense, ambiguity_report, npmi
from .errors import (
    CorruptModelError,
    FormatError,
    FrozenGraphError,
    NoAssociationError,
    PgmhdError,
    StructuralError,
    UndefinedDistributionError,
    UnknownNodeError,
)
from .graph import LeveledGraph, Node
from .infer import (
    Classification,
    ClassScore,
    SmoothingParams,
    UNSMOOTHED,
    classification_score,
    classify_instance,
    classify_path,
    m_estimate_score,
)
from .ingest import (
    Observation,
    ParseStats,
    SearchLogRow,
    normalize_label,
    parse_paths,
    parse_search_log,
    row_to_observations,
)
from .learn import TrainReport, learn_observation, train_sharded, train_stream
from .persist import load, save
from .similar import SimilarityResult, co_score, edge_prob, related_terms

__version__ = "0.1.0"

__all__ = [
    "AmbiguityReport",
    "Classification",
    "ClassScore",
    "CorruptModelError",
    "FormatError",
    "FrozenGraphError",
    "LeveledGraph",
    "NoAssociationError",
    "Node",
    "Observation",
    "ParseStats",
    "PgmhdError",
    "SearchLogRow",
    "Sense",
    "SimilarityResult",
    "SmoothingParams",
    "StructuralError",
    "TrainReport",
    "UNSMOOTHED",
    "UndefinedDistributionError",
    "UnknownNodeError",
    "ambiguity_report",
    "classification_score",
    "classify_instance",
    "classify_path",
    "co_score",
    "edge_prob",
    "learn_observation",
    "load",
    "m_estimate_score",
    "normalize_label",
    "npmi",
    "parse_paths",
    "parse_search_log",
    "related_terms",
    "row_to_observations",
    "save",
    "train_sharded",
    "train_stream",
]
