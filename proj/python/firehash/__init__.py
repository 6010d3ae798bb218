"""Hash-based outlier scoring and streaming classification."""

from ._core import (
    Error,
    average_precision,
    evaluate,
    fire1_scores,
    fire_scores,
    gen_drift_stream,
    gen_planted,
    iqr_flags,
    oscore_histogram,
    prequential,
    roc_auc,
    score_unseen,
)

__all__ = [
    "Error",
    "average_precision",
    "evaluate",
    "fire1_scores",
    "fire_scores",
    "gen_drift_stream",
    "gen_planted",
    "iqr_flags",
    "oscore_histogram",
    "prequential",
    "roc_auc",
    "score_unseen",
]
