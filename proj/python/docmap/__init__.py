"""Document-map presentation server core: indexing, sub-query layers,
phrase clustering, map bundles, sessions and evaluation metrics."""

from ._core import (
    DocmapError,
    Index,
    Service,
    base_clusters,
    cluster_documents,
    cosine_sim,
    default_stopwords,
    eval_report,
    generate_layers,
    interpolated_precision_11pt,
    normalize_brightness,
    normalized_recall,
    percent_increase,
    precision_at_cutoff,
    score_base_cluster,
    term_weight,
    tokenize,
)

__all__ = [
    "DocmapError",
    "Index",
    "Service",
    "base_clusters",
    "cluster_documents",
    "cosine_sim",
    "default_stopwords",
    "eval_report",
    "generate_layers",
    "interpolated_precision_11pt",
    "normalize_brightness",
    "normalized_recall",
    "percent_increase",
    "precision_at_cutoff",
    "score_base_cluster",
    "term_weight",
    "tokenize",
]
