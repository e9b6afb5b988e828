"""Benchmarking and scoring of smart-contract analyzers."""

from ._core import (
    ScbenchError,
    ahp,
    class_for_marker,
    class_ids,
    cli,
    compat_score,
    corpus_stats,
    efficiency_scores,
    ewm,
    functional_score,
    load_pairwise,
    md5_hex,
    normalize_source,
    overall_scores,
    parse_annotations,
    prf,
    run_campaign,
)

__all__ = [
    "ScbenchError",
    "ahp",
    "class_for_marker",
    "class_ids",
    "cli",
    "compat_score",
    "corpus_stats",
    "efficiency_scores",
    "ewm",
    "functional_score",
    "load_pairwise",
    "md5_hex",
    "normalize_source",
    "overall_scores",
    "parse_annotations",
    "prf",
    "run_campaign",
]
