"""Morphological specialisation of word vector spaces."""

from ._core import (
    InputError,
    MorphfitError,
    TrainingConfig,
    VectorStore,
    antonym_candidates,
    build_constraints,
    evaluate,
    fit,
    inflections,
    morph_fix,
    neighbors,
    spearman,
)

__all__ = [
    "InputError",
    "MorphfitError",
    "TrainingConfig",
    "VectorStore",
    "antonym_candidates",
    "build_constraints",
    "evaluate",
    "fit",
    "inflections",
    "morph_fix",
    "neighbors",
    "spearman",
]
