"""User-based collaborative filtering accelerated by facet-style overlap pre-filtering."""

from ._core import (
    Algorithm,
    InteractionStore,
    IngestError,
    Moments,
    ProfileError,
    ProfileReport,
    RecommenderProfile,
    SimilarityMetric,
    SplitResult,
    SyntheticSpec,
    UserRecord,
    __version__,
    density,
    evaluate_profile,
    facet_top_n,
    generate_synthetic,
    ingest_file,
    load_profiles,
    load_profiles_file,
    moments,
    ndcg_at,
    neighborhood_size,
    precision_at,
    recall_at,
    recommend,
    select_neighbors,
    similarity,
    split,
)

__all__ = [
    "Algorithm",
    "InteractionStore",
    "IngestError",
    "Moments",
    "ProfileError",
    "ProfileReport",
    "RecommenderProfile",
    "SimilarityMetric",
    "SplitResult",
    "SyntheticSpec",
    "UserRecord",
    "__version__",
    "density",
    "evaluate_profile",
    "facet_top_n",
    "generate_synthetic",
    "ingest_file",
    "load_profiles",
    "load_profiles_file",
    "moments",
    "ndcg_at",
    "neighborhood_size",
    "precision_at",
    "recall_at",
    "recommend",
    "select_neighbors",
    "similarity",
    "split",
]
