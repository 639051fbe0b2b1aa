"""Embeddings of finite metric spaces by measured descent."""

from ._mdembed import (
    DiameterViolation,
    DistortionReport,
    Error,
    EtaReport,
    FiniteMetric,
    FrechetEmbedding,
    InvalidInput,
    LinfEmbedding,
    ParseError,
    Partition,
    WeightedGraph,
    affine_hull_distance,
    as_metric,
    aspect_ratio,
    ckr_partition,
    distortion,
    doubling_constant,
    embed_bourgain_small,
    embed_measured_descent,
    embed_theorem_pad,
    embed_theorem_yuri,
    embed_volume,
    epsilon_mu,
    exact_padding_oracle,
    generate,
    linf_dimension,
    metric_from_graph,
    simplex_volume,
    tree_volume,
    v_mu,
    volume_eta_report,
)

__all__ = [name for name in dir() if not name.startswith("_")]
