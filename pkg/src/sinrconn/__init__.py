"""Connectivity of uniform-power SINR networks under channel colorings."""

__version__ = "0.1.0"

from .analysis import (
    ExpSeqWitness,
    GapWitness,
    InterferenceProfile,
    MinColorResult,
    ScalingFit,
    coarse_colors_2d,
    detect_exponential_sequence,
    detect_gap_condition,
    fit_scaling,
    gamma_threshold,
    grid_interference_envelope,
    interference_profile,
    min_colors_exhaustive,
    min_k_regular,
    sufficient_k_1d,
    sufficient_k_2d,
    zeta_partial,
)
from .core import Coloring, NodeSet, SinrGraph, SinrParams, ValidationError, distance, validate
from .generators import (
    RandomSpec,
    enumerate_colorings,
    grid_1d,
    grid_2d,
    regular_coloring_1d,
    regular_coloring_2d,
    sample_uniform_1d,
)
from .sinr import (
    EdgeEvaluation,
    build_graph,
    interference_at,
    is_connected,
    is_strongly_connected,
    sinr_edge,
    strong_components,
)
