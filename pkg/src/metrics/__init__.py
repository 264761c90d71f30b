# Metrics Module - Distances Between Log-Concave Densities
from .result import MetricResult
from .one_dim import (
    bl_distance_1d,
    bl_dual_lp,
    kolmogorov_distance_1d,
    tv_distance_1d,
    w1_dual_1d,
    wasserstein_p_1d,
)
from .entropy import differential_entropy, relative_entropy
from .multi_dim import bl_distance_nd_bounds, tv_distance_nd, wasserstein_p_nd_upper
from .panel import METRIC_IDS, MetricPanel
