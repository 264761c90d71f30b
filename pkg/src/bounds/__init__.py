# Bounds Module - Comparison Inequalities, Lemmas and Constant Fitting
from .model import BOUND_REGISTRY, PAIR_BOUND_IDS, BoundCheck, BoundSpec, get_bound_spec
from .comparisons import (
    WP_MONOTONE_ORDERS,
    WQ_WP_ORDERS,
    check_bhvv,
    check_classical_bl_tv,
    check_classical_bl_w1,
    check_h_tv,
    check_kolmogorov_tv,
    check_pinsker,
    check_tv_bl,
    check_w1_bl,
    check_wp_monotone,
    check_wq_wp,
)
from .lemmas import (
    bobkov_madiman_variance,
    check_bobkov_madiman,
    check_eldan_klartag,
    check_isotropic_constant,
    check_max_entropy,
    check_min_lemma,
    check_paouris_moment,
    check_paouris_tail,
    check_smoothing_tradeoff,
    check_truncation_tradeoff,
    chi_moment,
    chi_tail,
    deconvolution_gap_1d,
    gaussian_reweighting_identities,
    isotropic_constant,
    isotropy_counterexample,
    min_lemma_bound,
    min_lemma_infimum,
    moment_convergence,
    paouris_moment,
    paouris_tail,
    smooth_density_1d,
)
from .fitting import (
    FitResult,
    catalog_pair_suite,
    evaluate_pair_bounds,
    fit_constant,
    fit_suite,
)
