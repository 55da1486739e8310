"""Exact distributions, metric geometry, and CLT experiments for
descent-type permutation statistics."""

from .cltlab import (
    BivariateReport,
    CoincidenceReport,
    InteractionGraph,
    InteractionReport,
    McReport,
    ScalingReport,
    bivariate_experiment,
    build_graph,
    check_interaction_rule,
    coincidence_rate,
    degree_bound,
    delta_j,
    ks_to_normal,
    mc_statistic,
    theorem4_scaling,
    theorem4_terms,
    w1_to_normal,
)
from .exact import (
    BivariateDescentTable,
    ExactDistribution,
    ExactMoments,
    bivariate_brute,
    bivariate_gf,
    bivariate_recurrence,
    carlitz_support_check,
    carlitz_zero_predicted,
    descent_covariance_exact,
    descent_mean,
    descent_pair_correlation,
    descent_pair_covariance,
    descent_pair_product_mean,
    descent_product_mean_exact,
    descent_variance,
    eulerian_row,
    irwin_hall_cell,
    kolmogorov_to_normal,
    moments,
    pitman_bound,
    t_distribution,
    t_mean,
    t_variance,
    verify_euler_identity,
)
from .metrics import (
    METRIC_KINDS,
    ViolationReport,
    ViolationTriple,
    descent_graph_distance,
    distance,
    edge_equality_fraction,
    invariance_check,
    search_triangle_violations,
)
from .perm import (
    Permutation,
    PointConfiguration,
    enumerate_all,
    from_points,
    parse_perm,
    random_points,
    sample_uniform,
)
from .rng import SeededRng, child_seed
from .stats import (
    AuxStatistics,
    LocalStatistic,
    aux_statistics,
    descents,
    local_from_json,
    local_to_json,
    peaks,
    t_statistic,
    uniform_local,
)

__version__ = "0.1.0"

__all__ = [
    "AuxStatistics",
    "BivariateDescentTable",
    "BivariateReport",
    "CoincidenceReport",
    "ExactDistribution",
    "ExactMoments",
    "InteractionGraph",
    "InteractionReport",
    "LocalStatistic",
    "METRIC_KINDS",
    "McReport",
    "Permutation",
    "PointConfiguration",
    "ScalingReport",
    "SeededRng",
    "ViolationReport",
    "ViolationTriple",
    "aux_statistics",
    "bivariate_brute",
    "bivariate_experiment",
    "bivariate_gf",
    "bivariate_recurrence",
    "build_graph",
    "carlitz_support_check",
    "carlitz_zero_predicted",
    "check_interaction_rule",
    "child_seed",
    "coincidence_rate",
    "degree_bound",
    "delta_j",
    "descent_covariance_exact",
    "descent_graph_distance",
    "descent_mean",
    "descent_pair_correlation",
    "descent_pair_covariance",
    "descent_pair_product_mean",
    "descent_product_mean_exact",
    "descent_variance",
    "descents",
    "distance",
    "edge_equality_fraction",
    "enumerate_all",
    "eulerian_row",
    "from_points",
    "invariance_check",
    "irwin_hall_cell",
    "kolmogorov_to_normal",
    "ks_to_normal",
    "local_from_json",
    "local_to_json",
    "mc_statistic",
    "moments",
    "parse_perm",
    "peaks",
    "pitman_bound",
    "random_points",
    "sample_uniform",
    "search_triangle_violations",
    "t_distribution",
    "t_mean",
    "t_statistic",
    "t_variance",
    "theorem4_scaling",
    "theorem4_terms",
    "uniform_local",
    "verify_euler_identity",
    "w1_to_normal",
]
