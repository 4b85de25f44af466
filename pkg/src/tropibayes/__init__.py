"""Bayesian integrals on positive toric varieties by tropical sampling.

The library evaluates integrals of degree-0 ratios of positive homogeneous
polynomials against the canonical measure of a projective toric variety:
exact rational tropical integrals by sector decomposition, Monte Carlo and
deterministic cubature for the classical values, rejection sampling from
prior and posterior densities, and the polytope-based statistical models
(linear, Wachspress, toric, hidden-coin mixture) these serve.
"""

from .rational_geometry import (
    GeometryError,
    LatticePolytope,
    PolyhedralFan,
    RationalCone,
    convex_hull,
    minkowski_sum,
    minkowski_sum_list,
    normal_fan,
    relative_interior_contains,
    simplicial_refine,
)
from .toric_core import (
    PositivePolynomial,
    ToricData,
    ToricError,
    cauchy_binet_check,
    check_same_degree,
    degree_of_monomial,
    dehomogenize,
    grading_matrix,
    homogenize_pair,
    is_homogeneous,
    p1_power,
    pentagon_surface,
    projective_space,
    tropicalize_eval,
)
from .tropical_engine import (
    AmbiguousVertexError,
    ConvergenceError,
    FactoredPolynomial,
    Sector,
    SectorTable,
    build_sectors,
    convergence_check,
    cube_map,
    dehomogenized_newton,
    h_bounds,
    h_ratio,
    log_h,
)
from .sampler import (
    AliasTable,
    CubatureResult,
    MCResult,
    SampleBatch,
    cubature_integral,
    draw_tropical,
    mc_estimate,
    rejection_sample,
    sample_tropical,
    stddev_bound,
)
from .models import (
    Dataset,
    MarginalLikelihood,
    ModelError,
    ModelSpec,
    PolytopeH,
    adjoint,
    bayes_factor,
    builtin_model,
    coin_model,
    hessian_prior,
    hypercube_polytope,
    likelihood_integrand,
    linear_model,
    marginal_likelihood,
    moment_map,
    moment_polynomial,
    pentagon_linear_model,
    pentagon_polytope,
    pentagon_toric_model,
    pentagon_wachspress_model,
    posterior_sample,
    toric_model,
    unit_cube_moment_polynomial,
    wachspress_model,
)

__version__ = "0.1.0"
