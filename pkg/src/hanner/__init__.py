"""Numerical verification of multi-function Hanner-type inequalities for
spherical-uniform coefficients, via the equivalent concavity/convexity of the
functional phi(x) = E|sum x_k^{1/p} xi_k|^p and the signs of its Hessian's
cross expectations.
"""

__version__ = "0.1.0"

from .distributions import (  # noqa: E402
    ProjectionDist,
    RandomStream,
    SphereDist,
    projection_pdf,
    sample_projection,
    sample_sphere,
)
from .errors import (  # noqa: E402
    AccuracyError,
    ContractError,
    DomainError,
    NumericError,
    ResourceError,
    SingularityError,
)
from .functional import HannerPoint, phi_mc, phi_projected, phi_rademacher_exact  # noqa: E402
from .hessian import (  # noqa: E402
    HessianReport,
    definiteness,
    ekl,
    fd_hessian,
    gamma_ij,
    gamma_matrix,
    hessian_matrix,
    hessian_quadratic_form,
    hessian_report,
    jacobi_eigenvalues,
)
from .inequalities import (  # noqa: E402
    InequalityCheck,
    StepFunction,
    hanner_two_rhs,
    lp_norm,
    schechtman_check,
    theorem_check,
    theorem_lhs,
    theorem_rhs,
)
from .integrate import (  # noqa: E402
    EstimateWithError,
    QuadratureRule,
    gauss_jacobi_rule,
    mc_expectation,
    singular_expectation,
    tensor_expectation,
)
from .explorer import (  # noqa: E402
    SignMap,
    SweepConfig,
    SweepReport,
    certify_regime,
    emit_report,
    open_range_hunt,
    sign_map,
    simplex_grid,
)
from .specfun import PExponent, beta_pd, g_q, gen_binom, h_q, h_q_prime, log_gamma  # noqa: E402

__all__ = [
    "AccuracyError",
    "ContractError",
    "DomainError",
    "EstimateWithError",
    "HannerPoint",
    "HessianReport",
    "InequalityCheck",
    "NumericError",
    "PExponent",
    "ProjectionDist",
    "QuadratureRule",
    "RandomStream",
    "ResourceError",
    "SignMap",
    "SingularityError",
    "SphereDist",
    "StepFunction",
    "SweepConfig",
    "SweepReport",
    "beta_pd",
    "certify_regime",
    "definiteness",
    "ekl",
    "emit_report",
    "fd_hessian",
    "g_q",
    "gamma_ij",
    "gamma_matrix",
    "gauss_jacobi_rule",
    "gen_binom",
    "h_q",
    "h_q_prime",
    "hanner_two_rhs",
    "hessian_matrix",
    "hessian_quadratic_form",
    "hessian_report",
    "jacobi_eigenvalues",
    "log_gamma",
    "lp_norm",
    "mc_expectation",
    "open_range_hunt",
    "phi_mc",
    "phi_projected",
    "phi_rademacher_exact",
    "projection_pdf",
    "sample_projection",
    "sample_sphere",
    "schechtman_check",
    "sign_map",
    "simplex_grid",
    "singular_expectation",
    "tensor_expectation",
    "theorem_check",
    "theorem_lhs",
    "theorem_rhs",
]
