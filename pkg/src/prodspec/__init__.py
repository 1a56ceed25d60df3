"""Radial and angular statistics of products of random matrices and their inverses."""

__version__ = "0.1.0"

from .config import (
    GinibreProductSpec,
    HaarProductSpec,
    ScalingPlan,
    SignPattern,
    resolve_gamma,
    validate,
)
from .limit_laws import (
    GinibreLimit,
    HaarLimit,
    SeriesAccuracyError,
    curve_inverse_cdf,
    curve_inverse_density,
    ginibre_limit_cdf,
    ginibre_limit_density,
    haar_limit_cdf,
    haar_limit_from_ratios,
    haar_limit_from_spec,
    haar_limit_growing,
    limit_curve,
    limit_curve_tail,
    log_mean_curve,
    radial_profile,
    radial_profile_inverse,
    series_coeff,
    series_coeff_bound,
    series_tail_bound,
    spherical_product_density,
)
from .matrix_model import (
    ConditioningError,
    EigenSample,
    product_eigenvalues,
    sample_ginibre,
    sample_haar_unitary,
    sample_product_eigenvalues,
    truncate,
)
from .numerics import (
    RngStream,
    digamma,
    invert_monotone,
    log_beta,
    log_gamma,
    sample_beta,
    sample_gamma,
)
from .scalar_model import (
    LogSpectrum,
    factor_shape,
    log_mgf_ginibre,
    log_mgf_haar,
    log_weight_moment,
    sample_log_radius_ginibre,
    sample_log_radius_haar,
    sample_radial_spectrum,
    scaled_mean_ginibre,
)
from .stats import (
    EmpiricalCdf,
    KsReport,
    angle_uniformity,
    build_ecdf,
    ks_one_sample,
    ks_threshold,
    ks_two_sample,
    mgf_estimate,
    rescale_moduli,
)

__all__ = [name for name in dir() if not name.startswith("_")]
