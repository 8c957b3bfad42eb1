"""Verification lab for sharp weighted Fourier extension estimates on the circle.

Exact rational classifiers for the boundedness regions of the weighted
circle-extension operators, constructive interpolation-exponent
certificates, and numerical experiments reproducing every counterexample
scaling: Knapp caps, constant-density divergence, endpoint blow-ups and the
oscillatory-integral small-parameter law.
"""

from .analysis import (
    ExtremaTable,
    OscIntSpec,
    bessel_j0,
    bessel_j0_deriv,
    cosine_weight_kernel,
    fresnel_constant,
    hankel_decay_transform,
    j0_extrema,
    j0_zeros,
)
from .errors import ConfigurationError, NumericalError
from .experiments import (
    ConstantSumResult,
    PittResult,
    PredictedExponent,
    ScanResult,
    ScanSample,
    SlopeFit,
    constant_density_sums,
    dual_scan,
    fit_loglog_slope,
    knapp_scan,
    l2_endpoint_scan,
    pitt_sweep,
    predicted_exponent,
)
from .exponents import (
    INF,
    DomainError,
    ExtScalar,
    RadialParams,
    SeparableParams,
    Verdict,
    classify_radial,
    classify_separable,
    classify_unweighted,
    conjugate_exponent,
    diagram_to_csv,
    riesz_diagram,
)
from .feasibility import (
    CertificateOne,
    CertificateTwo,
    Infeasible,
    solve_one,
    solve_two,
    verify_one,
    verify_two,
)
from .norms import Grid2, Sampled1, WeightSpec, weak_lq_1d, weighted_lq_2d
from .operator import (
    Density,
    Point2,
    circle_norm,
    constant_reference,
    extend,
    extend_on_grid,
)

__all__ = [
    "INF",
    "DomainError",
    "NumericalError",
    "ConfigurationError",
    "ExtScalar",
    "RadialParams",
    "SeparableParams",
    "Verdict",
    "classify_radial",
    "classify_separable",
    "classify_unweighted",
    "conjugate_exponent",
    "riesz_diagram",
    "diagram_to_csv",
    "CertificateOne",
    "CertificateTwo",
    "Infeasible",
    "solve_one",
    "solve_two",
    "verify_one",
    "verify_two",
    "ExtremaTable",
    "OscIntSpec",
    "bessel_j0",
    "bessel_j0_deriv",
    "j0_extrema",
    "j0_zeros",
    "cosine_weight_kernel",
    "fresnel_constant",
    "hankel_decay_transform",
    "Density",
    "Point2",
    "extend",
    "extend_on_grid",
    "circle_norm",
    "constant_reference",
    "Grid2",
    "WeightSpec",
    "Sampled1",
    "weighted_lq_2d",
    "weak_lq_1d",
    "PredictedExponent",
    "SlopeFit",
    "ScanSample",
    "ScanResult",
    "predicted_exponent",
    "fit_loglog_slope",
    "knapp_scan",
    "ConstantSumResult",
    "constant_density_sums",
    "l2_endpoint_scan",
    "PittResult",
    "pitt_sweep",
    "dual_scan",
]

__version__ = "0.1.0"
