"""Integral-transform solutions of ``u_tt - t^ell A u = f``."""

from .errors import (CFLViolation, ConvergenceError, ParameterError, PoleError,
                     SingularKernelError, StencilError, ToleranceNotMet, TricomiError,
                     UnsupportedParameters)
from .kernel import (KernelPoint, alpha_beta, kernel_E, kernel_pde_residual, kernel_values,
                     lemma22_derivatives, lemma23_coefficients)
from .params import TricomiParams, make_params, phi, phi_derivatives, phi_inverse
from .quadrature import QuadratureSpec
from .specfun import gamma_fn, hyp2f1, rgamma
from .transform import (TransformResult, apply_K, apply_K0, apply_K1, solve_cauchy,
                        source_residual_term, with_odd_trace)
from .wave import (BaseSolution, SourceProfile, dalembert_1d, kirchhoff_3d,
                   ode_oracle_separable, poisson_2d, separable_solution)

__version__ = "0.1.0"

__all__ = [
    "CFLViolation", "ConvergenceError", "ParameterError", "PoleError", "SingularKernelError",
    "StencilError", "ToleranceNotMet", "TricomiError", "UnsupportedParameters",
    "KernelPoint", "alpha_beta", "kernel_E", "kernel_pde_residual", "kernel_values",
    "lemma22_derivatives", "lemma23_coefficients",
    "TricomiParams", "make_params", "phi", "phi_derivatives", "phi_inverse",
    "QuadratureSpec", "gamma_fn", "hyp2f1", "rgamma",
    "TransformResult", "apply_K", "apply_K0", "apply_K1", "solve_cauchy",
    "source_residual_term", "with_odd_trace",
    "BaseSolution", "SourceProfile", "dalembert_1d", "kirchhoff_3d", "ode_oracle_separable",
    "poisson_2d", "separable_solution",
]
