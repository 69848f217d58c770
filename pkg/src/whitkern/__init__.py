"""Whittaker-function kernels, Pollaczek-Jacobi Hankel determinants, their
Fredholm-determinant and Painleve identities, and the determinantal point
process with the Whittaker kernel."""
__version__ = "0.1.0"

from .errors import (ContractError, DimensionError, DomainError, ParameterError, PrecisionError,
                     SingularityError, WhitkernError)
from .kernels import (composed_kernel, integrable_kernel, whittaker_dpp_kernel, whittaker_kernel)
from .moments import WeightSpec, hankel_det, hankel_det_restricted, moment_quad, moment_whittaker
from .specfun import WhittakerIndex, bessel_k, whittaker_w, whittaker_w_deriv

__all__ = ["ContractError", "DimensionError", "DomainError", "ParameterError", "PrecisionError",
           "SingularityError", "WhitkernError", "WeightSpec", "WhittakerIndex", "bessel_k",
           "composed_kernel", "hankel_det", "hankel_det_restricted", "integrable_kernel",
           "moment_quad", "moment_whittaker", "whittaker_dpp_kernel", "whittaker_kernel",
           "whittaker_w", "whittaker_w_deriv"]
