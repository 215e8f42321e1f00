"""Harmonic functions on the unit disk and sharp Schwarz-type bounds."""

__version__ = "0.1.0"

from .disk import (DiskPoint, MobiusAutomorphism, hyperbolic_distance,
                   interval_hyperbolic_distance, mobius_apply, mobius_from_points,
                   pseudo_hyperbolic)
from .harmonic import (BoundaryFunction, HarmonicMap, JacobianAtPoint, PowerSeries,
                       SingularPointError, analytic_completion, dilatation, fourier_from_samples,
                       grad_norm_of_modulus, harmonic_conjugate, jacobian,
                       poisson_extend_quadrature, poisson_extend_series)
from .strip import strip_map, strip_map_inverse, verify_strip_inequality
from .extremal import ExtremalMap, ExtremalSpec, extremal_at, extremal_real
from .reports import BoundReport
from .checks import (CodomainError, check_analytic_modulus_bound, check_classical_schwarz,
                     check_gradient_bound, check_heinz, check_hyperbolic_contraction,
                     check_modulus_gradient_bound, check_qc_bound)
from .counterexample import counterexample_boundary, counterexample_map, counterexample_radial_scan
from .sharpness import GridSpec, RatioField, ratio_field, sharpness_search
from .generators import RandomFamilySpec, gen_random_map
from .suite import RunConfig, run_suite
