"""Spatial linear stability of swirling columnar flows.

Shifted Chebyshev discretizations (weighted projection and collocation) of
the inviscid bending-mode perturbation equations, a filtered generalized
eigensolver for the complex axial wavenumber, and frequency-sweep tooling to
locate the most unstable perturbation.
"""

from .basis import (BasisContext, barycentric_eval, cheb_shifted_deriv,
                    cheb_shifted_eval, deriv_expansion, inner_product,
                    make_context, modal_basis_eval, weight_function)
from .baseflow import (BaseFlowProfile, ProfileTable, batchelor, from_table,
                       load_profile_csv, solid_body)
from .collocation import Pencil, assemble_collocation, boundary_rows
from .eigen import EigenMode, Spectrum, leading_mode, solve
from .errors import (DomainError, IngestionError, NumericalError,
                     ParameterError, SingularTensorError, SwirlStabError,
                     UnsupportedModeError)
from .operators import (PerturbationField, StabilityProblem, lambda_residual,
                        make_problem, pencil_blocks, residual_norm)
from .projection import (InnerProductTensors, assemble_projection,
                         assemble_projection_expanded, build_tensors)
from .sweep import (ConvergenceReport, SweepResult, convergence_study,
                    frequency_sweep, growth_rate, solve_problem)

__version__ = "0.1.0"

__all__ = [
    "BasisContext", "barycentric_eval", "cheb_shifted_deriv", "cheb_shifted_eval",
    "deriv_expansion", "inner_product", "make_context", "modal_basis_eval",
    "weight_function",
    "BaseFlowProfile", "ProfileTable", "batchelor", "from_table",
    "load_profile_csv", "solid_body",
    "Pencil", "assemble_collocation", "boundary_rows",
    "EigenMode", "Spectrum", "leading_mode", "solve",
    "DomainError", "IngestionError", "NumericalError", "ParameterError",
    "SingularTensorError", "SwirlStabError", "UnsupportedModeError",
    "PerturbationField", "StabilityProblem", "lambda_residual", "make_problem",
    "pencil_blocks", "residual_norm",
    "InnerProductTensors", "assemble_projection", "assemble_projection_expanded",
    "build_tensors",
    "ConvergenceReport", "SweepResult", "convergence_study", "frequency_sweep",
    "growth_rate", "solve_problem",
    "__version__",
]
