"""Weighted Sobolev norms and a Mellin-transform Poisson solver on
planar angular domains.

The library evaluates four provably equivalent norms of the mixed-weight
spaces on infinite wedges (dyadic, integral, polar, Mellin) and solves the
zero-Dirichlet Poisson equation through the factorization of the Laplacian
over the Mellin contour, with executable checks of the admissible parameter
range, the interval resolvent estimates, and the a-priori bound.
"""

from .errors import (AdmissibilityError, CapabilityError, ConfigError,
                     DomainError, InconsistencyError, IntegrationError,
                     ProbeError, SamplingError, SchemaError, SingularityError,
                     WedgeMellinError)
from .fields import (AnalyticField, DilatedField, FieldSum, GridField,
                     PolarGrid, SeparableField, builtin_test_family,
                     gaussian_bump, make_grid, plateau_window, power_radial,
                     quad_integrate, sample, sine_mode)
from .geometry import (ResolutionOfUnity, WedgeParams, cart_to_polar, mu,
                       partition_values, polar_to_cart, psi_interval,
                       psi_wedge, rho_boundary, rho_circ, smoothstep)
from .mellin import (MellinContour, MellinField, contour_for_grid,
                     mellin_forward, mellin_forward_profile, mellin_inverse,
                     multiplier_check, parseval_check)
from .norms import (NormReport, SpaceParams, equivalence_report, norm_1d_interval,
                    norm_dyadic, norm_integral, norm_integral_vector,
                    norm_mellin, norm_polar, weight_mixed, write_equivalence_csv)
from .polar_calculus import (TTable, TrigPoly, build_t_table,
                             cart_derivative_via_table,
                             gradient_cart_from_polar, rotation_matrix)
from .wedge_poisson import (Admissibility, PoissonParams, SineSpectrum,
                            SolveReport, admissible, apriori_report,
                            corner_exponent, dirichlet_spectrum,
                            fd_dirichlet_eigenvalues, resolvent_1d,
                            resolvent_estimate_check, residual_check,
                            solve_poisson)

__version__ = "0.1.0"
