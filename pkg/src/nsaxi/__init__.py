"""Complete family of self-similar axisymmetric no-swirl Navier-Stokes
profiles on the sphere with both poles removed: parameter-space geometry,
pole series, global solver, field reconstruction, and a verification suite.
"""

from .config import DEFAULT, RunConfig, load_config
from .errors import (AmbiguousEndpointError, ClassificationError, ConfigError,
                     DegenerateBranchError, DomainError, Error, EscapeError,
                     NumericalError, PoleProximityError, SeriesDivergenceError,
                     StiffnessError, StratumError)
from .fields import FieldSample, landau, reconstruct, sample_grid
from .params import (EndpointConstants, Params, SolutionIndex, Stratum, c3_bar,
                     classify, gamma_star, in_family, on_boundary, p_c,
                     tau_constants)
from .series import SeriesExpansion, expand_north, expand_south
from .solver import (ExistenceReport, ExistenceStatus, SolutionCurve,
                     chebyshev_nodes, endpoint_value, escape_cap, exists,
                     extremal, gamma_minus, gamma_plus, solve_ivp)
from .verify import (CheckResult, check_endpoint_table, check_foliation,
                     check_landau, check_log_asymptotics_north,
                     check_log_asymptotics_south, check_param_derivatives,
                     check_reflection, check_residual, check_sandwich,
                     check_uniqueness_at_boundary, run_suite)

__version__ = "0.1.0"
