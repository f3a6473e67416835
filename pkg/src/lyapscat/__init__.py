"""Numerical Hardy projections, Lyapunov operators, and approximate
Lax-Phillips semigroups for resonance scattering on discretized energy
representations."""

__version__ = "0.1.0"

from .errors import ParameterError, PreconditionError, UsageError
from .grid import (DomainKind, EnergyGrid, OperatorMatrix, OpFlag, RepTag,
                   StateVector, apply_operator, embed_halfline, fullline_parent,
                   halfline_child, inner, make_grid, restrict_fullline, sample)
from .hardy import (HardyProjector, apply_projector, build_hardy_projectors,
                    hilbert_transform, oracle_report, window_plus_image)
from .lyapunov import (LyapunovPair, build_lyapunov_pair, build_m_b, build_m_f,
                       build_m_general, lyapunov_trace, sqrt_operator)
from .smatrix import (ResonanceParams, SMatrixModel, eval_smatrix,
                      multiplication_operator, pole_factor_deviation)
from .evolution import (Direction, SemigroupDefectReport, apply_z_app,
                        build_z_app, evolve, semigroup_defect,
                        transition_decompose, z_backward, z_forward)
from .resonance import (BOUND_CONSTANT, BoundReport, ResonanceStates,
                        background_bound, bound_chain_report,
                        build_resonance_states, closed_form_norm_app2,
                        closed_form_ratio, decompose_lambda_plus,
                        eigenvector_deviation, projection_defect_report,
                        survival_decomposition)
