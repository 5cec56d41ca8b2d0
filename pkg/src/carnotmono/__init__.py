"""Exact computations in the free step-2 Carnot algebra of rank 3.

Points are pairs (theta, omega) of a 1-form and a 2-form on R^3 with the
group law (theta, omega).(tau, zeta) = (theta + tau, omega + zeta + theta^tau).
All arithmetic is exact over ``fractions.Fraction``.
"""
from .carnot import (HLine, Point, hor_space, lie_subalgebra, line_point,
                     line_through, mul, quotient_project)
from .classify import (anh, component_of, decompose_two_form,
                       graph_coefficients, graph_solve,
                       halfspace_from_quotient, in_sigma, path_in_component,
                       sigma_crossing, witness_line)
from .errors import CarnotError
from .haffine import (HAffine, differential, evaluate, factor_through,
                      hor_levelset_subspace, is_characteristic, normalize,
                      proportional, restrict_to_line)
from .monotone import (Boundary, SetOracle, check_line_monotone,
                       check_monotone_batch, line_trace, verify_linee,
                       verify_tretre)
from .multivec import MultiVec, nu_coefficient, wedge

__version__ = "0.1.0"
