"""Exact intersection-theory kernel and finite case analysis for
rank-two Fano bundles on manifolds with cyclic second and fourth
cohomology."""

from .exact import QuadNum, quad, quad_pow, is_negative_real, arg_less_than
from .chow import RingCtx, RingElem, BasisMap, reduce, intersection_degree
from .slope import InvariantTuple, check_rho_tau, solve_nu_prime

__version__ = "0.1.0"

__all__ = [
    "QuadNum", "quad", "quad_pow", "is_negative_real", "arg_less_than",
    "RingCtx", "RingElem", "BasisMap", "reduce", "intersection_degree",
    "InvariantTuple", "check_rho_tau", "solve_nu_prime",
    "__version__",
]
