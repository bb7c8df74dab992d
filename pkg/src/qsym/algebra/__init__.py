"""Exact coefficient rings: Q[q], Q(q), Q(q)[L], multivariate polynomials and eps-expansions."""

from .laurent import EpsLaurent, eps_expand
from .logpoly import L, LogPoly
from .mpoly import VARIABLES, MPoly, first_difference
from .poly import PolyQ
from .ratfunc import RatFuncQ, ratfunc_normalize

__all__ = [
    "EpsLaurent",
    "L",
    "LogPoly",
    "MPoly",
    "PolyQ",
    "RatFuncQ",
    "VARIABLES",
    "eps_expand",
    "first_difference",
    "ratfunc_normalize",
]
