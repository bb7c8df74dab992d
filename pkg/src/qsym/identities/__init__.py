"""Identity catalog, expression evaluation and exact verification."""

from .catalog import AUXILIARY, CHAIN, COROLLARIES, EXPANSIONS, FAMILIES
from .evaluate import evaluate
from .expr import Expr, alpha_key, parse
from .verify import (
    VerificationReport,
    crosscheck_expansion,
    generate_variants,
    lambda13_check,
    multiplication_coefficient_check,
    multiplication_series_check,
    multiplication_specialization_match,
    orbit_census,
    verify_auxiliary,
    verify_corollary,
    verify_family,
    verify_intro_chain,
)

__all__ = [
    "AUXILIARY",
    "CHAIN",
    "COROLLARIES",
    "EXPANSIONS",
    "FAMILIES",
    "Expr",
    "VerificationReport",
    "alpha_key",
    "multiplication_specialization_match",
    "crosscheck_expansion",
    "multiplication_coefficient_check",
    "multiplication_series_check",
    "evaluate",
    "generate_variants",
    "lambda13_check",
    "orbit_census",
    "parse",
    "verify_auxiliary",
    "verify_corollary",
    "verify_family",
    "verify_intro_chain",
]
