"""Global caps that guard against runaway exponents and poles."""

from dataclasses import dataclass


@dataclass(frozen=True)
class Limits:
    # total degree of an MPoly exponent vector
    max_total_degree: int = 64
    # degree in q of any polynomial produced by substitute_power
    max_q_degree: int = 1 << 16
    # pole order at q = 1 accepted by eps_expand
    max_pole_order: int = 16


LIMITS = Limits()
