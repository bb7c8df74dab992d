"""Exact symbolic verification of symmetry identities for q-Bernoulli numbers and polynomials."""

__version__ = "0.1.0"
