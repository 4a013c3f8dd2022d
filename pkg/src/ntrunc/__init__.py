"""Homological algebra over F_p: complexes, the n-extended heart, and its factorization theory."""

from .complexes import ChainMap, Complex, GradedMap
from .heart import HeartContext

__all__ = ["ChainMap", "Complex", "GradedMap", "HeartContext"]
