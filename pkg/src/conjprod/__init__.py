"""Explicit solutions of alpha1 * alpha2 = alpha3 in prescribed conjugacy classes."""
from .kernels import BACKEND
from .perm_core import (CycleType, Perm, canonical_element, compose, conjugate, inverse,
                        parse_cycle_type, parse_cycles, format_cycles, format_cycle_type)

__version__ = "0.1.0"

__all__ = ["BACKEND", "CycleType", "Perm", "canonical_element", "compose", "conjugate",
           "inverse", "parse_cycle_type", "parse_cycles", "format_cycles",
           "format_cycle_type", "__version__"]
