"""Uniform subgroup membership for fundamental groups of benign graphs of groups.

Typical use::

    from gwp import catalog, decide, validate
    G = validate(catalog.baumslag_solitar(1, 2))
    decide(G, ["a"], "e a e^-1")   # Verdict.MEMBER
"""

from .errors import GWPError, InputError, InternalError, RoundCapExceeded, ValidationError
from .gog import CycleTypeWord, GraphOfGroups, britton_reduce, check_cycle_type, is_trivial, validate
from .saturation import Verdict, decide, run

__all__ = [
    "CycleTypeWord", "GWPError", "GraphOfGroups", "InputError", "InternalError",
    "RoundCapExceeded", "ValidationError", "Verdict", "britton_reduce",
    "check_cycle_type", "decide", "is_trivial", "run", "validate",
]
