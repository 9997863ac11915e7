"""Entropy-conservative and entropy-stable finite difference solvers for
special relativistic hydrodynamics with Synge-type equations of state."""

from .eos import IdealEos, RyuEos, SokolovEos, TaubMathewsEos, make_eos
from .state import Cons, Prim, cons_to_prim, prim_to_cons

__all__ = [
    "IdealEos",
    "RyuEos",
    "SokolovEos",
    "TaubMathewsEos",
    "make_eos",
    "Cons",
    "Prim",
    "cons_to_prim",
    "prim_to_cons",
]

__version__ = "0.1.0"
