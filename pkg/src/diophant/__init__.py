"""Exact arithmetic for quaternary quadratic forms, pairs of forms and quartic curves."""

from .bilinear import BilinearSolution, InvalidSeed, NonSquareDeterminant, bilinear_general, find_seed
from .pair_solver import PairReport, SolutionDescription, necessary_condition, solve_pair
from .poly import MPoly
from .quadform import QuadForm4, pencil
from .quartic import (
    QuarticCurve,
    QuarticPoint,
    derive_from_one,
    derive_from_two,
    grow_orbit,
    reduce_general,
    search_points,
)

__version__ = "0.1.0"

__all__ = [
    "BilinearSolution",
    "InvalidSeed",
    "MPoly",
    "NonSquareDeterminant",
    "PairReport",
    "QuadForm4",
    "QuarticCurve",
    "QuarticPoint",
    "SolutionDescription",
    "bilinear_general",
    "derive_from_one",
    "derive_from_two",
    "find_seed",
    "grow_orbit",
    "necessary_condition",
    "pencil",
    "reduce_general",
    "search_points",
    "solve_pair",
]
