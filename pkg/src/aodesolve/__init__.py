"""Formal Puiseux series and algebraic solutions of first-order autonomous AODEs F(y, y') = 0."""
from .numberfield import QQ, AlgElem, NumberField, adjoin_root
from .poly import BiPoly, UniPoly, resultant, squarefree_normalize
from .series import PuiseuxSeries, compose, substitute_poly
from .curve import CurvePoint, Place, critical_points, local_parametrizations, truncation_bound
from .briot_bouquet import check_solution_place, prolong_truncation, solve_reparametrization
from .solver import (SolveReport, SolutionTruncation, constant_solutions,
                     generic_solution_truncation, puiseux_solve)
from .algebraic import algebraic_solution, diff_pseudo_remainder, reconstruct_candidate, shift_family
from .parser import parse_equation, parse_series

__all__ = [
    "QQ", "AlgElem", "NumberField", "adjoin_root", "BiPoly", "UniPoly", "resultant",
    "squarefree_normalize", "PuiseuxSeries", "compose", "substitute_poly", "CurvePoint", "Place",
    "critical_points", "local_parametrizations", "truncation_bound", "check_solution_place",
    "prolong_truncation", "solve_reparametrization", "SolveReport", "SolutionTruncation",
    "constant_solutions", "generic_solution_truncation", "puiseux_solve", "algebraic_solution",
    "diff_pseudo_remainder", "reconstruct_candidate", "shift_family", "parse_equation",
    "parse_series",
]
