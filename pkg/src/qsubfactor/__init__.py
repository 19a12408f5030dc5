"""Finite-dimensional invariants of Wassermann-type subfactors built from SU_q(2)."""

from .corep import CorepDecomp, Spin, dim_q, dual, end_algebra, f_matrix, fuse, parse_rep, qtrace
from .errors import DegeneracyError, DomainError, ParseError, ShapeError
from .qnum import LaurentPoly, bar_symmetric, evaluate, qint
from .type3 import (
    essentially_type_II,
    factor_maps,
    parity_scalars,
    t0,
    three_step_decomposition,
    type3_report,
    verify_composition,
)
from .wassermann import ToyAction, fixed_expectation, index, index_value, jones_tower, lemma1_check

__all__ = [
    "CorepDecomp", "Spin", "dim_q", "dual", "end_algebra", "f_matrix", "fuse", "parse_rep", "qtrace",
    "DegeneracyError", "DomainError", "ParseError", "ShapeError",
    "LaurentPoly", "bar_symmetric", "evaluate", "qint",
    "essentially_type_II", "factor_maps", "parity_scalars", "t0", "three_step_decomposition",
    "type3_report", "verify_composition",
    "ToyAction", "fixed_expectation", "index", "index_value", "jones_tower", "lemma1_check",
]
