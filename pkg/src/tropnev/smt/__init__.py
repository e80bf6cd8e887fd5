"""
Shift families, Casorati determinants, degeneracy counts and second main theorem reports.
"""

from .casorati import (
    ShiftFamily,
    casorati_eval,
    casorati_function,
    casorati_many,
    casorati_pattern,
    casorati_roots_counting,
    casorati_slices,
    casorati_symbolic,
)
from .combination import (
    CombinationBasis,
    EssentialTerms,
    ddg,
    ddg_interval,
    essential_terms,
    probe_points,
)
from .report import DefectReport, SmtReport, SmtRow, defect_relation_check, q_smt_check, smt_check

__all__ = [
    "ShiftFamily",
    "casorati_eval",
    "casorati_function",
    "casorati_many",
    "casorati_pattern",
    "casorati_roots_counting",
    "casorati_slices",
    "casorati_symbolic",
    "CombinationBasis",
    "EssentialTerms",
    "essential_terms",
    "ddg",
    "ddg_interval",
    "probe_points",
    "SmtRow",
    "SmtReport",
    "DefectReport",
    "smt_check",
    "q_smt_check",
    "defect_relation_check",
]
