"""Finite-dimensional representations of the special rank-two Racah algebra.

Submodules: ``racah`` (monovariate Racah functions), ``algebra`` (relations and
Casimirs), ``representation`` (the explicit matrices), ``symmetry`` (the S5
action and the connection graph), ``transitions`` (intertwiners), and
``multivariate`` (Tratnik and Griffiths-like functions).
"""

from .algebra import GeneratorLabel, RepHandle, casimir_values, reconstruct, relation_residuals
from .racah import RacahParams, racah_P, racah_P_table, racah_r
from .representation import Quintuplet, ValidationError, build_rep, dimension, validate
from .symmetry import GroupElement, act_on_quintuplet, elements, path, pi_g
from .transitions import (closed_form_edge, compose_path, cycle_certificates, intertwiner_oracle,
                          transition, word_matrix)
from .multivariate import griffiths, griffiths_table, tratnik, tratnik_table, tratnik_weight

__version__ = "0.1.0"

__all__ = [
    "GeneratorLabel", "RepHandle", "casimir_values", "reconstruct", "relation_residuals",
    "RacahParams", "racah_P", "racah_P_table", "racah_r",
    "Quintuplet", "ValidationError", "build_rep", "dimension", "validate",
    "GroupElement", "act_on_quintuplet", "elements", "path", "pi_g",
    "closed_form_edge", "compose_path", "cycle_certificates", "intertwiner_oracle",
    "transition", "word_matrix",
    "griffiths", "griffiths_table", "tratnik", "tratnik_table", "tratnik_weight",
]
