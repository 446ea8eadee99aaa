"""Rota-Baxter operators for configurations: relation syntax and the
semantic layer on finite-dimensional algebras."""

from .algebra import (
    AlgebraError,
    GuardError,
    LinearOperator,
    MultilinearAlgebra,
    check_algebra,
    eval_tree,
)
from .operators import (
    PreconditionError,
    TheoremViolation,
    check_crb_operator,
    induce_split_algebra,
    search_rb_operators,
)
from .modules import (
    ModuleData,
    canonical_module_from_split,
    check_module,
    check_relative_rb,
    induce_on_module,
    relative_verdicts,
    semidirect_algebra,
)
from .syntax import RB_OPERATOR, rb_relations, xi

__all__ = [
    "AlgebraError",
    "GuardError",
    "LinearOperator",
    "MultilinearAlgebra",
    "check_algebra",
    "eval_tree",
    "PreconditionError",
    "TheoremViolation",
    "check_crb_operator",
    "induce_split_algebra",
    "search_rb_operators",
    "RB_OPERATOR",
    "rb_relations",
    "xi",
    "ModuleData",
    "canonical_module_from_split",
    "check_module",
    "check_relative_rb",
    "induce_on_module",
    "relative_verdicts",
    "semidirect_algebra",
]
