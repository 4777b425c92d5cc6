from src.algebra.w_algebra.lie_words import (
    Bracket,
    Gen,
    LieExpression,
    expression_degree,
    expression_operator,
    expression_weight,
    f_vanishing_probe,
    low_weight_expressions,
)
from src.algebra.w_algebra.w_ops import (
    D_op,
    L_op,
    check_undeformed,
    d_op,
    lehn_suite,
    op_bracket,
    q_op,
)

__all__ = [
    "Bracket",
    "D_op",
    "Gen",
    "L_op",
    "LieExpression",
    "check_undeformed",
    "d_op",
    "expression_degree",
    "expression_operator",
    "expression_weight",
    "f_vanishing_probe",
    "lehn_suite",
    "low_weight_expressions",
    "op_bracket",
    "q_op",
]
