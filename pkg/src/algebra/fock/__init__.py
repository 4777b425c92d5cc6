from src.algebra.fock.fock_space import (
    EMPTY,
    ExtendedElement,
    FockElement,
    Generator,
    Monomial,
    canonical,
    eval_symfunc,
    fock_mul,
    fock_sum,
    from_text,
    h_eval,
    monomial_degree,
    monomial_odd,
    to_text,
)
from src.algebra.fock.operators import (
    GradedOperator,
    identity_operator,
    lincomb,
    monomial_element,
    multiplication_operator,
    operator_vanishes,
    operators_agree,
    probe_monomials,
    zero_operator,
)
from src.algebra.fock.symmetric import h_to_p, newton_residual, p_single, z_lambda

__all__ = [
    "EMPTY",
    "ExtendedElement",
    "FockElement",
    "Generator",
    "GradedOperator",
    "Monomial",
    "canonical",
    "eval_symfunc",
    "fock_mul",
    "fock_sum",
    "from_text",
    "h_eval",
    "h_to_p",
    "identity_operator",
    "lincomb",
    "monomial_degree",
    "monomial_element",
    "monomial_odd",
    "multiplication_operator",
    "newton_residual",
    "operator_vanishes",
    "operators_agree",
    "p_single",
    "probe_monomials",
    "to_text",
    "z_lambda",
    "zero_operator",
]
