from src.algebra.degeneration.checks import (
    SUITES,
    parabolic_ops_check,
    reduced_relations_check,
    run_degeneration,
    sl2_suite,
    tilde_suite,
    unreduced_h2_check,
    weyl_suite,
)
from src.algebra.degeneration.sl2 import ReducedWindow, sl2_correct, sl2_from_degeneration
from src.algebra.degeneration.tilde import (
    Degeneration,
    X_op,
    fit_polynomial,
    synthetic_tilde_roundtrip,
    theta_and_u,
    tilde_D,
)
from src.algebra.degeneration.truncated_module import (
    SliceOperator,
    SpecializationConfig,
    TruncatedModule,
    from_fock,
    specialize,
)
from src.algebra.degeneration.weyl import WeylPair, coordinate_pair, op_red, vector_red

__all__ = [
    "SUITES",
    "Degeneration",
    "ReducedWindow",
    "SliceOperator",
    "SpecializationConfig",
    "TruncatedModule",
    "WeylPair",
    "X_op",
    "coordinate_pair",
    "fit_polynomial",
    "from_fock",
    "op_red",
    "parabolic_ops_check",
    "reduced_relations_check",
    "run_degeneration",
    "sl2_correct",
    "sl2_from_degeneration",
    "sl2_suite",
    "specialize",
    "synthetic_tilde_roundtrip",
    "theta_and_u",
    "tilde_D",
    "tilde_suite",
    "unreduced_h2_check",
    "vector_red",
    "weyl_suite",
]
