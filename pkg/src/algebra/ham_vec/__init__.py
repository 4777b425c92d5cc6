from src.algebra.ham_vec.hamiltonian import (
    HamElement,
    PolyDiffOp,
    apply_diffop,
    check_jacobi,
    check_realization,
    diffop_bracket,
    h2_bracket,
    ham_as_diffop,
    plane_variables,
    sn_equivariance_and_j2,
    verify_h2,
    vmn_as_diffop,
)

__all__ = [
    "HamElement",
    "PolyDiffOp",
    "apply_diffop",
    "check_jacobi",
    "check_realization",
    "diffop_bracket",
    "h2_bracket",
    "ham_as_diffop",
    "plane_variables",
    "sn_equivariance_and_j2",
    "verify_h2",
    "vmn_as_diffop",
]
