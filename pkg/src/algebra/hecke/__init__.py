from src.algebra.hecke.hecke_ops import (
    Q_map,
    R_hom,
    T_op,
    geom_T_op,
    geom_index,
    psi_class,
    psi_op,
)
from src.algebra.hecke.relations import RELATIONS, run_relation_suite
from src.algebra.hecke.series import (
    SeriesElement,
    cubic_kernel,
    cubic_kernel_check,
    hecke_product_oracle,
    omega_coefficients,
    omega_series,
)

__all__ = [
    "Q_map",
    "R_hom",
    "RELATIONS",
    "SeriesElement",
    "T_op",
    "cubic_kernel",
    "cubic_kernel_check",
    "geom_T_op",
    "geom_index",
    "hecke_product_oracle",
    "omega_coefficients",
    "omega_series",
    "psi_class",
    "psi_op",
    "run_relation_suite",
]
