from src.algebra.lefschetz.filtrations import (
    FiltSpace,
    GradedSl2,
    compare_h,
    exp_conjugation_filtration_check,
    filtration_from_h,
    is_lefschetz,
    jordan_chains,
    jordan_matrix,
    lefschetz_verify,
    load_space,
    nilpotency_index,
    nilpotent_exp,
    nilpotent_grading,
    nilpotent_lefschetz,
    opposite_weight_filtration,
    random_suite,
    sl2_on_gr,
    space_from_json,
    space_to_json,
    strictness_check,
    string_structure,
    weight_filtration,
    weight_filtration_report,
)
from src.algebra.lefschetz.subspace import Subspace, coordinates

__all__ = [
    "FiltSpace",
    "GradedSl2",
    "Subspace",
    "compare_h",
    "coordinates",
    "exp_conjugation_filtration_check",
    "filtration_from_h",
    "is_lefschetz",
    "jordan_chains",
    "jordan_matrix",
    "lefschetz_verify",
    "load_space",
    "nilpotency_index",
    "nilpotent_exp",
    "nilpotent_grading",
    "nilpotent_lefschetz",
    "opposite_weight_filtration",
    "random_suite",
    "sl2_on_gr",
    "space_from_json",
    "space_to_json",
    "strictness_check",
    "string_structure",
    "weight_filtration",
    "weight_filtration_report",
]
