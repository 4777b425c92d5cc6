from src.algebra.ring.instances import (
    asym,
    label_permutation_map,
    label_permutations,
    make_curve_ring,
    make_parabolic_ring,
    make_projective_plane_ring,
    parabolic_label,
)
from src.algebra.ring.ring_core import (
    BasisElement,
    Parity,
    RingElement,
    RingKind,
    RingSpec,
    Tensor,
)
from src.algebra.ring.spec_loader import resolve_ring, ring_from_json, ring_to_json

__all__ = [
    "BasisElement",
    "Parity",
    "RingElement",
    "RingKind",
    "RingSpec",
    "Tensor",
    "asym",
    "label_permutation_map",
    "label_permutations",
    "make_curve_ring",
    "make_parabolic_ring",
    "make_projective_plane_ring",
    "parabolic_label",
    "resolve_ring",
    "ring_from_json",
    "ring_to_json",
]
