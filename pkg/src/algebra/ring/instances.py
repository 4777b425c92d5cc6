"""
Built-in ring instances: the projective plane, the curve model and its
parabolic extension, plus the antisymmetrization over eigen-line labels
"""
import logging
from fractions import Fraction
from itertools import permutations
from math import factorial
from typing import TYPE_CHECKING, Dict, List, Tuple, Union

from sympy.combinatorics import Permutation

from src.algebra.errors import PreconditionError
from src.algebra.ring.ring_core import (
    BasisElement,
    ParabolicData,
    Parity,
    RingElement,
    RingKind,
    RingSpec,
)

if TYPE_CHECKING:
    from src.algebra.fock.fock_space import FockElement

logger = logging.getLogger(__name__)

ONE = Fraction(1)


def make_projective_plane_ring() -> RingSpec:
    """Compact model with basis {1, h, d}, h^2 = d"""
    basis = [BasisElement("1", 0), BasisElement("h", 2), BasisElement("d", 4)]
    mul = {
        (0, 0): {0: ONE}, (0, 1): {1: ONE}, (0, 2): {2: ONE},
        (1, 0): {1: ONE}, (2, 0): {2: ONE},
        (1, 1): {2: ONE},
    }
    diag = {(2, 0): ONE, (1, 1): ONE, (0, 2): ONE}
    ring = RingSpec(
        name="p2",
        basis=basis,
        mul=mul,
        diag=diag,
        c1={1: Fraction(3)},
        c2={2: Fraction(3)},
        aug={2: ONE},
        kind=RingKind.COMPACT,
        rank=1,
    )
    return ring.validate()


def _curve_tables(g: int) -> Tuple[List[BasisElement], Dict[Tuple[int, int], Dict[int, Fraction]]]:
    basis = [BasisElement("1", 0)]
    basis += [BasisElement(f"g{i}", 1, Parity.ODD) for i in range(1, 2 * g + 1)]
    basis.append(BasisElement("w", 2))
    w = len(basis) - 1
    mul: Dict[Tuple[int, int], Dict[int, Fraction]] = {}
    for i in range(len(basis)):
        mul[(0, i)] = {i: ONE}
        mul[(i, 0)] = {i: ONE}
    for i in range(1, g + 1):
        mul[(i, i + g)] = {w: ONE}
        mul[(i + g, i)] = {w: -ONE}
    return basis, mul


def make_curve_ring(g: int, e: int) -> RingSpec:
    """Total space of a degree-e line bundle over a genus-g curve"""
    if g < 0 or e < 0:
        raise PreconditionError(f"curve ring needs g, e >= 0, got g={g}, e={e}")
    basis, mul = _curve_tables(g)
    w = len(basis) - 1
    ring = RingSpec(
        name=f"curve:g={g},e={e}",
        basis=basis,
        mul=mul,
        diag={(w, w): ONE},
        c1={w: Fraction(e)},
        c2={},
        aug=None,
        kind=RingKind.OPEN,
        rank=0,
    )
    return ring.validate()


def make_parabolic_ring(g: int, e: int, r: int, points: int) -> RingSpec:
    """
    Curve ring extended by eigen-line classes p_{q,i}, with p_{q,r} eliminated
    as w - sum_{i<r} p_{q,i}
    """
    if r < 1 or points < 1:
        raise PreconditionError(f"parabolic ring needs r, points >= 1, got r={r}, points={points}")
    if g < 0 or e < 0:
        raise PreconditionError(f"parabolic ring needs g, e >= 0, got g={g}, e={e}")
    basis, mul = _curve_tables(g)
    w = len(basis) - 1
    for q in range(1, points + 1):
        for i in range(1, r):
            basis.append(BasisElement(f"p{q}_{i}", 2))
    for k in range(w + 1, len(basis)):
        mul[(0, k)] = {k: ONE}
        mul[(k, 0)] = {k: ONE}
    ring = RingSpec(
        name=f"parabolic:g={g},e={e},r={r},pts={points}",
        basis=basis,
        mul=mul,
        diag={(w, w): ONE},
        c1={w: Fraction(e)},
        c2={},
        aug=None,
        kind=RingKind.OPEN,
        rank=0,
        parabolic=ParabolicData(g=g, e=e, r=r, points=points),
    )
    return ring.validate()


def parabolic_label(ring: RingSpec, q: int, i: int) -> RingElement:
    """The class p_{q,i}; for i = r it is w - sum_{j<r} p_{q,j}"""
    data = _parabolic_data(ring)
    if not (1 <= q <= data.points and 1 <= i <= data.r):
        raise PreconditionError(f"label ({q}, {i}) out of range for {ring.name}")
    if i < data.r:
        return ring.element(f"p{q}_{i}")
    out = ring.element("w")
    for j in range(1, data.r):
        out = out - ring.element(f"p{q}_{j}")
    return out


def _parabolic_data(ring: RingSpec) -> ParabolicData:
    if ring.parabolic is None:
        raise PreconditionError(f"{ring.name} is not a parabolic ring")
    return ring.parabolic


def label_permutation_map(ring: RingSpec, perm: Tuple[int, ...]) -> Dict[int, RingElement]:
    """
    Image of every basis element under the relabelling i -> perm[i-1],
    applied simultaneously at every point
    """
    data = _parabolic_data(ring)
    images = {k: ring.element(k) for k in range(ring.dim)}
    for q in range(1, data.points + 1):
        for i in range(1, data.r):
            images[ring.index(f"p{q}_{i}")] = parabolic_label(ring, q, perm[i - 1])
    return images


def apply_ring_map(images: Dict[int, RingElement], xi: RingElement) -> RingElement:
    out = xi.ring.zero()
    for k, c in xi.coeffs.items():
        out = out + images[k] * c
    return out


def label_permutations(r: int) -> List[Tuple[Tuple[int, ...], int]]:
    """All (perm, sign) pairs of S_r on labels 1..r"""
    out = []
    for perm in permutations(range(1, r + 1)):
        sign = Permutation([p - 1 for p in perm]).signature()
        out.append((perm, sign))
    return out


def asym(f: Union[RingElement, "FockElement"]) -> Union[RingElement, "FockElement"]:
    """
    (1/r!) sum_sigma sgn(sigma) sigma(f) over the eigen-line labels; on the
    Fock space sigma acts through the class of every generator
    """
    ring = f.ring
    data = _parabolic_data(ring)
    out = f * 0
    for perm, sign in label_permutations(data.r):
        images = label_permutation_map(ring, perm)
        if isinstance(f, RingElement):
            moved = apply_ring_map(images, f)
        else:
            moved = f.map_classes(images.__getitem__)
        out = out + moved * sign
    return out / factorial(data.r)
