"""
Hecke operators on the Fock space: psi multiplication, the homomorphism R,
the contraction Q and T_n(xi)(f) = Q(xi u^n R(f))
"""
import logging
from fractions import Fraction
from math import factorial
from typing import Callable, Dict, Tuple

from src.algebra.errors import AugmentationError
from src.algebra.fock.fock_space import (
    EMPTY,
    ExtendedElement,
    FockElement,
    Generator,
    Monomial,
    h_eval,
)
from src.algebra.fock.operators import GradedOperator
from src.algebra.ring.ring_core import RingElement, RingSpec

logger = logging.getLogger(__name__)


def _element_key(xi: RingElement) -> Tuple[Tuple[int, Fraction], ...]:
    return tuple(sorted(xi.coeffs.items()))


def _cached(ring: RingSpec, key: tuple, factory: Callable[[], object]):
    store = ring._cache.setdefault("ops", {})
    value = store.get(key)  # type: ignore[union-attr]
    if value is None:
        value = factory()
        store[key] = value  # type: ignore[index]
    return value


def _homogeneous(xi: RingElement, what: str) -> Tuple[int, bool]:
    if xi.is_zero():
        return 0, False
    degree, parity = xi.degree, xi.parity
    if degree is None or parity is None:
        raise ValueError(f"{what} needs a homogeneous class, got {xi!r}")
    return degree, parity


def basis_label(xi: RingElement) -> str:
    if len(xi.coeffs) == 1:
        (b, c), = xi.coeffs.items()
        name = xi.ring.basis[b].name
        return name if c == 1 else f"{c}{name}"
    return f"({xi!r})" if xi.coeffs else "0"


# -- psi -----------------------------------------------------------------
def psi_class(n: int, xi: RingElement) -> FockElement:
    """psi_n(xi) = sum_{1<=m<=n+1} n!/m! p_m(Td_{n+1-m} xi)"""
    if n < 0:
        raise ValueError(f"psi_n needs n >= 0, got {n}")
    ring = xi.ring
    todd = ring.todd_coefficients(n)
    out = FockElement.zero(ring)
    for m in range(1, n + 2):
        cls = todd[n + 1 - m] * xi
        if not cls.is_zero():
            out = out + FockElement.generator(m, cls) * Fraction(factorial(n), factorial(m))
    return out


def psi_op(n: int, xi: RingElement) -> GradedOperator:
    """Multiplication by psi_n(xi); degree shift 2n - 2 + deg xi"""
    ring = xi.ring

    def build() -> GradedOperator:
        degree, odd = _homogeneous(xi, "psi_op")
        cls = psi_class(n, xi)
        return GradedOperator(
            ring,
            f"psi{n}({basis_label(xi)})",
            2 * n - 2 + degree,
            odd,
            lambda mon: cls * FockElement(ring, {mon: Fraction(1)}),
        )

    return _cached(ring, ("psi", n, _element_key(xi)), build)


# -- R and Q -------------------------------------------------------------
def _R_generator(ring: RingSpec, gen: Generator) -> ExtendedElement:
    """R(p_n(b)) = p_n(b) (x) 1 - D_n(u) b"""
    out = ExtendedElement(ring, {((gen,), 0, 0): Fraction(1)})
    b = ring.element(gen.b)
    for k, coeff in ring.divided_difference(gen.n).items():
        out = out - ExtendedElement.from_ring(coeff * b, k)
    return out


def R_monomial(ring: RingSpec, mon: Monomial) -> ExtendedElement:
    store: Dict[Monomial, ExtendedElement] = ring._cache.setdefault("R", {})  # type: ignore[assignment]
    value = store.get(mon)
    if value is not None:
        return value
    if not mon:
        value = ExtendedElement(ring, {(EMPTY, 0, 0): Fraction(1)})
    else:
        value = R_monomial(ring, mon[:-1]).mul(_R_generator(ring, mon[-1]))
    store[mon] = value
    return value


def R_hom(f: FockElement) -> ExtendedElement:
    """The ring homomorphism p_n(eta) -> p_n(eta) - D_n(u) eta"""
    out = ExtendedElement(f.ring, {})
    for mon, c in f.terms.items():
        out = out + R_monomial(f.ring, mon).scale(c)
    return out


def Q_map(g: ExtendedElement) -> FockElement:
    """Fock-linear contraction f (x) eta u^m -> f h_m(eta); negative powers vanish"""
    ring = g.ring
    grouped: Dict[Tuple[int, int], Dict[Monomial, Fraction]] = {}
    for (mon, b, k), c in g.terms.items():
        if k < 0:
            continue
        if k == 0 and not ring.compact:
            raise AugmentationError(f"Q hit a u^0 term on the open ring {ring.name}")
        grouped.setdefault((b, k), {})
        grouped[(b, k)][mon] = grouped[(b, k)].get(mon, Fraction(0)) + c
    out = FockElement.zero(ring)
    for (b, k), coeffs in sorted(grouped.items()):
        h = h_eval(k, ring.element(b))
        if h.is_zero():
            continue
        out = out + FockElement(ring, coeffs) * h
    return out


# -- T -------------------------------------------------------------------
def T_op(n: int, xi: RingElement) -> GradedOperator:
    """T_n(xi)(f) = Q(xi u^n R(f)), degree shift 2n - 4 + deg xi"""
    ring = xi.ring

    def build() -> GradedOperator:
        degree, odd = _homogeneous(xi, "T_op")

        def action(mon: Monomial) -> FockElement:
            return Q_map(R_monomial(ring, mon).ring_act(xi).shift(n))

        return GradedOperator(ring, f"T{n}({basis_label(xi)})", 2 * n - 4 + degree, odd, action, charge=1)

    return _cached(ring, ("T", n, _element_key(xi)), build)


def geom_T_op(n: int, xi: RingElement) -> GradedOperator:
    """The geometric Hecke family T_{n + 1 - rank}"""
    return T_op(geom_index(xi.ring, n), xi)


def geom_index(ring: RingSpec, n: int) -> int:
    return n + 1 - ring.rank
