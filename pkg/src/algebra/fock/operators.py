"""
Lazy graded linear endomorphisms of the Fock space
An operator is defined by its action on monomials, memoized per monomial
"""
import logging
from fractions import Fraction
from itertools import combinations_with_replacement
from typing import Callable, Dict, Iterable, List, Optional, Sequence, Tuple, Union

from src.algebra.errors import RingMismatchError
from src.algebra.fock.fock_space import (
    EMPTY,
    FockElement,
    Generator,
    Monomial,
    canonical,
    monomial_degree,
)
from src.algebra.ring.ring_core import RingSpec

logger = logging.getLogger(__name__)

Scalar = Union[int, Fraction]
MonomialAction = Callable[[Monomial], FockElement]


class GradedOperator:
    """
    Homogeneous operator on the Fock space with known degree shift and parity.

    charge counts the Hecke factors in the operator; it is additive under
    composition and is used to track sector shifts of specializations.
    """

    def __init__(
        self,
        ring: RingSpec,
        name: str,
        shift: int,
        odd: bool,
        action: MonomialAction,
        charge: int = 0,
    ):
        self.ring = ring
        self.name = name
        self.shift = shift
        self.odd = odd
        self.charge = charge
        self._action = action
        self._memo: Dict[Monomial, FockElement] = {}

    def __repr__(self) -> str:
        return f"GradedOperator({self.name}, shift={self.shift}, odd={self.odd})"

    def on_monomial(self, mon: Monomial) -> FockElement:
        value = self._memo.get(mon)
        if value is None:
            value = self._action(mon)
            self._memo[mon] = value
        return value

    def __call__(self, f: FockElement) -> FockElement:
        if f.ring is not self.ring:
            raise RingMismatchError(f"{self.name} acts over {self.ring.name}, not {f.ring.name}")
        out: Dict[Monomial, Fraction] = {}
        for mon, c in f.terms.items():
            for m, v in self.on_monomial(mon).terms.items():
                out[m] = out.get(m, Fraction(0)) + c * v
        return FockElement(self.ring, out)

    # -- algebra ----------------------------------------------------------
    def compose(self, other: "GradedOperator") -> "GradedOperator":
        """self after other"""
        self._check(other)
        return GradedOperator(
            self.ring,
            f"{self.name}{other.name}",
            self.shift + other.shift,
            self.odd != other.odd,
            lambda mon: self(other.on_monomial(mon)),
            self.charge + other.charge,
        )

    def bracket(self, other: "GradedOperator") -> "GradedOperator":
        """Super-commutator [A, B] = AB - (-1)^{|A||B|} BA"""
        self._check(other)
        sign = -1 if (self.odd and other.odd) else 1

        def action(mon: Monomial) -> FockElement:
            return self(other.on_monomial(mon)) - other(self.on_monomial(mon)) * sign

        return GradedOperator(
            self.ring,
            f"[{self.name},{other.name}]",
            self.shift + other.shift,
            self.odd != other.odd,
            action,
            self.charge + other.charge,
        )

    def anticommutator(self, other: "GradedOperator", sign: int) -> "GradedOperator":
        """AB + sign BA"""
        self._check(other)
        return GradedOperator(
            self.ring,
            f"{{{self.name},{other.name}}}",
            self.shift + other.shift,
            self.odd != other.odd,
            lambda mon: self(other.on_monomial(mon)) + other(self.on_monomial(mon)) * sign,
            self.charge + other.charge,
        )

    def scale(self, c: Scalar) -> "GradedOperator":
        return GradedOperator(
            self.ring, f"{c}*{self.name}", self.shift, self.odd,
            lambda mon: self.on_monomial(mon) * c, self.charge,
        )

    def _check(self, other: "GradedOperator") -> None:
        if other.ring is not self.ring:
            raise RingMismatchError(f"{self.name} and {other.name} act over different rings")


def lincomb(terms: Sequence[Tuple[Scalar, GradedOperator]], name: Optional[str] = None) -> GradedOperator:
    """Linear combination of operators sharing shift, parity and charge"""
    if not terms:
        raise ValueError("lincomb needs at least one term")
    first = terms[0][1]
    for _, op in terms:
        first._check(op)
        if op.shift != first.shift or op.odd != first.odd:
            raise ValueError(f"lincomb of inhomogeneous operators {first.name}, {op.name}")

    def action(mon: Monomial) -> FockElement:
        out = FockElement.zero(first.ring)
        for c, op in terms:
            if c:
                out = out + op.on_monomial(mon) * c
        return out

    label = name or " + ".join(f"{c}*{op.name}" for c, op in terms)
    return GradedOperator(first.ring, label, first.shift, first.odd, action, first.charge)


def zero_operator(ring: RingSpec, shift: int = 0, odd: bool = False, charge: int = 0) -> GradedOperator:
    return GradedOperator(ring, "0", shift, odd, lambda mon: FockElement.zero(ring), charge)


def identity_operator(ring: RingSpec) -> GradedOperator:
    return GradedOperator(ring, "1", 0, False, lambda mon: FockElement(ring, {mon: Fraction(1)}))


def multiplication_operator(f: FockElement, name: str = "mult") -> GradedOperator:
    """Left multiplication by a homogeneous Fock element"""
    degrees = f.degrees()
    parities = set(f.parity_components())
    if len(degrees) > 1 or len(parities) > 1:
        raise ValueError("multiplication operator needs a homogeneous element")
    shift = degrees[0] if degrees else 0
    odd = parities.pop() if parities else False
    return GradedOperator(
        f.ring, name, shift, odd, lambda mon: f * FockElement(f.ring, {mon: Fraction(1)})
    )


# -- test monomials -------------------------------------------------------
def bounded_generators(ring: RingSpec, max_degree: int) -> List[Generator]:
    out = []
    for b in range(ring.dim):
        n = 1
        while ring.gen_degree(n, b) <= max_degree:
            out.append(Generator(n, b))
            n += 1
    return sorted(out)


def probe_monomials(ring: RingSpec, max_length: int = 2, max_degree: int = 8) -> List[Monomial]:
    """
    Monomials of length <= max_length built from generators of degree
    <= max_degree, with total degree <= max_degree; the vacuum is included
    """
    gens = bounded_generators(ring, max_degree)
    out: List[Monomial] = [EMPTY]
    for length in range(1, max_length + 1):
        for combo in combinations_with_replacement(gens, length):
            sign, mon = canonical(ring, combo)
            if sign and monomial_degree(ring, mon) <= max_degree:
                out.append(mon)
    return sorted(set(out), key=lambda m: (len(m), m))


def monomial_element(ring: RingSpec, mon: Monomial) -> FockElement:
    return FockElement(ring, {mon: Fraction(1)})


def operators_agree(
    a: GradedOperator, b: GradedOperator, monomials: Iterable[Monomial]
) -> Optional[Monomial]:
    """First monomial on which a and b differ, or None"""
    for mon in monomials:
        if a.on_monomial(mon) != b.on_monomial(mon):
            return mon
    return None


def operator_vanishes(op: GradedOperator, monomials: Iterable[Monomial]) -> Optional[Monomial]:
    for mon in monomials:
        if not op.on_monomial(mon).is_zero():
            return mon
    return None

