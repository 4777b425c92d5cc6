"""
The Fock space: super-commutative polynomials in generators p_n(b), b a basis
element of H, and the auxiliary space Fock (x) H[u, 1/u]
"""
import logging
import re
from fractions import Fraction
from typing import Callable, Dict, Iterable, List, NamedTuple, Optional, Tuple, Union

from src.algebra.errors import AugmentationError, RingMismatchError
from src.algebra.fock.symmetric import SymFunc, h_to_p
from src.algebra.ring.ring_core import RingElement, RingSpec
from src.utils.utils import parse_rational

logger = logging.getLogger(__name__)

Scalar = Union[int, Fraction]


class Generator(NamedTuple):
    """The symbol p_n(b)"""
    n: int
    b: int


Monomial = Tuple[Generator, ...]
ExtKey = Tuple[Monomial, int, int]

EMPTY: Monomial = ()


def generator_degree(ring: RingSpec, gen: Generator) -> int:
    return ring.gen_degree(gen.n, gen.b)


def generator_odd(ring: RingSpec, gen: Generator) -> bool:
    return ring.odd(gen.b)


def monomial_degree(ring: RingSpec, mon: Monomial) -> int:
    return sum(ring.gen_degree(g.n, g.b) for g in mon)


def monomial_odd(ring: RingSpec, mon: Monomial) -> bool:
    return sum(1 for g in mon if ring.odd(g.b)) % 2 == 1


def canonical(ring: RingSpec, gens: Iterable[Generator]) -> Tuple[int, Monomial]:
    """
    Sort generators into canonical order, returning (sign, monomial).
    Sign is 0 when an odd generator repeats.
    """
    items = list(gens)
    sign = 1
    # insertion sort, counting odd-odd transpositions
    for i in range(1, len(items)):
        j = i
        while j > 0 and items[j - 1] > items[j]:
            if ring.odd(items[j - 1].b) and ring.odd(items[j].b):
                sign = -sign
            items[j - 1], items[j] = items[j], items[j - 1]
            j -= 1
    for a, b in zip(items, items[1:]):
        if a == b and ring.odd(a.b):
            return 0, EMPTY
    return sign, tuple(items)


def _mul_monomials(ring: RingSpec, a: Monomial, b: Monomial) -> Tuple[int, Monomial]:
    if not a:
        return 1, b
    if not b:
        return 1, a
    return canonical(ring, a + b)


class FockElement:
    """Sparse element of the Fock space: monomial -> Fraction"""

    __slots__ = ("ring", "terms")

    def __init__(self, ring: RingSpec, terms: Optional[Dict[Monomial, Fraction]] = None):
        self.ring = ring
        self.terms: Dict[Monomial, Fraction] = {m: Fraction(c) for m, c in (terms or {}).items() if c != 0}

    # -- constructors -----------------------------------------------------
    @classmethod
    def zero(cls, ring: RingSpec) -> "FockElement":
        return cls(ring, {})

    @classmethod
    def one(cls, ring: RingSpec) -> "FockElement":
        return cls(ring, {EMPTY: Fraction(1)})

    @classmethod
    def scalar(cls, ring: RingSpec, c: Scalar) -> "FockElement":
        return cls(ring, {EMPTY: Fraction(c)})

    @classmethod
    def monomial(cls, ring: RingSpec, gens: Iterable[Generator], c: Scalar = 1) -> "FockElement":
        sign, mon = canonical(ring, gens)
        return cls(ring, {mon: Fraction(c) * sign} if sign else {})

    @classmethod
    def generator(cls, n: int, xi: RingElement) -> "FockElement":
        """p_n(xi), linear in xi"""
        if n < 1:
            raise ValueError(f"p_n needs n >= 1, got {n}")
        return cls(xi.ring, {(Generator(n, b),): c for b, c in xi.coeffs.items()})

    # -- arithmetic -------------------------------------------------------
    def _check(self, other: "FockElement") -> None:
        if other.ring is not self.ring:
            raise RingMismatchError(f"Fock elements over {self.ring.name} and {other.ring.name}")

    def __add__(self, other: "FockElement") -> "FockElement":
        self._check(other)
        out = dict(self.terms)
        for m, c in other.terms.items():
            out[m] = out.get(m, Fraction(0)) + c
        return FockElement(self.ring, out)

    def __neg__(self) -> "FockElement":
        return FockElement(self.ring, {m: -c for m, c in self.terms.items()})

    def __sub__(self, other: "FockElement") -> "FockElement":
        return self + (-other)

    def __mul__(self, other: Union["FockElement", Scalar]) -> "FockElement":
        if isinstance(other, FockElement):
            return fock_mul(self, other)
        return FockElement(self.ring, {m: c * other for m, c in self.terms.items()})

    def __rmul__(self, other: Scalar) -> "FockElement":
        return self * other

    def __truediv__(self, other: Scalar) -> "FockElement":
        return FockElement(self.ring, {m: c / other for m, c in self.terms.items()})

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, FockElement):
            return NotImplemented
        return self.ring is other.ring and self.terms == other.terms

    def __hash__(self) -> int:
        return hash((id(self.ring), frozenset(self.terms.items())))

    def __repr__(self) -> str:
        return to_text(self)

    # -- inspection -------------------------------------------------------
    def is_zero(self) -> bool:
        return not self.terms

    def items(self) -> List[Tuple[Monomial, Fraction]]:
        return sorted(self.terms.items())

    def degrees(self) -> List[int]:
        return sorted({monomial_degree(self.ring, m) for m in self.terms})

    def component(self, degree: int) -> "FockElement":
        return FockElement(
            self.ring, {m: c for m, c in self.terms.items() if monomial_degree(self.ring, m) == degree}
        )

    def parity_components(self) -> Dict[bool, "FockElement"]:
        out: Dict[bool, Dict[Monomial, Fraction]] = {False: {}, True: {}}
        for m, c in self.terms.items():
            out[monomial_odd(self.ring, m)][m] = c
        return {k: FockElement(self.ring, v) for k, v in out.items() if v}

    def max_length(self) -> int:
        return max((len(m) for m in self.terms), default=0)

    def map_classes(self, image: Callable[[int], RingElement]) -> "FockElement":
        """Extend a parity-preserving ring map to the algebra map p_n(b) -> p_n(image(b))"""
        out = FockElement.zero(self.ring)
        for mon, c in self.terms.items():
            value = FockElement.scalar(self.ring, c)
            for g in mon:
                value = value * FockElement.generator(g.n, image(g.b))
            out = out + value
        return out


def fock_mul(f: FockElement, g: FockElement) -> FockElement:
    """Super-commutative product with Koszul signs"""
    f._check(g)
    ring = f.ring
    out: Dict[Monomial, Fraction] = {}
    for a, ca in f.terms.items():
        for b, cb in g.terms.items():
            sign, mon = _mul_monomials(ring, a, b)
            if sign:
                out[mon] = out.get(mon, Fraction(0)) + sign * ca * cb
    return FockElement(ring, out)


def fock_sum(ring: RingSpec, items: Iterable[FockElement]) -> FockElement:
    out: Dict[Monomial, Fraction] = {}
    for item in items:
        for m, c in item.terms.items():
            out[m] = out.get(m, Fraction(0)) + c
    return FockElement(ring, out)


# -- symmetric-function evaluation ---------------------------------------
def _eval_partition_basis(ring: RingSpec, part: Tuple[int, ...], b: int) -> FockElement:
    key = f"p_lambda:{part}:{b}"
    cached = ring._cache.get(key)
    if cached is not None:
        return cached  # type: ignore[return-value]
    xi = ring.element(b)
    if not part:
        value = FockElement.scalar(ring, ring.aug_value(xi))
    elif len(part) == 1:
        value = FockElement.generator(part[0], xi)
    else:
        head, rest = part[0], part[1:]
        value = FockElement.zero(ring)
        for (i, j), c in ring.diagonal_mul(xi).items():
            left = FockElement.generator(head, ring.element(i))
            value = value + fock_mul(left, _eval_partition_basis(ring, rest, j)) * c
    ring._cache[key] = value
    return value


def eval_symfunc(f: SymFunc, xi: RingElement) -> FockElement:
    """
    Evaluate a power-sum polynomial at xi through the diagonal:
    (fg)(xi) = (f (x) g)(Delta xi), 1(xi) = eps(xi)
    """
    ring = xi.ring
    if () in f and not ring.compact and not xi.is_zero():
        raise AugmentationError(f"constant term needs the augmentation, undefined on {ring.name}")
    out = FockElement.zero(ring)
    for part, c in f.items():
        for b, cb in xi.coeffs.items():
            out = out + _eval_partition_basis(ring, part, b) * (c * cb)
    return out


def h_eval(n: int, xi: RingElement) -> FockElement:
    """h_n(xi); h_0 needs the augmentation"""
    if n < 0:
        return FockElement.zero(xi.ring)
    return eval_symfunc(h_to_p(n), xi)


# -- auxiliary space Fock (x) H[u, 1/u] -----------------------------------
class ExtendedElement:
    """Sparse map (monomial, basis index, u-power) -> Fraction"""

    __slots__ = ("ring", "terms")

    def __init__(self, ring: RingSpec, terms: Optional[Dict[ExtKey, Fraction]] = None):
        self.ring = ring
        self.terms: Dict[ExtKey, Fraction] = {k: Fraction(c) for k, c in (terms or {}).items() if c != 0}

    @classmethod
    def from_fock(cls, f: FockElement) -> "ExtendedElement":
        """f (x) 1 u^0"""
        return cls(f.ring, {(m, 0, 0): c for m, c in f.terms.items()})

    @classmethod
    def from_ring(cls, xi: RingElement, power: int = 0) -> "ExtendedElement":
        """1 (x) xi u^power"""
        return cls(xi.ring, {(EMPTY, b, power): c for b, c in xi.coeffs.items()})

    @classmethod
    def tensor(cls, f: FockElement, xi: RingElement, power: int = 0) -> "ExtendedElement":
        return cls(f.ring, {(m, b, power): c * cb for m, c in f.terms.items() for b, cb in xi.coeffs.items()})

    def __add__(self, other: "ExtendedElement") -> "ExtendedElement":
        out = dict(self.terms)
        for k, c in other.terms.items():
            out[k] = out.get(k, Fraction(0)) + c
        return ExtendedElement(self.ring, out)

    def __neg__(self) -> "ExtendedElement":
        return ExtendedElement(self.ring, {k: -c for k, c in self.terms.items()})

    def __sub__(self, other: "ExtendedElement") -> "ExtendedElement":
        return self + (-other)

    def scale(self, c: Scalar) -> "ExtendedElement":
        return ExtendedElement(self.ring, {k: v * c for k, v in self.terms.items()})

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, ExtendedElement):
            return NotImplemented
        return self.ring is other.ring and self.terms == other.terms

    def __hash__(self) -> int:
        return hash((id(self.ring), frozenset(self.terms.items())))

    def is_zero(self) -> bool:
        return not self.terms

    def shift(self, n: int) -> "ExtendedElement":
        """Multiply by u^n"""
        return ExtendedElement(self.ring, {(m, b, k + n): c for (m, b, k), c in self.terms.items()})

    def mul(self, other: "ExtendedElement") -> "ExtendedElement":
        """(f (x) a u^k)(g (x) b u^l) = (-1)^{|a||g|} fg (x) ab u^{k+l}"""
        ring = self.ring
        out: Dict[ExtKey, Fraction] = {}
        for (f, a, k), cf in self.terms.items():
            for (g, b, l), cg in other.terms.items():
                products = ring.mul_basis(a, b)
                if not products:
                    continue
                sign, mon = _mul_monomials(ring, f, g)
                if not sign:
                    continue
                if ring.odd(a) and monomial_odd(ring, g):
                    sign = -sign
                for p, cp in products.items():
                    key = (mon, p, k + l)
                    out[key] = out.get(key, Fraction(0)) + sign * cf * cg * cp
        return ExtendedElement(ring, out)

    def ring_act(self, xi: RingElement) -> "ExtendedElement":
        """xi . (f (x) a) = (-1)^{|xi||f|} f (x) xi a"""
        ring = self.ring
        out: Dict[ExtKey, Fraction] = {}
        for (f, a, k), cf in self.terms.items():
            f_odd = monomial_odd(ring, f)
            for x, cx in xi.coeffs.items():
                sign = -1 if (f_odd and ring.odd(x)) else 1
                for p, cp in ring.mul_basis(x, a).items():
                    key = (f, p, k)
                    out[key] = out.get(key, Fraction(0)) + sign * cf * cx * cp
        return ExtendedElement(ring, out)


# -- text serialization ---------------------------------------------------
_GEN_RE = re.compile(r"^p(\d+)\((.+)\)$")


def monomial_text(ring: RingSpec, mon: Monomial) -> str:
    if not mon:
        return "1"
    return "*".join(f"p{g.n}({ring.basis[g.b].name})" for g in mon)


def to_text(f: FockElement) -> str:
    """Serialize as "c * p{n}({basis})*..." terms joined by " + " """
    if f.is_zero():
        return "0"
    return " + ".join(f"{c} * {monomial_text(f.ring, m)}" for m, c in f.items())


def from_text(ring: RingSpec, text: str) -> FockElement:
    """Inverse of to_text"""
    text = text.strip()
    if text == "0":
        return FockElement.zero(ring)
    out = FockElement.zero(ring)
    for term in text.split(" + "):
        coeff, sep, mon = term.partition(" * ")
        if not sep:
            raise ValueError(f"Malformed Fock term {term!r}")
        gens: List[Generator] = []
        if mon.strip() != "1":
            for token in mon.split("*"):
                match = _GEN_RE.match(token.strip())
                if match is None:
                    raise ValueError(f"Malformed generator {token!r}")
                gens.append(Generator(int(match.group(1)), ring.index(match.group(2))))
        out = out + FockElement.monomial(ring, gens, parse_rational(coeff))
    return out
