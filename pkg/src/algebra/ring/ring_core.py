"""
Graded super-commutative base ring H with diagonal class and Chern data
Provides RingSpec (the datum), RingElement (sparse elements) and the symbolic
Todd / divided-difference expansions evaluated inside H
"""
import logging
from dataclasses import dataclass
from enum import Enum
from fractions import Fraction
from functools import lru_cache
from itertools import product
from typing import Dict, Iterable, List, Optional, Tuple, Union

import sympy as sp
from sympy.polys.polyfuncs import symmetrize

from src.algebra.errors import (
    AugmentationError,
    RingMismatchError,
    RingValidationError,
)

logger = logging.getLogger(__name__)

Scalar = Union[int, Fraction]
Tensor = Dict[Tuple[int, int], Fraction]

T1, T2, U, C1, C2, Z = sp.symbols("t1 t2 u c1 c2 z")


class Parity(str, Enum):
    """Parity of a basis element"""
    EVEN = "even"
    ODD = "odd"


class RingKind(str, Enum):
    """Compact rings carry an augmentation, open ones do not"""
    COMPACT = "compact"
    OPEN = "open"


@dataclass(frozen=True)
class BasisElement:
    """Named homogeneous basis vector of H"""
    name: str
    degree: int
    parity: Parity = Parity.EVEN

    @property
    def odd(self) -> bool:
        return self.parity == Parity.ODD


@dataclass(frozen=True)
class ParabolicData:
    """Bookkeeping for the eigen-line extension of a curve ring"""
    g: int
    e: int
    r: int
    points: int


class RingElement:
    """Sparse element of H: basis index -> exact rational"""

    __slots__ = ("ring", "coeffs")

    def __init__(self, ring: "RingSpec", coeffs: Optional[Dict[int, Fraction]] = None):
        self.ring = ring
        self.coeffs: Dict[int, Fraction] = {
            i: Fraction(c) for i, c in (coeffs or {}).items() if c != 0
        }

    def _check(self, other: "RingElement") -> None:
        if other.ring is not self.ring:
            raise RingMismatchError(f"Ring mismatch: {self.ring.name} vs {other.ring.name}")

    def __add__(self, other: "RingElement") -> "RingElement":
        self._check(other)
        out = dict(self.coeffs)
        for i, c in other.coeffs.items():
            out[i] = out.get(i, Fraction(0)) + c
        return RingElement(self.ring, out)

    def __neg__(self) -> "RingElement":
        return RingElement(self.ring, {i: -c for i, c in self.coeffs.items()})

    def __sub__(self, other: "RingElement") -> "RingElement":
        return self + (-other)

    def __mul__(self, other: Union["RingElement", Scalar]) -> "RingElement":
        if isinstance(other, RingElement):
            return self.ring.mul(self, other)
        return RingElement(self.ring, {i: c * other for i, c in self.coeffs.items()})

    def __rmul__(self, other: Scalar) -> "RingElement":
        return RingElement(self.ring, {i: c * other for i, c in self.coeffs.items()})

    def __truediv__(self, other: Scalar) -> "RingElement":
        return RingElement(self.ring, {i: c / other for i, c in self.coeffs.items()})

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, RingElement):
            return NotImplemented
        return self.ring is other.ring and self.coeffs == other.coeffs

    def __hash__(self) -> int:
        return hash((id(self.ring), tuple(sorted(self.coeffs.items()))))

    def __repr__(self) -> str:
        if not self.coeffs:
            return "0"
        parts = [f"{c}*{self.ring.basis[i].name}" for i, c in sorted(self.coeffs.items())]
        return " + ".join(parts)

    def is_zero(self) -> bool:
        return not self.coeffs

    def items(self) -> Iterable[Tuple[int, Fraction]]:
        return sorted(self.coeffs.items())

    def degrees(self) -> List[int]:
        return sorted({self.ring.basis[i].degree for i in self.coeffs})

    def component(self, degree: int) -> "RingElement":
        return RingElement(
            self.ring, {i: c for i, c in self.coeffs.items() if self.ring.basis[i].degree == degree}
        )

    @property
    def parity(self) -> Optional[bool]:
        """True for odd, False for even, None when mixed or zero"""
        kinds = {self.ring.basis[i].odd for i in self.coeffs}
        if len(kinds) != 1:
            return None if kinds else False
        return kinds.pop()

    @property
    def degree(self) -> Optional[int]:
        degs = self.degrees()
        return degs[0] if len(degs) == 1 else None


class RingSpec:
    """The base datum (H, mul, Delta, c1, c2, optional augmentation)"""

    def __init__(
        self,
        name: str,
        basis: List[BasisElement],
        mul: Dict[Tuple[int, int], Dict[int, Fraction]],
        diag: Tensor,
        c1: Dict[int, Fraction],
        c2: Dict[int, Fraction],
        aug: Optional[Dict[int, Fraction]],
        kind: RingKind,
        rank: int,
        parabolic: Optional[ParabolicData] = None,
    ):
        self.name = name
        self.basis = list(basis)
        self._mul = {key: {k: Fraction(v) for k, v in val.items() if v != 0} for key, val in mul.items()}
        self.diag: Tensor = {key: Fraction(v) for key, v in diag.items() if v != 0}
        self.kind = RingKind(kind)
        self.rank = rank
        self.parabolic = parabolic
        self.aug = None if aug is None else {i: Fraction(v) for i, v in aug.items() if v != 0}
        self.c1 = RingElement(self, c1)
        self.c2 = RingElement(self, c2)
        self._names = {b.name: i for i, b in enumerate(self.basis)}
        self._cache: Dict[str, object] = {}

    def __repr__(self) -> str:
        return f"RingSpec({self.name})"

    # -- basic data -------------------------------------------------------
    @property
    def dim(self) -> int:
        return len(self.basis)

    @property
    def compact(self) -> bool:
        return self.kind == RingKind.COMPACT

    @property
    def top_degree(self) -> int:
        return max(b.degree for b in self.basis)

    def index(self, name: str) -> int:
        if name not in self._names:
            raise KeyError(f"Unknown basis element {name!r} in {self.name}")
        return self._names[name]

    def odd(self, i: int) -> bool:
        return self.basis[i].odd

    def gen_degree(self, n: int, b: int) -> int:
        return 2 * n - 4 + self.basis[b].degree

    def zero(self) -> RingElement:
        return RingElement(self, {})

    def one(self) -> RingElement:
        return RingElement(self, {0: Fraction(1)})

    def element(self, spec: Union[str, int, Dict[str, Scalar]]) -> RingElement:
        if isinstance(spec, int):
            return RingElement(self, {spec: Fraction(1)})
        if isinstance(spec, str):
            return RingElement(self, {self.index(spec): Fraction(1)})
        return RingElement(self, {self.index(k): Fraction(v) for k, v in spec.items()})

    def basis_elements(self) -> List[RingElement]:
        return [self.element(i) for i in range(self.dim)]

    # -- products ---------------------------------------------------------
    def mul_basis(self, i: int, j: int) -> Dict[int, Fraction]:
        return self._mul.get((i, j), {})

    def mul(self, a: RingElement, b: RingElement) -> RingElement:
        if a.ring is not self or b.ring is not self:
            raise RingMismatchError(f"Operands are not over {self.name}")
        out: Dict[int, Fraction] = {}
        for i, ca in a.coeffs.items():
            for j, cb in b.coeffs.items():
                for k, ck in self.mul_basis(i, j).items():
                    out[k] = out.get(k, Fraction(0)) + ca * cb * ck
        return RingElement(self, out)

    def power(self, a: RingElement, k: int) -> RingElement:
        out = self.one()
        for _ in range(k):
            out = self.mul(out, a)
        return out

    @property
    def s2(self) -> RingElement:
        """s2 = t1^2 + t1 t2 + t2^2 = c1^2 - c2"""
        return self.mul(self.c1, self.c1) - self.c2

    # -- tensors ----------------------------------------------------------
    def tensor_mul(self, a: Tensor, b: Tensor) -> Tensor:
        """(x (x) y)(z (x) w) = (-1)^{|y||z|} xz (x) yw"""
        out: Tensor = {}
        for (i, j), ca in a.items():
            for (k, l), cb in b.items():
                sign = -1 if (self.odd(j) and self.odd(k)) else 1
                for p, cp in self.mul_basis(i, k).items():
                    for q, cq in self.mul_basis(j, l).items():
                        key = (p, q)
                        out[key] = out.get(key, Fraction(0)) + sign * ca * cb * cp * cq
        return {k: v for k, v in out.items() if v != 0}

    def left_tensor(self, xi: RingElement) -> Tensor:
        return {(i, 0): c for i, c in xi.coeffs.items()}

    def right_tensor(self, xi: RingElement) -> Tensor:
        return {(0, i): c for i, c in xi.coeffs.items()}

    def diagonal_mul(self, xi: RingElement) -> Tensor:
        """(xi (x) 1) Delta, equal to (1 (x) xi) Delta"""
        return self.tensor_mul(self.left_tensor(xi), self.diag)

    # -- augmentation -----------------------------------------------------
    def aug_value(self, xi: RingElement) -> Fraction:
        if self.aug is None:
            raise AugmentationError(f"Augmentation is undefined on the open ring {self.name}")
        return sum((c * self.aug.get(i, Fraction(0)) for i, c in xi.coeffs.items()), Fraction(0))

    # -- symbolic Chern data ----------------------------------------------
    def eval_chern_poly(self, expr: sp.Expr) -> RingElement:
        """Evaluate a polynomial in symbols c1, c2 inside H"""
        expr = sp.expand(expr)
        if expr == 0:
            return self.zero()
        out = self.zero()
        for (a, b), coeff in sp.Poly(expr, C1, C2).terms():
            term = self.mul(self.power(self.c1, a), self.power(self.c2, b))
            out = out + term * Fraction(int(coeff.p), int(coeff.q))
        return out

    def todd_coefficients(self, kmax: int) -> List[RingElement]:
        key = f"todd:{kmax}"
        if key not in self._cache:
            self._cache[key] = [self.eval_chern_poly(expr) for expr in todd_symbolic(kmax)]
        return self._cache[key]  # type: ignore[return-value]

    def divided_difference(self, n: int) -> Dict[int, RingElement]:
        """u-power -> coefficient in H of the divided difference D_n(u)"""
        key = f"dd:{n}"
        if key not in self._cache:
            coeffs = {k: self.eval_chern_poly(expr) for k, expr in divided_difference_symbolic(n).items()}
            self._cache[key] = {k: v for k, v in coeffs.items() if not v.is_zero()}
        return self._cache[key]  # type: ignore[return-value]

    # -- validation -------------------------------------------------------
    def validate(self) -> "RingSpec":
        problems = list(self._invariant_problems())
        if problems:
            raise RingValidationError(f"Ring {self.name} is invalid: " + "; ".join(problems[:5]))
        logger.debug(f"Ring {self.name} validated ({self.dim} basis elements)")
        return self

    def _invariant_problems(self) -> Iterable[str]:
        n = self.dim
        unit = self.basis[0]
        if unit.degree != 0 or unit.odd:
            yield "basis[0] must be the even degree-0 unit"
        for i in range(n):
            if self.mul_basis(0, i) != {i: 1} or self.mul_basis(i, 0) != {i: 1}:
                yield f"1 is not a unit for {self.basis[i].name}"
        for i, j in product(range(n), repeat=2):
            ab = self.mul_basis(i, j)
            sign = -1 if (self.odd(i) and self.odd(j)) else 1
            ba = {k: sign * v for k, v in self.mul_basis(j, i).items()}
            if ab != ba:
                yield f"super-commutativity fails for ({self.basis[i].name}, {self.basis[j].name})"
            for k in ab:
                if self.basis[k].degree != self.basis[i].degree + self.basis[j].degree:
                    yield f"grading fails for ({self.basis[i].name}, {self.basis[j].name})"
                if self.odd(k) != (self.odd(i) != self.odd(j)):
                    yield f"parity fails for ({self.basis[i].name}, {self.basis[j].name})"
        elements = self.basis_elements()
        for a, b, c in product(elements, repeat=3):
            if self.mul(self.mul(a, b), c) != self.mul(a, self.mul(b, c)):
                yield f"associativity fails for {a!r}, {b!r}, {c!r}"
        for xi in elements:
            left = self.tensor_mul(self.left_tensor(xi), self.diag)
            right = self.tensor_mul(self.right_tensor(xi), self.diag)
            if left != right:
                yield f"Delta symmetry fails for {xi!r}"
        if self.tensor_mul(self.diag, self.diag) != self.tensor_mul(self.left_tensor(self.c2), self.diag):
            yield "Delta^2 != c2 Delta"
        if self.c1.degree not in (None, 2) or (self.c1.degree is None and not self.c1.is_zero()):
            yield "c1 must be homogeneous of degree 2"
        if not self.c2.is_zero() and self.c2.degree != 4:
            yield "c2 must be homogeneous of degree 4"
        if self.compact:
            if self.aug is None:
                yield "compact ring without augmentation"
            else:
                left: Dict[int, Fraction] = {}
                right: Dict[int, Fraction] = {}
                for (i, j), c in self.diag.items():
                    left[j] = left.get(j, Fraction(0)) + c * self.aug.get(i, Fraction(0))
                    right[i] = right.get(i, Fraction(0)) + c * self.aug.get(j, Fraction(0))
                unit = {0: Fraction(1)}
                if {k: v for k, v in left.items() if v} != unit or {k: v for k, v in right.items() if v} != unit:
                    yield "(eps (x) Id) Delta != 1"
        elif self.aug is not None:
            yield "open ring must not carry an augmentation"


def _symmetric_in_c(expr: sp.Expr) -> sp.Expr:
    """Rewrite a symmetric polynomial in t1, t2 through c1 = t1 + t2, c2 = t1 t2"""
    expr = sp.expand(expr)
    if not (expr.free_symbols & {T1, T2}):
        return expr
    sym, rem, _ = symmetrize(expr, T1, T2, formal=True, symbols=[C1, C2])
    if sp.expand(rem) != 0:
        raise ValueError(f"Expression is not symmetric in t1, t2: {expr}")
    return sp.expand(sym)


@lru_cache(maxsize=None)
def todd_symbolic(kmax: int) -> Tuple[sp.Expr, ...]:
    """Td_0..Td_kmax of t1 t2 x^2 / ((1 - e^{-t1 x})(1 - e^{-t2 x})) in c1, c2"""
    series = sp.series(Z / (1 - sp.exp(-Z)), Z, 0, kmax + 1).removeO()
    a = [series.coeff(Z, j) for j in range(kmax + 1)]
    out = []
    for k in range(kmax + 1):
        expr = sum(a[i] * a[k - i] * T1 ** i * T2 ** (k - i) for i in range(k + 1))
        out.append(_symmetric_in_c(expr))
    return tuple(out)


@lru_cache(maxsize=None)
def divided_difference_symbolic(n: int) -> Dict[int, sp.Expr]:
    """[u^n - (u-t1)^n - (u-t2)^n + (u-t1-t2)^n] / (t1 t2), by u-power, in c1, c2"""
    if n < 1:
        raise ValueError(f"divided_difference needs n >= 1, got {n}")
    numerator = sp.expand(U ** n - (U - T1) ** n - (U - T2) ** n + (U - T1 - T2) ** n)
    quotient, remainder = sp.div(numerator, T1 * T2, T1, T2, U)
    if sp.expand(remainder) != 0:
        raise ValueError(f"Numerator for n={n} is not divisible by t1 t2")
    quotient = sp.expand(quotient)
    if quotient == 0:
        return {}
    out: Dict[int, sp.Expr] = {}
    for (k,), coeff in sp.Poly(quotient, U).terms():
        out[k] = _symmetric_in_c(coeff)
    return out
