"""
Specialized, degree-truncated Fock modules

Low-degree generators are replaced by scalars, leaving a polynomial ring in
the positive-degree generators. Hecke operators shift the value of p_2(1),
so the module is a direct sum of sectors; in sector s the generator p_2(1)
takes the value c0 + 2s. Operators become exact rational matrices between
(sector, degree) slices.
"""
import logging
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Callable, Dict, List, Optional, Tuple

import sympy as sp

from src.algebra.errors import AlgebraError, PreconditionError, SingularSliceError, WindowError
from src.algebra.fock.fock_space import EMPTY, FockElement, Generator, Monomial, canonical
from src.algebra.fock.operators import GradedOperator
from src.algebra.ring.ring_core import RingElement, RingSpec
from src.algebra.ring.spec_loader import resolve_ring
from src.utils.utils import from_sympy, parse_rational, to_sympy

logger = logging.getLogger(__name__)

Slice = Tuple[int, int]


@dataclass
class SpecializationConfig:
    """Scalars for the degree <= 0 generators plus the materialized window"""
    instance: str
    r: Fraction = Fraction(1)
    chi: Fraction = Fraction(0)
    window: int = 6
    slack: int = 2
    p2_value: Optional[Fraction] = None
    ring: RingSpec = field(init=False, repr=False)

    def __post_init__(self):
        self.r = parse_rational(self.r)
        self.chi = parse_rational(self.chi)
        if self.r == 0:
            raise PreconditionError("specialization needs r != 0")
        if self.window < 0 or self.slack < 0:
            raise PreconditionError(f"window and slack must be >= 0, got {self.window}, {self.slack}")
        if self.p2_value is not None:
            self.p2_value = parse_rational(self.p2_value)
        self.ring = resolve_ring(self.instance)
        if "w" not in self.ring._names:
            raise PreconditionError(f"{self.ring.name} has no point class w to specialize p_1(w) to r")

    @property
    def top(self) -> int:
        return self.window + self.slack

    @property
    def eta(self) -> RingElement:
        """The class with psi_0(eta) = r"""
        return self.ring.element("w")

    @property
    def c0(self) -> Fraction:
        """Value of p_2(1) in sector 0; psi_1(1) = p_2(1)/2 + p_1(c1)/2"""
        if self.p2_value is not None:
            return self.p2_value
        e = self.ring.c1.coeffs.get(self.ring.index("w"), Fraction(0))
        return 2 * self.chi - e * self.r

    def p2_in_sector(self, sector: int) -> Fraction:
        return self.c0 + 2 * sector


class TruncatedModule:
    """
    Slices V_{s,k} of the specialized module for degrees 0 <= k <= top.
    Every sector shares the same monomial basis; only the image of p_2(1)
    depends on the sector.
    """

    def __init__(self, cfg: SpecializationConfig):
        self.cfg = cfg
        self.ring = cfg.ring
        self.parabolic = self.ring.parabolic is not None
        if self.parabolic and self.ring.parabolic.points != 1:
            raise PreconditionError("the parabolic module is implemented for a single marked point")
        self._scalars = self._scalar_assignments()
        self._eliminated = self._eliminated_generators()
        self.generators = self._module_generators()
        self._bases: Dict[int, List[Monomial]] = {}
        self._index: Dict[int, Dict[Monomial, int]] = {}
        self._enumerate()
        self._spec_cache: Dict[Tuple[Monomial, int], FockElement] = {}

    def __repr__(self) -> str:
        return f"TruncatedModule({self.ring.name}, r={self.cfg.r}, window={self.cfg.window}+{self.cfg.slack})"

    # -- generators -------------------------------------------------------
    def degree(self, gen: Generator) -> int:
        return self.ring.gen_degree(gen.n, gen.b)

    def _scalar_assignments(self) -> Dict[Generator, Fraction]:
        ring = self.ring
        out: Dict[Generator, Fraction] = {}
        for b, basis in enumerate(ring.basis):
            for n in (1, 2):
                gen = Generator(n, b)
                if self.degree(gen) > 0 or gen == Generator(2, 0):
                    continue
                if basis.odd or self.degree(gen) < 0:
                    out[gen] = Fraction(0)
                elif basis.name == "w":
                    out[gen] = self.cfg.r
                else:
                    # eigen-line classes: psi_0(p_i) = 1
                    out[gen] = Fraction(1)
        return out

    def _line_classes(self) -> List[int]:
        return [b for b, basis in enumerate(self.ring.basis) if basis.name.startswith("p1_")]

    def _eliminated_generators(self) -> Dict[Generator, FockElement]:
        """Parabolic relations p_{n+1}(p_i) = (n+1) Y_i^n, p_{n+1}(w) = (n+1) sum_i Y_i^n"""
        if not self.parabolic:
            return {}
        ring = self.ring
        w = ring.index("w")
        lines = self._line_classes()
        ys = [FockElement.generator(2, ring.element(b)) / 2 for b in lines]
        last = FockElement.generator(2, ring.element(w)) / 2
        for y in ys:
            last = last - y
        ys.append(last)
        out: Dict[Generator, FockElement] = {}
        n = 2
        while 2 * n <= self.cfg.top:
            powers = [_power(y, n) for y in ys]
            for b, p in zip(lines, powers):
                out[Generator(n + 1, b)] = p * (n + 1)
            total = FockElement.zero(ring)
            for p in powers:
                total = total + p
            out[Generator(n + 1, w)] = total * (n + 1)
            n += 1
        return out

    def _module_generators(self) -> List[Generator]:
        out = []
        for b in range(self.ring.dim):
            n = 1
            while self.ring.gen_degree(n, b) <= self.cfg.top:
                gen = Generator(n, b)
                if self.degree(gen) > 0 and gen not in self._eliminated:
                    out.append(gen)
                n += 1
        return sorted(out)

    def _enumerate(self) -> None:
        top = self.cfg.top
        self._bases = {k: [] for k in range(top + 1)}
        gens = self.generators

        def walk(start: int, mon: Tuple[Generator, ...], degree: int) -> None:
            self._bases[degree].append(mon)
            for i in range(start, len(gens)):
                gen = gens[i]
                d = degree + self.degree(gen)
                if d > top:
                    continue
                odd = self.ring.odd(gen.b)
                if odd and mon and mon[-1] == gen:
                    continue
                walk(i, mon + (gen,), d)

        walk(0, EMPTY, 0)
        for k, basis in self._bases.items():
            basis.sort(key=lambda m: (len(m), m))
            self._index[k] = {m: i for i, m in enumerate(basis)}
        logger.debug(f"{self}: slice dims {self.dims()}")

    # -- slices -----------------------------------------------------------
    def dims(self) -> Dict[int, int]:
        return {k: len(v) for k, v in self._bases.items()}

    def dim(self, degree: int) -> int:
        if degree < 0:
            return 0
        if degree > self.cfg.top:
            raise WindowError(f"slice {degree} is above the materialized top {self.cfg.top}")
        return len(self._bases[degree])

    def basis(self, degree: int) -> List[Monomial]:
        if degree < 0:
            return []
        self.dim(degree)
        return list(self._bases[degree])

    def report_degrees(self) -> List[int]:
        return list(range(self.cfg.window + 1))

    # -- specialization ---------------------------------------------------
    def _generator_image(self, gen: Generator, sector: int) -> Optional[FockElement]:
        """None means the generator is kept as is"""
        ring = self.ring
        if gen == Generator(2, 0):
            return FockElement.scalar(ring, self.cfg.p2_in_sector(sector))
        if gen in self._scalars:
            return FockElement.scalar(ring, self._scalars[gen])
        if self.degree(gen) <= 0:
            return FockElement.zero(ring)
        if gen in self._eliminated:
            return self._eliminated[gen]
        return None

    def specialize_monomial(self, mon: Monomial, sector: int) -> FockElement:
        key = (mon, sector)
        value = self._spec_cache.get(key)
        if value is not None:
            return value
        ring = self.ring
        kept: List[Generator] = []
        value = FockElement.one(ring)
        for gen in mon:
            image = self._generator_image(gen, sector)
            if image is None:
                kept.append(gen)
            else:
                value = value * image
        if not value.is_zero():
            sign, rest = canonical(ring, kept)
            value = value * FockElement(ring, {rest: Fraction(sign)}) if sign else FockElement.zero(ring)
        self._spec_cache[key] = value
        return value

    def specialize(self, f: FockElement, sector: int = 0) -> FockElement:
        out: Dict[Monomial, Fraction] = {}
        for mon, c in f.terms.items():
            for m, v in self.specialize_monomial(mon, sector).terms.items():
                out[m] = out.get(m, Fraction(0)) + c * v
        return FockElement(self.ring, out)

    # -- vectors ----------------------------------------------------------
    def vector(self, f: FockElement, degree: int) -> sp.Matrix:
        """Coordinates of a specialized element living in one slice"""
        index = self._index_of(degree)
        out = sp.zeros(len(index), 1)
        for mon, c in f.terms.items():
            if mon not in index:
                raise AlgebraError(f"monomial {mon} is not in slice {degree} of {self}")
            out[index[mon], 0] += to_sympy(c)
        return out

    def element(self, vector: sp.Matrix, degree: int) -> FockElement:
        basis = self.basis(degree)
        return FockElement(self.ring, {m: from_sympy(vector[i, 0]) for i, m in enumerate(basis) if vector[i, 0] != 0})

    def _index_of(self, degree: int) -> Dict[Monomial, int]:
        if degree < 0:
            return {}
        self.dim(degree)
        return self._index[degree]


def _power(f: FockElement, n: int) -> FockElement:
    out = FockElement.one(f.ring)
    for _ in range(n):
        out = out * f
    return out


BlockFn = Callable[[int, int], sp.Matrix]


class SliceOperator:
    """
    Operator on a truncated module given by its blocks V_{s,k} -> V_{s+charge,k+shift}.
    Blocks are memoized; a block whose source or target leaves the materialized
    range raises WindowError instead of being truncated.
    """

    def __init__(self, module: TruncatedModule, name: str, shift: int, charge: int, block: BlockFn, odd: bool = False):
        self.module = module
        self.name = name
        self.shift = shift
        self.charge = charge
        self.odd = odd
        self._block = block
        self._memo: Dict[Slice, sp.Matrix] = {}

    def __repr__(self) -> str:
        return f"SliceOperator({self.name}, shift={self.shift}, charge={self.charge})"

    def matrix(self, sector: int, degree: int) -> sp.Matrix:
        key = (sector, degree)
        value = self._memo.get(key)
        if value is not None:
            return value
        top = self.module.cfg.top
        if degree > top or degree + self.shift > top:
            raise WindowError(f"{self.name} on slice {degree} needs slice {degree + self.shift} > top {top}")
        rows, cols = self.module.dim(degree + self.shift), self.module.dim(degree)
        if rows == 0 or cols == 0:
            value = sp.zeros(rows, cols)
        else:
            value = self._block(sector, degree)
        self._memo[key] = value
        return value

    def is_sound(self, sector: int, degree: int) -> bool:
        try:
            self.matrix(sector, degree)
        except WindowError:
            return False
        return True

    def apply(self, vector: sp.Matrix, sector: int, degree: int) -> sp.Matrix:
        return self.matrix(sector, degree) * vector

    # -- algebra ----------------------------------------------------------
    def compose(self, other: "SliceOperator") -> "SliceOperator":
        """self after other"""
        return SliceOperator(
            self.module,
            f"{self.name}{other.name}",
            self.shift + other.shift,
            self.charge + other.charge,
            lambda s, k: self.matrix(s + other.charge, k + other.shift) * other.matrix(s, k),
            self.odd != other.odd,
        )

    def __matmul__(self, other: "SliceOperator") -> "SliceOperator":
        return self.compose(other)

    def _same_type(self, other: "SliceOperator") -> None:
        if (self.shift, self.charge) != (other.shift, other.charge):
            raise AlgebraError(
                f"{self.name} and {other.name} have different shift/charge "
                f"({self.shift},{self.charge}) vs ({other.shift},{other.charge})"
            )

    def __add__(self, other: "SliceOperator") -> "SliceOperator":
        self._same_type(other)
        return SliceOperator(
            self.module, f"{self.name}+{other.name}", self.shift, self.charge,
            lambda s, k: self.matrix(s, k) + other.matrix(s, k), self.odd,
        )

    def __sub__(self, other: "SliceOperator") -> "SliceOperator":
        return self + other.scale(-1)

    def scale(self, c) -> "SliceOperator":
        value = to_sympy(parse_rational(c))
        return SliceOperator(
            self.module, f"{c}*{self.name}", self.shift, self.charge,
            lambda s, k: self.matrix(s, k) * value, self.odd,
        )

    def bracket(self, other: "SliceOperator") -> "SliceOperator":
        """Super-commutator"""
        sign = -1 if (self.odd and other.odd) else 1
        return SliceOperator(
            self.module, f"[{self.name},{other.name}]",
            self.shift + other.shift, self.charge + other.charge,
            lambda s, k: (
                self.matrix(s + other.charge, k + other.shift) * other.matrix(s, k)
                - other.matrix(s + self.charge, k + self.shift) * self.matrix(s, k) * sign
            ),
            self.odd != other.odd,
        )

    def power(self, n: int) -> "SliceOperator":
        if n < 0:
            raise ValueError(f"power needs n >= 0, got {n}")
        out = identity(self.module)
        for _ in range(n):
            out = self.compose(out)
        return out

    def inverse(self) -> "SliceOperator":
        """Blockwise inverse of a degree-preserving operator"""
        if self.shift != 0:
            raise AlgebraError(f"cannot invert {self.name} of shift {self.shift}")

        def block(s: int, k: int) -> sp.Matrix:
            forward = self.matrix(s - self.charge, k)
            if forward.det() == 0:
                raise SingularSliceError(f"{self.name} is singular on slice {k} of sector {s - self.charge}", k, s - self.charge)
            return forward.inv()

        return SliceOperator(self.module, f"{self.name}^-1", 0, -self.charge, block, self.odd)

    def vanishes_on(self, sector: int, degree: int) -> bool:
        return self.matrix(sector, degree).is_zero_matrix


def identity(module: TruncatedModule) -> SliceOperator:
    return SliceOperator(module, "1", 0, 0, lambda s, k: sp.eye(module.dim(k)))


def zero(module: TruncatedModule, shift: int = 0, charge: int = 0) -> SliceOperator:
    return SliceOperator(module, "0", shift, charge, lambda s, k: sp.zeros(module.dim(k + shift), module.dim(k)))


def from_fock(module: TruncatedModule, op: GradedOperator) -> SliceOperator:
    """
    Act on the canonical lift of each basis monomial in the free Fock space,
    then specialize the image into the target sector
    """
    if op.ring is not module.ring:
        raise AlgebraError(f"{op.name} acts over {op.ring.name}, not {module.ring.name}")

    def block(s: int, k: int) -> sp.Matrix:
        target = k + op.shift
        columns = []
        for mon in module.basis(k):
            image = module.specialize(op.on_monomial(mon), s + op.charge)
            columns.append(module.vector(image, target))
        return sp.Matrix.hstack(*columns)

    return SliceOperator(module, op.name, op.shift, op.charge, block, op.odd)


def multiplication(module: TruncatedModule, f: FockElement, name: str, shift: int) -> SliceOperator:
    """Multiplication by an element already written in module generators"""

    def block(s: int, k: int) -> sp.Matrix:
        columns = []
        for mon in module.basis(k):
            image = module.specialize(f * FockElement(module.ring, {mon: Fraction(1)}), s)
            columns.append(module.vector(image, k + shift))
        return sp.Matrix.hstack(*columns)

    return SliceOperator(module, name, shift, 0, block)


def specialize(f: FockElement, cfg: SpecializationConfig, sector: int = 0) -> FockElement:
    """Substitute scalars for the degree <= 0 generators of f"""
    return TruncatedModule(cfg).specialize(f, sector)
