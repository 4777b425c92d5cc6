"""
Weyl pairs (y, dy) with [dy, y] = 1 and the reduction to the constant term
of the decomposition V = V_red[y]
"""
import logging
from dataclasses import dataclass, field
from fractions import Fraction
from math import factorial
from typing import Dict, List, Tuple

import sympy as sp

from src.algebra.errors import AlgebraError
from src.algebra.degeneration.truncated_module import SliceOperator, TruncatedModule, multiplication
from src.algebra.fock.fock_space import FockElement, Generator, Monomial
from src.algebra.lefschetz.subspace import Subspace

logger = logging.getLogger(__name__)


@dataclass
class WeylPair:
    y: SliceOperator
    dy: SliceOperator
    label: str = "coordinate"
    _powers: Dict[Tuple[str, int], SliceOperator] = field(default_factory=dict, repr=False)

    def y_power(self, a: int) -> SliceOperator:
        return self._power("y", a)

    def dy_power(self, a: int) -> SliceOperator:
        return self._power("dy", a)

    def _power(self, which: str, a: int) -> SliceOperator:
        key = (which, a)
        if key not in self._powers:
            self._powers[key] = getattr(self, which).power(a)
        return self._powers[key]

    @property
    def module(self) -> TruncatedModule:
        return self.y.module

    def commutator_defect(self, sector: int, degree: int) -> sp.Matrix:
        """[dy, y] - 1 on one slice"""
        bracket = self.dy.bracket(self.y).matrix(sector, degree)
        return bracket - sp.eye(bracket.rows)


def coordinate_pair(module: TruncatedModule) -> WeylPair:
    """y = p_2(w)/(2r) and the derivation dy = 2r d/dp_2(w)"""
    ring, r = module.ring, module.cfg.r
    var = Generator(2, ring.index("w"))
    y = multiplication(module, FockElement.generator(2, ring.element("w")) / (2 * r), "y", 2)

    def block(s: int, k: int) -> sp.Matrix:
        columns = []
        for mon in module.basis(k):
            columns.append(module.vector(_derivative(module, mon, var) * (2 * r), k - 2))
        return sp.Matrix.hstack(*columns)

    dy = SliceOperator(module, "dy", -2, 0, block)
    return WeylPair(y, dy, "coordinate")


def _derivative(module: TruncatedModule, mon: Monomial, var: Generator) -> FockElement:
    """d/dvar of a monomial in the even generator var"""
    count = mon.count(var)
    if count == 0:
        return FockElement.zero(module.ring)
    rest = list(mon)
    rest.remove(var)
    return FockElement(module.ring, {tuple(rest): Fraction(count)})


# -- reduction -----------------------------------------------------------
def red_matrix(pair: WeylPair, sector: int, degree: int) -> sp.Matrix:
    """Projector sum_i y^i (-dy)^i / i! onto ker dy along y V"""
    dim = pair.module.dim(degree)
    out = sp.zeros(dim, dim)
    i = 0
    while degree - 2 * i >= 0:
        down = pair.dy_power(i).matrix(sector, degree)
        up = pair.y_power(i).matrix(sector, degree - 2 * i)
        out += up * down * sp.Rational((-1) ** i, factorial(i))
        i += 1
    return out


def vector_red(f: FockElement, pair: WeylPair, sector: int = 0) -> FockElement:
    """Constant term of f in V_red[y]; f must be homogeneous"""
    module = pair.module
    degrees = f.degrees()
    if not degrees:
        return f
    if len(degrees) > 1:
        raise AlgebraError(f"vector_red needs a homogeneous element, got degrees {degrees}")
    k = degrees[0]
    return module.element(red_matrix(pair, sector, k) * module.vector(f, k), k)


def op_red(F: SliceOperator, pair: WeylPair) -> SliceOperator:
    """
    Constant term F_00 of F = sum y^i F_ij dy^j, computed as
    F_red(v) = sum_a y^a red(F(v_a)) with v_a = red(dy^a v)/a!
    """
    module, d, c = F.module, F.shift, F.charge

    def block(s: int, k: int) -> sp.Matrix:
        total = sp.zeros(module.dim(k + d), module.dim(k))
        a = 0
        while k - 2 * a >= 0:
            low = k - 2 * a
            if low + d >= 0:
                v_a = red_matrix(pair, s, low) * pair.dy_power(a).matrix(s, k) / factorial(a)
                image = red_matrix(pair, s + c, low + d) * F.matrix(s, low) * v_a
                total += pair.y_power(a).matrix(s + c, low + d) * image
            a += 1
        return total

    return SliceOperator(module, f"{F.name}_red", d, c, block, F.odd)


def red_basis(pair: WeylPair, sector: int, degree: int) -> List[sp.Matrix]:
    """Basis of ker dy on one slice"""
    dim = pair.module.dim(degree)
    if dim and degree < 2:
        return [sp.eye(dim)[:, i] for i in range(dim)]
    return pair.dy.matrix(sector, degree).nullspace() if dim else []


def brute_force_red(pair: WeylPair, sector: int, degree: int) -> sp.Matrix:
    """
    Projector onto ker dy built from an explicit basis of V_k as the union of
    y^a (ker dy)_{k-2a}; agrees with red_matrix when the pair is a Weyl pair
    """
    module = pair.module
    dim = module.dim(degree)
    blocks: List[Tuple[int, List[sp.Matrix]]] = []
    a = 0
    while degree - 2 * a >= 0:
        low = degree - 2 * a
        lift = pair.y_power(a).matrix(sector, low)
        blocks.append((a, [lift * v for v in red_basis(pair, sector, low)]))
        a += 1
    columns = [v for _, vs in blocks for v in vs]
    if not dim:
        return sp.zeros(0, 0)
    if len(columns) != dim or Subspace.span(dim, columns).dim != dim:
        raise AlgebraError(f"y-powers of ker dy do not span slice {degree}")
    basis = sp.Matrix.hstack(*columns)
    keep = len(blocks[0][1])
    selector = sp.zeros(dim, dim)
    for i in range(keep):
        selector[i, i] = 1
    return basis * selector * basis.inv()


def decompose(pair: WeylPair, vector: sp.Matrix, sector: int, degree: int) -> Dict[int, sp.Matrix]:
    """Components v_a in V_red with v = sum_a y^a v_a"""
    out: Dict[int, sp.Matrix] = {}
    a = 0
    while degree - 2 * a >= 0:
        down = pair.dy_power(a).matrix(sector, degree) * vector / factorial(a)
        out[a] = red_matrix(pair, sector, degree - 2 * a) * down
        a += 1
    return out


def recompose(pair: WeylPair, parts: Dict[int, sp.Matrix], sector: int, degree: int) -> sp.Matrix:
    out = sp.zeros(pair.module.dim(degree), 1)
    for a, v in parts.items():
        out += pair.y_power(a).matrix(sector, degree - 2 * a) * v
    return out
