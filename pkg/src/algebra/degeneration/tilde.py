"""
Identification of the sectors through X = T_0(eta)/r and u = X exp(theta/r),
and the operators tilde-D_{i,n}(xi) read off from the polynomial dependence
of u^{-m} D_{m,n}(xi) on m
"""
import logging
from fractions import Fraction
from math import factorial
from typing import Callable, Dict, List, Optional, Tuple

import sympy as sp

from src.algebra.errors import PolynomialityError, PreconditionError
from src.algebra.degeneration.truncated_module import (
    SliceOperator,
    SpecializationConfig,
    TruncatedModule,
    from_fock,
    zero,
)
from src.algebra.degeneration.weyl import WeylPair, coordinate_pair
from src.algebra.fock.operators import GradedOperator
from src.algebra.hecke.hecke_ops import _element_key, basis_label, geom_T_op, psi_op
from src.algebra.lefschetz.filtrations import nilpotent_exp
from src.algebra.ring.ring_core import RingElement
from src.algebra.w_algebra.w_ops import D_op

logger = logging.getLogger(__name__)

Sampler = Callable[[int], sp.Matrix]


# -- interpolation ---------------------------------------------------------
def interpolate(values: List[sp.Matrix]) -> List[sp.Matrix]:
    """Coefficients c_i with values[m] = sum_i c_i m^i for m = 0..len-1"""
    n = len(values)
    vandermonde = sp.Matrix(n, n, lambda m, i: sp.Integer(m) ** i)
    inverse = vandermonde.inv()
    shape = values[0].shape
    out = []
    for i in range(n):
        c = sp.zeros(*shape)
        for m in range(n):
            if inverse[i, m] != 0:
                c += values[m] * inverse[i, m]
        out.append(c)
    return out


def evaluate(coeffs: List[sp.Matrix], m: int) -> sp.Matrix:
    out = sp.zeros(*coeffs[0].shape)
    for i, c in enumerate(coeffs):
        out += c * sp.Integer(m) ** i
    return out


def fit_polynomial(sample: Sampler, max_degree: int, what: str = "samples") -> List[sp.Matrix]:
    """
    Interpolate through m = 0..max_degree and require the interpolant to
    reproduce m = max_degree + 1. Trailing zero coefficients are dropped.
    Stopping at the first M whose interpolant predicts m = M + 1 is unsound:
    binomial terms C(m, j) vanish on 0..j-1.
    """
    values = [sample(m) for m in range(max_degree + 2)]
    coeffs = interpolate(values[:-1])
    if evaluate(coeffs, max_degree + 1) != values[-1]:
        raise PolynomialityError(f"polynomiality not observed for {what} up to degree {max_degree}")
    while len(coeffs) > 1 and coeffs[-1].is_zero_matrix:
        coeffs.pop()
    return coeffs


def tilde_coefficients(coeffs: List[sp.Matrix]) -> List[sp.Matrix]:
    """c_i m^i = (m^i/i!) tilde_i, so tilde_i = i! c_i"""
    return [c * factorial(i) for i, c in enumerate(coeffs)]


# -- the degeneration context -------------------------------------------
class Degeneration:
    """
    X, theta, u and the tilde operators over one truncated module.
    All operators are built lazily and cached per slice.
    """

    def __init__(self, module: TruncatedModule, interp_max: int = 5):
        ring = module.ring
        if ring.rank != 0:
            raise PreconditionError(f"the degeneration needs a rank-0 model, {ring.name} has rank {ring.rank}")
        self.module = module
        self.cfg = module.cfg
        self.ring = ring
        self.eta = module.cfg.eta
        self.r = module.cfg.r
        self.interp_max = interp_max
        self._fock: Dict[int, Tuple[GradedOperator, SliceOperator]] = {}
        self._fits: Dict[tuple, List[sp.Matrix]] = {}
        self._tilde: Dict[tuple, SliceOperator] = {}
        self.X = self.fock(geom_T_op(0, self.eta)).scale(1 / self.r)
        self.X.name = "X"
        self.X_inv = self.X.inverse()
        self.theta = SliceOperator(module, "theta", 0, 0, self._theta_block)
        self.exp_theta = SliceOperator(
            module, "exp(theta/r)", 0, 0,
            lambda s, k: nilpotent_exp(self.theta.matrix(s, k) / sp.Rational(self.r.numerator, self.r.denominator)),
        )
        self.u = self.X.compose(self.exp_theta)
        self.u.name = "u"
        self.u_inv = self.u.inverse()
        self._coordinate: Optional[WeylPair] = None

    def __repr__(self) -> str:
        return f"Degeneration({self.module!r}, interp_max={self.interp_max})"

    # -- building blocks --------------------------------------------------
    def fock(self, op: GradedOperator) -> SliceOperator:
        cached = self._fock.get(id(op))
        if cached is None:
            cached = (op, from_fock(self.module, op))
            self._fock[id(op)] = cached
        return cached[1]

    def D(self, m: int, n: int, xi: RingElement) -> SliceOperator:
        return self.fock(D_op(m, n, xi))

    def psi(self, n: int, xi: RingElement) -> SliceOperator:
        return self.fock(psi_op(n, xi))

    def q1(self) -> SliceOperator:
        """q_1(1) = geometric T_0(1)"""
        return self.fock(geom_T_op(0, self.ring.one()))

    def coordinate_pair(self) -> WeylPair:
        if self._coordinate is None:
            self._coordinate = coordinate_pair(self.module)
        return self._coordinate

    # -- theta and u ------------------------------------------------------
    def _fit(self, key: tuple, sample: Sampler, what: str) -> List[sp.Matrix]:
        coeffs = self._fits.get(key)
        if coeffs is None:
            coeffs = fit_polynomial(sample, self.interp_max, what)
            self._fits[key] = coeffs
            logger.debug(f"{what}: polynomial of degree {len(coeffs) - 1}")
        return coeffs

    def theta_coefficients(self, s: int, k: int) -> List[sp.Matrix]:
        """Interpolation of X^{-j} q_j(eta) in j on one slice"""

        def sample(j: int) -> sp.Matrix:
            return self.X_inv.power(j).compose(self.D(j, 0, self.eta)).matrix(s, k)

        return self._fit(("theta", s, k), sample, f"X^-j q_j(eta) on slice ({s},{k})")

    def _theta_block(self, s: int, k: int) -> sp.Matrix:
        coeffs = self.theta_coefficients(s, k)
        if len(coeffs) < 2:
            return sp.zeros(*coeffs[0].shape)
        return coeffs[1]

    def u_inverse_coefficients(self, xi: RingElement, s: int, k: int) -> List[sp.Matrix]:
        """Interpolation of u^{-j} q_j(xi); its linear term vanishes for xi = eta"""

        def sample(j: int) -> sp.Matrix:
            return self.u_inv.power(j).compose(self.D(j, 0, xi)).matrix(s, k)

        return self._fit(("uq", _element_key(xi), s, k), sample, f"u^-j q_j({basis_label(xi)}) on ({s},{k})")

    # -- tilde operators --------------------------------------------------
    def tilde_fit(self, n: int, xi: RingElement, s: int, k: int) -> List[sp.Matrix]:
        def sample(m: int) -> sp.Matrix:
            return self.u_inv.power(m).compose(self.D(m, n, xi)).matrix(s, k)

        what = f"u^-m D(m,{n})({basis_label(xi)}) on ({s},{k})"
        return tilde_coefficients(self._fit(("D", n, _element_key(xi), s, k), sample, what))

    def tilde(self, i: int, n: int, xi: RingElement) -> SliceOperator:
        """tilde-D_{i,n}(xi); zero for negative indices or a zero class"""
        degree, odd = _class_type(xi)
        shift = 2 * n - 2 + degree
        if i < 0 or n < 0 or xi.is_zero():
            return zero(self.module, shift)
        key = (i, n, _element_key(xi))
        op = self._tilde.get(key)
        if op is None:

            def block(s: int, k: int) -> sp.Matrix:
                values = self.tilde_fit(n, xi, s, k)
                if i < len(values):
                    return values[i]
                return sp.zeros(*values[0].shape)

            op = SliceOperator(self.module, f"D~{i},{n}({basis_label(xi)})", shift, 0, block, odd)
            self._tilde[key] = op
        return op

    def derived_pair(self) -> WeylPair:
        """y = psi_1(eta)/r with dy = -tilde-D_{1,0}(1)"""
        y = self.psi(1, self.eta).scale(1 / self.r)
        y.name = "y"
        dy = self.tilde(1, 0, self.ring.one()).scale(-1)
        dy.name = "dy"
        return WeylPair(y, dy, "derived")


def _class_type(xi: RingElement) -> Tuple[int, bool]:
    if xi.is_zero():
        return 0, False
    degree, parity = xi.degree, xi.parity
    if degree is None or parity is None:
        raise ValueError(f"tilde operators need a homogeneous class, got {xi!r}")
    return degree, parity


def X_op(cfg: SpecializationConfig) -> SliceOperator:
    return Degeneration(TruncatedModule(cfg)).X


def theta_and_u(cfg: SpecializationConfig, interp_max: int = 5) -> Tuple[SliceOperator, SliceOperator]:
    deg = Degeneration(TruncatedModule(cfg), interp_max)
    return deg.theta, deg.u


def tilde_D(deg: Degeneration, n: int, xi: RingElement, max_i: int) -> Dict[int, SliceOperator]:
    return {i: deg.tilde(i, n, xi) for i in range(max_i + 1)}


def synthetic_tilde_roundtrip(given: List[sp.Matrix], u: sp.Matrix, max_degree: int = 5) -> List[sp.Matrix]:
    """
    Recover the matrices G_i from D_m = u^m sum_i m^i/i! G_i through the same
    interpolation used on truncated modules
    """
    u_inv = u.inv()

    def D(m: int) -> sp.Matrix:
        out = sp.zeros(*given[0].shape)
        for i, g in enumerate(given):
            out += g * sp.Rational(m ** i, factorial(i))
        return u ** m * out

    recovered = tilde_coefficients(fit_polynomial(lambda m: u_inv ** m * D(m), max_degree, "synthetic model"))
    while len(recovered) < len(given):
        recovered.append(sp.zeros(*given[0].shape))
    return recovered
