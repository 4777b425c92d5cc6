"""
Truncated generating series over tensor powers of H
Holds the interaction kernel Omega, the closed product formula for Hecke
operators applied to the vacuum, and the cubic kernel vanishing check
"""
import logging
from fractions import Fraction
from functools import lru_cache
from itertools import permutations, product
from typing import Dict, Iterable, List, Optional, Sequence, Tuple

import sympy as sp

from src.algebra.errors import AugmentationError
from src.algebra.fock.fock_space import FockElement, fock_mul, h_eval
from src.algebra.ring.ring_core import T1, T2, Z, RingElement, RingSpec, _symmetric_in_c

logger = logging.getLogger(__name__)

Exps = Tuple[int, ...]
Slots = Tuple[int, ...]
SeriesKey = Tuple[Exps, Slots]


@lru_cache(maxsize=None)
def _omega_symbolic(k: int) -> Dict[int, sp.Expr]:
    """z-power -> coefficient (in c1, c2) of h_k(z - t1, z - t2)"""
    expr = sp.expand(sum((Z - T1) ** a * (Z - T2) ** (k - a) for a in range(k + 1)))
    out: Dict[int, sp.Expr] = {}
    for (j,), coeff in sp.Poly(expr, Z).terms():
        out[j] = _symmetric_in_c(coeff)
    return out


def omega_coefficients(ring: RingSpec, k: int) -> Dict[int, RingElement]:
    """j -> class multiplying x^{k+2} y^{-j} in Omega(x, y)"""
    key = f"omega:{k}"
    if key not in ring._cache:
        values = {j: ring.eval_chern_poly(e) for j, e in _omega_symbolic(k).items()}
        ring._cache[key] = {j: v for j, v in values.items() if not v.is_zero()}
    return ring._cache[key]  # type: ignore[return-value]


class SeriesElement:
    """
    Truncated Laurent series in x_1..x_k with coefficients in H^{(x) slots}.

    Terms are keyed by (exponents, slot basis indices). The region of
    expansion is |x_1| << ... << |x_k|; permutations rename variables
    without re-expanding.
    """

    def __init__(self, ring: RingSpec, nvars: int, nslots: int, terms: Optional[Dict[SeriesKey, Fraction]] = None):
        self.ring = ring
        self.nvars = nvars
        self.nslots = nslots
        self.terms: Dict[SeriesKey, Fraction] = {k: v for k, v in (terms or {}).items() if v != 0}

    @classmethod
    def unit(cls, ring: RingSpec, nvars: int, nslots: int) -> "SeriesElement":
        return cls(ring, nvars, nslots, {((0,) * nvars, (0,) * nslots): Fraction(1)})

    @classmethod
    def from_tensor(cls, ring: RingSpec, nvars: int, tensor: Dict[Slots, Fraction]) -> "SeriesElement":
        nslots = len(next(iter(tensor))) if tensor else nvars
        return cls(ring, nvars, nslots, {((0,) * nvars, s): c for s, c in tensor.items()})

    def _like(self, terms: Dict[SeriesKey, Fraction]) -> "SeriesElement":
        return SeriesElement(self.ring, self.nvars, self.nslots, terms)

    def __add__(self, other: "SeriesElement") -> "SeriesElement":
        out = dict(self.terms)
        for k, v in other.terms.items():
            out[k] = out.get(k, Fraction(0)) + v
        return self._like(out)

    def __sub__(self, other: "SeriesElement") -> "SeriesElement":
        return self + other.scale(-1)

    def scale(self, c) -> "SeriesElement":
        return self._like({k: v * c for k, v in self.terms.items()})

    def is_zero(self) -> bool:
        return not self.terms

    def _odd(self, b: int) -> bool:
        return self.ring.odd(b)

    def __mul__(self, other: "SeriesElement") -> "SeriesElement":
        """Slotwise product with Koszul signs (-1)^{sum_{i>j} |a_i||b_j|}"""
        ring = self.ring
        out: Dict[SeriesKey, Fraction] = {}
        for (ea, sa), ca in self.terms.items():
            odd_a = [ring.odd(b) for b in sa]
            for (eb, sb), cb in other.terms.items():
                sign = 1
                for j, bj in enumerate(sb):
                    if ring.odd(bj) and sum(odd_a[j + 1:]) % 2:
                        sign = -sign
                partial: List[Tuple[Slots, Fraction]] = [((), Fraction(sign) * ca * cb)]
                for a, b in zip(sa, sb):
                    prod_ab = ring.mul_basis(a, b)
                    if not prod_ab:
                        partial = []
                        break
                    partial = [(s + (k,), c * ck) for s, c in partial for k, ck in prod_ab.items()]
                if not partial:
                    continue
                exps = tuple(x + y for x, y in zip(ea, eb))
                for slots, c in partial:
                    key = (exps, slots)
                    out[key] = out.get(key, Fraction(0)) + c
        return self._like(out)

    def monomial_shift(self, shifts: Sequence[int]) -> "SeriesElement":
        """Multiply by prod x_i^{shifts[i]}"""
        return self._like({
            (tuple(e + s for e, s in zip(exps, shifts)), slots): c for (exps, slots), c in self.terms.items()
        })

    def permute(self, perm: Sequence[int], slot_of: Sequence[int]) -> "SeriesElement":
        """
        Left action of perm (variable i -> perm[i]): exponents and the slot
        attached to each variable move together, with the Koszul sign of the
        slot reordering. slot_of[i] is the slot of variable i.
        """
        ring = self.ring
        target = [0] * self.nslots
        for i in range(self.nvars):
            target[slot_of[i]] = slot_of[perm[i]]
        out: Dict[SeriesKey, Fraction] = {}
        for (exps, slots), c in self.terms.items():
            new_exps = [0] * self.nvars
            for i, e in enumerate(exps):
                new_exps[perm[i]] = e
            new_slots = [0] * self.nslots
            for p, b in enumerate(slots):
                new_slots[target[p]] = b
            sign = 1
            for p in range(self.nslots):
                for q in range(p + 1, self.nslots):
                    if target[p] > target[q] and ring.odd(slots[p]) and ring.odd(slots[q]):
                        sign = -sign
            key = (tuple(new_exps), tuple(new_slots))
            out[key] = out.get(key, Fraction(0)) + sign * c
        return self._like(out)

    def coefficient(self, exps: Exps) -> Dict[Slots, Fraction]:
        return {s: c for (e, s), c in self.terms.items() if e == exps}

    def support(self, max_total: int) -> Iterable[SeriesKey]:
        return sorted(k for k in self.terms if sum(abs(e) for e in k[0]) <= max_total)


def omega_series(ring: RingSpec, order: int) -> SeriesElement:
    """Omega(x, y) = x^2 / ((1 - x(1/y - t1))(1 - x(1/y - t2))) up to x^order"""
    if order < 2:
        raise ValueError(f"omega_series needs order >= 2, got {order}")
    terms: Dict[SeriesKey, Fraction] = {}
    for k in range(order - 1):
        for j, cls in omega_coefficients(ring, k).items():
            for b, c in cls.coeffs.items():
                terms[((k + 2, -j), (b,))] = c
    return SeriesElement(ring, 2, 1, terms)


def interaction_factor(ring: RingSpec, nvars: int, i: int, j: int, kmax: int, slot_of: Sequence[int]) -> SeriesElement:
    """1 - Delta_{ij} Omega(x_i, x_j), Omega truncated at x_i-order kmax + 2"""
    out = SeriesElement.unit(ring, nvars, len(slot_of))
    terms: Dict[SeriesKey, Fraction] = {}
    for k in range(kmax + 1):
        for jj, cls in omega_coefficients(ring, k).items():
            for (a, b), c in ring.diagonal_mul(cls).items():
                slots = [0] * len(slot_of)
                slots[slot_of[i]] = a
                slots[slot_of[j]] = b
                sign = -1 if (slot_of[j] < slot_of[i] and ring.odd(a) and ring.odd(b)) else 1
                exps = [0] * nvars
                exps[i] = k + 2
                exps[j] = -jj
                key = (tuple(exps), tuple(slots))
                terms[key] = terms.get(key, Fraction(0)) - sign * c
    return out + SeriesElement(ring, nvars, len(slot_of), terms)


def interaction_product(ring: RingSpec, nvars: int, kmax: int, slot_of: Sequence[int]) -> SeriesElement:
    """prod_{i<j} (1 - Delta_{ij} Omega(x_i, x_j))"""
    out = SeriesElement.unit(ring, nvars, len(slot_of))
    for i in range(nvars):
        for j in range(i + 1, nvars):
            out = out * interaction_factor(ring, nvars, i, j, kmax, slot_of)
    return out


def _reversed_slots(n: int) -> List[int]:
    """Variable x_{i+1} sits in slot n - 1 - i, so slots read x_n ... x_1"""
    return [n - 1 - i for i in range(n)]


def hecke_product_oracle(
    xis: Sequence[RingElement], exps: Iterable[Exps], max_exp: int, skip_augmented: bool = False
) -> Dict[Exps, FockElement]:
    """
    Coefficients of T_{xi_n}(x_n) ... T_{xi_1}(x_1)(1) through
    (phi(x_n) (x) ... (x) phi(x_1))(prod_{i<j}(1 - Delta_ij Omega(x_i, x_j)) xi_n (x) ... (x) xi_1).

    xis[0] is applied first. exps are targets (e_1, ..., e_n) with |e_i| <= max_exp.
    With skip_augmented, targets whose expansion needs h_0 of a nonzero class
    on an open ring are left out of the result instead of raising.
    """
    ring = xis[0].ring
    n = len(xis)
    slot_of = _reversed_slots(n)
    kmax = max(0, 2 * max_exp)
    vacuum: Dict[Slots, Fraction] = {}
    for choice in product(*[sorted(xi.coeffs.items()) for xi in reversed(xis)]):
        slots = tuple(b for b, _ in choice)
        coeff = Fraction(1)
        for _, c in choice:
            coeff *= c
        vacuum[slots] = vacuum.get(slots, Fraction(0)) + coeff
    kernel = interaction_product(ring, n, kmax, slot_of) * SeriesElement.from_tensor(ring, n, vacuum)
    out: Dict[Exps, FockElement] = {}
    for target in exps:
        try:
            out[tuple(target)] = _oracle_coefficient(kernel, target, slot_of)
        except AugmentationError as e:
            if not skip_augmented:
                raise
            logger.debug(f"oracle coefficient {tuple(target)} left out: {e}")
    return out


def _oracle_coefficient(kernel: SeriesElement, target: Exps, slot_of: Sequence[int]) -> FockElement:
    ring = kernel.ring
    n = len(target)
    total = FockElement.zero(ring)
    for (d, slots), c in kernel.terms.items():
        rest = [t - x for t, x in zip(target, d)]
        if min(rest) < 0:
            continue
        value = FockElement.scalar(ring, c)
        # slots are written x_n ... x_1
        for var in reversed(range(n)):
            value = fock_mul(value, h_eval(rest[var], ring.element(slots[slot_of[var]])))
            if value.is_zero():
                break
        total = total + value
    return total


# -- cubic kernel --------------------------------------------------------
TRANSPOSITIONS = {"12": (1, 0, 2), "13": (2, 1, 0), "23": (0, 2, 1)}


def _act(series: SeriesElement, word: Sequence[str], slot_of: Sequence[int]) -> SeriesElement:
    """Left action of a product of transpositions, rightmost first"""
    for name in reversed(word):
        series = series.permute(TRANSPOSITIONS[name], slot_of)
    return series


def _symmetrize(series: SeriesElement, slot_of: Sequence[int]) -> SeriesElement:
    out = SeriesElement(series.ring, series.nvars, series.nslots)
    for perm in permutations(range(3)):
        out = out + series.permute(perm, slot_of)
    return out


def cubic_kernel(ring: RingSpec, order: int) -> Tuple[SeriesElement, SeriesElement, SeriesElement]:
    """(P, K, K') with K = (1 - s12)(1 + s13) P and K' = sum_pi pi(x_1^{-1} K)"""
    slot_of = _reversed_slots(3)
    P = interaction_product(ring, 3, order, slot_of)
    K = P + _act(P, ["13"], slot_of) - _act(P, ["12"], slot_of) - _act(P, ["12", "13"], slot_of)
    K_prime = _symmetrize(K.monomial_shift((-1, 0, 0)), slot_of)
    return P, K, K_prime


def cubic_kernel_check(ring: RingSpec, order: int) -> Dict[str, object]:
    """
    Check that K' vanishes and that the symmetrization identity holds,
    on all coefficients with sum |e_i| <= order - 3
    """
    if order < 3:
        raise ValueError(f"cubic_kernel_check needs order >= 3, got {order}")
    slot_of = _reversed_slots(3)
    P, _, K_prime = cubic_kernel(ring, order)
    bound = order - 3
    leftover = list(K_prime.support(bound))
    rhs = (
        P.monomial_shift((-1, 0, 0))
        - P.monomial_shift((0, -1, 0)).scale(2)
        + P.monomial_shift((0, 0, -1))
    )
    difference = K_prime - _symmetrize(rhs, slot_of)
    mismatched = list(difference.support(bound))
    logger.info(f"Cubic kernel on {ring.name} order {order}: {len(leftover)} nonzero, {len(mismatched)} mismatched")
    return {
        "vanishes": not leftover,
        "identity": not mismatched,
        "nonzero": [list(k[0]) for k in leftover[:5]],
        "mismatched": [list(k[0]) for k in mismatched[:5]],
        "bound": bound,
    }
