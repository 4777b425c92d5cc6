"""
The Lie algebra of polynomial Hamiltonian vector fields on the plane
Structure constants on the basis V_{m,n} and the realization by first-order
differential operators in k pairs of variables (x_i, y_i)
"""
import logging
import re
from fractions import Fraction
from itertools import combinations, product
from typing import Dict, List, Optional, Sequence, Tuple

import sympy as sp

from src.algebra.schemas import CaseStatus, SuiteReport
from src.utils.utils import parse_rational, to_sympy

logger = logging.getLogger(__name__)

Index = Tuple[int, int]

_TERM_RE = re.compile(r"^(?:(?P<coeff>[-+]?\d+(?:/\d+)?)\s*\*\s*)?V\((?P<m>\d+)\s*,\s*(?P<n>\d+)\)$")


class HamElement:
    """Sparse combination of V_{m,n}; V_{0,0} is the zero field and never stored"""

    def __init__(self, coeffs: Optional[Dict[Index, Fraction]] = None):
        self.coeffs: Dict[Index, Fraction] = {
            k: Fraction(v) for k, v in (coeffs or {}).items() if v != 0 and k != (0, 0)
        }

    @classmethod
    def basis(cls, m: int, n: int) -> "HamElement":
        if m < 0 or n < 0:
            raise ValueError(f"V_{{m,n}} needs m, n >= 0, got ({m}, {n})")
        return cls({(m, n): Fraction(1)})

    def __add__(self, other: "HamElement") -> "HamElement":
        out = dict(self.coeffs)
        for k, v in other.coeffs.items():
            out[k] = out.get(k, Fraction(0)) + v
        return HamElement(out)

    def scale(self, c) -> "HamElement":
        return HamElement({k: v * c for k, v in self.coeffs.items()})

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, HamElement):
            return NotImplemented
        return self.coeffs == other.coeffs

    def __repr__(self) -> str:
        return self.text()

    def is_zero(self) -> bool:
        return not self.coeffs

    def text(self) -> str:
        if not self.coeffs:
            return "0"
        parts = []
        for (m, n), c in sorted(self.coeffs.items()):
            parts.append(f"V({m},{n})" if c == 1 else f"{c}*V({m},{n})")
        return " + ".join(parts)

    @classmethod
    def parse(cls, text: str) -> "HamElement":
        """Parse "V(2,3)" or "2*V(1,0) + -1/2*V(0,2)" """
        text = text.strip()
        if text == "0":
            return cls()
        out = cls()
        for term in text.split(" + "):
            match = _TERM_RE.match(term.strip())
            if match is None:
                raise ValueError(f"Cannot parse Hamiltonian term {term!r}")
            coeff = parse_rational(match.group("coeff")) if match.group("coeff") else Fraction(1)
            out = out + cls.basis(int(match.group("m")), int(match.group("n"))).scale(coeff)
        return out


def h2_bracket(a: HamElement, b: HamElement) -> HamElement:
    """[V_{m,n}, V_{m',n'}] = (m'n - mn') V_{m+m'-1, n+n'-1}"""
    out: Dict[Index, Fraction] = {}
    for (m, n), ca in a.coeffs.items():
        for (m1, n1), cb in b.coeffs.items():
            coeff = m1 * n - m * n1
            target = (m + m1 - 1, n + n1 - 1)
            if coeff == 0 or min(target) < 0:
                continue
            out[target] = out.get(target, Fraction(0)) + ca * cb * coeff
    return HamElement(out)


# -- differential operator realization ------------------------------------
def plane_variables(k: int) -> Tuple[List[sp.Symbol], List[sp.Symbol]]:
    xs = list(sp.symbols(f"x1:{k + 1}"))
    ys = list(sp.symbols(f"y1:{k + 1}"))
    return xs, ys


class PolyDiffOp:
    """First-order operator sum_v f_v d/dv with polynomial coefficients"""

    def __init__(self, coeffs: Optional[Dict[sp.Symbol, sp.Expr]] = None):
        self.coeffs: Dict[sp.Symbol, sp.Expr] = {}
        for v, f in (coeffs or {}).items():
            f = sp.expand(f)
            if f != 0:
                self.coeffs[v] = f

    def __add__(self, other: "PolyDiffOp") -> "PolyDiffOp":
        out = dict(self.coeffs)
        for v, f in other.coeffs.items():
            out[v] = out.get(v, sp.Integer(0)) + f
        return PolyDiffOp(out)

    def scale(self, c) -> "PolyDiffOp":
        return PolyDiffOp({v: f * to_sympy(Fraction(c)) for v, f in self.coeffs.items()})

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, PolyDiffOp):
            return NotImplemented
        keys = set(self.coeffs) | set(other.coeffs)
        return all(sp.expand(self.coeffs.get(v, 0) - other.coeffs.get(v, 0)) == 0 for v in keys)

    def __repr__(self) -> str:
        if not self.coeffs:
            return "0"
        return " + ".join(f"({f})*d/d{v}" for v, f in sorted(self.coeffs.items(), key=lambda t: str(t[0])))

    def is_zero(self) -> bool:
        return not self.coeffs


def apply_diffop(op: PolyDiffOp, f: sp.Expr) -> sp.Expr:
    return sp.expand(sum((c * sp.diff(f, v) for v, c in op.coeffs.items()), sp.Integer(0)))


def diffop_bracket(a: PolyDiffOp, b: PolyDiffOp) -> PolyDiffOp:
    """[A, B] = sum_v (A(b_v) - B(a_v)) d/dv"""
    keys = set(a.coeffs) | set(b.coeffs)
    return PolyDiffOp({
        v: apply_diffop(a, b.coeffs.get(v, sp.Integer(0))) - apply_diffop(b, a.coeffs.get(v, sp.Integer(0)))
        for v in keys
    })


def vmn_as_diffop(m: int, n: int, k: int = 1) -> PolyDiffOp:
    """sum_i n y_i^{n-1} x_i^m d/dx_i - m x_i^{m-1} y_i^n d/dy_i"""
    if k < 1:
        raise ValueError(f"vmn_as_diffop needs k >= 1, got {k}")
    xs, ys = plane_variables(k)
    coeffs: Dict[sp.Symbol, sp.Expr] = {}
    for x, y in zip(xs, ys):
        if n:
            coeffs[x] = n * y ** (n - 1) * x ** m
        if m:
            coeffs[y] = -m * x ** (m - 1) * y ** n
    return PolyDiffOp(coeffs)


def ham_as_diffop(a: HamElement, k: int = 1) -> PolyDiffOp:
    out = PolyDiffOp()
    for (m, n), c in a.coeffs.items():
        out = out + vmn_as_diffop(m, n, k).scale(c)
    return out


def plane_monomials(variables: Sequence[sp.Symbol], max_degree: int) -> List[sp.Expr]:
    return sorted(
        sp.itermonomials(list(variables), max_degree),
        key=lambda e: sp.default_sort_key(e),
    )


# -- verification suites -------------------------------------------------
def check_jacobi(index_cap: int, report: SuiteReport) -> None:
    basis = [HamElement.basis(m, n) for m in range(index_cap + 1) for n in range(index_cap + 1) if (m, n) != (0, 0)]
    failures = 0
    for a, b, c in combinations(basis, 3):
        total = (
            h2_bracket(a, h2_bracket(b, c))
            + h2_bracket(b, h2_bracket(c, a))
            + h2_bracket(c, h2_bracket(a, b))
        )
        if not total.is_zero():
            failures += 1
            report.add(f"jacobi {a.text()},{b.text()},{c.text()}", CaseStatus.FAIL, total.text())
    if not failures:
        report.add(f"jacobi indices<={index_cap}", CaseStatus.OK)


def check_realization(index_cap: int = 4, degree_cap: int = 6, report: Optional[SuiteReport] = None) -> SuiteReport:
    """Operator brackets of the realization agree with the structure constants"""
    if report is None:
        report = SuiteReport(suite="h2", instance="plane")
    xs, ys = plane_variables(1)
    monomials = plane_monomials(xs + ys, degree_cap)
    indices = [(m, n) for m in range(index_cap + 1) for n in range(index_cap + 1)]
    for (m, n), (m1, n1) in product(indices, repeat=2):
        lhs = diffop_bracket(vmn_as_diffop(m, n), vmn_as_diffop(m1, n1))
        rhs = ham_as_diffop(h2_bracket(HamElement.basis(m, n), HamElement.basis(m1, n1)))
        bad = next((f for f in monomials if apply_diffop(lhs, f) != apply_diffop(rhs, f)), None)
        case = f"realize [V({m},{n}),V({m1},{n1})] deg<={degree_cap}"
        if bad is None:
            report.add(case, CaseStatus.OK)
        else:
            report.add(case, CaseStatus.FAIL, f"differs on {bad}")
    return report


def swap_pairs(i: int, j: int, k: int) -> Dict[sp.Symbol, sp.Symbol]:
    xs, ys = plane_variables(k)
    return {xs[i]: xs[j], xs[j]: xs[i], ys[i]: ys[j], ys[j]: ys[i]}


def sn_equivariance_and_j2(index_cap: int = 3, degree_cap: int = 5, report: Optional[SuiteReport] = None) -> SuiteReport:
    """
    The multivariate realization commutes with swaps of variable pairs, and
    for two pairs it maps the ideal (x1 - x2, y1 - y2) into itself
    """
    if report is None:
        report = SuiteReport(suite="h2", instance="plane")
    indices = [(m, n) for m in range(index_cap + 1) for n in range(index_cap + 1) if (m, n) != (0, 0)]
    for k in (2, 3):
        xs, ys = plane_variables(k)
        monomials = plane_monomials(xs + ys, degree_cap)
        for m, n in indices:
            op = vmn_as_diffop(m, n, k)
            bad = None
            for i, j in combinations(range(k), 2):
                sigma = swap_pairs(i, j, k)
                for f in monomials:
                    moved = apply_diffop(op, f).subs(sigma, simultaneous=True)
                    if sp.expand(moved - apply_diffop(op, f.subs(sigma, simultaneous=True))) != 0:
                        bad = (i, j, f)
                        break
                if bad:
                    break
            case = f"equivariant V({m},{n}) k={k} deg<={degree_cap}"
            report.add(case, CaseStatus.OK if bad is None else CaseStatus.FAIL, "" if bad is None else f"swap {bad}")
    xs, ys = plane_variables(2)
    diagonal = {xs[0]: xs[1], ys[0]: ys[1]}
    generators = [xs[0] - xs[1], ys[0] - ys[1], (xs[0] - xs[1]) * (ys[0] - ys[1])]
    multipliers = plane_monomials(xs + ys, 2)
    for m, n in indices:
        op = vmn_as_diffop(m, n, 2)
        bad = None
        for g in generators:
            for h in multipliers:
                image = apply_diffop(op, sp.expand(g * h))
                if sp.expand(image.subs(diagonal, simultaneous=True)) != 0:
                    bad = g * h
                    break
            if bad is not None:
                break
        case = f"J2 V({m},{n})"
        report.add(case, CaseStatus.OK if bad is None else CaseStatus.FAIL, "" if bad is None else f"leaves ideal on {bad}")
    return report


def verify_h2(index_cap: int = 4, degree_cap: int = 6) -> SuiteReport:
    report = SuiteReport(suite="h2", instance="plane")
    check_jacobi(index_cap, report)
    check_realization(index_cap, degree_cap, report)
    sn_equivariance_and_j2(min(index_cap, 3), min(degree_cap, 5), report)
    logger.info(f"h2 verify: {report.summary}")
    return report.sorted()
