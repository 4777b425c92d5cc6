"""
W-algebra layer: the elements D_{m,n}(xi) built from psi and the geometric
Hecke family, and checks of the undeformed and Lehn-type relations
"""
import logging
from fractions import Fraction
from itertools import product
from math import factorial
from typing import List, Optional, Tuple

from src.algebra.errors import AlgebraError
from src.algebra.fock.operators import GradedOperator, operators_agree, operator_vanishes, probe_monomials
from src.algebra.hecke.hecke_ops import _cached, _element_key, basis_label, geom_T_op, psi_op
from src.algebra.ring.ring_core import RingElement, RingSpec
from src.algebra.ring.spec_loader import resolve_ring
from src.algebra.schemas import CaseStatus, SuiteReport

logger = logging.getLogger(__name__)


def op_bracket(a: GradedOperator, b: GradedOperator) -> GradedOperator:
    """AB - (-1)^{|A||B|} BA"""
    return a.bracket(b)


def D_op(m: int, n: int, xi: RingElement) -> GradedOperator:
    """D_{m,n}(xi) = n!/(m+n)! (-Ad_{T_0(1)})^m psi_{m+n}(xi)"""
    if m < 0 or n < 0:
        raise ValueError(f"D_op needs m, n >= 0, got ({m}, {n})")
    ring = xi.ring

    def build() -> GradedOperator:
        t0 = geom_T_op(0, ring.one())
        op = psi_op(m + n, xi)
        for _ in range(m):
            op = t0.bracket(op).scale(-1)
        op = op.scale(Fraction(factorial(n), factorial(m + n)))
        op.name = f"D{m},{n}({basis_label(xi)})"
        return op

    return _cached(ring, ("D", m, n, _element_key(xi)), build)


def q_op(m: int, xi: RingElement) -> GradedOperator:
    return D_op(m, 0, xi)


def L_op(m: int, xi: RingElement) -> GradedOperator:
    return D_op(m, 1, xi)


def d_op(ring: RingSpec) -> GradedOperator:
    """The operator psi_2(1)/2"""
    return psi_op(2, ring.one()).scale(Fraction(1, 2))


def _compare(
    report: SuiteReport,
    case_id: str,
    lhs: GradedOperator,
    rhs: Optional[GradedOperator],
    monomials,
) -> None:
    try:
        bad = operator_vanishes(lhs, monomials) if rhs is None else operators_agree(lhs, rhs, monomials)
    except AlgebraError as e:
        logger.warning(f"{case_id} skipped: {e}")
        report.add(case_id, CaseStatus.SKIP, str(e))
        return
    if bad is None:
        report.add(case_id, CaseStatus.OK)
    else:
        report.add(case_id, CaseStatus.FAIL, f"differs on monomial {bad}")


def _scaled(op: GradedOperator, c: int, xi: RingElement) -> Optional[GradedOperator]:
    if c == 0 or xi.is_zero():
        return None
    return op.scale(c)


def index_pairs(cap: int) -> List[Tuple[int, int]]:
    return [(m, n) for m in range(cap + 1) for n in range(cap + 1) if 1 <= m + n <= cap]


def check_undeformed(instance: str, max_degree: int = 8, index_cap: int = 4, max_length: int = 2) -> SuiteReport:
    """
    Verify [D_{m,n}(xi), D_{m',n'}(eta)] = (n m' - m n') D_{m+m',n+n'-1}(xi eta)
    on probe monomials, for m+n, m'+n' <= index_cap and basis xi, eta
    """
    ring = resolve_ring(instance)
    report = SuiteReport(suite="undeformed", instance=ring.name)
    monomials = probe_monomials(ring, max_length, max_degree)
    basis = ring.basis_elements()
    for (m, n), (m1, n1) in product(index_pairs(index_cap), repeat=2):
        for xi, eta in product(basis, repeat=2):
            coeff = n * m1 - m * n1
            prod_cls = xi * eta
            lhs = D_op(m, n, xi).bracket(D_op(m1, n1, eta))
            rhs = _scaled(D_op(m + m1, n + n1 - 1, prod_cls), coeff, prod_cls) if n + n1 >= 1 else None
            case = f"W [D{m},{n}({basis_label(xi)}),D{m1},{n1}({basis_label(eta)})] deg<={max_degree}"
            _compare(report, case, lhs, rhs, monomials)
    logger.info(f"undeformed on {ring.name}: {report.summary}")
    return report.sorted()


def lehn_suite(instance: str, max_degree: int = 8, index_cap: int = 4, max_length: int = 2) -> SuiteReport:
    """Commutation relations of q_m = D_{m,0}, L_m = D_{m,1} and d = psi_2(1)/2"""
    ring = resolve_ring(instance)
    report = SuiteReport(suite="lehn", instance=ring.name)
    monomials = probe_monomials(ring, max_length, max_degree)
    basis = ring.basis_elements()
    idx = range(index_cap + 1)
    for m, n in product(idx, repeat=2):
        if m + n > index_cap:
            continue
        for xi, eta in product(basis, repeat=2):
            prod_cls = xi * eta
            names = f"xi={basis_label(xi)} eta={basis_label(eta)} deg<={max_degree}"
            if m + n >= 1:
                _compare(report, f"lehn [q{m},q{n}] {names}", q_op(m, xi).bracket(q_op(n, eta)), None, monomials)
                _compare(
                    report, f"lehn [L{m},q{n}] {names}",
                    L_op(m, xi).bracket(q_op(n, eta)),
                    _scaled(q_op(m + n, prod_cls), n, prod_cls),
                    monomials,
                )
            _compare(
                report, f"lehn [L{m},L{n}] {names}",
                L_op(m, xi).bracket(L_op(n, eta)),
                _scaled(L_op(m + n, prod_cls), n - m, prod_cls),
                monomials,
            )
    for m in range(1, index_cap + 1):
        for xi in basis:
            _compare(
                report, f"lehn [d,q{m}] xi={basis_label(xi)} deg<={max_degree}",
                d_op(ring).bracket(q_op(m, xi)),
                L_op(m, xi).scale(m),
                monomials,
            )
    logger.info(f"lehn on {ring.name}: {report.summary}")
    return report.sorted()
