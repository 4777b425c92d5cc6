"""
Relation sweeps for the Hecke operators
Each case is checked by exhaustive evaluation on a bounded monomial basis
"""
import logging
import time
from fractions import Fraction
from itertools import combinations_with_replacement, permutations, product
from typing import Any, Dict, List, Optional, Sequence, Tuple

from src.algebra.errors import AlgebraError, AugmentationError
from src.algebra.fock.fock_space import FockElement, to_text
from src.algebra.fock.operators import (
    GradedOperator,
    operators_agree,
    operator_vanishes,
    probe_monomials,
    zero_operator,
)
from src.algebra.hecke.hecke_ops import T_op, geom_T_op, psi_op
from src.algebra.hecke.series import cubic_kernel_check, hecke_product_oracle
from src.algebra.ring.ring_core import RingElement, RingSpec
from src.algebra.ring.spec_loader import resolve_ring
from src.algebra.schemas import CaseResult, CaseStatus, SuiteReport
from src.utils.utils import run_tasks

logger = logging.getLogger(__name__)

RELATIONS = ["Q0", "Q1", "Q2", "Q3", "oracle", "cubic"]


def koszul_sign(ring: RingSpec, xis: Sequence[RingElement], order: Sequence[int]) -> int:
    """Sign of reordering homogeneous xis into xis[order[0]], xis[order[1]], ..."""
    odd = [bool(xi.parity) for xi in xis]
    sign = 1
    for a in range(len(order)):
        for b in range(a + 1, len(order)):
            if order[a] > order[b] and odd[order[a]] and odd[order[b]]:
                sign = -sign
    return sign


# -- relation expressions ------------------------------------------------
def q0_sides(m: int, n: int, eta: RingElement, xi: RingElement) -> Tuple[GradedOperator, Optional[GradedOperator]]:
    """[psi_m(eta), T_n(xi)] and m T_{m+n-1}(eta xi)"""
    lhs = psi_op(m, eta).bracket(geom_T_op(n, xi))
    if m == 0 or (eta * xi).is_zero():
        return lhs, None
    return lhs, geom_T_op(m + n - 1, eta * xi).scale(m)


def q1_sides(m: int, n: int, xi: RingElement, xi1: RingElement, xi2: RingElement) -> Tuple[GradedOperator, GradedOperator]:
    """[T_m(xi xi'), T_n(xi'')] and [T_m(xi), T_n(xi' xi'')]"""
    ring = xi.ring
    left_arg, right_arg = xi * xi1, xi1 * xi2
    lhs = (
        geom_T_op(m, left_arg).bracket(geom_T_op(n, xi2))
        if not left_arg.is_zero() else zero_operator(ring)
    )
    rhs = (
        geom_T_op(m, xi).bracket(geom_T_op(n, right_arg))
        if not right_arg.is_zero() else zero_operator(ring)
    )
    return lhs, rhs


def anticommutator_on_tensor(m: int, n: int, tensor: Dict[Tuple[int, int], Fraction], ring: RingSpec) -> List[Tuple[Fraction, GradedOperator]]:
    """{T_m, T_n}(a (x) b) = T_m(a) T_n(b) + (-1)^{|a||b|} T_n(b) T_m(a)"""
    out = []
    for (a, b), c in sorted(tensor.items()):
        sign = -1 if (ring.odd(a) and ring.odd(b)) else 1
        op = geom_T_op(m, ring.element(a)).anticommutator(geom_T_op(n, ring.element(b)), sign)
        out.append((c, op))
    return out


def q2_expression(m: int, n: int, xi: RingElement, xi1: RingElement) -> GradedOperator:
    """The deformed four-term quadratic relation, which must vanish"""
    ring = xi.ring
    T = geom_T_op
    terms: List[Tuple[Fraction, GradedOperator]] = [
        (Fraction(1), T(m, xi).bracket(T(n + 3, xi1))),
        (Fraction(-3), T(m + 1, xi).bracket(T(n + 2, xi1))),
        (Fraction(3), T(m + 2, xi).bracket(T(n + 1, xi1))),
        (Fraction(-1), T(m + 3, xi).bracket(T(n, xi1))),
    ]
    s2xi1 = ring.s2 * xi1
    if not s2xi1.is_zero():
        terms.append((Fraction(-1), T(m, xi).bracket(T(n + 1, s2xi1))))
        terms.append((Fraction(1), T(m + 1, xi).bracket(T(n, s2xi1))))
    tensor = ring.diagonal_mul(ring.c1 * xi * xi1)
    terms.extend(anticommutator_on_tensor(m, n, tensor, ring))
    return _sum_operators(terms, ring)


def _sum_operators(terms: List[Tuple[Fraction, GradedOperator]], ring: RingSpec) -> GradedOperator:
    """Sum of operators that may differ in label but act homogeneously per monomial"""

    def action(mon):
        out = FockElement.zero(ring)
        for c, op in terms:
            out = out + op.on_monomial(mon) * c
        return out

    first = terms[0][1]
    return GradedOperator(ring, "sum", first.shift, first.odd, action, first.charge)


def q3_expression(ms: Sequence[int], xis: Sequence[RingElement]) -> GradedOperator:
    """sum_pi pi [T_{m3}(xi3), [T_{m2}(xi2), T_{m1+1}(xi1)]] with Koszul signs"""
    ring = xis[0].ring
    terms = []
    for order in permutations(range(3)):
        sign = koszul_sign(ring, xis, order)
        (m1, x1), (m2, x2), (m3, x3) = [(ms[i], xis[i]) for i in order]
        inner = geom_T_op(m2, x2).bracket(geom_T_op(m1 + 1, x1))
        terms.append((Fraction(sign), geom_T_op(m3, x3).bracket(inner)))
    return _sum_operators(terms, ring)


# -- case evaluation ----------------------------------------------------
def _names(ring: RingSpec, indices: Sequence[int]) -> List[str]:
    return [ring.basis[i].name for i in indices]


def _mismatch_detail(ring: RingSpec, mon) -> str:
    return f"differs on {to_text(FockElement(ring, {mon: Fraction(1)}))}"


def relation_cases(ring: RingSpec, relation: str, max_index: int) -> List[Dict[str, Any]]:
    """Plain-data parameter sets for a relation sweep"""
    basis = list(range(ring.dim))
    idx = range(max_index + 1)
    cases: List[Dict[str, Any]] = []
    if relation == "Q0":
        cases = [{"m": m, "n": n, "eta": a, "xi": b} for m, n, a, b in product(idx, idx, basis, basis)]
    elif relation == "Q1":
        cases = [
            {"m": m, "n": n, "xi": a, "xi1": b, "xi2": c}
            for m, n, a, b, c in product(idx, idx, basis, basis, basis)
            if b != 0
        ]
    elif relation == "Q2":
        cases = [{"m": m, "n": n, "xi": a, "xi1": b} for m, n, a, b in product(idx, idx, basis, basis)]
    elif relation == "Q3":
        cases = [
            {"ms": list(ms), "xis": list(xs)}
            for ms in product(idx, repeat=3)
            for xs in combinations_with_replacement(basis, 3)
        ]
    elif relation == "oracle":
        cases = [{"xis": list(xs)} for xs in product(basis, repeat=2)]
        cases += [{"xis": list(xs)} for xs in combinations_with_replacement(basis, 3)]
    elif relation == "cubic":
        cases = [{}]
    else:
        raise ValueError(f"Unknown relation {relation!r}")
    return cases


def case_id(ring: RingSpec, relation: str, params: Dict[str, Any], max_degree: int) -> str:
    suffix = f"deg<={max_degree}"
    if relation == "Q0":
        eta, xi = _names(ring, [params["eta"], params["xi"]])
        return f"Q0 m={params['m']} n={params['n']} eta={eta} xi={xi} {suffix}"
    if relation == "Q1":
        xi, xi1, xi2 = _names(ring, [params["xi"], params["xi1"], params["xi2"]])
        return f"Q1 m={params['m']} n={params['n']} xi={xi} xi'={xi1} xi''={xi2} {suffix}"
    if relation == "Q2":
        xi, xi1 = _names(ring, [params["xi"], params["xi1"]])
        return f"Q2 m={params['m']} n={params['n']} xi={xi} xi'={xi1} {suffix}"
    if relation == "Q3":
        ms = ",".join(str(m) for m in params["ms"])
        return f"Q3 m={ms} xi={','.join(_names(ring, params['xis']))} {suffix}"
    if relation == "oracle":
        return f"oracle len={len(params['xis'])} xi={','.join(_names(ring, params['xis']))}"
    return f"cubic order={params.get('order', '?')}"


def _check_oracle(ring: RingSpec, xis: List[RingElement], max_index: int) -> Tuple[CaseStatus, str]:
    """
    Compare the closed product formula with iterated Hecke operators on the
    vacuum. On an open ring only coefficients that both sides reach without
    the augmentation are compared.
    """
    n = len(xis)
    bound = max_index if n == 2 else min(max_index, 2)
    first = range(0, bound + 1)
    rest = range(-1, bound + 1)
    targets = [tuple(e) for e in product(first, *([rest] * (n - 1)))]
    predicted = hecke_product_oracle(xis, targets, bound, skip_augmented=not ring.compact)
    compared = 0
    for target in targets:
        if target not in predicted:
            continue
        value = FockElement.one(ring)
        try:
            for e, xi in zip(target, xis):
                value = T_op(e, xi)(value)
                if value.is_zero():
                    break
        except AugmentationError:
            continue
        if value != predicted[target]:
            return CaseStatus.FAIL, f"coefficient {target}: iterated {to_text(value)} vs formula {to_text(predicted[target])}"
        compared += 1
    if compared == 0:
        return CaseStatus.SKIP, f"every coefficient up to index {bound} needs the augmentation on {ring.name}"
    if compared < len(targets):
        return CaseStatus.OK, f"{compared} coefficients, {len(targets) - compared} need the augmentation"
    return CaseStatus.OK, f"{compared} coefficients"


def check_case(
    ring: RingSpec,
    relation: str,
    params: Dict[str, Any],
    max_degree: int,
    max_length: int,
    max_index: int,
    order: int,
) -> Tuple[CaseStatus, str]:
    """Evaluate one relation case; domain errors become SKIP, mismatches FAIL"""
    el = ring.element
    try:
        if relation == "cubic":
            result = cubic_kernel_check(ring, order)
            if result["vanishes"] and result["identity"]:
                return CaseStatus.OK, f"coefficients with total order <= {result['bound']}"
            return CaseStatus.FAIL, f"nonzero {result['nonzero']} mismatched {result['mismatched']}"
        if relation == "oracle":
            return _check_oracle(ring, [el(i) for i in params["xis"]], max_index)
        monomials = probe_monomials(ring, max_length, max_degree)
        if relation == "Q0":
            lhs, rhs = q0_sides(params["m"], params["n"], el(params["eta"]), el(params["xi"]))
            bad = operator_vanishes(lhs, monomials) if rhs is None else operators_agree(lhs, rhs, monomials)
        elif relation == "Q1":
            lhs, rhs = q1_sides(params["m"], params["n"], el(params["xi"]), el(params["xi1"]), el(params["xi2"]))
            bad = operators_agree(lhs, rhs, monomials)
        elif relation == "Q2":
            bad = operator_vanishes(q2_expression(params["m"], params["n"], el(params["xi"]), el(params["xi1"])), monomials)
        elif relation == "Q3":
            bad = operator_vanishes(q3_expression(params["ms"], [el(i) for i in params["xis"]]), monomials)
        else:
            raise ValueError(f"Unknown relation {relation!r}")
    except AlgebraError as e:
        logger.warning(f"{relation} {params} skipped: {e}")
        return CaseStatus.SKIP, str(e)
    if bad is None:
        return CaseStatus.OK, ""
    return CaseStatus.FAIL, _mismatch_detail(ring, bad)


def _relation_worker(task: Tuple[str, str, Dict[str, Any], int, int, int, int]) -> Dict[str, Any]:
    instance, relation, params, max_degree, max_length, max_index, order = task
    ring = resolve_ring(instance)
    started = time.time()
    try:
        status, detail = check_case(ring, relation, params, max_degree, max_length, max_index, order)
    except Exception as e:
        logger.error(f"{relation} {params} raised {e!r}")
        status, detail = CaseStatus.ERROR, repr(e)
    return {
        "id": case_id(ring, relation, {**params, "order": order}, max_degree),
        "status": status.value,
        "detail": detail,
        "duration": time.time() - started,
    }


def run_relation_suite(
    instance: str,
    relation: str,
    max_degree: int = 8,
    max_index: int = 3,
    max_length: int = 2,
    order: int = 4,
    jobs: int = 1,
) -> SuiteReport:
    """
    Sweep one relation over index tuples and basis arguments.

    Args:
        instance: ring instance string
        relation: one of Q0, Q1, Q2, Q3, oracle, cubic
        max_degree: degree bound B on probe monomials
        max_index: largest operator index in the sweep
        max_length: largest probe monomial length
        order: truncation order for the cubic kernel
        jobs: worker processes

    Returns:
        SuiteReport with cases sorted by id
    """
    ring = resolve_ring(instance)
    cases = relation_cases(ring, relation, max_index)
    logger.info(f"{relation} on {ring.name}: {len(cases)} cases, B={max_degree}, jobs={jobs}")
    tasks = [(instance, relation, params, max_degree, max_length, max_index, order) for params in cases]
    results = run_tasks(_relation_worker, tasks, jobs)
    report = SuiteReport(suite=relation, instance=ring.name)
    for item in results:
        report.cases.append(CaseResult(**item))
    return report.sorted()
