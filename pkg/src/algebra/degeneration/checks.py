"""
Verification suites over specialized truncated modules: Weyl reduction,
the tilde operators, the sl_2-triple, the reduced and unreduced relations,
and the parabolic modification operators
"""
import logging
from fractions import Fraction
from itertools import product
from math import comb, factorial
from typing import Callable, Dict, List, Optional, Tuple

import sympy as sp

from src.algebra.errors import (
    AlgebraError,
    NilpotencyError,
    PolynomialityError,
    PreconditionError,
    SingularSliceError,
    WindowError,
)
from src.algebra.degeneration.sl2 import sl2_from_degeneration
from src.algebra.degeneration.tilde import Degeneration, synthetic_tilde_roundtrip
from src.algebra.degeneration.truncated_module import SliceOperator, SpecializationConfig, TruncatedModule
from src.algebra.degeneration.weyl import (
    WeylPair,
    brute_force_red,
    decompose,
    op_red,
    recompose,
    red_matrix,
)
from src.algebra.hecke.hecke_ops import _element_key, basis_label, geom_T_op
from src.algebra.ring.instances import parabolic_label
from src.algebra.ring.ring_core import RingElement
from src.algebra.schemas import CaseStatus, SuiteReport

logger = logging.getLogger(__name__)

Check = Callable[[], Optional[str]]

SKIP_ERRORS = (WindowError, SingularSliceError, PolynomialityError, NilpotencyError, PreconditionError)


def _case(report: SuiteReport, case: str, check: Check) -> None:
    """Run one check; it returns None when it holds, otherwise the failure detail"""
    try:
        problem = check()
    except SKIP_ERRORS as e:
        logger.warning(f"{case} skipped: {e}")
        report.add(case, CaseStatus.SKIP, str(e))
        return
    except AlgebraError as e:
        report.add(case, CaseStatus.FAIL, str(e))
        return
    except Exception as e:
        logger.error(f"{case} raised {type(e).__name__}: {e}")
        report.add(case, CaseStatus.ERROR, f"{type(e).__name__}: {e}")
        return
    if problem is None:
        report.add(case, CaseStatus.OK)
    else:
        report.add(case, CaseStatus.FAIL, problem)


def _zero(matrix: sp.Matrix, what: str = "defect") -> Optional[str]:
    if matrix.is_zero_matrix:
        return None
    nonzero = sum(1 for x in matrix if x != 0)
    return f"{what} has {nonzero} nonzero entries"


def _equal(a: sp.Matrix, b: sp.Matrix) -> Optional[str]:
    return _zero(a - b, "difference")


def _degeneration(cfg: SpecializationConfig, interp_max: int) -> Degeneration:
    return Degeneration(TruncatedModule(cfg), interp_max)


def best_pair(deg: Degeneration) -> WeylPair:
    """The derived pair when it is a Weyl pair on the window, else the coordinate pair"""
    try:
        pair = deg.derived_pair()
        for k in range(deg.cfg.window + 1):
            if not pair.commutator_defect(0, k).is_zero_matrix:
                raise AlgebraError(f"derived pair fails [dy,y]=1 on slice {k}")
        return pair
    except (AlgebraError, SKIP_ERRORS) as e:
        logger.info(f"falling back to the coordinate Weyl pair: {e}")
        return deg.coordinate_pair()


# -- weyl ------------------------------------------------------------------
def weyl_suite(cfg: SpecializationConfig, interp_max: int = 5, sectors: Tuple[int, ...] = (0, 1)) -> SuiteReport:
    deg = _degeneration(cfg, interp_max)
    module = deg.module
    report = SuiteReport(suite="weyl", instance=module.ring.name)
    pair = deg.coordinate_pair()
    one, w = module.ring.one(), module.ring.element("w")
    probes = {
        "psi2(1)": deg.psi(2, one),
        "psi2(w)": deg.psi(2, w),
        "q1(1)": deg.q1(),
        "T1(1)": deg.fock(geom_T_op(1, one)),
    }
    reduced = {name: op_red(op, pair) for name, op in probes.items()}
    psi1_red = op_red(deg.psi(1, w), pair)
    for s, k in product(sectors, module.report_degrees()):
        where = f"s={s} deg={k}"
        _case(report, f"weyl [dy,y]=1 {where}", lambda: _zero(pair.commutator_defect(s, k)))
        _case(report, f"weyl red in ker dy {where}", lambda: _zero(pair.dy.matrix(s, k) * red_matrix(pair, s, k)))
        _case(report, f"weyl roundtrip {where}", lambda: _roundtrip(pair, s, k))
        _case(report, f"weyl red oracle {where}", lambda: _equal(red_matrix(pair, s, k), brute_force_red(pair, s, k)))
        _case(report, f"weyl red(psi1(w))=0 {where}", lambda: _zero(psi1_red.matrix(s, k)))
        for name, F in reduced.items():
            _case(report, f"weyl {name}_red commutes with y {where}", lambda: _zero(F.bracket(pair.y).matrix(s, k)))
            _case(report, f"weyl {name}_red commutes with dy {where}", lambda: _zero(F.bracket(pair.dy).matrix(s, k)))
    _derived_pair_cases(deg, report)
    logger.info(f"weyl on {module.ring.name}: {report.summary}")
    return report.sorted()


def _roundtrip(pair: WeylPair, s: int, k: int) -> Optional[str]:
    dim = pair.module.dim(k)
    for j in range(dim):
        v = sp.eye(dim)[:, j]
        parts = decompose(pair, v, s, k)
        if recompose(pair, parts, s, k) != v:
            return f"basis vector {j} is not recovered"
        for a, part in parts.items():
            if k - 2 * a >= 2 and not (pair.dy.matrix(s, k - 2 * a) * part).is_zero_matrix:
                return f"component y^{a} of basis vector {j} is not in ker dy"
    return None


def _derived_pair_cases(deg: Degeneration, report: SuiteReport) -> None:
    try:
        derived = deg.derived_pair()
    except SKIP_ERRORS as e:
        report.add("weyl derived pair", CaseStatus.SKIP, str(e))
        return
    for k in deg.module.report_degrees():
        _case(report, f"weyl derived [dy,y]=1 deg={k}", lambda: _zero(derived.commutator_defect(0, k)))


# -- tilde -----------------------------------------------------------------
SYNTHETIC_GIVEN = [
    sp.Matrix([[1, 2], [0, 1]]),
    sp.Matrix([[0, 1], [3, 0]]),
    sp.Matrix([[sp.Rational(1, 2), 0], [0, -1]]),
]
SYNTHETIC_U = sp.Matrix([[1, 1], [0, 1]])


def tilde_suite(cfg: SpecializationConfig, interp_max: int = 5, max_n: int = 2) -> SuiteReport:
    deg = _degeneration(cfg, interp_max)
    module = deg.module
    report = SuiteReport(suite="tildeD", instance=module.ring.name)
    one, eta = module.ring.one(), deg.eta
    pair = deg.coordinate_pair()
    _case(report, "tildeD X(1)=1", lambda: _equal(deg.X.matrix(0, 0), sp.eye(1)))
    _case(report, "tildeD synthetic roundtrip", _synthetic_roundtrip)
    y_bracket = pair.y.bracket(deg.q1())
    for k in module.report_degrees():
        where = f"deg={k}"
        _case(report, f"tildeD [y,q1(1)]=X {where}", lambda: _equal(y_bracket.matrix(0, k), deg.X.matrix(0, k)))
        _case(report, f"tildeD X invertible {where}", lambda: _invertible(deg, k))
        _case(report, f"tildeD theta nilpotent {where}", lambda: _nilpotent(deg, k))
        _case(report, f"tildeD u^-k q_k(eta) linear term {where}", lambda: _linear_term(deg, k))
        _case(report, f"tildeD q~1(eta)=0 {where}", lambda: _zero(deg.tilde(1, 0, eta).matrix(0, k)))
        for n in range(max_n + 1):
            _case(
                report, f"tildeD D~0,{n}(1)=psi{n}(1) {where}",
                lambda: _equal(deg.tilde(0, n, one).matrix(0, k), deg.psi(n, one).matrix(0, k)),
            )
    logger.info(f"tildeD on {module.ring.name}: {report.summary}")
    return report.sorted()


def _synthetic_roundtrip() -> Optional[str]:
    recovered = synthetic_tilde_roundtrip(SYNTHETIC_GIVEN, SYNTHETIC_U)
    for i, (given, got) in enumerate(zip(SYNTHETIC_GIVEN, recovered)):
        if given != got:
            return f"G_{i} not recovered"
    return None


def _invertible(deg: Degeneration, k: int) -> Optional[str]:
    deg.X_inv.matrix(1, k)
    return None


def _nilpotent(deg: Degeneration, k: int) -> Optional[str]:
    deg.exp_theta.matrix(0, k)
    return None


def _linear_term(deg: Degeneration, k: int) -> Optional[str]:
    coeffs = deg.u_inverse_coefficients(deg.eta, 0, k)
    if len(coeffs) < 2:
        return None
    return _zero(coeffs[1], "linear term")


# -- sl2 -------------------------------------------------------------------
def sl2_suite(cfg: SpecializationConfig, interp_max: int = 5) -> SuiteReport:
    deg = _degeneration(cfg, interp_max)
    report = SuiteReport(suite="sl2", instance=deg.ring.name)
    try:
        pair = best_pair(deg)
        sl2_from_degeneration(deg, pair, report)
    except SKIP_ERRORS as e:
        logger.warning(f"sl2 pipeline skipped: {e}")
        report.add(f"sl2 triple window={cfg.window}", CaseStatus.SKIP, str(e))
    except AlgebraError as e:
        report.add(f"sl2 triple window={cfg.window}", CaseStatus.FAIL, str(e))
    return report.sorted()


# -- reduced relations ---------------------------------------------------------
def _index_pairs(cap: int) -> List[Tuple[int, int]]:
    return [(m, n) for m in range(cap + 1) for n in range(cap + 1) if 1 <= m + n <= cap]


def _classes(deg: Degeneration) -> List[RingElement]:
    return [deg.ring.one(), deg.eta]


def _tilde_relation_terms(
    get: Callable[[int, int, RingElement], SliceOperator],
    m: int, n: int, xi: RingElement, m1: int, n1: int, xi1: RingElement,
    r: Fraction, symmetric: bool,
) -> List[Tuple[Fraction, List[SliceOperator]]]:
    """
    Right-hand side of the bracket of two tilde operators as a list of
    (coefficient, product of factors); the reduced form doubles each
    correction into both orderings. Terms on a vanishing class are dropped.
    """
    w = xi.ring.element("w")
    terms: List[Tuple[Fraction, List[SliceOperator]]] = []

    def add(c: Fraction, *factors: Tuple[int, int, RingElement]) -> None:
        if any(cls.is_zero() for _, _, cls in factors):
            return
        terms.append((c, [get(i, j, cls) for i, j, cls in factors]))

    lead = n * m1 - m * n1
    if lead and m + m1 >= 1 and n + n1 >= 1:
        add(Fraction(lead), (m + m1 - 1, n + n1 - 1, xi * xi1))
    if n * m1:
        c = Fraction(-n * m1) / r
        add(c, (m, n - 1, xi * w), (m1 - 1, n1, xi1))
        if symmetric:
            add(c, (m1 - 1, n1, xi1 * w), (m, n - 1, xi))
    if m * n1:
        c = Fraction(m * n1) / r
        if symmetric:
            add(c, (m - 1, n, xi * w), (m1, n1 - 1, xi1))
        add(c, (m1, n1 - 1, xi1 * w), (m - 1, n, xi))
    return terms


def _product_matrix(factors: List[SliceOperator], s: int, k: int) -> sp.Matrix:
    op = factors[0]
    for f in factors[1:]:
        op = op.compose(f)
    return op.matrix(s, k)


def _relation_defect(
    lhs: SliceOperator, terms: List[Tuple[Fraction, List[SliceOperator]]], s: int, k: int
) -> Optional[str]:
    total = lhs.matrix(s, k)
    for c, factors in terms:
        total = total - _product_matrix(factors, s, k) * sp.Rational(c.numerator, c.denominator)
    return _zero(total)


def reduced_relations_check(cfg: SpecializationConfig, interp_max: int = 5, index_cap: int = 2) -> SuiteReport:
    """
    Brackets of tilde-D operators and of their reductions against the
    relations with the r^{-1} correction terms, eta = w
    """
    deg = _degeneration(cfg, interp_max)
    report = SuiteReport(suite="reduced", instance=deg.ring.name)
    pair = best_pair(deg)
    red_cache: Dict[tuple, SliceOperator] = {}

    def tilde(i: int, n: int, xi: RingElement) -> SliceOperator:
        return deg.tilde(i, n, xi)

    def tilde_red(i: int, n: int, xi: RingElement) -> SliceOperator:
        key = (i, n, _element_key(xi))
        if key not in red_cache:
            red_cache[key] = op_red(deg.tilde(i, n, xi), pair)
        return red_cache[key]

    pairs = _index_pairs(index_cap)
    for (m, n), (m1, n1) in product(pairs, repeat=2):
        for xi, xi1 in product(_classes(deg), repeat=2):
            names = f"[D~{m},{n}({basis_label(xi)}),D~{m1},{n1}({basis_label(xi1)})]"
            lhs = tilde(m, n, xi).bracket(tilde(m1, n1, xi1))
            terms = _tilde_relation_terms(tilde, m, n, xi, m1, n1, xi1, deg.r, symmetric=False)
            lhs_red = tilde_red(m, n, xi).bracket(tilde_red(m1, n1, xi1))
            terms_red = _tilde_relation_terms(tilde_red, m, n, xi, m1, n1, xi1, deg.r, symmetric=True)
            for k in deg.module.report_degrees():
                _case(report, f"reduced {names} deg={k}", lambda: _relation_defect(lhs, terms, 0, k))
                _case(report, f"reduced twice {names}_red deg={k} pair={pair.label}", lambda: _relation_defect(lhs_red, terms_red, 0, k))
    logger.info(f"reduced on {deg.ring.name}: {report.summary}")
    return report.sorted()


# -- unreduced H2 ---------------------------------------------------------------
PolyState = Dict[int, sp.Matrix]


class UnreducedOperator:
    """
    sum_{i,j} x^i C(m,i) C(n,j) (-r)^{-j} tilde-D_{m-i,n-j}(xi w^j) d_x^j
    acting on V[x]; states map x-powers to vectors of one slice
    """

    def __init__(self, deg: Degeneration, m: int, n: int, xi: RingElement):
        self.deg = deg
        self.m, self.n, self.xi = m, n, xi
        w = deg.eta
        self.terms: List[Tuple[int, int, Fraction, SliceOperator]] = []
        for i in range(m + 1):
            for j in range(n + 1):
                cls = xi * deg.ring.power(w, j)
                if cls.is_zero():
                    continue
                coeff = Fraction(comb(m, i) * comb(n, j)) / (-deg.r) ** j
                self.terms.append((i, j, coeff, deg.tilde(m - i, n - j, cls)))
        degree = xi.degree or 0
        self.shift = 2 * n - 2 + degree

    def apply(self, state: PolyState, k: int) -> PolyState:
        out: PolyState = {}
        for i, j, coeff, op in self.terms:
            matrix = op.matrix(0, k)
            for p, v in state.items():
                if p < j:
                    continue
                falling = Fraction(factorial(p), factorial(p - j))
                image = matrix * v * sp.Rational((coeff * falling).numerator, (coeff * falling).denominator)
                target = p - j + i
                out[target] = out[target] + image if target in out else image
        return out


def _state_difference(a: PolyState, b: PolyState) -> Optional[str]:
    for p in set(a) | set(b):
        left = a.get(p)
        right = b.get(p)
        if left is None:
            left = sp.zeros(*right.shape)
        if right is None:
            right = sp.zeros(*left.shape)
        if left != right:
            return f"x^{p} components differ"
    return None


def _scaled_state(state: PolyState, c: int) -> PolyState:
    return {p: v * c for p, v in state.items()}


def _subtract(a: PolyState, b: PolyState) -> PolyState:
    out = dict(a)
    for p, v in b.items():
        out[p] = out[p] - v if p in out else -v
    return out


def unreduced_h2_check(cfg: SpecializationConfig, interp_max: int = 5, index_cap: int = 2, x_cap: int = 2) -> SuiteReport:
    """[D~_unred(m,n), D~_unred(m',n')] = (m'n - mn') D~_unred(m+m'-1, n+n'-1) on V[x]"""
    deg = _degeneration(cfg, interp_max)
    report = SuiteReport(suite="unred", instance=deg.ring.name)
    one = deg.ring.one()
    ops: Dict[Tuple[int, int], UnreducedOperator] = {}

    def unred(m: int, n: int) -> UnreducedOperator:
        if (m, n) not in ops:
            ops[(m, n)] = UnreducedOperator(deg, m, n, one)
        return ops[(m, n)]

    def check(m: int, n: int, m1: int, n1: int, k: int) -> Optional[str]:
        a, b = unred(m, n), unred(m1, n1)
        dim = deg.module.dim(k)
        coeff = m1 * n - m * n1
        for j in range(dim):
            for p in range(x_cap + 1):
                state = {p: sp.eye(dim)[:, j]}
                ab = a.apply(b.apply(state, k), k + b.shift)
                ba = b.apply(a.apply(state, k), k + a.shift)
                lhs = _subtract(ab, ba)
                if coeff and m + m1 >= 1 and n + n1 >= 1:
                    rhs = _scaled_state(unred(m + m1 - 1, n + n1 - 1).apply(state, k), coeff)
                else:
                    rhs = {}
                problem = _state_difference(lhs, rhs)
                if problem:
                    return f"basis vector {j} times x^{p}: {problem}"
        return None

    for (m, n), (m1, n1) in product(_index_pairs(index_cap), repeat=2):
        for k in deg.module.report_degrees():
            _case(report, f"unred [V({m},{n}),V({m1},{n1})] deg={k} x<={x_cap}", lambda: check(m, n, m1, n1, k))
    logger.info(f"unred on {deg.ring.name}: {report.summary}")
    return report.sorted()


# -- parabolic -------------------------------------------------------------------
def parabolic_ops_check(cfg: SpecializationConfig, interp_max: int = 5, max_n: int = 2) -> SuiteReport:
    """
    Eigen-line operators y_i = psi_1(p_i), X_i = [y_i, q_1(1)] against the
    modification relations, on sector 0
    """
    module = TruncatedModule(cfg)
    ring = module.ring
    report = SuiteReport(suite="parabolic", instance=ring.name)
    if ring.parabolic is None:
        report.add("parabolic instance", CaseStatus.SKIP, f"{ring.name} carries no eigen-line classes")
        return report
    r = ring.parabolic.r
    if cfg.r != r:
        report.add("parabolic r matches eigen-line count", CaseStatus.SKIP, f"r={cfg.r} but the ring has {r} lines")
        return report
    deg = Degeneration(module, interp_max)
    labels = [parabolic_label(ring, 1, i) for i in range(1, r + 1)]
    ys = [deg.psi(1, p) for p in labels]
    q1 = deg.q1()
    Xs = [y.bracket(q1) for y in ys]
    positive = [xi for xi in ring.basis_elements() if (xi.degree or 0) > 0]
    for k in module.report_degrees():
        where = f"deg={k}"
        for i, X in enumerate(Xs, start=1):
            for j, y in enumerate(ys, start=1):
                _case(report, f"parabolic [X{i},y{j}]=0 {where}", lambda: _zero(X.bracket(y).matrix(0, k)))
            for n in range(1, max_n + 2):
                _case(
                    report, f"parabolic [psi{n}(1),X{i}]={n}y{i}^{n - 1}X{i} {where}",
                    lambda: _equal(
                        deg.psi(n, ring.one()).bracket(X).matrix(0, k),
                        ys[i - 1].power(n - 1).compose(X).matrix(0, k) * n,
                    ),
                )
            for n in range(max_n + 1):
                for xi in positive:
                    _case(
                        report, f"parabolic [psi{n}({basis_label(xi)}),X{i}]=0 {where}",
                        lambda: _zero(deg.psi(n, xi).bracket(X).matrix(0, k)),
                    )
                _case(
                    report, f"parabolic T{n}(p{i})=y{i}^{n}X{i} {where}",
                    lambda: _equal(
                        deg.fock(geom_T_op(n, labels[i - 1])).matrix(0, k),
                        ys[i - 1].power(n).compose(X).matrix(0, k),
                    ),
                )
        for n in range(max_n + 2):
            _case(report, f"parabolic sum y_i^{n}=psi{n}(w) {where}", lambda: _power_sum(deg, ys, n, k))
    logger.info(f"parabolic on {ring.name}: {report.summary}")
    return report.sorted()


def _power_sum(deg: Degeneration, ys: List[SliceOperator], n: int, k: int) -> Optional[str]:
    total = sp.zeros(deg.module.dim(k + 2 * n), deg.module.dim(k))
    for y in ys:
        total += y.power(n).matrix(0, k)
    return _equal(total, deg.psi(n, deg.eta).matrix(0, k))


# -- dispatch -------------------------------------------------------------------
SUITES = {
    "weyl": weyl_suite,
    "tildeD": tilde_suite,
    "sl2": sl2_suite,
    "reduced": reduced_relations_check,
    "unred": unreduced_h2_check,
    "parabolic": parabolic_ops_check,
}


def run_degeneration(cfg: SpecializationConfig, suite: str, interp_max: int = 5) -> SuiteReport:
    if suite not in SUITES:
        raise ValueError(f"Unknown degeneration suite {suite!r}; choose from {sorted(SUITES)}")
    logger.info(f"degeneration suite {suite} on {cfg.instance} r={cfg.r} chi={cfg.chi} window={cfg.window}")
    return SUITES[suite](cfg, interp_max)
