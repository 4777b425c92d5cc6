"""
The sl_2-triple on the reduced module and the correction of the raising
operator so that [h, e] = 2e holds exactly
"""
import logging
from fractions import Fraction
from typing import Dict, List, Optional, Tuple

import sympy as sp

from src.algebra.errors import AlgebraError, PreconditionError
from src.algebra.degeneration.tilde import Degeneration
from src.algebra.degeneration.truncated_module import SliceOperator
from src.algebra.degeneration.weyl import WeylPair, op_red, red_basis
from src.algebra.lefschetz.filtrations import commutator, filtration_from_h
from src.algebra.schemas import CaseStatus, SuiteReport

logger = logging.getLogger(__name__)


def sl2_correct(h: sp.Matrix, d: sp.Matrix) -> sp.Matrix:
    """
    Split [h, d] - 2d = sum_{i >= 0} f_i with [h, f_i] = -i f_i and return
    e = d + sum_i f_i/(i + 2), so that [h, e] = 2e
    """
    if h.shape != d.shape or h.rows != h.cols:
        raise PreconditionError(f"sl2_correct needs square matrices of one size, got {h.shape} and {d.shape}")
    if h.rows == 0:
        return d
    if not h.is_diagonalizable():
        raise PreconditionError("h is not diagonalizable")
    P, D = h.diagonalize()
    values = [D[i, i] for i in range(D.rows)]
    for value in values:
        if not value.is_integer:
            raise PreconditionError(f"h has a non-integer eigenvalue {value}")
    P_inv = P.inv()
    g = P_inv * (commutator(h, d) - 2 * d) * P
    e = P_inv * d * P
    for a in range(g.rows):
        for b in range(g.cols):
            if g[a, b] == 0:
                continue
            i = values[b] - values[a]
            if i < 0:
                raise PreconditionError(f"[h,d] - 2d has a component of h-weight {-i} > 0")
            e[a, b] += g[a, b] / (i + 2)
    return P * e * P_inv


# -- assembly on the reduced window --------------------------------------
class ReducedWindow:
    """
    Sector-0 slices of V_red = ker dy for degrees 0..window, with block
    matrices of reduced operators restricted to them
    """

    def __init__(self, pair: WeylPair, window: int, sector: int = 0):
        self.pair = pair
        self.window = window
        self.sector = sector
        self.bases: Dict[int, sp.Matrix] = {}
        self.offsets: Dict[int, int] = {}
        offset = 0
        for k in range(window + 1):
            vectors = red_basis(pair, sector, k)
            dim = pair.module.dim(k)
            self.bases[k] = sp.Matrix.hstack(*vectors) if vectors else sp.zeros(dim, 0)
            self.offsets[k] = offset
            offset += len(vectors)
        self.dim = offset

    def red_dim(self, k: int) -> int:
        return self.bases[k].cols

    def restrict(self, op: SliceOperator, k: int) -> sp.Matrix:
        """Matrix of op: V_red,k -> V_red,k+shift in the chosen bases"""
        target = k + op.shift
        source = self.bases[k]
        if target < 0 or source.cols == 0:
            return sp.zeros(self.red_dim(target) if 0 <= target <= self.window else 0, source.cols)
        image = op.matrix(self.sector, k) * source
        basis = self.bases[target]
        if basis.cols == 0:
            if not image.is_zero_matrix:
                raise AlgebraError(f"{op.name} leaves V_red on slice {k}")
            return sp.zeros(0, source.cols)
        gram = basis.T * basis
        coords = gram.inv() * basis.T * image
        if basis * coords != image:
            raise AlgebraError(f"{op.name} leaves V_red on slice {k}")
        return coords

    def assemble(self, op: SliceOperator) -> sp.Matrix:
        """Block matrix on the whole window; blocks leaving the window are dropped"""
        out = sp.zeros(self.dim, self.dim)
        for k in range(self.window + 1):
            target = k + op.shift
            if target < 0 or target > self.window or self.red_dim(k) == 0 or self.red_dim(target) == 0:
                continue
            block = self.restrict(op, k)
            r0, c0 = self.offsets[target], self.offsets[k]
            out[r0: r0 + block.rows, c0: c0 + block.cols] = block
        return out

    def columns(self, degrees: List[int]) -> List[int]:
        return [self.offsets[k] + i for k in degrees for i in range(self.red_dim(k))]

    def h_eigenvalues(self, H: sp.Matrix) -> Dict[str, Dict[str, int]]:
        out: Dict[str, Dict[str, int]] = {}
        for k in range(self.window + 1):
            cols = self.columns([k])
            if not cols:
                continue
            block = H.extract(cols, cols)
            out[str(k)] = {str(value): mult for value, mult in sorted(block.eigenvals().items(), key=lambda t: sp.default_sort_key(t[0]))}
        return out


def sl2_operators(deg: Degeneration, pair: WeylPair) -> Tuple[SliceOperator, SliceOperator, SliceOperator]:
    """h = -tilde-D_{1,1}(1)_red, d = psi_2(1)_red / 2, f = -tilde-D_{2,0}(1)_red / 2"""
    one = deg.ring.one()
    h = op_red(deg.tilde(1, 1, one), pair).scale(-1)
    d = op_red(deg.psi(2, one), pair).scale(Fraction(1, 2))
    f = op_red(deg.tilde(2, 0, one), pair).scale(Fraction(-1, 2))
    return h, d, f


def _relation_case(report: SuiteReport, case: str, defect: sp.Matrix, columns: List[int]) -> None:
    bad = [c for c in columns if not defect[:, c].is_zero_matrix]
    if bad:
        report.add(case, CaseStatus.FAIL, f"nonzero on {len(bad)} of {len(columns)} sound basis vectors")
    else:
        report.add(case, CaseStatus.OK)


def sl2_from_degeneration(
    deg: Degeneration,
    pair: WeylPair,
    report: Optional[SuiteReport] = None,
    psi_indices: Tuple[int, ...] = (0, 1, 2),
) -> SuiteReport:
    """
    Build (e, h, f) on the reduced sector-0 window, check the three brackets
    on slices k with k + 2 <= window, and record the h-eigenvalue
    multiplicities per degree
    """
    if report is None:
        report = SuiteReport(suite="sl2", instance=deg.ring.name)
    cfg = deg.cfg
    if cfg.chi != 0 or cfg.p2_value is not None:
        report.add("sl2 triple", CaseStatus.SKIP, "needs the normalization psi_1(1) = 0 (chi = 0)")
        return report
    window = ReducedWindow(pair, cfg.window)
    h_op, d_op, f_op = sl2_operators(deg, pair)
    H = window.assemble(h_op)
    d = window.assemble(d_op)
    F = window.assemble(f_op)
    E = sl2_correct(H, d)
    sound = window.columns([k for k in range(cfg.window + 1) if k + 2 <= cfg.window])
    suffix = f"window={cfg.window} pair={pair.label}"
    _relation_case(report, f"sl2 [h,e]=2e {suffix}", commutator(H, E) - 2 * E, sound)
    _relation_case(report, f"sl2 [h,f]=-2f {suffix}", commutator(H, F) + 2 * F, sound)
    _relation_case(report, f"sl2 [e,f]=h {suffix}", commutator(E, F) - H, sound)
    eigen = window.h_eigenvalues(H)
    report.extra["h_eigenvalues"] = eigen
    for k, values in eigen.items():
        integral = all(sp.sympify(v).is_integer for v in values)
        report.add(
            f"sl2 h integral deg={k}",
            CaseStatus.OK if integral else CaseStatus.FAIL,
            "" if integral else f"eigenvalues {sorted(values)}",
        )
    _filtration_cases(deg, pair, window, h_op, report, psi_indices)
    logger.info(f"sl2 on {deg.ring.name}: {report.summary}")
    return report


def _filtration_cases(
    deg: Degeneration,
    pair: WeylPair,
    window: ReducedWindow,
    h_op: SliceOperator,
    report: SuiteReport,
    psi_indices: Tuple[int, ...],
) -> None:
    """psi_k(xi)_red P_i is inside P_{i+k}, slice by slice"""
    cfg = deg.cfg
    filtrations = {}
    for k in range(cfg.window + 1):
        if window.red_dim(k):
            try:
                filtrations[k] = filtration_from_h(window.restrict(h_op, k))
            except PreconditionError as e:
                report.add(f"sl2 filtration deg={k}", CaseStatus.SKIP, str(e))
    for n in psi_indices:
        for xi in deg.ring.basis_elements():
            op = op_red(deg.psi(n, xi), pair)
            bad = []
            for k, source in filtrations.items():
                target = k + op.shift
                if target not in filtrations:
                    continue
                phi = window.restrict(op, k)
                P, Q = source, filtrations[target]
                for i in range(P.lo, P.hi + 1):
                    image = P.level(i).apply(phi)
                    if not Q.level(i + n).contains(image):
                        bad.append((k, i))
            label = deg.ring.basis[next(iter(xi.coeffs))].name
            case = f"sl2 psi{n}({label}) P_i -> P_i+{n}"
            report.add(case, CaseStatus.OK if not bad else CaseStatus.FAIL, "" if not bad else f"violations at (deg, i) {bad[:4]}")

