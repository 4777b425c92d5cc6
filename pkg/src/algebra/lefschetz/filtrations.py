"""
Lefschetz structures over the rationals: filtered spaces with an operator,
the canonical weight filtration of a nilpotent endomorphism, the sl_2 on
the associated graded, strictness of maps, and filtrations cut out by a
semisimple h
"""
import json
import logging
import random
from dataclasses import dataclass, field
from fractions import Fraction
from math import factorial
from typing import Dict, List, Optional, Sequence, Tuple

import sympy as sp

from src.algebra.errors import AlgebraError, NilpotencyError, PreconditionError
from src.algebra.lefschetz.subspace import Subspace, column, coordinates
from src.algebra.schemas import CaseStatus, SuiteReport
from src.utils.utils import matrix_from_json, matrix_to_json, to_sympy

logger = logging.getLogger(__name__)


@dataclass
class FiltSpace:
    """
    Finite increasing filtration P_k (lo <= k <= hi) of Q^dim with an
    optional operator omega. Below lo the filtration is 0, above hi it is
    the whole space. With lowering=True the filtration is a weight
    filtration: omega moves W_k into W_{k-2} and the Lefschetz degree of
    Gr_k is -k.
    """
    dim: int
    levels: Dict[int, Subspace]
    omega: Optional[sp.Matrix] = None
    lowering: bool = False

    @property
    def lo(self) -> int:
        return min(self.levels) if self.levels else 0

    @property
    def hi(self) -> int:
        return max(self.levels) if self.levels else -1

    def level(self, k: int) -> Subspace:
        if k < self.lo:
            return Subspace.zero(self.dim)
        if k > self.hi:
            return Subspace.full(self.dim)
        return self.levels[k]

    def upper(self, j: int) -> Subspace:
        """Numerator of the graded piece of Lefschetz degree j"""
        return self.level(-j if self.lowering else j)

    def lower(self, j: int) -> Subspace:
        return self.level(-j - 1 if self.lowering else j - 1)

    def degree_range(self) -> List[int]:
        if self.lowering:
            return list(range(-self.hi - 1, -self.lo + 1))
        return list(range(self.lo, self.hi + 2))

    def gr_basis(self, j: int) -> List[sp.Matrix]:
        return self.lower(j).complement_in(self.upper(j))

    def gr_dims(self) -> Dict[int, int]:
        dims = {j: self.upper(j).dim - self.lower(j).dim for j in self.degree_range()}
        return {j: d for j, d in dims.items() if d}

    def shifted(self, s: int) -> "FiltSpace":
        return FiltSpace(self.dim, {k + s: v for k, v in self.levels.items()}, self.omega, self.lowering)

    def nesting_violations(self) -> List[int]:
        return [k for k in range(self.lo, self.hi + 1) if not self.level(k).contains(self.level(k - 1))]

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, FiltSpace):
            return NotImplemented
        bounds = range(min(self.lo, other.lo) - 1, max(self.hi, other.hi) + 2)
        return self.dim == other.dim and all(self.level(k) == other.level(k) for k in bounds)


@dataclass
class GradedSl2:
    """e, h, f on the associated graded, in its chosen graded basis"""
    degrees: Dict[int, int]
    e: sp.Matrix
    h: sp.Matrix
    f: sp.Matrix
    basis: List[sp.Matrix] = field(default_factory=list)

    def relations(self) -> Dict[str, bool]:
        return {
            "[h,e]=2e": commutator(self.h, self.e) == 2 * self.e,
            "[h,f]=-2f": commutator(self.h, self.f) == -2 * self.f,
            "[e,f]=h": commutator(self.e, self.f) == self.h,
        }

    @property
    def is_valid(self) -> bool:
        return all(self.relations().values())


def commutator(a: sp.Matrix, b: sp.Matrix) -> sp.Matrix:
    return a * b - b * a


def nilpotency_index(matrix: sp.Matrix) -> int:
    """Smallest d with matrix^d = 0"""
    power = sp.eye(matrix.rows)
    for d in range(matrix.rows + 1):
        if power.is_zero_matrix:
            return d
        power = power * matrix
    raise NilpotencyError(f"Matrix of size {matrix.rows} is not nilpotent")


def nilpotent_exp(matrix: sp.Matrix) -> sp.Matrix:
    d = nilpotency_index(matrix)
    out, power = sp.zeros(matrix.rows), sp.eye(matrix.rows)
    for k in range(d):
        out += power / factorial(k)
        power = power * matrix
    return out


# -- weight filtration -----------------------------------------------------
def weight_filtration(N: sp.Matrix) -> FiltSpace:
    """W_k = sum_{i >= max(0,k)} ker N^{i+1} cap im N^{i-k}"""
    if N.rows != N.cols:
        raise AlgebraError(f"Expected a square matrix, got {N.rows}x{N.cols}")
    d = nilpotency_index(N)
    n = N.rows
    powers = [sp.eye(n)]
    for _ in range(2 * d + 1):
        powers.append(powers[-1] * N)
    kernels = [Subspace.kernel(p) for p in powers]
    images = [Subspace.image(p) for p in powers]
    levels: Dict[int, Subspace] = {}
    for k in range(1 - d, d):
        total = Subspace.zero(n)
        for i in range(max(0, k), k + d):
            total = total + kernels[i + 1].intersect(images[i - k])
        levels[k] = total
    logger.debug(f"weight filtration of a {n}x{n} nilpotent of index {d}: {[v.dim for v in levels.values()]}")
    return FiltSpace(n, levels, omega=N, lowering=True)


def jordan_chains(N: sp.Matrix) -> List[List[sp.Matrix]]:
    """Chains v, Nv, ..., N^{l-1}v forming a basis, longest first"""
    d = nilpotency_index(N)
    kernels = [Subspace.kernel(N ** l) if l else Subspace.zero(N.rows) for l in range(d + 2)]
    chains: List[List[sp.Matrix]] = []
    for length in range(d, 0, -1):
        taken = kernels[length - 1] + kernels[length + 1].apply(N)
        for top in taken.complement_in(kernels[length]):
            chain = [top]
            for _ in range(length - 1):
                chain.append(N * chain[-1])
            chains.append(chain)
    return chains


def string_basis(N: sp.Matrix) -> Tuple[List[sp.Matrix], List[int]]:
    """Jordan chain vectors of N with their sl_2 weights"""
    columns, weights = [], []
    for chain in jordan_chains(N):
        top = len(chain) - 1
        for i, v in enumerate(chain):
            columns.append(v)
            weights.append(2 * i - top)
    return columns, weights


def graded_filtration(dim: int, columns: List[sp.Matrix], weights: List[int], omega: Optional[sp.Matrix] = None) -> FiltSpace:
    """P_i = span of the columns of weight <= i"""
    levels = {
        i: Subspace.span(dim, [v for v, w in zip(columns, weights) if w <= i])
        for i in range(min(weights, default=0), max(weights, default=-1) + 1)
    }
    return FiltSpace(dim, levels, omega=omega)


def nilpotent_grading(N: sp.Matrix) -> sp.Matrix:
    """A semisimple h with [h, N] = 2N whose strings are the Jordan chains of N"""
    columns, weights = string_basis(N)
    if not columns:
        return sp.zeros(N.rows)
    S = sp.Matrix.hstack(*columns)
    return S * sp.diag(*weights) * S.inv()


def filtration_from_h(h: sp.Matrix, omega: Optional[sp.Matrix] = None) -> FiltSpace:
    """P_i = span of eigenvectors of h with eigenvalue <= i"""
    spaces: Dict[int, List[sp.Matrix]] = {}
    count = 0
    for value, _, vectors in h.eigenvects():
        if not value.is_integer:
            raise PreconditionError(f"h has a non-integer eigenvalue {value}")
        spaces[int(value)] = list(vectors)
        count += len(vectors)
    if count != h.rows:
        raise PreconditionError("h is not diagonalizable")
    levels: Dict[int, Subspace] = {}
    if spaces:
        for i in range(min(spaces), max(spaces) + 1):
            levels[i] = Subspace.span(h.rows, [v for value, vs in spaces.items() if value <= i for v in vs])
    return FiltSpace(h.rows, levels, omega=omega)


def nilpotent_lefschetz(N: sp.Matrix) -> FiltSpace:
    """Lefschetz structure (Q^n, P, N) with P graded by the Jordan strings of N"""
    columns, weights = string_basis(N)
    return graded_filtration(N.rows, columns, weights, omega=N)


def opposite_weight_filtration(N: sp.Matrix) -> FiltSpace:
    """W_k = span of the Jordan string vectors of weight >= -k"""
    columns, weights = string_basis(N)
    P = graded_filtration(N.rows, columns, [-w for w in weights])
    return FiltSpace(P.dim, dict(P.levels), omega=N, lowering=True)


# -- verification ------------------------------------------------------------
def lefschetz_verify(space: FiltSpace, name: str = "space") -> SuiteReport:
    """omega P_j in P_{j+2} and omega^k : Gr_{-k} -> Gr_k is an isomorphism"""
    if space.omega is None:
        raise PreconditionError("lefschetz_verify needs an operator omega")
    report = SuiteReport(suite="lefschetz", instance=name)
    omega = space.omega
    bad = space.nesting_violations()
    report.add("nesting", CaseStatus.OK if not bad else CaseStatus.FAIL, f"at levels {bad}" if bad else "")
    degrees = space.degree_range()
    shift_bad = [
        j for j in range(min(degrees) - 2, max(degrees) + 1)
        if not space.upper(j + 2).contains(space.upper(j).apply(omega))
    ]
    report.add("omega shift", CaseStatus.OK if not shift_bad else CaseStatus.FAIL, f"at degrees {shift_bad}" if shift_bad else "")
    top = max(abs(j) for j in degrees)
    for k in range(top + 1):
        source = space.gr_basis(-k)
        images = [omega ** k * v for v in source]
        target_dim = space.upper(k).dim - space.lower(k).dim
        injective = (space.lower(k) + Subspace.span(space.dim, images)).dim == space.lower(k).dim + len(source)
        landed = space.upper(k).contains(Subspace.span(space.dim, images))
        case = f"hard lefschetz k={k}"
        if injective and landed and target_dim == len(source):
            report.add(case, CaseStatus.OK)
        else:
            report.add(case, CaseStatus.FAIL, f"dim Gr_-k={len(source)} dim Gr_k={target_dim} injective={injective}")
    return report


def is_lefschetz(space: FiltSpace) -> bool:
    return lefschetz_verify(space).ok


def sl2_on_gr(space: FiltSpace) -> GradedSl2:
    """e = induced omega, h = grading, f from the primitive decomposition"""
    if space.omega is None:
        raise PreconditionError("sl2_on_gr needs an operator omega")
    blocks = {j: space.gr_basis(j) for j in space.degree_range()}
    blocks = {j: vs for j, vs in blocks.items() if vs}
    offsets: Dict[int, int] = {}
    position = 0
    for j in sorted(blocks):
        offsets[j] = position
        position += len(blocks[j])
    n = position
    E = sp.zeros(n)
    for j, vectors in blocks.items():
        for a, v in enumerate(vectors):
            w = space.omega * v
            if j + 2 not in blocks:
                if not space.lower(j + 2).contains_vector(w):
                    raise PreconditionError(f"omega does not raise the filtration at degree {j}")
                continue
            for b, c in enumerate(coordinates(w, blocks[j + 2], space.lower(j + 2))):
                E[offsets[j + 2] + b, offsets[j] + a] = c
    H = sp.diag(*[j for j in sorted(blocks) for _ in blocks[j]]) if n else sp.zeros(0)
    columns: List[sp.Matrix] = []
    lengths: List[int] = []
    for j in sorted(blocks):
        if j > 0:
            continue
        k = -j
        idx = list(range(offsets[j], offsets[j] + len(blocks[j])))
        restricted = (E ** (k + 1))[:, idx]
        for kernel_vector in restricted.nullspace():
            v = sp.zeros(n, 1)
            for pos, i in enumerate(idx):
                v[i, 0] = kernel_vector[pos, 0]
            for i in range(k + 1):
                columns.append(E ** i * v)
            lengths.append(k + 1)
    if len(columns) != n:
        raise PreconditionError(f"Primitive strings span {len(columns)} of {n} dimensions")
    F_strings = sp.zeros(n)
    start = 0
    for length in lengths:
        k = length - 1
        for i in range(1, length):
            F_strings[start + i - 1, start + i] = i * (k - i + 1)
        start += length
    S = sp.Matrix.hstack(*columns) if columns else sp.zeros(0)
    F = S * F_strings * S.inv() if n else sp.zeros(0)
    basis = [v for j in sorted(blocks) for v in blocks[j]]
    return GradedSl2(degrees={j: len(vs) for j, vs in blocks.items()}, e=E, h=H, f=F, basis=basis)


def graded_map(phi: sp.Matrix, source: FiltSpace, target: FiltSpace, j: int) -> sp.Matrix:
    """Matrix of Gr_j phi in the chosen graded bases"""
    src, dst = source.gr_basis(j), target.gr_basis(j)
    out = sp.zeros(len(dst), len(src))
    for a, v in enumerate(src):
        for b, c in enumerate(coordinates(phi * v, dst, target.lower(j))):
            out[b, a] = c
    return out


def filtered_map_violations(phi: sp.Matrix, source: FiltSpace, target: FiltSpace) -> List[str]:
    problems = []
    for j in sorted(set(source.degree_range()) | set(target.degree_range())):
        if not target.upper(j).contains(source.upper(j).apply(phi)):
            problems.append(f"filtration at degree {j}")
    if source.omega is not None and target.omega is not None and phi * source.omega != target.omega * phi:
        problems.append("omega")
    return problems


def strictness_check(phi: sp.Matrix, source: FiltSpace, target: FiltSpace, name: str = "map") -> SuiteReport:
    """Gr commutes with kernels and cokernels of phi, degree by degree"""
    report = SuiteReport(suite="strictness", instance=name)
    problems = filtered_map_violations(phi, source, target)
    if problems:
        report.add("map of Lefschetz structures", CaseStatus.SKIP, "not compatible: " + ", ".join(problems))
        return report
    kernel, image = Subspace.kernel(phi), Subspace.image(phi)
    for j in sorted(set(source.degree_range()) | set(target.degree_range())):
        rank = graded_map(phi, source, target, j).rank() if source.gr_basis(j) and target.gr_basis(j) else 0
        ker_gr = len(source.gr_basis(j)) - rank
        coker_gr = len(target.gr_basis(j)) - rank
        gr_ker = source.upper(j).intersect(kernel).dim - source.lower(j).intersect(kernel).dim
        gr_coker = (target.upper(j) + image).dim - (target.lower(j) + image).dim
        report.add(
            f"ker degree {j}", CaseStatus.OK if gr_ker == ker_gr else CaseStatus.FAIL,
            f"Gr ker={gr_ker} ker Gr={ker_gr}",
        )
        report.add(
            f"coker degree {j}", CaseStatus.OK if gr_coker == coker_gr else CaseStatus.FAIL,
            f"Gr coker={gr_coker} coker Gr={coker_gr}",
        )
    return report


def compare_h(e: sp.Matrix, h: sp.Matrix, h2: sp.Matrix) -> SuiteReport:
    """Two commuting gradings completing the same e to sl_2 triples coincide"""
    report = SuiteReport(suite="compare_h", instance=f"dim={e.rows}")
    reasons = []
    if commutator(h, h2) != sp.zeros(h.rows):
        reasons.append("h and h' do not commute")
    for label, grading in (("h", h), ("h'", h2)):
        if commutator(grading, e) != 2 * e:
            reasons.append(f"[{label},e] != 2e")
            continue
        try:
            if not is_lefschetz(filtration_from_h(grading, omega=e)):
                reasons.append(f"{label} does not complete e to a triple")
        except PreconditionError as err:
            reasons.append(f"{label}: {err}")
    if reasons:
        logger.warning(f"compare_h precondition: {'; '.join(reasons)}")
        report.add("compare h", CaseStatus.SKIP, "; ".join(reasons))
        return report
    report.add("compare h", CaseStatus.OK if h == h2 else CaseStatus.FAIL, "" if h == h2 else "h != h'")
    return report


def exp_conjugation_filtration_check(
    x: sp.Matrix,
    e: sp.Matrix,
    h: sp.Matrix,
    f: sp.Matrix,
    t: Fraction = Fraction(1),
) -> SuiteReport:
    """Conjugating by exp(t x), x of negative h-degree, keeps the h-filtration"""
    report = SuiteReport(suite="exp_conjugation", instance=f"dim={x.rows} t={t}")
    P = filtration_from_h(h)
    if not all(P.level(i - 1).contains(P.level(i).apply(x)) for i in range(P.lo, P.hi + 1)):
        report.add("negative degree", CaseStatus.SKIP, "x does not lower the h-filtration")
        return report
    scalar = to_sympy(Fraction(t))
    g, g_inv = nilpotent_exp(scalar * x), nilpotent_exp(-scalar * x)
    e1, h1, f1 = g * e * g_inv, g * h * g_inv, g * f * g_inv
    triple = GradedSl2(degrees={}, e=e1, h=h1, f=f1)
    report.add("conjugated triple", CaseStatus.OK if triple.is_valid else CaseStatus.FAIL, str(triple.relations()))
    same = filtration_from_h(h1) == P
    report.add("filtration preserved", CaseStatus.OK if same else CaseStatus.FAIL)
    ex = commutator(e, x)
    if commutator(ex, x).is_zero_matrix:
        identity = g_inv * e * g == e + scalar * ex
        report.add("exp identity", CaseStatus.OK if identity else CaseStatus.FAIL)
    return report


# -- random instances --------------------------------------------------------
def jordan_matrix(sizes: Sequence[int]) -> sp.Matrix:
    n = sum(sizes)
    J = sp.zeros(n)
    start = 0
    for size in sizes:
        for i in range(size - 1):
            J[start + i + 1, start + i] = 1
        start += size
    return J


def random_unimodular(n: int, rng: random.Random) -> sp.Matrix:
    S = sp.eye(n)
    if n < 2:
        return S
    for _ in range(2 * n):
        i, j = rng.sample(range(n), 2)
        S[i, :] = S[i, :] + rng.randint(-2, 2) * S[j, :]
    return S


def random_sizes(rng: random.Random, max_dim: int = 12, max_blocks: int = 3) -> List[int]:
    sizes: List[int] = []
    for _ in range(rng.randint(1, max_blocks)):
        size = rng.randint(1, 4)
        if sum(sizes) + size > max_dim:
            break
        sizes.append(size)
    return sizes or [1]


def random_nilpotent(rng: random.Random, sizes: Optional[Sequence[int]] = None) -> sp.Matrix:
    sizes = list(sizes) if sizes else random_sizes(rng)
    S = random_unimodular(sum(sizes), rng)
    return S * jordan_matrix(sizes) * S.inv()


def string_structure(sizes: Sequence[int], S: Optional[sp.Matrix] = None) -> FiltSpace:
    """Direct sum of sl_2 strings, optionally moved by a change of basis S"""
    n = sum(sizes)
    J = jordan_matrix(sizes)
    S = S if S is not None else sp.eye(n)
    weights = [2 * i - (size - 1) for size in sizes for i in range(size)]
    return graded_filtration(n, [S[:, c] for c in range(n)], weights, omega=S * J * S.inv())


def random_equivariant_map(rng: random.Random, source: Sequence[int], target: Sequence[int]) -> sp.Matrix:
    """Scalar multiples of the identity between strings of equal length"""
    phi = sp.zeros(sum(target), sum(source))
    col = 0
    for a in source:
        row = 0
        for b in target:
            if a == b:
                c = rng.randint(-2, 2)
                for i in range(a):
                    phi[row + i, col + i] = c
            row += b
        col += a
    return phi


def random_suite(seed: int = 0, count: int = 50, max_dim: int = 12) -> SuiteReport:
    """Randomized weight, sl_2 and strictness checks with a fixed seed"""
    rng = random.Random(seed)
    report = SuiteReport(suite="lefschetz-random", instance=f"seed={seed}")
    for sample in range(count):
        sizes = random_sizes(rng, max_dim)
        N = random_nilpotent(rng, sizes)
        tag = f"sample {sample:03d} sizes={'.'.join(map(str, sizes))}"
        try:
            W = weight_filtration(N)
            report.add(f"{tag} weight", CaseStatus.OK if is_lefschetz(W) else CaseStatus.FAIL)
            opposite = opposite_weight_filtration(N)
            report.add(f"{tag} unique", CaseStatus.OK if opposite == W else CaseStatus.FAIL)
            triple = sl2_on_gr(nilpotent_lefschetz(N))
            report.add(f"{tag} sl2", CaseStatus.OK if triple.is_valid else CaseStatus.FAIL, str(triple.relations()))
            other = random_sizes(rng, max_dim)
            S_src, S_dst = random_unimodular(sum(sizes), rng), random_unimodular(sum(other), rng)
            phi = S_dst * random_equivariant_map(rng, sizes, other) * S_src.inv()
            strict = strictness_check(phi, string_structure(sizes, S_src), string_structure(other, S_dst))
            report.add(f"{tag} strict", CaseStatus.OK if strict.ok else CaseStatus.FAIL, strict.summary)
        except AlgebraError as err:
            report.add(f"{tag}", CaseStatus.ERROR, str(err))
    logger.info(f"lefschetz random: {report.summary}")
    return report.sorted()


# -- JSON ------------------------------------------------------------------
def space_to_json(space: FiltSpace) -> dict:
    payload = {
        "dim": space.dim,
        "orientation": "lowering" if space.lowering else "raising",
        "filtration": {
            str(k): [[str(x) for x in v] for v in space.level(k).basis()] for k in range(space.lo, space.hi + 1)
        },
    }
    if space.omega is not None:
        payload["omega"] = matrix_to_json(space.omega)
    return payload


def space_from_json(payload: dict) -> FiltSpace:
    dim = int(payload["dim"])
    levels = {
        int(k): Subspace.span(dim, [column(v) for v in vectors])
        for k, vectors in payload.get("filtration", {}).items()
    }
    omega = matrix_from_json(payload["omega"]) if "omega" in payload else None
    if omega is not None and omega.rows != dim:
        raise AlgebraError(f"omega has size {omega.rows}, space has dimension {dim}")
    return FiltSpace(dim, levels, omega=omega, lowering=payload.get("orientation", "raising") == "lowering")


def load_space(path: str) -> FiltSpace:
    with open(path, "r", encoding="utf-8") as fin:
        return space_from_json(json.load(fin))


def weight_filtration_report(N: sp.Matrix, name: str = "matrix") -> SuiteReport:
    """Weight filtration of N, its graded dimensions and its Lefschetz check"""
    W = weight_filtration(N)
    report = lefschetz_verify(W, name)
    report.suite = "weight-filtration"
    report.extra = {
        "filtration": space_to_json(W),
        "gr_dims": {str(-j): d for j, d in sorted(W.gr_dims().items())},
    }
    return report


def chain_lengths(N: sp.Matrix) -> Tuple[int, ...]:
    return tuple(sorted((len(c) for c in jordan_chains(N)), reverse=True))
