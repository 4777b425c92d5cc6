"""
Lie words and expressions in the generators psi_n(xi), T_n(xi) with the
weight bookkeeping of the filtration F, and the vanishing probe for
expressions of low weight
"""
import logging
import random
from dataclasses import dataclass
from itertools import combinations_with_replacement, product
from typing import List, Tuple, Union

from src.algebra.errors import AlgebraError
from src.algebra.fock.operators import GradedOperator, identity_operator, operator_vanishes, probe_monomials
from src.algebra.hecke.hecke_ops import geom_T_op, psi_op
from src.algebra.ring.ring_core import RingSpec
from src.algebra.ring.spec_loader import resolve_ring
from src.algebra.schemas import CaseStatus, SuiteReport

logger = logging.getLogger(__name__)


@dataclass(frozen=True)
class Gen:
    """A generator psi_n(b) or T_n(b), b a basis index"""
    kind: str
    index: int
    b: int

    def text(self, ring: RingSpec) -> str:
        name = "psi" if self.kind == "psi" else "T"
        return f"{name}{self.index}({ring.basis[self.b].name})"


@dataclass(frozen=True)
class Bracket:
    left: "LieWord"
    right: "LieWord"


LieWord = Union[Gen, Bracket]


@dataclass(frozen=True)
class LieExpression:
    """Ordered product of Lie words"""
    factors: Tuple[LieWord, ...]


def word_weight(word: LieWord) -> int:
    if isinstance(word, Gen):
        return word.index
    return word_weight(word.left) + word_weight(word.right) - 1


def word_degree(word: LieWord) -> int:
    """Number of T generators"""
    if isinstance(word, Gen):
        return 1 if word.kind == "T" else 0
    return word_degree(word.left) + word_degree(word.right)


def expression_weight(expr: Union[LieExpression, LieWord]) -> int:
    """Index sum minus bracket count, added over factors"""
    if not isinstance(expr, LieExpression):
        return word_weight(expr)
    return sum(word_weight(w) for w in expr.factors)


def expression_degree(expr: Union[LieExpression, LieWord]) -> int:
    if not isinstance(expr, LieExpression):
        return word_degree(expr)
    return sum(word_degree(w) for w in expr.factors)


def word_text(ring: RingSpec, word: LieWord) -> str:
    if isinstance(word, Gen):
        return word.text(ring)
    return f"[{word_text(ring, word.left)},{word_text(ring, word.right)}]"


def expression_text(ring: RingSpec, expr: LieExpression) -> str:
    return "*".join(word_text(ring, w) for w in expr.factors)


def word_operator(ring: RingSpec, word: LieWord) -> GradedOperator:
    if isinstance(word, Gen):
        xi = ring.element(word.b)
        return psi_op(word.index, xi) if word.kind == "psi" else geom_T_op(word.index, xi)
    return word_operator(ring, word.left).bracket(word_operator(ring, word.right))


def expression_operator(ring: RingSpec, expr: LieExpression) -> GradedOperator:
    op = identity_operator(ring)
    for word in expr.factors:
        op = op.compose(word_operator(ring, word))
    return op


def vanishing_threshold(degree: int) -> int:
    """Expressions of weight <= threshold must vanish"""
    return -degree if degree > 0 else -1


def small_words(ring: RingSpec, max_index: int) -> List[LieWord]:
    """Generators, single brackets and left-nested double brackets"""
    gens: List[LieWord] = [
        Gen(kind, i, b) for kind in ("psi", "T") for i in range(max_index + 1) for b in range(ring.dim)
    ]
    singles: List[LieWord] = [Bracket(a, b) for a, b in product(gens, repeat=2)]
    doubles: List[LieWord] = [
        Bracket(w, g) for w in singles for g in gens
        if word_weight(w) + word_weight(g) - 1 <= vanishing_threshold(word_degree(w) + word_degree(g))
    ]
    return gens + singles + doubles


def low_weight_expressions(ring: RingSpec, degree: int, max_index: int = 1) -> List[LieExpression]:
    """Expressions with exactly `degree` T generators and weight at or below the vanishing threshold"""
    words = small_words(ring, max_index)
    out: List[LieExpression] = []
    for length in (1, 2):
        for combo in combinations_with_replacement(words, length):
            expr = LieExpression(tuple(combo))
            if expression_degree(expr) == degree and expression_weight(expr) <= vanishing_threshold(degree):
                out.append(expr)
    return out


def f_vanishing_probe(
    instance: str,
    degrees: Tuple[int, ...] = (0, 1, 2),
    samples: int = 20,
    seed: int = 0,
    max_degree: int = 6,
    max_length: int = 2,
) -> SuiteReport:
    """
    Sample low-weight expressions per T-degree and check that their
    operators vanish on the probe monomials
    """
    ring = resolve_ring(instance)
    report = SuiteReport(suite="fprobe", instance=ring.name)
    rng = random.Random(seed)
    monomials = probe_monomials(ring, max_length, max_degree)
    for degree in degrees:
        pool = low_weight_expressions(ring, degree)
        chosen = pool if len(pool) <= samples else rng.sample(pool, samples)
        logger.info(f"fprobe degree {degree}: {len(chosen)} of {len(pool)} expressions")
        for expr in chosen:
            case = f"F m={degree} w={expression_weight(expr)} {expression_text(ring, expr)}"
            try:
                bad = operator_vanishes(expression_operator(ring, expr), monomials)
            except AlgebraError as e:
                report.add(case, CaseStatus.SKIP, str(e))
                continue
            if bad is None:
                report.add(case, CaseStatus.OK)
            else:
                report.add(case, CaseStatus.FAIL, f"nonzero on monomial {bad}")
    return report.sorted()
