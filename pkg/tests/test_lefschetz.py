"""
Tests for exact subspaces, weight filtrations and Lefschetz structures
"""
import sys
sys.path.append(".")

import random
from collections import Counter
from fractions import Fraction
from itertools import product

import pytest
import sympy as sp
from hypothesis import given, settings
from hypothesis import strategies as st
from sympy.utilities.iterables import partitions

from src.algebra.errors import NilpotencyError
from src.algebra.lefschetz import (
    FiltSpace,
    Subspace,
    compare_h,
    exp_conjugation_filtration_check,
    filtration_from_h,
    is_lefschetz,
    jordan_matrix,
    lefschetz_verify,
    nilpotent_grading,
    nilpotent_lefschetz,
    opposite_weight_filtration,
    random_suite,
    sl2_on_gr,
    space_from_json,
    space_to_json,
    strictness_check,
    string_structure,
    weight_filtration,
    weight_filtration_report,
)
from src.algebra.lefschetz.filtrations import (
    chain_lengths,
    graded_filtration,
    random_equivariant_map,
    random_nilpotent,
    random_sizes,
    random_unimodular,
)

block_sizes = st.lists(st.integers(min_value=1, max_value=4), min_size=1, max_size=3)
JORDAN_TYPES = [
    tuple(sorted((size for size, mult in p.items() for _ in range(mult)), reverse=True))
    for n in range(1, 7)
    for p in partitions(n)
]


def e(i, n):
    return sp.Matrix([1 if k == i else 0 for k in range(n)])


def test_subspace_operations():
    a = Subspace.span(3, [e(0, 3), e(1, 3)])
    b = Subspace.span(3, [e(1, 3), e(2, 3)])
    assert a.intersect(b) == Subspace.span(3, [e(1, 3)])
    assert (a + b) == Subspace.full(3)
    assert a.contains(Subspace.span(3, [e(0, 3) + e(1, 3)]))
    assert not a.contains_vector(e(2, 3))
    assert a.complement_in(Subspace.full(3)) == [e(2, 3)]
    shift = jordan_matrix([3])
    assert Subspace.span(3, [e(2, 3)]).preimage(shift) == Subspace.span(3, [e(1, 3), e(2, 3)])


def test_weight_filtration_of_zero():
    W = weight_filtration(sp.zeros(3))
    assert W.level(0) == Subspace.full(3)
    assert W.level(-1).is_zero()
    assert W.gr_dims() == {0: 3}


def test_weight_filtration_jordan_two():
    N = jordan_matrix([2])
    W = weight_filtration(N)
    kernel = Subspace.kernel(N)
    assert W.level(-2).is_zero()
    assert W.level(-1) == kernel and W.level(0) == kernel
    assert W.level(1) == Subspace.full(2)
    assert W.gr_dims() == {-1: 1, 1: 1}


def test_weight_filtration_jordan_three():
    N = jordan_matrix([3])
    W = weight_filtration(N)
    assert W.level(0) == Subspace.kernel(N ** 2)
    assert W.level(-1) == Subspace.image(N ** 2) == W.level(-2)
    assert sorted(W.gr_dims()) == [-2, 0, 2]


def test_weight_filtration_rejects_non_nilpotent():
    with pytest.raises(NilpotencyError):
        weight_filtration(sp.eye(2))


def test_lefschetz_verify_examples():
    assert is_lefschetz(weight_filtration(jordan_matrix([3, 1])))
    trivial = FiltSpace(2, {0: Subspace.full(2)}, omega=sp.zeros(2))
    assert is_lefschetz(trivial)
    shifted = weight_filtration(jordan_matrix([2])).shifted(1)
    report = lefschetz_verify(shifted)
    assert not report.ok
    assert report.find("hard lefschetz k=2").status.value == "FAIL"


def test_sl2_on_gr_jordan_two():
    triple = sl2_on_gr(weight_filtration(jordan_matrix([2])))
    assert triple.degrees == {-1: 1, 1: 1}
    assert triple.e == sp.Matrix([[0, 0], [1, 0]])
    assert triple.h == sp.diag(-1, 1)
    assert triple.f == sp.Matrix([[0, 1], [0, 0]])
    assert triple.is_valid


def test_sl2_on_gr_two_strings():
    triple = sl2_on_gr(nilpotent_lefschetz(jordan_matrix([3, 1])))
    assert triple.degrees == {-2: 1, 0: 2, 2: 1}
    assert triple.is_valid, triple.relations()
    assert triple.f.rank() == 2, "the singlet is killed by f"


def test_strictness_examples():
    space = string_structure([3])
    identity = strictness_check(sp.eye(3), space, space)
    assert identity.ok and identity.skipped == 0
    omega = space.omega
    raised = strictness_check(omega, space, space.shifted(-2))
    assert raised.ok and raised.skipped == 0, raised.to_text()


def test_strictness_rejects_incompatible_map():
    space = string_structure([2])
    report = strictness_check(sp.Matrix([[0, 1], [0, 0]]), space, space)
    assert report.skipped == 1


def test_compare_h():
    J = jordan_matrix([3])
    h = sp.diag(-2, 0, 2)
    assert compare_h(J, h, h).ok
    assert compare_h(J, h, nilpotent_grading(J)).passed == 1
    e2 = jordan_matrix([2])
    guard = compare_h(e2, sp.diag(-1, 1), sp.Matrix([[-1, 0], [2, 1]]))
    assert guard.skipped == 1 and guard.passed == 0


def test_exp_conjugation():
    J = jordan_matrix([3])
    h = sp.diag(-2, 0, 2)
    f = sp.Matrix([[0, 2, 0], [0, 0, 2], [0, 0, 0]])
    report = exp_conjugation_filtration_check(f, J, h, f, Fraction(1, 3))
    assert report.ok, report.to_text()
    assert report.find("exp identity") is None
    report = exp_conjugation_filtration_check(f * f, J, h, f, Fraction(1, 2))
    assert report.ok, report.to_text()
    assert report.find("exp identity") is not None
    guard = exp_conjugation_filtration_check(J, J, h, f)
    assert guard.skipped == 1


def test_space_json_roundtrip():
    W = weight_filtration(jordan_matrix([2, 2]))
    assert space_from_json(space_to_json(W)) == W
    report = weight_filtration_report(jordan_matrix([3]))
    assert report.ok
    assert report.extra["gr_dims"] == {"-2": 1, "0": 1, "2": 1}


def test_random_suite_is_clean_and_stable():
    first = random_suite(seed=3, count=4, max_dim=6)
    assert first.ok, first.to_text()
    assert first.to_json() == random_suite(seed=3, count=4, max_dim=6).to_json()


@settings(max_examples=25, deadline=None)
@given(sizes=block_sizes, seed=st.integers(min_value=0, max_value=10_000))
def test_weight_filtration_properties(sizes, seed):
    N = random_nilpotent(random.Random(seed), sizes)
    W = weight_filtration(N)
    assert is_lefschetz(W)
    assert chain_lengths(N) == tuple(sorted(sizes, reverse=True))
    assert opposite_weight_filtration(N) == W


@settings(max_examples=10, deadline=None)
@given(sizes=block_sizes, seed=st.integers(min_value=0, max_value=10_000))
def test_sl2_on_gr_is_a_triple(sizes, seed):
    N = random_nilpotent(random.Random(seed), sizes)
    assert sl2_on_gr(nilpotent_lefschetz(N)).is_valid
    assert filtration_from_h(nilpotent_grading(N), omega=N) == nilpotent_lefschetz(N)


@settings(max_examples=25, deadline=None)
@given(source=block_sizes, target=block_sizes, seed=st.integers(min_value=0, max_value=10_000))
def test_strictness_on_equivariant_maps(source, target, seed):
    rng = random.Random(seed)
    S, T = random_unimodular(sum(source), rng), random_unimodular(sum(target), rng)
    phi = T * random_equivariant_map(rng, source, target) * S.inv()
    report = strictness_check(phi, string_structure(source, S), string_structure(target, T))
    assert report.ok and report.skipped == 0, report.to_text()


def coordinate_weightings(sizes):
    """Weights on the Jordan basis with N lowering weight by at least 2 and symmetric graded dimensions"""
    d = max(sizes)
    window = range(1 - d, d)
    per_chain = [
        [w for w in product(window, repeat=size) if all(w[i + 1] <= w[i] - 2 for i in range(size - 1))]
        for size in sizes
    ]
    for choice in product(*per_chain):
        weights = [w for chain in choice for w in chain]
        if Counter(weights) == Counter(-w for w in weights):
            yield weights


def coordinate_filtration(N, weights):
    n = N.rows
    P = graded_filtration(n, [e(c, n) for c in range(n)], weights)
    return FiltSpace(n, dict(P.levels), omega=N, lowering=True)


def test_jordan_types_cover_small_dimensions():
    assert len(JORDAN_TYPES) == 1 + 2 + 3 + 5 + 7 + 11
    assert (6,) in JORDAN_TYPES and (5, 1) in JORDAN_TYPES and (1,) * 6 in JORDAN_TYPES


@pytest.mark.parametrize("sizes", JORDAN_TYPES)
def test_weight_filtration_is_the_only_candidate(sizes):
    N = jordan_matrix(sizes)
    W = weight_filtration(N)
    found = [F for F in (coordinate_filtration(N, w) for w in coordinate_weightings(sizes)) if is_lefschetz(F)]
    assert found == [W]


def test_strictness_on_seeded_maps():
    rng = random.Random(2024)
    for sample in range(100):
        source, target = random_sizes(rng, max_dim=8), random_sizes(rng, max_dim=8)
        S, T = random_unimodular(sum(source), rng), random_unimodular(sum(target), rng)
        phi = T * random_equivariant_map(rng, source, target) * S.inv()
        report = strictness_check(phi, string_structure(source, S), string_structure(target, T), f"map {sample}")
        assert report.ok and report.skipped == 0, report.to_text()
