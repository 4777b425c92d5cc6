"""
Tests for the Hecke operators, generating series and relation sweeps
"""
import sys
sys.path.append(".")

from fractions import Fraction

import pytest

from src.algebra.errors import AugmentationError
from src.algebra.fock import EMPTY, ExtendedElement, FockElement, Generator, h_eval
from src.algebra.hecke import (
    Q_map,
    R_hom,
    T_op,
    cubic_kernel_check,
    geom_T_op,
    hecke_product_oracle,
    omega_series,
    psi_class,
    psi_op,
    run_relation_suite,
)
from src.algebra.ring import make_curve_ring, make_parabolic_ring, resolve_ring
from src.algebra.schemas import CaseStatus


@pytest.fixture
def p2():
    return resolve_ring("p2")


@pytest.fixture
def curve():
    return resolve_ring("curve:g=0,e=1")


def p(n, xi):
    return FockElement.generator(n, xi)


def test_psi_class(p2):
    h = p2.element("h")
    assert psi_class(0, h) == p(1, h)
    assert psi_class(1, h) == p(1, p2.c1 * h / 2) + p(2, h) / 2
    assert psi_op(0, h)(FockElement.one(p2)) == p(1, h)


def test_psi_operators_commute(p2):
    a, b = psi_op(1, p2.element("h")), psi_op(2, p2.one())
    vector = p(2, p2.one()) * p(1, p2.element("h"))
    assert a.bracket(b)(vector).is_zero()


def test_R_hom(p2):
    eta = p2.element("h")
    assert R_hom(FockElement.one(p2)) == ExtendedElement(p2, {(EMPTY, 0, 0): Fraction(1)})
    assert R_hom(p(1, eta)) == ExtendedElement.from_fock(p(1, eta))
    expected = ExtendedElement.from_fock(p(2, eta)) - ExtendedElement.from_ring(eta * 2)
    assert R_hom(p(2, eta)) == expected


def test_Q_map(p2, curve):
    xi = p2.element("h")
    assert Q_map(ExtendedElement.from_ring(xi, -1)).is_zero()
    assert Q_map(ExtendedElement.from_ring(xi, 1)) == p(1, xi)
    f = p(2, p2.one())
    assert Q_map(ExtendedElement.tensor(f, xi, 2)) == f * h_eval(2, xi)
    with pytest.raises(AugmentationError):
        Q_map(ExtendedElement.from_ring(curve.element("w"), 0))


def test_T_on_vacuum(p2):
    for n in range(4):
        for b in range(p2.dim):
            xi = p2.element(b)
            assert T_op(n, xi)(FockElement.one(p2)) == h_eval(n, xi)


def test_T_on_curve(curve):
    w, one = curve.element("w"), curve.one()
    vacuum = FockElement.one(curve)
    assert T_op(1, w)(vacuum) == p(1, w)
    expected = p(2, w) * p(1, one) - p(1, w) * 2
    assert T_op(1, one)(p(2, w)) == expected
    assert geom_T_op(0, w)(vacuum) == p(1, w)


def test_geometric_family_on_parabolic_ring():
    ring = make_parabolic_ring(0, 1, 2, 1)
    p1 = ring.element("p1_1")
    assert geom_T_op(0, p1)(FockElement.one(ring)) == p(1, p1)


def test_geometric_family_is_plain_on_rank_one(p2):
    assert geom_T_op(0, p2.one()) is T_op(0, p2.one())


def test_omega_series(p2):
    omega = omega_series(p2, 3)
    assert omega.terms[((2, 0), (0,))] == 1
    assert omega.terms[((3, -1), (0,))] == 2
    assert omega.terms[((3, 0), (p2.index("h"),))] == -3
    flat = make_curve_ring(0, 0)
    series = omega_series(flat, 6)
    assert series.terms == {((k + 2, -k), (0,)): Fraction(k + 1) for k in range(5)}


def test_product_oracle_length_one(p2):
    xi = p2.element("h")
    coeffs = hecke_product_oracle([xi], [(n,) for n in range(4)], 3)
    for n in range(4):
        assert coeffs[(n,)] == h_eval(n, xi)


def test_product_oracle_length_two(p2):
    one, h = p2.one(), p2.element("h")
    targets = [(a, b) for a in range(3) for b in range(-1, 3)]
    coeffs = hecke_product_oracle([one, h], targets, 2)
    vacuum = FockElement.one(p2)
    for a, b in targets:
        assert coeffs[(a, b)] == T_op(b, h)(T_op(a, one)(vacuum)), f"mismatch at {(a, b)}"


def test_product_oracle_without_diagonal():
    ring = make_curve_ring(0, 0)
    # on the flat ring only 1 (x) 1 can interact; w (x) w is killed by w^2 = 0
    w = ring.element("w")
    ring_series = hecke_product_oracle([w, w], [(1, 1), (2, 1)], 2)
    assert ring_series[(1, 1)] == p(1, w) * p(1, w)


def test_cubic_kernel_vanishes(p2):
    result = cubic_kernel_check(p2, 4)
    assert result["vanishes"], result["nonzero"]
    assert result["identity"], result["mismatched"]


def test_cubic_kernel_on_curve(curve):
    result = cubic_kernel_check(curve, 4)
    assert result["vanishes"] and result["identity"]


@pytest.mark.parametrize("relation", ["Q0", "Q1", "Q2"])
def test_relations_on_projective_plane(relation):
    report = run_relation_suite("p2", relation, max_degree=2, max_index=1, max_length=1)
    assert report.total > 0
    assert report.ok, report.to_text()


def test_q3_on_projective_plane():
    report = run_relation_suite("p2", "Q3", max_degree=2, max_index=0, max_length=1)
    assert report.ok, report.to_text()


def test_relations_with_odd_classes():
    report = run_relation_suite("curve:g=1,e=1", "Q0", max_degree=2, max_index=1, max_length=1)
    assert report.ok, report.to_text()
    assert any("g1" in case.id for case in report.cases)
    report = run_relation_suite("curve:g=1,e=1", "Q1", max_degree=1, max_index=1, max_length=1)
    assert report.ok, report.to_text()


def test_oracle_on_open_ring():
    report = run_relation_suite("curve:g=1,e=1", "oracle", max_index=1)
    assert report.ok, report.to_text()
    assert report.passed > 0
    assert all(case.status != CaseStatus.SKIP or "augmentation" in case.detail for case in report.cases)


def test_oracle_leaves_out_augmented_coefficients(curve):
    w = curve.element("w")
    with pytest.raises(AugmentationError):
        hecke_product_oracle([w], [(0,)], 2)
    coeffs = hecke_product_oracle([w], [(0,), (1,), (2,)], 2, skip_augmented=True)
    assert set(coeffs) == {(1,), (2,)}
    vacuum = FockElement.one(curve)
    for n in (1, 2):
        assert coeffs[(n,)] == h_eval(n, w) == T_op(n, w)(vacuum)
    pair = hecke_product_oracle([curve.one(), w], [(1, 1)], 1, skip_augmented=True)
    assert pair[(1, 1)] == T_op(1, w)(T_op(1, curve.one())(vacuum))


def test_report_lines_are_sorted_and_stable():
    first = run_relation_suite("p2", "Q0", max_degree=2, max_index=1, max_length=1)
    second = run_relation_suite("p2", "Q0", max_degree=2, max_index=1, max_length=1, jobs=2)
    assert first.to_text() == second.to_text()
    assert first.cases[0].line().endswith(": OK")
    assert all(case.status == CaseStatus.OK for case in first.cases)
