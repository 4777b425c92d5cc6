"""
Tests for the W-algebra layer: D_{m,n}, the undeformed and Lehn relations,
and the weight filtration probe
"""
import sys
sys.path.append(".")

import pytest

from src.algebra.fock import operators_agree, operator_vanishes, probe_monomials
from src.algebra.hecke import geom_T_op, psi_op
from src.algebra.ring import resolve_ring
from src.algebra.w_algebra import (
    Bracket,
    D_op,
    Gen,
    L_op,
    LieExpression,
    check_undeformed,
    d_op,
    expression_weight,
    f_vanishing_probe,
    lehn_suite,
    low_weight_expressions,
    op_bracket,
    q_op,
)


@pytest.fixture
def curve():
    return resolve_ring("curve:g=0,e=1")


@pytest.fixture
def monomials(curve):
    return probe_monomials(curve, 1, 4)


def test_bracket_of_psi_vanishes(curve, monomials):
    bracket = op_bracket(psi_op(1, curve.one()), psi_op(2, curve.element("w")))
    assert operator_vanishes(bracket, monomials) is None


def test_even_self_bracket_vanishes(curve, monomials):
    t0 = geom_T_op(0, curve.one())
    assert operator_vanishes(op_bracket(t0, t0), monomials) is None


def test_psi1_acts_as_degree_operator(curve, monomials):
    t0 = geom_T_op(0, curve.element("w"))
    assert operators_agree(op_bracket(psi_op(1, curve.one()), t0), t0, monomials) is None


def test_D_normalization(curve, monomials):
    for n in range(3):
        for xi in curve.basis_elements():
            assert operators_agree(D_op(0, n, xi), psi_op(n, xi), monomials) is None
            assert operators_agree(D_op(1, n, xi), geom_T_op(n, xi), monomials) is None


def test_D20_unwinds_one_bracket(curve, monomials):
    w = curve.element("w")
    expected = geom_T_op(1, w).bracket(geom_T_op(0, curve.one()))
    assert operators_agree(D_op(2, 0, w), expected, monomials) is None


def test_lehn_relations_spot_checks(curve, monomials):
    one, w = curve.one(), curve.element("w")
    assert operator_vanishes(q_op(1, one).bracket(q_op(2, w)), monomials) is None
    assert operators_agree(d_op(curve).bracket(q_op(1, w)), L_op(1, w), monomials) is None
    assert operators_agree(L_op(0, one).bracket(q_op(2, w)), q_op(2, w).scale(2), monomials) is None


@pytest.mark.parametrize("instance", ["curve:g=0,e=1", "curve:g=1,e=0"])
def test_check_undeformed(instance):
    report = check_undeformed(instance, max_degree=2, index_cap=2, max_length=1)
    assert report.total > 0
    assert report.ok, report.to_text()


def test_lehn_suite():
    report = lehn_suite("curve:g=0,e=1", max_degree=2, index_cap=2, max_length=1)
    assert report.ok, report.to_text()


def test_expression_weight(curve):
    t3 = Gen("T", 3, 0)
    assert expression_weight(t3) == 3
    assert expression_weight(Bracket(Gen("psi", 2, 0), Gen("T", 1, 1))) == 2
    expr = LieExpression((Gen("psi", 1, 0), Bracket(Gen("T", 0, 0), Gen("T", 0, 1))))
    assert expression_weight(expr) == 0


def test_low_weight_pool(curve):
    pool = low_weight_expressions(curve, 2)
    assert pool
    assert all(expression_weight(e) <= -2 for e in pool)


def test_f_vanishing_probe():
    report = f_vanishing_probe("curve:g=0,e=1", samples=8, seed=3, max_degree=2, max_length=1)
    assert report.total > 0
    assert report.ok, report.to_text()
    again = f_vanishing_probe("curve:g=0,e=1", samples=8, seed=3, max_degree=2, max_length=1)
    assert again.to_text() == report.to_text()
