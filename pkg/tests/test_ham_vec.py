"""
Tests for the Hamiltonian vector field algebra and its realizations
"""
import sys
sys.path.append(".")

from fractions import Fraction

import pytest
import sympy as sp

from src.algebra.ham_vec import (
    HamElement,
    PolyDiffOp,
    apply_diffop,
    check_realization,
    diffop_bracket,
    h2_bracket,
    ham_as_diffop,
    plane_variables,
    sn_equivariance_and_j2,
    verify_h2,
    vmn_as_diffop,
)
from src.algebra.schemas import SuiteReport

V = HamElement.basis
(x,), (y,) = plane_variables(1)


def test_structure_constants():
    assert h2_bracket(V(1, 1), V(2, 0)) == V(2, 0).scale(2)
    assert h2_bracket(V(2, 3), V(2, 3)).is_zero()
    assert h2_bracket(V(0, 1), V(1, 0)).is_zero(), "V(0,0) is the zero field"
    assert h2_bracket(V(2, 3), V(1, 1)) == V(2, 3).scale(1 * 3 - 2 * 1)


def test_antisymmetry():
    for a in (V(1, 2), V(3, 0), V(2, 2)):
        for b in (V(0, 3), V(1, 1)):
            assert h2_bracket(a, b) == h2_bracket(b, a).scale(-1)


def test_zero_basis_is_never_stored():
    assert HamElement({(0, 0): Fraction(5)}).is_zero()
    with pytest.raises(ValueError):
        V(-1, 2)


def test_text_format():
    element = V(1, 0).scale(2) + V(0, 2).scale(Fraction(-1, 2))
    assert element.text() == "-1/2*V(0,2) + 2*V(1,0)"
    assert HamElement.parse(element.text()) == element
    assert HamElement.parse("V(2,3)") == V(2, 3)
    assert HamElement.parse("0").is_zero()
    assert HamElement().text() == "0"
    with pytest.raises(ValueError):
        HamElement.parse("W(1,2)")


def test_vmn_as_diffop():
    assert vmn_as_diffop(1, 1) == PolyDiffOp({x: x, y: -y})
    assert vmn_as_diffop(0, 2) == PolyDiffOp({x: 2 * y})
    assert vmn_as_diffop(0, 0).is_zero()
    with pytest.raises(ValueError):
        vmn_as_diffop(1, 1, 0)


def test_diffop_bracket_and_apply():
    a = PolyDiffOp({x: x, y: -y})
    b = PolyDiffOp({y: -2 * x})
    assert diffop_bracket(a, b) == PolyDiffOp({y: -4 * x})
    assert diffop_bracket(a, a).is_zero()
    assert apply_diffop(PolyDiffOp({x: x}), x ** 2 * y) == 2 * x ** 2 * y


def test_realizations_agree_on_example():
    lhs = diffop_bracket(vmn_as_diffop(1, 1), vmn_as_diffop(2, 0))
    assert lhs == ham_as_diffop(h2_bracket(V(1, 1), V(2, 0)))


def test_check_realization_small():
    report = check_realization(index_cap=2, degree_cap=3)
    assert report.total == 81
    assert report.ok, report.to_text()


def test_equivariance_and_ideal():
    report = sn_equivariance_and_j2(index_cap=2, degree_cap=2, report=SuiteReport(suite="h2", instance="plane"))
    assert report.ok, report.to_text()
    assert report.find("J2 V(1,1)") is not None
    xs, ys = plane_variables(2)
    image = apply_diffop(vmn_as_diffop(1, 1, 2), xs[0] - xs[1])
    assert sp.expand(image - (xs[0] - xs[1])) == 0


def test_verify_h2_is_clean():
    report = verify_h2(index_cap=2, degree_cap=2)
    assert report.ok, report.to_text()
    assert report.cases == sorted(report.cases, key=lambda c: c.id)
