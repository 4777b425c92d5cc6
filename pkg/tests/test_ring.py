"""
Tests for the base ring datum and its built-in instances
"""
import sys
sys.path.append(".")

import pytest
import sympy as sp
from hypothesis import given, settings
from hypothesis import strategies as st

from src.algebra.errors import AugmentationError, PreconditionError, RingMismatchError, RingValidationError
from src.algebra.ring import (
    asym,
    make_curve_ring,
    make_parabolic_ring,
    make_projective_plane_ring,
    parabolic_label,
    resolve_ring,
    ring_from_json,
    ring_to_json,
)
from src.algebra.ring.ring_core import U, divided_difference_symbolic


def test_curve_products():
    ring = make_curve_ring(1, 1)
    g1, g2, w = ring.element("g1"), ring.element("g2"), ring.element("w")
    assert g1 * g2 == w, "g1 g2 should be w"
    assert g2 * g1 == -w, "g2 g1 should be -w"
    assert (w * w).is_zero(), "w^2 vanishes on a curve"
    assert ring.one() * g1 == g1


def test_ring_mismatch():
    with pytest.raises(RingMismatchError):
        make_curve_ring(1, 1).one() + make_curve_ring(0, 1).one()


def test_diagonal_mul():
    curve = make_curve_ring(1, 1)
    w = curve.index("w")
    assert curve.diagonal_mul(curve.one()) == {(w, w): 1}
    assert curve.diagonal_mul(curve.element("w")) == {}
    assert curve.diagonal_mul(curve.element("g1")) == {}
    p2 = make_projective_plane_ring()
    assert p2.diagonal_mul(p2.one()) == {(2, 0): 1, (1, 1): 1, (0, 2): 1}


def test_projective_plane_data():
    ring = make_projective_plane_ring()
    d = ring.index("d")
    assert ring.tensor_mul(ring.diag, ring.diag) == {(d, d): 3}
    assert ring.s2 == ring.element({"d": 6})
    assert ring.aug_value(ring.element("d")) == 1
    assert ring.aug_value(ring.element("h")) == 0


def test_open_ring_has_no_augmentation():
    ring = make_curve_ring(0, 1)
    with pytest.raises(AugmentationError):
        ring.aug_value(ring.one())


def test_curve_chern_invariants():
    for g in range(3):
        for e in range(3):
            ring = make_curve_ring(g, e)
            assert ring.s2.is_zero()
            assert ring.diagonal_mul(ring.c1) == {}
            assert ring.c1 == ring.element({"w": e})


def test_todd_coefficients():
    ring = make_projective_plane_ring()
    td = ring.todd_coefficients(3)
    assert td[0] == ring.one()
    assert td[1] == ring.c1 / 2
    assert td[2] == (ring.c1 * ring.c1 + ring.c2) / 12
    assert td[3].is_zero(), "degree 6 exceeds the top degree"


def test_divided_difference():
    ring = make_projective_plane_ring()
    assert ring.divided_difference(1) == {}
    assert ring.divided_difference(2) == {0: ring.one() * 2}
    dd3 = ring.divided_difference(3)
    assert dd3[1] == ring.one() * 6
    assert dd3[0] == -ring.c1 * 3


@pytest.mark.parametrize("n", range(2, 7))
def test_divided_difference_at_zero_roots(n):
    ring = make_curve_ring(1, 0)
    assert ring.divided_difference(n) == {n - 2: ring.one() * (n * (n - 1))}
    symbolic = divided_difference_symbolic(n)
    constant = {k: v.subs({sp.Symbol("c1"): 0, sp.Symbol("c2"): 0}) for k, v in symbolic.items()}
    assert sum(v * U ** k for k, v in constant.items()) == n * (n - 1) * U ** (n - 2)


def test_parabolic_ring():
    ring = make_parabolic_ring(0, 1, 2, 1)
    p1 = ring.element("p1_1")
    assert (p1 * p1).is_zero()
    assert parabolic_label(ring, 1, 1) + parabolic_label(ring, 1, 2) == ring.element("w")
    curve = make_parabolic_ring(1, 1, 2, 1)
    assert (curve.element("p1_1") * curve.element("g1")).is_zero()
    trivial = make_parabolic_ring(0, 1, 1, 1)
    assert trivial.dim == 2
    assert parabolic_label(trivial, 1, 1) == trivial.element("w")


def test_asym():
    ring = make_parabolic_ring(0, 1, 2, 1)
    p1 = parabolic_label(ring, 1, 1)
    p2 = parabolic_label(ring, 1, 2)
    assert asym(p1) == (p1 - p2) / 2
    assert asym(p1 - p2) == p1 - p2
    with pytest.raises(PreconditionError):
        asym(make_curve_ring(0, 1).one())


def test_asym_of_invariant_class():
    ring = make_parabolic_ring(0, 1, 3, 2)
    w = ring.element("w")
    assert asym(w).is_zero(), "symmetric classes have zero antisymmetrization for r > 1"


def test_resolve_ring_and_json_roundtrip():
    ring = resolve_ring("curve:g=1,e=1")
    assert ring is resolve_ring("curve:g=1,e=1")
    assert resolve_ring("parabolic:g=0,e=1,r=2,pts=1").parabolic.r == 2
    again = ring_from_json(ring_to_json(resolve_ring("p2")))
    assert again.diag == resolve_ring("p2").diag
    with pytest.raises(RingValidationError):
        resolve_ring("k3")


def test_invalid_ring_rejected():
    payload = ring_to_json(make_projective_plane_ring())
    payload["diag"] = [[2, 0, "1"], [0, 2, "1"]]
    with pytest.raises(RingValidationError):
        ring_from_json(payload)


RINGS = [resolve_ring("p2"), resolve_ring("curve:g=1,e=1"), resolve_ring("parabolic:g=0,e=1,r=2,pts=1")]


@st.composite
def ring_elements(draw, ring):
    coeffs = draw(st.lists(st.integers(min_value=-4, max_value=4), min_size=ring.dim, max_size=ring.dim))
    return ring.element({b.name: c for b, c in zip(ring.basis, coeffs)})


@pytest.mark.parametrize("ring", RINGS, ids=lambda r: r.name)
def test_ring_laws(ring):
    @settings(max_examples=30, deadline=None)
    @given(a=ring_elements(ring), b=ring_elements(ring), c=ring_elements(ring))
    def laws(a, b, c):
        assert (a * b) * c == a * (b * c)
        assert a * (b + c) == a * b + a * c
        assert ring.one() * a == a == a * ring.one()

    laws()


@pytest.mark.parametrize("ring", RINGS, ids=lambda r: r.name)
def test_basis_supercommutes(ring):
    for x in ring.basis_elements():
        for y in ring.basis_elements():
            sign = -1 if x.parity and y.parity else 1
            assert x * y == (y * x) * sign
