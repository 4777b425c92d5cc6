"""
Tests for the super-commutative Fock space, symmetric functions and graded operators
"""
import sys
sys.path.append(".")

from fractions import Fraction

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from src.algebra.errors import AugmentationError, RingMismatchError
from src.algebra.fock import (
    EMPTY,
    FockElement,
    Generator,
    canonical,
    from_text,
    h_eval,
    monomial_degree,
    monomial_odd,
    multiplication_operator,
    newton_residual,
    operator_vanishes,
    probe_monomials,
    to_text,
)
from src.algebra.ring import asym, make_parabolic_ring, parabolic_label, resolve_ring

CURVE = resolve_ring("curve:g=1,e=1")

generators = st.builds(Generator, st.integers(min_value=1, max_value=3), st.integers(min_value=0, max_value=CURVE.dim - 1))
monomials = st.lists(generators, max_size=3)


@st.composite
def elements(draw):
    terms = draw(st.lists(st.tuples(monomials, st.integers(min_value=-3, max_value=3)), max_size=3))
    out = FockElement.zero(CURVE)
    for gens, c in terms:
        out = out + FockElement.monomial(CURVE, gens, c)
    return out


def p(n, name):
    return FockElement.generator(n, CURVE.element(name))


def test_odd_generators_anticommute():
    a, b = p(1, "g1"), p(2, "g2")
    assert a * a == FockElement.zero(CURVE)
    assert a * b == -(b * a)
    even = p(2, "w")
    assert a * even == even * a


def test_canonical_sign():
    g1, g2 = Generator(1, CURVE.index("g1")), Generator(1, CURVE.index("g2"))
    assert canonical(CURVE, [g2, g1]) == (-1, (g1, g2))
    assert canonical(CURVE, [g1, g1])[0] == 0


def test_text_serialization():
    f = p(2, "w") * p(1, "g1") * Fraction(3, 2) + FockElement.one(CURVE)
    assert from_text(CURVE, to_text(f)) == f
    assert to_text(FockElement.zero(CURVE)) == "0"


def test_ring_mismatch():
    with pytest.raises(RingMismatchError):
        FockElement.one(CURVE) + FockElement.one(resolve_ring("p2"))


@pytest.mark.parametrize("n", range(1, 7))
def test_newton_identities(n):
    assert newton_residual(n) == {}


def test_h0_needs_augmentation():
    with pytest.raises(AugmentationError):
        h_eval(0, CURVE.one())
    assert h_eval(1, CURVE.element("w")) == p(1, "w")


def test_probe_monomials_respect_bounds():
    probes = probe_monomials(CURVE, max_length=2, max_degree=2)
    assert probes[0] == EMPTY
    assert all(len(m) <= 2 and monomial_degree(CURVE, m) <= 2 for m in probes)
    assert len(set(probes)) == len(probes)


def test_even_multiplications_commute():
    a = multiplication_operator(p(2, "w"), "a")
    b = multiplication_operator(p(3, "1"), "b")
    assert operator_vanishes(a.bracket(b), probe_monomials(CURVE, 2, 4)) is None
    assert a.shift == 2 and not a.odd


@settings(max_examples=40, deadline=None)
@given(a=elements(), b=elements(), c=elements())
def test_product_is_associative(a, b, c):
    assert (a * b) * c == a * (b * c)


@settings(max_examples=40, deadline=None)
@given(a=elements(), b=elements(), c=elements())
def test_product_distributes(a, b, c):
    assert a * (b + c) == a * b + a * c


@settings(max_examples=40, deadline=None)
@given(x=monomials, y=monomials)
def test_monomials_supercommute(x, y):
    a = FockElement.monomial(CURVE, x)
    b = FockElement.monomial(CURVE, y)
    _, mx = canonical(CURVE, x)
    _, my = canonical(CURVE, y)
    sign = -1 if monomial_odd(CURVE, mx) and monomial_odd(CURVE, my) else 1
    assert a * b == (b * a) * sign


def test_asym_on_fock_elements():
    ring = make_parabolic_ring(0, 1, 2, 1)
    y1, y2 = parabolic_label(ring, 1, 1), parabolic_label(ring, 1, 2)
    first = FockElement.generator(1, y1)
    second = FockElement.generator(1, y2)
    assert asym(first) == FockElement.generator(1, asym(y1))
    assert asym(first) == (first - second) / 2
    assert asym(first * second).is_zero()
    assert asym(FockElement.generator(2, ring.element("w"))).is_zero()

    mixed = FockElement.generator(2, y1) * second
    swapped = FockElement.generator(2, y2) * first
    assert asym(mixed) == (mixed - swapped) / 2
    assert asym(asym(mixed)) == asym(mixed)
    assert asym(FockElement.one(ring)).is_zero()
