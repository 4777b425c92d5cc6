"""
Tests for specialized truncated modules, Weyl reduction, interpolation of the
tilde operators and the sl_2 correction
"""
import sys
sys.path.append(".")

from fractions import Fraction

import pytest
import sympy as sp

from src.algebra.errors import PolynomialityError, PreconditionError
from src.algebra.degeneration import (
    Degeneration,
    SpecializationConfig,
    TruncatedModule,
    coordinate_pair,
    fit_polynomial,
    op_red,
    parabolic_ops_check,
    run_degeneration,
    sl2_correct,
    synthetic_tilde_roundtrip,
    tilde_suite,
    unreduced_h2_check,
    vector_red,
    weyl_suite,
)
from src.algebra.degeneration.checks import SYNTHETIC_GIVEN, SYNTHETIC_U, _tilde_relation_terms
from src.algebra.degeneration.truncated_module import identity
from src.algebra.degeneration.weyl import brute_force_red, red_matrix
from src.algebra.fock import FockElement
from src.algebra.ring import resolve_ring
from src.algebra.lefschetz.filtrations import commutator
from src.algebra.schemas import CaseStatus

CURVE = "curve:g=0,e=1"
PARABOLIC = "parabolic:g=0,e=1,r=2,pts=1"


@pytest.fixture
def module():
    return TruncatedModule(SpecializationConfig(CURVE, r=2, chi=0, window=2, slack=2))


def p(n, xi):
    return FockElement.generator(n, xi)


def test_config_validation():
    with pytest.raises(PreconditionError):
        SpecializationConfig(CURVE, r=0)
    with pytest.raises(PreconditionError):
        SpecializationConfig(CURVE, window=-1)
    cfg = SpecializationConfig(CURVE, r="3/2", chi=1)
    assert cfg.top == cfg.window + cfg.slack
    assert cfg.c0 == Fraction(1, 2)


def test_slice_dimensions(module):
    # p_3(1), p_2(w) in degree 2; p_4(1), p_3(w) join in degree 4
    assert module.dims() == {0: 1, 1: 0, 2: 2, 3: 0, 4: 5}
    assert module.dim(-1) == 0
    assert module.report_degrees() == [0, 1, 2]


def test_specialize_examples(module):
    ring = module.ring
    one, w = ring.one(), ring.element("w")
    assert module.specialize(p(1, w)) == FockElement.scalar(ring, 2)
    assert module.specialize(p(1, one)).is_zero()
    assert module.specialize(p(2, w) * p(1, w)) == p(2, w) * 2
    # p_2(1) = c0 + 2s with c0 = -e r = -2
    assert module.specialize(p(2, one), sector=3) == FockElement.scalar(ring, 4)
    assert module.specialize(p(3, one), sector=3) == p(3, one)


def test_coordinate_pair_is_weyl(module):
    pair = coordinate_pair(module)
    for k in module.report_degrees():
        assert pair.commutator_defect(0, k).is_zero_matrix, f"[dy,y] != 1 on slice {k}"


def test_vector_red_examples(module):
    ring = module.ring
    one, w = ring.one(), ring.element("w")
    pair = coordinate_pair(module)
    assert vector_red(p(2, w), pair).is_zero()
    assert vector_red(p(2, w) * p(2, w), pair).is_zero()
    assert vector_red(p(3, one), pair) == p(3, one)
    assert vector_red(FockElement.one(ring), pair) == FockElement.one(ring)


def test_red_agrees_with_oracle(module):
    pair = coordinate_pair(module)
    for k in range(module.cfg.top + 1):
        assert red_matrix(pair, 0, k) == brute_force_red(pair, 0, k)


def test_op_red_examples(module):
    pair = coordinate_pair(module)
    y_red = op_red(pair.y, pair)
    one_red = op_red(identity(module), pair)
    for k in module.report_degrees():
        assert y_red.matrix(0, k).is_zero_matrix
        assert one_red.matrix(0, k) == sp.eye(module.dim(k))


def test_X_on_vacuum(module):
    deg = Degeneration(module, interp_max=2)
    assert deg.X.matrix(0, 0) == sp.eye(1)
    assert deg.X.charge == 1 and deg.X_inv.charge == -1


def test_fit_polynomial():
    coeffs = fit_polynomial(lambda m: sp.Matrix([[m ** 2 + 1]]), 3)
    assert coeffs == [sp.Matrix([[1]]), sp.Matrix([[0]]), sp.Matrix([[1]])]
    with pytest.raises(PolynomialityError):
        fit_polynomial(lambda m: sp.Matrix([[2 ** m]]), 2)


def test_synthetic_roundtrip():
    assert synthetic_tilde_roundtrip(SYNTHETIC_GIVEN, SYNTHETIC_U) == SYNTHETIC_GIVEN


def test_sl2_correct_examples():
    assert sl2_correct(sp.zeros(1), sp.zeros(1)) == sp.zeros(1)
    h = sp.diag(-1, 1)
    d = sp.Matrix([[0, 0], [1, 0]])
    assert sl2_correct(h, d) == d

    h = sp.diag(-2, 0, 2)
    raising = sp.Matrix([[0, 0, 0], [1, 0, 0], [0, 1, 0]])
    d = raising + sp.Matrix([[0, 0, 0], [0, 1, 0], [0, 0, 0]])
    e = sl2_correct(h, d)
    assert e == raising
    assert commutator(h, e) == 2 * e


def test_sl2_correct_rejects():
    with pytest.raises(PreconditionError):
        sl2_correct(sp.diag(sp.Rational(1, 2)), sp.zeros(1))
    with pytest.raises(PreconditionError):
        sl2_correct(sp.zeros(2), sp.zeros(1))


def test_weyl_suite_runs():
    cfg = SpecializationConfig(CURVE, r=1, chi=0, window=2, slack=2)
    report = weyl_suite(cfg, interp_max=2)
    assert report.ok, report.to_text()
    assert report.find("weyl [dy,y]=1 s=0 deg=2").status == CaseStatus.OK
    assert report.find("weyl red oracle s=1 deg=2").status == CaseStatus.OK


def test_tilde_suite_structure():
    cfg = SpecializationConfig(CURVE, r=1, chi=0, window=2, slack=2)
    report = tilde_suite(cfg, interp_max=2)
    assert report.ok, report.to_text()
    assert report.find("tildeD X(1)=1").status == CaseStatus.OK
    assert report.find("tildeD synthetic roundtrip").status == CaseStatus.OK


def test_unreduced_check_structure():
    cfg = SpecializationConfig(CURVE, r=1, chi=0, window=2, slack=2)
    report = unreduced_h2_check(cfg, interp_max=2, index_cap=1, x_cap=1)
    assert report.ok, report.to_text()
    assert report.total > 0


def test_parabolic_power_sums():
    cfg = SpecializationConfig(PARABOLIC, r=2, chi=0, window=2, slack=2)
    report = parabolic_ops_check(cfg, interp_max=2)
    assert report.ok, report.to_text()
    for n in (0, 1):
        assert report.find(f"parabolic sum y_i^{n}=psi{n}(w) deg=0").status == CaseStatus.OK


def test_parabolic_skips():
    mismatched = parabolic_ops_check(SpecializationConfig(PARABOLIC, r=3, window=2))
    assert mismatched.find("parabolic r matches eigen-line count").status == CaseStatus.SKIP
    plain = parabolic_ops_check(SpecializationConfig(CURVE, r=1, window=2))
    assert plain.find("parabolic instance").status == CaseStatus.SKIP


def test_sl2_needs_normalization():
    cfg = SpecializationConfig(CURVE, r=1, chi=1, window=2, slack=2)
    report = run_degeneration(cfg, "sl2", interp_max=2)
    assert report.find("sl2 triple").status == CaseStatus.SKIP


def test_unknown_suite():
    with pytest.raises(ValueError):
        run_degeneration(SpecializationConfig(CURVE, window=2), "nope")


def test_relation_terms_drop_vanishing_classes():
    ring = resolve_ring(CURVE)
    one, w = ring.one(), ring.element("w")
    built = []

    def get(i, n, xi):
        built.append((i, n, xi))
        return (i, n)

    # w*w = 0 on the curve, so every term of [D~2,0(w), D~1,1(w)] vanishes
    for symmetric in (False, True):
        assert _tilde_relation_terms(get, 2, 0, w, 1, 1, w, Fraction(1), symmetric) == []
    assert built == []

    terms = _tilde_relation_terms(get, 1, 1, one, 1, 1, w, Fraction(1), symmetric=True)
    assert all(not xi.is_zero() for _, _, xi in built)
    assert terms == [(Fraction(-1), [(1, 0), (0, 1)]), (Fraction(1), [(0, 1), (1, 0)])]


def test_reduced_relations_on_square_zero_class():
    cfg = SpecializationConfig(CURVE, r=1, chi=0, window=2, slack=2)
    report = run_degeneration(cfg, "reduced", interp_max=2)
    assert report.errored == 0, report.to_text()
    assert report.failed == 0, report.to_text()
    assert report.find("reduced [D~2,0(w),D~1,1(w)] deg=0").status != CaseStatus.ERROR


@pytest.mark.parametrize(
    "suite, instance, r",
    [
        ("weyl", CURVE, 1),
        ("tildeD", CURVE, 1),
        ("sl2", CURVE, 1),
        ("reduced", CURVE, 1),
        ("unred", CURVE, 1),
        ("parabolic", PARABOLIC, 2),
    ],
)
def test_every_suite_passes(suite, instance, r):
    cfg = SpecializationConfig(instance, r=r, chi=0, window=2, slack=2)
    report = run_degeneration(cfg, suite, interp_max=2)
    assert report.total > 0
    assert report.failed == 0 and report.errored == 0, report.to_text()
