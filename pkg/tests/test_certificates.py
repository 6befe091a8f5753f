from fractions import Fraction

import pytest
import sympy as sp

from ratcurve.certificates import (
    certify_injective,
    certify_weakly_injective,
    circle_test,
    sample_curve,
    small_rationals,
    sweep_parameters,
)
from ratcurve.errors import TooFewSamples
from ratcurve.numfield import get_field
from ratcurve.ratfunc import INF, RationalFunction, rf_compose, rf_is_real

Q = get_field("rationals")
K = get_field("eisenstein")
G = get_field("gaussian")
G_REF = "(2*z^3+(t+1)*z)/(z^2-t)"


def rf(text, field=Q):
    return RationalFunction.parse(text, field)


def test_small_rationals_order_is_deterministic():
    head = list(small_rationals(3))[:7]
    assert head[:3] == [Fraction(0), Fraction(1), Fraction(-1)]
    assert len(set(small_rationals(4))) == len(list(small_rationals(4)))


@pytest.mark.parametrize("text,kind", [
    ("z", "Injective"),
    ("z^3", "Injective"),
    ("z^3+z", "Injective"),
    ("z^2", "NotInjective"),
    ("z^3-z", "NotInjective"),
    ("(z^2+1)/z", "NotInjective"),
    ("1/(z^3+1)", "Injective"),
])
def test_real_injectivity(text, kind):
    assert certify_injective(rf(text)).kind == kind


def test_injectivity_of_ref_g():
    v = certify_injective(rf(G_REF, K))
    assert v.kind == "Injective"
    assert v.data["infinity_partner"]


def test_injectivity_of_nonreal_quadratics():
    # z^2 + i z = w^2 + i w forces z = w or z + w = -i, so no real collisions
    assert certify_injective(rf("z^2+t*z", G)).kind == "Injective"
    # z^2 + i is a real map shifted by a constant: not injective
    assert certify_injective(rf("z^2+t", G)).kind == "NotInjective"


def test_circle_verdicts():
    assert circle_test(rf("(z+t)/(z-t)", G)).kind == "Circle"
    v = circle_test(rf(G_REF, K))
    assert v.kind == "NotCircle"
    circ = circle_test(rf("t*z+1", K))
    assert circ.kind == "Circle"
    assert rf_is_real(rf_compose(circ.data["moebius"].to_rf(), rf("t*z+1", K)))


def test_weak_injectivity_witness_is_checked_by_sympy():
    v = certify_weakly_injective(rf("z^3+z"))
    assert v.kind == "WeaklyInjective"
    z0 = v.data["z0"]
    x = sp.symbols("x")
    val = sp.Rational(z0.numerator, z0.denominator)
    roots = set(sp.real_roots(x**3 + x - val**3 - val))
    assert roots == {val}


def test_weak_injectivity_fails_for_even_map():
    assert certify_weakly_injective(rf("z^2")).kind == "NoWitnessFound"


def test_weak_injectivity_of_ref_h():
    h = rf("(8*z^9-24*z^5-13*z^3-6*z)/(12*z^8+13*z^6+12*z^4-1)", K)
    assert certify_weakly_injective(h).kind == "NoWitnessFound"


def test_sweep_parameters():
    ps = sweep_parameters(8)
    assert ps[0] is INF and len(ps) == 8
    assert ps[4] == 0
    with pytest.raises(TooFewSamples):
        sweep_parameters(1)


def test_sample_curve_marks_poles():
    samples = sample_curve(rf("1/z"), n=8)
    skipped = [s for s in samples if s.skipped]
    assert len(skipped) == 1 and skipped[0].param == 0 and skipped[0].reason == "PoleAtSample"


def test_sample_curve_values():
    g = rf(G_REF, K)
    samples = sample_curve(g, n=16, precision=64)
    for s in samples[1:]:
        if s.skipped:
            continue
        w = complex(K.gen)
        u = float(s.param)
        ref = (2 * u**3 + (w + 1) * u) / (u * u - w)
        assert abs(complex(*s.point()) - ref) < 1e-9 * (1 + abs(ref))
