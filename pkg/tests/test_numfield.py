from fractions import Fraction

import mpmath
import pytest
import sympy as sp
from hypothesis import given, settings, strategies as st

from ratcurve.errors import DivisionByZero, FieldMismatch, ParseError
from ratcurve.numfield import field_from_spec, get_field, nf_arith, nf_embed

K = get_field("eisenstein")
G = get_field("gaussian")
C5 = get_field("cyclotomic:5")

fracs = st.fractions(min_value=-50, max_value=50, max_denominator=20)


def elt(field, coords):
    return field.element([Fraction(c) for c in coords])


@st.composite
def eis(draw):
    return elt(K, [draw(fracs), draw(fracs)])


@st.composite
def cyc5(draw):
    return elt(C5, [draw(fracs) for _ in range(4)])


def test_omega_relations():
    w = K.gen
    assert w * w + w + 1 == K.zero
    assert w ** 3 == K.one
    assert w.conjugate() == w * w
    assert abs(complex(w) - complex(-0.5, 3 ** 0.5 / 2)) < 1e-15


@settings(max_examples=60, deadline=None)
@given(eis(), eis(), eis())
def test_field_axioms(a, b, c):
    assert (a + b) * c == a * c + b * c
    assert (a * b) * c == a * (b * c)
    if not b.is_zero():
        assert (a / b) * b == a
    assert (a * b).conjugate() == a.conjugate() * b.conjugate()
    assert (a + a.conjugate()).is_fixed()


@settings(max_examples=40, deadline=None)
@given(cyc5(), cyc5())
def test_cyclotomic_against_sympy(a, b):
    # oracle: multiply as polynomials in t and reduce modulo Phi_5 in sympy
    t = sp.symbols("t")
    pa = sum(sp.Rational(c.numerator, c.denominator) * t**k for k, c in enumerate(a.coords))
    pb = sum(sp.Rational(c.numerator, c.denominator) * t**k for k, c in enumerate(b.coords))
    ref = sp.Poly(sp.rem(sp.expand(pa * pb), t**4 + t**3 + t**2 + t + 1, t), t)
    got = sum(sp.Rational(c.numerator, c.denominator) * t**k for k, c in enumerate((a * b).coords))
    assert sp.expand(got - ref.as_expr()) == 0


@settings(max_examples=40, deadline=None)
@given(eis(), eis())
def test_embedding_is_a_homomorphism(a, b):
    assert abs(complex(a * b) - complex(a) * complex(b)) < 1e-9 * (1 + abs(complex(a * b)))
    assert abs(complex(a.conjugate()) - complex(a).conjugate()) < 1e-9 * (1 + abs(complex(a)))


def test_embed_ball_contains_value():
    x = K.parse("72*t-33")
    ball = nf_embed(x, 128)
    mpmath.mp.dps = 60
    im_ref = 36 * mpmath.sqrt(3)
    assert ball.re == -69
    assert abs(mpmath.mpf(ball.im.numerator) / ball.im.denominator - im_ref) <= mpmath.mpf(ball.rad.numerator) / ball.rad.denominator
    assert ball.rad < Fraction(1, 2**100)


def test_parse_and_print_roundtrip():
    for text in ("72*t-33", "1080*t-648", "-1/2", "t^2"):
        x = K.parse(text)
        assert K.parse(str(x)) == x


def test_division_by_zero():
    with pytest.raises(DivisionByZero):
        nf_arith("div", K.one, K.zero)


def test_field_mismatch():
    with pytest.raises(FieldMismatch):
        nf_arith("add", K.one, G.gen)


def test_unknown_field():
    with pytest.raises(ParseError):
        get_field("quaternions")


def test_field_from_mapping():
    F = field_from_spec({"modulus": "t^2+1", "conjugation": "-t", "embedding": [0, 1], "name": "i-field"})
    i = F.gen
    assert i * i == F(-1)
    assert i.conjugate() == -i


def test_rational_subfield():
    x = K(Fraction(3, 7))
    assert x.is_rational() and x.to_fraction() == Fraction(3, 7)
    assert not K.gen.is_fixed()
