from fractions import Fraction

import pytest
import sympy as sp
from hypothesis import given, settings, strategies as st

from ratcurve.errors import DegenerateTriple, ParseError
from ratcurve.numfield import get_field
from ratcurve.ratfunc import INF, MoebiusTransform, RationalFunction, moebius_from_triples, rf_compose, rf_is_real

Q = get_field("rationals")
K = get_field("eisenstein")
z = sp.symbols("z")

small = st.integers(min_value=-5, max_value=5)


@st.composite
def qpoly_text(draw, max_deg=3):
    deg = draw(st.integers(min_value=0, max_value=max_deg))
    coeffs = [draw(small) for _ in range(deg)] + [draw(st.integers(min_value=1, max_value=4))]
    return "+".join(f"({c})*z^{k}" for k, c in enumerate(coeffs))


@st.composite
def qrf_text(draw):
    return f"({draw(qpoly_text())})/({draw(qpoly_text(2))})"


def to_sympy(text):
    return sp.sympify(text.replace("^", "**"), locals={"z": z})


def same_function(rf, expr):
    """rf equals the sympy expression (cross-multiplied, exact)."""
    n, d = sp.fraction(sp.cancel(sp.together(expr)))
    ours_n = to_sympy(str(RationalFunction.from_poly(rf.num)))
    ours_d = to_sympy(str(RationalFunction.from_poly(rf.den)))
    return sp.expand(ours_n * d - n * ours_d) == 0


@settings(max_examples=40, deadline=None)
@given(qrf_text(), qrf_text())
def test_compose_matches_sympy(a, b):
    f, g = RationalFunction.parse(a, Q), RationalFunction.parse(b, Q)
    if g.is_constant():
        return
    expr = to_sympy(a).subs(z, to_sympy(b))
    assert same_function(rf_compose(f, g), expr)


@settings(max_examples=40, deadline=None)
@given(qrf_text(), qrf_text())
def test_arithmetic_matches_sympy(a, b):
    f, g = RationalFunction.parse(a, Q), RationalFunction.parse(b, Q)
    assert same_function(f + g, to_sympy(a) + to_sympy(b))
    assert same_function(f * g, to_sympy(a) * to_sympy(b))


@settings(max_examples=30, deadline=None)
@given(qrf_text())
def test_degree_is_max_of_reduced_parts(a):
    f = RationalFunction.parse(a, Q)
    n, d = sp.fraction(sp.cancel(to_sympy(a)))
    assert f.degree == max(sp.degree(n, z), sp.degree(d, z))


def test_canonical_form_reduces_common_factors():
    f = RationalFunction.parse("(z^2-1)/(z-1)", Q)
    assert f == RationalFunction.parse("z+1", Q)
    assert f.degree == 1


def test_ref_maps_parse_in_eisenstein():
    g = RationalFunction.parse("(2*z^3+(t+1)*z)/(z^2-t)", K)
    assert g.degree == 3
    assert not rf_is_real(g)
    assert g.at_infinity() is INF
    assert g(K.zero) == K.zero


def test_evaluate_at_pole_is_infinity():
    f = RationalFunction.parse("1/(z-2)", Q)
    assert f(Q(2)) is INF
    assert f(INF) == Q.zero


def test_conjugate_of_real_is_itself():
    h = RationalFunction.parse("(8*z^9-24*z^5-13*z^3-6*z)/(12*z^8+13*z^6+12*z^4-1)", K)
    assert h.conjugate() == h and rf_is_real(h)


def test_parse_errors():
    with pytest.raises(ParseError):
        RationalFunction.parse("z^^2", Q)


def test_moebius_from_triples():
    src = [Q(0), Q(1), INF]
    dst = [Q(2), Q(3), Q(5)]
    m = moebius_from_triples(src, dst, field=Q)
    assert [m(p) for p in src] == dst


def test_moebius_degenerate_triple():
    with pytest.raises(DegenerateTriple):
        moebius_from_triples([Q(1), Q(1), Q(2)], [Q(0), Q(1), INF], field=Q)


def test_moebius_inverse_and_reality():
    m = MoebiusTransform(K.one, K.gen, K.zero, K.one, K)
    assert not m.is_real()
    assert rf_compose(m.to_rf(), m.inverse().to_rf()) == RationalFunction.identity(K)
