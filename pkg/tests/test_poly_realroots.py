from fractions import Fraction

import sympy as sp
from sympy.polys.subresultants_qq_zz import sylvester
from hypothesis import assume, given, settings, strategies as st

from ratcurve.numfield import get_field
from ratcurve.poly import Poly, certify_coprime, poly_gcd, resultant, squarefree_part
from ratcurve.realroots import count_roots_q, isolate_real_roots, norm_to_q, sturm_count

Q = get_field("rationals")
K = get_field("eisenstein")
x = sp.symbols("x")

coeffs = st.lists(st.integers(min_value=-6, max_value=6), min_size=2, max_size=6)


def qpoly(cs):
    return Poly([Q(c) for c in cs], Q.zero)


def sym(cs):
    return sum(sp.Integer(c) * x**k for k, c in enumerate(cs))


@settings(max_examples=50, deadline=None)
@given(coeffs, coeffs)
def test_resultant_matches_sympy(a, b):
    assume(a[-1] != 0 and b[-1] != 0)
    ours = resultant(qpoly(a), qpoly(b)).to_fraction()
    # sympy's resultant() can lose the sign when a trailing coefficient vanishes,
    # so the oracle is the determinant of sympy's own Sylvester matrix
    ref = sylvester(sym(a), sym(b), x).det()
    assert ours == Fraction(int(ref))
    assert abs(ours) == abs(Fraction(int(sp.resultant(sym(a), sym(b), x))))


@settings(max_examples=50, deadline=None)
@given(coeffs, coeffs)
def test_gcd_matches_sympy(a, b):
    assume(a[-1] != 0 and b[-1] != 0)
    g = poly_gcd(qpoly(a), qpoly(b))
    ref = sp.Poly(sp.gcd(sym(a), sym(b)), x).monic()
    assert g.degree == ref.degree()


@settings(max_examples=60, deadline=None)
@given(st.lists(st.integers(min_value=-8, max_value=8), min_size=1, max_size=5))
def test_isolation_counts_match_sympy(roots):
    # polynomial with known real roots times an irreducible quadratic x^2 + 1
    p = sp.expand(sp.prod([x - r for r in roots]) * (x**2 + 1))
    cs = [Fraction(int(c)) for c in reversed(sp.Poly(p, x).all_coeffs())]
    isolated = isolate_real_roots(cs)
    assert len(isolated) == len(set(roots))
    for r, ref in zip(isolated, sorted(set(roots))):
        assert r.lo <= ref <= r.hi


def test_sturm_count_on_interval():
    cs = [Fraction(c) for c in (-2, 0, 1)]  # x^2 - 2
    assert sturm_count(cs) == 2
    assert count_roots_q(cs, Fraction(0), Fraction(2)) == 1
    assert sturm_count([Fraction(33867), Fraction(156), Fraction(1)]) == 0


def test_refine_narrows_interval():
    (r, s) = isolate_real_roots([Fraction(-2), Fraction(0), Fraction(1)])
    fine = s.refine(Fraction(1, 10**12))
    assert fine.width() <= Fraction(1, 10**12)
    assert fine.lo ** 2 <= 2 <= fine.hi ** 2


def test_norm_to_q_is_multiple():
    # p = x - omega has norm x^2 + x + 1
    p = Poly([-K.gen, K.one], K.zero)
    assert norm_to_q(p) == [Fraction(1), Fraction(1), Fraction(1)]


def test_certify_coprime_modular():
    a = Poly([-K.gen, K.one], K.zero)
    b = Poly([-K.gen * K.gen, K.one], K.zero)
    assert certify_coprime(a, b)
    assert not certify_coprime(a, a * b)


def test_squarefree_part():
    p = qpoly([1, 2, 1]) * qpoly([-3, 1])  # (x+1)^2 (x-3)
    assert squarefree_part(p) == qpoly([-3, -2, 1])
