import pytest

from ratcurve.errors import BadRho, HypothesisViolated, MissingI, NotRootOfUnity
from ratcurve.families import (
    avanzi_zannier_default,
    avanzi_zannier_pair,
    chebyshev,
    element_order,
    family_instance,
    imaginary_unit,
    parse_family_spec,
    pakovich_pair,
    realize_polynomial_inner,
    root_of_unity,
    unity_field,
)
from ratcurve.numfield import get_field
from ratcurve.ratfunc import RationalFunction, rf_compose, rf_is_real


def test_chebyshev_small_cases():
    Q = get_field("rationals")
    assert chebyshev(1) == RationalFunction.parse("z", Q)
    assert chebyshev(2) == RationalFunction.parse("z^2-2", Q)
    assert chebyshev(3) == RationalFunction.parse("z^3-3*z", Q)


@pytest.mark.parametrize("order", [1, 2, 3, 4, 5, 6, 8, 12])
def test_root_of_unity_has_exact_order(order):
    K = unity_field(order)
    assert element_order(root_of_unity(K, order)) == order
    i = imaginary_unit(K)
    assert i * i == K(-1) and complex(i).imag > 0


def test_missing_i():
    with pytest.raises(MissingI):
        imaginary_unit(get_field("eisenstein"))


def test_not_root_of_unity():
    K = unity_field(5)
    with pytest.raises(NotRootOfUnity):
        pakovich_pair(3, root_of_unity(K, 5))
    with pytest.raises(NotRootOfUnity):
        root_of_unity(get_field("gaussian"), 3)


def test_pakovich_circle_dichotomy():
    for order, expected in ((4, "Circle"), (3, "NotCircle"), (8, "NotCircle")):
        K = unity_field(order)
        inst = pakovich_pair(order * 2 if order < 8 else order, root_of_unity(K, order))
        assert inst.checks["identity"] and inst.checks["real"]
        assert inst.checks["circle"].kind == expected


def test_bad_rho():
    K = unity_field(3)
    zeta = root_of_unity(K, 3)
    with pytest.raises(BadRho):
        avanzi_zannier_pair(3, 1, zeta, K.one)


def test_avanzi_zannier_instances_are_real():
    for n, k, order in ((3, 1, 3), (4, 1, 4), (5, 2, 5)):
        inst = avanzi_zannier_default(n, k, order)
        assert inst.checks["identity"] and inst.checks["real"] and inst.checks["degree"]


def test_avanzi_zannier_sampled_crossings():
    inst = family_instance("az:n=3,k=1,zeta_order=3", samples=400)
    assert inst.checks["self_intersections_lower_bound"] >= 0


def test_realize_polynomial_inner():
    G = get_field("gaussian")
    f = RationalFunction.parse("z^2", G)
    g = RationalFunction.parse("(2*t)*z+t", G)
    # f o g = -(2z+1)^2 is real
    lam = realize_polynomial_inner(f, g)
    assert rf_is_real(rf_compose(lam.to_rf(), g))


def test_realize_polynomial_inner_rejects_nonreal():
    G = get_field("gaussian")
    with pytest.raises(HypothesisViolated):
        realize_polynomial_inner(RationalFunction.parse("z^2", G), RationalFunction.parse("z+t", G))


def test_parse_family_spec():
    assert parse_family_spec("pakovich:n=5,zeta_order=5") == ("pakovich", {"n": 5, "zeta_order": 5})
    assert family_instance("pakovich:n=4,zeta_order=4").checks["circle"].kind == "Circle"
    with pytest.raises(ValueError):
        family_instance("unknown:n=3")
