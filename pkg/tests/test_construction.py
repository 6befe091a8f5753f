from fractions import Fraction

import pytest

from ratcurve.certificates import certify_injective, circle_test
from ratcurve.construction import (
    build_pair,
    critical_points,
    eliminate_pushforward,
    match_reference,
    moebius_height,
    normalize_pair,
    quotient_map,
    replay_diagram,
    search_normalization,
    verify_pushforward,
)
from ratcurve.elliptic import catalog_entry, ec_add, ec_mul, velu
from ratcurve.errors import PreconditionFailed
from ratcurve.numfield import get_field
from ratcurve.ratfunc import INF, MoebiusTransform, RationalFunction, rf_compose, rf_is_real

F_REF = "(z^3-6*(t+1)*z)/(3*z^2+1)"
G_REF = "(2*z^3+(t+1)*z)/(z^2-t)"
H_REF = "(8*z^9-24*z^5-13*z^3-6*z)/(12*z^8+13*z^6+12*z^4-1)"


@pytest.fixture(scope="module")
def e14():
    return catalog_entry("14a2")


@pytest.fixture(scope="module")
def raw(e14):
    return build_pair(e14.curve, e14.c, e14.w, 3, certify=False)


def test_quotient_map_is_beta_invariant(e14):
    psi = quotient_map(e14.curve, e14.w)
    c, cb = e14.c, e14.c.conjugate()
    pts = [ec_add(ec_mul(i, c), ec_mul(j, cb)) for i in range(3) for j in range(1, 3)]
    assert psi.is_beta_invariant(pts)
    assert psi(e14.curve.infinity()) is INF
    assert psi(e14.w) is INF


def test_lattes_case_gives_the_isogeny_xmap(e14):
    E = e14.curve
    phi = velu(E, e14.c, 3)
    psi = quotient_map(E, E.infinity())
    psi1 = quotient_map(phi.codomain, phi.codomain.infinity())
    g = eliminate_pushforward(phi, psi, psi1)
    assert g == phi.xmap
    assert verify_pushforward(phi, psi, psi1, g)


def test_raw_pair(raw):
    K = get_field("eisenstein")
    assert raw.f.degree == 3 and raw.g.degree == 3 and raw.h.degree == 9
    assert rf_is_real(raw.h) and raw.h.is_rational()
    assert not rf_is_real(raw.g)
    assert raw.g == RationalFunction.parse("(z^3+(288*t+288)*z)/(z^2-576*t)", K)
    ok, n_g, n_f = replay_diagram(raw)
    assert ok and n_g > 0


def test_verify_pushforward_rejects_a_wrong_map(raw):
    prov = raw.provenance
    wrong = raw.g + RationalFunction.constant(raw.g.field, raw.g.field.one)
    assert not verify_pushforward(prov["isogeny"], prov["psi"], prov["psi_prime"], wrong)


def test_normalisation_reaches_ref_maps(raw):
    K = raw.g.field
    fp, gp, hp = (RationalFunction.parse(s, K) for s in (F_REF, G_REF, H_REF))
    m = match_reference(raw, fp, gp, hp)
    assert m["h_equivalent"] and m["g_matches"] and m["f_matches"]
    assert moebius_height(m["inner"]) <= 12 and moebius_height(m["outer"]) <= 12
    pair = normalize_pair(raw, m["inner"], m["outer"], m["mu"], certify=False)
    assert (pair.f, pair.g, pair.h) == (fp, gp, hp)


def test_normalisation_search_respects_height(raw):
    K = raw.g.field
    hp = RationalFunction.parse(H_REF, K)
    assert search_normalization(raw.h, hp, height=6) is not None
    # the inner map 24z rescales to (6z : 1/4), so its height is 6
    assert search_normalization(raw.h, hp, height=5) is None


def test_moebius_height_uses_rescaling():
    Q = get_field("rationals")
    assert moebius_height(MoebiusTransform(Q(24), Q(0), Q(0), Q(1), Q)) == 6
    assert moebius_height(MoebiusTransform(Q(1), Q(0), Q(0), Q(12), Q)) == 4
    assert moebius_height(MoebiusTransform(Q(2), Q(1), Q(0), Q(1), Q)) == 2


def test_critical_points_of_cube():
    Q = get_field("rationals")
    pts = critical_points(RationalFunction.parse("z^3", Q))
    assert any(p is not None and abs(p) < 1e-9 for p in pts)
    assert None in pts


def test_certificates_invariant_under_real_rescaling():
    K = get_field("eisenstein")
    g = RationalFunction.parse(G_REF, K)
    g2 = rf_compose(g, RationalFunction.parse("2*z", K))
    assert certify_injective(g).kind == certify_injective(g2).kind == "Injective"
    assert circle_test(g).kind == circle_test(g2).kind == "NotCircle"


def test_precondition_failure_on_real_halving(e14):
    # w = 0-adjacent choice: a 2-torsion point whose halving is real fails the check
    E = e14.curve
    with pytest.raises(PreconditionFailed):
        build_pair(E, e14.c, ec_mul(2, e14.c), 3, certify=False)
