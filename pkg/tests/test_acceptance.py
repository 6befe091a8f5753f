"""Acceptance criteria 1-11, one test each, one PASS/FAIL line each.

Tolerances are pinned below.  Exact criteria use equality of reduced
canonical forms (tolerance zero).  Independent oracles: sympy for the
symbolic identities and factorisations, mpmath complex arithmetic for the
[3] x-map, numpy/geometry for the sampled curve.
"""

import time
from fractions import Fraction

import mpmath
import pytest
import sympy as sp

from ratcurve import (
    RationalFunction,
    build_pair,
    catalog_entry,
    certify_weakly_injective,
    circle_test,
    ec_mul,
    get_field,
    halving_obstruction,
    rf_compose,
    rf_is_real,
    sample_curve,
    search_normalization,
    torsion_conjugate_check,
    velu,
    dual_isogeny,
)
from ratcurve.elliptic import EllipticCurve, halving_locus, mult_by_ell_xmap
from ratcurve.families import (
    avanzi_zannier_default,
    chebyshev,
    fg_identity,
    pakovich_pair,
    root_of_unity,
    unity_field,
)
from ratcurve.geometry import circle_fit_residual, count_self_intersections, is_closed
from ratcurve.permcheck import search
from ratcurve.realroots import sturm_count

# pinned tolerances and budgets
XMAP_ORACLE_RTOL = mpmath.mpf("1e-40")
CIRCLE_RESIDUAL_MIN = 0.05
SELF_INTERSECTIONS_MAX = 0
BUDGET = {1: 1, 2: 60, 3: 5, 4: 1, 5: 10, 6: 600, 7: 300, 8: 60, 9: 30, 10: 60, 11: 30}

F_REF = "(z^3-6*(t+1)*z)/(3*z^2+1)"
G_REF = "(2*z^3+(t+1)*z)/(z^2-t)"
H_REF = "(8*z^9-24*z^5-13*z^3-6*z)/(12*z^8+13*z^6+12*z^4-1)"


@pytest.fixture(scope="module")
def K():
    return get_field("eisenstein")


@pytest.fixture(scope="module")
def entry():
    return catalog_entry("14a2")


def _sympy_composite_matches(f_txt, g_txt, h_txt):
    """f(g(z)) == h(z) modulo t^2 + t + 1, computed entirely in sympy."""
    z, t = sp.symbols("z t")
    conv = lambda s: sp.sympify(s.replace("^", "**"), locals={"z": z, "t": t})
    f, g, h = conv(f_txt), conv(g_txt), conv(h_txt)
    fg = sp.together(f.subs(z, g))
    n1, d1 = sp.fraction(fg)
    n2, d2 = sp.fraction(sp.together(h))
    cross = sp.expand(n1 * d2 - n2 * d1)
    return sp.rem(sp.Poly(cross, t), sp.Poly(t**2 + t + 1, t)).is_zero


def test_criterion_01_ref_composition(acceptance, K):
    t0 = time.perf_counter()
    f, g, h = (RationalFunction.parse(s, K) for s in (F_REF, G_REF, H_REF))
    fg = rf_compose(f, g)
    ok = fg == h and fg.key() == h.key()
    dt = time.perf_counter() - t0
    oracle = _sympy_composite_matches(F_REF, G_REF, H_REF)
    acceptance(1, "reference f o g equals reference h", ok and oracle and dt < BUDGET[1],
               f"exact, sympy oracle={oracle}, {dt:.3f}s")


def test_criterion_02_pipeline_14a2(acceptance, entry):
    t0 = time.perf_counter()
    pair = build_pair(entry.curve, entry.c, entry.w, entry.ell, certify=True)
    K = entry.field
    h_ref = RationalFunction.parse(H_REF, K)
    found = search_normalization(pair.h, h_ref)
    dt = time.perf_counter() - t0
    checks = {
        "deg9": pair.h.degree == 9,
        "h_rational": pair.h.is_rational(),
        "real": rf_is_real(pair.h),
        "injective": pair.certificates["injective"] == "Injective",
        "not_circle": pair.certificates["circle"] == "NotCircle",
        "normalisation": found is not None,
    }
    if found is not None:
        L1, L3 = found
        checks["normalisation_exact"] = rf_compose(L3.to_rf(), rf_compose(pair.h, L1.to_rf())) == h_ref
        checks["normalisation_real"] = L1.is_real() and L3.is_real()
    failed = [k for k, v in checks.items() if not v]
    acceptance(2, "14a2 construction pipeline", not failed and dt < BUDGET[2],
               f"failed={failed}, {dt:.1f}s")


def _mp_triple_x(a, b, x0):
    """x(3P) for P = (x0, sqrt(x0^3+a x0+b)) via complex chord-tangent formulas."""
    mpmath.mp.dps = 80
    x0 = mpmath.mpf(x0.numerator) / x0.denominator
    y0 = mpmath.sqrt(mpmath.mpc(x0**3 + a * x0 + b))
    lam = (3 * x0**2 + a) / (2 * y0)
    x2 = lam**2 - 2 * x0
    y2 = lam * (x0 - x2) - y0
    lam = (y2 - y0) / (x2 - x0)
    return lam**2 - x0 - x2


def test_criterion_03_torsion_and_kernel(acceptance, entry):
    t0 = time.perf_counter()
    E, c = entry.curve, entry.c
    order3 = ec_mul(3, c).is_infinity() and not c.is_infinity()
    conj_ok = torsion_conjugate_check(E, c, 3)
    phi = velu(E, c, 3)
    Ep = EllipticCurve(entry.reference["a_prime"], entry.reference["b_prime"], entry.field)
    j_ok = phi.codomain.j_invariant() == Ep.j_invariant()
    dt = time.perf_counter() - t0
    acceptance(3, "order-3 point, conjugate check, codomain j", order3 and conj_ok and j_ok and dt < BUDGET[3],
               f"order3={order3}, conj={conj_ok}, j={j_ok}, {dt:.2f}s")


def test_criterion_04_halving_obstruction(acceptance, entry):
    t0 = time.perf_counter()
    E, w = entry.curve, entry.w
    obstructed = halving_obstruction(E, w)
    quartic, _, factors = halving_locus(E, w)
    quad = [Fraction(33867), Fraction(156), Fraction(1)]
    has_factor = any(list(q) == quad for q, _ in factors)
    roots_of_quad = sturm_count(quad)
    dt = time.perf_counter() - t0
    # sympy oracle: the factor divides the quartic and has no real root
    X = sp.symbols("X")
    qs = sum(sp.Rational(c.numerator, c.denominator) * X**k for k, c in enumerate(quartic))
    oracle = sp.rem(qs, X**2 + 156 * X + 33867, X) == 0 and not sp.real_roots(X**2 + 156 * X + 33867)
    ok = obstructed and has_factor and roots_of_quad == 0 and oracle and dt < BUDGET[4]
    acceptance(4, "halving obstruction at (-78, 0)", ok,
               f"obstructed={obstructed}, factor={has_factor}, sturm={roots_of_quad}, {dt:.3f}s")


def test_criterion_05_dual_identity(acceptance, entry):
    t0 = time.perf_counter()
    E = entry.curve
    phi = velu(E, entry.c, 3)
    dual = dual_isogeny(phi, 3)
    composite = rf_compose(dual.xmap, phi.xmap)
    exact = composite == mult_by_ell_xmap(E, 3)
    dt = time.perf_counter() - t0
    # independent numeric oracle at a few rational x
    a, b = E.a.to_fraction(), E.b.to_fraction()
    worst = mpmath.mpf(0)
    for x0 in (Fraction(500), Fraction(-7, 3), Fraction(1001, 2)):
        v = composite(E.field.rational(x0))
        ref = _mp_triple_x(mpmath.mpf(a.numerator) / a.denominator, mpmath.mpf(b.numerator) / b.denominator, x0)
        got = mpmath.mpf(v.to_fraction().numerator) / v.to_fraction().denominator
        worst = max(worst, abs(got - ref) / abs(ref))
    ok = exact and worst < XMAP_ORACLE_RTOL and dt < BUDGET[5]
    acceptance(5, "A'(A(x)) equals the x-map of [3]", ok, f"exact={exact}, oracle rel err={mpmath.nstr(worst, 3)}, {dt:.2f}s")


@pytest.mark.slow
def test_criterion_06_ell5(acceptance):
    t0 = time.perf_counter()
    e = catalog_entry("ell5")
    pair = build_pair(e.curve, e.c, e.w, e.ell, certify=True)
    dt = time.perf_counter() - t0
    cert = pair.certificates
    checks = {
        "deg5": pair.f.degree == 5 and pair.g.degree == 5,
        "real": cert["real"] is True,
        "circle_decided": cert["circle"].kind in ("Circle", "NotCircle"),
        "not_circle": cert["circle"] == "NotCircle",
        "injective": cert["injective"] == "Injective",
    }
    failed = [k for k, v in checks.items() if not v]
    acceptance(6, "ell = 5 construction with all certificates", not failed and dt < BUDGET[6],
               f"failed={failed}, injective={cert['injective'].kind}, {dt:.1f}s")


def test_criterion_07_group_sweep(acceptance):
    t0 = time.perf_counter()
    rep = search(max_degree=9, group_budget=50, seed=0)
    dt = time.perf_counter() - t0
    tot = rep["totals"]
    random_ok = all(rep["by_degree"][n]["random"] >= 50 for n in (3, 5, 7, 9))
    ok = tot["violations"] == 0 and tot["pairs"] >= 300 and tot["triples"] >= 1000 and random_ok and dt < BUDGET[7]
    acceptance(7, "group sweep over degrees 3..9", ok,
               f"pairs={tot['pairs']}, triples={tot['triples']}, violations={tot['violations']}, "
               f"random per degree={[rep['by_degree'][n]['random'] for n in (3, 5, 7, 9)]}, {dt:.1f}s")


def _sympy_chebyshev(n):
    x = sp.symbols("x")
    return sp.Poly(2 * sp.chebyshevt(n, x / 2), x)


def test_criterion_08_family_identities(acceptance):
    t0 = time.perf_counter()
    bad = []
    for n in range(1, 13):
        T = chebyshev(n)  # raises if the defining identity fails
        coeffs = [c.to_fraction() for c in T.num.coeffs]
        ref = [Fraction(int(c)) for c in reversed(_sympy_chebyshev(n).all_coeffs())]
        if coeffs != ref:
            bad.append(f"T{n} vs sympy")
    for m in range(1, 13):
        for n in range(1, 13 // m + 1):
            if m * n <= 12 and rf_compose(chebyshev(m), chebyshev(n)) != chebyshev(m * n):
                bad.append(f"T{m}oT{n}")
    for n in range(2, 7):
        K = unity_field(n)
        for k in range(n):
            inst = pakovich_pair(n, root_of_unity(K, n, k), circle=False)
            if not (inst.checks["identity"] and inst.checks["real"]):
                bad.append(f"pakovich n={n} k={k}")
    G = unity_field(4)
    for n, k in ((2, 1), (3, 1), (3, 2), (4, 1)):
        for zeta in (G.one, G(-1), root_of_unity(G, 4)):
            if not fg_identity(n, k, zeta):
                bad.append(f"FG n={n} k={k} zeta={zeta}")
        for order in (1, 2, 4):
            inst = avanzi_zannier_default(n, k, order)
            if not (inst.checks["real"] and inst.checks["identity"]):
                bad.append(f"AZ n={n} k={k} order={order}")
    dt = time.perf_counter() - t0
    acceptance(8, "Chebyshev, Pakovich and F/G identities", not bad and dt < BUDGET[8], f"failures={bad}, {dt:.1f}s")


def test_criterion_09_circle_dichotomy(acceptance):
    t0 = time.perf_counter()
    wrong = []
    for order in (1, 2, 3, 4, 5, 6, 8):
        K = unity_field(order)
        zeta = root_of_unity(K, order)
        g = pakovich_pair(order, zeta, circle=False).g
        verdict = circle_test(g)
        expected = "Circle" if 4 % order == 0 else "NotCircle"
        if verdict.kind != expected:
            wrong.append((order, verdict.kind))
        if verdict.kind == "Circle":
            mu = verdict.data["moebius"]
            if not rf_is_real(rf_compose(mu.to_rf(), g)):
                wrong.append((order, "mu o g not real"))
    dt = time.perf_counter() - t0
    acceptance(9, "circle test is Circle exactly when zeta^4 = 1", not wrong and dt < BUDGET[9], f"wrong={wrong}, {dt:.2f}s")


def test_criterion_10_weak_injectivity(acceptance, K):
    t0 = time.perf_counter()
    h = RationalFunction.parse(H_REF, K)
    v_h = certify_weakly_injective(h)
    Q = get_field("rationals")
    cube = RationalFunction.parse("z^3", Q)
    v_c = certify_weakly_injective(cube)
    witness_ok = False
    if v_c.kind == "WeaklyInjective":
        # independent check of the witness: z^3 - z0^3 has only the real root z0
        z0 = v_c.data["z0"]
        x = sp.symbols("x")
        r = sp.real_roots(x**3 - sp.Rational(z0.numerator, z0.denominator) ** 3)
        witness_ok = z0 != 0 and len(set(r)) == 1
    dt = time.perf_counter() - t0
    ok = v_h.kind == "NoWitnessFound" and witness_ok and dt < BUDGET[10]
    acceptance(10, "weak injectivity: h has no witness, z^3 has one", ok,
               f"h={v_h.kind}, z^3={v_c.kind} z0={v_c.data.get('z0')}, {dt:.1f}s")


def test_criterion_11_figure(acceptance, K):
    t0 = time.perf_counter()
    g = RationalFunction.parse(G_REF, K)
    post = RationalFunction.parse("1/(1+z)", K)
    samples = sample_curve(g, post, 2000, 128)
    pts = [s.point() for s in samples]
    crossings = count_self_intersections(pts)
    _, _, resid = circle_fit_residual(pts)
    closed = is_closed(pts)
    dt = time.perf_counter() - t0
    ok = closed and crossings <= SELF_INTERSECTIONS_MAX and resid > CIRCLE_RESIDUAL_MIN and dt < BUDGET[11]
    acceptance(11, "sampled curve is a Jordan curve but not a circle", ok,
               f"closed={closed}, crossings={crossings}, residual={resid:.4f}, {dt:.1f}s")
