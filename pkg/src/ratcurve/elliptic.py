"""Short Weierstrass curves Y^2 = X^3 + aX + b over a number field.

Group law, division polynomials, Velu isogenies for odd prime degree, the
dual isogeny normalised against the multiplication-by-ell map, and the
real-halving obstruction for a rational point.
"""

from dataclasses import dataclass, field as dc_field
from fractions import Fraction

from .errors import (
    CurveMismatch,
    DualVerificationFailed,
    NotRationalCurve,
    NotTorsion,
    PrecisionExhausted,
    PointNotOnCurve,
    SingularCurve,
)
from .numfield import FieldElement, _qpoly_divmod, get_field, quadratic_factors, rational_roots
from .poly import Poly
from .ratfunc import RationalFunction, rf_compose, rf_reduce
from .realroots import Interval, isolate_real_roots


class EllipticCurve:
    """Y^2 = X^3 + aX + b with nonzero discriminant."""

    __slots__ = ("a", "b", "field")

    def __init__(self, a, b, field=None):
        if field is None:
            field = next((v.field for v in (a, b) if isinstance(v, FieldElement)), None) or get_field("rationals")
        self.field = field
        self.a = field(a)
        self.b = field(b)
        if self.discriminant().is_zero():
            raise SingularCurve(f"singular curve: a={self.a}, b={self.b}")

    def discriminant(self):
        return (self.a ** 3 * 4 + self.b ** 2 * 27) * (-16)

    def j_invariant(self):
        a3 = self.a ** 3 * 4
        return a3 * 1728 / (a3 + self.b ** 2 * 27)

    def rhs(self, x):
        return x * x * x + self.a * x + self.b

    def rhs_poly(self):
        K = self.field
        return Poly([self.b, self.a, K.zero, K.one], K.zero)

    def is_rational(self):
        return self.a.is_rational() and self.b.is_rational()

    def is_fixed(self):
        return self.a.is_fixed() and self.b.is_fixed()

    def contains(self, P):
        return P.is_infinity() or P.y * P.y == self.rhs(P.x)

    def point(self, x, y):
        P = CurvePoint(self, self.field(x), self.field(y))
        if not self.contains(P):
            raise PointNotOnCurve(f"({P.x}, {P.y}) is not on the curve")
        return P

    def infinity(self):
        return CurvePoint(self, None, None)

    def conjugate(self):
        return EllipticCurve(self.a.conjugate(), self.b.conjugate(), self.field)

    def __eq__(self, other):
        return isinstance(other, EllipticCurve) and self.field == other.field and (self.a, self.b) == (other.a, other.b)

    def __hash__(self):
        return hash((self.a, self.b))

    def __repr__(self):
        return f"EllipticCurve(a={self.a}, b={self.b})"

    def describe(self):
        return {"a": str(self.a), "b": str(self.b), "field": self.field.name or repr(self.field)}


class CurvePoint:
    """Affine point (x, y) or the neutral element (x = y = None)."""

    __slots__ = ("curve", "x", "y")

    def __init__(self, curve, x, y):
        self.curve = curve
        self.x = x
        self.y = y

    def is_infinity(self):
        return self.x is None

    def __neg__(self):
        if self.is_infinity():
            return self
        return CurvePoint(self.curve, self.x, -self.y)

    def __add__(self, other):
        return ec_add(self, other)

    def __sub__(self, other):
        return ec_add(self, -other)

    def __rmul__(self, n):
        return ec_mul(n, self)

    def conjugate(self):
        if self.is_infinity():
            return CurvePoint(self.curve.conjugate(), None, None)
        return CurvePoint(self.curve.conjugate(), self.x.conjugate(), self.y.conjugate())

    def is_fixed(self):
        return self.is_infinity() or (self.x.is_fixed() and self.y.is_fixed())

    def __eq__(self, other):
        if not isinstance(other, CurvePoint):
            return NotImplemented
        return (self.x, self.y) == (other.x, other.y)

    def __hash__(self):
        return hash((self.x, self.y))

    def __repr__(self):
        if self.is_infinity():
            return "CurvePoint(0_E)"
        return f"CurvePoint({self.x}, {self.y})"

    def describe(self):
        if self.is_infinity():
            return "infinity"
        return [str(self.x), str(self.y)]


def ec_add(P, Q):
    """Chord-tangent addition."""
    if P.curve != Q.curve:
        raise CurveMismatch("points lie on different curves")
    if P.is_infinity():
        return Q
    if Q.is_infinity():
        return P
    E = P.curve
    if P.x == Q.x:
        if P.y == -Q.y:
            return E.infinity()
        slope = (P.x * P.x * 3 + E.a) / (P.y * 2)
    else:
        slope = (Q.y - P.y) / (Q.x - P.x)
    x3 = slope * slope - P.x - Q.x
    y3 = slope * (P.x - x3) - P.y
    return CurvePoint(E, x3, y3)


def ec_mul(n, P):
    """n*P by double-and-add."""
    if n < 0:
        return -ec_mul(-n, P)
    result = P.curve.infinity()
    addend = P
    while n:
        if n & 1:
            result = ec_add(result, addend)
        addend = ec_add(addend, addend)
        n >>= 1
    return result


# ---------------------------------------------------------------------------
# division polynomials


def division_polynomials(E, n):
    """y-free division polynomials F_0..F_n.

    psi_k = F_k for odd k and psi_k = y*F_k for even k.
    """
    K = E.field
    a, b = E.a, E.b
    P = lambda coeffs: Poly([K(c) for c in coeffs], K.zero)
    y2 = E.rhs_poly()
    y4 = y2 * y2
    F = [P([]), P([1]), P([2]),
         P([-a * a, b * 12, a * 6, 0, 3]),
         P([-a ** 3 * 4 - b * b * 32, -a * b * 16, -a * a * 20, b * 80, a * 20, 0, 4])]
    half = K(Fraction(1, 2))
    for k in range(5, n + 1):
        m = k // 2
        if k % 2:
            if m % 2 == 0:
                val = y4 * F[m + 2] * F[m] ** 3 - F[m - 1] * F[m + 1] ** 3
            else:
                val = F[m + 2] * F[m] ** 3 - y4 * F[m - 1] * F[m + 1] ** 3
        else:
            val = (F[m] * (F[m + 2] * F[m - 1] ** 2 - F[m - 2] * F[m + 1] ** 2)).scale(half)
        F.append(val)
    return F[: n + 1]


def division_poly(E, ell):
    """psi_ell for odd ell: degree (ell^2-1)/2, roots = x-coordinates of nonzero ell-torsion."""
    if ell % 2 == 0:
        raise ValueError("ell must be odd")
    return division_polynomials(E, ell)[ell]


def mult_by_ell_xmap(E, ell):
    """x-coordinate map of [ell]: x - psi_{ell-1} psi_{ell+1} / psi_ell^2."""
    F = division_polynomials(E, ell + 1)
    K = E.field
    x = Poly([K.zero, K.one], K.zero)
    den = F[ell] * F[ell]
    num = x * den - E.rhs_poly() * F[ell - 1] * F[ell + 1]
    # already reduced: the x-map of [ell] has degree ell^2
    return rf_reduce(num, den, coprime=True)


def mult_by_ell_yfactor(E, ell):
    """y([ell]P) / y(P) as a function of x: psi_{2 ell} / (2 y psi_ell^4)."""
    F = division_polynomials(E, 2 * ell)
    K = E.field
    return rf_reduce(F[2 * ell], (F[ell] ** 4).scale(K(2)))


def point_order(P, bound):
    Q = P
    for k in range(1, bound + 1):
        if Q.is_infinity():
            return k
        Q = ec_add(Q, P)
    return None


def torsion_conjugate_check(E, c, ell):
    """ell*c = 0, c != 0 and the conjugate point is not in <c>."""
    if c.is_infinity() or not E.contains(c):
        return False
    if not ec_mul(ell, c).is_infinity():
        return False
    cbar = c.conjugate()
    if cbar.curve != E:
        # conjugate lands on the conjugate curve; for E over the fixed field they agree
        return False
    Q = c
    for _ in range(ell - 1):
        if Q == cbar:
            return False
        Q = ec_add(Q, c)
    return True


# ---------------------------------------------------------------------------
# isogenies


@dataclass
class Isogeny:
    """Phi(u, v) = (A(u), B(u) v)."""

    domain: EllipticCurve
    codomain: EllipticCurve
    xmap: RationalFunction
    ymap_factor: RationalFunction
    kernel_polynomial: Poly
    degree: int
    notes: dict = dc_field(default_factory=dict)

    def __call__(self, P):
        if P.is_infinity():
            return self.codomain.infinity()
        xa = self.xmap(P.x)
        if xa is _INF:
            return self.codomain.infinity()
        return CurvePoint(self.codomain, xa, self.ymap_factor(P.x) * P.y)

    def describe(self):
        return {
            "degree": self.degree,
            "domain": self.domain.describe(),
            "codomain": self.codomain.describe(),
            "xmap": str(self.xmap),
            "ymap_factor": str(self.ymap_factor),
            "kernel_polynomial": str(RationalFunction.from_poly(self.kernel_polynomial)),
        }


from .ratfunc import INF as _INF  # noqa: E402


def velu(E, c, ell):
    """Velu isogeny with kernel <c> for odd ell, normalised (pulls back dx/y to dx/y)."""
    if c.is_infinity() or not ec_mul(ell, c).is_infinity():
        raise NotTorsion(f"point is not of order {ell}")
    K = E.field
    x = RationalFunction.identity(K)
    A = x
    v_sum, w_sum = K.zero, K.zero
    kernel = Poly([K.one], K.zero)
    Q = c
    for _ in range((ell - 1) // 2):
        if Q.is_infinity():
            raise NotTorsion("point order is smaller than ell")
        vQ = Q.x * Q.x * 6 + E.a * 2
        uQ = Q.y * Q.y * 4
        v_sum = v_sum + vQ
        w_sum = w_sum + uQ + Q.x * vQ
        t = x - Q.x
        A = A + vQ / t + uQ / (t * t)
        kernel = kernel * Poly([-Q.x, K.one], K.zero)
        Q = ec_add(Q, c)
    codomain = EllipticCurve(E.a - v_sum * 5, E.b - w_sum * 7, K)
    B = A.derivative()
    return Isogeny(E, codomain, A, B, kernel, ell, notes={"kernel_generator": c})


def isogeny_compose(second, first, with_y=True):
    """second o first (x-maps compose, y-factors multiply)."""
    xmap = rf_compose(second.xmap, first.xmap)
    if not with_y:
        return xmap, None
    yfac = rf_compose(second.ymap_factor, first.xmap) * first.ymap_factor
    return xmap, yfac


def dual_isogeny(phi, ell, other_point=None):
    """Dual of a degree-ell Velu isogeny, normalised so that its composite with phi is [ell].

    The kernel of the dual is phi(E[ell]), generated by phi(c') for a torsion
    point c' outside ker(phi); by default c' is the conjugate of the kernel
    generator recorded on phi.
    """
    E, Ep = phi.domain, phi.codomain
    K = E.field
    if other_point is None:
        other_point = phi.notes.get("kernel_generator").conjugate()
    gen = phi(other_point)
    if gen.is_infinity():
        raise DualVerificationFailed("chosen torsion point lies in the kernel")
    psi = velu(Ep, gen, ell)
    Epp = psi.codomain
    M = mult_by_ell_xmap(E, ell)
    candidates = []
    if not E.a.is_zero() and not E.b.is_zero() and not Epp.a.is_zero():
        candidates.append((E.b * Epp.a) / (E.a * Epp.b))
    candidates.append(K(Fraction(1, ell * ell)))
    target_y = K(Fraction(1, ell ** 3))
    # at infinity A ~ x, so the composite y-factor tends to B''(inf) * B(inf)
    lead = psi.ymap_factor.at_infinity() * phi.ymap_factor.at_infinity()
    for u2 in candidates:
        if E.a != u2 * u2 * Epp.a or E.b != u2 * u2 * u2 * Epp.b:
            continue
        xmap = psi.xmap * u2
        if rf_compose(xmap, phi.xmap) != M:
            continue
        u3 = target_y / lead
        u = u3 / u2
        if u * u != u2:
            continue
        ymap = psi.ymap_factor * u3
        dual = Isogeny(Ep, E, xmap, ymap, psi.kernel_polynomial, ell,
                       notes={"kernel_generator": gen, "isomorphism_u": u})
        return dual
    raise DualVerificationFailed("no isomorphism normalisation gives A'(A(x)) = [ell]")


def verify_dual(phi, dual, ell, check_y=True):
    """Exact check that dual o phi equals [ell] on x (and optionally on the y-factor)."""
    xmap, yfac = isogeny_compose(dual, phi, with_y=check_y)
    if xmap != mult_by_ell_xmap(phi.domain, ell):
        return False
    if check_y and yfac != mult_by_ell_yfactor(phi.domain, ell):
        return False
    return True


# ---------------------------------------------------------------------------
# halving obstruction


@dataclass
class HalvingReport:
    obstructed: bool
    quartic: list
    rational_roots: list
    quadratic_factors: list  # (coefficients lowest first, multiplicity)
    real_roots: list
    notes: list


def _qpoly_str(coeffs, var="X"):
    K = get_field("rationals")
    return str(RationalFunction.from_poly(Poly([K(c) for c in coeffs], K.zero))).replace("z", var)


def halving_locus(E, w):
    """Quartic whose roots are x-coordinates of points P with 2P = +-w, with its factorisation."""
    if not (E.is_rational() and not w.is_infinity() and w.x.is_rational() and w.y.is_rational()):
        raise NotRationalCurve("halving obstruction needs a rational curve and point")
    a, b = E.a.to_fraction(), E.b.to_fraction()
    wx = w.x.to_fraction()
    # X^4 - 2aX^2 - 8bX + a^2 - 4 wx (X^3 + aX + b)
    quartic = [a * a - 4 * wx * b, -8 * b - 4 * wx * a, -2 * a, -4 * wx, Fraction(1)]
    try:
        roots = rational_roots(quartic)
        quads = [] if roots else quadratic_factors(quartic)
    except PrecisionExhausted:
        roots, quads = [], []
    factors = []
    for quad in quads:
        rest, mult = list(quartic), 0
        while len(rest) >= 3:
            q, r = _qpoly_divmod(rest, list(quad))
            if any(r):
                break
            rest, mult = q, mult + 1
        factors.append((list(quad), mult))
    return quartic, roots, factors


def halving_obstruction(E, w, report=False):
    """True iff no real point P has 2P = w."""
    quartic, roots, quads = halving_locus(E, w)
    a, b = E.a.to_fraction(), E.b.to_fraction()
    rhs = [b, a, Fraction(0), Fraction(1)]
    notes = []
    real = isolate_real_roots(quartic)
    obstructed = True
    for r in real:
        sign = _sign_on_root(rhs, r)
        # sign > 0: the two real points (X, +-Y) double to (wx, +-wy); one of them is w
        if sign > 0:
            obstructed = False
            notes.append(f"real halving point with x in [{r.lo}, {r.hi}]")
        elif sign == 0:
            notes.append("2-torsion root of the halving quartic")
    if not report:
        return obstructed
    return HalvingReport(
        obstructed,
        quartic,
        roots,
        quads,
        [(r.lo, r.hi) for r in real],
        notes,
    )


def _sign_on_root(p, root, max_rounds=200):
    """Sign of rational polynomial p at a real algebraic root (isolating interval)."""
    if root.exact:
        v = sum(c * root.lo ** k for k, c in enumerate(p))
        return (v > 0) - (v < 0)
    r = root
    for _ in range(max_rounds):
        X = Interval(r.lo, r.hi, 256)
        acc = Interval(0, 0, 256)
        for c in reversed(p):
            acc = acc * X + c
        if acc.lo > 0:
            return 1
        if acc.hi < 0:
            return -1
        r = r.refine(r.width() / 16)
        if r.exact:
            return _sign_on_root(p, r)
    # p vanishes at the root: exact check through the gcd
    return 0


# ---------------------------------------------------------------------------
# catalog


@dataclass
class CatalogEntry:
    name: str
    field: object
    curve: EllipticCurve
    c: CurvePoint
    w: CurvePoint
    ell: int
    reference: dict


def _curve_14a2():
    K = get_field("eisenstein")
    E = EllipticCurve(-46035, -3116178, K)
    c = E.point(K.parse("72*t-33"), K.parse("1080*t-648"))
    w = E.point(-78, 0)
    reference = {
        "a_prime": K.parse("298080*t+537165"),
        "b_prime": K.parse("86819040*t-39204594"),
        "halving_factor": [Fraction(33867), Fraction(156), Fraction(1)],
        "f": "(z^3-6*(t+1)*z)/(3*z^2+1)",
        "g": "(2*z^3+(t+1)*z)/(z^2-t)",
        "h": "(8*z^9-24*z^5-13*z^3-6*z)/(12*z^8+13*z^6+12*z^4-1)",
    }
    return CatalogEntry("14a2", K, E, c, w, 3, reference)


def _curve_ell5():
    # three real roots, 5-torsion split over Q(zeta5): P is defined over Q(sqrt5)
    # and Q lies on the mu_5 line, so conjugation fixes P and negates Q
    K = get_field("cyclotomic:5")
    E = EllipticCurve(-6087312675, -181864595081250, K)
    sqrt5 = K.parse("-1-2*t^2-2*t^3")
    P = E.point(345855, sqrt5 * 88410960)
    Q = E.point(K.parse("-24156*t^3-24156*t^2-88953"),
                K.parse("16160364*t^3-2826252*t^2+13334112*t+6667056"))
    c = ec_add(P, Q)
    w = E.point(-43325, 738100)
    return CatalogEntry("ell5", K, E, c, w, 5, {})


_CATALOG = {"14a2": _curve_14a2, "ell5": _curve_ell5}


def catalog_names():
    return sorted(_CATALOG)


def catalog_entry(name):
    try:
        return _CATALOG[name]()
    except KeyError:
        raise KeyError(f"unknown curve {name!r}; known: {', '.join(catalog_names())}") from None
