"""Exact real-root machinery.

* Sturm sequences and root isolation for polynomials with rational
  coefficients (plain Fraction lists, lowest degree first).
* Sturm counting for polynomials whose coefficients lie in the sigma-fixed
  subfield of a number field (signs decided by certified embeddings).
* Norms down to Q, used to obtain rational candidate polynomials.
* Splitting H = A + delta*B into sigma-fixed components.
* Dyadic interval arithmetic and a two-variable Krawczyk existence test.
"""

from dataclasses import dataclass
from fractions import Fraction
from math import floor, ceil

from .errors import FixedFieldNotRational, NotRationalCoefficients
from .numfield import FieldElement, _qpoly_divmod, _trim, get_field
from .poly import Poly, bareiss_det, poly_gcd, squarefree_part

NEG_INF = float("-inf")
POS_INF = float("inf")


# ---------------------------------------------------------------------------
# rational polynomials as Fraction lists


def qp_eval(p, x):
    acc = Fraction(0)
    for c in reversed(p):
        acc = acc * x + c
    return acc


def qp_derivative(p):
    return _trim(Fraction(k) * c for k, c in enumerate(p))[1:] if len(p) > 1 else []


def qp_rem(a, b):
    return _qpoly_divmod(a, b)[1]


def qp_gcd(a, b):
    a, b = _trim(a), _trim(b)
    while b:
        a, b = b, qp_rem(a, b)
    if not a:
        return a
    lead = a[-1]
    return [c / lead for c in a]


def qp_squarefree(p):
    p = _trim(p)
    if len(p) <= 2:
        return p
    g = qp_gcd(p, qp_derivative(p))
    if len(g) <= 1:
        return p
    return _qpoly_divmod(p, g)[0]


def _primitive(p):
    """Scale to integer coefficients with gcd 1 (keeps Sturm remainders small)."""
    from math import gcd, lcm

    den = 1
    for c in p:
        den = lcm(den, c.denominator)
    ints = [int(c * den) for c in p]
    g = 0
    for c in ints:
        g = gcd(g, c)
    g = g or 1
    return [Fraction(c // g) for c in ints]


def sturm_sequence(p):
    """Sturm chain of the square-free part of p (rational coefficients)."""
    p = qp_squarefree(_trim([Fraction(c) for c in p]))
    if not p:
        raise ValueError("Sturm sequence of the zero polynomial")
    seq = [_primitive(p)]
    if len(p) > 1:
        seq.append(_primitive(qp_derivative(p)))
    while len(seq[-1]) > 1:
        r = qp_rem(seq[-2], seq[-1])
        if not r:
            break
        # primitive scaling by a positive constant keeps the signs intact
        seq.append(_primitive([-c for c in r]))
    return seq


def _sign(x):
    return (x > 0) - (x < 0)


def _sign_at(p, x):
    if x == POS_INF:
        return _sign(p[-1])
    if x == NEG_INF:
        return _sign(p[-1]) * (-1 if (len(p) - 1) % 2 else 1)
    return _sign(qp_eval(p, x))


def sign_variations(seq, x):
    signs = [s for s in (_sign_at(p, x) for p in seq) if s]
    return sum(1 for a, b in zip(signs, signs[1:]) if a != b)


def count_roots_q(p, lo=NEG_INF, hi=POS_INF, seq=None):
    """Distinct real roots of a rational polynomial in (lo, hi]."""
    seq = seq or sturm_sequence(p)
    return sign_variations(seq, lo) - sign_variations(seq, hi)


def cauchy_bound(p):
    p = _trim(p)
    lead = abs(p[-1])
    m = max((abs(c) / lead for c in p[:-1]), default=Fraction(0))
    b = 1 + m
    k = 1
    while k < b:
        k *= 2
    return Fraction(k)


@dataclass(frozen=True)
class RealRoot:
    """A real root of a square-free rational polynomial inside (lo, hi), or exactly lo == hi."""

    poly: tuple
    lo: Fraction
    hi: Fraction

    @property
    def exact(self):
        return self.lo == self.hi

    def width(self):
        return self.hi - self.lo

    def refine(self, width):
        """Bisect until the isolating interval is no wider than ``width``."""
        if self.exact or self.hi - self.lo <= width:
            return self
        p = list(self.poly)
        lo, hi = self.lo, self.hi
        slo = _sign(qp_eval(p, lo))
        while hi - lo > width:
            mid = (lo + hi) / 2
            s = _sign(qp_eval(p, mid))
            if s == 0:
                return RealRoot(self.poly, mid, mid)
            if s == slo:
                lo = mid
            else:
                hi = mid
        return RealRoot(self.poly, lo, hi)

    def __float__(self):
        return float((self.lo + self.hi) / 2)


def isolate_real_roots(p):
    """Disjoint isolating intervals for the distinct real roots, sorted ascending."""
    sq = qp_squarefree(_trim([Fraction(c) for c in p]))
    if len(sq) <= 1:
        return []
    sq = _primitive(sq)
    if len(sq) == 2:
        root = -sq[0] / sq[1]
        return [RealRoot(tuple(sq), root, root)]
    seq = sturm_sequence(sq)
    B = cauchy_bound(sq)
    out = []
    stack = [(-B, B, count_roots_q(sq, -B, B, seq))]
    while stack:
        lo, hi, n = stack.pop()
        if n == 0:
            continue
        if n == 1:
            out.append(RealRoot(tuple(sq), lo, hi))
            continue
        mid = (lo + hi) / 2
        step = (hi - lo) / 8
        while qp_eval(sq, mid) == 0:
            # keep endpoints off the roots; a rational root sits at mid
            mid = mid + step
            step /= 2
        left = count_roots_q(sq, lo, mid, seq)
        stack.append((mid, hi, n - left))
        stack.append((lo, mid, left))
    out.sort(key=lambda r: r.lo)
    return out


# ---------------------------------------------------------------------------
# polynomials over a number field with sigma-fixed coefficients


def is_rational_poly(p):
    return all(c.is_rational() for c in p.coeffs)


def to_qpoly(p):
    """Fraction list of a Poly whose coefficients are rational."""
    if not is_rational_poly(p):
        raise NotRationalCoefficients("polynomial has non-rational coefficients")
    return [c.to_fraction() for c in p.coeffs]


def _fixed_sign_at(p, x):
    if x == POS_INF:
        return p.lc.sign()
    if x == NEG_INF:
        return p.lc.sign() * (-1 if p.degree % 2 else 1)
    return p(p.zero.field.rational(x)).sign()


def _fixed_sturm(p):
    p = squarefree_part(p)
    seq = [p]
    if p.degree > 0:
        seq.append(p.derivative())
    while seq[-1].degree > 0:
        r = seq[-2] % seq[-1]
        if r.is_zero():
            break
        seq.append(-r)
    return seq


def sturm_count(p, interval=(NEG_INF, POS_INF)):
    """Distinct real roots of p in (lo, hi].

    ``p`` is a Fraction list or a Poly whose coefficients are fixed by the
    conjugation (rational, or in the real subfield of a larger field).
    """
    lo, hi = interval
    lo = lo if lo in (NEG_INF, POS_INF) else Fraction(lo)
    hi = hi if hi in (NEG_INF, POS_INF) else Fraction(hi)
    if isinstance(p, Poly):
        if p.is_zero():
            raise ValueError("sturm_count of the zero polynomial")
        if is_rational_poly(p):
            return count_roots_q(to_qpoly(p), lo, hi)
        if not p.is_fixed():
            raise NotRationalCoefficients("coefficients are not fixed by the conjugation")
        seq = _fixed_sturm(p)

        def variations(x):
            signs = [s for s in (_fixed_sign_at(q, x) for q in seq) if s]
            return sum(1 for a, b in zip(signs, signs[1:]) if a != b)

        return variations(lo) - variations(hi)
    return count_roots_q(p, lo, hi)


def real_root_count(p):
    """Number of distinct real roots of a sigma-fixed polynomial (norm shortcut first)."""
    if p.degree <= 0:
        return 0
    if is_rational_poly(p):
        return count_roots_q(to_qpoly(p))
    if count_roots_q(norm_to_q(p)) == 0:
        return 0
    return sturm_count(p)


# ---------------------------------------------------------------------------
# norms


def _qx_poly(coeffs):
    Q = get_field("rationals")
    return Poly([Q.rational(c) for c in coeffs], Q.zero)


def norm_to_q(p):
    """Rational polynomial N(p) = prod over conjugates, a multiple of p.

    Computed as Res_t(m(t), P(x, t)) where P lifts the coefficients of p to
    polynomials in the field generator t.
    """
    field = p.zero.field
    if field.degree == 1 or is_rational_poly(p):
        return [c.to_fraction() for c in p.coeffs]
    n = field.degree
    rows_t = []
    for j in range(n):
        rows_t.append(_qx_poly([c.coords[j] for c in p.coeffs]))
    Q = get_field("rationals")
    zero = Poly([], Q.zero)
    P = Poly(rows_t, zero)
    M = Poly([_qx_poly([c]) for c in field.modulus], zero)
    # Sylvester matrix of (M, P) in t, entries in Q[x]
    m, k = M.degree, P.degree
    if k <= 0:
        res = P.lc ** m
    else:
        from .poly import sylvester_matrix

        res = bareiss_det(sylvester_matrix(M, P), Poly([Q.one], Q.zero))
    return [c.to_fraction() for c in res.coeffs]


# ---------------------------------------------------------------------------
# splitting into sigma-fixed parts


def _map_nested(p, fn):
    if isinstance(p, Poly):
        return Poly([_map_nested(c, fn) for c in p.coeffs], _zero_like(p.zero, fn))
    return fn(p)


def _zero_like(zero, fn):
    if isinstance(zero, Poly):
        return Poly([], _zero_like(zero.zero, fn))
    return zero


def nested_field(p):
    z = p.zero
    while isinstance(z, Poly):
        z = z.zero
    return z.field


def split_real_imag(H, require_rational=False):
    """H = A + delta*B with sigma-fixed A, B; delta = t - sigma(t).

    For real arguments under the embedding, H vanishes iff A and B both do.
    With ``require_rational`` the fixed field must be Q.
    """
    field = nested_field(H)
    if require_rational and not field.fixed_field_is_rational():
        raise FixedFieldNotRational(f"fixed field of {field!r} is larger than Q")
    if field.has_trivial_conjugation():
        return H, _map_nested(H, lambda c: field.zero)
    half = Fraction(1, 2)
    inv_2delta = (field.delta * 2).inverse()
    A = _map_nested(H, lambda c: (c + c.conjugate()) * half)
    B = _map_nested(H, lambda c: (c - c.conjugate()) * inv_2delta)
    return A, B


def is_nested_zero(p):
    return p.is_zero()


# ---------------------------------------------------------------------------
# dyadic interval arithmetic


def _down(q, bits):
    if q.denominator <= (1 << bits):
        return q
    return Fraction(floor(q * (1 << bits)), 1 << bits)


def _up(q, bits):
    if q.denominator <= (1 << bits):
        return q
    return Fraction(ceil(q * (1 << bits)), 1 << bits)


class Interval:
    """Closed real interval with Fraction endpoints, rounded outward to ``bits``."""

    __slots__ = ("lo", "hi", "bits")

    def __init__(self, lo, hi=None, bits=128):
        hi = lo if hi is None else hi
        self.lo = _down(Fraction(lo), bits)
        self.hi = _up(Fraction(hi), bits)
        self.bits = bits

    def _wrap(self, o):
        return o if isinstance(o, Interval) else Interval(o, o, self.bits)

    def __add__(self, o):
        o = self._wrap(o)
        return Interval(self.lo + o.lo, self.hi + o.hi, self.bits)

    __radd__ = __add__

    def __neg__(self):
        return Interval(-self.hi, -self.lo, self.bits)

    def __sub__(self, o):
        o = self._wrap(o)
        return Interval(self.lo - o.hi, self.hi - o.lo, self.bits)

    def __rsub__(self, o):
        return self._wrap(o) - self

    def __mul__(self, o):
        o = self._wrap(o)
        ps = (self.lo * o.lo, self.lo * o.hi, self.hi * o.lo, self.hi * o.hi)
        return Interval(min(ps), max(ps), self.bits)

    __rmul__ = __mul__

    def contains_zero(self):
        return self.lo <= 0 <= self.hi

    def excludes_zero(self):
        return not self.contains_zero()

    def mid(self):
        return (self.lo + self.hi) / 2

    def width(self):
        return self.hi - self.lo

    def subset_interior(self, o):
        return o.lo < self.lo and self.hi < o.hi

    def __repr__(self):
        return f"[{float(self.lo)}, {float(self.hi)}]"


def element_interval(c, bits):
    """Real interval containing a sigma-fixed element under the embedding."""
    if c.is_rational():
        q = c.to_fraction()
        return Interval(q, q, bits)
    ball = c.embed(bits)
    lo, hi = ball.real_interval
    return Interval(lo, hi, bits)


class IntervalPoly2:
    """Cached interval evaluation of a bivariate nested Poly with sigma-fixed coefficients."""

    def __init__(self, P, bits):
        self.bits = bits
        self.rows = [[element_interval(c, bits) for c in row.coeffs] for row in P.coeffs]

    def __call__(self, X, Y):
        acc = None
        for row in reversed(self.rows):
            v = _horner(row, X, self.bits)
            acc = v if acc is None else acc * Y + v
        return acc if acc is not None else Interval(0, 0, self.bits)


def _horner(coeffs, X, bits):
    acc = Interval(0, 0, bits)
    for c in reversed(coeffs):
        acc = acc * X + c
    return acc


def d_dx(P):
    """Partial derivative in the inner variable of a nested bivariate Poly."""
    return Poly([row.derivative() for row in P.coeffs], P.zero)


def d_dy(P):
    return P.derivative()


def krawczyk_2d(A, B, box, bits=128):
    """Return True if the box provably contains a unique common zero of A and B.

    ``box`` is ((xlo, xhi), (ylo, yhi)); A, B are nested bivariate polynomials
    (outer variable y, inner x) with sigma-fixed coefficients.
    """
    (xlo, xhi), (ylo, yhi) = box
    X = Interval(xlo, xhi, bits)
    Y = Interval(ylo, yhi, bits)
    mx, my = X.mid(), Y.mid()
    Fa, Fb = IntervalPoly2(A, bits), IntervalPoly2(B, bits)
    J = [[IntervalPoly2(d_dx(A), bits), IntervalPoly2(d_dy(A), bits)],
         [IntervalPoly2(d_dx(B), bits), IntervalPoly2(d_dy(B), bits)]]
    pmx, pmy = Interval(mx, mx, bits), Interval(my, my, bits)
    fm = [Fa(pmx, pmy), Fb(pmx, pmy)]
    Jm = [[float(J[i][j](pmx, pmy).mid()) for j in range(2)] for i in range(2)]
    det = Jm[0][0] * Jm[1][1] - Jm[0][1] * Jm[1][0]
    if det == 0:
        return False
    Yinv = [[Fraction(Jm[1][1] / det), Fraction(-Jm[0][1] / det)],
            [Fraction(-Jm[1][0] / det), Fraction(Jm[0][0] / det)]]
    JX = [[J[i][j](X, Y) for j in range(2)] for i in range(2)]
    dx, dy = X - mx, Y - my
    K = []
    centre = (mx, my)
    for i in range(2):
        v = Interval(centre[i], centre[i], bits) - (fm[0] * Yinv[i][0] + fm[1] * Yinv[i][1])
        for j in range(2):
            ident = 1 if i == j else 0
            coeff = Interval(ident, ident, bits) - (JX[0][j] * Yinv[i][0] + JX[1][j] * Yinv[i][1])
            v = v + coeff * (dx if j == 0 else dy)
        K.append(v)
    return K[0].subset_interior(X) and K[1].subset_interior(Y)


def is_fixed_element(c):
    return isinstance(c, FieldElement) and c.is_fixed()
