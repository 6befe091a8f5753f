"""Dense univariate polynomials over a coefficient ring.

Coefficients are either :class:`FieldElement` values (a field, so Euclidean
division, gcd and square-free parts are available) or nested :class:`Poly`
values (a ring; only exact division).  Nesting gives the recursive bivariate
representation used for elimination: a polynomial in ``y`` whose coefficients
are polynomials in ``x``.
"""

from fractions import Fraction

from .errors import DivisionByZero, FieldMismatch


def _exact_div(a, b):
    if isinstance(a, Poly):
        return a.exact_div(b)
    return a / b


class Poly:
    """Immutable polynomial, coefficients lowest degree first."""

    __slots__ = ("coeffs", "zero")

    def __init__(self, coeffs, zero):
        coeffs = list(coeffs)
        while coeffs and coeffs[-1].is_zero():
            coeffs.pop()
        self.coeffs = tuple(coeffs)
        self.zero = zero

    # -- constructors ------------------------------------------------------------

    @classmethod
    def constant(cls, c, zero):
        return cls([c], zero)

    @classmethod
    def monomial(cls, c, k, zero):
        return cls([zero] * k + [c], zero)

    def _like(self, coeffs):
        return Poly(coeffs, self.zero)

    def _one(self):
        z = self.zero
        if isinstance(z, Poly):
            return Poly([z._one()], z.zero)
        return z.field.one

    def x(self):
        """The variable of this polynomial ring."""
        return self._like([self.zero, self._one()])

    def lift(self, c):
        """Coerce a scalar (int, Fraction, coefficient) into a constant polynomial."""
        if isinstance(c, Poly) and c.zero == self.zero:
            return c
        return self._like([self._coef(c)])

    def _coef(self, c):
        z = self.zero
        if isinstance(z, Poly):
            if isinstance(c, Poly) and c.zero == z.zero:
                return c
            return z.lift(c)
        if isinstance(c, (int, Fraction)):
            return z.field.rational(c)
        if c.field is not z.field and c.field != z.field:
            raise FieldMismatch("coefficient from a different field")
        return c

    # -- basic structure ----------------------------------------------------------

    @property
    def degree(self):
        return len(self.coeffs) - 1

    @property
    def lc(self):
        return self.coeffs[-1] if self.coeffs else self.zero

    def coeff(self, k):
        return self.coeffs[k] if 0 <= k < len(self.coeffs) else self.zero

    def is_zero(self):
        return not self.coeffs

    def is_constant(self):
        return len(self.coeffs) <= 1

    def __eq__(self, other):
        if not isinstance(other, Poly):
            if isinstance(other, (int, Fraction)):
                return self == self.lift(other)
            return NotImplemented
        return self.coeffs == other.coeffs

    def __hash__(self):
        return hash(self.coeffs)

    def __bool__(self):
        return bool(self.coeffs)

    def __repr__(self):
        return f"Poly({[str(c) for c in self.coeffs]})"

    # -- ring operations ----------------------------------------------------------

    def __add__(self, other):
        if not isinstance(other, Poly) or other.zero != self.zero:
            other = self.lift(other)
        a, b = self.coeffs, other.coeffs
        if len(a) < len(b):
            a, b = b, a
        out = list(a)
        for i, c in enumerate(b):
            out[i] = out[i] + c
        return self._like(out)

    __radd__ = __add__

    def __neg__(self):
        return self._like([-c for c in self.coeffs])

    def __sub__(self, other):
        if not isinstance(other, Poly) or other.zero != self.zero:
            other = self.lift(other)
        return self + (-other)

    def __rsub__(self, other):
        return self.lift(other) - self

    def __mul__(self, other):
        if not isinstance(other, Poly) or other.zero != self.zero:
            c = self._coef(other)
            return self._like([a * c for a in self.coeffs])
        a, b = self.coeffs, other.coeffs
        if not a or not b:
            return self._like([])
        out = [self.zero] * (len(a) + len(b) - 1)
        for i, x in enumerate(a):
            if x.is_zero():
                continue
            for j, y in enumerate(b):
                if not y.is_zero():
                    out[i + j] = out[i + j] + x * y
        return self._like(out)

    __rmul__ = __mul__

    def __pow__(self, k):
        result = self.lift(1)
        base = self
        while k:
            if k & 1:
                result = result * base
            base = base * base
            k >>= 1
        return result

    def scale(self, c):
        return self._like([a * c for a in self.coeffs])

    def shift(self, k):
        """Multiply by x**k."""
        if not self.coeffs:
            return self
        return self._like([self.zero] * k + list(self.coeffs))

    # -- division -------------------------------------------------------------------

    def divmod(self, other):
        """Euclidean division; coefficients must form a field."""
        if other.is_zero():
            raise DivisionByZero("polynomial division by zero")
        rem = list(self.coeffs)
        db = other.degree
        inv = other.lc.inverse()
        quot = [self.zero] * max(len(rem) - db, 1)
        bc = other.coeffs
        while len(rem) - 1 >= db and rem:
            k = len(rem) - 1 - db
            factor = rem[-1] * inv
            quot[k] = factor
            for i in range(db):
                if not bc[i].is_zero():
                    rem[i + k] = rem[i + k] - factor * bc[i]
            rem.pop()
            while rem and rem[-1].is_zero():
                rem.pop()
        return self._like(quot), self._like(rem)

    def __floordiv__(self, other):
        return self.divmod(other)[0]

    def __mod__(self, other):
        return self.divmod(other)[1]

    def exact_div(self, other):
        """Division known to be exact; works over coefficient rings (nested polys)."""
        if not isinstance(other, Poly) or other.zero != self.zero:
            c = self._coef(other)
            return self._like([_exact_div(a, c) for a in self.coeffs])
        if other.is_zero():
            raise DivisionByZero("polynomial division by zero")
        rem = list(self.coeffs)
        db = other.degree
        bc = other.coeffs
        lead = other.lc
        quot = [self.zero] * max(len(rem) - db, 1)
        while rem and len(rem) - 1 >= db:
            k = len(rem) - 1 - db
            factor = _exact_div(rem[-1], lead)
            quot[k] = factor
            for i in range(db):
                if not bc[i].is_zero():
                    rem[i + k] = rem[i + k] - factor * bc[i]
            rem.pop()
            while rem and rem[-1].is_zero():
                rem.pop()
        if rem:
            raise ArithmeticError("inexact polynomial division")
        return self._like(quot)

    # -- evaluation and calculus ----------------------------------------------------

    def __call__(self, x):
        acc = None
        for c in reversed(self.coeffs):
            acc = c if acc is None else acc * x + c
        if acc is None:
            return self.zero
        return acc

    def compose(self, inner):
        """self(inner) for a polynomial inner over the same coefficients."""
        acc = self._like([])
        for c in reversed(self.coeffs):
            acc = acc * inner + self._like([c])
        return acc

    def derivative(self):
        return self._like([c * k for k, c in enumerate(self.coeffs)][1:])

    def map_coeffs(self, fn, zero=None):
        return Poly([fn(c) for c in self.coeffs], self.zero if zero is None else zero)

    def conjugate(self):
        return self._like([c.conjugate() for c in self.coeffs])

    def monic(self):
        if self.is_zero():
            return self
        inv = self.lc.inverse()
        return self._like([c * inv for c in self.coeffs])

    def reverse(self, degree=None):
        """x**degree * self(1/x)."""
        degree = self.degree if degree is None else degree
        coeffs = list(self.coeffs) + [self.zero] * (degree + 1 - len(self.coeffs))
        return self._like(coeffs[::-1])

    def taylor_shift(self, a):
        """self(x + a)."""
        return self.compose(self._like([self._coef(a), self._one()]))

    def is_fixed(self):
        return all(c.is_fixed() for c in self.coeffs)

    def is_rational(self):
        return all(c.is_rational() for c in self.coeffs)


# ---------------------------------------------------------------------------
# univariate algorithms over a field


def poly_gcd(a, b):
    """Monic gcd (coefficients in a field)."""
    while not b.is_zero():
        a, b = b, a % b
    return a.monic()


def poly_xgcd(a, b):
    """(g, s, t) with s*a + t*b = g monic."""
    r0, r1 = a, b
    s0, s1 = a.lift(1), a.lift(0)
    t0, t1 = a.lift(0), a.lift(1)
    while not r1.is_zero():
        q, r = r0.divmod(r1)
        r0, r1 = r1, r
        s0, s1 = s1, s0 - q * s1
        t0, t1 = t1, t0 - q * t1
    if r0.is_zero():
        return r0, s0, t0
    inv = r0.lc.inverse()
    return r0.scale(inv), s0.scale(inv), t0.scale(inv)


def squarefree_part(p):
    """p / gcd(p, p'), monic."""
    if p.degree <= 0:
        return p.monic() if not p.is_zero() else p
    g = poly_gcd(p, p.derivative())
    return (p // g).monic()


# ---------------------------------------------------------------------------
# resultants


def sylvester_matrix(a, b):
    """Sylvester matrix: deg(b) rows of a, then deg(a) rows of b, descending powers."""
    m, n = a.degree, b.degree
    size = m + n
    zero = a.zero
    rows = []
    ac = list(reversed(a.coeffs))
    bc = list(reversed(b.coeffs))
    for i in range(n):
        rows.append([zero] * i + ac + [zero] * (size - m - 1 - i))
    for i in range(m):
        rows.append([zero] * i + bc + [zero] * (size - n - 1 - i))
    return rows


def bareiss_det(matrix, one):
    """Fraction-free determinant over an integral domain with exact division."""
    m = [list(row) for row in matrix]
    n = len(m)
    if n == 0:
        return one
    sign = 1
    prev = one
    for k in range(n - 1):
        if m[k][k].is_zero():
            for i in range(k + 1, n):
                if not m[i][k].is_zero():
                    m[k], m[i] = m[i], m[k]
                    sign = -sign
                    break
            else:
                return one - one
        pivot = m[k][k]
        for i in range(k + 1, n):
            row_i = m[i]
            mik = row_i[k]
            for j in range(k + 1, n):
                val = pivot * row_i[j] - mik * m[k][j]
                row_i[j] = _exact_div(val, prev) if not _is_one(prev) else val
            row_i[k] = one - one
        prev = pivot
    det = m[n - 1][n - 1]
    return det if sign > 0 else -det


def _is_one(c):
    if isinstance(c, Poly):
        return c.degree == 0 and _is_one(c.coeffs[0])
    return c.is_one()


def resultant(a, b):
    """Sylvester resultant of a and b with respect to their (outer) variable.

    The sign convention is the determinant of :func:`sylvester_matrix`.
    """
    if a.is_zero() or b.is_zero():
        return a.zero - a.zero
    if a.degree == 0 and b.degree == 0:
        return a.zero._one() if isinstance(a.zero, Poly) else a.zero.field.one
    if a.degree == 0:
        return a.lc ** b.degree
    if b.degree == 0:
        return b.lc ** a.degree
    one = a._one()
    return bareiss_det(sylvester_matrix(a, b), one)


# ---------------------------------------------------------------------------
# bivariate helpers: Poly in y with Poly-in-x coefficients


def bivariate_zero(field):
    return Poly([], Poly([], field.zero))


def bivariate_from_rows(rows, field):
    """rows[j] = coefficient Poly in x of y**j."""
    inner_zero = Poly([], field.zero)
    return Poly(rows, inner_zero)


def bivariate_swap(p):
    """Exchange the roles of the two variables."""
    inner_zero = p.zero
    field_zero = inner_zero.zero
    degx = max((c.degree for c in p.coeffs), default=-1)
    rows = []
    for i in range(degx + 1):
        rows.append(Poly([c.coeff(i) for c in p.coeffs], field_zero))
    return Poly(rows, inner_zero)


def bivariate_eval_inner(p, x0):
    """Specialise the inner variable: returns a univariate Poly in the outer variable."""
    return Poly([c(x0) if not c.is_zero() else c.zero for c in p.coeffs], p.zero.zero)


def bivariate_total_degree(p):
    return max((j + c.degree for j, c in enumerate(p.coeffs) if not c.is_zero()), default=-1)


# ---------------------------------------------------------------------------
# modular coprimality certificate
#
# Reduction modulo a degree-one prime P of K (p not dividing disc(m), t -> r
# with m(r) = 0 mod p) is a ring map on P-integral elements.  A monic common
# factor over K of two polynomials whose leading coefficients are P-units is
# P-integral, so it survives reduction: coprime images certify coprimality.

_MOD_PRIMES = (32749, 32719, 32717, 32713, 32707, 32693)
_mod_cache = {}


def _modular_contexts(field):
    key = field.key()
    if key in _mod_cache:
        return _mod_cache[key]
    contexts = []
    mod = [Fraction(c) for c in field.modulus]
    disc = _modulus_discriminant(field)
    for p in _MOD_PRIMES:
        if any(c.denominator % p == 0 for c in mod):
            continue
        if disc.numerator % p == 0 or disc.denominator % p == 0:
            continue
        ints = [c.numerator * pow(c.denominator, -1, p) % p for c in mod]
        root = _find_root_mod_p(ints, p)
        if root is not None:
            contexts.append((p, root))
        if len(contexts) >= 3:
            break
    _mod_cache[key] = contexts
    return contexts


def _modulus_discriminant(field):
    from .numfield import get_field

    Q = get_field("rationals")
    m = Poly([Q.rational(Fraction(c)) for c in field.modulus], Q.zero)
    if m.degree <= 1:
        return Fraction(1)
    return resultant(m, m.derivative()).to_fraction()


def _find_root_mod_p(coeffs, p):
    if len(coeffs) == 2:
        return (-coeffs[0]) * pow(coeffs[1], -1, p) % p
    for r in range(p):
        acc = 0
        for c in reversed(coeffs):
            acc = (acc * r + c) % p
        if acc == 0:
            return r
    return None


def _reduce_element(c, p, powers):
    if c.den % p == 0:
        return None
    inv = pow(c.den, -1, p)
    acc = 0
    for x, rp in zip(c.num, powers):
        if x:
            acc += x * rp
    return acc * inv % p


def _reduce_poly(poly, p, powers):
    out = []
    for c in poly.coeffs:
        v = _reduce_element(c, p, powers)
        if v is None:
            return None
        out.append(v)
    return out


def _gcd_degree_mod_p(a, b, p):
    """Degree of gcd of two dense lists over F_p (lowest degree first)."""

    def trim(v):
        while v and v[-1] == 0:
            v.pop()
        return v

    a, b = trim(a), trim(b)
    while b:
        inv = pow(b[-1], -1, p)
        rem = list(a)
        db = len(b) - 1
        while len(rem) - 1 >= db and rem:
            f = rem[-1] * inv % p
            k = len(rem) - 1 - db
            for i in range(db):
                if b[i]:
                    rem[k + i] = (rem[k + i] - f * b[i]) % p
            rem.pop()
            trim(rem)
        a, b = b, rem
    return len(a) - 1


def certify_coprime(a, b):
    """True if a and b (polynomials over a number field) are provably coprime."""
    if a.is_zero() or b.is_zero() or isinstance(a.zero, Poly):
        return False
    if a.degree == 0 or b.degree == 0:
        return True
    field = a.zero.field
    for p, r in _modular_contexts(field):
        powers = [pow(r, k, p) for k in range(field.degree)]
        ra = _reduce_poly(a, p, powers)
        rb = _reduce_poly(b, p, powers)
        if ra is None or rb is None or ra[-1] == 0 or rb[-1] == 0:
            continue
        if _gcd_degree_mod_p(ra, rb, p) == 0:
            return True
    return False
