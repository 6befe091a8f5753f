"""Reduced rational functions and Moebius transforms over a number field.

Canonical form: numerator and denominator coprime, denominator monic.  All
equality tests compare canonical forms.  Points of the projective line are
field elements or the sentinel :data:`INF`.
"""

from fractions import Fraction
from math import gcd, lcm

from .errors import DegenerateTriple, FieldMismatch, ParseError, ZeroDenominator
from .numfield import FieldElement, NumberField, _format_coords
from .parsing import parse_expression
from .poly import Poly, certify_coprime, poly_gcd, resultant as _sylvester_resultant


class _Infinity:
    """The point at infinity of the projective line."""

    _instance = None

    def __new__(cls):
        if cls._instance is None:
            cls._instance = super().__new__(cls)
        return cls._instance

    def __repr__(self):
        return "INF"

    __str__ = __repr__

    def __reduce__(self):
        return (_Infinity, ())


INF = _Infinity()


def is_inf(x):
    return x is INF


def _as_element(field, x):
    if isinstance(x, FieldElement):
        if x.field != field:
            raise FieldMismatch("point from a different field")
        return x
    return field(x)


def poly_from_coeffs(field, coeffs):
    return Poly([field(c) for c in coeffs], field.zero)


def _zero_poly(field):
    return Poly([], field.zero)


class RationalFunction:
    """num/den with gcd 1 and den monic; build through :func:`rf_reduce`."""

    __slots__ = ("num", "den", "field")

    def __init__(self, num, den, field, _trusted=False):
        if not _trusted:
            reduced = rf_reduce(num, den)
            num, den = reduced.num, reduced.den
        self.num = num
        self.den = den
        self.field = field

    # -- constructors ----------------------------------------------------------------

    @classmethod
    def from_poly(cls, p):
        field = p.zero.field
        return cls(p, Poly([field.one], field.zero), field, _trusted=True)

    @classmethod
    def constant(cls, field, c):
        return cls.from_poly(Poly([_as_element(field, c)], field.zero))

    @classmethod
    def identity(cls, field):
        return cls.from_poly(Poly([field.zero, field.one], field.zero))

    @classmethod
    def parse(cls, text, field, var="z"):
        """Parse strings such as ``(2*z^3+(t+1)*z)/(z^2-t)``; ``t`` is the field generator."""
        if var == "t":
            raise ParseError("the function variable cannot be the field generator t")
        ident = cls.identity(field)
        names = {var: lambda: ident, "t": lambda: cls.constant(field, field.gen)}
        result = parse_expression(str(text), names, lambda q: cls.constant(field, q))
        if not isinstance(result, RationalFunction):
            result = cls.constant(field, result)
        return result

    # -- structure ----------------------------------------------------------------------

    @property
    def degree(self):
        return max(self.num.degree, self.den.degree, 0)

    def is_constant(self):
        return self.num.degree <= 0 and self.den.degree <= 0

    def is_polynomial(self):
        return self.den.degree == 0

    def key(self):
        return (self.num.coeffs, self.den.coeffs)

    def __eq__(self, other):
        if isinstance(other, (int, Fraction, FieldElement)):
            other = RationalFunction.constant(self.field, other)
        if not isinstance(other, RationalFunction):
            return NotImplemented
        return self.field == other.field and self.key() == other.key()

    def __hash__(self):
        return hash(self.key())

    def __repr__(self):
        return f"RationalFunction({self})"

    def __str__(self):
        return format_rf(self)

    # -- arithmetic (used by the parser and by callers building expressions) ---------

    def _coerce(self, other):
        if isinstance(other, RationalFunction):
            if other.field != self.field:
                raise FieldMismatch("rational functions over different fields")
            return other
        return RationalFunction.constant(self.field, other)

    def __add__(self, other):
        other = self._coerce(other)
        return rf_reduce(self.num * other.den + other.num * self.den, self.den * other.den)

    __radd__ = __add__

    def __neg__(self):
        return RationalFunction(-self.num, self.den, self.field, _trusted=True)

    def __sub__(self, other):
        return self + (-self._coerce(other))

    def __rsub__(self, other):
        return self._coerce(other) - self

    def __mul__(self, other):
        other = self._coerce(other)
        if other.is_constant():
            if other.num.is_zero():
                return other
            c = other.num.lc
            return RationalFunction(self.num.scale(c), self.den, self.field, _trusted=True)
        # cross-cancel: both factors are already reduced
        a, b = _cancel(self.num, other.den)
        c, d = _cancel(other.num, self.den)
        return rf_reduce(a * c, d * b, coprime=True)

    __rmul__ = __mul__

    def __truediv__(self, other):
        other = self._coerce(other)
        if other.num.is_zero():
            raise ZeroDenominator("division by the zero function")
        return rf_reduce(self.num * other.den, self.den * other.num)

    def __rtruediv__(self, other):
        return self._coerce(other) / self

    def __pow__(self, k):
        if k < 0:
            return RationalFunction.constant(self.field, 1) / (self ** (-k))
        return RationalFunction(self.num ** k, self.den ** k, self.field, _trusted=True)

    # -- evaluation ---------------------------------------------------------------------

    def at_infinity(self):
        dn, dd = self.num.degree, self.den.degree
        if self.num.is_zero():
            return self.field.zero
        if dn > dd:
            return INF
        if dn < dd:
            return self.field.zero
        return self.num.lc / self.den.lc

    def __call__(self, x):
        """Value at a point of the projective line (field element, rational or INF)."""
        if x is INF:
            return self.at_infinity()
        x = _as_element(self.field, x)
        d = self.den(x)
        if d.is_zero():
            return INF
        return self.num(x) / d

    def derivative(self):
        return rf_reduce(
            self.num.derivative() * self.den - self.num * self.den.derivative(), self.den * self.den
        )

    # -- functional surface

    def compose(self, inner):
        return rf_compose(self, inner)

    def conjugate(self):
        return rf_conjugate(self)

    def is_real(self):
        return rf_is_real(self)

    def is_rational(self):
        return self.num.is_rational() and self.den.is_rational()

    def change_field(self, field):
        """Re-embed a function with rational coefficients into another field."""
        if field == self.field:
            return self
        if not self.is_rational():
            raise FieldMismatch("only rational-coefficient functions can change field")
        conv = lambda p: Poly([field.rational(c.to_fraction()) for c in p.coeffs], field.zero)
        return RationalFunction(conv(self.num), conv(self.den), field, _trusted=True)


# ---------------------------------------------------------------------------
# operations


def rf_reduce(num, den, coprime=False):
    """Unique reduced representative of num/den with monic denominator.

    ``coprime=True`` skips the gcd when the caller knows num and den are coprime.
    """
    if den.is_zero():
        raise ZeroDenominator("zero denominator")
    field = den.zero.field
    if num.is_zero():
        return RationalFunction(num, Poly([field.one], field.zero), field, _trusted=True)
    if not coprime and den.degree > 0 and num.degree > 0 and not certify_coprime(num, den):
        g = poly_gcd(num, den)
        if g.degree > 0:
            num = num // g
            den = den // g
    inv = den.lc.inverse()
    if not inv.is_one():
        num = num.scale(inv)
        den = den.scale(inv)
    return RationalFunction(num, den, field, _trusted=True)


def _cancel(num, den):
    if num.degree <= 0 or den.degree <= 0 or certify_coprime(num, den):
        return num, den
    g = poly_gcd(num, den)
    if g.degree <= 0:
        return num, den
    return num // g, den // g


def _homogeneous_powers(p, q, d):
    pp = [p.lift(1)]
    qq = [q.lift(1)]
    for _ in range(d):
        pp.append(pp[-1] * p)
        qq.append(qq[-1] * q)
    return pp, qq


def rf_compose(outer, inner):
    """outer(inner(z)), reduced."""
    if outer.field != inner.field:
        raise FieldMismatch("composition across different fields")
    d = outer.degree
    if d == 0:
        return outer
    p, q = inner.num, inner.den
    pp, qq = _homogeneous_powers(p, q, d)
    zero = p.lift(0)
    num = zero
    den = zero
    for i in range(d + 1):
        term = pp[i] * qq[d - i]
        a = outer.num.coeff(i)
        b = outer.den.coeff(i)
        if not a.is_zero():
            num = num + term.scale(a)
        if not b.is_zero():
            den = den + term.scale(b)
    # coprime outer and inner give a coprime composite (homogeneous resultant)
    return rf_reduce(num, den, coprime=True)


def rf_conjugate(f):
    """Apply the field conjugation to every coefficient."""
    return RationalFunction(f.num.conjugate(), f.den.conjugate(), f.field, _trusted=True)


def rf_is_real(f):
    """True iff every coefficient of the canonical form is sigma-fixed."""
    return f.num.is_fixed() and f.den.is_fixed()


def rf_from_string(text, field, var="z"):
    return RationalFunction.parse(text, field, var)


def resultant(A, B, eliminate=None):
    """Sylvester resultant of bivariate polynomials in their outer variable.

    Bivariate polynomials are nested :class:`Poly` values (outer variable is
    the eliminated one); ``eliminate`` is accepted for readability only.
    """
    return _sylvester_resultant(A, B)


# ---------------------------------------------------------------------------
# printing


def _integral_scale(num, den):
    """Positive rational making every coordinate of num and den an integer, coprime overall."""
    L = 1
    for p in (num, den):
        for c in p.coeffs:
            L = lcm(L, c.den)
    G = 0
    for p in (num, den):
        for c in p.coeffs:
            for x in c.num:
                G = gcd(G, x * (L // c.den))
    return Fraction(L, G or 1)


def _format_coefficient(c):
    """Return (sign, body, needs_parens)."""
    coords = c.coords
    nonzero = [q for q in coords if q != 0]
    if len(nonzero) == 1:
        neg = nonzero[0] < 0
        return ("-" if neg else "+"), _format_coords([-q for q in coords] if neg else coords, "t"), False
    lead = next(q for q in reversed(coords) if q != 0)
    neg = lead < 0
    body = _format_coords([-q for q in coords] if neg else coords, "t")
    return ("-" if neg else "+"), body, True


def format_poly(p, var="z"):
    """Descending powers, no spaces; multi-term coefficients in parentheses."""
    terms = []
    for k in range(p.degree, -1, -1):
        c = p.coeff(k)
        if c.is_zero():
            continue
        sign, body, paren = _format_coefficient(c)
        mono = "" if k == 0 else (var if k == 1 else f"{var}^{k}")
        if paren:
            body = f"({body})"
        if mono:
            if body == "1":
                text = mono
            else:
                text = f"{body}*{mono}"
        else:
            text = body
        terms.append((sign, text))
    if not terms:
        return "0"
    out = ("-" if terms[0][0] == "-" else "") + terms[0][1]
    for sign, text in terms[1:]:
        out += sign + text
    return out


def format_rf(f, var="z"):
    """Canonical string with coprime integral coordinates, e.g. ``(2*z^3+(t+1)*z)/(z^2-t)``."""
    s = _integral_scale(f.num, f.den)
    field = f.field
    num = f.num.scale(field.rational(s))
    den = f.den.scale(field.rational(s))
    if den.degree == 0 and den.lc.is_one():
        return format_poly(num, var)
    ntxt = format_poly(num, var)
    dtxt = format_poly(den, var)
    if not _is_atom(ntxt):
        ntxt = f"({ntxt})"
    if not _is_atom(dtxt):
        dtxt = f"({dtxt})"
    return f"{ntxt}/{dtxt}"


def _is_atom(text):
    return all(ch.isalnum() or ch == "^" for ch in text)


# ---------------------------------------------------------------------------
# Moebius transforms


class MoebiusTransform:
    """z -> (a z + b)/(c z + d), stored projectively normalised."""

    __slots__ = ("a", "b", "c", "d", "field")

    def __init__(self, a, b, c, d, field=None):
        if field is None:
            field = next(x.field for x in (a, b, c, d) if isinstance(x, FieldElement))
        a, b, c, d = (_as_element(field, x) for x in (a, b, c, d))
        if (a * d - b * c).is_zero():
            raise DegenerateTriple("singular Moebius matrix (ad - bc = 0)")
        scale = c if not c.is_zero() else d
        inv = scale.inverse()
        self.a, self.b, self.c, self.d = a * inv, b * inv, c * inv, d * inv
        self.field = field

    @classmethod
    def identity(cls, field):
        return cls(field.one, field.zero, field.zero, field.one, field)

    @classmethod
    def from_rf(cls, f):
        if f.degree != 1:
            raise ValueError("not a degree-one rational function")
        return cls(f.num.coeff(1), f.num.coeff(0), f.den.coeff(1), f.den.coeff(0), f.field)

    def matrix(self):
        return (self.a, self.b, self.c, self.d)

    def to_rf(self):
        field = self.field
        return rf_reduce(Poly([self.b, self.a], field.zero), Poly([self.d, self.c], field.zero))

    def __call__(self, x):
        if x is INF:
            return INF if self.c.is_zero() else self.a / self.c
        x = _as_element(self.field, x)
        den = self.c * x + self.d
        if den.is_zero():
            return INF
        return (self.a * x + self.b) / den

    def compose(self, inner):
        """self o inner."""
        a, b, c, d = self.matrix()
        e, f, g, h = inner.matrix()
        return MoebiusTransform(a * e + b * g, a * f + b * h, c * e + d * g, c * f + d * h, self.field)

    def inverse(self):
        return MoebiusTransform(self.d, -self.b, -self.c, self.a, self.field)

    def conjugate(self):
        return MoebiusTransform(*(x.conjugate() for x in self.matrix()), field=self.field)

    def is_real(self):
        """True iff some scalar multiple of the matrix has sigma-fixed entries."""
        return all(x.is_fixed() for x in self.matrix())

    def __eq__(self, other):
        return isinstance(other, MoebiusTransform) and self.matrix() == other.matrix()

    def __hash__(self):
        return hash(self.matrix())

    def __str__(self):
        return format_rf(self.to_rf())

    def __repr__(self):
        return f"MoebiusTransform({self})"


def _to_zero_one_inf(z1, z2, z3, field):
    """Moebius map sending z1, z2, z3 to 0, 1, INF."""
    one, zero = field.one, field.zero
    if z1 is INF:
        return MoebiusTransform(zero, z2 - z3, one, -z3, field)
    if z2 is INF:
        return MoebiusTransform(one, -z1, one, -z3, field)
    if z3 is INF:
        return MoebiusTransform(one, -z1, zero, z2 - z1, field)
    return MoebiusTransform(z2 - z3, -z1 * (z2 - z3), z2 - z1, -z3 * (z2 - z1), field)


def _distinct(points):
    for i in range(3):
        for j in range(i + 1, 3):
            p, q = points[i], points[j]
            if (p is INF) != (q is INF):
                continue
            if p is INF or p == q:
                return False
    return True


def moebius_from_triples(src, dst, field=None):
    """The unique Moebius map with src[i] -> dst[i]; points are field elements or INF."""
    if field is None:
        field = next((p.field for p in list(src) + list(dst) if isinstance(p, FieldElement)), None)
        if field is None:
            raise DegenerateTriple("cannot infer the field from the points")
    src = [p if p is INF else _as_element(field, p) for p in src]
    dst = [p if p is INF else _as_element(field, p) for p in dst]
    if len(src) != 3 or len(dst) != 3 or not _distinct(src) or not _distinct(dst):
        raise DegenerateTriple("points must be three pairwise distinct values")
    s = _to_zero_one_inf(*src, field)
    t = _to_zero_one_inf(*dst, field)
    return t.inverse().compose(s)


def moebius_rf(a, b, c, d, field):
    return MoebiusTransform(a, b, c, d, field).to_rf()


def z_of(field):
    """The identity function z over ``field``."""
    return RationalFunction.identity(field)


def field_of(x):
    if isinstance(x, (RationalFunction, MoebiusTransform)):
        return x.field
    if isinstance(x, FieldElement):
        return x.field
    if isinstance(x, NumberField):
        return x
    raise TypeError(f"no field attached to {x!r}")
