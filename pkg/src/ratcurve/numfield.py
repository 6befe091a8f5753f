"""Number fields Q[t]/(m(t)) with an order-two automorphism and a complex embedding.

Elements are stored as integer coordinate vectors over a common positive
denominator, which keeps the hot paths (products reduced modulo ``m``) in
integer arithmetic.  ``t`` denotes the field generator throughout.
"""

import math
from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache

import mpmath

from .errors import (
    DivisionByZero,
    FieldMismatch,
    InvalidField,
    ParseError,
    PrecisionExhausted,
)
from .parsing import parse_expression

MAX_DOUBLINGS = 64


# ---------------------------------------------------------------------------
# rational polynomial helpers (coefficient lists, lowest degree first)


def _trim(coeffs):
    coeffs = list(coeffs)
    while coeffs and coeffs[-1] == 0:
        coeffs.pop()
    return coeffs


def _qpoly_divmod(a, b):
    a = [Fraction(c) for c in a]
    b = _trim(Fraction(c) for c in b)
    if not b:
        raise DivisionByZero("polynomial division by zero")
    q = [Fraction(0)] * max(len(a) - len(b) + 1, 1)
    lead = b[-1]
    while len(_trim(a)) >= len(b):
        a = _trim(a)
        shift = len(a) - len(b)
        factor = a[-1] / lead
        q[shift] = factor
        for i, c in enumerate(b):
            a[i + shift] -= factor * c
    return _trim(q), _trim(a)


def _qpoly_mul(a, b):
    if not a or not b:
        return []
    out = [Fraction(0)] * (len(a) + len(b) - 1)
    for i, x in enumerate(a):
        if x:
            for j, y in enumerate(b):
                out[i + j] += x * y
    return _trim(out)


def _qpoly_eval(coeffs, x):
    acc = 0
    for c in reversed(coeffs):
        acc = acc * x + c
    return acc


def _divisors(n, limit=10**7):
    """Positive divisors of |n| by trial division; None when too expensive."""
    n = abs(n)
    if n == 0:
        return None
    small, large = [], []
    d = 1
    while d * d <= n:
        if d > limit:
            return None
        if n % d == 0:
            small.append(d)
            if d * d != n:
                large.append(n // d)
        d += 1
    return small + large[::-1]


def _monic_integral(coeffs):
    """Return (D, ints) with D**deg * p(X/D) = monic integer polynomial in X."""
    coeffs = [Fraction(c) for c in coeffs]
    lead = coeffs[-1]
    coeffs = [c / lead for c in coeffs]
    n = len(coeffs) - 1
    scale = 1
    for c in coeffs:
        scale = scale * c.denominator // math.gcd(scale, c.denominator)
    ints = [int(c * scale ** (n - k)) for k, c in enumerate(coeffs)]
    return scale, ints


def rational_roots(coeffs):
    """Distinct rational roots of a nonzero rational polynomial."""
    coeffs = _trim(Fraction(c) for c in coeffs)
    roots = []
    while coeffs and coeffs[0] == 0:
        coeffs.pop(0)
        if Fraction(0) not in roots:
            roots.append(Fraction(0))
    if len(coeffs) <= 1:
        return roots
    scale, ints = _monic_integral(coeffs)
    divs = _divisors(ints[0])
    if divs is None:
        raise PrecisionExhausted("constant term too large for rational-root search")
    for d in divs:
        for cand in (d, -d):
            if _qpoly_eval(ints, cand) == 0:
                root = Fraction(cand, scale)
                if root not in roots:
                    roots.append(root)
    return sorted(roots)


def quadratic_factors(coeffs):
    """Monic rational quadratic factors of a quartic without rational roots."""
    coeffs = _trim(Fraction(c) for c in coeffs)
    if len(coeffs) != 5:
        return []
    scale, (a0, a1, a2, a3, _) = _monic_integral(coeffs)
    divs = _divisors(a0)
    if divs is None:
        raise PrecisionExhausted("constant term too large for quadratic-factor search")
    found = []
    for d in divs:
        for q in (d, -d):
            s = a0 // q
            if s != q:
                num = a1 - q * a3
                if num % (s - q):
                    continue
                pairs = [(num // (s - q), a3 - num // (s - q))]
            else:
                if a1 != q * a3:
                    continue
                disc = a3 * a3 - 4 * (a2 - 2 * q)
                if disc < 0 or math.isqrt(disc) ** 2 != disc or (a3 + math.isqrt(disc)) % 2:
                    continue
                r = math.isqrt(disc)
                pairs = [((a3 + r) // 2, (a3 - r) // 2)]
            for p, r in pairs:
                if q + s + p * r == a2:
                    # undo X = scale * x
                    factor = (Fraction(q, scale * scale), Fraction(p, scale), Fraction(1))
                    if factor not in found:
                        found.append(factor)
    return found


def is_irreducible_small(coeffs):
    """Irreducibility over Q for degree <= 4; None when undecided (higher degree)."""
    coeffs = _trim(Fraction(c) for c in coeffs)
    n = len(coeffs) - 1
    if n <= 1:
        return n == 1
    if n > 4:
        return None
    if rational_roots(coeffs):
        return False
    if n == 4 and quadratic_factors(coeffs):
        return False
    return True


# ---------------------------------------------------------------------------
# complex balls


def _sqrt_up(q):
    """A rational upper bound for sqrt(q), q >= 0, with ~60 bits of slack."""
    q = Fraction(q)
    if q <= 0:
        return Fraction(0)
    shift = max(0, 60 - (q.numerator.bit_length() - q.denominator.bit_length()) // 2)
    scaled = (q.numerator << (2 * shift)) // q.denominator
    return Fraction(math.isqrt(scaled) + 1, 1 << shift)


def _round_to(x, bits):
    """Round a Fraction to a multiple of 2**-bits; returns (rounded, error bound)."""
    if x.denominator == 1 or (x.denominator & (x.denominator - 1) == 0 and x.denominator <= (1 << bits)):
        return x, Fraction(0)
    r = Fraction(round(x * (1 << bits)), 1 << bits)
    return r, Fraction(1, 1 << bits)


@dataclass(frozen=True)
class ComplexBall:
    """Closed disk {z : |z - (re + i im)| <= rad} with exact rational data."""

    re: Fraction
    im: Fraction
    rad: Fraction

    @property
    def real_interval(self):
        return (self.re - self.rad, self.re + self.rad)

    @property
    def imag_interval(self):
        return (self.im - self.rad, self.im + self.rad)

    def contains(self, z):
        z = complex(z)
        dz = (Fraction(z.real) - self.re) ** 2 + (Fraction(z.imag) - self.im) ** 2
        return dz <= self.rad ** 2

    def conjugate(self):
        return ComplexBall(self.re, -self.im, self.rad)

    def __complex__(self):
        return complex(float(self.re), float(self.im))

    def abs_upper(self):
        return _sqrt_up(self.re ** 2 + self.im ** 2) + self.rad

    def excludes_zero(self):
        return self.re ** 2 + self.im ** 2 > self.rad ** 2


def _gauss_poly_eval(coeffs, re, im):
    """Evaluate a rational polynomial at re + i*im exactly."""
    ar, ai = Fraction(0), Fraction(0)
    for c in reversed(coeffs):
        ar, ai = ar * re - ai * im + c, ar * im + ai * re
    return ar, ai


def _gauss_abs2(pair):
    return pair[0] * pair[0] + pair[1] * pair[1]


def _derivative(coeffs):
    return [k * c for k, c in enumerate(coeffs)][1:]


# ---------------------------------------------------------------------------
# fields


class NumberField:
    """Q[t]/(m(t)) with automorphism t -> sigma(t) of order dividing two.

    ``embedding`` is an approximate location (complex number) of the root of
    ``m`` that ``t`` maps to; the containing disk is certified on construction.
    """

    def __init__(self, modulus, conjugation=None, embedding=None, name=None, assume_irreducible=False):
        modulus = _trim(Fraction(c) for c in modulus)
        if len(modulus) < 2:
            raise InvalidField("modulus must have degree >= 1")
        if modulus[-1] != 1:
            raise InvalidField("modulus must be monic")
        self.modulus = tuple(modulus)
        self.degree = len(modulus) - 1
        self.name = name
        irreducible = is_irreducible_small(modulus)
        if irreducible is False:
            raise InvalidField(f"modulus {self._modulus_str()} is reducible over Q")
        if irreducible is None and not assume_irreducible:
            raise InvalidField("irreducibility of moduli above degree 4 must be asserted by the caller")
        self.irreducibility_verified = bool(irreducible)

        n = self.degree
        # t**k mod m for k < 2n-1, as rational vectors
        powers = []
        vec = [Fraction(0)] * n
        vec[0] = Fraction(1)
        for _ in range(2 * n - 1):
            powers.append(vec)
            shifted = [Fraction(0)] + vec
            top = shifted.pop()
            vec = [shifted[i] - top * modulus[i] for i in range(n)]
        self._reduction = []
        denom = 1
        for k in range(n, 2 * n - 1):
            for c in powers[k]:
                denom = denom * c.denominator // math.gcd(denom, c.denominator)
        self._red_den = denom
        for k in range(n, 2 * n - 1):
            self._reduction.append(tuple(int(c * denom) for c in powers[k]))

        if conjugation is None:
            conjugation = [Fraction(0), Fraction(1)] if n > 1 else [Fraction(0)]
        conj = [Fraction(c) for c in conjugation]
        _, conj = _qpoly_divmod(conj, modulus)
        conj = conj + [Fraction(0)] * (n - len(conj))
        self.conjugation = tuple(conj)
        self._zero = None
        self._conj_matrix = None
        self._build_conjugation()

        self._root_cache = {}
        self._isolating_disk = None
        if embedding is None:
            embedding = 0
        self.embedding_hint = complex(embedding)
        self._certify_embedding()

    # -- construction helpers ------------------------------------------------

    def _modulus_str(self):
        return _format_coords(self.modulus, "t")

    def _build_conjugation(self):
        n = self.degree
        images = []
        current = [Fraction(1)] + [Fraction(0)] * (n - 1)
        for _ in range(n):
            images.append(current)
            _, nxt = _qpoly_divmod(_qpoly_mul(current, list(self.conjugation)), list(self.modulus))
            current = nxt + [Fraction(0)] * (n - len(nxt))
        # images[i] = sigma(t)**i mod m
        den = 1
        for row in images:
            for c in row:
                den = den * c.denominator // math.gcd(den, c.denominator)
        self._conj_den = den
        self._conj_rows = tuple(tuple(int(c * den) for c in row) for row in images)
        # order-two and automorphism checks
        image = self.element(self.conjugation)
        acc = self.rational(0)
        for c in reversed(self.modulus):
            acc = acc * image + c
        if not acc.is_zero():
            raise InvalidField("conjugation image is not a root of the modulus")
        twice = self.element(self.conjugation).conjugate()
        if twice != self.gen:
            raise InvalidField("conjugation does not have order dividing two")

    def _certify_embedding(self):
        coeffs = list(self.modulus)
        n = self.degree
        if n == 1:
            root = -coeffs[0]
            self._isolating_disk = ComplexBall(root, Fraction(0), Fraction(0))
            return
        mpmath.mp.prec = 80
        approx = mpmath.polyroots([float(c) if abs(c) < 1e300 else c for c in reversed(coeffs)],
                                  maxsteps=200, extraprec=200)
        deriv = _derivative(coeffs)
        disks = []
        for z in approx:
            re, im = Fraction(float(mpmath.re(z))), Fraction(float(mpmath.im(z)))
            val = _gauss_abs2(_gauss_poly_eval(coeffs, re, im))
            dval = _gauss_abs2(_gauss_poly_eval(deriv, re, im))
            if dval == 0:
                raise InvalidField("modulus is not squarefree")
            rad = _sqrt_up(Fraction(n * n) * val / dval)
            disks.append(ComplexBall(re, im, rad))
        for i, a in enumerate(disks):
            for b in disks[i + 1:]:
                gap = (a.re - b.re) ** 2 + (a.im - b.im) ** 2
                if gap <= (a.rad + b.rad) ** 2:
                    raise InvalidField("could not isolate the roots of the modulus")
        hint = self.embedding_hint
        best = min(disks, key=lambda d: abs(complex(d) - hint))
        self._isolating_disk = best

    # -- element construction --------------------------------------------------

    def element(self, coords):
        """Element from rational coordinates (lowest power of t first)."""
        coords = [Fraction(c) for c in coords]
        if len(coords) > self.degree:
            _, coords = _qpoly_divmod(coords, list(self.modulus))
        coords = coords + [Fraction(0)] * (self.degree - len(coords))
        den = 1
        for c in coords:
            den = den * c.denominator // math.gcd(den, c.denominator)
        return FieldElement(self, tuple(int(c * den) for c in coords), den)

    def __call__(self, value):
        """Coerce an int, Fraction, FieldElement or string into this field."""
        if isinstance(value, FieldElement):
            if value.field is not self and value.field != self:
                if value.is_rational():
                    return self.rational(value.to_fraction())
                raise FieldMismatch("element belongs to a different field")
            return value
        if isinstance(value, str):
            return self.parse(value)
        return self.rational(value)

    def rational(self, q):
        q = Fraction(q)
        return FieldElement(self, (q.numerator,) + (0,) * (self.degree - 1), q.denominator)

    @property
    def zero(self):
        if self._zero is None:
            self._zero = self.rational(0)
        return self._zero

    @property
    def one(self):
        return self.rational(1)

    @property
    def gen(self):
        if self.degree == 1:
            return self.rational(-self.modulus[0])
        return FieldElement(self, (0, 1) + (0,) * (self.degree - 2), 1)

    def parse(self, text):
        return parse_expression(str(text), {"t": lambda: self.gen}, self.rational)

    # -- structure ---------------------------------------------------------------

    @property
    def delta(self):
        """t - sigma(t): anti-invariant, with delta**2 fixed by sigma."""
        return self.gen - self.gen.conjugate()

    def has_trivial_conjugation(self):
        return self.gen.conjugate() == self.gen

    def fixed_field_is_rational(self):
        """True when the sigma-fixed subfield is Q (degree <= 2 with sigma nontrivial)."""
        if self.degree == 1:
            return True
        return self.degree == 2 and not self.has_trivial_conjugation()

    def key(self):
        return (self.modulus, self.conjugation, round(self.embedding_hint.real, 6), round(self.embedding_hint.imag, 6))

    def __eq__(self, other):
        return isinstance(other, NumberField) and (self is other or self.key() == other.key())

    def __hash__(self):
        return hash(self.key())

    def __repr__(self):
        if self.name:
            return f"NumberField({self.name!r})"
        return f"NumberField(modulus={self._modulus_str()!r})"

    def describe(self):
        return {
            "name": self.name,
            "modulus": self._modulus_str(),
            "conjugation": _format_coords(self.conjugation, "t"),
            "embedding": [float(self._isolating_disk.re), float(self._isolating_disk.im)],
            "irreducibility_verified": self.irreducibility_verified,
        }

    # -- embedding -----------------------------------------------------------------

    def root_ball(self, bits):
        """Certified ball of radius <= 2**-bits around the embedded generator."""
        if bits in self._root_cache:
            return self._root_cache[bits]
        disk = self._isolating_disk
        if disk.rad == 0 or disk.rad <= Fraction(1, 1 << bits):
            return disk
        coeffs = list(self.modulus)
        deriv = _derivative(coeffs)
        n = self.degree
        work = bits + 20
        for _ in range(MAX_DOUBLINGS):
            mpmath.mp.prec = work + 10
            z = mpmath.mpc(mpmath.mpf(disk.re.numerator) / disk.re.denominator,
                           mpmath.mpf(disk.im.numerator) / disk.im.denominator)
            poly = [mpmath.mpf(c.numerator) / c.denominator for c in reversed(coeffs)]
            dpoly = [mpmath.mpf(c.numerator) / c.denominator for c in reversed(deriv)]
            for _ in range(int(math.log2(work)) + 8):
                z = z - mpmath.polyval(poly, z) / mpmath.polyval(dpoly, z)
            re = _mpf_to_fraction(mpmath.re(z))
            im = _mpf_to_fraction(mpmath.im(z))
            re, _ = _round_to(re, work)
            im, _ = _round_to(im, work)
            val = _gauss_abs2(_gauss_poly_eval(coeffs, re, im))
            dval = _gauss_abs2(_gauss_poly_eval(deriv, re, im))
            rad = _sqrt_up(Fraction(n * n) * val / dval) if dval else disk.rad
            # the new disk must sit inside the isolating one to name the same root
            offset = _sqrt_up((re - disk.re) ** 2 + (im - disk.im) ** 2)
            if rad <= Fraction(1, 1 << bits) and offset + rad <= disk.rad:
                ball = ComplexBall(re, im, rad)
                self._root_cache[bits] = ball
                return ball
            work *= 2
        raise PrecisionExhausted(f"could not refine the embedding of {self!r} to {bits} bits")


def _mpf_to_fraction(x):
    sign, man, exp, _ = mpmath.mpf(x)._mpf_
    man = -int(man) if sign else int(man)
    if exp >= 0:
        return Fraction(man << exp)
    return Fraction(man, 1 << (-exp))


# ---------------------------------------------------------------------------
# elements


class FieldElement:
    """Immutable element sum(num[i] t**i) / den of a NumberField."""

    __slots__ = ("field", "num", "den", "_hash")

    def __init__(self, field, num, den=1):
        if den < 0:
            num, den = tuple(-c for c in num), -den
        g = den
        for c in num:
            if g == 1:
                break
            g = math.gcd(g, c)
        if g > 1:
            num = tuple(c // g for c in num)
            den //= g
        if not any(num):
            den = 1
        self.field = field
        self.num = tuple(num)
        self.den = den
        self._hash = None

    # -- coercion ------------------------------------------------------------

    def _coerce(self, other):
        if isinstance(other, FieldElement):
            if other.field is self.field:
                return other
            if other.field == self.field:
                return FieldElement(self.field, other.num, other.den)
            raise FieldMismatch(f"{self.field!r} vs {other.field!r}")
        if isinstance(other, (int, Fraction)):
            return self.field.rational(other)
        return NotImplemented

    # -- arithmetic ------------------------------------------------------------

    def __add__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return NotImplemented
        if self.den == other.den:
            return FieldElement(self.field, tuple(a + b for a, b in zip(self.num, other.num)), self.den)
        return FieldElement(
            self.field,
            tuple(a * other.den + b * self.den for a, b in zip(self.num, other.num)),
            self.den * other.den,
        )

    __radd__ = __add__

    def __neg__(self):
        return FieldElement(self.field, tuple(-a for a in self.num), self.den)

    def __sub__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return NotImplemented
        return self + (-other)

    def __rsub__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return NotImplemented
        return other + (-self)

    def __mul__(self, other):
        if isinstance(other, int):
            return FieldElement(self.field, tuple(a * other for a in self.num), self.den)
        other = self._coerce(other)
        if other is NotImplemented:
            return NotImplemented
        field = self.field
        n = field.degree
        if n == 1:
            return FieldElement(field, (self.num[0] * other.num[0],), self.den * other.den)
        a, b = self.num, other.num
        prod = [0] * (2 * n - 1)
        for i, x in enumerate(a):
            if x:
                for j, y in enumerate(b):
                    if y:
                        prod[i + j] += x * y
        red_den = field._red_den
        low = [c * red_den for c in prod[:n]] if red_den != 1 else prod[:n]
        for k, c in enumerate(prod[n:]):
            if c:
                row = field._reduction[k]
                for i in range(n):
                    if row[i]:
                        low[i] += c * row[i]
        return FieldElement(field, tuple(low), self.den * other.den * red_den)

    __rmul__ = __mul__

    def inverse(self):
        if not any(self.num):
            raise DivisionByZero("inverse of zero in a number field")
        field = self.field
        if field.degree == 1:
            return FieldElement(field, (self.den,), self.num[0])
        # extended Euclid in Q[t]
        a = [Fraction(c, self.den) for c in self.num]
        m = list(field.modulus)
        r0, r1 = _trim(m), _trim(a)
        s0, s1 = [], [Fraction(1)]
        while len(r1) > 1:
            q, r = _qpoly_divmod(r0, r1)
            r0, r1 = r1, r
            s0, s1 = s1, _qsub(s0, _qpoly_mul(q, s1))
        if not r1:
            raise DivisionByZero("element is a zero divisor; modulus not irreducible")
        inv = [c / r1[0] for c in s1]
        return field.element(inv)

    def __truediv__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return NotImplemented
        return self * other.inverse()

    def __rtruediv__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return NotImplemented
        return other * self.inverse()

    def __pow__(self, k):
        if not isinstance(k, int):
            return NotImplemented
        if k < 0:
            return self.inverse() ** (-k)
        result = self.field.one
        base = self
        while k:
            if k & 1:
                result = result * base
            base = base * base
            k >>= 1
        return result

    # -- comparison --------------------------------------------------------------

    def __eq__(self, other):
        if isinstance(other, (int, Fraction)):
            return self.is_rational() and self.to_fraction() == other
        if not isinstance(other, FieldElement):
            return NotImplemented
        if other.field is not self.field and other.field != self.field:
            return False
        return self.num == other.num and self.den == other.den

    def __hash__(self):
        if self._hash is None:
            if self.is_rational():
                self._hash = hash(self.to_fraction())
            else:
                self._hash = hash((self.num, self.den))
        return self._hash

    def __bool__(self):
        return any(self.num)

    def is_zero(self):
        return not any(self.num)

    def is_one(self):
        return self.den == 1 and self.num[0] == 1 and not any(self.num[1:])

    def is_rational(self):
        return not any(self.num[1:])

    def to_fraction(self):
        if not self.is_rational():
            raise ValueError(f"{self} is not rational")
        return Fraction(self.num[0], self.den)

    @property
    def coords(self):
        return tuple(Fraction(c, self.den) for c in self.num)

    # -- conjugation ----------------------------------------------------------------

    def conjugate(self):
        field = self.field
        if self.is_rational():
            return self
        n = field.degree
        out = [0] * n
        for i, c in enumerate(self.num):
            if c:
                row = field._conj_rows[i]
                for j in range(n):
                    if row[j]:
                        out[j] += c * row[j]
        return FieldElement(field, tuple(out), self.den * field._conj_den)

    def is_fixed(self):
        return self.is_rational() or self.conjugate() == self

    # -- embedding ------------------------------------------------------------------------

    def embed(self, precision=53):
        """Certified ball around the image of self, radius <= 2**(1-precision)*max(1, |self|)."""
        if precision < 16:
            raise ValueError("precision must be at least 16 bits")
        if self.is_rational():
            q = self.to_fraction()
            return ComplexBall(q, Fraction(0), Fraction(0))
        coeffs = [Fraction(c, self.den) for c in self.num]
        derivs = [coeffs]
        while len(derivs[-1]) > 1:
            derivs.append(_derivative(derivs[-1]))
        size = sum(abs(c) for c in coeffs)
        extra = max(0, size.numerator.bit_length() - size.denominator.bit_length()) + self.field.degree + 8
        bits = precision + extra
        for _ in range(MAX_DOUBLINGS):
            root = self.field.root_ball(bits)
            re, im = _gauss_poly_eval(coeffs, root.re, root.im)
            spread = Fraction(0)
            fact = 1
            for k in range(1, len(derivs)):
                fact *= k
                dr, di = _gauss_poly_eval(derivs[k], root.re, root.im)
                spread += (abs(dr) + abs(di)) / fact * root.rad ** k
            re, e1 = _round_to(re, precision + 8)
            im, e2 = _round_to(im, precision + 8)
            ball = ComplexBall(re, im, spread + e1 + e2)
            limit = Fraction(2) ** (1 - precision) * max(Fraction(1), abs(re) + abs(im) - ball.rad)
            if ball.rad <= limit:
                return ball
            bits *= 2
        raise PrecisionExhausted("embedding refinement failed")

    def __complex__(self):
        return complex(self.embed(53))

    def sign(self):
        """Sign (-1, 0, 1) of a sigma-fixed element under the embedding."""
        if self.is_rational():
            q = self.num[0]
            return (q > 0) - (q < 0)
        if not self.is_fixed():
            raise ValueError("sign is only defined for sigma-fixed elements")
        precision = 53
        for _ in range(MAX_DOUBLINGS):
            ball = self.embed(precision)
            lo, hi = ball.real_interval
            if lo > 0:
                return 1
            if hi < 0:
                return -1
            precision *= 2
        raise PrecisionExhausted("could not separate a nonzero element from zero")

    # -- printing ----------------------------------------------------------------------------

    def __str__(self):
        return _format_coords(self.coords, "t")

    def __repr__(self):
        return f"FieldElement({self})"

    def is_monomial(self):
        """True when at most one coordinate is nonzero (prints without parentheses)."""
        return sum(1 for c in self.num if c) <= 1


def _qsub(a, b):
    n = max(len(a), len(b))
    a = list(a) + [Fraction(0)] * (n - len(a))
    b = list(b) + [Fraction(0)] * (n - len(b))
    return _trim(x - y for x, y in zip(a, b))


def _format_rational(q):
    q = Fraction(q)
    return str(q.numerator) if q.denominator == 1 else f"{q.numerator}/{q.denominator}"


def _format_coords(coords, var):
    """Canonical string: descending powers, no spaces, e.g. ``72*t-33``."""
    terms = []
    for power in range(len(coords) - 1, -1, -1):
        c = Fraction(coords[power])
        if c == 0:
            continue
        mag = abs(c)
        if power == 0:
            body = _format_rational(mag)
        else:
            mono = var if power == 1 else f"{var}^{power}"
            body = mono if mag == 1 else f"{_format_rational(mag)}*{mono}"
        terms.append(("-" if c < 0 else "+", body))
    if not terms:
        return "0"
    first_sign, first = terms[0]
    out = ("-" if first_sign == "-" else "") + first
    for sign, body in terms[1:]:
        out += sign + body
    return out


# ---------------------------------------------------------------------------
# built-in fields


def cyclotomic_polynomial(n):
    """Integer coefficients of Phi_n, lowest degree first."""
    poly = [Fraction(-1)] + [Fraction(0)] * (n - 1) + [Fraction(1)]
    for d in range(1, n):
        if n % d == 0:
            poly, rem = _qpoly_divmod(poly, [Fraction(c) for c in cyclotomic_polynomial(d)])
            assert not rem
    return tuple(int(c) for c in poly)


@lru_cache(maxsize=None)
def get_field(name):
    """Named fields: rationals, eisenstein, gaussian, cyclotomic:<n>.

    Embeddings default to the root with the smallest positive argument, e.g.
    omega -> -1/2 + i*sqrt(3)/2; choosing the other root conjugates every output.
    """
    name = name.strip().lower()
    if name in ("rationals", "q"):
        return NumberField([0, 1], [0, 1], 0, name="rationals")
    if name == "eisenstein":
        return NumberField([1, 1, 1], [-1, -1], complex(-0.5, math.sqrt(3) / 2), name="eisenstein")
    if name == "gaussian":
        return NumberField([1, 0, 1], [0, -1], 1j, name="gaussian")
    if name.startswith("cyclotomic:"):
        try:
            n = int(name.split(":", 1)[1])
        except ValueError:
            raise ParseError(f"bad cyclotomic field name {name!r}") from None
        if n < 1:
            raise ParseError("cyclotomic order must be positive")
        if n in (1, 2):
            return NumberField([0, 1], [0, 1], 0, name=name)
        phi = cyclotomic_polynomial(n)
        conj = [0] * (n - 1) + [1]  # t**(n-1) = t**-1
        angle = 2 * math.pi / n
        return NumberField(phi, conj, complex(math.cos(angle), math.sin(angle)), name=name,
                           assume_irreducible=True)
    raise ParseError(f"unknown field {name!r}")


def field_from_spec(spec):
    """Field from a name or a mapping {modulus, conjugation, embedding?}."""
    if isinstance(spec, NumberField):
        return spec
    if isinstance(spec, str):
        return get_field(spec)
    if isinstance(spec, dict):
        if "name" in spec and "modulus" not in spec:
            return get_field(spec["name"])
        modulus = _parse_qpoly(spec["modulus"])
        conjugation = _parse_qpoly(spec.get("conjugation", "t"))
        embedding = spec.get("embedding")
        if isinstance(embedding, (list, tuple)):
            embedding = complex(float(embedding[0]), float(embedding[1]))
        elif isinstance(embedding, str):
            embedding = complex(embedding.replace(" ", "").replace("i", "j"))
        return NumberField(modulus, conjugation, embedding, name=spec.get("name"),
                           assume_irreducible=bool(spec.get("assume_irreducible", False)))
    raise ParseError(f"cannot interpret field spec {spec!r}")


class _QPoly:
    """Scratch rational polynomial used only while parsing moduli."""

    def __init__(self, coeffs):
        self.c = _trim(coeffs)

    def __add__(self, o):
        o = _lift(o)
        n = max(len(self.c), len(o.c))
        return _QPoly([(self.c[i] if i < len(self.c) else 0) + (o.c[i] if i < len(o.c) else 0) for i in range(n)])

    __radd__ = __add__

    def __neg__(self):
        return _QPoly([-x for x in self.c])

    def __sub__(self, o):
        return self + (-_lift(o))

    def __rsub__(self, o):
        return _lift(o) - self

    def __mul__(self, o):
        return _QPoly(_qpoly_mul(self.c, _lift(o).c))

    __rmul__ = __mul__

    def __truediv__(self, o):
        o = _lift(o)
        if len(o.c) != 1:
            raise ParseError("division by a polynomial in t is not allowed here")
        return _QPoly([x / o.c[0] for x in self.c])

    def __pow__(self, k):
        out = _QPoly([Fraction(1)])
        for _ in range(k):
            out = out * self
        return out


def _lift(o):
    return o if isinstance(o, _QPoly) else _QPoly([Fraction(o)])


def _parse_qpoly(text):
    if isinstance(text, (list, tuple)):
        return [Fraction(c) for c in text]
    poly = parse_expression(str(text), {"t": lambda: _QPoly([Fraction(0), Fraction(1)])},
                            lambda q: _QPoly([q]))
    return poly.c


# ---------------------------------------------------------------------------
# functional surface


def nf_arith(op, a, b):
    """Exact field arithmetic: op is one of add, sub, mul, div."""
    if a.field is not b.field and a.field != b.field:
        raise FieldMismatch("operands live in different fields")
    if op == "add":
        return a + b
    if op == "sub":
        return a - b
    if op == "mul":
        return a * b
    if op == "div":
        if b.is_zero():
            raise DivisionByZero("division by zero")
        return a / b
    raise ValueError(f"unknown operation {op!r}")


def nf_conjugate(a):
    return a.conjugate()


def nf_is_fixed(a):
    return a.is_fixed()


def nf_embed(a, precision=53):
    return a.embed(precision)
