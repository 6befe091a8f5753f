"""Explicit example families of real h = f o g with a non-real inner g.

* Chebyshev-type T_n with T_n(z + 1/z) = z^n + 1/z^n, and the pair
  (T_n, zeta z + 1/(zeta z)).
* The pair rho*F, G o mu with F = z^k (1-z)^(n-k), G = (1 - zeta z^k)/(1 - zeta z^n),
  mu = (z+i)/(z-i).
* The polynomial-inner case: an explicit linear lambda with lambda o g real.
"""

from dataclasses import dataclass, field as dc_field
from math import gcd

from .certificates import circle_test, sample_curve
from .errors import BadRho, HypothesisViolated, MissingI, NotRootOfUnity
from .geometry import count_self_intersections
from .numfield import get_field
from .poly import Poly
from .ratfunc import MoebiusTransform, RationalFunction, rf_compose, rf_is_real, rf_reduce


def _lcm(a, b):
    return a * b // gcd(a, b)


def cyclotomic_order(field):
    """N such that the field generator is a primitive N-th root of unity, else None."""
    name = (field.name or "").lower()
    if name == "gaussian":
        return 4
    if name == "eisenstein":
        return 3
    if name.startswith("cyclotomic:"):
        return int(name.split(":", 1)[1])
    return None


def unity_field(order):
    """Smallest built-in field holding i, a primitive root of unity of this order, and its square roots."""
    return get_field(f"cyclotomic:{_lcm(4, 2 * order)}")


def root_of_unity(field, order, power=1):
    """zeta_order ** power, with zeta_order = t^(N/order) in a cyclotomic field of order N."""
    if order == 1:
        return field.one
    if order == 2:
        return field(-1) if power % 2 else field.one
    N = cyclotomic_order(field)
    if N is None or N % order:
        raise NotRootOfUnity(f"field {field.name!r} has no primitive root of unity of order {order}")
    return field.gen ** ((N // order * power) % N)


def imaginary_unit(field):
    """An element i with i^2 = -1 and positive imaginary part under the embedding, if present."""
    N = cyclotomic_order(field)
    if N and N % 4 == 0:
        i = field.gen ** (N // 4)
    else:
        raise MissingI(f"field {field.name!r} does not contain i")
    if complex(i).imag < 0:
        i = -i
    return i


def element_order(z, bound=240):
    one = z.field.one
    p = z
    for k in range(1, bound + 1):
        if p == one:
            return k
        p = p * z
    return None


@dataclass
class FamilyInstance:
    name: str
    parameters: dict
    f: RationalFunction
    g: RationalFunction
    field: object
    checks: dict = dc_field(default_factory=dict)

    def describe(self):
        return {
            "name": self.name,
            "parameters": {k: str(v) for k, v in self.parameters.items()},
            "field": self.field.name,
            "f": str(self.f),
            "g": str(self.g),
            "checks": {k: (v.to_dict() if hasattr(v, "to_dict") else v) for k, v in self.checks.items()},
        }


# ---------------------------------------------------------------------------
# Chebyshev-type polynomials


def chebyshev(n, field=None):
    """Monic T_n with T_n(z + 1/z) = z^n + 1/z^n (checked exactly before returning)."""
    if n < 1:
        raise ValueError("n must be positive")
    K = field or get_field("rationals")
    z = Poly([K.zero, K.one], K.zero)
    prev, cur = Poly([K(2)], K.zero), z
    for _ in range(n - 1):
        prev, cur = cur, z * cur - prev
    T = RationalFunction.from_poly(cur)
    if not chebyshev_identity(T, n):
        raise AssertionError(f"defining identity fails for n = {n}")
    return T


def chebyshev_identity(T, n):
    K = T.field
    z = RationalFunction.identity(K)
    lhs = rf_compose(T, z + z ** -1)
    return lhs == z ** n + z ** -n


def pakovich_pair(n, zeta, circle=True):
    K = zeta.field
    if not (zeta ** n).is_one():
        raise NotRootOfUnity(f"zeta^{n} != 1")
    f = chebyshev(n, K)
    z = RationalFunction.identity(K)
    g = z * zeta + (z * zeta) ** -1
    checks = {
        "identity": rf_compose(f, g) == z ** n + z ** -n,
        "real": rf_is_real(rf_compose(f, g)),
        "zeta4_is_one": (zeta ** 4).is_one(),
    }
    if circle:
        checks["circle"] = circle_test(g)
    return FamilyInstance("pakovich", {"n": n, "zeta": zeta}, f, g, K, checks)


# ---------------------------------------------------------------------------
# the F, G, mu family


def fg_pair(n, k, zeta):
    """F = z^k (1-z)^(n-k) and G = (1 - zeta z^k)/(1 - zeta z^n)."""
    K = zeta.field
    z = Poly([K.zero, K.one], K.zero)
    one = Poly([K.one], K.zero)
    F = RationalFunction.from_poly(z ** k * (one - z) ** (n - k))
    G = rf_reduce(one - (z ** k).scale(zeta), one - (z ** n).scale(zeta))
    return F, G


def fg_identity(n, k, zeta):
    """F(conj(G)(1/z)) == zeta^(k-n) F(G(z)), exactly."""
    F, G = fg_pair(n, k, zeta)
    K = zeta.field
    z = RationalFunction.identity(K)
    lhs = rf_compose(F, rf_compose(G.conjugate(), z ** -1))
    rhs = rf_compose(F, G) * (zeta ** (k - n))
    return lhs == rhs


def avanzi_zannier_pair(n, k, zeta, rho, circle=True, samples=0):
    if not 1 <= k < n:
        raise ValueError("need 1 <= k < n")
    K = zeta.field
    if rho.field != K:
        raise BadRho("rho must lie in the field of zeta")
    if rho * rho != zeta ** (k - n):
        raise BadRho("rho^2 != zeta^(k-n)")
    i = imaginary_unit(K)
    mu = MoebiusTransform(K.one, i, K.one, -i, K)
    F, G = fg_pair(n, k, zeta)
    f = F * RationalFunction.constant(K, rho)
    g = rf_compose(G, mu.to_rf())
    h = rf_compose(f, g)
    checks = {
        "identity": fg_identity(n, k, zeta),
        "real": rf_is_real(h),
        "degree": h.degree == f.degree * g.degree,
    }
    if circle:
        checks["circle"] = circle_test(g)
    if samples:
        pts = [s.point() for s in sample_curve(g, post=_bounded_chart(K), n=samples, precision=64)]
        checks["self_intersections_lower_bound"] = count_self_intersections(pts)
    return FamilyInstance("avanzi-zannier", {"n": n, "k": k, "zeta": zeta, "rho": rho}, f, g, K, checks)


def _bounded_chart(K):
    """A Moebius chart sending infinity to a finite point, used before sampling."""
    return MoebiusTransform(K.one, K.zero, K.one, K(3), K).to_rf()


def avanzi_zannier_default(n, k, zeta_order):
    """Instance in cyclotomic:lcm(4, 2*order) with zeta = zeta_order and rho = zeta_(2*order)^(k-n)."""
    K = unity_field(zeta_order)
    zeta = root_of_unity(K, zeta_order)
    rho = root_of_unity(K, 2 * zeta_order, k - n)
    return avanzi_zannier_pair(n, k, zeta, rho)


# ---------------------------------------------------------------------------
# polynomial inner functions


def realize_polynomial_inner(f, g):
    """Linear lambda = alpha z + beta with lambda o g real, given f o g real and g a polynomial."""
    if not g.is_polynomial() or g.is_constant():
        raise HypothesisViolated("g must be a nonconstant polynomial")
    K = g.field
    if not rf_is_real(rf_compose(f, g)):
        raise HypothesisViolated("f o g is not real")
    alpha = g.num.lc.inverse() * g.den.lc
    g1 = g * RationalFunction.constant(K, alpha)
    diff = g1.conjugate() - g1
    if not diff.is_constant():
        raise HypothesisViolated("conj(g) - g is not constant after scaling to monic")
    b = diff.num.coeff(0) / diff.den.coeff(0) if not diff.num.is_zero() else K.zero
    beta = b / 2
    lam = MoebiusTransform(alpha, beta, K.zero, K.one, K)
    if not rf_is_real(rf_compose(lam.to_rf(), g)):
        raise HypothesisViolated("constructed lambda does not make g real")
    return lam


def parse_family_spec(text):
    """'pakovich:n=5,zeta_order=5' -> ('pakovich', {'n': 5, 'zeta_order': 5})."""
    kind, _, rest = text.partition(":")
    params = {}
    for part in filter(None, rest.split(",")):
        key, _, val = part.partition("=")
        params[key.strip()] = int(val)
    return kind.strip().lower(), params


def family_instance(text, samples=0):
    kind, p = parse_family_spec(text)
    order = p.get("zeta_order", 1)
    if kind == "pakovich":
        n = p["n"]
        if n % order:
            raise NotRootOfUnity("zeta_order must divide n")
        K = unity_field(order)
        return pakovich_pair(n, root_of_unity(K, order))
    if kind in ("avanzi-zannier", "avanzi_zannier", "az"):
        n, k = p["n"], p["k"]
        K = unity_field(order)
        zeta = root_of_unity(K, order)
        rho = root_of_unity(K, 2 * order, k - n)
        return avanzi_zannier_pair(n, k, zeta, rho, samples=samples)
    raise ValueError(f"unknown family {kind!r}")
