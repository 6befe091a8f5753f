"""Certificates about g on the real projective line: circle test, injectivity,
weak injectivity, and interval sampling of curves g(R-hat)."""

from dataclasses import dataclass, field as dc_field
from fractions import Fraction
import math

from .errors import DegenerateTriple, RatcurveError, TooFewSamples
from .poly import Poly, poly_gcd, resultant
from .ratfunc import INF, MoebiusTransform, RationalFunction, moebius_from_triples, rf_compose, rf_is_real
from .realroots import (
    IntervalPoly2,
    Interval,
    RealRoot,
    count_roots_q,
    isolate_real_roots,
    krawczyk_2d,
    norm_to_q,
    real_root_count,
    split_real_imag,
    to_qpoly,
    is_rational_poly,
)


@dataclass
class Verdict:
    """Outcome of a certificate; ``kind`` is one of the verdict names below."""

    kind: str
    data: dict = dc_field(default_factory=dict)

    def __bool__(self):
        return self.kind in ("Circle", "Injective", "WeaklyInjective")

    def __eq__(self, other):
        if isinstance(other, str):
            return self.kind == other
        return isinstance(other, Verdict) and self.kind == other.kind and self.data == other.data

    def to_dict(self):
        return {"verdict": self.kind, **{k: _plain(v) for k, v in self.data.items()}}


def _plain(v):
    if v is INF:
        return "oo"
    if isinstance(v, Fraction):
        return str(v)
    if isinstance(v, (list, tuple)):
        return [_plain(x) for x in v]
    if isinstance(v, dict):
        return {k: _plain(x) for k, x in v.items()}
    if isinstance(v, (int, float, str, bool)) or v is None:
        return v
    return str(v)


def small_rationals(height):
    """0, 1, -1, 2, -2, 1/2, -1/2, 3, -3, 1/3, -1/3, 3/2, ... up to the given height."""
    yield Fraction(0)
    for h in range(1, height + 1):
        batch = [Fraction(p, q) for p in range(1, h + 1) for q in range(1, h + 1)
                 if max(p, q) == h and math.gcd(p, q) == 1]
        batch.sort(key=lambda x: (x.denominator != 1, x.numerator != 1, -x))
        for x in batch:
            yield x
            yield -x


# ---------------------------------------------------------------------------
# circle test


def circle_test(g, height=6):
    """Circle{mu} with mu o g real when g(R-hat) is a circle, else NotCircle.

    mu sends g(r1), g(r2), g(r3) to INF, 0, 1 for the first rationals with
    distinct images; the answer is exact and deterministic.
    """
    K = g.field
    if g.is_constant():
        raise DegenerateTriple("constant map has no circle image")
    pts, vals = [], []
    for r in small_rationals(height):
        v = g(K(r))
        if any((v is INF and u is INF) or (v is not INF and u is not INF and v == u) for u in vals):
            continue
        pts.append(r)
        vals.append(v)
        if len(vals) == 3:
            break
    if len(vals) < 3:
        raise DegenerateTriple("no three rationals with distinct images found")
    mu = moebius_from_triples(vals, [INF, K.zero, K.one], field=K)
    composed = rf_compose(mu.to_rf(), g)
    if rf_is_real(composed):
        return Verdict("Circle", {"mu": str(mu), "points": pts, "moebius": mu})
    # consistency: conj(g) = rho o g must then fail as well
    gbar = g.conjugate()
    rho = moebius_from_triples(vals, [gbar(K(r)) for r in pts], field=K)
    if rf_compose(rho.to_rf(), g) == gbar:
        raise RatcurveError("circle test inconsistent: conj(g) = rho o g but mu o g is not real")
    return Verdict("NotCircle", {"points": pts, "reason": "mu o g is not fixed by the conjugation"})


# ---------------------------------------------------------------------------
# helpers over nested polynomials


def _bivariate_difference_quotient(p, q):
    """H(x, y) = (p(x) q(y) - p(y) q(x)) / (x - y) as a nested Poly (outer y, inner x)."""
    K = p.zero.field
    zero = Poly([], K.zero)
    n = max(p.degree, q.degree)
    rows = []
    for j in range(n + 1):
        rows.append(p.scale(q.coeff(j)) - q.scale(p.coeff(j)))
    H0 = Poly(rows, zero)
    # divide by (x - y) = -(y - x)
    lin = Poly([Poly([K.zero, K.one], K.zero), Poly([-K.one], K.zero)], zero)
    return H0.exact_div(lin)


def _univariate_split(P):
    """A, B for a univariate polynomial, and the gcd carrying the common real roots."""
    A, B = split_real_imag(P)
    if B.is_zero():
        return A
    if A.is_zero():
        return B
    return poly_gcd(A, B)


def _strip_linear(P, x0):
    """Remove every factor (y - x0) from P."""
    K = P.zero.field
    lin = Poly([-K(x0), K.one], K.zero)
    while P.degree > 0:
        q, r = P.divmod(lin)
        if not r.is_zero():
            break
        P = q
    return P


def _qroots(P):
    """Real roots of a sigma-fixed polynomial, as RealRoot objects of a rational multiple."""
    if P.degree <= 0:
        return []
    if is_rational_poly(P):
        qp = to_qpoly(P)
    else:
        qp = norm_to_q(P)
    return isolate_real_roots(qp)


def _exact_roots_in(P, roots):
    """Subset of isolated roots that are genuine roots of P (exact for rational ones, Sturm otherwise)."""
    out = []
    for r in roots:
        if r.exact:
            if P(P.zero.field.rational(r.lo)).is_zero():
                out.append(r)
            continue
        from .realroots import sturm_count

        if sturm_count(P, (r.lo, r.hi)) > 0:
            out.append(r)
    return out


# ---------------------------------------------------------------------------
# injectivity


def _real_injectivity(g):
    """Classical decision for real g: locally monotone everywhere and of topological degree one."""
    K = g.field
    p, q = g.num, g.den
    wr = p.derivative() * q - p * q.derivative()
    # odd-multiplicity real zeros of the Wronskian are folds
    fold = None
    if wr.degree > 0:
        qp = to_qpoly(wr) if is_rational_poly(wr) else norm_to_q(wr)
        for r in isolate_real_roots(qp):
            r = r.refine(r.width() / 4)
            if r.exact:
                x0 = K.rational(r.lo)
                m, P = 0, wr
                lin = Poly([-x0, K.one], K.zero)
                while True:
                    qq, rr = P.divmod(lin)
                    if not rr.is_zero():
                        break
                    P, m = qq, m + 1
                if m % 2:
                    fold = (r.lo, r.lo)
                    break
                continue
            # odd multiplicity iff the sign changes across the interval
            rr = r
            lo_s = wr(K.rational(rr.lo)).sign()
            hi_s = wr(K.rational(rr.hi)).sign()
            if lo_s and hi_s and lo_s != hi_s:
                fold = (rr.lo, rr.hi)
                break
    if fold is not None:
        wit = _grid_witness(g, 8)
        data = {"reason": "real critical point where g changes direction", "critical_interval": fold}
        if wit is not None:
            data["witness"] = wit
        return Verdict("NotInjective", data)
    # covering degree: preimages of a generic real value (INF counted if g(INF) matches)
    for v in (Fraction(1, 3), Fraction(2, 7), Fraction(-5, 3), Fraction(7, 2)):
        P = p - q.scale(K.rational(v))
        if P.degree <= 0:
            continue
        n = count_roots_q(to_qpoly(P)) if is_rational_poly(P) else real_root_count(P)
        ginf = g.at_infinity()
        if ginf is not INF and ginf == K.rational(v):
            n += 1
        if n == 1:
            return Verdict("Injective", {"method": "monotone real map of covering degree one", "value": v})
        wit = _grid_witness(g, 8)
        data = {"reason": f"real value {v} has {n} real preimages"}
        if wit is not None:
            data["witness"] = wit
        return Verdict("NotInjective", data)
    return Verdict("Undecided", {"reason": "no usable sample value"})


def _grid_witness(g, height):
    """Search x0 in small rationals for a real y0 != x0 with g(y0) = g(x0)."""
    K = g.field
    p, q = g.num, g.den
    ginf = g.at_infinity()
    for x0 in small_rationals(height):
        v = g(K(x0))
        if v is INF:
            P = q
        else:
            P = p - q.scale(v)
        if v == ginf or (v is INF and ginf is INF):
            return (x0, INF)
        P = _strip_linear(P, x0)
        if P.degree <= 0:
            continue
        G = _univariate_split(P)
        if G.degree <= 0:
            continue
        roots = _exact_roots_in(G, _qroots(G))
        for r in roots:
            if r.exact:
                return (x0, r.lo)
        for r in roots:
            r = r.refine(Fraction(1, 1 << 32))
            return (x0, r.lo) if r.exact else (x0, (r.lo, r.hi))
    return None


def certify_injective(g, precision=128, max_rounds=64):
    """Injective, NotInjective{witness}, or Undecided for g restricted to R-hat.

    Works when the conjugation-fixed subfield is Q or a real subfield handled
    by certified embeddings.
    """
    K = g.field
    if g.is_constant():
        raise RatcurveError("constant map")
    if g.degree == 1:
        return Verdict("Injective", {"method": "Moebius transformation"})
    if rf_is_real(g):
        return _real_injectivity(g)
    p, q = g.num, g.den
    details = {}
    # the point at infinity against the affine line
    ginf = g.at_infinity()
    Pinf = q if ginf is INF else p - q.scale(ginf)
    if Pinf.degree > 0:
        Ginf = _univariate_split(Pinf)
        if Ginf.degree > 0 and real_root_count(Ginf) > 0:
            roots = _exact_roots_in(Ginf, _qroots(Ginf))
            r = roots[0]
            return Verdict("NotInjective", {"witness": (r.lo if r.exact else (r.lo, r.hi), INF)})
    details["infinity_partner"] = "no real partner of infinity"
    H = _bivariate_difference_quotient(p, q)
    A, B = split_real_imag(H)
    R = resultant(A, B)
    if R.is_zero():
        wit = _grid_witness(g, 8)
        if wit is not None:
            return Verdict("NotInjective", {"witness": wit, "method": "grid on common component"})
        return Verdict("Undecided", {"reason": "A and B share a component and no real witness was found"})
    qR = to_qpoly(R) if is_rational_poly(R) else norm_to_q(R)
    roots = isolate_real_roots(qR)
    details["resultant_degree"] = R.degree
    details["candidate_roots"] = len(roots)
    pending = [(i, j) for i in range(len(roots)) for j in range(i + 1, len(roots))]
    bits = precision
    width = Fraction(1, 1 << 16)
    rounds = 0
    while pending and rounds < max_rounds:
        roots = [r.refine(width * max(1, abs(r.lo))) for r in roots]
        FA, FB = IntervalPoly2(A, bits), IntervalPoly2(B, bits)
        survivors = []
        for i, j in pending:
            ri, rj = roots[i], roots[j]
            if ri.exact and rj.exact:
                x0, y0 = K.rational(ri.lo), K.rational(rj.lo)
                a = _eval2(A, x0, y0)
                b = _eval2(B, x0, y0)
                if a.is_zero() and b.is_zero():
                    return Verdict("NotInjective", {"witness": (ri.lo, rj.lo)})
                continue
            X = Interval(ri.lo, ri.hi, bits)
            Y = Interval(rj.lo, rj.hi, bits)
            if FA(X, Y).excludes_zero() or FB(X, Y).excludes_zero():
                continue
            survivors.append((i, j))
        pending = survivors
        if not pending:
            break
        # a tight box that still cannot be excluded may hold a genuine collision
        for i, j in pending:
            ri, rj = roots[i], roots[j]
            if ri.width() < Fraction(1, 1 << 40) and rj.width() < Fraction(1, 1 << 40):
                box = ((ri.lo - ri.width(), ri.hi + ri.width()), (rj.lo - rj.width(), rj.hi + rj.width()))
                if krawczyk_2d(A, B, box, bits):
                    return Verdict("NotInjective", {"witness": ((ri.lo, ri.hi), (rj.lo, rj.hi)), "method": "Krawczyk"})
        width = width / (1 << 8)
        bits += 32
        rounds += 1
    if pending:
        return Verdict("Undecided", {"reason": f"{len(pending)} candidate pairs survive refinement", **details})
    details["pairs_excluded"] = len(roots) * (len(roots) - 1) // 2
    return Verdict("Injective", details)


def _eval2(P, x0, y0):
    acc = None
    for row in reversed(P.coeffs):
        v = row(x0) if not row.is_zero() else x0.field.zero
        acc = v if acc is None else acc * y0 + v
    return acc if acc is not None else x0.field.zero


# ---------------------------------------------------------------------------
# weak injectivity


def certify_weakly_injective(g, candidates=None, height=5):
    """First rational z0 that is non-critical and whose value is attained nowhere else on R-hat."""
    K = g.field
    if g.is_constant():
        raise RatcurveError("constant map")
    if candidates is None:
        candidates = list(small_rationals(height))
    p, q = g.num, g.den
    dnum = p.derivative() * q - p * q.derivative()
    ginf = g.at_infinity()
    for z0 in candidates:
        x0 = K(z0)
        if dnum(x0).is_zero():
            continue
        v = g(x0)
        if v is INF:
            if ginf is INF:
                continue
            P = q
        else:
            if ginf is not INF and ginf == v:
                continue
            P = p - q.scale(v)
        P = _strip_linear(P, z0)
        if P.degree > 0:
            G = _univariate_split(P)
            if G.degree > 0 and real_root_count(G) > 0:
                continue
        return Verdict("WeaklyInjective", {"z0": z0, "value": str(v), "certificate": "g'(z0) != 0, no other real preimage, g(oo) != g(z0)"})
    return Verdict("NoWitnessFound", {"candidates": len(candidates), "search": f"small rationals up to height {height}" if height else "custom"})


# ---------------------------------------------------------------------------
# sampling


@dataclass
class CurveSample:
    param: object  # Fraction or INF
    image: object  # ComplexBall or None when skipped
    skipped: bool = False
    reason: str = ""

    def point(self):
        if self.skipped:
            return None
        z = complex(self.image)
        return z.real, z.imag


def sweep_parameters(n):
    """n points of R-hat in cyclic order, starting at INF, via u = tan(theta/2)."""
    if n < 2:
        raise TooFewSamples("need at least two samples")
    out = [INF]
    for k in range(1, n):
        theta = -math.pi + 2 * math.pi * k / n
        u = math.tan(theta / 2)
        out.append(Fraction(u).limit_denominator(10**9))
    return out


def sample_curve(g, post=None, n=2000, precision=128):
    """Evaluate post o g along R-hat; exact in K, then embedded as certified complex balls."""
    K = g.field
    f = g if post is None else rf_compose(post.change_field(K) if post.field != K else post, g)
    out = []
    for u in sweep_parameters(n):
        v = f(u if u is INF else K.rational(u))
        if v is INF:
            out.append(CurveSample(u, None, True, "PoleAtSample"))
            continue
        out.append(CurveSample(u, v.embed(precision)))
    return out
