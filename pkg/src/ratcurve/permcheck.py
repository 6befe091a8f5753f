"""Brute-force checks on small permutation groups.

For a transitive group G on an odd-size set and an involution sigma that
normalises G and fixes exactly one point w, every subgroup M with
G_w <= M <= G should satisfy M^sigma = M.  This module enumerates such
configurations and checks the statement directly.

Points are 0..n-1 and permutations act on the right: w^(gh) = (w^g)^h.
"""

import random
from dataclasses import dataclass, field as dc_field
from itertools import combinations

from .errors import CapExceeded, DegreeEven, InvalidSigma, NotTransitive

DEFAULT_CAP = 10**5


class Permutation:
    __slots__ = ("images",)

    def __init__(self, images):
        images = tuple(images)
        if sorted(images) != list(range(len(images))):
            raise ValueError("images must be a bijection of 0..n-1")
        self.images = images

    @classmethod
    def identity(cls, n):
        return cls(range(n))

    @classmethod
    def from_cycles(cls, n, cycles):
        img = list(range(n))
        for cyc in cycles:
            for i, a in enumerate(cyc):
                img[a] = cyc[(i + 1) % len(cyc)]
        return cls(img)

    @property
    def degree(self):
        return len(self.images)

    def __call__(self, i):
        return self.images[i]

    def __mul__(self, other):
        """self then other."""
        o = other.images
        return Permutation(o[i] for i in self.images)

    def inverse(self):
        inv = [0] * len(self.images)
        for i, j in enumerate(self.images):
            inv[j] = i
        return Permutation(inv)

    def conjugate(self, s):
        """self^s = s^-1 self s."""
        return s.inverse() * self * s

    def fixed_points(self):
        return [i for i, j in enumerate(self.images) if i == j]

    def is_identity(self):
        return all(i == j for i, j in enumerate(self.images))

    def order(self):
        k, p = 1, self
        while not p.is_identity():
            p, k = p * self, k + 1
        return k

    def cycles(self):
        seen, out = set(), []
        for i in range(len(self.images)):
            if i in seen or self.images[i] == i:
                seen.add(i)
                continue
            cyc, j = [], i
            while j not in seen:
                seen.add(j)
                cyc.append(j)
                j = self.images[j]
            out.append(tuple(cyc))
        return out

    def cycle_string(self):
        cyc = self.cycles()
        return "".join("(" + " ".join(map(str, c)) + ")" for c in cyc) or "()"

    def __eq__(self, other):
        return isinstance(other, Permutation) and self.images == other.images

    def __hash__(self):
        return hash(self.images)

    def __repr__(self):
        return f"Permutation({self.cycle_string()})"


def _compose(a, b):
    return tuple(b[i] for i in a)


def _conj(g, s, s_inv):
    # s^-1 g s as tuples
    return tuple(s[g[s_inv[i]]] for i in range(len(g)))


def _inverse(a):
    inv = [0] * len(a)
    for i, j in enumerate(a):
        inv[j] = i
    return tuple(inv)


class PermGroup:
    """Permutation group with a fully enumerated element set (tuples of images)."""

    def __init__(self, degree, generators, elements=None, name=None):
        self.degree = degree
        self.generators = [g if isinstance(g, Permutation) else Permutation(g) for g in generators]
        self._elements = elements
        self.name = name

    @property
    def elements(self):
        if self._elements is None:
            self._elements = closure(self.generators, degree=self.degree).elements
        return self._elements

    @property
    def order(self):
        return len(self.elements)

    def __len__(self):
        return self.order

    def __contains__(self, g):
        images = g.images if isinstance(g, Permutation) else tuple(g)
        return images in self.elements

    def orbit(self, w):
        seen, todo = {w}, [w]
        while todo:
            a = todo.pop()
            for g in self.generators:
                b = g.images[a]
                if b not in seen:
                    seen.add(b)
                    todo.append(b)
        return seen

    def is_transitive(self):
        return len(self.orbit(0)) == self.degree if self.degree else True

    def describe(self):
        return {
            "name": self.name,
            "degree": self.degree,
            "order": self.order,
            "generators": [g.cycle_string() for g in self.generators],
        }


def closure(gens, cap=DEFAULT_CAP, degree=None):
    """The group generated by ``gens``, fully enumerated; CapExceeded past ``cap`` elements."""
    gens = [g if isinstance(g, Permutation) else Permutation(g) for g in gens]
    if degree is None:
        if not gens:
            raise ValueError("degree needed for an empty generator list")
        degree = gens[0].degree
    if any(g.degree != degree for g in gens):
        raise ValueError("generators of different degrees")
    if cap < 1:
        raise ValueError("cap must be at least 1")
    ident = tuple(range(degree))
    elements = {ident}
    frontier = [ident]
    gi = [g.images for g in gens]
    while frontier:
        nxt = []
        for e in frontier:
            for g in gi:
                h = _compose(e, g)
                if h not in elements:
                    elements.add(h)
                    nxt.append(h)
                    if len(elements) > cap:
                        raise CapExceeded(f"group has more than {cap} elements")
        frontier = nxt
    return PermGroup(degree, gens, frozenset(elements))


def stabilizer(G, w):
    elems = frozenset(e for e in G.elements if e[w] == w)
    orbit = G.orbit(w)
    assert len(G.elements) == len(orbit) * len(elems), "orbit-stabilizer failed"
    return PermGroup(G.degree, [Permutation(e) for e in sorted(elems)][:8], elems)


def _minimal_block(G, points):
    """Smallest block containing ``points`` (union-find merging along generators)."""
    n = G.degree
    parent = list(range(n))

    def find(a):
        while parent[a] != a:
            parent[a] = parent[parent[a]]
            a = parent[a]
        return a

    queue = []
    pts = list(points)
    for a in pts[1:]:
        ra, rb = find(pts[0]), find(a)
        if ra != rb:
            parent[rb] = ra
            queue.append((pts[0], a))
    while queue:
        a, b = queue.pop()
        for g in G.generators:
            x, y = find(g.images[a]), find(g.images[b])
            if x != y:
                parent[y] = x
                queue.append((g.images[a], g.images[b]))
    root = find(pts[0])
    return frozenset(i for i in range(n) if find(i) == root)


def is_block(G, delta):
    for e in G.elements:
        img = frozenset(e[i] for i in delta)
        if img != delta and img & delta:
            return False
    return True


def blocks_through(G, w):
    if not G.is_transitive():
        raise NotTransitive("group is not transitive")
    found = {frozenset([w])}
    for a in range(G.degree):
        if a != w:
            found.add(_minimal_block(G, [w, a]))
    grew = True
    while grew:
        grew = False
        for b1, b2 in combinations(list(found), 2):
            j = _minimal_block(G, sorted(b1 | b2))
            if j not in found:
                found.add(j)
                grew = True
    for delta in found:
        assert is_block(G, delta), "minimal block failed the block test"
        assert G.degree % len(delta) == 0
    return sorted(found, key=lambda d: (len(d), sorted(d)))


def intermediate_subgroups(G, w, blocks=None):
    """All M with G_w <= M <= G, one per block through w (M = setwise stabiliser)."""
    blocks = blocks if blocks is not None else blocks_through(G, w)
    stab = frozenset(e for e in G.elements if e[w] == w)
    out = []
    for delta in blocks:
        elems = frozenset(e for e in G.elements if e[w] in delta)
        # closed under composition (setwise stabiliser of a block)
        assert all(frozenset(e[i] for i in delta) == delta for e in elems)
        assert stab <= elems
        assert frozenset(e[w] for e in elems) == delta
        M = PermGroup(G.degree, [Permutation(e) for e in sorted(elems)][:8], elems)
        M.block = delta
        out.append(M)
    assert len({m.elements for m in out}) == len(out), "block correspondence is not injective"
    return out


def _involutions_one_fixed(n):
    """All involutions of {0..n-1} with exactly one fixed point (n odd)."""

    def matchings(pts):
        if not pts:
            yield []
            return
        a = pts[0]
        for i in range(1, len(pts)):
            rest = pts[1:i] + pts[i + 1:]
            for m in matchings(rest):
                yield [(a, pts[i])] + m

    for fixed in range(n):
        others = [i for i in range(n) if i != fixed]
        for m in matchings(others):
            img = list(range(n))
            for a, b in m:
                img[a], img[b] = b, a
            yield Permutation(img)


def normalizes(G, s):
    s_inv = _inverse(s.images)
    return all(_conj(g.images, s.images, s_inv) in G.elements for g in G.generators)


def is_admissible(G, s):
    return (s * s).is_identity() and len(s.fixed_points()) == 1 and normalizes(G, s)


def admissible_involutions(G, candidates=None):
    n = G.degree
    if n % 2 == 0:
        raise DegreeEven("the degree must be odd")
    if n == 1:
        return []
    if candidates is None:
        if n > 9:
            return []
        candidates = _involutions_one_fixed(n)
    return [s for s in candidates if is_admissible(G, s)]


@dataclass
class PropositionReport:
    ok: bool
    omega: int
    intermediate: int
    violations: list = dc_field(default_factory=list)

    def to_dict(self):
        return {"ok": self.ok, "omega": self.omega, "intermediate": self.intermediate,
                "violations": [sorted(v) for v in self.violations]}


def verify_proposition(G, s, subgroups=None):
    if not is_admissible(G, s):
        raise InvalidSigma("sigma is not an admissible involution for G")
    if not G.is_transitive():
        raise NotTransitive("group is not transitive")
    w = s.fixed_points()[0]
    if subgroups is None:
        subgroups = intermediate_subgroups(G, w)
    s_img = s.images
    s_inv = s_img  # an involution
    stab = frozenset(e for e in G.elements if e[w] == w)
    assert frozenset(_conj(e, s_img, s_inv) for e in stab) == stab
    violations = []
    for M in subgroups:
        image = frozenset(_conj(e, s_img, s_inv) for e in M.elements)
        if image != M.elements:
            violations.append(M.block)
        else:
            # a sigma-stable block has a sigma-fixed point inside it
            assert s_img[w] == w and w in M.block
    return PropositionReport(not violations, w, len(subgroups), violations)


# ---------------------------------------------------------------------------
# catalog


def _affine_group(p, mults):
    gens = [Permutation((x + 1) % p for x in range(p))]
    gens += [Permutation((a * x) % p for x in range(p)) for a in mults]
    return gens


def _unit_of_order(p, k):
    """A generator of the order-k subgroup of (Z/p)^*."""
    for a in range(2, p):
        order = next(d for d in range(1, p) if pow(a, d, p) == 1)
        if order == p - 1:
            return pow(a, (p - 1) // k, p)
    return 1


def _elem_abelian(p, d):
    n = p**d

    def idx(v):
        return sum(c * p**i for i, c in enumerate(v))

    def vec(i):
        return [(i // p**k) % p for k in range(d)]

    gens = []
    for k in range(d):
        gens.append(Permutation(idx([(c + (1 if j == k else 0)) % p for j, c in enumerate(vec(i))]) for i in range(n)))
    return gens


def _agl2(p):
    n = p * p
    idx = lambda v: v[0] + p * v[1]
    vec = lambda i: (i % p, i // p)
    gens = _elem_abelian(p, 2)
    for m in (((1, 1), (0, 1)), ((0, 1), (p - 1, 0)), ((2 % p, 0), (0, 1))):
        img = []
        for i in range(n):
            x, y = vec(i)
            img.append(idx(((m[0][0] * x + m[0][1] * y) % p, (m[1][0] * x + m[1][1] * y) % p)))
        if len(set(img)) == n:
            gens.append(Permutation(img))
    return gens


def _wreath(base_gens, k, top_n):
    """Imprimitive group: ``top_n`` blocks of size k, base acting in block 0, cyclic top."""
    n = k * top_n
    gens = []
    for g in base_gens:
        gens.append(Permutation([g.images[i] if i < k else i for i in range(n)]))
    gens.append(Permutation((i + k) % n for i in range(n)))
    return gens


def catalog_group(name):
    """Named groups: cyclic:n, dihedral:n, frobenius:N:p, affine:p, elem-abelian:p^d,
    agl2:p, sym:n, alt:n, wreath:k:m (C_k wr C_m), wreath-sym:k:m (S_k wr C_m)."""
    parts = name.split(":")
    kind = parts[0]
    nums = [int(x) for x in parts[1:]]
    if kind == "cyclic":
        n = nums[0]
        gens = [Permutation((i + 1) % n for i in range(n))]
    elif kind == "dihedral":
        n = nums[0]
        gens = [Permutation((i + 1) % n for i in range(n)), Permutation((-i) % n for i in range(n))]
    elif kind == "frobenius":
        order, p = nums
        k = order // p
        gens = _affine_group(p, [_unit_of_order(p, k)])
    elif kind == "affine":
        p = nums[0]
        gens = _affine_group(p, [_unit_of_order(p, p - 1)])
    elif kind == "elem-abelian":
        n = nums[0]
        p = next(q for q in range(2, n + 1) if n % q == 0)
        d = 0
        while p**d < n:
            d += 1
        gens = _elem_abelian(p, d)
    elif kind == "agl2":
        gens = _agl2(nums[0])
    elif kind == "sym":
        n = nums[0]
        gens = [Permutation((i + 1) % n for i in range(n)), Permutation.from_cycles(n, [(0, 1)])]
    elif kind == "alt":
        n = nums[0]
        gens = [Permutation.from_cycles(n, [(0, 1, i)]) for i in range(2, n)]
    elif kind == "wreath":
        k, m = nums
        gens = _wreath([Permutation((i + 1) % k for i in range(k))], k, m)
    elif kind == "wreath-sym":
        k, m = nums
        gens = _wreath([Permutation((i + 1) % k for i in range(k)), Permutation.from_cycles(k, [(0, 1)])], k, m)
    else:
        raise KeyError(f"unknown catalog group {name!r}")
    G = closure(gens)
    G.name = name
    return G


def catalog_names(degree):
    n = degree
    names = [f"cyclic:{n}", f"dihedral:{n}"]
    if all(n % q for q in range(2, n)):  # prime
        names.append(f"affine:{n}")
        for k in range(2, n - 1):
            if (n - 1) % k == 0:
                names.append(f"frobenius:{n * k}:{n}")
        if n <= 7:
            names += [f"sym:{n}", f"alt:{n}"]
    if n == 9:
        names += ["elem-abelian:9", "agl2:3", "wreath:3:3", "wreath-sym:3:3"]
    return names


# ---------------------------------------------------------------------------
# search


def _random_group(rng, n, order_cap, involutions, seeds):
    """A random transitive group normalised by some one-fixed-point involution.

    Either <x, x^s> for random x and s, or <y, y^s> relabelled, with y taken
    from a catalog group H and s admissible for H.  None if nothing fits the cap.
    """
    for _ in range(40):
        if seeds and rng.random() < 0.5:
            H, sig = rng.choice(seeds)
            if not sig:
                continue
            y = Permutation(rng.choice(H.sorted_elements))
            s = rng.choice(sig)
            pi = list(range(n))
            rng.shuffle(pi)
            pi = Permutation(pi)
            gens = [y.conjugate(pi), y.conjugate(s).conjugate(pi)]
        else:
            s = rng.choice(involutions)
            perm = list(range(n))
            rng.shuffle(perm)
            x = Permutation(perm)
            gens = [x, x.conjugate(s)]
        try:
            G = closure(gens, cap=order_cap)
        except CapExceeded:
            continue
        if G.is_transitive():
            return G
    return None


def search(max_degree=9, group_budget=50, order_cap=20000, seed=0, catalog=True):
    """Sweep odd degrees 3..max_degree over the catalog and seeded random groups."""
    if max_degree % 2 == 0 or max_degree < 3:
        raise DegreeEven("max_degree must be odd and at least 3")
    rng = random.Random(seed)
    entries = []
    totals = {"groups": 0, "pairs": 0, "triples": 0, "violations": 0, "skipped": 0}
    by_degree = {}
    for n in range(3, max_degree + 1, 2):
        groups = []
        if catalog:
            for name in catalog_names(n):
                try:
                    G = catalog_group(name)
                except CapExceeded:
                    totals["skipped"] += 1
                    continue
                if G.order > order_cap:
                    totals["skipped"] += 1
                    continue
                groups.append((name, G))
        seeds = []
        for _, H in groups:
            H.sorted_elements = sorted(H.elements)
            seeds.append((H, admissible_involutions(H)))
        pool = list(_involutions_one_fixed(n))
        for i in range(group_budget):
            G = _random_group(rng, n, order_cap, pool, seeds)
            if G is None:
                totals["skipped"] += 1
                continue
            groups.append((f"random:{n}:{i}", G))
        n_random = sum(1 for name, _ in groups if name.startswith("random:"))
        by_degree[n] = {"catalog": len(groups) - n_random, "random": n_random}
        for name, G in groups:
            totals["groups"] += 1
            sigmas = admissible_involutions(G)
            cache = {}
            for s in sigmas:
                w = s.fixed_points()[0]
                if w not in cache:
                    cache[w] = intermediate_subgroups(G, w)
                rep = verify_proposition(G, s, cache[w])
                totals["pairs"] += 1
                totals["triples"] += rep.intermediate
                totals["violations"] += len(rep.violations)
                entries.append({
                    "name": name,
                    "degree": n,
                    "order": G.order,
                    "generators": [g.cycle_string() for g in G.generators],
                    "sigma": s.cycle_string(),
                    "intermediate": rep.intermediate,
                    "ok": rep.ok,
                })
    return {"seed": seed, "max_degree": max_degree, "totals": totals, "by_degree": by_degree, "entries": entries}
