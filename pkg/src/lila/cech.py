"""Finite crossed modules of groups, decorated oriented triangles with their 3-ary
product, and non-Abelian 1-cocycles on a finite cover nerve."""

import itertools
from dataclasses import dataclass, field


class GroupError(ValueError):
    pass


class FacesIncompatible(ValueError):
    pass


class MissingCell(KeyError):
    pass


class BoundExceeded(ValueError):
    pass


class FiniteGroup:
    """Group given by a Cayley table on 0..order-1."""

    def __init__(self, table, name=""):
        self.table = [list(map(int, row)) for row in table]
        self.order = len(self.table)
        self.name = name
        n = self.order
        if n == 0 or any(len(r) != n for r in self.table):
            raise GroupError("Cayley table must be square and non-empty")
        if any(not 0 <= x < n for r in self.table for x in r):
            raise GroupError("table entries out of range")
        ids = [e for e in range(n) if all(self.table[e][x] == x == self.table[x][e] for x in range(n))]
        if not ids:
            raise GroupError("no identity element")
        self.identity = ids[0]
        self.inverse = []
        for x in range(n):
            inv = [y for y in range(n) if self.table[x][y] == self.identity]
            if not inv or self.table[inv[0]][x] != self.identity:
                raise GroupError("element %d has no inverse" % x)
            self.inverse.append(inv[0])
        for a, b, c in itertools.product(range(n), repeat=3):
            if self.table[self.table[a][b]][c] != self.table[a][self.table[b][c]]:
                raise GroupError("not associative at (%d, %d, %d)" % (a, b, c))

    def mul(self, *xs):
        out = self.identity
        for x in xs:
            out = self.table[out][x]
        return out

    def inv(self, x):
        return self.inverse[x]

    def elements(self):
        return range(self.order)

    def is_abelian(self):
        return all(self.table[a][b] == self.table[b][a] for a in self.elements() for b in self.elements())


def cyclic_group(n):
    return FiniteGroup([[(a + b) % n for b in range(n)] for a in range(n)], "Z%d" % n)


def trivial_group():
    return FiniteGroup([[0]], "1")


def permutation_group(perms, name=""):
    """Group of permutations (tuples, composed as (p*q)(x) = p(q(x))); closure is the caller's job."""
    perms = sorted(set(tuple(p) for p in perms))
    index = {p: i for i, p in enumerate(perms)}
    table = [[index[tuple(p[q[x]] for x in range(len(q)))] for q in perms] for p in perms]
    G = FiniteGroup(table, name)
    G.perms = perms
    return G


def symmetric_group(n):
    return permutation_group(itertools.permutations(range(n)), "S%d" % n)


class CrossedModuleGrp:
    """rho: G -> H with H acting on G by automorphisms; action[h][g] is h(g)."""

    def __init__(self, G, H, rho, action):
        self.G, self.H = G, H
        self.rho = list(rho)
        self.action = [list(row) for row in action]
        problem = self.validate()
        if problem:
            raise GroupError(problem)

    def act(self, h, g):
        return self.action[h][g]

    def validate(self):
        G, H = self.G, self.H
        if len(self.rho) != G.order or len(self.action) != H.order:
            return "rho or action has the wrong size"
        for g1, g2 in itertools.product(G.elements(), repeat=2):
            if self.rho[G.mul(g1, g2)] != H.mul(self.rho[g1], self.rho[g2]):
                return "rho is not a homomorphism at (%d, %d)" % (g1, g2)
        for h in H.elements():
            row = self.action[h]
            if sorted(row) != list(G.elements()):
                return "action of %d is not a permutation" % h
            for g1, g2 in itertools.product(G.elements(), repeat=2):
                if row[G.mul(g1, g2)] != G.mul(row[g1], row[g2]):
                    return "action of %d is not an automorphism" % h
        for h1, h2 in itertools.product(H.elements(), repeat=2):
            for g in G.elements():
                if self.act(H.mul(h1, h2), g) != self.act(h1, self.act(h2, g)):
                    return "action is not a homomorphism at (%d, %d)" % (h1, h2)
        for h in H.elements():
            for g in G.elements():
                if self.rho[self.act(h, g)] != H.mul(h, self.rho[g], H.inv(h)):
                    return "rho is not equivariant at (%d, %d)" % (h, g)
        for g1, g2 in itertools.product(G.elements(), repeat=2):
            if self.act(self.rho[g1], g2) != G.mul(g1, g2, G.inv(g1)):
                return "Peiffer identity fails at (%d, %d)" % (g1, g2)
        return None

    def kernel_size(self):
        return sum(1 for g in self.G.elements() if self.rho[g] == self.H.identity)


def identity_crossed_module(G):
    """G -> G, identity map, conjugation action."""
    action = [[G.mul(h, g, G.inv(h)) for g in G.elements()] for h in G.elements()]
    return CrossedModuleGrp(G, G, list(G.elements()), action)


def abelian_crossed_module(G):
    """G -> 1 for an Abelian group G."""
    H = trivial_group()
    return CrossedModuleGrp(G, H, [0] * G.order, [list(G.elements())])


def trivial_kernel_module(H):
    """1 -> H."""
    G = trivial_group()
    return CrossedModuleGrp(G, H, [H.identity], [[0] for _ in H.elements()])


# ---- decorated triangles ----

@dataclass(frozen=True)
class Triangle:
    """Oriented triangle (a, b, c) with edge labels h = (h_ab, h_bc, h_ca) and face label g,
    subject to h_ab h_bc h_ca = rho(g)."""
    vertices: tuple
    h: tuple
    g: int

    def rotate(self, cm):
        """(a,b,c) -> (b,c,a); the face label moves to h_ab^{-1}(g)."""
        h1, h2, h3 = self.h
        a, b, c = self.vertices
        return Triangle((b, c, a), (h2, h3, h1), cm.act(cm.H.inv(h1), self.g))

    def reverse(self, cm):
        """(a,b,c) -> (a,c,b); edges invert and the face label inverts."""
        h1, h2, h3 = self.h
        a, b, c = self.vertices
        H = cm.H
        return Triangle((a, c, b), (H.inv(h3), H.inv(h2), H.inv(h1)), cm.G.inv(self.g))

    def starting_at(self, v, cm):
        t = self
        for _ in range(3):
            if t.vertices[0] == v:
                return t
            t = t.rotate(cm)
        raise FacesIncompatible("vertex %r not on triangle %r" % (v, self.vertices))

    def is_valid(self, cm):
        return cm.H.mul(*self.h) == cm.rho[self.g]

    def same_class(self, other, cm):
        """Equality up to cyclic rotation."""
        if set(self.vertices) != set(other.vertices):
            return False
        try:
            o = other.starting_at(self.vertices[0], cm)
        except FacesIncompatible:
            return False
        return o.vertices == self.vertices and o.h == self.h and o.g == self.g


def triangle_product(t1, t2, t3, cm):
    """Product of the faces (i,j,k), (i,k,l), (i,l,j) of a tetrahedron; returns face (j,k,l).

    With t1 = (h1,h2,h3,g), t2 = (h3^-1,h4,h5,g'), t3 = (h5^-1,h6,h1^-1,g'') the result is
    (h2,h4,h6, h1^-1(g g' g'')).
    """
    common = set(t1.vertices) & set(t2.vertices) & set(t3.vertices)
    if len(common) != 1 or len(set(t1.vertices) | set(t2.vertices) | set(t3.vertices)) != 4:
        raise FacesIncompatible("triangles are not three faces of one tetrahedron")
    (i,) = common
    t1, t2, t3 = (t.starting_at(i, cm) for t in (t1, t2, t3))
    _, j, k = t1.vertices
    if t2.vertices[1] != k or t3.vertices[2] != j or t2.vertices[2] != t3.vertices[1]:
        raise FacesIncompatible("orientations do not match: %r %r %r" % (t1.vertices, t2.vertices, t3.vertices))
    l = t2.vertices[2]
    H, G = cm.H, cm.G
    h1, h2, h3 = t1.h
    if t2.h[0] != H.inv(h3) or t3.h[0] != H.inv(t2.h[2]) or t3.h[2] != H.inv(h1):
        raise FacesIncompatible("edge labels do not match")
    g = cm.act(H.inv(h1), G.mul(t1.g, t2.g, t3.g))
    return Triangle((j, k, l), (h2, t2.h[1], t3.h[1]), g)


# ---- nerves and cochains ----

@dataclass
class Nerve:
    indices: tuple
    pairs: tuple
    triples: tuple
    quadruples: tuple

    def __post_init__(self):
        self.indices = tuple(self.indices)
        self.pairs = tuple(tuple(sorted(p)) for p in self.pairs)
        self.triples = tuple(tuple(sorted(t)) for t in self.triples)
        self.quadruples = tuple(tuple(sorted(q)) for q in self.quadruples)
        ps, ts = set(self.pairs), set(self.triples)
        for t in self.triples:
            for f in itertools.combinations(t, 2):
                if f not in ps:
                    raise ValueError("edge %r of triple %r missing" % (f, t))
        for q in self.quadruples:
            for f in itertools.combinations(q, 3):
                if f not in ts:
                    raise ValueError("face %r of quadruple %r missing" % (f, q))

    @classmethod
    def complete(cls, n):
        idx = tuple(range(n))
        return cls(idx, tuple(itertools.combinations(idx, 2)), tuple(itertools.combinations(idx, 3)),
                   tuple(itertools.combinations(idx, 4)))


@dataclass
class Cochain:
    """h on increasing pairs, g on increasing triples; h_ji is h_ij^{-1}."""
    h: dict = field(default_factory=dict)
    g: dict = field(default_factory=dict)

    def edge(self, a, b, cm):
        if a < b:
            return self._get(self.h, (a, b))
        return cm.H.inv(self._get(self.h, (b, a)))

    @staticmethod
    def _get(table, key):
        try:
            return table[key]
        except KeyError:
            raise MissingCell(key) from None

    def triangle(self, a, b, c, cm):
        """The decorated triangle attached to the ordered triple (a, b, c)."""
        s = tuple(sorted((a, b, c)))
        p, q, r = s
        base = Triangle(s, (self.edge(p, q, cm), self.edge(q, r, cm), self.edge(r, p, cm)), self._get(self.g, s))
        rotations = [(p, q, r), (q, r, p), (r, p, q)]
        if (a, b, c) not in rotations:
            base = base.reverse(cm)
        return base.starting_at(a, cm)


class CocycleReport:
    def __init__(self, ok, witness=None, form="equations"):
        self.ok, self.witness, self.form = ok, witness, form

    def __bool__(self):
        return self.ok

    def as_dict(self):
        out = {"verdict": "pass" if self.ok else "fail", "form": self.form}
        if self.witness is not None:
            out["witness"] = self.witness
        return out


def check_cocycle_equations(c, nerve, cm):
    """h_ij h_jk h_ki = rho(g_ijk) on triples, g_ijk g_ikl = h_ij(g_jkl) g_ijl on quadruples."""
    G, H = cm.G, cm.H
    for (i, j, k) in nerve.triples:
        lhs = H.mul(c.edge(i, j, cm), c.edge(j, k, cm), c.edge(k, i, cm))
        if lhs != cm.rho[c._get(c.g, (i, j, k))]:
            return CocycleReport(False, {"equation": "triangle", "cell": [i, j, k]})
    for (i, j, k, l) in nerve.quadruples:
        g = c.g
        lhs = G.mul(g[(i, j, k)], g[(i, k, l)])
        rhs = G.mul(cm.act(c.edge(i, j, cm), g[(j, k, l)]), g[(i, j, l)])
        if lhs != rhs:
            return CocycleReport(False, {"equation": "tetrahedron", "cell": [i, j, k, l]})
    return CocycleReport(True)


def check_cocycle_morphism(c, nerve, cm):
    """Attaching triangles must land in valid triangles and respect the 3-ary product."""
    for (i, j, k) in nerve.triples:
        if not c.triangle(i, j, k, cm).is_valid(cm):
            return CocycleReport(False, {"equation": "triangle", "cell": [i, j, k]}, "morphism")
    for (i, j, k, l) in nerve.quadruples:
        out = triangle_product(c.triangle(i, j, k, cm), c.triangle(i, k, l, cm), c.triangle(i, l, j, cm), cm)
        if not out.same_class(c.triangle(j, k, l, cm), cm):
            return CocycleReport(False, {"equation": "tetrahedron", "cell": [i, j, k, l]}, "morphism")
    return CocycleReport(True, None, "morphism")


def check_cocycle(c, nerve, cm):
    """Equation form, cross-checked against the morphism form (they must agree)."""
    a = check_cocycle_equations(c, nerve, cm)
    b = check_cocycle_morphism(c, nerve, cm)
    if a.ok != b.ok:
        raise AssertionError("equation and morphism forms disagree: %r vs %r" % (a.as_dict(), b.as_dict()))
    return a


def search_space(nerve, cm):
    return cm.H.order ** len(nerve.pairs) * cm.kernel_size() ** len(nerve.triples)


def enumerate_cocycles(nerve, cm, bound=10 ** 6, check_both=True):
    """All cocycles, ordered lexicographically by (h over pairs, g over triples)."""
    size = search_space(nerve, cm)
    if size > bound:
        raise BoundExceeded("search space %d exceeds bound %d" % (size, bound))
    G, H = cm.G, cm.H
    fibers = {}
    for g in G.elements():
        fibers.setdefault(cm.rho[g], []).append(g)
    out = []
    for hs in itertools.product(H.elements(), repeat=len(nerve.pairs)):
        h = dict(zip(nerve.pairs, hs))
        probe = Cochain(h, {})
        options = []
        for (i, j, k) in nerve.triples:
            target = H.mul(probe.edge(i, j, cm), probe.edge(j, k, cm), probe.edge(k, i, cm))
            options.append(fibers.get(target, []))
        for gs in itertools.product(*options):
            c = Cochain(h, dict(zip(nerve.triples, gs)))
            rep = check_cocycle(c, nerve, cm) if check_both else check_cocycle_equations(c, nerve, cm)
            if rep.ok:
                out.append(c)
    return out


def abelian_cocycle_count(nerve, p):
    """|Z^2| for Z_p coefficients (p prime): solutions of g_jkl - g_ikl + g_ijl - g_ijk = 0."""
    cols = {t: n for n, t in enumerate(nerve.triples)}
    rows = []
    for (i, j, k, l) in nerve.quadruples:
        r = [0] * len(cols)
        for t, s in (((j, k, l), 1), ((i, k, l), -1), ((i, j, l), 1), ((i, j, k), -1)):
            r[cols[t]] = (r[cols[t]] + s) % p
        rows.append(r)
    return p ** (len(cols) - _rank_mod(rows, len(cols), p))


def _rank_mod(rows, ncols, p):
    rows = [list(r) for r in rows]
    rank = 0
    for c in range(ncols):
        piv = next((r for r in range(rank, len(rows)) if rows[r][c] % p), None)
        if piv is None:
            continue
        rows[rank], rows[piv] = rows[piv], rows[rank]
        inv = pow(rows[rank][c], p - 2, p)
        rows[rank] = [(x * inv) % p for x in rows[rank]]
        for r in range(len(rows)):
            if r != rank and rows[r][c]:
                f = rows[r][c]
                rows[r] = [(x - f * y) % p for x, y in zip(rows[r], rows[rank])]
        rank += 1
    return rank
