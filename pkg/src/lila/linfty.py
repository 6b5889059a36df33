"""L-infinity and curved L-infinity verification, Lie 2-algebras and crossed modules.

Structures are plain `FormalSum`s of map-degree +1 on the symmetric side.
"""

import random
from dataclasses import dataclass, field
from fractions import Fraction

from .graded import GradedSpace, Vector, Q
from .symforms import (FormalSum, SymForm, SkewForm, as_sum, rn_bracket, insert, evaluate,
                       canonical_tuples, unshuffle_arrangements, koszul_sign, perm_sign,
                       skew_sort, _eval_tuple, effective_cap)


@dataclass
class Report:
    ok: bool
    witness: tuple = None
    value: dict = None
    detail: dict = field(default_factory=dict)

    def __bool__(self):
        return self.ok

    def as_dict(self):
        out = {"verdict": "pass" if self.ok else "fail"}
        if self.witness is not None:
            out["witness"] = [list(x) if isinstance(x, tuple) else x for x in self.witness]
        if self.value is not None:
            out["value"] = {str(k): str(v) for k, v in self.value.items()}
        if self.detail:
            out["detail"] = self.detail
        return out


def _first_nonzero(form):
    keys = sorted(form.entries, key=lambda t: (len(t), t))
    return keys[0] if keys else None


def _report_from(form):
    t = _first_nonzero(form)
    if t is None:
        return Report(True)
    labs = form.space.labels
    val = {labs[y] if y is not None else None: c for y, c in sorted(form.entries[t].items())}
    return Report(False, tuple(labs[p] for p in t), val)


def _check_degree_one(mu):
    if mu.entries and mu.degree != 1:
        raise ValueError("structure must have map-degree +1, got %d" % mu.degree)


def check_linfty(mu):
    """[mu, mu] = 0, with the first failing canonical tuple as witness."""
    mu = as_sum(mu)
    _check_degree_one(mu)
    return _report_from(rn_bracket(mu, mu))


def check_curved(mu):
    """Curved version: the arity 0 component is the curvature; includes l1(l0) = 0."""
    mu = as_sum(mu)
    _check_degree_one(mu)
    r = check_linfty(mu)
    l0 = mu.component(0)
    l1 = mu.component(1)
    r.detail["l1(l0)"] = not insert(l0, l1).entries
    return r


def jacobiator_direct(mu, t):
    """Sum over i+j=n+1 and unshuffles of e(s) l_j(l_i(...), ...) on a basis tuple."""
    deg = mu.space.deg
    n = len(t)
    acc = {}
    arities = set(mu.arities())
    degs = [deg[p] for p in t]
    for i in range(0, n + 1):
        j = n + 1 - i
        if i not in arities or j not in arities:
            continue
        for arr in unshuffle_arrangements(i, n - i):
            e = koszul_sign(arr, degs)
            inner = _eval_tuple(mu, tuple(t[a - 1] for a in arr[:i]))
            if not inner:
                continue
            rest = tuple(t[a - 1] for a in arr[i:])
            for y, c in inner.items():
                for z, v in _eval_tuple(mu, (y,) + rest).items():
                    acc[z] = acc.get(z, 0) + e * c * v
    return {z: v for z, v in acc.items() if v}


def check_linfty_direct(mu):
    """Generalized Jacobi identity evaluated term by term on canonical tuples."""
    mu = as_sum(mu)
    _check_degree_one(mu)
    ar = mu.arities()
    if not ar:
        return Report(True)
    top = max(ar)
    lo = 0 if 0 in ar else 1
    labs = mu.space.labels
    for n in range(lo, 2 * top):
        for t in canonical_tuples(mu.space, n):
            val = jacobiator_direct(mu, t)
            if val:
                return Report(False, tuple(labs[p] for p in t),
                              {labs[y]: 2 * c for y, c in sorted(val.items())})
    return Report(True)


def check_skew_linfty(forms, space, max_n=None):
    """Generalized Jacobi identity for graded skew brackets {arity: SkewForm}."""
    deg = space.deg
    ar = sorted(k for k, f in forms.items() if f.entries)
    if not ar:
        return Report(True)
    top = max_n or 2 * max(ar) - 1
    labs = space.labels
    for n in range(1, top + 1):
        for t in canonical_tuples(space, n, parity_shift=1):
            acc = {}
            degs = [deg[p] for p in t]
            for i in ar:
                j = n + 1 - i
                if j not in forms or i > n:
                    continue
                for arr in unshuffle_arrangements(i, n - i):
                    chi = koszul_sign(arr, degs) * perm_sign(arr)
                    s = chi * (-1 if (i * (j - 1)) % 2 else 1)
                    inner = forms[i].value(tuple(t[a - 1] for a in arr[:i]))
                    rest = tuple(t[a - 1] for a in arr[i:])
                    for y, c in inner.items():
                        for z, v in forms[j].value((y,) + rest).items():
                            acc[z] = acc.get(z, 0) + s * c * v
            acc = {z: v for z, v in acc.items() if v}
            if acc:
                return Report(False, tuple(labs[p] for p in t), {labs[z]: v for z, v in acc.items()})
    return Report(True)


def is_poisson_element(pi, mu):
    """l2(pi, pi) = 0 for pi of degree 0."""
    mu = as_sum(mu)
    if pi and pi.degree() != 0:
        raise ValueError("a Poisson element has degree 0")
    return not evaluate(mu.component(2), [pi, pi])


def maurer_cartan_value(e, mu):
    mu = as_sum(mu)
    if e and e.degree() != 0:
        raise ValueError("a Maurer-Cartan element has degree 0")
    E = mu.space
    out = evaluate(mu.component(1), [e]) - Fraction(1, 2) * evaluate(mu.component(2), [e, e])
    l0 = mu.component(0)
    if l0.entries:
        out = out - Vector(E, l0.entries[()])
    return out


def is_maurer_cartan(e, mu):
    """d(e) - l0 - 1/2 [e, e] = 0 (l0 absent when flat)."""
    return not maurer_cartan_value(e, mu)


def compatible(mu1, mu2, samples=((1, 1), (2, -1), (Fraction(1, 3), 5))):
    """[mu1, mu2] = 0; on success also confirms a mu1 + b mu2 is L-infinity for sampled (a, b)."""
    ok = not rn_bracket(mu1, mu2).entries
    if ok:
        for a, b in samples:
            if not check_linfty(Q(a) * as_sum(mu1) + Q(b) * as_sum(mu2)):
                raise AssertionError("combination %r failed although brackets commute" % ((a, b),))
    return ok


# ---- Lie algebras from structure constants ----

class LieAlgebraData:
    """Skew bracket on Q^n from structure constants {(i, j): {k: c}} with i < j."""

    def __init__(self, dim, consts=None, name=None):
        self.dim = dim
        self.name = name
        self.c = {}
        for (i, j), v in (consts or {}).items():
            v = {k: Q(x) for k, x in v.items() if Q(x)}
            if not v:
                continue
            if i == j:
                raise ValueError("bracket of a basis vector with itself must vanish")
            if i > j:
                i, j = j, i
                v = {k: -x for k, x in v.items()}
            cur = self.c.setdefault((i, j), {})
            for k, x in v.items():
                cur[k] = cur.get(k, 0) + x

    @classmethod
    def from_table(cls, table, dim=None, name=None):
        """Build from {(i, j): vector list} with any i != j (antisymmetry imposed)."""
        consts = {}
        for (i, j), vec in table.items():
            if i < j:
                consts[(i, j)] = dict(enumerate(vec)) if isinstance(vec, (list, tuple)) else vec
        n = dim if dim is not None else 1 + max(max(k) for k in table)
        return cls(n, consts, name)

    def br(self, i, j):
        if i == j:
            return {}
        if i < j:
            return self.c.get((i, j), {})
        return {k: -x for k, x in self.c.get((j, i), {}).items()}

    def bracket(self, u, v):
        """Bracket of coordinate dicts {index: coeff}."""
        acc = {}
        for i, a in u.items():
            for j, b in v.items():
                for k, x in self.br(i, j).items():
                    acc[k] = acc.get(k, 0) + a * b * x
        return {k: x for k, x in acc.items() if x}

    def jacobi_witness(self):
        n = self.dim
        for i in range(n):
            for j in range(i + 1, n):
                for k in range(j + 1, n):
                    acc = {}
                    for a, b, c in ((i, j, k), (j, k, i), (k, i, j)):
                        for x, y in self.bracket(self.br(a, b), {c: 1}).items():
                            acc[x] = acc.get(x, 0) + y
                    if any(acc.values()):
                        return (i, j, k)
        return None

    def is_lie(self):
        return self.jacobi_witness() is None

    def ad(self, i):
        """Matrix of ad_{e_i} as rows (ad[a][b] = coefficient of e_a in [e_i, e_b])."""
        M = [[Fraction(0)] * self.dim for _ in range(self.dim)]
        for b in range(self.dim):
            for a, x in self.br(i, b).items():
                M[a][b] = x
        return M

    def __repr__(self):
        return "LieAlgebraData(%s, dim=%d)" % (self.name or "", self.dim)


def symmetric_l2(A):
    """The bracket of A placed in degree -1 as a symmetric form of degree +1."""
    E = GradedSpace({-1: A.dim})
    ent = {}
    for (i, j), v in A.c.items():
        ent[(i, j)] = dict(v)
    return SymForm(E, 2, 1, ent)


def skew_l2(A):
    """The bracket of A as a graded skew form on a space concentrated in degree 0."""
    E = GradedSpace({0: A.dim})
    return SkewForm(E, 2, 0, {(i, j): dict(v) for (i, j), v in A.c.items()})


# ---- Lie 2-algebras ----

def _vec(x, n):
    if isinstance(x, dict):
        return {k: Q(c) for k, c in x.items() if Q(c)}
    return {k: Q(c) for k, c in enumerate(x) if Q(c)}


class Lie2Quadruple:
    """(d, bracket, chi, omega) on E = E_-2 (dim n2) + E_-1 (dim n1).

    d: n1 x n2 matrix (column a is d(f_a)); bracket: {(i, j): vector in E_-1};
    chi: list of n1 matrices n2 x n2 (chi[i] acts on E_-2); omega: {(i, j, k): vector in E_-2}
    for i < j < k, extended skew symmetrically.
    """

    def __init__(self, n2, n1, d=None, bracket=None, chi=None, omega=None):
        self.n2, self.n1 = n2, n1
        self.d = [[Q(x) for x in row] for row in (d or [[0] * n2 for _ in range(n1)])]
        self.A = LieAlgebraData(n1, {k: _vec(v, n1) for k, v in (bracket or {}).items()})
        self.chi = [[[Q(x) for x in row] for row in m] for m in (chi or [[[0] * n2 for _ in range(n2)] for _ in range(n1)])]
        self.om = {}
        for key, v in (omega or {}).items():
            srt = sorted(key)
            if len(set(srt)) < 3:
                continue
            sgn = perm_sign([key.index(x) for x in srt])
            cur = self.om.setdefault(tuple(srt), {})
            for k, c in _vec(v, n2).items():
                cur[k] = cur.get(k, 0) + sgn * c
        if len(self.d) != n1 or any(len(r) != n2 for r in self.d):
            raise ValueError("d must be an n1 x n2 matrix")
        if len(self.chi) != n1:
            raise ValueError("chi needs one matrix per E_-1 basis vector")

    # coordinate level operations (dicts index -> coeff)
    def D(self, f):
        acc = {}
        for a, x in f.items():
            for b in range(self.n1):
                if self.d[b][a]:
                    acc[b] = acc.get(b, 0) + x * self.d[b][a]
        return {k: v for k, v in acc.items() if v}

    def act(self, X, f):
        acc = {}
        for i, x in X.items():
            for a, y in f.items():
                for b in range(self.n2):
                    c = self.chi[i][b][a]
                    if c:
                        acc[b] = acc.get(b, 0) + x * y * c
        return {k: v for k, v in acc.items() if v}

    def br(self, X, Y):
        return self.A.bracket(X, Y)

    def omega(self, X, Y, Z):
        acc = {}
        for i, a in X.items():
            for j, b in Y.items():
                for k, c in Z.items():
                    key = (i, j, k)
                    if len(set(key)) < 3:
                        continue
                    srt = tuple(sorted(key))
                    s = perm_sign([key.index(x) for x in srt])
                    for m, v in self.om.get(srt, {}).items():
                        acc[m] = acc.get(m, 0) + s * a * b * c * v
        return {k: v for k, v in acc.items() if v}

    def space(self):
        return GradedSpace({-2: self.n2, -1: self.n1})

    def to_linfty(self):
        E = self.space()
        n2 = self.n2
        X = lambda i: n2 + i
        l1, l2, l3 = {}, {}, {}
        for a in range(n2):
            img = {X(b): c for b, c in self.D({a: 1}).items()}
            if img:
                l1[(a,)] = img
        for (i, j), v in self.A.c.items():
            l2[(X(i), X(j))] = {X(k): c for k, c in v.items()}
        for i in range(self.n1):
            for a in range(n2):
                img = self.act({i: 1}, {a: 1})
                if img:
                    l2[(a, X(i))] = img
        for key, v in self.om.items():
            l3[tuple(X(i) for i in key)] = dict(v)
        return (SymForm(E, 1, 1, l1) + SymForm(E, 2, 1, l2) + SymForm(E, 3, 1, l3))


def quadruple_axioms(q):
    """Check relations (i)-(v); returns {name: witness or None}.

    Signs are those obtained by expanding [mu, mu] = 0 componentwise.
    """
    n1, n2 = q.n1, q.n2
    e = lambda i: {i: Fraction(1)}
    add = _add_dicts
    out = {}
    w = None
    for a in range(n2):
        for b in range(a, n2):
            if add(q.act(q.D(e(a)), e(b)), q.act(q.D(e(b)), e(a))):
                w = w or ("f%d" % a, "f%d" % b)
    out["i"] = w
    w = None
    for i in range(n1):
        for a in range(n2):
            if add(q.br(e(i), q.D(e(a))), q.D(q.act(e(i), e(a))), -1):
                w = w or ("X%d" % i, "f%d" % a)
    out["ii"] = w
    w = None
    for i in range(n1):
        for j in range(i + 1, n1):
            for a in range(n2):
                t = add(q.act(q.br(e(i), e(j)), e(a)), q.act(e(j), q.act(e(i), e(a))))
                t = add(t, q.act(e(i), q.act(e(j), e(a))), -1)
                t = add(t, q.omega(e(i), e(j), q.D(e(a))))
                if t:
                    w = w or ("X%d" % i, "X%d" % j, "f%d" % a)
    out["iii"] = w
    w = None
    for i in range(n1):
        for j in range(i + 1, n1):
            for k in range(j + 1, n1):
                t = {}
                for x, y, z in ((i, j, k), (j, k, i), (k, i, j)):
                    t = add(t, q.br(q.br(e(x), e(y)), e(z)))
                t = add(t, q.D(q.omega(e(i), e(j), e(k))))
                if t:
                    w = w or ("X%d" % i, "X%d" % j, "X%d" % k)
    out["iv"] = w
    w = None
    for i in range(n1):
        for j in range(i + 1, n1):
            for k in range(j + 1, n1):
                for l in range(k + 1, n1):
                    X, Y, Z, W = e(i), e(j), e(k), e(l)
                    lhs = add(q.act(W, q.omega(X, Y, Z)), q.act(Z, q.omega(X, Y, W)), -1)
                    lhs = add(lhs, q.act(Y, q.omega(X, Z, W)))
                    lhs = add(lhs, q.act(X, q.omega(Y, Z, W)), -1)
                    rhs = {}
                    for s, (A, B, C, D) in ((-1, (X, Y, Z, W)), (1, (X, Z, Y, W)), (-1, (X, W, Y, Z)),
                                            (-1, (Y, Z, X, W)), (1, (Y, W, X, Z)), (-1, (Z, W, X, Y))):
                        rhs = add(rhs, q.omega(q.br(A, B), C, D), s)
                    if add(lhs, rhs, -1):
                        w = w or ("X%d" % i, "X%d" % j, "X%d" % k, "X%d" % l)
    out["v"] = w
    return out


def _add_dicts(a, b, s=1):
    out = dict(a)
    for k, v in b.items():
        out[k] = out.get(k, 0) + s * v
    return {k: v for k, v in out.items() if v}


def from_lie2_quadruple(q):
    """Assemble l1 + l2 + l3 and report which of (i)-(v) fail."""
    mu = q.to_linfty()
    return mu, quadruple_axioms(q)


@dataclass
class CrossedModuleLieAlg:
    g: LieAlgebraData
    h: LieAlgebraData
    d: list        # dim h x dim g
    chi: list      # one dim g x dim g matrix per basis vector of h


def crossed_module_witness(cm):
    """First violated crossed module axiom, or None."""
    g, h = cm.g, cm.h
    q = Lie2Quadruple(g.dim, h.dim, cm.d, {k: v for k, v in h.c.items()}, cm.chi)
    e = lambda i: {i: Fraction(1)}
    if not g.is_lie():
        return ("g not Lie", g.jacobi_witness())
    if not h.is_lie():
        return ("h not Lie", h.jacobi_witness())
    for i in range(h.dim):
        for a in range(g.dim):
            for b in range(g.dim):
                # chi(h) acts by derivations of g
                lhs = q.act(e(i), g.bracket(e(a), e(b)))
                rhs = _add_dicts(g.bracket(q.act(e(i), e(a)), e(b)), g.bracket(e(a), q.act(e(i), e(b))))
                if _add_dicts(lhs, rhs, -1):
                    return ("chi not by derivations", (i, a, b))
    for i in range(h.dim):
        for j in range(h.dim):
            for a in range(g.dim):
                lhs = q.act(h.br(i, j), e(a))
                rhs = _add_dicts(q.act(e(i), q.act(e(j), e(a))), q.act(e(j), q.act(e(i), e(a))), -1)
                if _add_dicts(lhs, rhs, -1):
                    return ("chi not a representation", (i, j, a))
    for i in range(h.dim):
        for a in range(g.dim):
            if _add_dicts(q.D(q.act(e(i), e(a))), h.bracket(e(i), q.D(e(a))), -1):
                return ("d not equivariant", (i, a))
    for a in range(g.dim):
        for b in range(g.dim):
            if _add_dicts(q.act(q.D(e(a)), e(b)), g.bracket(e(a), e(b)), -1):
                return ("Peiffer identity", (a, b))
    # d must be a Lie algebra morphism; this follows from the two identities above
    return None


def from_crossed_module(cm):
    """Lie 2-algebra with l3 = 0: g in degree -2, h in degree -1."""
    w = crossed_module_witness(cm)
    if w is not None:
        raise ValueError("not a crossed module: %s at %r" % w)
    q = Lie2Quadruple(cm.g.dim, cm.h.dim, cm.d, {k: v for k, v in cm.h.c.items()}, cm.chi)
    return q.to_linfty()


# ---- Chevalley-Eilenberg differential ----

def ce_differential(eta, l2):
    """d^CE eta on E_-1 arguments, built from chi and the bracket stored in l2."""
    eta, l2 = as_sum(eta), as_sum(l2)
    E = eta.space
    if set(E.degrees()) - {-2, -1}:
        raise ValueError("space must be concentrated in degrees -2 and -1")
    k = eta.max_arity()
    if k < 0:
        return SymForm(E, 0, eta.degree + 1)
    if eta.entries and eta.degree != k - 2:
        raise ValueError("eta must have map-degree arity - 2")
    ones = E.positions(-1)
    ent = {}
    for t in canonical_tuples(E.__class__({-1: len(ones)}), k + 1):
        xs = [ones[i] for i in t]
        acc = {}
        for i in range(k + 1):
            hat = tuple(xs[:i] + xs[i + 1:])
            val = _eval_tuple(eta, hat)
            s = -1 if i % 2 else 1
            for y, c in val.items():
                for z, v in _eval_tuple(l2, (xs[i], y)).items():
                    acc[z] = acc.get(z, 0) + s * c * v
        for i in range(k + 1):
            for j in range(i + 1, k + 1):
                s = -1 if (i + j) % 2 else 1
                hat = tuple(xs[:i] + xs[i + 1:j] + xs[j + 1:])
                for y, c in _eval_tuple(l2, (xs[i], xs[j])).items():
                    for z, v in _eval_tuple(eta, (y,) + hat).items():
                        acc[z] = acc.get(z, 0) + s * c * v
        acc = {z: v for z, v in acc.items() if v}
        if acc:
            ent[tuple(xs)] = acc
    return SymForm(E, k + 1, eta.degree + 1, ent, cap=eta.cap)


# ---- random generators used by tests and the CLI ----

def random_form(space, arity, degree, rng, density=0.5, lo=-3, hi=3, cap=None, scalar=False):
    ent = {}
    for t in canonical_tuples(space, arity):
        want = sum(space.deg[p] for p in t) + degree
        if scalar:
            if want == 0 and rng.random() < density:
                c = Fraction(rng.randint(lo, hi))
                if c:
                    ent[t] = {None: c}
            continue
        for y in space.positions(want):
            if rng.random() < density:
                c = Fraction(rng.randint(lo, hi))
                if c:
                    ent.setdefault(t, {})[y] = c
    return SymForm(space, arity, degree, ent, cap=cap, scalar=scalar)


def random_lie_algebra(dim, rng, lo=-2, hi=2):
    """Random bracket (not necessarily Jacobi)."""
    consts = {}
    for i in range(dim):
        for j in range(i + 1, dim):
            consts[(i, j)] = {k: rng.randint(lo, hi) for k in range(dim)}
    return LieAlgebraData(dim, consts)
