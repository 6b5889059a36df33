"""Graded symmetric vector valued forms and the Richardson-Nijenhuis bracket.

A form is stored sparsely: canonical argument tuples (sorted basis positions,
odd positions at most once) map to sparse values {target position: Fraction}.
Scalar valued forms use the target key None.  `FormalSum` allows entries of
several arities sharing one map-degree; `SymForm` is the single arity case.
"""

import itertools
import os
from collections import Counter
from fractions import Fraction
from math import comb

from .graded import GradedSpace, Vector, Q, shift


class WindowError(ValueError):
    """A result has a nonzero component beyond the arity window."""


DEFAULT_MAX_ARITY = 8


def default_cap():
    v = os.environ.get("LILA_MAX_ARITY")
    return int(v) if v else DEFAULT_MAX_ARITY


# ---- signs and permutations ----

def koszul_sign(perm, degrees):
    """Sign e(perm) with X_perm(1) x ... x X_perm(n) = e * X_1 x ... x X_n.

    `perm` is the arrangement in one-line notation (1-based): slot r holds
    argument perm[r].  `degrees[i]` is the degree of argument i+1.
    """
    if len(perm) != len(degrees):
        raise ValueError("permutation and degree list differ in length")
    base = 1 if min(perm, default=1) == 1 else 0
    p = [x - base for x in perm]
    if sorted(p) != list(range(len(p))):
        raise ValueError("not a permutation: %r" % (perm,))
    s = 0
    for i in range(len(p)):
        for j in range(i + 1, len(p)):
            if p[i] > p[j] and degrees[p[i]] % 2 and degrees[p[j]] % 2:
                s ^= 1
    return -1 if s else 1


def perm_sign(perm):
    p = list(perm)
    s = 0
    for i in range(len(p)):
        for j in range(i + 1, len(p)):
            if p[i] > p[j]:
                s ^= 1
    return -1 if s else 1


def invert(perm):
    base = 1 if min(perm, default=1) == 1 else 0
    out = [0] * len(perm)
    for slot, arg in enumerate(perm):
        out[arg - base] = slot + base
    return tuple(out)


def unshuffle_arrangements(i, j):
    """Arrangements (slot -> argument, 1-based) increasing on the first i and last j slots."""
    n = i + j
    out = []
    for first in itertools.combinations(range(1, n + 1), i):
        rest = [x for x in range(1, n + 1) if x not in first]
        out.append(tuple(first) + tuple(rest))
    return out


def unshuffles(i, j):
    """Unshuffles of type (i, j), each written as argument -> slot (1-based).

    Entry r of a tuple is the slot taken by argument r+1; for the slot-wise
    arrangement use `unshuffle_arrangements` (or `invert`).
    """
    if i < 0 or j < 0:
        raise ValueError("negative block size")
    return sorted(invert(a) for a in unshuffle_arrangements(i, j))


def sort_with_sign(tup, deg):
    """Sort positions, returning (sorted tuple, Koszul sign) or (None, 0) if an odd repeats."""
    t = list(tup)
    s = 1
    # insertion sort, accumulating the sign of each adjacent swap
    for i in range(1, len(t)):
        j = i
        while j > 0 and t[j - 1] > t[j]:
            if deg[t[j - 1]] % 2 and deg[t[j]] % 2:
                s = -s
            t[j - 1], t[j] = t[j], t[j - 1]
            j -= 1
    for a, b in zip(t, t[1:]):
        if a == b and deg[a] % 2:
            return None, 0
    return tuple(t), s


def valid_tuple(t, deg):
    return all(not (a == b and deg[a] % 2) for a, b in zip(t, t[1:]))


def canonical_tuples(space, k, parity_shift=0):
    """All canonical tuples of length k (odd labels at most once).

    With parity_shift=1 the roles of odd and even are exchanged; this is the
    convention for graded skew forms.
    """
    deg = space.deg
    for t in itertools.combinations_with_replacement(range(space.dim), k):
        if all(not (a == b and (deg[a] + parity_shift) % 2) for a, b in zip(t, t[1:])):
            yield t


# ---- forms ----

def _add_into(acc, key, vals, scale):
    d = acc.get(key)
    if d is None:
        d = acc[key] = {}
    for y, c in vals.items():
        v = d.get(y, 0) + scale * c
        if v:
            d[y] = v
        else:
            d.pop(y, None)
    if not d:
        del acc[key]


class FormalSum:
    """Sum of symmetric vector valued forms of one map-degree on a graded space."""

    def __init__(self, space, degree, entries=None, cap=None, scalar=False, check=True):
        self.space = space
        self.degree = int(degree)
        self.cap = cap
        self.scalar = scalar
        self.entries = {}
        if entries:
            for t, vals in entries.items():
                t = tuple(t)
                if check:
                    st, s = sort_with_sign(t, space.deg)
                    if st is None:
                        continue
                    self._check_degree(st, vals)
                else:
                    st, s = t, 1
                _add_into(self.entries, st, vals, s)

    def _check_degree(self, t, vals):
        deg = self.space.deg
        want = sum(deg[p] for p in t) + self.degree
        for y in vals:
            got = 0 if y is None else deg[y]
            if y is None and self.scalar is False:
                raise ValueError("scalar value in a vector valued form")
            if got != want:
                raise ValueError("entry %r has value degree %d, expected %d" % (t, got, want))

    # construction helpers
    @classmethod
    def zero(cls, space, degree, cap=None, scalar=False):
        return cls(space, degree, cap=cap, scalar=scalar)

    @classmethod
    def from_labels(cls, space, degree, table, cap=None):
        """Build from {(label, ...): {label: coefficient}}; tuples may be in any order."""
        entries = {}
        for args, val in table.items():
            t = tuple(space.pos[tuple(a)] for a in args)
            v = {space.pos[tuple(y)]: Q(c) for y, c in val.items()}
            st, s = sort_with_sign(t, space.deg)
            if st is None:
                continue
            _add_into(entries, st, v, s)
        return cls(space, degree, entries, cap=cap)

    @classmethod
    def vector(cls, v, cap=None):
        """A homogeneous vector as a 0-form."""
        d = v.degree()
        return cls(v.space, 0 if d is None else d, {(): dict(v.coeffs)} if v else {}, cap=cap)

    def copy(self, **kw):
        out = object.__new__(FormalSum)
        out.space = kw.get("space", self.space)
        out.degree = kw.get("degree", self.degree)
        out.cap = kw.get("cap", self.cap)
        out.scalar = self.scalar
        out.entries = {t: dict(v) for t, v in self.entries.items()}
        return out

    # structure
    def arities(self):
        return sorted({len(t) for t in self.entries})

    def component(self, k):
        out = SymForm(self.space, k, self.degree, cap=self.cap, scalar=self.scalar)
        out.entries = {t: dict(v) for t, v in self.entries.items() if len(t) == k}
        return out

    def components(self):
        return {k: self.component(k) for k in self.arities()}

    def max_arity(self):
        return max((len(t) for t in self.entries), default=-1)

    def is_zero(self):
        return not self.entries

    def __bool__(self):
        return bool(self.entries)

    def value(self, t):
        """Value on a canonical tuple as {target: coefficient}."""
        return self.entries.get(tuple(t), {})

    def nnz(self):
        return sum(len(v) for v in self.entries.values())

    # linear structure
    def _combine(self, other, s):
        if other.space != self.space:
            raise ValueError("forms on different spaces")
        if other.entries and self.entries and other.degree != self.degree:
            raise ValueError("map-degrees differ: %d vs %d" % (self.degree, other.degree))
        deg = self.degree if self.entries or not other.entries else other.degree
        out = FormalSum(self.space, deg, cap=_join_cap(self.cap, other.cap),
                        scalar=self.scalar or other.scalar)
        out.entries = {t: dict(v) for t, v in self.entries.items()}
        for t, v in other.entries.items():
            _add_into(out.entries, t, v, s)
        return out

    def __add__(self, other):
        return self._combine(other, 1)

    def __sub__(self, other):
        return self._combine(other, -1)

    def __neg__(self):
        return Q(-1) * self

    def __rmul__(self, c):
        c = Q(c)
        out = FormalSum.copy(self)
        out.entries = {t: {y: c * x for y, x in v.items()} for t, v in self.entries.items()} if c else {}
        return out

    def __eq__(self, other):
        if not isinstance(other, FormalSum):
            return NotImplemented
        if self.space != other.space:
            return False
        if not self.entries and not other.entries:
            return True
        return self.degree == other.degree and self.entries == other.entries

    __hash__ = None

    def __repr__(self):
        return "FormalSum(degree=%d, arities=%s, nnz=%d)" % (self.degree, self.arities(), self.nnz())

    def diff(self, other):
        """First canonical tuple where the two sums differ, or None."""
        keys = sorted(set(self.entries) | set(other.entries), key=lambda t: (len(t), t))
        for t in keys:
            if self.entries.get(t, {}) != other.entries.get(t, {}):
                return t
        return None

    def labels(self, t):
        return tuple(self.space.labels[p] for p in t)


class SymForm(FormalSum):
    """A symmetric vector valued form of fixed arity."""

    def __init__(self, space, arity, degree, entries=None, cap=None, scalar=False, check=True):
        self.arity = int(arity)
        if entries:
            for t in entries:
                if len(t) != self.arity:
                    raise ValueError("tuple %r does not have arity %d" % (t, self.arity))
        super().__init__(space, degree, entries, cap=cap, scalar=scalar, check=check)

    def copy(self, **kw):
        out = FormalSum.copy(self, **kw)
        out.__class__ = SymForm
        out.arity = self.arity
        return out

    def __repr__(self):
        return "SymForm(arity=%d, degree=%d, nnz=%d)" % (self.arity, self.degree, self.nnz())


def _join_cap(a, b):
    if a is None:
        return b
    if b is None:
        return a
    return min(a, b)


def as_sum(x):
    if isinstance(x, FormalSum):
        return x
    if isinstance(x, Vector):
        return FormalSum.vector(x)
    raise TypeError("expected a form or a vector, got %r" % type(x))


def from_matrix(space, images, degree=0, cap=None):
    """1-form from {position or label: Vector or {label: coeff}}."""
    entries = {}
    for src, img in images.items():
        p = src if isinstance(src, int) else space.pos[tuple(src)]
        if isinstance(img, Vector):
            v = dict(img.coeffs)
        else:
            v = {space.pos[tuple(k)] if not isinstance(k, int) else k: Q(c) for k, c in img.items()}
        v = {y: c for y, c in v.items() if c}
        if v:
            entries[(p,)] = v
    return SymForm(space, 1, degree, entries, cap=cap)


def identity_form(space, cap=None):
    return SymForm(space, 1, 0, {(p,): {p: Fraction(1)} for p in range(space.dim)}, cap=cap)


# ---- arity windows ----

def arity_window(space, map_degree):
    """Largest arity a nonzero form of this map-degree can have, or None if unbounded."""
    degs = space.degrees()
    if not degs:
        return 0
    lo, hi = min(degs), max(degs)
    if hi <= -1:
        # sum of k argument degrees is at most k*hi; the value must be >= lo
        return max(-1, (map_degree - lo) // (-hi))
    if lo >= 1:
        return max(-1, (hi - map_degree) // lo)
    return None


def effective_cap(form):
    w = arity_window(form.space, form.degree)
    caps = [c for c in (form.cap, w) if c is not None]
    if caps:
        return min(caps)
    return default_cap()


def enforce_window(form):
    cap = effective_cap(form)
    m = form.max_arity()
    if m > cap:
        t = next(t for t in form.entries if len(t) == m)
        err = WindowError("nonzero arity %d component exceeds window %d (tuple %r)" % (m, cap, form.labels(t)))
        err.required = m
        raise err
    return form


# ---- insertion and the RN bracket ----

def _index_by_element(L):
    """For each basis position y: list of (rest, sign, values) with L(y, rest...) = sign * L(b)."""
    deg = L.space.deg
    idx = {}
    for b, vals in L.entries.items():
        before = 0
        prev = None
        for j, y in enumerate(b):
            if y != prev:
                s = -1 if (deg[y] % 2 and before % 2) else 1
                idx.setdefault(y, []).append((b[:j] + b[j + 1:], s, vals))
            before += deg[y]
            prev = y
    return idx


def _merge(a, rest, deg):
    """Merge two canonical tuples; returns (t, unshuffle sign * multiplicity) or None."""
    if not a:
        return rest, 1
    if not rest:
        return a, 1
    sa = set(a)
    for x in rest:
        if x in sa and deg[x] % 2:
            return None
    t = tuple(sorted(a + rest))
    s = 0
    odd_a = [z for z in a if deg[z] % 2]
    if odd_a:
        for x in rest:
            if deg[x] % 2:
                s += sum(1 for z in odd_a if x < z)
    mult = 1
    if len(set(t)) != len(t):
        ca, ct = Counter(a), Counter(t)
        for v, m in ca.items():
            if ct[v] > m:
                mult *= comb(ct[v], m)
    return t, (-mult if s % 2 else mult)


def insert(K, L):
    """The insertion i_K L (K vector valued; L vector or scalar valued)."""
    K, L = as_sum(K), as_sum(L)
    if K.space != L.space:
        raise ValueError("forms on different spaces")
    if K.scalar:
        raise ValueError("cannot insert a scalar valued form")
    deg = K.space.deg
    out = FormalSum(K.space, K.degree + L.degree, cap=_join_cap(K.cap, L.cap), scalar=L.scalar)
    if not K.entries or not L.entries:
        return out
    idx = _index_by_element(L)
    acc = out.entries
    cache = {}
    for a, kvals in K.entries.items():
        for y, c in kvals.items():
            hits = idx.get(y)
            if not hits:
                continue
            for rest, sL, lvals in hits:
                key = (a, rest)
                m = cache.get(key, False)
                if m is False:
                    m = cache[key] = _merge(a, rest, deg)
                if m is None:
                    continue
                t, e = m
                _add_into(acc, t, lvals, e * sL * c)
    return enforce_window(out)


def rn_bracket(K, L):
    """[K, L] = i_K L - (-1)^(deg K * deg L) i_L K."""
    K, L = as_sum(K), as_sum(L)
    a = insert(K, L)
    b = insert(L, K)
    if (K.degree * L.degree) % 2:
        return a + b
    return a - b


def compose(A, B):
    """Composition A o B of two 1-forms (apply B first)."""
    return insert(B, A)


# ---- evaluation ----

def _eval_tuple(form, tup):
    """Value of the form on a basis tuple in any order, as {target: coeff}."""
    st, s = sort_with_sign(tup, form.space.deg)
    if st is None:
        return {}
    vals = form.entries.get(st)
    if not vals:
        return {}
    if s == 1:
        return vals
    return {y: -c for y, c in vals.items()}


def evaluate(K, args):
    """Multilinear evaluation of K on vectors (graded symmetric extension)."""
    K = as_sum(K)
    for a in args:
        if a.space != K.space:
            raise ValueError("argument in a different space")
    acc = {}
    supports = [list(a.coeffs.items()) for a in args]
    for combo in itertools.product(*supports):
        c = Fraction(1)
        tup = []
        for p, x in combo:
            c *= x
            tup.append(p)
        for y, v in _eval_tuple(K, tuple(tup)).items():
            acc[y] = acc.get(y, 0) + c * v
    acc = {y: v for y, v in acc.items() if v}
    if K.scalar:
        return acc.get(None, Fraction(0))
    return Vector(K.space, acc)


def derived_bracket_eval(K, args):
    """K(X_1..X_k) computed as [X_k, ... [X_2, [X_1, K]] ...] with 0-forms."""
    cur = as_sum(K)
    for a in args:
        nxt = None
        for v in a.homogeneous_parts().values():
            term = rn_bracket(FormalSum.vector(v, cap=cur.cap), cur)
            nxt = term if nxt is None else nxt + term
        if nxt is None:
            return Vector(K.space, {}) if not K.scalar else Fraction(0)
        cur = nxt
    val = cur.entries.get((), {})
    if K.scalar:
        return val.get(None, Fraction(0))
    return Vector(K.space, val)


# ---- skew forms and decalage ----

class SkewForm:
    """Graded skew symmetric form on E; entries on sorted tuples where even labels are distinct."""

    def __init__(self, space, arity, degree, entries=None):
        self.space = space
        self.arity = arity
        self.degree = degree
        self.entries = {}
        for t, vals in (entries or {}).items():
            st, s = skew_sort(t, space.deg)
            if st is None:
                continue
            _add_into(self.entries, st, vals, s)

    @classmethod
    def from_labels(cls, space, degree, table):
        arity = len(next(iter(table))) if table else 0
        ent = {}
        for args, val in table.items():
            t = tuple(space.pos[tuple(a)] for a in args)
            v = {space.pos[tuple(y)]: Q(c) for y, c in val.items()}
            st, s = skew_sort(t, space.deg)
            if st is None:
                continue
            _add_into(ent, st, v, s)
        return cls(space, arity, degree, ent)

    def value(self, tup):
        st, s = skew_sort(tup, self.space.deg)
        if st is None:
            return {}
        vals = self.entries.get(st, {})
        return vals if s == 1 else {y: -c for y, c in vals.items()}

    def __eq__(self, other):
        return (isinstance(other, SkewForm) and self.space == other.space and self.arity == other.arity
                and (self.degree == other.degree or not self.entries) and self.entries == other.entries)

    __hash__ = None


def skew_sort(tup, deg):
    """Sort with sign chi = Koszul sign times permutation sign; (None, 0) if an even label repeats."""
    t = list(tup)
    s = 1
    for i in range(1, len(t)):
        j = i
        while j > 0 and t[j - 1] > t[j]:
            if not (deg[t[j - 1]] % 2 and deg[t[j]] % 2):
                s = -s
            t[j - 1], t[j] = t[j], t[j - 1]
            j -= 1
    for a, b in zip(t, t[1:]):
        if a == b and not deg[a] % 2:
            return None, 0
    return tuple(t), s


def decalage_sign(degs):
    n = len(degs)
    e = sum((n - 1 - i) * d for i, d in enumerate(degs))
    return -1 if e % 2 else 1


def decalage(skew):
    """Skew form on E (degree 2-n) -> symmetric form on E[1] (degree 1)."""
    E = skew.space
    F = shift(E, 1)
    n = skew.arity
    ent = {}
    for t, vals in skew.entries.items():
        s = decalage_sign([E.deg[p] for p in t])
        ent[t] = {y: s * c for y, c in vals.items()}
    return SymForm(F, n, skew.degree + n - 1, ent)


def decalage_inverse(form):
    """Symmetric form on E[1] -> skew form on E."""
    F = form.space
    E = shift(F, -1)
    n = form.arity if isinstance(form, SymForm) else form.max_arity()
    ent = {}
    for t, vals in form.entries.items():
        s = decalage_sign([E.deg[p] for p in t])
        ent[t] = {y: s * c for y, c in vals.items()}
    return SkewForm(E, n, form.degree - n + 1, ent)


# ---- products and multi-derivations ----

class Product:
    """Bilinear product on a graded space from a table {(p, q): {r: coeff}} on positions.

    `degree` is the degree of the product as a map (the wedge on the
    multivector space has degree 2).
    """

    def __init__(self, space, table, degree=0):
        self.space = space
        self.degree = degree
        self.table = {k: {y: Q(c) for y, c in v.items() if c} for k, v in table.items()}

    def mul(self, p, q):
        return self.table.get((p, q), {})

    def mul_vec(self, u, v):
        acc = {}
        for p, a in u.items():
            for q, b in v.items():
                for r, c in self.mul(p, q).items():
                    acc[r] = acc.get(r, 0) + a * b * c
        return {r: c for r, c in acc.items() if c}

    def check(self):
        """Witness of failure of graded commutativity or associativity, or None."""
        deg = self.space.deg
        n = self.space.dim
        for p in range(n):
            for q in range(n):
                s = -1 if (deg[p] % 2 and deg[q] % 2) else 1
                pq = self.mul(p, q)
                qp = {y: s * c for y, c in self.mul(q, p).items()}
                if pq != qp:
                    return ("commutativity", p, q)
        for p in range(n):
            for q in range(n):
                for r in range(n):
                    left = self.mul_vec(self.mul(p, q), {r: 1})
                    right = self.mul_vec({p: 1}, self.mul(q, r))
                    if left != right:
                        return ("associativity", p, q, r)
        return None


def is_multiderivation(D, product, check_product=True):
    """Leibniz rule in the last slot on all basis tuples; returns (ok, witness)."""
    D = as_sum(D)
    if check_product:
        bad = product.check()
        if bad is not None:
            raise ValueError("product is not graded commutative associative: %r" % (bad,))
    deg = D.space.deg
    n = D.space.dim
    prod_pairs = [(y, z) for y in range(n) for z in range(y, n) if product.mul(y, z)]
    for k in D.arities() or [1]:
        if k == 0:
            continue
        for xs in canonical_tuples(D.space, k - 1):
            for y, z in prod_pairs:
                lhs = {}
                for r, c in product.mul(y, z).items():
                    for t, v in _eval_tuple(D, xs + (r,)).items():
                        lhs[t] = lhs.get(t, 0) + c * v
                rhs = product.mul_vec(_eval_tuple(D, xs + (y,)), {z: 1})
                s = -1 if (deg[y] % 2 and deg[z] % 2) else 1
                for t, v in product.mul_vec(_eval_tuple(D, xs + (z,)), {y: 1}).items():
                    rhs[t] = rhs.get(t, 0) + s * v
                lhs = {t: v for t, v in lhs.items() if v}
                rhs = {t: v for t, v in rhs.items() if v}
                if lhs != rhs:
                    return False, D.labels(xs) + (D.space.labels[y], D.space.labels[z])
    return True, None
