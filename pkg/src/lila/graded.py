"""Graded vector spaces over the rationals, sparse vectors and exact linear algebra."""

from fractions import Fraction


class DimensionError(ValueError):
    pass


def Q(x):
    """Coerce ints, strings ("p/q") and Fractions to Fraction."""
    if isinstance(x, Fraction):
        return x
    if isinstance(x, str):
        return Fraction(x.strip())
    return Fraction(x)


class GradedSpace:
    """Finite dimensional graded space; basis labels are (degree, index).

    Basis labels are totally ordered by degree and then index.  Internally
    every label also has a position in that order, and most of the library
    works with positions.
    """

    def __init__(self, components):
        comps = {}
        for deg, dim in dict(components).items():
            deg, dim = int(deg), int(dim)
            if dim < 0:
                raise DimensionError("negative dimension in degree %d" % deg)
            if dim:
                comps[deg] = dim
        self.components = dict(sorted(comps.items()))
        self.labels = [(d, i) for d in self.components for i in range(self.components[d])]
        self.pos = {lab: p for p, lab in enumerate(self.labels)}
        self.deg = [d for d, _ in self.labels]
        self.dim = len(self.labels)

    def degrees(self):
        return list(self.components)

    def dim_of(self, degree):
        return self.components.get(degree, 0)

    def positions(self, degree):
        return [p for p, d in enumerate(self.deg) if d == degree]

    def basis(self, label):
        """The basis vector with the given label (or position)."""
        p = label if isinstance(label, int) else self.pos[tuple(label)]
        return Vector(self, {p: Fraction(1)})

    def zero(self):
        return Vector(self, {})

    def vector(self, coeffs):
        """Build a vector from {label: coefficient}."""
        out = {}
        for lab, c in coeffs.items():
            p = lab if isinstance(lab, int) else self.pos[tuple(lab)]
            c = Q(c)
            if c:
                out[p] = out.get(p, 0) + c
        return Vector(self, out)

    def __eq__(self, other):
        return isinstance(other, GradedSpace) and self.components == other.components

    def __hash__(self):
        return hash(tuple(self.components.items()))

    def __repr__(self):
        return "GradedSpace(%r)" % self.components


def shift(space, p):
    """E[p]: the degree i component is the old degree i+p component."""
    return GradedSpace({d - p: n for d, n in space.components.items()})


class Vector:
    """Sparse vector; coefficients keyed by basis position."""

    __slots__ = ("space", "coeffs")

    def __init__(self, space, coeffs):
        self.space = space
        self.coeffs = {p: c for p, c in coeffs.items() if c}

    def degree(self):
        """Common degree of the support, or None if inhomogeneous or zero."""
        degs = {self.space.deg[p] for p in self.coeffs}
        return degs.pop() if len(degs) == 1 else None

    def is_homogeneous(self):
        return len({self.space.deg[p] for p in self.coeffs}) <= 1

    def homogeneous_parts(self):
        parts = {}
        for p, c in self.coeffs.items():
            parts.setdefault(self.space.deg[p], {})[p] = c
        return {d: Vector(self.space, v) for d, v in sorted(parts.items())}

    def by_label(self):
        return {self.space.labels[p]: c for p, c in sorted(self.coeffs.items())}

    def __bool__(self):
        return bool(self.coeffs)

    def __add__(self, other):
        out = dict(self.coeffs)
        for p, c in other.coeffs.items():
            out[p] = out.get(p, 0) + c
        return Vector(self.space, out)

    def __neg__(self):
        return Vector(self.space, {p: -c for p, c in self.coeffs.items()})

    def __sub__(self, other):
        return self + (-other)

    def __rmul__(self, s):
        s = Q(s)
        return Vector(self.space, {p: s * c for p, c in self.coeffs.items()})

    def __eq__(self, other):
        return isinstance(other, Vector) and self.coeffs == other.coeffs

    def __repr__(self):
        terms = ["%s*e%s" % (c, self.space.labels[p]) for p, c in sorted(self.coeffs.items())]
        return " + ".join(terms) if terms else "0"


# ---- exact dense linear algebra on lists of Fraction rows ----

def rref(rows, ncols=None):
    """Reduced row echelon form; returns (rows, pivot columns)."""
    m = [[Q(x) for x in r] for r in rows]
    if ncols is None:
        ncols = len(m[0]) if m else 0
    pivots = []
    r = 0
    for c in range(ncols):
        piv = next((i for i in range(r, len(m)) if m[i][c]), None)
        if piv is None:
            continue
        m[r], m[piv] = m[piv], m[r]
        inv = 1 / m[r][c]
        m[r] = [x * inv for x in m[r]]
        for i in range(len(m)):
            if i != r and m[i][c]:
                f = m[i][c]
                m[i] = [a - f * b for a, b in zip(m[i], m[r])]
        pivots.append(c)
        r += 1
        if r == len(m):
            break
    return m[:r], pivots


def rank(rows):
    return len(rref(rows)[1])


def solve_matrix(A, b):
    """Solve A x = b exactly; returns one solution (free variables 0) or None."""
    n = len(A[0]) if A else 0
    if len(A) != len(b):
        raise DimensionError("rhs length %d vs %d rows" % (len(b), len(A)))
    aug = [list(row) + [Q(bi)] for row, bi in zip(A, b)]
    red, piv = rref(aug, n + 1)
    if n in piv:
        return None
    x = [Fraction(0)] * n
    for row, c in zip(red, piv):
        x[c] = row[n]
    return x


def nullspace(A, ncols):
    """Basis of {x : A x = 0}."""
    red, piv = rref(A, ncols) if A else ([], [])
    free = [c for c in range(ncols) if c not in piv]
    basis = []
    for f in free:
        x = [Fraction(0)] * ncols
        x[f] = Fraction(1)
        for row, c in zip(red, piv):
            x[c] = -row[f]
        basis.append(x)
    return basis


def _dense(vectors, dim):
    return [[v.coeffs.get(p, Fraction(0)) for p in range(dim)] for v in vectors]


def _check_same(vectors, space):
    for v in vectors:
        if v.space != space:
            raise DimensionError("vectors live in different spaces")


def solve_linear(vectors, target):
    """Coefficients c with sum c_i v_i = target, or None when infeasible."""
    space = target.space
    _check_same(vectors, space)
    if not vectors:
        return [] if not target else None
    cols = _dense(vectors, space.dim)
    A = [[cols[j][i] for j in range(len(vectors))] for i in range(space.dim)]
    b = [target.coeffs.get(i, Fraction(0)) for i in range(space.dim)]
    return solve_matrix(A, b)


class LinearMap:
    """Linear map between graded spaces given by images of basis positions."""

    def __init__(self, source, target, images):
        self.source = source
        self.target = target
        self.images = {p: (v if isinstance(v, Vector) else target.vector(v)) for p, v in images.items()}

    def __call__(self, v):
        out = self.target.zero()
        for p, c in v.coeffs.items():
            if p in self.images:
                out = out + c * self.images[p]
        return out

    def matrix(self):
        cols = [self.images.get(p, self.target.zero()) for p in range(self.source.dim)]
        return [[cols[j].coeffs.get(i, Fraction(0)) for j in range(self.source.dim)]
                for i in range(self.target.dim)]

    def is_degree_preserving(self):
        for p, v in self.images.items():
            d = v.degree()
            if v and d != self.source.deg[p]:
                return False
        return True


def kernel(f):
    M = f.matrix()
    return [Vector(f.source, dict(enumerate(x))) for x in nullspace(M, f.source.dim)]


def image(f):
    cols = [f(f.source.basis(p)) for p in range(f.source.dim)]
    return span_basis(cols)


def span_basis(vectors):
    """A basis (reduced echelon) of the span of the given vectors."""
    if not vectors:
        return []
    space = vectors[0].space
    _check_same(vectors, space)
    red, _ = rref(_dense(vectors, space.dim), space.dim)
    return [Vector(space, dict(enumerate(r))) for r in red]


def complement(subspace, space):
    """Basis vectors W (coordinate vectors) with span(subspace) + W = space, direct."""
    _check_same(subspace, space)
    _, piv = rref(_dense(subspace, space.dim), space.dim) if subspace else ([], [])
    return [space.basis(p) for p in range(space.dim) if p not in piv]


def coordinates(vectors, v):
    """Coordinates of v in a linearly independent list; raises if v not in the span."""
    c = solve_linear(vectors, v)
    if c is None:
        raise DimensionError("vector not in span")
    return c
