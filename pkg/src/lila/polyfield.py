"""Exterior calculus with polynomial coefficients on Q^m, n-plectic Lie n-algebras,
their Nijenhuis forms, and the standard Courant algebroid on T + T*.

Spaces here are infinite dimensional, so identities are checked on sampled
elements.  Vector valued forms are represented by `Op` objects (arity ->
callable) and the RN bracket is evaluated pointwise through the unshuffle
formula.
"""

import itertools
import random
from fractions import Fraction

from sympy.polys.domains import QQ
from sympy.polys.rings import ring

from .graded import solve_matrix
from .symforms import koszul_sign, unshuffle_arrangements


class DegreeBoundError(ValueError):
    pass


class NotHamiltonian(ValueError):
    pass


def _qq(c):
    if isinstance(c, Fraction):
        return QQ(c.numerator, c.denominator)
    return QQ(c)


def to_fraction(c):
    return Fraction(int(c.numerator), int(c.denominator))


class Calculus:
    """Polynomial ring Q[x_0..x_{m-1}] with a bound on total degree."""

    def __init__(self, m, max_degree=24):
        if m < 1:
            raise ValueError("need at least one variable")
        self.m = m
        self.max_degree = max_degree
        out = ring(",".join("x%d" % i for i in range(m)), QQ)
        self.R, self.x = out[0], list(out[1:])

    def poly(self, terms):
        """Polynomial from {exponent tuple: coefficient}."""
        return self.R({tuple(e): _qq(c) for e, c in terms.items() if c})

    def const(self, c):
        return self.R(_qq(c))

    def check(self, p):
        if self.max_degree is not None and p and total_degree(p) > self.max_degree:
            raise DegreeBoundError("polynomial degree %d exceeds %d" % (total_degree(p), self.max_degree))
        return p

    def random_poly(self, rng, degree=2, terms=3, lo=-3, hi=3):
        out = {}
        for _ in range(terms):
            e = [0] * self.m
            for _ in range(rng.randint(0, degree)):
                e[rng.randrange(self.m)] += 1
            out[tuple(e)] = out.get(tuple(e), 0) + rng.randint(lo, hi)
        return self.poly(out)

    def form(self, k, terms):
        return PolyForm(self, k, terms)

    def vector_field(self, comps):
        """Vector field from a list of m polynomials (or numbers)."""
        terms = {}
        for i, c in enumerate(comps):
            p = c if hasattr(c, "ring") else self.const(c)
            if p:
                terms[(i,)] = p
        return PolyMultiVector(self, 1, terms)

    def coordinate_field(self, i, c=1):
        return PolyMultiVector(self, 1, {(i,): self.const(c)})

    def dx(self, *idx):
        """dx_{i1} ^ ... ^ dx_{ik} with unit coefficient."""
        return PolyForm(self, len(idx), {tuple(idx): self.R.one})


def total_degree(p):
    return max((sum(e) for e in p.monoms()), default=0)


def _sort_sign(seq):
    if len(set(seq)) < len(seq):
        return 0, None
    inv = sum(1 for i in range(len(seq)) for j in range(i + 1, len(seq)) if seq[i] > seq[j])
    return (-1) ** inv, tuple(sorted(seq))


class _Graded:
    """Shared storage for forms and multivectors: {increasing index tuple: polynomial}."""

    def __init__(self, calc, k, terms=None):
        self.calc = calc
        self.k = k
        self.terms = {}
        for idx, p in (terms or {}).items():
            idx = tuple(idx)
            if len(idx) != k:
                raise ValueError("index tuple %r in a degree %d object" % (idx, k))
            s, K = _sort_sign(idx)
            if K is None:
                continue
            if not hasattr(p, "ring"):
                p = calc.const(p)
            cur = self.terms.get(K, calc.R.zero) + (p if s == 1 else -p)
            if cur:
                self.terms[K] = calc.check(cur)
            else:
                self.terms.pop(K, None)

    def _new(self, k, terms):
        return type(self)(self.calc, k, terms)

    def __add__(self, other):
        if other is None:
            return self
        if other.k != self.k:
            raise ValueError("adding objects of degree %d and %d" % (self.k, other.k))
        out = dict(self.terms)
        for K, p in other.terms.items():
            out[K] = out.get(K, self.calc.R.zero) + p
        return self._new(self.k, out)

    def __neg__(self):
        return self._new(self.k, {K: -p for K, p in self.terms.items()})

    def __sub__(self, other):
        return self + (-other)

    def __rmul__(self, c):
        """Multiply by a number or a polynomial."""
        c = c if hasattr(c, "ring") else _qq(c)
        return self._new(self.k, {K: c * p for K, p in self.terms.items()})

    def __eq__(self, other):
        if other is None:
            return not self.terms
        return isinstance(other, _Graded) and self.k == other.k and self.terms == other.terms

    def __hash__(self):
        return hash((self.k, frozenset(self.terms.items())))

    def __bool__(self):
        return bool(self.terms)

    def is_zero(self):
        return not self.terms

    def coefficient(self, *idx):
        s, K = _sort_sign(tuple(idx))
        if K is None:
            return self.calc.R.zero
        p = self.terms.get(K, self.calc.R.zero)
        return p if s == 1 else -p

    def __repr__(self):
        if not self.terms:
            return "0"
        sym = "dx" if isinstance(self, PolyForm) else "d"
        parts = []
        for K, p in sorted(self.terms.items()):
            basis = "^".join("%s%d" % (sym, i) for i in K) or "1"
            parts.append("(%s)*%s" % (p, basis))
        return " + ".join(parts)


class PolyForm(_Graded):
    """Differential k-form."""


class PolyMultiVector(_Graded):
    """Multivector field; k = 1 for vector fields."""

    def component(self, i):
        return self.terms.get((i,), self.calc.R.zero)


# ---- Cartan calculus ----

def d(a):
    calc = a.calc
    out = {}
    for K, p in a.terms.items():
        for j in range(calc.m):
            dp = p.diff(calc.x[j])
            if not dp:
                continue
            s, J = _sort_sign((j,) + K)
            if J is not None:
                out[J] = out.get(J, calc.R.zero) + (dp if s == 1 else -dp)
    return PolyForm(calc, a.k + 1, out)


def wedge(a, b):
    calc = a.calc
    out = {}
    for I, p in a.terms.items():
        for J, q in b.terms.items():
            s, K = _sort_sign(I + J)
            if K is not None:
                out[K] = out.get(K, calc.R.zero) + (p * q if s == 1 else -(p * q))
    return type(a)(calc, a.k + b.k, out)


def interior(X, a):
    """Contraction of a vector field into the first slot of a form."""
    if a.k == 0:
        return None
    calc = a.calc
    out = {}
    for K, p in a.terms.items():
        for r, i in enumerate(K):
            c = X.component(i)
            if c:
                rest = K[:r] + K[r + 1:]
                term = c * p
                out[rest] = out.get(rest, calc.R.zero) + (term if r % 2 == 0 else -term)
    return PolyForm(calc, a.k - 1, out)


def contract(fields, a):
    """i_{X_1} ... i_{X_k} a (the last field is contracted first); None if the degree runs out."""
    cur = a
    for X in reversed(fields):
        if cur is None or cur.k == 0:
            return None
        cur = interior(X, cur)
    return cur


def apply_field(X, f):
    """X(f) for a polynomial f."""
    calc = X.calc
    out = calc.R.zero
    for (i,), c in X.terms.items():
        out += c * f.diff(calc.x[i])
    return calc.check(out)


def lie_derivative(X, a):
    """L_X a = d i_X a + i_X d a."""
    first = d(interior(X, a)) if a.k > 0 else PolyForm(a.calc, a.k, {})
    return first + interior(X, d(a))


def field_bracket(X, Y):
    calc = X.calc
    comps = []
    for j in range(calc.m):
        comps.append(apply_field(X, Y.component(j)) - apply_field(Y, X.component(j)))
    return calc.vector_field(comps)


def function_form(calc, f):
    """A polynomial as a 0-form."""
    return PolyForm(calc, 0, {(): f} if f else {})


def cartan_identities(X, a):
    """(d d a = 0, i_X i_X a = 0) on one pair."""
    dd = d(d(a)).is_zero()
    ii = a.k < 2 or interior(X, interior(X, a)).is_zero()
    return dd, ii


def random_form(calc, k, rng, degree=2, density=0.6):
    terms = {}
    for K in itertools.combinations(range(calc.m), k):
        if rng.random() < density:
            p = calc.random_poly(rng, degree)
            if p:
                terms[K] = p
    return PolyForm(calc, k, terms)


def random_field(calc, rng, degree=1):
    return calc.vector_field([calc.random_poly(rng, degree) for _ in range(calc.m)])


# ---- n-plectic structures ----

class PlecticStructure:
    """Constant coefficient (n+1)-form on Q^m, checked nondegenerate."""

    def __init__(self, calc, n, omega):
        self.calc, self.n, self.omega = calc, n, omega
        if omega.k != n + 1:
            raise ValueError("an n-plectic form has degree n+1")
        if any(total_degree(p) > 0 for p in omega.terms.values()):
            raise ValueError("only constant coefficient forms are supported")
        self.rows = list(itertools.combinations(range(calc.m), n))
        # column i: coefficients of i_{d/dx_i} omega
        cols = []
        zero = (0,) * calc.m
        for i in range(calc.m):
            c = interior(calc.coordinate_field(i), omega)
            cols.append([to_fraction(c.coefficient(*J).get(zero, 0)) for J in self.rows])
        self.matrix = [[cols[i][r] for i in range(calc.m)] for r in range(len(self.rows))]
        from .graded import nullspace
        ker = nullspace(self.matrix, calc.m)
        if ker:
            raise ValueError("degenerate form: %r is in the kernel" % (ker[0],))
        self._cache = {}

    def hamiltonian_field(self, alpha):
        """The vector field chi with d alpha = -i_chi omega, or None."""
        if alpha in self._cache:
            return self._cache[alpha]
        calc = self.calc
        if alpha.k != self.n - 1:
            raise ValueError("Hamiltonian forms have degree n-1")
        da = d(alpha)
        monos = set()
        for p in da.terms.values():
            monos.update(p.monoms())
        comps = [calc.R.zero] * calc.m
        for mono in monos:
            rhs = [-to_fraction(da.coefficient(*J).get(mono, 0)) for J in self.rows]
            sol = solve_matrix(self.matrix, rhs)
            if sol is None:
                self._cache[alpha] = None
                return None
            for i, v in enumerate(sol):
                if v:
                    comps[i] += calc.poly({mono: v})
        chi = calc.vector_field(comps)
        self._cache[alpha] = chi
        return chi

    def chi(self, alpha):
        chi = self.hamiltonian_field(alpha)
        if chi is None:
            raise NotHamiltonian("form is not Hamiltonian")
        return chi

    def grade(self, a):
        return a.k - self.n

    def random_hamiltonian(self, rng, degree=2, tries=50):
        for _ in range(tries):
            a = random_form(self.calc, self.n - 1, rng, degree)
            if a and self.hamiltonian_field(a) is not None:
                return a
        raise NotHamiltonian("no Hamiltonian sample found")

    def random_element(self, rng, grade, degree=2):
        if grade == -1:
            return self.random_hamiltonian(rng, degree)
        for _ in range(20):
            a = random_form(self.calc, self.n + grade, rng, degree)
            if a:
                return a
        return a

    def sample_args(self, rng, arity, index, degree=2):
        """Even sample indices draw only Hamiltonian forms; odd ones mix in lower degrees."""
        if index % 2 == 0 or self.n < 2:
            grades = [-1] * arity
        else:
            grades = [-1 if rng.random() < 0.6 else rng.randint(-self.n, -2) for _ in range(arity)]
        return [self.random_element(rng, g, degree) for g in grades]



def hamiltonian_pair(alpha, P):
    """(alpha, chi_alpha) or (alpha, None) when no polynomial field exists."""
    return alpha, P.hamiltonian_field(alpha)


def volume_plectic(m, calc=None):
    """dx_0 ^ ... ^ dx_{m-1} as an (m-1)-plectic structure."""
    calc = calc or Calculus(m)
    return PlecticStructure(calc, m - 1, calc.dx(*range(m)))


# ---- operators: vector valued forms evaluated on samples ----

# bumped between samples so operator caches do not grow without bound
_GENERATION = [0]


def new_sample():
    _GENERATION[0] += 1


class Op:
    """Graded symmetric multilinear operator given by arity -> callable(list) -> element or None."""

    def __init__(self, degree, comps, grade, name=""):
        self.degree = degree
        self.comps = dict(comps)
        self.grade = grade
        self.name = name
        self.cache = {}
        self.generation = _GENERATION[0]

    def arities(self):
        return sorted(self.comps)

    def __call__(self, args):
        fn = self.comps.get(len(args))
        if fn is None:
            return None
        if self.generation != _GENERATION[0]:
            self.cache.clear()
            self.generation = _GENERATION[0]
        key = tuple(args)
        try:
            return self.cache[key]
        except KeyError:
            pass
        val = fn(list(args))
        if val is not None and val.is_zero():
            val = None
        self.cache[key] = val
        return val

    def _combine(self, other, s):
        if other.degree != self.degree and self.comps and other.comps:
            raise ValueError("adding operators of different degrees")
        comps = {}
        for k in set(self.comps) | set(other.comps):
            comps[k] = _sum_fn(self if k in self.comps else None, other if k in other.comps else None, s)
        return Op(self.degree, comps, self.grade, "(%s%s%s)" % (self.name, "+" if s > 0 else "-", other.name))

    def __add__(self, other):
        return self._combine(other, 1)

    def __sub__(self, other):
        return self._combine(other, -1)

    def __rmul__(self, c):
        c = Fraction(c)
        comps = {k: (lambda args, k=k: _scale(c, self(args))) for k in self.comps}
        return Op(self.degree, comps, self.grade, "%s*%s" % (c, self.name))


def _scale(c, v):
    if v is None or c == 0:
        return None
    return c * v if c != 1 else v


def _sum_fn(a, b, s):
    def fn(args):
        x = a(args) if a is not None else None
        y = b(args) if b is not None else None
        if y is not None and s < 0:
            y = -y
        if x is None:
            return y
        if y is None:
            return x
        return x + y
    return fn


def op_insert(K, L):
    """i_K L(x_1..x_{k+l-1}) = sum over unshuffles of e(s) L(K(x_s1..x_sk), x_s(k+1), ...)."""
    comps = {}
    pairs = {}
    for a in K.comps:
        for b in L.comps:
            pairs.setdefault(a + b - 1, []).append((a, b))
    grade = K.grade
    for r, ab in pairs.items():
        def fn(args, ab=ab):
            degs = [grade(x) for x in args]
            total = None
            for a, b in ab:
                for arr in unshuffle_arrangements(a, b - 1):
                    inner = K([args[i - 1] for i in arr[:a]])
                    if inner is None:
                        continue
                    val = L([inner] + [args[i - 1] for i in arr[a:]])
                    if val is None:
                        continue
                    if koszul_sign(arr, degs) < 0:
                        val = -val
                    total = val if total is None else total + val
            return total
        comps[r] = fn
    return Op(K.degree + L.degree, comps, grade, "i(%s)%s" % (K.name, L.name))


def op_bracket(K, L):
    a = op_insert(K, L)
    b = op_insert(L, K)
    out = a + b if (K.degree * L.degree) % 2 else a - b
    out.name = "[%s,%s]" % (K.name, L.name)
    return out


def op_zero(grade, degree=0):
    return Op(degree, {}, grade, "0")


# ---- the Lie n-algebra of an n-plectic structure ----

def bracket_sign(k, unsigned=False):
    """Sign in front of i_{chi_1}...i_{chi_k} omega.

    Without the extra (-1)^k the contraction formula fails [mu,mu]=0 under
    d alpha = -i_chi omega with first slot contraction; the factor keeps l_1 and l_2.
    """
    s = (-1) ** (k // 2 + 1) if k % 2 == 0 else (-1) ** ((k - 1) // 2)
    return s if unsigned else s * (-1) ** k


def lie_n_bracket(k, args, P, unsigned=False):
    """l_k on elements (forms of degree n+grade); returns a PolyForm or None."""
    n = P.n
    if k != len(args):
        raise ValueError("l_%d needs %d arguments" % (k, k))
    if k == 1:
        a = args[0]
        if P.grade(a) == -1:
            return None
        out = d(a)
        return out if P.grade(a) % 2 == 0 else -out
    if any(P.grade(a) != -1 for a in args):
        return None
    if k > n + 1:
        return None
    fields = [P.chi(a) for a in args]
    val = contract(fields, P.omega)
    if val is None:
        return None
    return val if bracket_sign(k, unsigned) == 1 else -val


def structure(P, flip=None, unsigned=False):
    """mu = l_1 + ... + l_{n+1}; `flip` negates one component (mutation control)."""
    comps = {}
    for k in range(1, P.n + 2):
        if k == flip:
            comps[k] = (lambda args, k=k: _neg(lie_n_bracket(k, args, P, unsigned)))
        else:
            comps[k] = (lambda args, k=k: lie_n_bracket(k, args, P, unsigned))
    return Op(1, comps, P.grade, "mu" if flip is None else "mu*")


def _neg(v):
    return None if v is None else -v


def euler(P):
    """S(x) = -|x| x."""
    return Op(0, {1: lambda args: _scale(-P.grade(args[0]), args[0])}, P.grade, "S")


def eta_tilde(eta, i, args, P):
    """i_{chi_1} ... i_{chi_i} eta when every argument has degree -1, else zero."""
    if len(args) != i:
        raise ValueError("eta_tilde_%d takes %d arguments" % (i, i))
    if any(P.grade(a) != -1 for a in args):
        return None
    return contract([P.chi(a) for a in args], eta)


def eta_op(eta, i, P, name="eta"):
    if not 2 <= i <= P.n:
        raise ValueError("i must lie in 2..n")
    if eta.k != P.n:
        raise ValueError("eta must be an n-form")
    return Op(0, {i: lambda args: eta_tilde(eta, i, args, P)}, P.grade, "%s%d" % (name, i))


def d_after(op, P):
    """d o op, i.e. x -> d(op(x)) (no sign)."""
    comps = {k: (lambda args, k=k: _apply_d(op(args))) for k in op.comps}
    return Op(op.degree + 1, comps, P.grade, "d.%s" % op.name)


def _apply_d(v):
    return None if v is None else d(v)


# ---- sampling ----

def compare_ops(lhs, rhs, sampler, samples, seed, arities):
    """Evaluate lhs and rhs on sampled tuples.

    Returns (ok, witness or None, samples used, samples where both sides were nonzero).
    """
    rng = random.Random(seed)
    nontrivial = 0
    for s in range(samples):
        r = arities[s % len(arities)]
        args = sampler.sample_args(rng, r, s)
        new_sample()
        a, b = lhs(args), rhs(args)
        if not _same(a, b):
            return False, {"sample": s, "arity": r, "grades": [sampler.grade(x) for x in args],
                           "args": [repr(x) for x in args], "lhs": repr(a), "rhs": repr(b)}, s + 1, nontrivial
        if a is not None and not a.is_zero():
            nontrivial += 1
    return True, None, samples, nontrivial


def _same(a, b):
    if a is None or a.is_zero():
        return b is None or b.is_zero()
    if b is None:
        return a.is_zero()
    return a == b


class SampledReport:
    """Outcome of a sampled identity check; a pass means "consistent with", never "proved"."""

    def __init__(self, identity, ok, checks, witness=None):
        self.identity, self.ok, self.checks, self.witness = identity, ok, checks, witness

    def __bool__(self):
        return self.ok

    def as_dict(self):
        out = {"identity": self.identity, "verdict": "pass" if self.ok else "fail",
               "checks": [dict(c) for c in self.checks]}
        if self.witness is not None:
            out["witness"] = self.witness
        return out


def random_n_form(P, rng, degree=1):
    for _ in range(20):
        eta = random_form(P.calc, P.n, rng, degree, density=0.8)
        if not eta.is_zero():
            return eta
    return PolyForm(P.calc, P.n, {tuple(range(P.n)): 1})


def _arities(*ops, limit=None):
    out = sorted(set().union(*(o.arities() for o in ops)))
    if limit is not None:
        out = [r for r in out if r <= limit]
    return out or [1]


def _zero_like(op):
    return Op(op.degree, {}, op.grade, "0")


def _checks_jacobi(P, rng, flip=None, unsigned=False):
    mu = structure(P, flip, unsigned)
    lhs = op_bracket(mu, mu)
    return [("[mu,mu]=0", lhs, _zero_like(lhs), _arities(lhs, limit=P.n + 2))]


def _eta_family(P, rng, count=1):
    return [random_n_form(P, rng) for _ in range(count)]


def _eta_checks(item):
    def build(P, rng):
        (eta,) = _eta_family(P, rng)
        mu = structure(P)
        l = {k: Op(1, {k: mu.comps[k]}, P.grade, "l%d" % k) for k in mu.comps}
        out = []
        for i in range(2, P.n + 1):
            e = eta_op(eta, i, P)
            z = Op(0, {}, P.grade, "0")
            if item == 1:
                out.append(("eta%d grades" % i, _GradeProbe(e, i, P), z, [i]))
            elif item == 2:
                lhs = Op(0, {i: lambda args, e=e: e([l[1]([args[0]])] + args[1:]) if l[1]([args[0]]) is not None else None},
                         P.grade, "eta(l1 a,...)")
                out.append(("eta%d(l1 a1,...)=0" % i, lhs, z, [i]))
            elif item == 3:
                for m in range(3, P.n + 2):
                    b = op_bracket(e, l[m])
                    out.append(("[eta%d,l%d]=0" % (i, m), b, _zero_like(b), _arities(b, limit=P.n + 3)))
            elif item == 4:
                b = op_bracket(e, l[1])
                out.append(("[eta%d,l1]=d.eta%d" % (i, i), b, d_after(e, P), [i]))
            elif item == "4signed":
                b = op_bracket(e, l[1])
                out.append(("[eta%d,l1]=(-1)^%d d.eta%d" % (i, i, i), b, ((-1) ** i) * d_after(e, P), [i]))
            elif item == 5:
                b = op_bracket(e, l[2])
                out.append(("[eta%d,l2]=-i_l2 eta%d" % (i, i), b, Fraction(-1) * op_insert(l[2], e), [i + 1]))
            elif item == 6:
                b = op_bracket(e, op_bracket(e, l[1]))
                out.append(("[eta%d,[eta%d,l1]]=0" % (i, i), b, _zero_like(b), _arities(b, limit=P.n + 3)))
            elif item == 7:
                b = op_bracket(e, op_bracket(e, l[2]))
                out.append(("[eta%d,[eta%d,l2]]=0" % (i, i), b, _zero_like(b), _arities(b, limit=P.n + 3)))
        return out
    return build


class _GradeProbe:
    """Returns a nonzero marker when eta_i is nonzero off E_-1 or lands outside E_-i."""

    def __init__(self, e, i, P):
        self.e, self.i, self.P = e, i, P

    def arities(self):
        return [self.i]

    def __call__(self, args):
        val = self.e(args)
        if val is None:
            return None
        bad = any(self.P.grade(a) != -1 for a in args) or self.P.grade(val) != -self.i
        return val if bad else None


def _nijenhuis_checks(P, rng):
    (eta,) = _eta_family(P, rng)
    mu = structure(P)
    S = euler(P)
    out = []
    for i in range(2, P.n + 1):
        e = eta_op(eta, i, P)
        N = S + e
        K = S + 2 * e
        lhs = op_bracket(N, op_bracket(N, mu))
        rhs = op_bracket(K, mu)
        ar = _arities(lhs, rhs, limit=P.n + 2)
        out.append(("[N,[N,mu]]=[K,mu] (i=%d)" % i, lhs, rhs, ar))
        c = op_bracket(N, K)
        out.append(("[N,K]=0 (i=%d)" % i, c, _zero_like(c), _arities(c, limit=P.n + 2)))
        l1 = Op(1, {1: mu.comps[1]}, P.grade, "l1")
        l2 = Op(1, {2: mu.comps[2]}, P.grade, "l2")
        dm = mu + op_bracket(e, l1) + op_bracket(e, l2)
        out.append(("[N,mu]=mu+[eta,l1]+[eta,l2] (i=%d)" % i, op_bracket(N, mu), dm, ar))
    return out


def _compatible_checks(P, rng, strict=False):
    eta, xi = _eta_family(P, rng, 2)
    mu = structure(P)
    S = euler(P)
    out = []
    for i in range(2, P.n + 1):
        for j in range(2, P.n + 1):
            N1, N2 = S + eta_op(eta, i, P), S + eta_op(xi, j, P, "xi")
            K1, N2K = S + 2 * eta_op(eta, i, P), S + 2 * eta_op(xi, j, P, "xi")
            if strict:
                c1 = op_bracket(N1, op_bracket(N2, mu)) + op_bracket(N2, op_bracket(N1, mu))
                out.append(("[N1,[N2,mu]]+[N2,[N1,mu]]=0 (%d,%d)" % (i, j), c1, _zero_like(c1),
                            _arities(c1, limit=P.n + 2)))
                c2 = op_bracket(N1, N2K) + op_bracket(N2, K1)
                out.append(("[N1,K2]+[N2,K1]=0 (%d,%d)" % (i, j), c2, _zero_like(c2), _arities(c2, limit=P.n + 2)))
            else:
                c = op_bracket(N1, N2)
                out.append(("[N1,N2]=0 (%d,%d)" % (i, j), c, _zero_like(c), _arities(c, limit=P.n + 2)))
    return out


def _sum_op(ops, grade):
    out = ops[0]
    for o in ops[1:]:
        out = out + o
    return out


def _eta_sum_checks(P, rng, family=1, signed=True):
    etas = _eta_family(P, rng, family)
    mu = structure(P)
    S = euler(P)
    tails = [eta_op(eta, i, P, "eta%d_" % j) for j, eta in enumerate(etas) for i in range(2, P.n + 1)]
    T = _sum_op(tails, P.grade)
    N = S + T
    K = S + 2 * T
    lhs = op_bracket(N, op_bracket(N, mu))
    rhs = op_bracket(K, mu)
    ar = _arities(lhs, rhs, limit=P.n + 2)
    out = [("[N,[N,mu]]=[K,mu]", lhs, rhs, ar)]
    c = op_bracket(N, K)
    out.append(("[N,K]=0", c, _zero_like(c), _arities(c, limit=P.n + 2)))
    if family == 1:
        eta = etas[0]
        l2 = Op(1, {2: mu.comps[2]}, P.grade, "l2")
        comps = {1: mu.comps[1]}
        for i in range(2, P.n + 2):
            parts = [Op(1, {i: mu.comps[i]}, P.grade, "l%d" % i)]
            if i <= P.n:
                dterm = d_after(eta_op(eta, i, P), P)
                parts.append(((-1) ** i if signed else 1) * dterm)
            if i - 1 >= 2:
                parts.append(Fraction(-1) * op_insert(l2, eta_op(eta, i - 1, P)))
            comps[i] = _sum_op(parts, P.grade)
        closed = Op(1, {i: (lambda args, o=o: o(args)) for i, o in comps.items() if i > 1}, P.grade, "formula")
        closed.comps[1] = comps[1]
        out.append(("[N,mu]=closed formula", op_bracket(N, mu), closed, ar))
    return out


_REGISTRY = {
    "jacobi": ("Lie n-algebra Jacobi identity [mu,mu]=0", lambda P, rng: _checks_jacobi(P, rng)),
    "jacobi_unsigned": ("[mu,mu]=0 without the (-1)^k bracket sign (fails)",
                       lambda P, rng: _checks_jacobi(P, rng, unsigned=True)),
    "mutated_jacobi": ("control: top bracket sign flipped; expected to FAIL",
                       lambda P, rng: _checks_jacobi(P, rng, flip=P.n + 1)),
    "eta_grades": ("eta_i vanishes off E_-1 and takes values in E_-i", _eta_checks(1)),
    "eta_kills_l1": ("eta_i(l1 a1, a2, ...) = 0", _eta_checks(2)),
    "eta_higher": ("[eta_i, l_m] = 0 for m >= 3", _eta_checks(3)),
    "eta_l1_unsigned": ("[eta_i, l1] = d o eta_i (no sign; fails for odd i)", _eta_checks(4)),
    "eta_l1": ("[eta_i, l1] = (-1)^i d o eta_i", _eta_checks("4signed")),
    "eta_l2": ("[eta_i, l2] = -i_{l2} eta_i", _eta_checks(5)),
    "eta_l1_twice": ("[eta_i, [eta_i, l1]] = 0", _eta_checks(6)),
    "eta_l2_twice": ("[eta_i, [eta_i, l2]] = 0", _eta_checks(7)),
    "nijenhuis_eta": ("S + eta_i Nijenhuis with square S + 2 eta_i; deformed structure", _nijenhuis_checks),
    "compatible_eta": ("S + eta_i and S + xi_j commute", lambda P, rng: _compatible_checks(P, rng)),
    "compatible_eta_strict": ("S + eta_i, S + xi_j compatible in the two-equation sense (expected to FAIL)",
                              lambda P, rng: _compatible_checks(P, rng, strict=True)),
    "eta_sum": ("S + sum_i eta_i Nijenhuis; closed formula with (-1)^i d o eta_i",
                    lambda P, rng: _eta_sum_checks(P, rng)),
    "eta_sum_unsigned": ("closed formula with d o eta_i and no sign (fails when n >= 3)",
                            lambda P, rng: _eta_sum_checks(P, rng, signed=False)),
    "eta_family": ("S + sum_j sum_i eta^j_i Nijenhuis for a family of two n-forms",
                       lambda P, rng: _eta_sum_checks(P, rng, family=2)),
    "hamiltonian_closure": ("{a,b} is Hamiltonian with field [chi_b, chi_a]", None),
    "hamiltonian_closure_swapped": ("{a,b} is Hamiltonian with field [chi_a, chi_b] (swapped order; fails)", None),
}


def identities():
    """Registered identity ids with one-line descriptions."""
    return {k: v[0] for k, v in _REGISTRY.items()}


def sampled_verify(identity_id, P, samples=50, seed=0):
    if identity_id not in _REGISTRY:
        raise KeyError("unknown identity %r" % identity_id)
    rng = random.Random(seed)
    if identity_id.startswith("hamiltonian_closure"):
        return _closure(P, samples, rng, swapped=identity_id.endswith("swapped"))
    checks = _REGISTRY[identity_id][1](P, rng)
    results, witness, ok = [], None, True
    for k, (label, lhs, rhs, arities) in enumerate(checks):
        good, wit, used, nonzero = compare_ops(lhs, rhs, P, samples, seed * 1000 + k, arities)
        results.append({"check": label, "ok": good, "samples": used, "nonzero": nonzero})
        if not good and witness is None:
            witness = dict(wit, check=label)
        ok = ok and good
    return SampledReport(identity_id, ok, results, witness)


def _closure(P, samples, rng, swapped=False):
    for s in range(samples):
        a, b = P.random_hamiltonian(rng, 2), P.random_hamiltonian(rng, 2)
        new_sample()
        br = lie_n_bracket(2, [a, b], P) or PolyForm(P.calc, P.n - 1, {})
        chi = P.hamiltonian_field(br)
        want = field_bracket(P.chi(a), P.chi(b)) if swapped else field_bracket(P.chi(b), P.chi(a))
        if chi is None or chi != want:
            name = "hamiltonian_closure" + ("_swapped" if swapped else "")
            return SampledReport(name, False, [{"check": "closure", "ok": False, "samples": s + 1}],
                                 {"sample": s, "args": [repr(a), repr(b)], "lhs": repr(chi), "rhs": repr(want)})
    name = "hamiltonian_closure" + ("_swapped" if swapped else "")
    return SampledReport(name, True, [{"check": "closure", "ok": True, "samples": samples}])


# ---- standard Courant algebroid on T + T* over Q^m ----

class CourantSection:
    """X + xi with X a vector field and xi a 1-form."""

    def __init__(self, X, xi):
        self.X, self.xi = X, xi
        self.calc = X.calc

    def components(self):
        m = self.calc.m
        return [self.X.component(i) for i in range(m)] + [self.xi.coefficient(i) for i in range(m)]

    @classmethod
    def from_components(cls, calc, comps):
        m = calc.m
        X = calc.vector_field(comps[:m])
        xi = PolyForm(calc, 1, {(i,): comps[m + i] for i in range(m)})
        return cls(X, xi)

    def __add__(self, other):
        return CourantSection(self.X + other.X, self.xi + other.xi)

    def __neg__(self):
        return CourantSection(-self.X, -self.xi)

    def __sub__(self, other):
        return self + (-other)

    def __rmul__(self, c):
        return CourantSection(self.X.__rmul__(c), self.xi.__rmul__(c))

    def __eq__(self, other):
        return isinstance(other, CourantSection) and self.X == other.X and self.xi == other.xi

    def __hash__(self):
        return hash((self.X, self.xi))

    def is_zero(self):
        return self.X.is_zero() and self.xi.is_zero()

    def __repr__(self):
        return "(%r) + (%r)" % (self.X, self.xi)


class StandardCourant:
    """Dorfman bracket X+xi o Y+eta = [X,Y] + L_X eta - i_Y d xi, anchor the projection,
    pairing <X+xi, Y+eta> = (i_X eta + i_Y xi)/2 and D f = (0, 2 df) so that <D f, e> = rho(e) f.

    Elements of the associated Lie 2-algebra: sections (degree -1) and functions,
    stored as 0-forms (degree -2).
    """

    def __init__(self, m, calc=None, l3_sign=-1, degree=2):
        self.calc = calc or Calculus(m)
        self.m = self.calc.m
        self.l3_sign = l3_sign
        self.degree = degree

    # -- algebroid data --
    def dorfman(self, a, b):
        X = field_bracket(a.X, b.X)
        xi = lie_derivative(a.X, b.xi) - interior(b.X, d(a.xi))
        return CourantSection(X, xi)

    def anchor(self, a):
        return a.X

    def pairing(self, a, b):
        half = QQ(1, 2)
        return half * (_pair(a.X, b.xi) + _pair(b.X, a.xi))

    def D(self, f):
        df = d(function_form(self.calc, f))
        return CourantSection(PolyMultiVector(self.calc, 1, {}), 2 * df)

    def skew(self, a, b):
        return QQ(1, 2) * (self.dorfman(a, b) - self.dorfman(b, a))

    def T(self, a, b, c):
        """(1/6)<[a,b],c> + cyclic."""
        tot = self.pairing(self.skew(a, b), c) + self.pairing(self.skew(b, c), a) + self.pairing(self.skew(c, a), b)
        return QQ(1, 6) * tot

    def scalar(self, f, a):
        return CourantSection(a.X.__rmul__(f), a.xi.__rmul__(f))

    # -- sampling --
    def grade(self, x):
        return -1 if isinstance(x, CourantSection) else -2

    def random_function(self, rng):
        for _ in range(20):
            f = self.calc.random_poly(rng, self.degree)
            if f:
                return f
        return self.calc.x[0]

    def random_section(self, rng):
        comps = [self.calc.random_poly(rng, self.degree - 1 if i < self.m else self.degree, terms=2)
                 for i in range(2 * self.m)]
        a = CourantSection.from_components(self.calc, comps)
        return a if not a.is_zero() else CourantSection(self.calc.coordinate_field(0), PolyForm(self.calc, 1, {}))

    def sample_args(self, rng, arity, index):
        out = []
        for _ in range(arity):
            if index % 2 == 0 or rng.random() < 0.6:
                out.append(self.random_section(rng))
            else:
                out.append(function_form(self.calc, self.random_function(rng)))
        return out

    # -- Lie 2-algebra --
    def structure(self, l3_sign=None):
        s = self.l3_sign if l3_sign is None else l3_sign
        return courant_lie2(self, self.dorfman, self.D, lambda a, b: self.pairing(a, b), s)

    def leibniz_check(self, samples=30, seed=0):
        """X o (Y o Z) = (X o Y) o Z + Y o (X o Z) on samples; returns (ok, witness)."""
        rng = random.Random(seed)
        for s in range(samples):
            a, b, c = (self.random_section(rng) for _ in range(3))
            lhs = self.dorfman(a, self.dorfman(b, c))
            rhs = self.dorfman(self.dorfman(a, b), c) + self.dorfman(b, self.dorfman(a, c))
            if lhs != rhs:
                return False, {"sample": s, "args": [repr(a), repr(b), repr(c)]}
        return True, None

    def axioms_check(self, samples=20, seed=0):
        """Remaining Dorfman axioms (anchor, Leibniz in the second slot, X o X, invariance)."""
        rng = random.Random(seed)
        for s in range(samples):
            a, b, c = (self.random_section(rng) for _ in range(3))
            f = self.random_function(rng)
            checks = {
                "anchor": self.anchor(self.dorfman(a, b)) == field_bracket(a.X, b.X),
                "function_leibniz": self.dorfman(a, self.scalar(f, b))
                == self.scalar(f, self.dorfman(a, b)) + self.scalar(apply_field(a.X, f), b),
                "square": self.dorfman(a, a) == QQ(1, 2) * self.D(self.pairing(a, a)),
                "invariance": apply_field(a.X, self.pairing(b, c))
                == self.pairing(self.dorfman(a, b), c) + self.pairing(b, self.dorfman(a, c)),
                "D_pairing": self.pairing(self.D(f), a) == apply_field(a.X, f),
            }
            bad = [k for k, v in checks.items() if not v]
            if bad:
                return False, {"sample": s, "failed": bad}
        return True, None

    # -- (1,1)-tensors: constant matrices on the basis (d/dx_i, dx_i) --
    def apply_matrix(self, N, a):
        comps = a.components()
        k = 2 * self.m
        out = []
        for r in range(k):
            acc = self.calc.R.zero
            for c in range(k):
                if N[r][c]:
                    acc += _qq(N[r][c]) * comps[c]
            out.append(acc)
        return CourantSection.from_components(self.calc, out)

    def adjoint(self, N):
        """N* with <N a, b> = <a, N* b>; the pairing swaps the two halves."""
        m = self.m
        k = 2 * m
        swap = lambda i: i + m if i < m else i - m
        return [[Fraction(N[swap(c)][swap(r)]) for c in range(k)] for r in range(k)]

    def deformed_dorfman(self, N):
        def circ(a, b):
            Na, Nb = self.apply_matrix(N, a), self.apply_matrix(N, b)
            return self.dorfman(Na, b) + self.dorfman(a, Nb) - self.apply_matrix(N, self.dorfman(a, b))
        return circ


def _pair(X, xi):
    out = X.calc.R.zero
    for (i,), c in X.terms.items():
        out += c * xi.coefficient(i)
    return out


def _as_function(x):
    if isinstance(x, CourantSection):
        return None
    return x.terms.get((), x.calc.R.zero)


def courant_lie2(C, circ, D, pairing, l3_sign):
    """l1 f = D f, l2 = skew bracket / half pairing with D f, l3 = l3_sign * T."""
    calc = C.calc
    F = lambda f: function_form(calc, f)

    def l1(args):
        f = _as_function(args[0])
        return None if f is None else D(f)

    def l2(args):
        a, b = args
        fa, fb = _as_function(a), _as_function(b)
        if fa is not None and fb is not None:
            return None
        if fa is None and fb is None:
            return QQ(1, 2) * (circ(a, b) - circ(b, a))
        X, f = (a, fb) if fa is None else (b, fa)
        return F(QQ(1, 2) * pairing(X, D(f)))

    def l3(args):
        if any(_as_function(x) is not None for x in args):
            return None
        a, b, c = args
        sk = lambda u, v: QQ(1, 2) * (circ(u, v) - circ(v, u))
        T = QQ(1, 6) * (pairing(sk(a, b), c) + pairing(sk(b, c), a) + pairing(sk(c, a), b))
        return F(_qq(l3_sign) * T)

    return Op(1, {1: l1, 2: l2, 3: l3}, C.grade, "mu")


def courant_jacobi(C, samples=40, seed=0, l3_sign=None):
    mu = C.structure(l3_sign)
    b = op_bracket(mu, mu)
    ok, wit, used, _ = compare_ops(b, _zero_like(b), C, samples, seed, [1, 2, 3, 4])
    return ok, wit


def courant_operator(C, lam, N, alpha=None):
    """Degree 0 form lam on functions, N on sections, alpha (skew constant matrix) on pairs of sections."""
    calc = C.calc
    lam_p = lam if hasattr(lam, "ring") else calc.const(lam)

    def one(args):
        x = args[0]
        f = _as_function(x)
        if f is None:
            return C.apply_matrix(N, x)
        return function_form(calc, lam_p * f)

    comps = {1: one}
    if alpha is not None and any(any(r) for r in alpha):
        def two(args):
            a, b = args
            if _as_function(a) is not None or _as_function(b) is not None:
                return None
            ca, cb = a.components(), b.components()
            tot = calc.R.zero
            for r, row in enumerate(alpha):
                for c, v in enumerate(row):
                    if v:
                        tot += _qq(v) * ca[r] * cb[c]
            return function_form(calc, tot)
        comps[2] = two
    return Op(0, comps, C.grade, "N")


def courant_deformation_check(C, lam, N, alpha=None, samples=30, seed=0):
    """Constraints forced on N = lam + N + alpha when [N, mu] comes from a Courant structure.

    Clauses: casimir (D lam = 0), alpha_kills_D (alpha(X, D f) = 0), n_plus_nstar
    (N + N* = lam Id), mainbody (function Leibniz rule of the deformed binary bracket),
    pairing_compat (l'2(X,f) = <X, l'1 f>/2) and, when those hold, deformed_matches
    ([N, mu] equals the structure built from o^N, rho o N and the same pairing).
    """
    calc = C.calc
    lam_p = lam if hasattr(lam, "ring") else calc.const(lam)
    mu = C.structure()
    Nop = courant_operator(C, lam_p, N, alpha)
    dm = op_bracket(Nop, mu)
    rng = random.Random(seed)
    clauses, witness = {}, None

    clauses["casimir"] = C.D(lam_p).is_zero()
    k = 2 * C.m
    Nstar = C.adjoint(N)
    lam_const = total_degree(lam_p) == 0
    lam_val = to_fraction(lam_p.get((0,) * C.m, 0)) if lam_const else None
    clauses["n_plus_nstar"] = lam_const and all(
        Fraction(N[r][c]) + Nstar[r][c] == (lam_val if r == c else 0) for r in range(k) for c in range(k))

    def fail(name, info):
        nonlocal witness
        clauses[name] = False
        if witness is None:
            witness = dict(info, clause=name)

    alpha_op = Op(0, {2: Nop.comps[2]}, C.grade, "alpha") if 2 in Nop.comps else None
    clauses["alpha_kills_D"] = True
    clauses["mainbody"] = True
    clauses["pairing_compat"] = True
    for s in range(samples):
        new_sample()
        X, Y = C.random_section(rng), C.random_section(rng)
        f = C.random_function(rng)
        Ff = function_form(calc, f)
        if alpha_op is not None and clauses["alpha_kills_D"]:
            v = alpha_op([X, C.D(f)])
            if v is not None and not v.is_zero():
                fail("alpha_kills_D", {"sample": s, "X": repr(X), "f": str(f), "value": repr(v)})
        l1f = dm([Ff])
        l2Xf = dm([X, Ff])
        if clauses["pairing_compat"]:
            want = C.pairing(X, l1f) * QQ(1, 2) if l1f is not None else calc.R.zero
            got = _as_function(l2Xf) if l2Xf is not None else calc.R.zero
            if got != want:
                fail("pairing_compat", {"sample": s, "X": repr(X), "f": str(f), "lhs": str(got), "rhs": str(want)})
        if clauses["mainbody"]:
            lhs = dm([X, C.scalar(f, Y)])
            l2XY = dm([X, Y])
            rhs = _sec(C, l2XY)
            rhs = C.scalar(f, rhs)
            coef = _as_function(l2Xf) if l2Xf is not None else calc.R.zero
            rhs = rhs + C.scalar(2 * coef, Y)
            if l1f is not None:
                rhs = rhs - C.scalar(QQ(1, 2) * C.pairing(X, Y), l1f)
            if _sec(C, lhs) != rhs:
                fail("mainbody", {"sample": s, "X": repr(X), "Y": repr(Y), "f": str(f)})
    ok = all(clauses.values())
    detail = {}
    if ok:
        ref = courant_lie2(C, C.deformed_dorfman(N), lambda f: C.apply_matrix(_lam_minus(lam_val, N, k), C.D(f)),
                           C.pairing, C.l3_sign)
        good, wit, _, _ = compare_ops(dm, ref, C, samples, seed + 1, [1, 2, 3])
        clauses["deformed_matches"] = good
        if not good:
            witness = dict(wit, clause="deformed_matches")
        ok = good
    return Verdict(ok, clauses, witness, detail)


def _lam_minus(lam, N, k):
    return [[(lam if r == c else 0) - Fraction(N[r][c]) for c in range(k)] for r in range(k)]


def _sec(C, x):
    if x is None:
        return CourantSection(PolyMultiVector(C.calc, 1, {}), PolyForm(C.calc, 1, {}))
    return x


from .gerstenhaber import Verdict  # noqa: E402


def courant_nijenhuis_sampled(C, lam, N, gamma, K, samples=30, seed=0):
    """[N,[N,mu]] = [K,mu] and [N,K] = 0 for lam + N with square gamma + K, on samples."""
    mu = C.structure()
    Nop, Kop = courant_operator(C, lam, N), courant_operator(C, gamma, K)
    lhs = op_bracket(Nop, op_bracket(Nop, mu))
    rhs = op_bracket(Kop, mu)
    ok1, w1, _, _ = compare_ops(lhs, rhs, C, samples, seed, [1, 2, 3])
    c = op_bracket(Nop, Kop)
    ok2, w2, _, _ = compare_ops(c, _zero_like(c), C, samples, seed + 1, [1])
    clauses = {"square": ok1, "commute": ok2}
    return Verdict(ok1 and ok2, clauses, w1 or w2, {})
