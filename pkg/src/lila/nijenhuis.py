"""Nijenhuis deformations of (curved) L-infinity structures."""

from dataclasses import dataclass, field
from fractions import Fraction
from math import ceil

from .graded import Vector, Q, solve_matrix, span_basis, complement, solve_linear, kernel, image, LinearMap
from .symforms import (FormalSum, SymForm, as_sum, rn_bracket, identity_form, _eval_tuple,
                       canonical_tuples, WindowError)
from .linfty import Report, check_linfty, Lie2Quadruple, ce_differential, _add_dicts


def euler_map(space, cap=None):
    """S(X) = -|X| X."""
    ent = {(p,): {p: Fraction(-d)} for p, d in enumerate(space.deg) if d}
    return SymForm(space, 1, 0, ent, cap=cap)


def _zero_degree(N):
    N = as_sum(N)
    if N.entries and N.degree != 0:
        raise ValueError("Nijenhuis candidates have map-degree 0, got %d" % N.degree)
    return N


def deform(mu, N, times=1):
    """mu^{N,...,N}: `times` nested brackets [N, [N, ... mu]]."""
    N = _zero_degree(N)
    cur = as_sum(mu)
    for _ in range(times):
        cur = rn_bracket(N, cur)
    return cur


def _witness(form):
    if not form.entries:
        return None
    t = min(form.entries, key=lambda t: (len(t), t))
    return form.labels(t)


def is_weak_nijenhuis(N, mu):
    """[mu, [N, [N, mu]]] = 0; also checks that [N, mu] is L-infinity and records agreement."""
    N = _zero_degree(N)
    mu = as_sum(mu)
    muN = rn_bracket(N, mu)
    obstruction = rn_bracket(mu, rn_bracket(N, muN))
    ok = not obstruction.entries
    deformed = check_linfty(muN)
    return Report(ok, _witness(obstruction), None,
                  {"deformed_is_linfty": deformed.ok, "agree": deformed.ok == ok})


@dataclass
class NijenhuisReport:
    ok: bool
    square_ok: bool
    commute_ok: bool
    coboundary_only: bool
    witness: tuple = None
    detail: dict = field(default_factory=dict)

    def __bool__(self):
        return self.ok

    def as_dict(self):
        return {"verdict": "pass" if self.ok else "fail", "square": self.square_ok,
                "commute": self.commute_ok, "coboundary_only": self.coboundary_only,
                "witness": self.witness, **self.detail}


def is_nijenhuis(N, mu, K):
    """[N, [N, mu]] = [K, mu] and [N, K] = 0."""
    N, K = _zero_degree(N), _zero_degree(K)
    mu = as_sum(mu)
    lhs = rn_bracket(N, rn_bracket(N, mu))
    rhs = rn_bracket(K, mu)
    diff = lhs - rhs
    sq = not diff.entries
    comm_form = rn_bracket(N, K)
    cm = not comm_form.entries
    w = _witness(diff) if not sq else _witness(comm_form)
    return NijenhuisReport(sq and cm, sq, cm, sq and not cm, w)


def is_coboundary_nijenhuis(N, mu, K):
    return is_nijenhuis(N, mu, K).square_ok


def find_square(N, mu, cap=None):
    """Search K = a N + b S + c Id with [N, [N, mu]] = [K, mu] and [N, K] = 0."""
    N = _zero_degree(N)
    mu = as_sum(mu)
    E = mu.space
    S = euler_map(E, cap=cap or N.cap)
    I = identity_form(E, cap=cap or N.cap)
    target = rn_bracket(N, rn_bracket(N, mu))
    basis = [rn_bracket(N, mu), rn_bracket(S, mu), rn_bracket(I, mu)]
    keys = set()
    for f in basis + [target]:
        for t, v in f.entries.items():
            for y in v:
                keys.add((t, y))
    keys = sorted(keys, key=repr)
    A = [[f.entries.get(t, {}).get(y, Fraction(0)) for f in basis] for t, y in keys]
    b = [target.entries.get(t, {}).get(y, Fraction(0)) for t, y in keys]
    sol = solve_matrix(A, b) if keys else [Fraction(0)] * 3
    if sol is None:
        return None
    a, bb, c = sol
    K = a * N + bb * S + c * I
    if rn_bracket(N, K).entries:
        return None
    return K


@dataclass
class Hierarchy:
    levels: list
    flags: dict

    @property
    def ok(self):
        return all(self.flags.values())


def hierarchy(mu, N, K, depth):
    """mu_0 = mu, mu_{k+1} = [N, mu_k], with full verification of every level."""
    mu = as_sum(mu)
    first = is_nijenhuis(N, mu, K)
    if not first.ok:
        raise ValueError("N is not Nijenhuis with square K for the base structure")
    levels = [mu]
    for _ in range(depth):
        levels.append(rn_bracket(N, levels[-1]))
    flags = {}
    for k, m in enumerate(levels):
        flags["linfty[%d]" % k] = check_linfty(m).ok
        flags["nijenhuis[%d]" % k] = is_nijenhuis(N, m, K).ok
        flags["square_shift[%d]" % k] = (k + 2 > depth) or (rn_bracket(K, m) == levels[k + 2])
        flags["K_weak[%d]" % k] = is_weak_nijenhuis(K, m).ok
    for k in range(1, depth + 1):
        for l in range(k, depth + 1):
            flags["compatible[%d,%d]" % (k, l)] = not rn_bracket(levels[k], levels[l]).entries
    return Hierarchy(levels, flags)


def compatible_nijenhuis(N1, K1, N2, K2, mu, samples=((1, 1), (2, -1), (Fraction(1, 2), 3))):
    """Compatibility of two Nijenhuis forms; on success tests sampled linear combinations.

    Returns (compatible, {sample: Nijenhuis verdict for a1 N1 + a2 N2 with square a1^2 K1 + a2^2 K2}).
    """
    mu = as_sum(mu)
    c1 = rn_bracket(N1, rn_bracket(N2, mu)) + rn_bracket(N2, rn_bracket(N1, mu))
    c2 = rn_bracket(N1, K2) + rn_bracket(N2, K1)
    ok = not c1.entries and not c2.entries
    combos = {}
    if ok:
        for a1, a2 in samples:
            a1, a2 = Q(a1), Q(a2)
            N = a1 * as_sum(N1) + a2 * as_sum(N2)
            K = (a1 * a1) * as_sum(K1) + (a2 * a2) * as_sum(K2)
            combos[(a1, a2)] = is_nijenhuis(N, mu, K).ok
    return ok, combos


# ---- GLA / DGLA constructions ----

def point_plus_euler(pi, space, scale=1, cap=None):
    """scale * pi (as a 0-form) + S."""
    S = euler_map(space, cap=cap)
    if not pi:
        return S
    return Q(scale) * FormalSum.vector(pi, cap=cap) + S


def point_plus_identity(pi, space, cap=None):
    I = identity_form(space, cap=cap)
    if not pi:
        return I
    return FormalSum.vector(pi, cap=cap) + I


# ---- Lie n-algebra tails ----

def lie_n_tail(mu, forms):
    """S + sum N_i for degree 0 forms of arity >= ceil((n+3)/2); returns a verdict dict."""
    mu = as_sum(mu)
    E = mu.space
    degs = E.degrees()
    if not degs or max(degs) > -1:
        raise ValueError("a Lie n-algebra lives in degrees -n..-1")
    n = -min(degs)
    lo = ceil(Fraction(n + 3, 2))
    for f in forms:
        f = as_sum(f)
        for k in f.arities():
            if not lo <= k <= n + 1:
                raise ValueError("arity %d outside the band [%d, %d]" % (k, lo, n + 1))
        if f.entries and f.degree != 0:
            raise ValueError("tail forms must have degree 0")
    S = euler_map(E)
    tail = None
    for f in forms:
        tail = as_sum(f) if tail is None else tail + as_sum(f)
    if tail is None:
        tail = SymForm(E, 1, 0)
    N = S + tail
    K = S + 2 * tail
    rep = is_nijenhuis(N, mu, K)
    deformed = rn_bracket(N, mu)
    predicted = mu
    for f in forms:
        predicted = predicted + rn_bracket(f, mu)
    return {"nijenhuis": rep.ok, "report": rep, "deformed": deformed,
            "formula_matches": deformed == predicted, "band": (lo, n + 1)}


# ---- Lie 2-algebras: S + alpha ----

def _split_positions(E):
    return E.positions(-2), E.positions(-1)


def alpha_condition(mu, alpha):
    """alpha(l1 alpha(X, Y), Z) + c.p. = 0 on all basis triples of E_-1; returns (ok, witness)."""
    mu, alpha = as_sum(mu), as_sum(alpha)
    E = mu.space
    if set(E.degrees()) - {-2, -1}:
        raise ValueError("space must be concentrated in degrees -2 and -1")
    l1 = mu.component(1)
    _, ones = _split_positions(E)
    for i, x in enumerate(ones):
        for j in range(i + 1, len(ones)):
            for k in range(j + 1, len(ones)):
                y, z = ones[j], ones[k]
                acc = {}
                for a, b, c in ((x, y, z), (y, z, x), (z, x, y)):
                    for f, cf in _eval_tuple(alpha, (a, b)).items():
                        for g, cg in _eval_tuple(l1, (f,)).items():
                            for h, ch in _eval_tuple(alpha, (g, c)).items():
                                acc[h] = acc.get(h, 0) + cf * cg * ch
                if any(acc.values()):
                    return False, E.labels[x], E.labels[y], E.labels[z]
    return (True,)


def alpha_from_table(q, table):
    """Degree 0 2-form on E_-1 x E_-1 -> E_-2 from {(i, j): vector in E_-2}."""
    E = q.space()
    n2 = q.n2
    ent = {}
    for (i, j), v in table.items():
        if i == j:
            continue
        vec = {a: Q(c) for a, c in (enumerate(v) if isinstance(v, (list, tuple)) else v.items()) if Q(c)}
        key = (n2 + min(i, j), n2 + max(i, j))
        s = 1 if i < j else -1
        cur = ent.setdefault(key, {})
        for a, c in vec.items():
            cur[a] = cur.get(a, 0) + s * c
    return SymForm(E, 2, 0, ent)


def alpha_table(q, alpha):
    n2 = q.n2
    out = {}
    for (x, y), v in as_sum(alpha).entries.items():
        out[(x - n2, y - n2)] = dict(v)
    return out


def deformed_quadruple(q, alpha):
    """(d, [,] + d alpha, chi - alpha(d., .), omega + d^CE alpha)."""
    A = alpha_table(q, alpha)
    e = lambda i: {i: Fraction(1)}
    n1, n2 = q.n1, q.n2

    def al(X, Y):
        acc = {}
        for i, a in X.items():
            for j, b in Y.items():
                if i == j:
                    continue
                v = A.get((i, j)) if i < j else {k: -c for k, c in A.get((j, i), {}).items()}
                for k, c in (v or {}).items():
                    acc[k] = acc.get(k, 0) + a * b * c
        return {k: c for k, c in acc.items() if c}

    bracket = {}
    for i in range(n1):
        for j in range(i + 1, n1):
            v = _add_dicts(q.br(e(i), e(j)), q.D(al(e(i), e(j))))
            if v:
                bracket[(i, j)] = v
    chi = []
    for i in range(n1):
        M = [[Fraction(0)] * n2 for _ in range(n2)]
        for a in range(n2):
            v = _add_dicts(q.act(e(i), e(a)), al(q.D(e(a)), e(i)), -1)
            for b, c in v.items():
                M[b][a] = c
        chi.append(M)
    mu = q.to_linfty()
    dce = ce_differential(as_sum(alpha), mu.component(2))
    omega = {}
    for i in range(n1):
        for j in range(i + 1, n1):
            for k in range(j + 1, n1):
                v = _add_dicts(q.omega(e(i), e(j), e(k)), dce.entries.get((n2 + i, n2 + j, n2 + k), {}))
                if v:
                    omega[(i, j, k)] = v
    return Lie2Quadruple(n2, n1, q.d, bracket, chi, omega)


@dataclass
class Split:
    alpha: SymForm
    deformed: FormalSum
    string_basis: dict
    trivial_basis: dict
    checks: dict

    @property
    def ok(self):
        return all(self.checks.values())


def split_chi_zero(q):
    """Nijenhuis transformation S + alpha splitting a chi = 0 Lie 2-algebra."""
    if any(c for m in q.chi for row in m for c in row):
        raise ValueError("chi must vanish")
    E = q.space()
    n2, n1 = q.n2, q.n1
    from .graded import GradedSpace
    V2, V1 = GradedSpace({0: n2}), GradedSpace({0: n1})
    dmap = LinearMap(V2, V1, {a: V1.vector({(0, b): q.d[b][a] for b in range(n1)}) for a in range(n2)})
    im = image(dmap)
    ker = kernel(dmap)
    s1 = complement(im, V1)            # E_-1^s
    t2 = complement(ker, V2)           # E_-2^t
    dt2 = [dmap(v) for v in t2]        # basis of Im d, images of E_-2^t
    basis1 = dt2 + s1
    alpha = {}
    e = lambda i: {i: Fraction(1)}
    for i in range(n1):
        for j in range(i + 1, n1):
            br = q.br(e(i), e(j))
            if not br:
                continue
            c = solve_linear(basis1, V1.vector({(0, k): x for k, x in br.items()}))
            # component along Im d, written through the preimages in E_-2^t
            vec = {}
            for r in range(len(dt2)):
                for a, x in t2[r].coeffs.items():
                    vec[a] = vec.get(a, 0) - c[r] * x
            vec = {a: x for a, x in vec.items() if x}
            if vec:
                alpha[(i, j)] = vec
    alpha_form = alpha_from_table(q, alpha)
    S = euler_map(E)
    deformed = rn_bracket(S + alpha_form, q.to_linfty())
    # adapted bases inside E
    lift2 = lambda v: E.vector({(-2, a): x for a, x in v.coeffs.items()})
    lift1 = lambda v: E.vector({(-1, a): x for a, x in v.coeffs.items()})
    string = {"-2": [lift2(v) for v in ker], "-1": [lift1(v) for v in s1]}
    trivial = {"-2": [lift2(v) for v in t2], "-1": [lift1(v) for v in dt2]}
    checks = _split_checks(deformed, string, trivial)
    checks["alpha_condition"] = alpha_condition(q.to_linfty(), alpha_form)[0]
    return Split(alpha_form, deformed, string, trivial, checks)


def _evaluate_vectors(form, vecs):
    from .symforms import evaluate
    return evaluate(form, list(vecs))


def _in_span(v, basis):
    if not v:
        return True
    return bool(basis) and solve_linear(basis, v) is not None


def _split_checks(mu, string, trivial):
    import itertools
    s_all = string["-2"] + string["-1"]
    t_all = trivial["-2"] + trivial["-1"]
    out = {}
    l1, l2, l3 = mu.component(1), mu.component(2), mu.component(3)
    out["string_l1_zero_on_E-2"] = all(not _evaluate_vectors(l1, [v]) for v in string["-2"])
    out["string_closed"] = all(_in_span(_evaluate_vectors(f, args), s_all)
                               for f, k in ((l1, 1), (l2, 2), (l3, 3))
                               for args in itertools.combinations_with_replacement(s_all, k))
    out["trivial_brackets_vanish"] = all(not _evaluate_vectors(f, args)
                                         for f, k in ((l2, 2), (l3, 3))
                                         for args in itertools.combinations_with_replacement(t_all, k))
    imgs = [_evaluate_vectors(l1, [v]) for v in trivial["-2"]]
    out["trivial_l1_bijective"] = (len(span_basis(imgs)) == len(trivial["-1"]) if imgs else not trivial["-1"]) \
        and all(_in_span(v, trivial["-1"]) for v in imgs)
    mixed_ok = True
    for f, k in ((l2, 2), (l3, 3)):
        for args in itertools.product(s_all + t_all, repeat=k):
            if any(a in s_all for a in args) and any(a in t_all for a in args):
                if _evaluate_vectors(f, args):
                    mixed_ok = False
    out["mixed_vanish"] = mixed_ok
    return out


def iota_square_regression(space=None):
    """A 2-form N with [i_N N, N] != 0, so i_N N is not a square in general."""
    from .graded import GradedSpace
    E = space or GradedSpace({0: 2})
    N = SymForm(E, 2, 0, {(0, 0): {1: Fraction(1)}, (0, 1): {0: Fraction(1)}}, cap=6)
    from .symforms import insert
    NN = insert(N, N)
    return N, NN, rn_bracket(NN, N)
