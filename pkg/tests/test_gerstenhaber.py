import random
from fractions import Fraction

import pytest
from hypothesis import given, strategies as st

from lila import gerstenhaber as gh
from lila import nijenhuis as nj
from lila.graded import DimensionError
from lila.linfty import check_linfty
from lila.symforms import FormalSum, SymForm, evaluate, is_multiderivation, rn_bracket

I3 = [[1, 0, 0], [0, 1, 0], [0, 0, 1]]


def diag(*xs):
    return [[xs[i] if i == j else 0 for j in range(len(xs))] for i in range(len(xs))]


def zero_l1(W):
    return SymForm(W.space, 1, 1, {})


def multivectors(W, max_terms=3):
    subsets = [I for I in W.subsets if I]
    return st.dictionaries(st.sampled_from(subsets), st.integers(-2, 2), max_size=max_terms).map(W.element)


def homogeneous(W, p):
    subsets = [I for I in W.subsets if len(I) == p]
    return st.dictionaries(st.sampled_from(subsets), st.integers(-2, 2), max_size=3).map(W.element)


def p_of(W, v):
    ps = {W.exterior_degree(q) for q in v.coeffs}
    return ps.pop() if len(ps) == 1 else None


# ---- Schouten bracket ----

def test_schouten_on_vectors_is_the_bracket():
    A, W = gh.so3(), gh.WedgeAlgebra(3)
    for i in range(3):
        for j in range(3):
            got = W.as_dict(gh.schouten_bracket(A, W, W.mono((i,)), W.mono((j,))))
            assert got == {(k,): c for k, c in A.br(i, j).items()}


def test_schouten_with_scalars_vanishes():
    A, W = gh.so3(), gh.WedgeAlgebra(3)
    assert not gh.schouten_bracket(A, W, W.mono((0,)), W.scalar(5))
    assert not gh.schouten_bracket(A, W, W.scalar(2), W.mono((0, 1)))


def test_schouten_affine_example():
    A, W = gh.affine(), gh.WedgeAlgebra(2)
    assert gh.schouten_bracket(A, W, W.mono((0,)), W.mono((0, 1))) == W.mono((0, 1))


W3 = gh.WedgeAlgebra(3)
SO3 = gh.so3()
HEIS = gh.heisenberg()


@pytest.mark.parametrize("A", [SO3, HEIS, gh.sl2()], ids=lambda A: A.name)
@given(data=st.data())
def test_gerstenhaber_identities(A, data):
    W = W3
    p, q, r = (data.draw(st.integers(1, 3)) for _ in range(3))
    P, Q_, R = data.draw(homogeneous(W, p)), data.draw(homogeneous(W, q)), data.draw(homogeneous(W, r))
    br = lambda x, y: gh.schouten_bracket(A, W, x, y)
    # graded antisymmetry
    assert br(P, Q_) == -(-1) ** ((p - 1) * (q - 1)) * br(Q_, P)
    # Leibniz in the second slot
    assert br(P, W.wedge(Q_, R)) == W.wedge(br(P, Q_), R) + (-1) ** ((p - 1) * q) * W.wedge(Q_, br(P, R))
    # Jacobi
    lhs = br(P, br(Q_, R))
    rhs = br(br(P, Q_), R) + (-1) ** ((p - 1) * (q - 1)) * br(Q_, br(P, R))
    assert lhs == rhs


def test_wedge_cap():
    with pytest.raises(DimensionError):
        gh.WedgeAlgebra(9)
    assert gh.WedgeAlgebra(3, max_dim=3).space.dim == 8


# ---- to_l2 and de Rham ----

def test_to_l2_examples():
    W = gh.WedgeAlgebra(3)
    assert not gh.to_l2(gh.abelian(3), W).entries
    l2 = gh.to_l2(SO3, W)
    assert check_linfty(l2).ok
    assert is_multiderivation(l2, W.product())[0]
    bad = gh.LieAlgebraData(3, {(0, 1): {0: 1, 2: 1}, (1, 2): {0: 1}, (2, 0): {1: 1}})
    assert bad.jacobi_witness() is not None
    l2b = gh.to_l2(bad, W)
    assert is_multiderivation(l2b, W.product())[0]
    assert not check_linfty(l2b).ok


def test_to_l2_sign_on_vectors():
    W = gh.WedgeAlgebra(3)
    l2 = gh.to_l2(SO3, W)
    # the sign is (-1)^(p-1) for a p-vector, so l2 is the bracket on vectors
    assert evaluate(l2, [W.mono((0,)), W.mono((1,))]) == W.mono((2,))
    assert evaluate(l2, [W.mono((0, 1)), W.mono((1,))]) == -1 * gh.schouten_bracket(SO3, W, W.mono((0, 1)), W.mono((1,)))


def test_de_rham_examples():
    W = gh.WedgeAlgebra(3)
    assert not gh.de_rham(gh.abelian(3), W).entries
    assert gh.d_form(SO3, {(2,): 1}, 1) == {(0, 1): -1}
    d = gh.de_rham(SO3, W)
    assert not rn_bracket(d, d).entries
    assert evaluate(d, [W.mono((2,))]) == -1 * W.mono((0, 1))


def test_de_rham_square_detects_jacobi():
    bad = gh.LieAlgebraData(3, {(0, 1): {0: 1, 2: 1}, (1, 2): {0: 1}, (2, 0): {1: 1}})
    d = gh.de_rham(bad)
    assert rn_bracket(d, d).entries


# ---- extensions by derivation ----

def test_extend_derivation_examples():
    W = gh.WedgeAlgebra(3)
    N = [[1, 2, 0], [0, 3, 0], [1, 0, 0]]
    Nu = gh.extend_derivation(W, N)
    Ne = lambda j: W.element({(a,): N[a][j] for a in range(3)})
    assert evaluate(Nu, [W.mono((0, 1))]) == W.wedge(Ne(0), W.mono((1,))) + W.wedge(W.mono((0,)), Ne(1))
    assert not evaluate(Nu, [W.scalar(4)])
    assert is_multiderivation(Nu, W.product())[0]


def test_extend_form_spade_expansion():
    W = gh.WedgeAlgebra(3)
    a = gh.extend_form(W, {(0, 2): 1, (1, 2): 3}, 2)
    # a(e0 ^ e1, e2) = alpha(e0, e2) e1 - alpha(e1, e2) e0
    assert evaluate(a, [W.mono((0, 1)), W.mono((2,))]) == W.mono((1,)) - 3 * W.mono((0,))
    # on vectors the extension is -alpha
    assert evaluate(a, [W.mono((1,)), W.mono((2,))]) == -3 * W.scalar()


@pytest.mark.parametrize("k", [1, 2, 3])
def test_extensions_are_multiderivations_and_commute(k):
    rng = random.Random(k)
    W = gh.WedgeAlgebra(4)
    from itertools import combinations
    forms = [{I: rng.randint(-2, 2) for I in combinations(range(4), k)} for _ in range(2)]
    ext = [gh.extend_form(W, f, k) for f in forms]
    for e in ext:
        assert is_multiderivation(e, W.product(), check_product=False)[0]
    assert not rn_bracket(ext[0], ext[1]).entries
    other = gh.extend_form(W, {(0, 1): 1, (2, 3): -1}, 2)
    assert not rn_bracket(ext[0], other).entries


def test_literal_sign_fails_for_even_arity():
    W = gh.WedgeAlgebra(3)
    for literal, expect in ((False, True), (True, False)):
        a = gh.extend_form(W, {(0, 1): 1, (0, 2): 2, (1, 2): -1}, 2, literal=literal)
        assert is_multiderivation(a, W.product(), check_product=False)[0] is expect
    a3 = gh.extend_form(W, {(0, 1, 2): 1}, 3, literal=True)
    assert a3 == gh.extend_form(W, {(0, 1, 2): 1}, 3)


def _random_matrix(rng, n, lo=-2, hi=2):
    return [[rng.randint(lo, hi) for _ in range(n)] for _ in range(n)]


def test_bracket_with_extended_tensor_is_deformed_l2():
    rng = random.Random(11)
    for trial in range(50):
        n = rng.choice([2, 3, 4])
        A = gh.random_lie(n, rng)
        W = gh.WedgeAlgebra(n)
        N = _random_matrix(rng, n)
        lhs = rn_bracket(gh.extend_derivation(W, N), gh.to_l2(A, W))
        assert lhs == gh.to_l2(gh.deformed_bracket(A, N), W), (trial, A.c, N)


@pytest.mark.parametrize("k", [1, 2, 3])
def test_bracket_with_extended_form_is_extended_differential(k):
    rng = random.Random(20 + k)
    from itertools import combinations
    for _ in range(8):
        n = rng.choice([3, 4])
        A = gh.random_lie(n, rng)
        W = gh.WedgeAlgebra(n)
        alpha = {I: rng.randint(-2, 2) for I in combinations(range(n), k)}
        lhs = rn_bracket(gh.extend_form(W, alpha, k), gh.to_l2(A, W))
        assert lhs == gh.extend_form(W, gh.d_form(A, alpha, k), k + 1)


def test_torsion_free_tensor_extends_to_nijenhuis():
    A, W = gh.affine(), gh.WedgeAlgebra(2)
    N = diag(2, 5)
    assert gh.torsion(A, N) is None
    rep = nj.is_nijenhuis(gh.extend_derivation(W, N), gh.to_l2(A, W), gh.extend_derivation(W, gh.matmul(N, N)))
    assert rep.ok
    # so3 with ad_e0 has torsion, and the square identity fails
    Nad = [[0, 0, 0], [0, 0, -1], [0, 1, 0]]
    W3_ = gh.WedgeAlgebra(3)
    assert gh.torsion(SO3, Nad) is not None
    rep = nj.is_nijenhuis(gh.extend_derivation(W3_, Nad), gh.to_l2(SO3, W3_),
                          gh.extend_derivation(W3_, gh.matmul(Nad, Nad)))
    assert not rep.ok


def test_euler_plus_closed_form():
    A, W = gh.direct_sum(gh.affine(), gh.abelian(1)), gh.WedgeAlgebra(3)
    l2 = gh.to_l2(A, W)
    S = nj.euler_map(W.space)
    for alpha in ({(0, 2): 1}, {(1, 2): 1}):
        al = gh.extend_form(W, alpha, 2)
        assert nj.is_nijenhuis(S + al, l2, S + 2 * al).ok
        assert rn_bracket(S + al, l2) == l2 + gh.extend_form(W, gh.d_form(A, alpha, 2), 3)


# ---- bialgebra and quasi ----

def test_bialgebra_examples():
    W = gh.WedgeAlgebra(3)
    assert gh.check_bialgebra(W, zero_l1(W), gh.to_l2(SO3, W)).ok
    kks = gh.check_bialgebra(W, gh.de_rham(SO3, W), gh.to_l2(gh.abelian(3), W))
    assert kks.ok
    mixed = gh.check_bialgebra(W, gh.de_rham(SO3, W), gh.to_l2(SO3, W))
    assert mixed.failed() == ["[l1,l2]"]


def test_bialgebra_rejects_non_derivation():
    W = gh.WedgeAlgebra(2)
    bad = SymForm(W.space, 1, 1, {(0,): {1: 1}})
    with pytest.raises(ValueError):
        gh.check_bialgebra(W, bad, gh.to_l2(gh.affine(), W))


def test_quasi_examples():
    W = gh.WedgeAlgebra(3)
    l3 = Fraction(1, 2) * gh.extend_form(W, {(0, 1, 2): 1}, 3)
    assert gh.check_quasi(W, zero_l1(W), gh.to_l2(SO3, W), l3).ok
    A, W4 = gh.direct_sum(gh.affine(), gh.affine()), gh.WedgeAlgebra(4)
    omega = {(0, 1, 3): 1}
    assert gh.d_form(A, omega, 3)
    v = gh.check_quasi(W4, zero_l1(W4), gh.to_l2(A, W4), Fraction(1, 2) * gh.extend_form(W4, omega, 3))
    assert v.failed() == ["[l2,l3]"]


# ---- Omega N ----

def test_omega_n_examples():
    v = gh.omega_n_check(gh.abelian(3), I3, {(0, 1): 2, (1, 2): -1})
    assert v.ok and v.detail["nijenhuis"]
    v = gh.omega_n_check(gh.affine(), diag(2, 2), {(0, 1): 1})
    assert v.ok and v.detail["N_alpha_bracket_is_2_alpha_N"]
    v = gh.omega_n_check(gh.affine(), diag(1, 2), {(0, 1): 1})
    assert not v.ok and "alpha_N_skew" in v.failed()
    v = gh.omega_n_check(gh.direct_sum(gh.affine(), gh.abelian(1)), I3, {(1, 2): 1})
    assert not v.ok and "d_alpha" in v.failed()


def test_omega_n_torsion_clause():
    v = gh.omega_n_check(SO3, [[0, 0, 0], [0, 0, -1], [0, 1, 0]], {})
    assert v.failed() == ["torsion"]


# ---- Poisson-Nijenhuis ----

def test_pn_examples():
    W = gh.WedgeAlgebra(3)
    v = gh.poisson_nijenhuis_check(gh.abelian(3), W.element({(0, 1): 1, (1, 2): 2}), I3)
    assert v.ok and v.detail["agree"] and v.detail["weak_nijenhuis"]
    A = gh.direct_sum(gh.affine(), gh.abelian(1))
    v = gh.poisson_nijenhuis_check(A, W.element({(0, 1): 1, (0, 2): 1}), I3)
    assert not v.ok and v.failed() == ["poisson"] and v.detail["agree"]
    W4 = gh.WedgeAlgebra(4)
    v = gh.poisson_nijenhuis_check(gh.abelian(4), W4.element({(0, 1): 1}), diag(2, 2, 1, 3))
    assert v.ok and v.detail["coboundary_nijenhuis"]


def test_pn_rejects_incompatible_pair():
    W4 = gh.WedgeAlgebra(4)
    with pytest.raises(ValueError):
        gh.poisson_nijenhuis_check(gh.abelian(4), W4.element({(0, 1): 1}), diag(1, 2, 1, 1))


def test_pn_agreement_random():
    rng = random.Random(7)
    algs = [gh.abelian(3), gh.affine(), gh.direct_sum(gh.affine(), gh.abelian(1)),
            gh.heisenberg(), gh.direct_sum(gh.affine(), gh.affine())]
    seen = set()
    for _ in range(150):
        A = rng.choice(algs)
        W = gh.WedgeAlgebra(A.dim)
        N = diag(*[rng.choice([0, 1, 2]) for _ in range(A.dim)])
        pi = W.element({I: rng.choice([0, 1, -1]) for I in W.subsets if len(I) == 2})
        try:
            v = gh.poisson_nijenhuis_check(A, pi, N)
        except ValueError:
            continue
        assert v.detail["agree"]
        seen.add(v.ok)
    assert seen == {True, False}


# ---- Pi Omega ----

def test_pi_omega_matrix_oracle():
    A, W = gh.abelian(4), gh.WedgeAlgebra(4)
    pi, omega = W.element({(0, 1): 1, (2, 3): 1}), {(0, 1): 1, (2, 3): 2}
    v = gh.pi_omega_check(A, pi, omega)
    assert v.ok
    # pi# eps1 = -e0 and omega-flat e0 = eps1, so N e0 = -e0; likewise N e2 = -2 e2
    assert v.detail["N"] == diag(-1, -1, -2, -2)
    assert v.detail["omega_pi_bracket_is_N"]
    assert not v.detail["pi_omega_bracket_is_N"]


def test_pi_omega_trivial_cases():
    A, W = gh.abelian(4), gh.WedgeAlgebra(4)
    assert gh.pi_omega_check(A, W.element({(0, 1): 1}), {}).ok
    assert gh.pi_omega_check(A, W.scalar(0), {(0, 1): 1}).ok
    bad = gh.pi_omega_check(gh.direct_sum(gh.affine(), gh.abelian(1)), gh.WedgeAlgebra(3).element({(0, 1): 1, (0, 2): 1}), {})
    assert bad.failed() == ["poisson"]


# ---- quadratic Lie algebras and Courant ----

def test_quadratic_to_lie2():
    Qs = gh.QuadraticLieAlgebra(SO3, I3)
    assert Qs.check() is None and Qs.T(0, 1, 2) == Fraction(1, 2)
    mu = gh.quadratic_to_lie2(Qs)
    assert check_linfty(mu).ok
    Ql = gh.QuadraticLieAlgebra(gh.sl2(), [[2, 0, 0], [0, 0, 1], [0, 1, 0]])
    assert Ql.check() is None and check_linfty(gh.quadratic_to_lie2(Ql)).ok
    assert gh.QuadraticLieAlgebra(gh.sl2(), I3).check()[0] == "invariance"
    with pytest.raises(ValueError):
        gh.quadratic_to_lie2(gh.QuadraticLieAlgebra(gh.sl2(), I3))
    ab = gh.quadratic_to_lie2(gh.QuadraticLieAlgebra(gh.abelian(2), [[0, 1], [1, 0]]))
    assert check_linfty(ab).ok


def test_dorfman_is_bracket_over_a_point():
    Qs = gh.QuadraticLieAlgebra(SO3, I3)
    for i in range(3):
        for j in range(3):
            assert Qs.dorfman({i: 1}, {j: 1}) == SO3.br(i, j)


def test_adjoint_via_gram():
    H = gh.QuadraticLieAlgebra(gh.abelian(2), [[0, 1], [1, 0]])
    assert H.adjoint(diag(2, 5)) == diag(5, 2)


@pytest.mark.parametrize("Qa,N,lam,gamma", [
    (gh.QuadraticLieAlgebra(gh.so3(), I3), diag(3, 3, 3), 6, 18),
    (gh.QuadraticLieAlgebra(gh.abelian(2), [[0, 1], [1, 0]]), diag(2, 5), 7, 29),
], ids=["scalar", "hyperbolic"])
def test_courant_nijenhuis_instances(Qa, N, lam, gamma):
    v = gh.courant_nijenhuis(Qa, N, lam, gamma)
    assert v.ok
    assert v.detail["square_identity"] and v.detail["circ_NN_equals_circ_K"] and v.detail["NK_commute"]


def test_courant_skew_ad_has_torsion():
    v = gh.courant_nijenhuis(gh.QuadraticLieAlgebra(SO3, I3), [[0, 0, 0], [0, 0, -1], [0, 1, 0]], 0, 0)
    assert not v.ok and "torsion" in v.failed()
    assert v.witness == (1, 2, {0: Fraction(1)})
