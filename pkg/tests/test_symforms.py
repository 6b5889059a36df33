import itertools
import random
from fractions import Fraction
from math import comb

import pytest
from hypothesis import given, strategies as st

from lila import gerstenhaber as gh
from lila.graded import GradedSpace, Vector
from lila.linfty import random_form
from lila.nijenhuis import euler_map
from lila.symforms import (FormalSum, SkewForm, SymForm, WindowError, arity_window, canonical_tuples, decalage,
                           decalage_inverse, derived_bracket_eval, evaluate, from_matrix, insert,
                           is_multiderivation, koszul_sign, rn_bracket, unshuffles)
from oracles import insertion, koszul

MIXED = GradedSpace({-2: 1, -1: 2, 0: 1, 1: 1})


def rand_form(E, rng, arity=None, degree=None, **kw):
    return random_form(E, rng.randint(0, 3) if arity is None else arity,
                       rng.randint(-1, 1) if degree is None else degree, rng, cap=8, **kw)


@st.composite
def perms_with_degrees(draw):
    n = draw(st.integers(0, 6))
    perm = draw(st.permutations(list(range(1, n + 1))))
    degs = draw(st.lists(st.integers(-3, 2), min_size=n, max_size=n))
    return tuple(perm), degs


def test_koszul_examples():
    assert koszul_sign((1, 2, 3), [-1, -2, -1]) == 1
    assert koszul_sign((2, 1), [-1, -1]) == -1
    assert koszul_sign((3, 1, 2), [-1, -2, -1]) == -1
    with pytest.raises(ValueError):
        koszul_sign((1, 2), [0])


@given(perms_with_degrees())
def test_koszul_matches_inversion_product(pd):
    perm, degs = pd
    assert koszul_sign(perm, degs) == koszul([p - 1 for p in perm], degs)


@given(perms_with_degrees(), st.data())
def test_koszul_is_multiplicative(pd, data):
    p, degs = pd
    q = tuple(data.draw(st.permutations(list(range(1, len(p) + 1)))))
    # listing by q then reordering that list by p
    pq = tuple(q[i - 1] for i in p)
    assert koszul_sign(pq, degs) == koszul_sign(q, degs) * koszul_sign(p, [degs[i - 1] for i in q])


@given(st.integers(0, 4), st.integers(0, 4))
def test_unshuffle_count(i, j):
    assert len(unshuffles(i, j)) == comb(i + j, i)


def test_unshuffle_examples():
    assert unshuffles(1, 2) == [(1, 2, 3), (2, 1, 3), (2, 3, 1)]
    assert unshuffles(3, 0) == [(1, 2, 3)]
    assert len(unshuffles(2, 1)) == 3


def test_evaluate_symmetry_and_odd_square():
    E = GradedSpace({-1: 2, 0: 1})
    rng = random.Random(4)
    K = random_form(E, 2, 1, rng, density=1)
    X, Y, Z = E.basis((-1, 0)), E.basis((-1, 1)), E.basis((0, 0))
    assert evaluate(K, [Y, X]) == -1 * evaluate(K, [X, Y])
    assert evaluate(K, [Z, X]) == evaluate(K, [X, Z])
    assert not evaluate(K, [X, X])
    t = next(iter(K.entries))
    assert evaluate(K, [E.basis(E.labels[p]) for p in t]).coeffs == K.entries[t]


@given(st.integers(0, 10 ** 6))
def test_insert_matches_unshuffle_oracle(seed):
    rng = random.Random(seed)
    K, L = rand_form(MIXED, rng, arity=rng.randint(1, 2)), rand_form(MIXED, rng, arity=rng.randint(1, 3))
    I = insert(K, L)
    for n in range(5):
        for t in canonical_tuples(MIXED, n):
            assert insertion(K, L, t) == I.entries.get(t, {})


def test_insert_of_matrices_is_composition():
    E = GradedSpace({0: 2})
    A = from_matrix(E, {0: {1: 1}, 1: {0: 2}})
    B = from_matrix(E, {0: {0: 3}, 1: {0: 1, 1: 1}})
    x = E.basis((0, 0))
    assert evaluate(insert(A, B), [x]) == evaluate(B, [evaluate(A, [x])])


def test_insert_zero_forms():
    E = GradedSpace({-1: 2, -2: 1})
    X = Vector(E, {E.pos[(-1, 0)]: Fraction(1)})
    L = SymForm(E, 2, 0, {(1, 2): {0: Fraction(1)}})
    assert not insert(L, FormalSum.vector(X)).entries
    one = insert(FormalSum.vector(X), L)
    assert evaluate(one, [E.basis((-1, 1))]) == evaluate(L, [X, E.basis((-1, 1))])


def test_rn_bracket_of_derivations_is_commutator():
    E = GradedSpace({0: 2})
    D1 = from_matrix(E, {0: {1: 1}})
    D2 = from_matrix(E, {1: {0: 1}, 0: {0: 2}})
    x = E.basis((0, 0))
    lhs = evaluate(rn_bracket(D1, D2), [x])
    rhs = evaluate(D2, [evaluate(D1, [x])]) - evaluate(D1, [evaluate(D2, [x])])
    assert lhs == rhs


@given(st.integers(0, 10 ** 6))
def test_rn_antisymmetry_and_euler(seed):
    rng = random.Random(seed)
    K = rand_form(MIXED, rng)
    L = rand_form(MIXED, rng)
    assert rn_bracket(K, L) == -((-1) ** (K.degree * L.degree)) * rn_bracket(L, K)
    if K.degree % 2 == 0:
        assert not rn_bracket(K, K).entries
    assert rn_bracket(euler_map(MIXED, cap=8), K) == K.degree * K


@given(st.integers(0, 10 ** 6))
def test_iota_is_a_lie_morphism_on_scalar_forms(seed):
    rng = random.Random(seed)
    K, L = rand_form(MIXED, rng, arity=rng.randint(1, 2)), rand_form(MIXED, rng, arity=rng.randint(1, 2))
    alpha = random_form(MIXED, rng.randint(1, 3), rng.randint(-1, 2), rng, scalar=True, cap=8)
    s = (-1) ** (K.degree * L.degree)
    assert insert(rn_bracket(K, L), alpha) == insert(K, insert(L, alpha)) - s * insert(L, insert(K, alpha))


@given(st.integers(0, 10 ** 6))
def test_iota_is_faithful(seed):
    rng = random.Random(seed)
    K = rand_form(MIXED, rng, arity=rng.randint(1, 2))
    hits = []
    for y in range(MIXED.dim):
        # the coordinate function dual to basis vector y
        dual = SymForm(MIXED, 1, -MIXED.deg[y], {(y,): {None: Fraction(1)}}, scalar=True)
        hits.append(bool(insert(K, dual).entries))
    assert any(hits) == bool(K.entries)


@given(st.integers(0, 10 ** 6))
def test_odd_square_zero_kills_double_bracket(seed):
    rng = random.Random(seed)
    A = gh.random_lie(3, rng)
    from lila.linfty import symmetric_l2
    L = symmetric_l2(A)
    K = random_form(L.space, rng.randint(1, 2), rng.randint(-1, 1), rng)
    assert not rn_bracket(L, rn_bracket(K, L)).entries


@given(st.integers(0, 10 ** 6))
def test_evaluate_matches_derived_brackets(seed):
    rng = random.Random(seed)
    E = GradedSpace({-1: 2, -2: 1, 0: 1})
    K = random_form(E, 3, rng.randint(-1, 1), rng, cap=8)
    for t in canonical_tuples(E, 3):
        args = [E.basis(E.labels[p]) for p in t]
        assert evaluate(K, args) == derived_bracket_eval(K, args)


def test_decalage_binary_sign_and_round_trip():
    E = GradedSpace({0: 1, 1: 1, 2: 1})
    # [X, Y]' = (-1)^|X| [X, Y] with |X| the degree before the shift
    even = SkewForm.from_labels(E, 0, {((0, 0), (1, 0)): {(1, 0): 1}})
    odd = SkewForm.from_labels(E, 0, {((1, 0), (1, 0)): {(2, 0): 1}})
    assert decalage(even).entries[(0, 1)] == {1: 1}
    assert decalage(odd).entries[(1, 1)] == {2: -1}
    flipped = SkewForm.from_labels(E, 0, {((1, 0), (0, 0)): {(1, 0): 1}})
    assert decalage(flipped) == -1 * decalage(even)
    for f in (even, odd):
        assert decalage_inverse(decalage(f)) == f
    assert decalage(even).space.components == {-1: 1, 0: 1, 1: 1}


@given(st.integers(0, 10 ** 6))
def test_decalage_round_trip_random(seed):
    rng = random.Random(seed)
    E = GradedSpace({0: 2, 1: 1, -1: 1})
    n = rng.randint(1, 3)
    ent = {}
    for t in canonical_tuples(E, n, parity_shift=1):
        want = sum(E.deg[p] for p in t) + 2 - n
        for y in E.positions(want):
            if rng.random() < 0.5:
                ent[t] = {y: Fraction(rng.randint(1, 3))}
    skew = SkewForm(E, n, 2 - n, ent)
    assert decalage_inverse(decalage(skew)) == skew


def test_arity_window():
    assert arity_window(GradedSpace({-2: 1, -1: 1}), 1) == 3
    assert arity_window(GradedSpace({d: 1 for d in range(-4, 0)}), 1) == 5
    assert arity_window(GradedSpace({0: 1, 1: 1}), 1) is None


def test_window_overflow_reports_required_arity():
    E = GradedSpace({0: 2})
    N = SymForm(E, 2, 0, {(0, 0): {1: Fraction(1)}, (0, 1): {0: Fraction(1)}}, cap=2)
    with pytest.raises(WindowError) as err:
        insert(N, N)
    assert err.value.required == 3


def test_multiderivations():
    W = gh.WedgeAlgebra(3)
    prod = W.product()
    N = [[1, 2, 0], [0, 1, -1], [3, 0, 0]]
    assert is_multiderivation(gh.extend_derivation(W, N), prod)[0]
    S = euler_map(W.space)
    assert not is_multiderivation(S, prod)[0]
    # multiplication by a fixed 1-vector is not a derivation
    e0 = W.mono((0,))
    mult = SymForm(W.space, 1, 1, {(p,): dict(W.wedge(e0, W.space.basis(W.space.labels[p])).coeffs)
                                   for p in range(W.space.dim)
                                   if W.wedge(e0, W.space.basis(W.space.labels[p]))})
    ok, witness = is_multiderivation(mult, prod)
    assert not ok and witness is not None


@given(st.integers(0, 10 ** 6))
def test_bracket_of_multiderivations_is_multiderivation(seed):
    rng = random.Random(seed)
    W = gh.WedgeAlgebra(3)
    A = gh.random_lie(3, rng)
    N = [[rng.randint(-1, 1) for _ in range(3)] for _ in range(3)]
    alpha = {t: Fraction(rng.randint(-2, 2)) for t in itertools.combinations(range(3), 2)}
    forms = [gh.to_l2(A, W), gh.extend_derivation(W, N), gh.extend_form(W, alpha, 2), gh.de_rham(A, W)]
    a, b = rng.sample(forms, 2)
    assert is_multiderivation(rn_bracket(a, b), W.product(), check_product=False)[0]
