import itertools
import random

import pytest
from hypothesis import given, strategies as st

from lila import cech

S3 = cech.symmetric_group(3)
S3_ID = cech.identity_crossed_module(S3)
Z2 = cech.abelian_crossed_module(cech.cyclic_group(2))


# ---- groups and crossed modules ----

def test_group_validation():
    assert cech.cyclic_group(5).is_abelian() and not S3.is_abelian()
    with pytest.raises(cech.GroupError):
        cech.FiniteGroup([[0, 1], [0, 1]])
    with pytest.raises(cech.GroupError):
        cech.FiniteGroup([[0, 1, 2], [1, 0, 2], [2, 2, 0]])
    for x in S3.elements():
        assert S3.mul(x, S3.inv(x)) == S3.identity


def test_crossed_module_validation():
    assert S3_ID.kernel_size() == 1
    assert cech.trivial_kernel_module(S3).G.order == 1
    # S3 -> 1 is equivariant but S3 is not Abelian, so Peiffer fails
    with pytest.raises(cech.GroupError, match="Peiffer"):
        cech.CrossedModuleGrp(S3, cech.trivial_group(), [0] * 6, [list(S3.elements())])
    trivial = [list(S3.elements()) for _ in S3.elements()]
    with pytest.raises(cech.GroupError, match="equivariant"):
        cech.CrossedModuleGrp(S3, S3, list(S3.elements()), trivial)
    with pytest.raises(cech.GroupError):
        cech.CrossedModuleGrp(cech.cyclic_group(2), cech.trivial_group(), [0], [[0, 1]])


# ---- triangles ----

def valid_triangles(cm):
    H = cm.H
    for h1, h2, h3 in itertools.product(H.elements(), repeat=3):
        for g in cm.G.elements():
            if cm.rho[g] == H.mul(h1, h2, h3):
                yield cech.Triangle((0, 1, 2), (h1, h2, h3), g)


def test_rotation_and_reversal():
    for t in valid_triangles(S3_ID):
        r = t.rotate(S3_ID)
        assert r.is_valid(S3_ID)
        assert r.rotate(S3_ID).rotate(S3_ID) == t
        v = t.reverse(S3_ID)
        assert v.is_valid(S3_ID)
        assert v.reverse(S3_ID) == t
        assert t.same_class(r, S3_ID)


def test_triangle_product_trivial_and_abelian():
    e = S3.identity
    ones = [cech.Triangle(v, (e, e, e), e) for v in ((0, 1, 2), (0, 2, 3), (0, 3, 1))]
    assert cech.triangle_product(*ones, S3_ID) == cech.Triangle((1, 2, 3), (e, e, e), e)
    G = cech.cyclic_group(5)
    cm = cech.abelian_crossed_module(G)
    t = [cech.Triangle(v, (0, 0, 0), g) for v, g in zip(((0, 1, 2), (0, 2, 3), (0, 3, 1)), (1, 2, 4))]
    assert cech.triangle_product(*t, cm).g == (1 + 2 + 4) % 5


def test_triangle_product_rejects_bad_faces():
    e = S3.identity
    t = cech.Triangle((0, 1, 2), (e, e, e), e)
    with pytest.raises(cech.FacesIncompatible):
        cech.triangle_product(t, t, t, S3_ID)
    with pytest.raises(cech.FacesIncompatible):
        cech.triangle_product(t, cech.Triangle((0, 3, 2), (e, e, e), e), cech.Triangle((0, 3, 1), (e, e, e), e), S3_ID)


@given(hs=st.lists(st.integers(0, 5), min_size=6, max_size=6))
def test_triangle_product_lands_in_valid_triangles(hs):
    nerve = cech.Nerve.complete(4)
    h = dict(zip(nerve.pairs, hs))
    probe = cech.Cochain(h, {})
    # rho = id, so g is forced by the edges
    g = {t: S3.mul(probe.edge(t[0], t[1], S3_ID), probe.edge(t[1], t[2], S3_ID), probe.edge(t[2], t[0], S3_ID))
         for t in nerve.triples}
    c = cech.Cochain(h, g)
    out = cech.triangle_product(c.triangle(0, 1, 2, S3_ID), c.triangle(0, 2, 3, S3_ID), c.triangle(0, 3, 1, S3_ID), S3_ID)
    assert out.is_valid(S3_ID)
    assert out.same_class(c.triangle(1, 2, 3, S3_ID), S3_ID)


# ---- cocycles ----

def test_trivial_cochain_passes():
    nerve = cech.Nerve.complete(4)
    c = cech.Cochain({p: S3.identity for p in nerve.pairs}, {t: S3.identity for t in nerve.triples})
    assert cech.check_cocycle(c, nerve, S3_ID).ok


def test_abelian_violation_witness():
    nerve = cech.Nerve.complete(4)
    g = {t: 0 for t in nerve.triples}
    g[(1, 2, 3)] = 1
    rep = cech.check_cocycle(cech.Cochain({p: 0 for p in nerve.pairs}, g), nerve, Z2)
    assert not rep.ok
    assert rep.as_dict()["witness"] == {"equation": "tetrahedron", "cell": [0, 1, 2, 3]}


def test_missing_cell():
    nerve = cech.Nerve.complete(3)
    with pytest.raises(cech.MissingCell):
        cech.check_cocycle(cech.Cochain({(0, 1): 0}, {}), nerve, Z2)


def test_nerve_closure():
    with pytest.raises(ValueError):
        cech.Nerve((0, 1, 2), ((0, 1), (1, 2)), ((0, 1, 2),), ())


def test_forms_agree_on_random_cochains():
    rng = random.Random(4)
    nerve = cech.Nerve.complete(4)
    seen = set()
    for _ in range(300):
        c = cech.Cochain({p: rng.randrange(6) for p in nerve.pairs}, {t: rng.randrange(6) for t in nerve.triples})
        a = cech.check_cocycle_equations(c, nerve, S3_ID)
        b = cech.check_cocycle_morphism(c, nerve, S3_ID)
        assert a.ok == b.ok
        seen.add(a.ok)
    assert False in seen


@pytest.mark.parametrize("n,count", [(3, 2), (4, 8), (5, 64)])
def test_abelian_counts_match_linear_algebra(n, count):
    nerve = cech.Nerve.complete(n)
    assert len(cech.enumerate_cocycles(nerve, Z2)) == count
    assert cech.abelian_cocycle_count(nerve, 2) == count


@pytest.mark.parametrize("n,count", [(3, 36), (4, 216)])
def test_trivial_kernel_counts(n, count):
    # edges only, with h_ij h_jk h_ki = 1: |H|^(n-1) choices
    assert len(cech.enumerate_cocycles(cech.Nerve.complete(n), cech.trivial_kernel_module(S3))) == count


def test_identity_module_count():
    assert len(cech.enumerate_cocycles(cech.Nerve.complete(3), S3_ID)) == 6 ** 3
    assert len(cech.enumerate_cocycles(cech.Nerve.complete(4), S3_ID)) == 6 ** 6


def test_search_bound():
    with pytest.raises(cech.BoundExceeded):
        cech.enumerate_cocycles(cech.Nerve.complete(5), S3_ID, bound=1000)
