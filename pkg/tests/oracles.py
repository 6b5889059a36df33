"""Slow reference implementations used only by the tests."""

import itertools
from fractions import Fraction


def koszul(order, degs):
    """Koszul sign of listing arguments in `order` (0-based) instead of 0, 1, 2, ..."""
    s = 0
    for a, b in itertools.combinations(range(len(order)), 2):
        if order[a] > order[b] and degs[order[a]] % 2 and degs[order[b]] % 2:
            s += 1
    return -1 if s % 2 else 1


def value_on(form, args):
    """Form value on a tuple of basis positions in any order, by brute search over orderings."""
    deg = form.space.deg
    for order in itertools.permutations(range(len(args))):
        t = tuple(args[i] for i in order)
        if t in form.entries:
            return {y: koszul(order, [deg[p] for p in args]) * c for y, c in form.entries[t].items()}
    return {}


def insertion(K, L, args):
    """(i_K L)(args) from the unshuffle formula, evaluated term by term."""
    deg = K.space.deg
    n = len(args)
    out = {}
    for k in {len(t) for t in K.entries}:
        if k > n:
            continue
        for first in itertools.combinations(range(n), k):
            rest = [i for i in range(n) if i not in first]
            order = list(first) + rest
            e = koszul(order, [deg[p] for p in args])
            inner = value_on(K, tuple(args[i] for i in first))
            for y, c in inner.items():
                for z, v in value_on(L, (y,) + tuple(args[i] for i in rest)).items():
                    out[z] = out.get(z, Fraction(0)) + e * c * v
    return {z: v for z, v in out.items() if v}


def rank_sympy(rows):
    import sympy
    return sympy.Matrix(rows).rank() if rows else 0
