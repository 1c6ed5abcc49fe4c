"""
Weyl group bookkeeping on the root lattice: elements are m x m integer
matrices in the simple-root basis, composed as functions.  Lengths, inversion
sets R(w), canonical (lex-least) reduced words, and full enumeration with the
length generating function.
"""

from __future__ import annotations

from fractions import Fraction
from functools import lru_cache

from .rootdata import RootDatum


def identity_w(m):
    return tuple(tuple(1 if i == j else 0 for j in range(m)) for i in range(m))


def simple_w(datum: RootDatum, i: int):
    """Matrix of s_i: columns are the images of the simple roots."""
    m = datum.m
    cols = []
    for j in range(m):
        cols.append(datum.reflect_simple(i, datum.simple_root(j)))
    return tuple(tuple(cols[j][r] for j in range(m)) for r in range(m))


def w_apply(w, v):
    m = len(w)
    return tuple(sum(w[r][j] * v[j] for j in range(m)) for r in range(m))


def w_mul(a, b):
    """(a*b)(v) = a(b(v))."""
    m = len(a)
    return tuple(tuple(sum(a[r][k] * b[k][c] for k in range(m)) for c in range(m))
                 for r in range(m))


@lru_cache(maxsize=None)
def inversion_set(datum: RootDatum, w):
    """R(w): positive roots sent negative by w."""
    return tuple(r for r in datum.pos_roots if sum(w_apply(w, r)) < 0)


@lru_cache(maxsize=None)
def length(datum: RootDatum, w) -> int:
    return len(inversion_set(datum, w))


@lru_cache(maxsize=None)
def descent_candidates(datum: RootDatum, w):
    """Simple i with l(s_i w) < l(w), i.e. w^{-1}(alpha_i) negative."""
    out = []
    for i in range(datum.m):
        # l(s_i w) < l(w) iff w^{-1}(alpha_i) is negative
        for r in datum.roots:
            if w_apply(w, r) == datum.simple_root(i):
                if sum(r) < 0:
                    out.append(i)
                break
    return tuple(out)


@lru_cache(maxsize=None)
def canonical_word(datum: RootDatum, w) -> tuple:
    """Lex-least reduced word: repeatedly strip the smallest left descent."""
    word = []
    cur = w
    guard = len(datum.pos_roots) + 1
    while cur != identity_w(datum.m):
        cands = descent_candidates(datum, cur)
        assert cands, "non-identity element with no descent"
        i = min(cands)
        word.append(i)
        cur = w_mul(simple_w(datum, i), cur)
        guard -= 1
        assert guard >= 0
    return tuple(word)


def from_word(datum: RootDatum, word):
    w = identity_w(datum.m)
    for i in word:
        w = w_mul(w, simple_w(datum, i))
    return w


@lru_cache(maxsize=None)
def enumerate_weyl(datum: RootDatum):
    """All elements with their lengths, by breadth-first closure; the BFS depth
    of w equals l(w)."""
    m = datum.m
    gens = [simple_w(datum, i) for i in range(m)]
    lengths = {identity_w(m): 0}
    frontier = [identity_w(m)]
    depth = 0
    while frontier:
        depth += 1
        new = []
        for w in frontier:
            for s in gens:
                ws = w_mul(w, s)
                if ws not in lengths:
                    lengths[ws] = depth
                    new.append(ws)
        frontier = new
    return lengths


def poincare_lhs(datum: RootDatum, q) -> Fraction:
    """Sum over W of q^{l(w)}, exactly."""
    total = Fraction(0)
    for _, l in enumerate_weyl(datum).items():
        total += Fraction(q) ** l
    return total


def poincare_rhs(datum: RootDatum, q) -> Fraction:
    """Product over positive roots of (q^{l(M)+1}-1)/(q^{l(M)}-1)."""
    out = Fraction(1)
    for r in datum.pos_roots:
        l = sum(r)
        if q == 1:
            out *= Fraction(l + 1, l)
        else:
            out *= Fraction(q ** (l + 1) - 1, q ** l - 1)
    return out


def poincare_identity(datum: RootDatum, q) -> dict:
    lhs = poincare_lhs(datum, q)
    rhs = poincare_rhs(datum, q)
    return {"lhs": lhs, "rhs": rhs, "equal": lhs == rhs}
