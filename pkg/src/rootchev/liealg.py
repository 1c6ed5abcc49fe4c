"""
The integral Chevalley form g_Z on the basis {H'_1..H'_m} u {u_M : M a root}.

Bracket rules (all integral):
    [u_X, u_TX] = H'_X            (the coroot of root(X), in the H' basis)
    [u_X, u_Y]  = gamma(X,Y) u_{X+Y}   when root(X)+root(Y) is a root
    [H'_X, u_Y] = -A_XY u_Y
    [H', H']    = 0

Two sign schemes produce the gamma table:

* euler_cocycle (simply-laced only): gamma(alpha, beta) = (-1)^{<beta, alpha>}
  with <,> the non-symmetrized Euler form of the chosen orientation, extended
  to both sign sectors by bilinearity of the exponent.  The sign convention
  is pinned by the filtration-counting oracle: gamma(alpha, beta) > 0 exactly
  when the indecomposable extension has the alpha-object as quotient.

* extraspecial (all types): classical inductive sign fixing.  Constants are
  +(p+1) on the extraspecial pair of each non-simple positive root and are
  propagated everywhere else through the three-root and four-root Jacobi
  identities, then transported to this basis by the sign twist
  gamma(a, b) = sign(a) sign(b) sign(a+b) N(a, b).

Both schemes must pass jacobi_check; neither is trusted by construction.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from functools import lru_cache

import numpy as np

from .rootdata import RootDatum, RootDataError
from .rootcat import Ind, ladder, string_extent


class LieAlgebraError(ValueError):
    pass


def euler_form_matrix(datum: RootDatum):
    """Non-symmetrized Euler form <x,y> = sum_i x_i y_i - sum_{i->j} x_i y_j."""
    if not datum.simply_laced():
        raise LieAlgebraError("the Euler cocycle needs a simply-laced type")
    m = datum.m
    e = [[1 if i == j else 0 for j in range(m)] for i in range(m)]
    for t, h in datum.orientation:
        e[t][h] -= 1
    return tuple(tuple(row) for row in e)


def cocycle_gamma(datum: RootDatum) -> dict:
    e = euler_form_matrix(datum)
    m = datum.m
    table = {}
    roots = datum.roots
    rootset = set(roots)
    for a in roots:
        for b in roots:
            s = tuple(x + y for x, y in zip(a, b))
            if s in rootset:
                pairing = sum(b[i] * e[i][j] * a[j] for i in range(m) for j in range(m))
                table[(a, b)] = -1 if pairing % 2 else 1
    return table


def _extraspecial_N(datum: RootDatum) -> dict:
    """Classical Chevalley constants N_{a,b} for every pair of roots with a+b
    a root, from the +(p+1) seeds on extraspecial pairs."""
    pos = list(datum.pos_roots)
    order = {r: i for i, r in enumerate(pos)}
    rootset = set(datum.roots)
    norm = {r: datum.sym(r, r) for r in datum.roots}

    def add(a, b):
        return tuple(x + y for x, y in zip(a, b))

    def neg(a):
        return tuple(-x for x in a)

    espair = {}
    for g in pos:
        if sum(g) == 1:
            continue
        best = None
        for a in pos:
            b = tuple(x - y for x, y in zip(g, a))
            if b in rootset and sum(b) > 0 and order[a] < order[b]:
                if best is None or order[a] < order[best[0]]:
                    best = (a, b)
        assert best is not None, f"no decomposition of positive root {g}"
        espair[g] = best

    memo = {}

    def p_down(a, b):
        return string_extent(datum, a, b, -1)

    def N(a, b):
        s = add(a, b)
        if s not in rootset:
            return 0
        key = (a, b)
        if key in memo:
            return memo[key]
        apos, bpos = sum(a) > 0, sum(b) > 0
        if apos and bpos:
            if order[a] > order[b]:
                val = -N(b, a)
            else:
                a1, b1 = espair[s]
                if (a, b) == (a1, b1):
                    val = p_down(a, b) + 1
                else:
                    # four-root Jacobi on (a1, b1, -a, -b):
                    #   N_{a1,b1} N_{s,-a} + N_{b1,-a} N_{b1-a,a1} + N_{-a,a1} N_{a1-a,b1} = 0
                    # with N_{s,-a} = -(b,b)/(s,s) N_{a,b}.
                    memo[key] = None  # recursion guard; cycles would be a bug
                    t1 = t2 = 0
                    if add(b1, neg(a)) in rootset:
                        t1 = N(b1, neg(a)) * N(add(b1, neg(a)), a1)
                    if add(a1, neg(a)) in rootset:
                        t2 = N(neg(a), a1) * N(add(a1, neg(a)), b1)
                    seed = N(a1, b1)
                    num = norm[s] * (t1 + t2)
                    den = norm[b] * seed
                    if num % den:
                        raise LieAlgebraError("non-integral special-pair constant")
                    val = num // den
        elif not apos and not bpos:
            val = -N(neg(a), neg(b))
        else:
            if not apos:
                val = -N(b, a)
            else:
                # a > 0, b < 0; rotate with the three-root identity on (a, b, z)
                z = neg(s)
                if sum(s) > 0:
                    num = norm[z] * (-N(neg(b), neg(z)))
                    den = norm[a]
                else:
                    num = norm[z] * N(z, a)
                    den = norm[b]
                if num % den:
                    raise LieAlgebraError("non-integral mixed-pair constant")
                val = num // den
        assert val is not None and val != 0
        memo[key] = val
        return val

    table = {}
    for a in datum.roots:
        for b in datum.roots:
            if add(a, b) in rootset:
                table[(a, b)] = N(a, b)
    return table


def extraspecial_gamma(datum: RootDatum) -> dict:
    classical = _extraspecial_N(datum)
    out = {}
    for (a, b), n in classical.items():
        sgn = 1
        for v in (a, b, tuple(x + y for x, y in zip(a, b))):
            if sum(v) < 0:
                sgn = -sgn
        out[(a, b)] = sgn * n
    return out


SCHEMES = ("euler_cocycle", "extraspecial")


@dataclass(frozen=True)
class LieData:
    """The integral Lie algebra: ordered basis, constant table, adjoint data.

    Basis layout: indices 0..m-1 are H'_{S_1}..H'_{S_m}; index m+t is u_M for
    the t-th root in the datum's canonical order (positives first)."""

    datum: RootDatum
    scheme: str
    gamma: dict = field(hash=False, compare=False, repr=False)

    @property
    def dim(self) -> int:
        return self.datum.m + len(self.datum.roots)

    def basis_labels(self):
        m = self.datum.m
        return [f"H'_{i + 1}" for i in range(m)] + [f"u{r}" for r in self.datum.roots]

    def u_index(self, root) -> int:
        return self.datum.m + self.datum.root_index(tuple(root))

    def gamma_of(self, a, b) -> int:
        return self.gamma.get((tuple(a), tuple(b)), 0)

    def bracket_basis(self, i: int, j: int) -> dict:
        """[b_i, b_j] as a sparse integer coefficient dict."""
        m = self.datum.m
        datum = self.datum
        if i < m and j < m:
            return {}
        if i < m:
            beta = datum.roots[j - m]
            c = -datum.pairing(i, beta)
            return {j: c} if c else {}
        if j < m:
            out = self.bracket_basis(j, i)
            return {k: -v for k, v in out.items()}
        alpha = datum.roots[i - m]
        beta = datum.roots[j - m]
        s = tuple(x + y for x, y in zip(alpha, beta))
        if all(x == 0 for x in s):
            return {k: c for k, c in enumerate(datum.coroot_coords(alpha)) if c}
        if datum.is_root(s):
            return {self.u_index(s): self.gamma[(alpha, beta)]}
        return {}

    @lru_cache(maxsize=None)
    def adjoint(self, idx: int) -> np.ndarray:
        """Matrix of ad(basis element) on the canonical basis, integer entries."""
        n = self.dim
        mat = np.zeros((n, n), dtype=np.int64)
        for j in range(n):
            for k, c in self.bracket_basis(idx, j).items():
                mat[k, j] = c
        return mat

    @lru_cache(maxsize=None)
    def divided_powers(self, root) -> tuple:
        """Integer matrices (ad u_root)^k / k! for k = 0 .. nilpotency."""
        ad = self.adjoint(self.u_index(root))
        out = [np.eye(self.dim, dtype=np.int64)]
        k = 1
        power = ad.copy()
        while power.any():
            fact = 1
            for t in range(2, k + 1):
                fact *= t
            if (power % fact).any():
                raise LieAlgebraError(f"(ad u)^{k}/{k}! is not integral")
            out.append(power // fact)
            k += 1
            if k > 6:
                raise LieAlgebraError("ad u is not nilpotent of small order")  # pragma: no cover
            power = power @ ad
        return tuple(out)

    def a_value(self, alpha, beta) -> int:
        """A_{alpha,beta} = (H_alpha | H_beta) / d(alpha)."""
        num = self.datum.sym(tuple(alpha), tuple(beta))
        d = self.datum.root_d(tuple(alpha))
        assert num % d == 0
        return num // d


def build_lie(datum: RootDatum, scheme: str = "auto") -> LieData:
    if scheme in ("auto",):
        scheme = "euler_cocycle" if datum.simply_laced() else "extraspecial"
    if scheme in ("cocycle", "euler_cocycle"):
        table = cocycle_gamma(datum)
        scheme = "euler_cocycle"
    elif scheme == "extraspecial":
        table = extraspecial_gamma(datum)
    else:
        raise LieAlgebraError(f"unknown scheme {scheme!r}; choose from {SCHEMES}")
    L = LieData(datum, scheme, table)
    _check_table(L)
    return L


def _check_table(L: LieData):
    datum = L.datum
    for (a, b), g in L.gamma.items():
        assert L.gamma[(b, a)] == -g, "gamma must be antisymmetric"
        p = string_extent(datum, a, b, -1)
        if abs(g) != p + 1:
            raise LieAlgebraError(
                f"|gamma{(a, b)}| = {abs(g)} but the string magnitude is {p + 1}")


def bracket(L: LieData, avec, bvec):
    """Bilinear extension of the table to coefficient vectors (any ring with
    +,* against ints: Fractions, Scalars, ints)."""
    n = L.dim
    pairs = {}
    for i, x in enumerate(avec):
        if not x:
            continue
        for j, y in enumerate(bvec):
            if not y:
                continue
            for k, c in L.bracket_basis(i, j).items():
                pairs[k] = pairs.get(k, 0) + x * y * c
    out = [0] * n
    for k, v in pairs.items():
        out[k] = v
    return out


def jacobi_check(L: LieData, limit: int | None = None) -> list:
    """All basis triples (i<j<k) violating Jacobi; empty means the table is a
    Lie algebra over Z (and hence over every field)."""
    n = L.dim
    bad = []
    brk = L.bracket_basis
    for i in range(n):
        for j in range(i + 1, n):
            bij = brk(i, j)
            for k in range(j + 1, n):
                acc = {}
                for t, c in bij.items():
                    for u, e in brk(t, k).items():
                        acc[u] = acc.get(u, 0) + c * e
                for t, c in brk(j, k).items():
                    for u, e in brk(t, i).items():
                        acc[u] = acc.get(u, 0) + c * e
                for t, c in brk(k, i).items():
                    for u, e in brk(t, j).items():
                        acc[u] = acc.get(u, 0) + c * e
                if any(acc.values()):
                    bad.append((i, j, k))
                    if limit is not None and len(bad) >= limit:
                        return bad
    return bad
