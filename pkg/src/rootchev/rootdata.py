"""
Cartan and root-system combinatorics for the finite types A-G.

A RootDatum packages a symmetrizable Cartan matrix (entries c_ij = A_{S_i,S_j}),
its symmetrizers d_i (so diag(d) * C is symmetric and short roots get d = 1),
a chosen acyclic orientation of the Dynkin diagram, and the full root system
generated by closing the simple roots under all simple reflections.  Positive
roots are ordered by height then lexicographically; the negatives mirror them.

Folding: a simply-laced quiver with an admissible automorphism produces the
valued quiver on sigma-orbits, hence a non-simply-laced RootDatum, which must
agree with the directly tabulated Cartan data (tested, not assumed).
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from functools import lru_cache

from .linalg import smith_normal_form

SUPPORTED_TYPES = (
    ["A%d" % n for n in range(1, 9)]
    + ["B%d" % n for n in range(2, 5)]
    + ["C3", "C4"]
    + ["D4", "D5"]
    + ["E6", "E7", "E8", "F4", "G2"]
)


class RootDataError(ValueError):
    pass


def _dynkin_table(type_name: str):
    """Return (edges, d) where edges are (i, j, c_ij, c_ji) on 0-based vertices."""
    family, rank = type_name[0], int(type_name[1:])
    if family == "A":
        edges = [(i, i + 1, -1, -1) for i in range(rank - 1)]
        d = [1] * rank
    elif family == "B":
        # alpha_rank is the short root
        edges = [(i, i + 1, -1, -1) for i in range(rank - 2)]
        edges.append((rank - 2, rank - 1, -1, -2))
        d = [2] * (rank - 1) + [1]
    elif family == "C":
        # alpha_rank is the long root
        edges = [(i, i + 1, -1, -1) for i in range(rank - 2)]
        edges.append((rank - 2, rank - 1, -2, -1))
        d = [1] * (rank - 1) + [2]
    elif family == "D":
        edges = [(i, i + 1, -1, -1) for i in range(rank - 3)]
        edges += [(rank - 3, rank - 2, -1, -1), (rank - 3, rank - 1, -1, -1)]
        d = [1] * rank
    elif family == "E":
        # Bourbaki: chain 1-3-4-5-...-n with 2 attached to 4 (1-based)
        chain = [0] + list(range(2, rank))
        edges = [(chain[i], chain[i + 1], -1, -1) for i in range(len(chain) - 1)]
        edges.append((1, 3, -1, -1))
        d = [1] * rank
    elif family == "F":
        edges = [(0, 1, -1, -1), (1, 2, -1, -2), (2, 3, -1, -1)]
        d = [2, 2, 1, 1]
    elif family == "G":
        edges = [(0, 1, -3, -1)]
        d = [1, 3]
    else:  # pragma: no cover
        raise RootDataError(f"unknown family {family!r}")
    return edges, d


def _cartan_from_edges(m, edges):
    c = [[2 if i == j else 0 for j in range(m)] for i in range(m)]
    for i, j, cij, cji in edges:
        c[i][j] = cij
        c[j][i] = cji
    return tuple(tuple(row) for row in c)


@dataclass(frozen=True)
class RootDatum:
    type_name: str
    m: int                      # rank
    cartan: tuple               # c_ij = A_{S_i, S_j}
    d: tuple                    # symmetrizers; diag(d) @ cartan is symmetric
    orientation: tuple          # directed diagram edges (tail, head), 0-based
    roots: tuple                # all roots, positives (height, lex) then negatives
    pos_roots: tuple

    # -- derived combinatorics ------------------------------------------------

    @property
    def num_positive(self) -> int:
        return len(self.pos_roots)

    def is_root(self, v) -> bool:
        return tuple(v) in self._root_set()

    @lru_cache(maxsize=None)
    def _root_set(self):
        return frozenset(self.roots)

    def height(self, v) -> int:
        return sum(v)

    def pairing(self, i: int, v) -> int:
        """<v, alpha_i^vee> = sum_j c_ij v_j."""
        return sum(self.cartan[i][j] * v[j] for j in range(self.m))

    def reflect_simple(self, i: int, v):
        c = self.pairing(i, v)
        return tuple(v[j] - (c if j == i else 0) for j in range(self.m))

    @lru_cache(maxsize=None)
    def sym_matrix(self):
        """diag(d) @ cartan: the symmetrized form with (alpha_i, alpha_i) = 2 d_i."""
        return tuple(tuple(self.d[i] * self.cartan[i][j] for j in range(self.m))
                     for i in range(self.m))

    def sym(self, a, b) -> int:
        dc = self.sym_matrix()
        return sum(a[i] * dc[i][j] * b[j] for i in range(self.m) for j in range(self.m))

    def root_d(self, v) -> int:
        """d(X) = (alpha, alpha)/2; 1 on short roots."""
        n = self.sym(v, v)
        assert n % 2 == 0
        return n // 2

    def coroot_coords(self, v):
        """Integer coordinates of alpha^vee in the basis of simple coroots."""
        dv = self.root_d(v)
        out = []
        for i in range(self.m):
            num = v[i] * self.d[i]
            if num % dv:
                raise RootDataError(f"non-integral coroot for {v}")
            out.append(num // dv)
        return tuple(out)

    def root_index(self, v) -> int:
        return self._index_map()[tuple(v)]

    @lru_cache(maxsize=None)
    def _index_map(self):
        return {r: i for i, r in enumerate(self.roots)}

    def simple_root(self, i: int):
        return tuple(1 if j == i else 0 for j in range(self.m))

    def simply_laced(self) -> bool:
        return all(x == 1 for x in self.d)

    def diagram_edges(self):
        return tuple(sorted((min(t, h), max(t, h)) for t, h in self.orientation))


def _close_under_reflections(m, cartan, simples):
    roots = set(simples)
    frontier = set(simples)
    while frontier:
        new = set()
        for v in frontier:
            for i in range(m):
                c = sum(cartan[i][j] * v[j] for j in range(m))
                w = tuple(v[j] - (c if j == i else 0) for j in range(m))
                if w not in roots:
                    new.add(w)
        roots |= new
        frontier = new
    return roots


def _canonical_root_order(roots):
    pos = sorted([r for r in roots if sum(r) > 0], key=lambda r: (sum(r), r))
    neg = [tuple(-x for x in r) for r in pos]
    for r in roots:
        assert all(x >= 0 for x in r) or all(x <= 0 for x in r), r
    return tuple(pos + neg), tuple(pos)


def _parse_orientation(spec, m, edges):
    undirected = {(min(i, j), max(i, j)) for i, j, _, _ in edges}
    if spec in (None, "default"):
        directed = {(min(i, j), max(i, j)) for i, j in undirected}
    else:
        directed = set()
        if isinstance(spec, str):
            spec = [s for s in spec.split(",") if s]
        for item in spec:
            if isinstance(item, str):
                if ">" not in item:
                    raise RootDataError(f"bad orientation item {item!r}, want 'i>j'")
                a, b = item.split(">")
                t, h = int(a) - 1, int(b) - 1
            else:
                t, h = item
            if (min(t, h), max(t, h)) not in undirected:
                raise RootDataError(f"({t + 1},{h + 1}) is not a diagram edge")
            directed.add((t, h))
        if {(min(t, h), max(t, h)) for t, h in directed} != undirected:
            raise RootDataError("orientation must direct every diagram edge exactly once")
        if len(directed) != len(undirected):
            raise RootDataError("conflicting directions for an edge")
    # acyclicity (trees are always acyclic, but custom input is validated anyway)
    indeg = {v: 0 for v in range(m)}
    for _, h in directed:
        indeg[h] += 1
    pending = dict(indeg)
    order = [v for v in pending if pending[v] == 0]
    seen = 0
    arrows_at = {v: [] for v in range(m)}
    for t, h in directed:
        arrows_at[t].append(h)
    while order:
        v = order.pop()
        seen += 1
        for h in arrows_at[v]:
            pending[h] -= 1
            if pending[h] == 0:
                order.append(h)
    if seen != m:
        raise RootDataError("cyclic orientation")
    return tuple(sorted(directed))


def build_root_datum(type_name: str, orientation="default") -> RootDatum:
    """Construct the RootDatum for a supported type and diagram orientation."""
    if type_name not in SUPPORTED_TYPES:
        raise RootDataError(f"unsupported type {type_name!r}; choose from {SUPPORTED_TYPES}")
    edges, d = _dynkin_table(type_name)
    m = int(type_name[1:])
    cartan = _cartan_from_edges(m, edges)
    for i in range(m):
        for j in range(m):
            assert d[i] * cartan[i][j] == d[j] * cartan[j][i], "symmetrizability"
    orient = _parse_orientation(orientation, m, edges)
    simples = [tuple(1 if j == i else 0 for j in range(m)) for i in range(m)]
    roots = _close_under_reflections(m, cartan, simples)
    ordered, pos = _canonical_root_order(roots)
    return RootDatum(type_name, m, cartan, tuple(d), orient, ordered, pos)


# ---------------------------------------------------------------------------
# quivers and folding


@dataclass(frozen=True)
class Quiver:
    """A quiver with a (possibly trivial) automorphism, used for folding."""

    vertices: tuple
    arrows: tuple              # (tail, head) pairs
    automorphism: dict = field(default_factory=dict, hash=False, compare=False)

    def sigma(self, v):
        return self.automorphism.get(v, v)

    def validate(self):
        arrow_set = set(self.arrows)
        if len(arrow_set) != len(self.arrows):
            raise RootDataError("duplicate arrows are not supported")
        for t, h in self.arrows:
            if (self.sigma(t), self.sigma(h)) not in arrow_set:
                raise RootDataError("automorphism does not preserve the arrow set")
        img = {self.sigma(v) for v in self.vertices}
        if img != set(self.vertices):
            raise RootDataError("automorphism is not a vertex permutation")


def _orbits(elems, step):
    seen = set()
    orbits = []
    for e in sorted(elems):
        if e in seen:
            continue
        orb = [e]
        seen.add(e)
        cur = step(e)
        while cur != e:
            orb.append(cur)
            seen.add(cur)
            cur = step(cur)
        orbits.append(tuple(sorted(orb)))
    return orbits


def _match_known_type(cartan, d):
    """Identify a folded Cartan matrix with a supported type, up to relabeling."""
    import itertools as it

    m = len(cartan)
    for name in SUPPORTED_TYPES:
        if int(name[1:]) != m:
            continue
        edges, dd = _dynkin_table(name)
        ref = _cartan_from_edges(m, edges)
        for perm in it.permutations(range(m)):
            if all(ref[perm[i]][perm[j]] == cartan[i][j] for i in range(m) for j in range(m)) \
                    and all(dd[perm[i]] == d[i] for i in range(m)):
                return name, perm
    return None, None


def fold(quiver: Quiver) -> RootDatum:
    """Fold an ADE quiver along its automorphism into a valued RootDatum.

    Vertices of the result are sigma-orbits (d_i = orbit size), arrow orbits
    carry valuation m_rho = orbit size, and c_ij = -sum m_rho / d_i over the
    arrow orbits joining orbits i and j.
    """
    quiver.validate()
    for t, h in quiver.arrows:
        pass
    vert_orbits = _orbits(quiver.vertices, quiver.sigma)
    orbit_of = {}
    for k, orb in enumerate(vert_orbits):
        for v in orb:
            orbit_of[v] = k
    for t, h in quiver.arrows:
        if orbit_of[t] == orbit_of[h]:
            raise RootDataError("non-admissible automorphism: arrow inside an orbit")
    arrow_orbits = _orbits(quiver.arrows, lambda a: (quiver.sigma(a[0]), quiver.sigma(a[1])))
    m = len(vert_orbits)
    d = [len(orb) for orb in vert_orbits]
    c = [[2 if i == j else 0 for j in range(m)] for i in range(m)]
    directed = set()
    for arr_orb in arrow_orbits:
        t, h = arr_orb[0]
        i, j = orbit_of[t], orbit_of[h]
        mval = len(arr_orb)
        if mval % d[i] or mval % d[j]:
            raise RootDataError("arrow-orbit size is not a common multiple of endpoint sizes")
        c[i][j] -= mval // d[i]
        c[j][i] -= mval // d[j]
        directed.add((i, j))
    name, perm = _match_known_type(tuple(map(tuple, c)), tuple(d))
    if name is None:
        raise RootDataError("folded quiver is not of a supported finite type")
    # relabel onto the canonical vertex order of the identified type
    inv = {perm[i]: i for i in range(m)}
    cartan = tuple(tuple(c[inv[i]][inv[j]] for j in range(m)) for i in range(m))
    dd = tuple(d[inv[i]] for i in range(m))
    orient = tuple(sorted((perm[t], perm[h]) for t, h in directed))
    simples = [tuple(1 if j == i else 0 for j in range(m)) for i in range(m)]
    roots = _close_under_reflections(m, cartan, simples)
    ordered, pos = _canonical_root_order(roots)
    return RootDatum(name, m, cartan, dd, orient, ordered, pos)


def ade_quiver(type_name: str, orientation="default", automorphism=None) -> Quiver:
    """Convenience constructor: the oriented Dynkin quiver of an ADE type."""
    datum = build_root_datum(type_name, orientation)
    if not datum.simply_laced():
        raise RootDataError("ade_quiver wants a simply-laced type")
    vertices = tuple(range(datum.m))
    return Quiver(vertices, datum.orientation, dict(automorphism or {}))


# ---------------------------------------------------------------------------
# height histogram, exponents, order formula


def height_histogram(datum: RootDatum) -> tuple:
    """k_i = number of positive roots of height i; weakly decreasing."""
    heights = [sum(r) for r in datum.pos_roots]
    top = max(heights)
    k = tuple(heights.count(i) for i in range(1, top + 1))
    assert all(k[i] >= k[i + 1] for i in range(len(k) - 1)), "histogram must descend"
    assert k[0] == datum.m and sum(k) == datum.num_positive
    return k


def exponents(datum: RootDatum) -> tuple:
    """Exponents x_1 <= ... <= x_m: the dual partition of the height histogram."""
    k = height_histogram(datum)
    dual = [sum(1 for ki in k if ki >= j) for j in range(1, k[0] + 1)]
    assert len(dual) == datum.m
    return tuple(sorted(dual))


def cartan_divisor(datum: RootDatum, q: int) -> int:
    """Number of torus characters killed over F_q: prod gcd(e_i, q-1) over the
    elementary divisors e_i of the Cartan matrix."""
    if q < 2:
        raise RootDataError("q must be at least 2")
    divs = smith_normal_form(datum.cartan)
    assert all(e > 0 for e in divs), "Cartan matrix is nonsingular in finite type"
    out = 1
    for e in divs:
        out *= math.gcd(e, q - 1)
    return out


def predicted_order(datum: RootDatum, q: int) -> int:
    """|G| = (1/d) q^r (q^{x_1+1}-1)...(q^{x_m+1}-1), exactly."""
    if q < 2:
        raise RootDataError("q must be at least 2")
    r = datum.num_positive
    num = q ** r
    for x in exponents(datum):
        num *= q ** (x + 1) - 1
    d = cartan_divisor(datum, q)
    if num % d:
        raise RootDataError(f"order formula is not integral for {datum.type_name}, q={q}")
    return num // d
