"""
The combinatorial shadow of the root category: indecomposables are roots, the
shift T is negation, a complete section is an orientation of the diagram
splitting the roots into a positive and a negative half.

Ladders record which iterated extensions i*alpha + j*beta stay indecomposable
(i.e. stay roots); p/q are the extremities of the root string through beta in
the alpha direction, and p - q recovers the Cartan pairing A_XY.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction

from .rootdata import RootDatum, RootDataError


class RootCategoryError(ValueError):
    pass


@dataclass(frozen=True)
class Ind:
    """An isomorphism class of indecomposables, identified with its root."""

    datum: RootDatum
    root: tuple

    def __post_init__(self):
        if not self.datum.is_root(self.root):
            raise RootCategoryError(f"{self.root} is not a root of {self.datum.type_name}")

    @property
    def d(self) -> int:
        return self.datum.root_d(self.root)

    def shift(self) -> "Ind":
        """T: negate the root; T^2 = id."""
        return Ind(self.datum, tuple(-x for x in self.root))

    def is_positive(self) -> bool:
        return sum(self.root) > 0

    def section_tag(self, section: "Section") -> str:
        return "B" if self.root in section.pos_set else "TB"

    def __repr__(self):
        return f"Ind{self.root}"


def euler_pair(X: Ind, Y: Ind) -> int:
    """(H_X | H_Y): the symmetric Euler form, normalized so (H_X|H_X) = 2 d(X)."""
    return X.datum.sym(X.root, Y.root)


def a_coeff(X: Ind, Y: Ind) -> int:
    """A_XY = (H_X|H_Y)/d(X), always an integer."""
    num = euler_pair(X, Y)
    if num % X.d:
        raise RootCategoryError("non-integral A_XY: form normalization is broken")
    return num // X.d


@dataclass(frozen=True)
class Ladder:
    """Existence grid of the iterated extensions L_{X,Y,i,j} for 0 <= i,j <= 3."""

    X: Ind
    Y: Ind
    exists: tuple      # 4x4 booleans; (i,j) marks i*root(X) + j*root(Y) in Phi
    p: int             # largest r with root(Y) - r*root(X) in Phi
    q: int             # largest s with root(Y) + s*root(X) in Phi

    def grid_points(self):
        return [(i, j) for i in range(4) for j in range(4) if self.exists[i][j]]

    def rank2_type(self) -> str:
        """Which rank-2 system the pair generates: A1xA1, A2, B2 or G2."""
        inner = [(i, j) for (i, j) in self.grid_points() if i >= 1 and j >= 1]
        if not inner:
            return "A1xA1"
        if inner == [(1, 1)]:
            return "A2"
        if len(inner) <= 2:
            return "B2"
        return "G2"


def string_extent(datum: RootDatum, alpha, beta, direction: int) -> int:
    """Largest k >= 0 with beta + k*direction*alpha still a root."""
    k = 0
    while True:
        cand = tuple(b + (k + 1) * direction * a for a, b in zip(alpha, beta))
        if not datum.is_root(cand):
            return k
        k += 1


def ladder(X: Ind, Y: Ind) -> Ladder:
    if X.root == Y.root or X.root == Y.shift().root:
        raise RootCategoryError("ladder wants X not isomorphic to Y or TY")
    datum = X.datum
    grid = [[False] * 4 for _ in range(4)]
    for i in range(4):
        for j in range(4):
            if i == j == 0:
                continue
            v = tuple(i * a + j * b for a, b in zip(X.root, Y.root))
            grid[i][j] = datum.is_root(v)
    assert grid[1][0] and grid[0][1]
    assert not grid[2][2] and not grid[3][3], "L_{2,2} and L_{3,3} never exist"
    p = string_extent(datum, X.root, Y.root, -1)
    q = string_extent(datum, X.root, Y.root, +1)
    lad = Ladder(X, Y, tuple(tuple(r) for r in grid), p, q)
    assert p - q == a_coeff(X, Y)
    return lad


def omega(X: Ind, Y: Ind) -> Ind:
    """The reflection omega_X: TY on Y = X or TX, else Y - A_XY * X on roots."""
    if Y.root == X.root or Y.root == X.shift().root:
        return Y.shift()
    a = a_coeff(X, Y)
    return Ind(X.datum, tuple(y - a * x for x, y in zip(X.root, Y.root)))


# ---------------------------------------------------------------------------
# complete sections


@dataclass(frozen=True)
class Section:
    """A complete section: an orientation plus the root-level data it induces.

    simples[i] is the root of the i-th simple object; pos_set holds the roots
    of ind B.  Lengths are coordinate sums in the simples basis (negative on
    the shifted half)."""

    datum: RootDatum
    orientation: tuple
    simples: tuple
    pos_set: frozenset

    def simple_objects(self):
        return [Ind(self.datum, s) for s in self.simples]

    def coords(self, root) -> tuple:
        """Integer coordinates of a root in the simples basis."""
        inv = _simples_inverse(self.simples)
        out = []
        for row in inv:
            val = sum(f * x for f, x in zip(row, root))
            if val.denominator != 1:
                raise RootCategoryError("root not in the lattice of the section simples")
            out.append(int(val))
        return tuple(out)

    def length(self, obj) -> int:
        root = obj.root if isinstance(obj, Ind) else tuple(obj)
        return sum(self.coords(root))

    def is_sink(self, i: int) -> bool:
        return not any(t == i for t, _ in self.orientation)

    def is_source(self, i: int) -> bool:
        return not any(h == i for _, h in self.orientation)

    def sinks(self):
        return [i for i in range(self.datum.m) if not any(t == i for t, _ in self.orientation)]

    def sources(self):
        return [i for i in range(self.datum.m) if not any(h == i for _, h in self.orientation)]


def _simples_inverse(simples):
    """Inverse of the matrix whose columns are the simples (exact Fractions)."""
    m = len(simples)
    a = [[Fraction(simples[j][i]) for j in range(m)] for i in range(m)]
    inv = [[Fraction(1 if i == j else 0) for j in range(m)] for i in range(m)]
    for c in range(m):
        pr = next(i for i in range(c, m) if a[i][c])
        a[c], a[pr] = a[pr], a[c]
        inv[c], inv[pr] = inv[pr], inv[c]
        f = a[c][c]
        a[c] = [x / f for x in a[c]]
        inv[c] = [x / f for x in inv[c]]
        for i in range(m):
            if i != c and a[i][c]:
                g = a[i][c]
                a[i] = [x - g * y for x, y in zip(a[i], a[c])]
                inv[i] = [x - g * y for x, y in zip(inv[i], inv[c])]
    return inv


def initial_section(datum: RootDatum) -> Section:
    simples = tuple(datum.simple_root(i) for i in range(datum.m))
    return Section(datum, datum.orientation, simples, frozenset(datum.pos_roots))


def reflect_section(section: Section, i: int) -> Section:
    """BGP reflection at a sink or source vertex i of the section's orientation.

    The induced map on roots is omega_{S_i}: the simple at i goes to its
    shift, every other object reflects."""
    if not (i in section.sinks() or i in section.sources()):
        raise RootCategoryError(f"vertex {i + 1} is neither a sink nor a source")
    datum = section.datum
    new_orient = tuple(sorted((h, t) if i in (t, h) else (t, h)
                              for t, h in section.orientation))
    Si = Ind(datum, section.simples[i])
    new_simples = tuple(
        Si.shift().root if j == i else omega(Si, Ind(datum, s)).root
        for j, s in enumerate(section.simples))
    new_pos = frozenset(
        omega(Si, Ind(datum, r)).root for r in section.pos_set)
    return Section(datum, new_orient, new_simples, new_pos)


def admissible_sink_sequence(datum: RootDatum):
    """A vertex order (v1..vm) where each v is a sink once the previous ones
    are reflected; one full round returns the orientation to itself."""
    remaining = set(range(datum.m))
    arrows = set(datum.orientation)
    order = []
    while remaining:
        sink = next(v for v in sorted(remaining)
                    if not any(t == v and h in remaining for t, h in arrows))
        order.append(sink)
        remaining.discard(sink)
    return order


# ---------------------------------------------------------------------------
# relative position (validation-only; needs a Hom oracle for the type)


def relative_position(X: Ind, Y: Ind, hom_oracle) -> str:
    """Return "X>Y", "X<Y" or "none" per vanishing of the two Ext groups.

    hom_oracle(orientation, alpha, beta) must give dim Hom(M_alpha, M_beta)
    for positive roots alpha, beta of the given orientation; Ext^1 then comes
    from the non-symmetrized Euler form.  Only simply-laced types are
    supported (the oracle builds explicit representations).
    """
    datum = X.datum
    if not datum.simply_laced():
        return "unsupported"
    if X.root == Y.shift().root:
        raise RootCategoryError("relative position needs X not isomorphic to TY")
    section = find_containing_section(datum, X.root, Y.root)
    a, b = section_coords_pair(section, X.root, Y.root)
    orient = section.orientation
    ext_ba = _ext_dim(datum, orient, b, a, hom_oracle)
    ext_ab = _ext_dim(datum, orient, a, b, hom_oracle)
    if ext_ba and not ext_ab:
        return "X>Y"
    if ext_ab and not ext_ba:
        return "X<Y"
    return "none"


def find_containing_section(datum: RootDatum, a: tuple, b: tuple) -> Section:
    """BFS through BGP reflections for a section whose hereditary half contains
    both roots.  Exists whenever a != -b; the choice is not unique, and the
    relative position must not depend on it (tested, not assumed)."""
    start = initial_section(datum)
    frontier = [start]
    seen = {start.pos_set}
    for _ in range(4 * len(datum.roots) ** 2):
        nxt = []
        for sec in frontier:
            if a in sec.pos_set and b in sec.pos_set:
                return sec
            for i in sec.sinks() + sec.sources():
                new = reflect_section(sec, i)
                if new.pos_set not in seen:
                    seen.add(new.pos_set)
                    nxt.append(new)
        if not nxt:
            break
        frontier = nxt
    raise RootCategoryError("no hereditary subcategory contains both objects")


def section_coords_pair(section: Section, a, b):
    """Dimension vectors of two objects of ind B in the section's own basis."""
    return section.coords(a), section.coords(b)


def _ext_dim(datum, orientation, alpha, beta, hom_oracle) -> int:
    hom = hom_oracle(orientation, alpha, beta)
    euler = sum(alpha[i] * beta[i] for i in range(datum.m)) \
        - sum(alpha[t] * beta[h] for t, h in orientation)
    ext = hom - euler
    assert ext >= 0
    return ext
