"""
The Chevalley group engine: matrix generators E/h/n over any supported field,
the commutator formula, canonical forms in U, and small-group oracles
(breadth-first enumeration, derived subgroup, center, simplicity).

Generators act on the integral Lie algebra basis: E_[X](t) = sum_k t^k D_k
with D_k = (ad u_X)^k / k! precomputed once over Z; h_[X](t) is diagonal with
t^{A_XY} on u_Y; n_[X](t) = E_X(t) E_TX(1/t) E_X(t).  Elements carry the
generator word that produced them whenever one is known, and the matrix is
always the exact product of the word's atoms.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache

import numpy as np

from .fields import Field, PrimeField, Rationals, Scalar
from .liealg import LieData, LieAlgebraError
from .rootdata import RootDatum, predicted_order
from . import weyl


class GroupError(ValueError):
    pass


# ---------------------------------------------------------------------------
# matrix backends: exact matrices per field kind

class PrimeBackend:
    """Matrices over F_p as numpy int64 arrays of residues."""

    def __init__(self, field: PrimeField):
        self.field = field
        self.p = field.p
        if self.p > 1_000_000:
            raise GroupError("prime too large for the int64 matrix backend")

    def from_int_rows(self, rows):
        return np.asarray(rows, dtype=np.int64) % self.p

    def identity(self, n):
        return np.eye(n, dtype=np.int64)

    def mul(self, a, b):
        return (a @ b) % self.p

    def eq(self, a, b):
        return bool(np.array_equal(a, b))

    def cell(self, s: Scalar):
        return int(s.v)

    def scale_add(self, acc, c: Scalar, mat):
        return (acc + int(c.v) * mat) % self.p

    def zeros(self, n):
        return np.zeros((n, n), dtype=np.int64)

    def entry(self, a, i, j) -> Scalar:
        return self.field.scalar(int(a[i, j]))

    def key(self, a):
        return a.astype(np.int32).tobytes()

    def det(self, a) -> Scalar:
        from .linalg import det_mod
        return self.field.scalar(det_mod([list(map(int, r)) for r in a], self.p))


class FractionBackend:
    """Matrices over Q as tuples of tuples of Fractions."""

    def __init__(self, field: Rationals):
        self.field = field

    def from_int_rows(self, rows):
        return tuple(tuple(Fraction(int(x)) for x in row) for row in rows)

    def identity(self, n):
        return tuple(tuple(Fraction(1 if i == j else 0) for j in range(n)) for i in range(n))

    def mul(self, a, b):
        n = len(a)
        m = len(b[0])
        k = len(b)
        out = []
        for i in range(n):
            row = []
            ai = a[i]
            for j in range(m):
                row.append(sum(ai[t] * b[t][j] for t in range(k)))
            out.append(tuple(row))
        return tuple(out)

    def eq(self, a, b):
        return a == b

    def cell(self, s: Scalar):
        return s.v

    def scale_add(self, acc, c: Scalar, mat):
        f = c.v
        return tuple(tuple(x + f * y for x, y in zip(ra, rm)) for ra, rm in zip(acc, mat))

    def zeros(self, n):
        return tuple(tuple(Fraction(0) for _ in range(n)) for _ in range(n))

    def entry(self, a, i, j) -> Scalar:
        return self.field.scalar(a[i][j])

    def key(self, a):
        return a

    def det(self, a) -> Scalar:
        from .linalg import det_fraction
        return self.field.scalar(det_fraction([list(r) for r in a]))


class GenericBackend:
    """Matrices of Scalars; used for prime-power fields."""

    def __init__(self, field: Field):
        self.field = field

    def from_int_rows(self, rows):
        sc = self.field.scalar
        return tuple(tuple(sc(int(x)) for x in row) for row in rows)

    def identity(self, n):
        one, zero = self.field.one, self.field.zero
        return tuple(tuple(one if i == j else zero for j in range(n)) for i in range(n))

    def mul(self, a, b):
        n, k, m = len(a), len(b), len(b[0])
        zero = self.field.zero
        out = []
        for i in range(n):
            row = []
            for j in range(m):
                acc = zero
                for t in range(k):
                    x = a[i][t]
                    if x:
                        acc = acc + x * b[t][j]
                row.append(acc)
            out.append(tuple(row))
        return tuple(out)

    def eq(self, a, b):
        return a == b

    def cell(self, s: Scalar):
        return s

    def scale_add(self, acc, c: Scalar, mat):
        return tuple(tuple(x + c * y for x, y in zip(ra, rm)) for ra, rm in zip(acc, mat))

    def zeros(self, n):
        zero = self.field.zero
        return tuple(tuple(zero for _ in range(n)) for _ in range(n))

    def entry(self, a, i, j) -> Scalar:
        return a[i][j]

    def key(self, a):
        return a

    def det(self, a) -> Scalar:
        rows = [list(r) for r in a]
        n = len(rows)
        det = self.field.one
        for c in range(n):
            pr = next((i for i in range(c, n) if rows[i][c]), None)
            if pr is None:
                return self.field.zero
            if pr != c:
                rows[c], rows[pr] = rows[pr], rows[c]
                det = -det
            det = det * rows[c][c]
            inv = rows[c][c].inv()
            for i in range(c + 1, n):
                if rows[i][c]:
                    f = rows[i][c] * inv
                    rows[i] = [x - f * y for x, y in zip(rows[i], rows[c])]
        return det


def backend_for(field: Field):
    if isinstance(field, PrimeField):
        return PrimeBackend(field)
    if isinstance(field, Rationals):
        return FractionBackend(field)
    return GenericBackend(field)


# ---------------------------------------------------------------------------
# words and elements

@dataclass(frozen=True)
class WordAtom:
    """One generator: kind 'E', 'h' or 'n' at a root, with parameter t."""

    kind: str
    root: tuple
    t: Scalar

    def __post_init__(self):
        if self.kind not in ("E", "h", "n"):
            raise GroupError(f"unknown atom kind {self.kind!r}")
        if self.kind in ("h", "n") and not self.t:
            raise GroupError(f"{self.kind}-atoms need a nonzero parameter")

    def inverse(self) -> "WordAtom":
        if self.kind == "E":
            return WordAtom("E", self.root, -self.t)
        if self.kind == "n":
            return WordAtom("n", self.root, -self.t)
        return WordAtom("h", self.root, self.t.inv())

    def __repr__(self):
        return f"{self.kind}[{self.root}]({self.t!r})"


@dataclass(frozen=True)
class GroupElement:
    group: "ChevalleyGroup"
    matrix: object
    word: tuple | None = None

    def __mul__(self, other: "GroupElement") -> "GroupElement":
        if other.group is not self.group:
            raise GroupError("elements of different groups")
        word = None
        if self.word is not None and other.word is not None:
            word = self.word + other.word
        return GroupElement(self.group, self.group.ops.mul(self.matrix, other.matrix), word)

    def inverse(self) -> "GroupElement":
        if self.word is None:
            raise GroupError("inverse needs the generator word")
        atoms = tuple(a.inverse() for a in reversed(self.word))
        return self.group.element_from_word(atoms)

    def __eq__(self, other):
        return isinstance(other, GroupElement) and self.group is other.group \
            and self.group.ops.eq(self.matrix, other.matrix)

    def __hash__(self):
        return hash(self.group.ops.key(self.matrix))


# ---------------------------------------------------------------------------
# eta signs: n_[X] sends the u_Y line to eta_XY * u_{omega_X(Y)}

@lru_cache(maxsize=None)
def _int_E_matrix(L: LieData, root, c: int):
    """E_[root](c) over Z as a numpy matrix (c a small integer)."""
    acc = np.zeros((L.dim, L.dim), dtype=np.int64)
    for k, dk in enumerate(L.divided_powers(root)):
        acc = acc + (c ** k) * dk
    return acc


@lru_cache(maxsize=None)
def _int_n_matrix(L: LieData, root):
    """n_[root](1) over Z."""
    neg = tuple(-x for x in root)
    e1 = _int_E_matrix(L, root, 1)
    et = _int_E_matrix(L, neg, 1)
    return e1 @ et @ e1


def eta(L: LieData, x_root, y_root) -> int:
    """The sign eta_{XY} with n_[X] u_Y = eta_{XY} u_{omega_X(Y)}."""
    x_root, y_root = tuple(x_root), tuple(y_root)
    if y_root in (x_root, tuple(-v for v in x_root)):
        return 1
    n = _int_n_matrix(L, x_root)
    a = L.a_value(x_root, y_root)
    img = tuple(y - a * x for x, y in zip(x_root, y_root))
    col = n[:, L.u_index(y_root)]
    val = int(col[L.u_index(img)])
    nonzero = np.nonzero(col)[0]
    assert list(nonzero) == [L.u_index(img)] and val in (1, -1), \
        f"n_[{x_root}] does not permute the root lines"
    return val


# ---------------------------------------------------------------------------
# the group

class ChevalleyGroup:
    """G(R) over a fixed field: generator construction and word evaluation."""

    def __init__(self, L: LieData, field: Field):
        self.L = L
        self.datum: RootDatum = L.datum
        self.field = field
        self.ops = backend_for(field)
        self.dim = L.dim
        self._dp_cache: dict = {}

    # -- generators ---------------------------------------------------------

    def _reduced_powers(self, root):
        root = tuple(root)
        if root not in self._dp_cache:
            self._dp_cache[root] = tuple(self.ops.from_int_rows(dk)
                                         for dk in self.L.divided_powers(root))
        return self._dp_cache[root]

    def gen_E(self, root, t: Scalar) -> GroupElement:
        root = _root_of(root)
        t = self._scalar(t)
        mats = self._reduced_powers(root)
        acc = self.ops.zeros(self.dim)
        power = self.field.one
        for k, dk in enumerate(mats):
            if k > 0:
                power = power * t
            acc = self.ops.scale_add(acc, power, dk)
        return GroupElement(self, acc, (WordAtom("E", root, t),))

    def gen_h(self, root, t: Scalar) -> GroupElement:
        root = _root_of(root)
        t = self._scalar(t)
        if not t:
            raise GroupError("h needs t != 0")
        return GroupElement(self, self._h_matrix_for(
            {i: c for i, c in enumerate(self.datum.coroot_coords(root)) if c}, t),
            (WordAtom("h", root, t),))

    def _h_matrix_for(self, coroot_coeffs: dict, t: Scalar):
        """Diagonal matrix of prod_i h_{S_i}(t^{c_i})."""
        n = self.dim
        m = self.datum.m
        diag = [self.field.one] * n
        for idx, r in enumerate(self.datum.roots):
            e = sum(c * self.datum.pairing(i, r) for i, c in coroot_coeffs.items())
            diag[m + idx] = t ** e
        rows = [[self.field.zero] * n for _ in range(n)]
        for i in range(n):
            rows[i][i] = diag[i]
        if isinstance(self.ops, PrimeBackend):
            return np.array([[int(x.v) for x in row] for row in rows], dtype=np.int64)
        if isinstance(self.ops, FractionBackend):
            return tuple(tuple(x.v for x in row) for row in rows)
        return tuple(tuple(x for x in row) for row in rows)

    def torus_matrix(self, vector):
        """Matrix of prod_i h_{S_i}(t_i) for a tuple of nonzero Scalars."""
        n = self.dim
        m = self.datum.m
        diag = [self.field.one] * n
        for idx, r in enumerate(self.datum.roots):
            val = self.field.one
            for i, ti in enumerate(vector):
                val = val * ti ** self.datum.pairing(i, r)
            diag[m + idx] = val
        rows = [[self.field.zero] * n for _ in range(n)]
        for i in range(n):
            rows[i][i] = diag[i]
        if isinstance(self.ops, PrimeBackend):
            return np.array([[int(x.v) for x in row] for row in rows], dtype=np.int64)
        if isinstance(self.ops, FractionBackend):
            return tuple(tuple(x.v for x in row) for row in rows)
        return tuple(tuple(x for x in row) for row in rows)

    def gen_n(self, root, t: Scalar) -> GroupElement:
        root = _root_of(root)
        t = self._scalar(t)
        if not t:
            raise GroupError("n needs t != 0")
        neg = tuple(-x for x in root)
        mat = self.ops.mul(self.ops.mul(self.gen_E(root, t).matrix,
                                        self.gen_E(neg, t.inv()).matrix),
                           self.gen_E(root, t).matrix)
        return GroupElement(self, mat, (WordAtom("n", root, t),))

    # -- words ----------------------------------------------------------------

    def _scalar(self, t) -> Scalar:
        if isinstance(t, Scalar):
            if t.field != self.field:
                raise GroupError("scalar from a different field")
            return t
        return self.field.scalar(t)

    def atom_element(self, atom: WordAtom) -> GroupElement:
        if atom.kind == "E":
            return self.gen_E(atom.root, atom.t)
        if atom.kind == "h":
            return self.gen_h(atom.root, atom.t)
        return self.gen_n(atom.root, atom.t)

    def element_from_word(self, atoms) -> GroupElement:
        out = self.identity()
        for atom in atoms:
            out = out * self.atom_element(atom)
        return out

    def identity(self) -> GroupElement:
        return GroupElement(self, self.ops.identity(self.dim), ())

    def eta(self, x_root, y_root) -> int:
        return eta(self.L, x_root, y_root)

    def a_value(self, x_root, y_root) -> int:
        return self.L.a_value(tuple(x_root), tuple(y_root))


def _root_of(x):
    if hasattr(x, "root"):
        return tuple(x.root)
    return tuple(x)


# ---------------------------------------------------------------------------
# commutator formula

def commutator_expand(L: LieData, x_root, y_root) -> list:
    """Terms (L_ij root, integer constant, i, j) of (E_X(t), E_Y(s)) in order
    of increasing i + j; the parameter of each term is C_ij t^i s^j."""
    x, y = _root_of(x_root), _root_of(y_root)
    if x == y or x == tuple(-v for v in y):
        raise GroupError("commutator formula wants X not isomorphic to Y or TY")
    datum = L.datum
    rootset = set(datum.roots)

    def comb(i, j):
        return tuple(i * a + j * b for a, b in zip(x, y))

    def g(a, b):
        return L.gamma[(a, b)]

    terms = []
    if comb(1, 1) in rootset:
        c11 = g(x, y)
        terms.append(((1, 1), Fraction(c11)))
        if comb(2, 1) in rootset:
            c21 = Fraction(c11 * g(x, comb(1, 1)), 2)
            terms.append(((2, 1), c21))
            if comb(3, 1) in rootset:
                c31 = c21 * g(x, comb(2, 1)) / 3
                terms.append(((3, 1), c31))
                if comb(3, 2) in rootset:
                    terms.append(((3, 2), 2 * c31 * g(y, comb(3, 1))))
        if comb(1, 2) in rootset:
            c12 = Fraction(-g(y, x) * g(y, comb(1, 1)), 2)
            terms.append(((1, 2), c12))
            if comb(1, 3) in rootset:
                c13 = -(-c12) * g(y, comb(1, 2)) / 3
                terms.append(((1, 3), c13))
                if comb(2, 3) in rootset:
                    terms.append(((2, 3), -c13 * g(x, comb(1, 3))))
    out = []
    for (i, j), c in sorted(terms, key=lambda t: (t[0][0] + t[0][1], t[0][0])):
        if c.denominator != 1:
            raise LieAlgebraError(f"non-integral commutator constant C_{(i, j)} = {c}")
        out.append((comb(i, j), int(c), i, j))
    return out


def commutator_terms(group: ChevalleyGroup, x_root, tx: Scalar, y_root, ty: Scalar):
    """(E_x(tx), E_y(ty)) as a list of (root, parameter) atoms, zeros dropped."""
    out = []
    for root, c, i, j in commutator_expand(group.L, x_root, y_root):
        param = group.field.scalar(c) * tx ** i * ty ** j
        if param:
            out.append((root, param))
    return out


def verify_commutator(group: ChevalleyGroup, x_root, y_root, trials: int, rng) -> bool:
    """Check (E_X(t), E_Y(s)) = prod E_{L_ij}(C_ij t^i s^j) on random parameters."""
    x, y = _root_of(x_root), _root_of(y_root)
    for _ in range(trials):
        t = group.field.sample(rng)
        s = group.field.sample(rng)
        a = group.gen_E(x, t)
        b = group.gen_E(y, s)
        lhs = a * b * a.inverse() * b.inverse()
        rhs = group.identity()
        for root, param in commutator_terms(group, x, t, y, s):
            rhs = rhs * group.gen_E(root, param)
        if not group.ops.eq(lhs.matrix, rhs.matrix):
            return False
    return True


# ---------------------------------------------------------------------------
# canonical forms in U: the collection process

def collect_atoms(group: ChevalleyGroup, atoms, key=None, rng=None) -> list:
    """Sort E-atoms on positive roots into `key` order, rewriting swaps with
    the commutator formula and merging equal roots.  Deterministic with the
    leftmost-inversion policy; an rng randomizes the choice (the result is
    the same by uniqueness of the normal form, which tests exercise)."""
    datum = group.datum
    if key is None:
        order = {r: i for i, r in enumerate(datum.pos_roots)}
        key = lambda root: order[root]
    work = [(tuple(r), t) for r, t in atoms if t]
    guard = 0
    while True:
        guard += 1
        if guard > 200000:
            raise GroupError("collection did not terminate")  # pragma: no cover
        spots = [i for i in range(len(work) - 1)
                 if key(work[i][0]) >= key(work[i + 1][0])]
        if not spots:
            return work
        i = spots[0] if rng is None else spots[rng.randrange(len(spots))]
        (ra, ta), (rb, tb) = work[i], work[i + 1]
        if ra == rb:
            t = ta + tb
            work[i:i + 2] = [(ra, t)] if t else []
            continue
        corr = commutator_terms(group, ra, ta, rb, tb)
        work[i:i + 2] = corr + [(rb, tb), (ra, ta)]


def normalize_U(group: ChevalleyGroup, atoms, rng=None) -> list:
    """Canonical expression of a product of positive-root E-atoms: increasing
    canonical root order, equal roots merged, zero parameters dropped."""
    for r, _ in atoms:
        if sum(_root_of(r)) <= 0:
            raise GroupError("normalize_U wants positive-root atoms")
    return collect_atoms(group, [(_root_of(r), t) for r, t in atoms], rng=rng)


def u_product(group: ChevalleyGroup, atoms) -> GroupElement:
    out = group.identity()
    for r, t in atoms:
        out = out * group.gen_E(r, t)
    return out
