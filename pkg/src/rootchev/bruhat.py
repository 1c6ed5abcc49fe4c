"""
Bruhat normal form u' h n u by constructive word rewriting.

The engine keeps a partially reduced form  x = u' . h . n_w . u  with u' and
u canonical products of positive-root generators, h a torus vector, and n_w
the product of simple n's along a reduced word of w (any reduced word gives
the same element; the braid property is exercised by tests).  Atoms of the
input word are absorbed one at a time:

  E at a positive root   joins u (collection in U);
  torus atoms            pass through n_w and rescale u;
  E at -alpha_i          is resolved through the rank-one identities
                           E_i(c) E_Ti(s) = E_Ti(s/d) h_i(d) E_i(c/d), d = 1-cs
                           E_i(c) E_Ti(s) = n_i(c) E_i(-c),            cs = 1
                         followed by conjugation through n_w (cell unchanged)
                         or absorption n_w n_i (cell grows);
  everything else        is pre-expanded into the atoms above.

At the end U is split as U^+_w U^-_w and the U^+ part folds through n_w and h
into u'.  The reassembled matrix is compared with the input as a certificate.
"""

from __future__ import annotations

from dataclasses import dataclass

from .fields import Scalar
from .group import (ChevalleyGroup, GroupElement, GroupError, WordAtom,
                    collect_atoms, eta)
from . import weyl


@dataclass(frozen=True)
class BruhatForm:
    """The unique expression x = u' h n u with u supported on R(w)."""

    u_prime: tuple          # ((root, Scalar), ...) in canonical order
    torus: tuple            # (t_1, ..., t_m), canonical representative
    weyl_word: tuple        # lex-least reduced word of w (0-based indices)
    u_minus: tuple          # ((root, Scalar), ...), roots in R(w)


@dataclass(frozen=True)
class Strategy:
    """Rewriting policy knobs; all choices must yield the same BruhatForm."""

    tiebreak_seed: int | None = None   # None: leftmost inversion in collection
    word_pick: str = "min"             # which descent to strip when conjugating


def _neg(root):
    return tuple(-x for x in root)


class _State:
    def __init__(self, group: ChevalleyGroup, strategy: Strategy):
        self.group = group
        self.datum = group.datum
        self.field = group.field
        self.strategy = strategy
        if strategy.tiebreak_seed is None:
            self.rng = None
        else:
            import random
            self.rng = random.Random(strategy.tiebreak_seed)
        m = self.datum.m
        self.u_prime: list = []
        self.torus: list = [self.field.one] * m
        self.w = weyl.identity_w(m)
        self.u: list = []

    # -- small helpers -------------------------------------------------------

    def _collect(self, atoms, key=None):
        return collect_atoms(self.group, atoms, key=key, rng=self.rng)

    def _w_word(self):
        if self.strategy.word_pick == "min":
            return weyl.canonical_word(self.datum, self.w)
        return _word_of(self.datum, self.w)

    def _chi(self, vec, root) -> Scalar:
        out = self.field.one
        for i, ti in enumerate(vec):
            e = self.datum.pairing(i, root)
            if e:
                out = out * ti ** e
        return out

    def _conj_atom_by_w(self, root, t):
        """n_w E_root(t) n_w^{-1} = E_{w(root)}(eta_w t)."""
        word = self._w_word()
        for i in reversed(word):
            t = self.group.field.scalar(eta(self.group.L, self.datum.simple_root(i), root)) * t
            root = _omega_root(self.datum, i, root)
        return root, t

    def _torus_conj_by_w(self, vec, w):
        m = self.datum.m
        out = [self.field.one] * m
        for j, tj in enumerate(vec):
            if tj == self.field.one:
                continue
            img = weyl.w_apply(w, self.datum.simple_root(j))
            for i, ci in enumerate(self.datum.coroot_coords(img)):
                if ci:
                    out[i] = out[i] * tj ** ci
        return out

    def _merge_torus(self, vec):
        self.torus = [a * b for a, b in zip(self.torus, vec)]

    def _simple_torus_vec(self, i, t: Scalar):
        vec = [self.field.one] * self.datum.m
        vec[i] = t
        return vec

    def _push_to_uprime(self, atoms):
        """Atoms sitting between h and n_w move left through h into u'."""
        moved = []
        for root, t in atoms:
            moved.append((root, self._chi(self.torus, root) * t))
        self.u_prime = self._collect(self.u_prime + moved)

    def _split_alpha_last(self, i):
        """u = u0 * E_i(c); returns (u0, c)."""
        alpha = self.datum.simple_root(i)
        order = {r: k for k, r in enumerate(self.datum.pos_roots)}
        key = lambda root: (1 if root == alpha else 0, order[root])
        work = self._collect(self.u, key=key)
        if work and work[-1][0] == alpha:
            return work[:-1], work[-1][1]
        return work, self.field.zero

    # -- atom handlers ---------------------------------------------------------

    def mul_E_pos(self, root, t: Scalar):
        if not t:
            return
        self.u = self._collect(self.u + [(root, t)])

    def mul_torus(self, vec):
        if all(x == self.field.one for x in vec):
            return
        self.u = [(root, self._chi(vec, root).inv() * t) for root, t in self.u]
        self._merge_torus(self._torus_conj_by_w(vec, self.w))

    def _absorb_bare_ni(self, i):
        """x (on state u) times n_i, assuming u has no alpha_i component."""
        conj = []
        alpha = self.datum.simple_root(i)
        for root, t in self.u:
            assert root != alpha
            sgn = eta(self.group.L, alpha, root)
            if self.group.a_value(alpha, root) % 2:
                sgn = -sgn
            conj.append((_omega_root(self.datum, i, root), self.field.scalar(sgn) * t))
        new_w = weyl.w_mul(self.w, weyl.simple_w(self.datum, i))
        if weyl.length(self.datum, new_w) < weyl.length(self.datum, self.w):
            # n_w n_i = n_{w s_i} h_i(-1); pull the torus factor through n_{w s_i}
            minus = self._simple_torus_vec(i, self.field.scalar(-1))
            self._merge_torus(self._torus_conj_by_w(minus, new_w))
        self.w = new_w
        self.u = self._collect(conj)

    def mul_n_simple(self, i, t: Scalar):
        if t != self.field.one:
            self.mul_torus(self._simple_torus_vec(i, t))
        u0, c = self._split_alpha_last(i)
        self.u = u0
        self._absorb_bare_ni(i)
        if c:
            self.mul_E_neg_simple(i, c)

    def mul_E_neg_simple(self, i, s: Scalar):
        if not s:
            return
        alpha = self.datum.simple_root(i)
        u0, c = self._split_alpha_last(i)
        self.u = u0
        delta = self.field.one - c * s
        if not delta:
            # E_i(c) E_Ti(s) = n_i(c) E_i(-c)
            self.mul_torus(self._simple_torus_vec(i, c))
            self._absorb_bare_ni(i)
            self.mul_E_pos(alpha, -c)
            return
        a = s / delta
        # E_i(c) E_Ti(s) = E_Ti(a) h_i(delta) E_i(c/delta); move E_Ti(a) left
        z = self._push_left_through(u0, i, a)
        if sum(weyl.w_apply(self.w, _neg(alpha))) > 0:
            # cell unchanged: conjugate E_Ti(a) through n_w and park it in u'
            root, t = self._conj_atom_by_w(_neg(alpha), a)
            self._push_to_uprime([(root, t)])
            self.u = z
        else:
            # cell grows: E_Ti(a) = E_i(-1/a) n_i(1/a) E_i(-1/a)
            ainv = a.inv()
            root, t = self._conj_atom_by_w(alpha, -ainv)
            self._push_to_uprime([(root, t)])
            vec = self._simple_torus_vec(i, ainv)
            self._merge_torus(self._torus_conj_by_w(vec, self.w))
            new_w = weyl.w_mul(self.w, weyl.simple_w(self.datum, i))
            assert weyl.length(self.datum, new_w) > weyl.length(self.datum, self.w)
            self.w = new_w
            self.u = self._collect([(alpha, -ainv)] + z)
        self.mul_torus(self._simple_torus_vec(i, delta))
        if c:
            self.mul_E_pos(alpha, c / delta)

    def _push_left_through(self, atoms, i, a: Scalar):
        """u0 * E_Ti(a) = E_Ti(a) * Z; returns Z (the commutator corrections
        stay positive and never hit alpha_i, so this is plain collection)."""
        from .group import commutator_terms

        nroot = _neg(self.datum.simple_root(i))
        left = list(atoms)
        right: list = []
        guard = 0
        while left:
            guard += 1
            if guard > 100000:
                raise GroupError("push-through did not terminate")  # pragma: no cover
            root, t = left.pop()
            corr = commutator_terms(self.group, root, t, nroot, a)
            for cr, _ in corr:
                assert sum(cr) > 0
            right = [(root, t)] + right
            left.extend(corr)
        return self._collect(right)

    # -- finishing --------------------------------------------------------------

    def finish(self) -> BruhatForm:
        order = {r: k for k, r in enumerate(self.datum.pos_roots)}

        def in_r_prime(root):
            return sum(weyl.w_apply(self.w, root)) > 0

        key = lambda root: (0 if in_r_prime(root) else 1, order[root])
        work = self._collect(self.u, key=key)
        plus = [(r, t) for r, t in work if in_r_prime(r)]
        minus = [(r, t) for r, t in work if not in_r_prime(r)]
        conj = []
        for root, t in plus:
            conj.append(self._conj_atom_by_w(root, t))
        self._push_to_uprime(conj)
        self.u = self._collect(minus)
        return BruhatForm(
            u_prime=tuple(self.u_prime),
            torus=tuple(_canonical_torus(self.group, self.torus)),
            weyl_word=weyl.canonical_word(self.datum, self.w),
            u_minus=tuple(self.u),
        )


def _omega_root(datum, i, root):
    return datum.reflect_simple(i, root)


from functools import lru_cache


@lru_cache(maxsize=None)
def _word_of(datum, w):
    """An alternative reduced word of w (largest descent first); same group
    element as the canonical word by the braid property."""
    word = []
    cur = w
    guard = len(datum.pos_roots) + 1
    ident = weyl.identity_w(datum.m)
    while cur != ident:
        cands = weyl.descent_candidates(datum, cur)
        i = max(cands)
        word.append(i)
        cur = weyl.w_mul(weyl.simple_w(datum, i), cur)
        guard -= 1
        assert guard >= 0
    return tuple(word)


def _canonical_torus(group: ChevalleyGroup, vec):
    """Lex-least vector inducing the same diagonal action (the ambiguity is
    the finite character kernel, of size cartan_divisor over F_q)."""
    field = group.field
    datum = group.datum
    m = datum.m
    if field.size is not None:
        pool = field.units()
        if len(pool) ** m > 300000:
            return list(vec)  # pragma: no cover
        candidates = _kernel_vectors(datum, pool, field)
    else:
        pm = [field.one, field.scalar(-1)]
        candidates = _kernel_vectors(datum, pm, field)
    best = None
    for eps in candidates:
        cand = [a * b for a, b in zip(vec, eps)]
        keyed = tuple(c.sort_key() for c in cand)
        if best is None or keyed < best[0]:
            best = (keyed, cand)
    return best[1]


def _kernel_vectors(datum, pool, field):
    import itertools

    out = []
    for eps in itertools.product(pool, repeat=datum.m):
        ok = True
        for j in range(datum.m):
            val = field.one
            for i, e in enumerate(eps):
                val = val * e ** datum.cartan[i][j]
            if val != field.one:
                ok = False
                break
        if ok:
            out.append(eps)
    return out


# ---------------------------------------------------------------------------
# atom expansion: everything becomes E+ / E-simple / torus atoms


def _expand_atoms(group: ChevalleyGroup, word):
    datum = group.datum
    out = []

    def expand_E(root, t):
        if not t:
            return
        if sum(root) > 0:
            out.append(("E+", root, t))
            return
        pos = _neg(root)
        if sum(pos) == 1:
            out.append(("E-", pos.index(1), t))
            return
        j = next(j for j in range(datum.m)
                 if datum.pairing(j, pos) > 0 and pos != datum.simple_root(j))
        lower = datum.reflect_simple(j, pos)
        sgn = eta(group.L, datum.simple_root(j), _neg(lower))
        expand_n(datum.simple_root(j), group.field.one)
        expand_E(_neg(lower), group.field.scalar(sgn) * t)
        expand_n(datum.simple_root(j), group.field.scalar(-1))

    def expand_n(root, t):
        expand_E(root, t)
        expand_E(_neg(root), t.inv())
        expand_E(root, t)

    for atom in word:
        if atom.kind == "E":
            expand_E(atom.root, atom.t)
        elif atom.kind == "h":
            vec = [group.field.one] * datum.m
            for i, c in enumerate(datum.coroot_coords(atom.root)):
                if c:
                    vec[i] = vec[i] * atom.t ** c
            out.append(("T", tuple(vec)))
        else:
            expand_n(atom.root, atom.t)
    return out


def bruhat(group: ChevalleyGroup, g: GroupElement, strategy: Strategy | None = None) -> BruhatForm:
    """Normal form x = u' h n u of a worded element; the reassembled matrix is
    checked against the input before returning."""
    if g.word is None:
        raise GroupError("bruhat needs an element that carries its generator word")
    strategy = strategy or Strategy()
    state = _State(group, strategy)
    for item in _expand_atoms(group, g.word):
        if item[0] == "E+":
            state.mul_E_pos(item[1], item[2])
        elif item[0] == "E-":
            state.mul_E_neg_simple(item[1], item[2])
        else:
            state.mul_torus(list(item[1]))
    form = state.finish()
    if not group.ops.eq(reassemble(group, form).matrix, g.matrix):
        raise GroupError("Bruhat reassembly mismatch: internal rewriting bug")
    return form


def reassemble(group: ChevalleyGroup, form: BruhatForm) -> GroupElement:
    out = group.identity()
    for root, t in form.u_prime:
        out = out * group.gen_E(root, t)
    out = GroupElement(group, group.ops.mul(out.matrix, group.torus_matrix(form.torus)),
                       None)
    for i in form.weyl_word:
        out = GroupElement(group, group.ops.mul(
            out.matrix, group.gen_n(group.datum.simple_root(i), group.field.one).matrix), None)
    for root, t in form.u_minus:
        out = GroupElement(group, group.ops.mul(out.matrix, group.gen_E(root, t).matrix), None)
    return out


def parabolic_membership(group: ChevalleyGroup, g: GroupElement, J) -> bool:
    """g in P_J = B N_J B iff every letter of the reduced Weyl word lies in J."""
    letters = set(bruhat(group, g).weyl_word)
    return letters <= set(J)
