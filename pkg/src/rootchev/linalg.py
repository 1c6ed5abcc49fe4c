"""
Small exact linear algebra: Smith normal form over Z and dense routines mod p.

Everything here works on python ints (no floats).  Sizes are tiny (Cartan
matrices, quiver representation spaces of total dimension <= 8), so clarity
beats asymptotics throughout.
"""

from __future__ import annotations

import itertools


def smith_normal_form(mat) -> list[int]:
    """Elementary divisors d_1 | d_2 | ... of an integer matrix (nonneg, zeros last)."""
    a = [list(row) for row in mat]
    m = len(a)
    n = len(a[0]) if m else 0
    divisors = []
    top = 0
    while top < min(m, n):
        # find smallest nonzero pivot in the remaining block
        best = None
        for i in range(top, m):
            for j in range(top, n):
                if a[i][j] and (best is None or abs(a[i][j]) < abs(a[best[0]][best[1]])):
                    best = (i, j)
        if best is None:
            break
        i0, j0 = best
        a[top], a[i0] = a[i0], a[top]
        for row in a:
            row[top], row[j0] = row[j0], row[top]
        pivot = a[top][top]
        reduced = False
        for i in range(top + 1, m):
            q = a[i][top] // pivot
            if q:
                for j in range(top, n):
                    a[i][j] -= q * a[top][j]
            if a[i][top]:
                reduced = True
        for j in range(top + 1, n):
            q = a[top][j] // pivot
            if q:
                for i in range(top, m):
                    a[i][j] -= q * a[i][top]
            if a[top][j]:
                reduced = True
        if reduced:
            continue  # new, smaller residues appeared; pick a pivot again
        # divisibility condition: pivot must divide the rest of the block
        offender = None
        for i in range(top + 1, m):
            for j in range(top + 1, n):
                if a[i][j] % pivot:
                    offender = i
                    break
            if offender is not None:
                break
        if offender is not None:
            for j in range(top, n):
                a[top][j] += a[offender][j]
            continue
        divisors.append(abs(pivot))
        top += 1
    return divisors + [0] * (min(m, n) - len(divisors))


# ---------------------------------------------------------------------------
# dense linear algebra over F_p (matrices are lists of lists of residues)


def mat_mul_mod(a, b, p):
    n, k, m = len(a), len(b), len(b[0]) if b else 0
    out = [[0] * m for _ in range(n)]
    for i in range(n):
        ai = a[i]
        oi = out[i]
        for t in range(k):
            c = ai[t]
            if c:
                bt = b[t]
                for j in range(m):
                    oi[j] = (oi[j] + c * bt[j]) % p
    return out


def rref_mod(mat, p):
    """Row-reduced echelon form; returns (rows, pivot_columns)."""
    rows = [list(r) for r in mat]
    n = len(rows)
    m = len(rows[0]) if n else 0
    pivots = []
    r = 0
    for c in range(m):
        pr = next((i for i in range(r, n) if rows[i][c] % p), None)
        if pr is None:
            continue
        rows[r], rows[pr] = rows[pr], rows[r]
        inv = pow(rows[r][c], p - 2, p)
        rows[r] = [(x * inv) % p for x in rows[r]]
        for i in range(n):
            if i != r and rows[i][c] % p:
                f = rows[i][c]
                rows[i] = [(x - f * y) % p for x, y in zip(rows[i], rows[r])]
        pivots.append(c)
        r += 1
        if r == n:
            break
    return [row for row in rows[:r]], pivots


def rank_mod(mat, p) -> int:
    rows, _ = rref_mod(mat, p)
    return len(rows)


def nullity_mod(mat, p) -> int:
    if not mat:
        return 0
    return len(mat[0]) - rank_mod(mat, p)


def nullspace_mod(mat, p):
    """Basis (list of vectors) of the right nullspace of mat over F_p."""
    if not mat or not mat[0]:
        return [[1 if j == i else 0 for j in range(len(mat[0]) if mat else 0)]
                for i in range(len(mat[0]) if mat else 0)]
    m = len(mat[0])
    rows, pivots = rref_mod(mat, p)
    free = [j for j in range(m) if j not in pivots]
    basis = []
    for f in free:
        v = [0] * m
        v[f] = 1
        for r, c in enumerate(pivots):
            v[c] = (-rows[r][f]) % p
        basis.append(v)
    return basis


def in_rowspan_mod(vec, rref_rows, pivots, p) -> bool:
    v = [x % p for x in vec]
    for r, c in enumerate(pivots):
        if v[c]:
            f = v[c]
            v = [(x - f * y) % p for x, y in zip(v, rref_rows[r])]
    return not any(v)


def subspaces_mod(dim: int, k: int, p: int):
    """All k-dimensional subspaces of F_p^dim as reduced echelon bases (row lists)."""
    if k == 0:
        yield []
        return
    if k > dim:
        return
    for pivots in itertools.combinations(range(dim), k):
        free_positions = []
        for r, c in enumerate(pivots):
            for j in range(c + 1, dim):
                if j not in pivots:
                    free_positions.append((r, j))
        for values in itertools.product(range(p), repeat=len(free_positions)):
            rows = [[0] * dim for _ in range(k)]
            for r, c in enumerate(pivots):
                rows[r][c] = 1
            for (r, j), val in zip(free_positions, values):
                rows[r][j] = val
            yield rows


def solve_mod(mat, rhs, p):
    """One solution x of mat @ x = rhs over F_p, or None."""
    n = len(mat)
    m = len(mat[0]) if n else 0
    aug = [list(mat[i]) + [rhs[i] % p] for i in range(n)]
    rows, pivots = rref_mod(aug, p)
    x = [0] * m
    for r, c in zip(range(len(rows)), pivots):
        if c == m:
            return None  # inconsistent
        x[c] = rows[r][m]
    return x


def det_mod(mat, p) -> int:
    rows = [list(r) for r in mat]
    n = len(rows)
    det = 1
    for c in range(n):
        pr = next((i for i in range(c, n) if rows[i][c] % p), None)
        if pr is None:
            return 0
        if pr != c:
            rows[c], rows[pr] = rows[pr], rows[c]
            det = -det
        det = det * rows[c][c] % p
        inv = pow(rows[c][c], p - 2, p)
        for i in range(c + 1, n):
            if rows[i][c]:
                f = rows[i][c] * inv % p
                rows[i] = [(x - f * y) % p for x, y in zip(rows[i], rows[c])]
    return det % p


def det_fraction(mat):
    """Exact determinant of a matrix of Fractions/ints (Gaussian elimination)."""
    from fractions import Fraction

    rows = [[Fraction(x) for x in r] for r in mat]
    n = len(rows)
    det = Fraction(1)
    for c in range(n):
        pr = next((i for i in range(c, n) if rows[i][c]), None)
        if pr is None:
            return Fraction(0)
        if pr != c:
            rows[c], rows[pr] = rows[pr], rows[c]
            det = -det
        det *= rows[c][c]
        inv = 1 / rows[c][c]
        for i in range(c + 1, n):
            if rows[i][c]:
                f = rows[i][c] * inv
                rows[i] = [x - f * y for x, y in zip(rows[i], rows[c])]
    return det
