"""Exact linear algebra over cyclotomic fields.

Dense matrices are lists of lists of Cyclotomic.  The sparse routines work on
rows represented as dicts column -> Cyclotomic and are intended for the large
but almost-permutation matrices produced by Galois-algebra checks.
"""

from __future__ import annotations

from .cyclotomic import Cyclotomic, cyc

ZERO = cyc(0)
ONE = cyc(1)


def identity_matrix(n):
    return [[ONE if i == j else ZERO for j in range(n)] for i in range(n)]


def mat_mul(a, b):
    n, m, k = len(a), len(b[0]), len(b)
    out = [[ZERO] * m for _ in range(n)]
    for i in range(n):
        ai = a[i]
        row = out[i]
        for t in range(k):
            v = ai[t]
            if v.is_zero():
                continue
            bt = b[t]
            for j in range(m):
                if not bt[j].is_zero():
                    row[j] = row[j] + v * bt[j]
    return out


def mat_vec(a, v):
    out = []
    for row in a:
        s = ZERO
        for x, y in zip(row, v):
            if not x.is_zero() and not y.is_zero():
                s = s + x * y
        out.append(s)
    return out


def rref(mat, ncols=None):
    """Row-reduce in place; returns (pivot column list, row rank)."""
    rows = len(mat)
    if rows == 0:
        return [], 0
    cols = ncols if ncols is not None else len(mat[0])
    pivots = []
    r = 0
    for c in range(cols):
        pivot = None
        for i in range(r, rows):
            if not mat[i][c].is_zero():
                # prefer rational pivots: their inverses are cheap
                if pivot is None or (mat[i][c].is_rational() and not mat[pivot][c].is_rational()):
                    pivot = i
                    if mat[i][c].is_rational():
                        break
        if pivot is None:
            continue
        mat[r], mat[pivot] = mat[pivot], mat[r]
        inv = mat[r][c].inverse()
        mat[r] = [x * inv for x in mat[r]]
        for i in range(rows):
            if i != r and not mat[i][c].is_zero():
                f = mat[i][c]
                mat[i] = [a - f * b for a, b in zip(mat[i], mat[r])]
        pivots.append(c)
        r += 1
        if r == rows:
            break
    return pivots, r


def rank(mat):
    work = [row[:] for row in mat]
    _, r = rref(work)
    return r


def solve(mat, rhs):
    """Solve mat @ x = rhs; returns x or None if inconsistent.

    rhs may be a vector or a matrix (list of columns is NOT assumed; it is a
    list of rows, i.e. solve for each column of rhs).
    """
    n = len(mat)
    vector_rhs = rhs and not isinstance(rhs[0], list)
    rhs_rows = [[v] for v in rhs] if vector_rhs else rhs
    m = len(mat[0])
    aug = [mat[i][:] + rhs_rows[i][:] for i in range(n)]
    pivots, _ = rref(aug, ncols=m)
    width = len(rhs_rows[0])
    sol = [[ZERO] * width for _ in range(m)]
    for r, c in enumerate(pivots):
        for j in range(width):
            sol[c][j] = aug[r][m + j]
    # consistency: rows beyond the pivots must have zero rhs
    for r in range(len(pivots), n):
        if any(not aug[r][m + j].is_zero() for j in range(width)):
            return None
    # verify free variables don't hide inconsistency for square full-rank usage
    return [row[0] for row in sol] if vector_rhs else sol


def invert(mat):
    n = len(mat)
    sol = solve(mat, identity_matrix(n))
    if sol is None:
        return None
    # solve() returns a particular solution; verify it is a two-sided inverse
    prod = mat_mul(mat, sol)
    for i in range(n):
        for j in range(n):
            if prod[i][j] != (ONE if i == j else ZERO):
                return None
    return sol


def nullspace(mat):
    """Basis of the right kernel."""
    if not mat:
        return []
    m = len(mat[0])
    work = [row[:] for row in mat]
    pivots, _ = rref(work)
    pivot_set = set(pivots)
    basis = []
    for free in range(m):
        if free in pivot_set:
            continue
        vec = [ZERO] * m
        vec[free] = ONE
        for r, c in enumerate(pivots):
            vec[c] = -work[r][free]
        basis.append(vec)
    return basis


def sparse_rank(rows, ncols=None, stop_below=None):
    """Rank of a matrix given as a list of dicts col -> Cyclotomic.

    Chooses sparsest pivot rows first, which keeps permutation-like matrices
    (the Galois-check case) effectively linear time.  If stop_below is given,
    returns early once the rank can no longer reach it.
    """
    rows = [dict(r) for r in rows if r]
    by_col: dict[int, set[int]] = {}
    for i, row in enumerate(rows):
        for c in row:
            by_col.setdefault(c, set()).add(i)
    active = set(range(len(rows)))
    rank_ = 0
    import heapq

    heap = [(len(rows[i]), i) for i in active]
    heapq.heapify(heap)
    while heap:
        _, i = heapq.heappop(heap)
        if i not in active or not rows[i]:
            continue
        active.discard(i)
        row = rows[i]
        # pivot on the column with fewest other occurrences
        c = min(row, key=lambda col: len(by_col.get(col, ())))
        rank_ += 1
        inv = row[c].inverse()
        row = {k: v * inv for k, v in row.items()}
        touched = [j for j in by_col.get(c, ()) if j in active]
        for j in touched:
            other = rows[j]
            f = other.get(c)
            if f is None:
                continue
            for k, v in row.items():
                cur = other.get(k, ZERO) - f * v
                if cur.is_zero():
                    if k in other:
                        del other[k]
                        by_col[k].discard(j)
                else:
                    if k not in other:
                        by_col.setdefault(k, set()).add(j)
                    other[k] = cur
            if other:
                heapq.heappush(heap, (len(other), j))
            else:
                active.discard(j)
        for k in row:
            by_col[k].discard(i)
    return rank_


def krylov_min_poly(matvec, start, dim):
    """Monic minimal polynomial of the operator on the cyclic span of start.

    matvec: vector -> vector.  Returns coefficients lowest-first, monic.
    Uses incremental elimination; exact.
    """
    basis = []  # echelon rows: (pivot index, vector, combo)
    v = start[:]
    combos = []
    k = 0
    while True:
        vec = v[:]
        combo = [ZERO] * (dim + 1)
        combo[k] = ONE
        for piv, bvec, bcombo in basis:
            if not vec[piv].is_zero():
                f = vec[piv]
                vec = [a - f * b for a, b in zip(vec, bvec)]
                combo = [a - f * b for a, b in zip(combo, bcombo)]
        piv = next((i for i, x in enumerate(vec) if not x.is_zero()), None)
        if piv is None:
            # combo encodes the dependency: sum combo[i] M^i start = 0
            lead = combo[k]
            inv = lead.inverse()
            return [c * inv for c in combo[: k + 1]]
        inv = vec[piv].inverse()
        vec = [x * inv for x in vec]
        combo = [x * inv for x in combo]
        basis.append((piv, vec, combo))
        v = matvec(v)
        k += 1
        if k > dim:
            raise AssertionError("minimal polynomial exceeds dimension")
