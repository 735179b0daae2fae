"""Small exact Gaussian-elimination helpers.

Matrices are lists of row lists of int element codes; all arithmetic goes
through a FieldTower. The same routines serve both the embedded subfields
(codes below p^s are closed under the tower ops) and the full top field.
"""

from __future__ import annotations

from .ff_core import FieldTower


def identity(n: int) -> list[list[int]]:
    return [[1 if i == j else 0 for j in range(n)] for i in range(n)]


def mat_mul(t: FieldTower, A, B) -> list[list[int]]:
    rows, inner, cols = len(A), len(B), len(B[0]) if B else 0
    out = [[0] * cols for _ in range(rows)]
    for i in range(rows):
        Ai = A[i]
        for k in range(inner):
            a = Ai[k]
            if a == 0:
                continue
            Bk = B[k]
            Oi = out[i]
            for j in range(cols):
                if Bk[j]:
                    Oi[j] = t.add(Oi[j], t.mul(a, Bk[j]))
    return out


def mat_vec(t: FieldTower, A, v) -> list[int]:
    return [c[0] for c in mat_mul(t, A, [[x] for x in v])]


def vec_mat(t: FieldTower, v, A) -> list[int]:
    return mat_mul(t, [list(v)], A)[0]


def transpose(A) -> list[list[int]]:
    return [list(col) for col in zip(*A)] if A else []


def rref(t: FieldTower, rows) -> tuple[list[list[int]], list[int]]:
    """Reduced row echelon form; returns (nonzero rows, pivot columns)."""
    M = [list(r) for r in rows]
    if not M:
        return [], []
    ncols = len(M[0])
    pivots: list[int] = []
    r = 0
    for c in range(ncols):
        pr = next((i for i in range(r, len(M)) if M[i][c] != 0), None)
        if pr is None:
            continue
        M[r], M[pr] = M[pr], M[r]
        inv = t.inv(M[r][c])
        M[r] = [t.mul(inv, x) for x in M[r]]
        for i in range(len(M)):
            if i != r and M[i][c] != 0:
                f = M[i][c]
                M[i] = [t.sub(M[i][j], t.mul(f, M[r][j])) for j in range(ncols)]
        pivots.append(c)
        r += 1
        if r == len(M):
            break
    return M[:r], pivots


def nullspace(t: FieldTower, A) -> list[list[int]]:
    """Basis of {x : A x = 0}, one vector per free column."""
    if not A:
        return []
    ncols = len(A[0])
    R, pivots = rref(t, A)
    free = [c for c in range(ncols) if c not in pivots]
    basis = []
    for fc in free:
        v = [0] * ncols
        v[fc] = 1
        for r, pc in enumerate(pivots):
            v[pc] = t.neg(R[r][fc])
        basis.append(v)
    return basis


def det(t: FieldTower, A) -> int:
    """Determinant by forward elimination."""
    M = [list(r) for r in A]
    n = len(M)
    d = 1
    for c in range(n):
        pr = next((i for i in range(c, n) if M[i][c] != 0), None)
        if pr is None:
            return 0
        if pr != c:
            M[c], M[pr] = M[pr], M[c]
            d = t.neg(d)
        d = t.mul(d, M[c][c])
        inv = t.inv(M[c][c])
        for i in range(c + 1, n):
            if M[i][c] != 0:
                f = t.mul(inv, M[i][c])
                M[i] = [t.sub(M[i][j], t.mul(f, M[c][j])) for j in range(n)]
    return d


def mat_inv(t: FieldTower, A):
    """Inverse matrix, or None when singular."""
    n = len(A)
    M = [list(A[i]) + identity(n)[i] for i in range(n)]
    R, pivots = rref(t, M)
    if pivots[:n] != list(range(n)):
        return None
    return [row[n:] for row in R]


def solve_right(t: FieldTower, A, b):
    """One solution x of A x = b with free variables 0, or None."""
    if not A:
        return [] if all(v == 0 for v in b) else None
    ncols = len(A[0])
    aug = [list(A[i]) + [b[i]] for i in range(len(A))]
    R, pivots = rref(t, aug)
    if ncols in pivots:
        return None
    x = [0] * ncols
    for r, pc in enumerate(pivots):
        x[pc] = R[r][ncols]
    return x


def solve_left(t: FieldTower, A, b):
    """One solution y of y A = b with free variables 0, or None."""
    sol = solve_right(t, transpose(A), b)
    return sol
