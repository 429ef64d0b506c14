"""Dense exact linear algebra over any field whose elements support + - * / and bool().

Used with :class:`fractions.Fraction` and :class:`~isosing.exactfield.CycloElement`.
"""

from __future__ import annotations

from typing import Sequence

Matrix = list[list]


def identity(n: int, one, zero) -> Matrix:
    return [[one if i == j else zero for j in range(n)] for i in range(n)]


def mat_mul(A: Sequence[Sequence], B: Sequence[Sequence]) -> Matrix:
    cols = list(zip(*B))
    out = []
    for row in A:
        out.append([_dot(row, col) for col in cols])
    return out


def _dot(u, v):
    acc = None
    for a, b in zip(u, v):
        if a and b:
            acc = a * b if acc is None else acc + a * b
    return acc if acc is not None else u[0] - u[0]


def transpose(A: Sequence[Sequence]) -> Matrix:
    return [list(col) for col in zip(*A)]


def rref(A: Sequence[Sequence]) -> tuple[Matrix, list[int]]:
    """Reduced row echelon form and pivot columns."""
    M = [list(r) for r in A]
    rows = len(M)
    cols = len(M[0]) if rows else 0
    pivots = []
    r = 0
    for c in range(cols):
        piv = next((i for i in range(r, rows) if M[i][c]), None)
        if piv is None:
            continue
        M[r], M[piv] = M[piv], M[r]
        p = M[r][c]
        M[r] = [v / p for v in M[r]]
        for i in range(rows):
            if i != r and M[i][c]:
                f = M[i][c]
                M[i] = [a - f * b for a, b in zip(M[i], M[r])]
        pivots.append(c)
        r += 1
        if r == rows:
            break
    return M, pivots


def rank(A: Sequence[Sequence]) -> int:
    if not A:
        return 0
    return len(rref(A)[1])


def kernel(A: Sequence[Sequence], one, zero) -> Matrix:
    """Basis of the right null space, one vector per free column."""
    cols = len(A[0])
    R, pivots = rref(A)
    free = [c for c in range(cols) if c not in pivots]
    basis = []
    for f in free:
        v = [zero] * cols
        v[f] = one
        for i, p in enumerate(pivots):
            v[p] = -R[i][f]
        basis.append(v)
    return basis


def inverse(A: Sequence[Sequence], one, zero) -> Matrix:
    n = len(A)
    aug = [list(A[i]) + identity(n, one, zero)[i] for i in range(n)]
    R, pivots = rref(aug)
    if pivots[:n] != list(range(n)):
        raise ZeroDivisionError("singular matrix")
    return [row[n:] for row in R]


def det(A: Sequence[Sequence], one, zero):
    M = [list(r) for r in A]
    n = len(M)
    result = one
    for c in range(n):
        piv = next((i for i in range(c, n) if M[i][c]), None)
        if piv is None:
            return zero
        if piv != c:
            M[c], M[piv] = M[piv], M[c]
            result = -result
        p = M[c][c]
        result = result * p
        for i in range(c + 1, n):
            if M[i][c]:
                f = M[i][c] / p
                M[i] = [a - f * b for a, b in zip(M[i], M[c])]
    return result
