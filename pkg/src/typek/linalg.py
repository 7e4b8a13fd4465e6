"""Exact integer and rational linear algebra.

Matrices are plain nested lists (row-major) of Python ``int`` or
``fractions.Fraction``.  Nothing here ever touches floating point.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction

from typing import List, Sequence, Tuple

IntMatrix = List[List[int]]
Matrix = List[list]


def shape(A: Sequence[Sequence]) -> Tuple[int, int]:
    return len(A), (len(A[0]) if A else 0)


def identity(n: int) -> IntMatrix:
    return [[int(i == j) for j in range(n)] for i in range(n)]


def zeros(m: int, n: int) -> IntMatrix:
    return [[0] * n for _ in range(m)]


def copy(A: Sequence[Sequence]) -> Matrix:
    return [list(row) for row in A]


def transpose(A: Sequence[Sequence]) -> Matrix:
    return [list(col) for col in zip(*A)] if A else []


def matmul(A: Sequence[Sequence], B: Sequence[Sequence]) -> Matrix:
    Bt = transpose(B)
    return [[sum(a * b for a, b in zip(row, col)) for col in Bt] for row in A]


def matvec(A: Sequence[Sequence], x: Sequence) -> list:
    return [sum(a * b for a, b in zip(row, x)) for row in A]


def bilinear(G: Sequence[Sequence], x: Sequence, y: Sequence):
    """``x^T G y``."""
    return sum(xi * gij * yj for xi, row in zip(x, G) for gij, yj in zip(row, y) if xi and gij)


def congruence(P: Sequence[Sequence], G: Sequence[Sequence]) -> Matrix:
    """Rows of ``P`` are vectors; returns their Gram matrix ``P G P^T``."""
    return matmul(matmul(P, G), transpose(P))


def block_diag(*blocks: Sequence[Sequence]) -> Matrix:
    n = sum(len(b) for b in blocks)
    out = zeros(n, n)
    k = 0
    for b in blocks:
        for i, row in enumerate(b):
            for j, v in enumerate(row):
                out[k + i][k + j] = v
        k += len(b)
    return out


def is_symmetric(A: Sequence[Sequence]) -> bool:
    n = len(A)
    return all(len(row) == n for row in A) and all(
        A[i][j] == A[j][i] for i in range(n) for j in range(i + 1, n)
    )


def det(A: Sequence[Sequence]):
    """Determinant by fraction-free Bareiss elimination (exact for ints)."""
    n = len(A)
    if n == 0:
        return 1
    M = copy(A)
    sign = 1
    prev = 1
    for k in range(n - 1):
        if M[k][k] == 0:
            for i in range(k + 1, n):
                if M[i][k] != 0:
                    M[k], M[i] = M[i], M[k]
                    sign = -sign
                    break
            else:
                return 0
        for i in range(k + 1, n):
            for j in range(k + 1, n):
                num = M[i][j] * M[k][k] - M[i][k] * M[k][j]
                M[i][j] = num // prev if isinstance(num, int) and isinstance(prev, int) else num / prev
        prev = M[k][k]
    return sign * M[n - 1][n - 1]


def rank(A: Sequence[Sequence]) -> int:
    return len(rref(A)[1])


def rref(A: Sequence[Sequence]) -> Tuple[Matrix, List[int]]:
    """Reduced row echelon form over Q; returns (R, pivot columns)."""
    M = [[Fraction(v) for v in row] for row in A]
    m, n = shape(M)
    pivots: List[int] = []
    r = 0
    for c in range(n):
        p = next((i for i in range(r, m) if M[i][c] != 0), None)
        if p is None:
            continue
        M[r], M[p] = M[p], M[r]
        inv = 1 / M[r][c]
        M[r] = [v * inv for v in M[r]]
        for i in range(m):
            if i != r and M[i][c] != 0:
                f = M[i][c]
                M[i] = [a - f * b for a, b in zip(M[i], M[r])]
        pivots.append(c)
        r += 1
        if r == m:
            break
    return M, pivots


def inverse(A: Sequence[Sequence]) -> Matrix:
    """Inverse over Q (Gauss-Jordan).  Raises ``ZeroDivisionError`` if singular."""
    n = len(A)
    aug = [list(row) + [Fraction(int(i == j)) for j in range(n)] for i, row in enumerate(A)]
    R, piv = rref(aug)
    if piv[:n] != list(range(n)):
        raise ZeroDivisionError("matrix is singular")
    return [row[n:] for row in R]


def nullspace(A: Sequence[Sequence], ncols: int | None = None) -> Matrix:
    """Basis (as rows) of the rational right kernel of ``A``."""
    n = ncols if ncols is not None else shape(A)[1]
    if not A:
        return [[Fraction(int(i == j)) for j in range(n)] for i in range(n)]
    R, piv = rref(A)
    free = [c for c in range(n) if c not in piv]
    basis = []
    for f in free:
        v = [Fraction(0)] * n
        v[f] = Fraction(1)
        for i, p in enumerate(piv):
            v[p] = -R[i][f]
        basis.append(v)
    return basis


def solve(A: Sequence[Sequence], b: Sequence) -> list | None:
    """One rational solution of ``A x = b`` or ``None`` if inconsistent."""
    n = shape(A)[1]
    R, piv = rref([list(row) + [bi] for row, bi in zip(A, b)])
    if n in piv:
        return None
    x = [Fraction(0)] * n
    for i, p in enumerate(piv):
        x[p] = R[i][n]
    return x


# ---------------------------------------------------------------------------
# Smith normal form


@dataclass(frozen=True)
class SnfResult:
    """``U @ A @ V == D`` with ``U``, ``V`` unimodular."""

    D: IntMatrix
    U: IntMatrix
    V: IntMatrix

    @property
    def divisors(self) -> List[int]:
        """Nonzero diagonal entries, in divisibility order."""
        k = min(shape(self.D))
        return [self.D[i][i] for i in range(k) if self.D[i][i] != 0]


def smith_normal_form(A: Sequence[Sequence[int]]) -> SnfResult:
    """Smith normal form with transforms, pivoting on the smallest entry."""
    m, n = shape(A)
    D = [[int(v) for v in row] for row in A]
    U = identity(m)
    V = identity(n)

    def swap_rows(i, j):
        D[i], D[j] = D[j], D[i]
        U[i], U[j] = U[j], U[i]

    def swap_cols(i, j):
        for M in (D, V):
            for row in M:
                row[i], row[j] = row[j], row[i]

    def add_row(dst, src, c):  # row_dst += c * row_src
        D[dst] = [a + c * b for a, b in zip(D[dst], D[src])]
        U[dst] = [a + c * b for a, b in zip(U[dst], U[src])]

    def add_col(dst, src, c):
        for M in (D, V):
            for row in M:
                row[dst] += c * row[src]

    t = 0
    while t < min(m, n):
        entries = [(abs(D[i][j]), i, j) for i in range(t, m) for j in range(t, n) if D[i][j]]
        if not entries:
            break
        _, pi, pj = min(entries)
        swap_rows(t, pi)
        swap_cols(t, pj)
        while True:
            p = D[t][t]
            for i in range(t + 1, m):
                if D[i][t]:
                    add_row(i, t, -(D[i][t] // p))
            for j in range(t + 1, n):
                if D[t][j]:
                    add_col(j, t, -(D[t][j] // p))
            rest = [(abs(D[i][t]), i, t) for i in range(t + 1, m) if D[i][t]]
            rest += [(abs(D[t][j]), t, j) for j in range(t + 1, n) if D[t][j]]
            if rest:
                _, pi, pj = min(rest)
                swap_rows(t, pi)
                swap_cols(t, pj)
                continue
            bad = next(
                (i for i in range(t + 1, m) for j in range(t + 1, n) if D[i][j] % p),
                None,
            )
            if bad is None:
                break
            add_row(t, bad, 1)
        if D[t][t] < 0:
            D[t] = [-v for v in D[t]]
            U[t] = [-v for v in U[t]]
        t += 1
    return SnfResult(D, U, V)


def elementary_divisors(A: Sequence[Sequence[int]]) -> List[int]:
    return smith_normal_form(A).divisors


def row_basis(A: Sequence[Sequence[int]]) -> IntMatrix:
    """A Z-basis (rows) of the row module of an integer matrix."""
    if not A:
        return []
    snf = smith_normal_form(A)
    Vinv = inverse(snf.V)
    return [[int(d * v) for v in Vinv[i]] for i, d in enumerate(snf.divisors)]


def saturated_kernel(A: Sequence[Sequence[int]], ncols: int | None = None) -> IntMatrix:
    """Rows spanning ``{x in Z^n : A x = 0}``; the span is primitive in Z^n."""
    n = ncols if ncols is not None else shape(A)[1]
    if not A or all(v == 0 for row in A for v in row):
        return identity(n)
    snf = smith_normal_form(A)
    r = len(snf.divisors)
    Vt = transpose(snf.V)
    return [list(Vt[j]) for j in range(r, n)]


# ---------------------------------------------------------------------------
# Symmetric congruence


def congruent_diagonalize(S: Sequence[Sequence]) -> Tuple[Matrix, List[Fraction]]:
    """Return ``(P, d)`` with ``P^T S P = diag(d)`` over Q."""
    n = len(S)
    M = [[Fraction(v) for v in row] for row in S]
    P = [[Fraction(int(i == j)) for j in range(n)] for i in range(n)]

    def col_op(dst, src, c):  # basis_dst += c * basis_src, applied congruently
        for row in M:
            row[dst] += c * row[src]
        M[dst] = [a + c * b for a, b in zip(M[dst], M[src])]
        for row in P:
            row[dst] += c * row[src]

    def swap(i, j):
        M[i], M[j] = M[j], M[i]
        for row in M:
            row[i], row[j] = row[j], row[i]
        for row in P:
            row[i], row[j] = row[j], row[i]

    for k in range(n):
        piv = next((i for i in range(k, n) if M[i][i] != 0), None)
        if piv is None:
            off = next(((i, j) for i in range(k, n) for j in range(i + 1, n) if M[i][j] != 0), None)
            if off is None:
                break
            i, j = off
            col_op(i, j, Fraction(1))
            piv = i
        swap(k, piv)
        p = M[k][k]
        for j in range(k + 1, n):
            if M[k][j] != 0:
                col_op(j, k, -M[k][j] / p)
    return P, [M[i][i] for i in range(n)]
