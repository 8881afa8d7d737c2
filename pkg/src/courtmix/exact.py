"""Exact rational linear algebra on small dense matrices.

Systems are solved by fraction-free (Bareiss) elimination: rows are scaled
to integers first, every intermediate stays an integer, and division is
exact. Only the final back-substitution produces Fractions.
"""

from __future__ import annotations

from fractions import Fraction
from math import lcm
from typing import Sequence

Matrix = list[list[Fraction]]


class SingularSystem(ArithmeticError):
    pass


def identity(n: int) -> Matrix:
    return [[Fraction(int(i == j)) for j in range(n)] for i in range(n)]


def matmul(a: Sequence[Sequence[Fraction]], b: Sequence[Sequence[Fraction]]) -> Matrix:
    cols = list(zip(*b))
    return [[sum((x * y for x, y in zip(row, col)), Fraction(0)) for col in cols] for row in a]


def vecmat(v: Sequence[Fraction], m: Sequence[Sequence[Fraction]]) -> list[Fraction]:
    return [sum((v[i] * m[i][j] for i in range(len(v))), Fraction(0)) for j in range(len(m[0]))]


def matpow(m: Sequence[Sequence[Fraction]], n: int) -> Matrix:
    result = identity(len(m))
    base = [list(r) for r in m]
    while n:
        if n & 1:
            result = matmul(result, base)
        n >>= 1
        if n:
            base = matmul(base, base)
    return result


def _integer_rows(rows: Sequence[Sequence[Fraction]]) -> list[list[int]]:
    out = []
    for row in rows:
        scale = lcm(*(Fraction(x).denominator for x in row))
        out.append([int(Fraction(x) * scale) for x in row])
    return out


def solve_many(a: Sequence[Sequence[Fraction]], rhs: Sequence[Sequence[Fraction]]) -> Matrix:
    """Solve ``a @ X = rhs`` (rhs given column-wise as rows of length n)."""
    n = len(a)
    k = len(rhs)
    aug = [list(a[i]) + [rhs[j][i] for j in range(k)] for i in range(n)]
    m = _integer_rows(aug)
    width = n + k
    prev = 1
    for col in range(n):
        pivot = next((r for r in range(col, n) if m[r][col] != 0), None)
        if pivot is None:
            raise SingularSystem(f"matrix is singular (column {col})")
        if pivot != col:
            m[col], m[pivot] = m[pivot], m[col]
        p = m[col][col]
        for r in range(col + 1, n):
            f = m[r][col]
            row_r, row_c = m[r], m[col]
            for j in range(col + 1, width):
                row_r[j] = (row_r[j] * p - f * row_c[j]) // prev
            row_r[col] = 0
        prev = p
    x = [[Fraction(0)] * k for _ in range(n)]
    for i in reversed(range(n)):
        for j in range(k):
            s = Fraction(m[i][n + j])
            for c in range(i + 1, n):
                s -= m[i][c] * x[c][j]
            x[i][j] = s / m[i][i]
    return [[x[i][j] for i in range(n)] for j in range(k)]


def solve(a: Sequence[Sequence[Fraction]], b: Sequence[Fraction]) -> list[Fraction]:
    return solve_many(a, [b])[0]


def inverse(a: Sequence[Sequence[Fraction]]) -> Matrix:
    n = len(a)
    cols = solve_many(a, identity(n))
    return [[cols[j][i] for j in range(n)] for i in range(n)]
