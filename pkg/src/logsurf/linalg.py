"""Exact fraction-free linear algebra over the rationals.

Matrices are plain lists of rows.  Rational input is cleared to integers
row by row before elimination, so every intermediate quantity in the
Bareiss recurrences is an integer.
"""

from __future__ import annotations

from fractions import Fraction
from math import lcm
from typing import Sequence

Matrix = Sequence[Sequence[Fraction]]


def _integer_rows(rows: Matrix) -> list[list[int]]:
    """Scale each row by the lcm of its denominators."""
    out = []
    for row in rows:
        scale = 1
        for v in row:
            scale = lcm(scale, Fraction(v).denominator)
        out.append([int(Fraction(v) * scale) for v in row])
    return out


def leading_minor_signs(matrix: Matrix) -> list[int]:
    """Signs of the leading principal minors of a square rational matrix.

    Uses Bareiss elimination without pivoting: after step k the pivot
    equals the k-th leading minor of the integer-scaled matrix.  Row
    scaling by positive factors does not change any minor's sign.
    Elimination stops at the first vanishing minor; the remaining entries
    of the result are then 0.
    """
    n = len(matrix)
    a = _integer_rows(matrix)
    signs = [0] * n
    prev = 1
    for k in range(n):
        pivot = a[k][k]
        if pivot == 0:
            return signs
        signs[k] = 1 if pivot > 0 else -1
        for i in range(k + 1, n):
            for j in range(k + 1, n):
                a[i][j] = (a[i][j] * pivot - a[i][k] * a[k][j]) // prev
            a[i][k] = 0
        prev = pivot
    return signs


def is_negative_definite(matrix: Matrix) -> bool:
    """Sylvester's criterion: the k-th leading minor has sign (-1)^k."""
    n = len(matrix)
    if n == 0:
        return True
    negated = [[-Fraction(v) for v in row] for row in matrix]
    return all(s > 0 for s in leading_minor_signs(negated))


def determinant(matrix: Matrix) -> Fraction:
    """Exact determinant via Bareiss with row pivoting."""
    n = len(matrix)
    if n == 0:
        return Fraction(1)
    scales = []
    for row in matrix:
        s = 1
        for v in row:
            s = lcm(s, Fraction(v).denominator)
        scales.append(s)
    a = [[int(Fraction(v) * s) for v in row] for row, s in zip(matrix, scales)]
    sign = 1
    prev = 1
    for k in range(n - 1):
        if a[k][k] == 0:
            for r in range(k + 1, n):
                if a[r][k] != 0:
                    a[k], a[r] = a[r], a[k]
                    sign = -sign
                    break
            else:
                return Fraction(0)
        for i in range(k + 1, n):
            for j in range(k + 1, n):
                a[i][j] = (a[i][j] * a[k][k] - a[i][k] * a[k][j]) // prev
            a[i][k] = 0
        prev = a[k][k]
    total_scale = 1
    for s in scales:
        total_scale *= s
    return Fraction(sign * a[n - 1][n - 1], total_scale)


class SingularMatrixError(ArithmeticError):
    pass


def solve(matrix: Matrix, rhs: Sequence[Fraction]) -> list[Fraction]:
    """Solve ``matrix @ x = rhs`` exactly.

    Fraction-free forward elimination on the integer-scaled augmented
    matrix, then rational back substitution.  Raises SingularMatrixError
    when the system has no unique solution.
    """
    n = len(matrix)
    if n == 0:
        return []
    aug = _integer_rows([list(row) + [rhs[i]] for i, row in enumerate(matrix)])
    prev = 1
    for k in range(n):
        if aug[k][k] == 0:
            for r in range(k + 1, n):
                if aug[r][k] != 0:
                    aug[k], aug[r] = aug[r], aug[k]
                    break
            else:
                raise SingularMatrixError("matrix is singular")
        pivot = aug[k][k]
        for i in range(k + 1, n):
            for j in range(k + 1, n + 1):
                aug[i][j] = (aug[i][j] * pivot - aug[i][k] * aug[k][j]) // prev
            aug[i][k] = 0
        prev = pivot
    x = [Fraction(0)] * n
    for i in range(n - 1, -1, -1):
        acc = Fraction(aug[i][n])
        for j in range(i + 1, n):
            acc -= aug[i][j] * x[j]
        x[i] = acc / aug[i][i]
    return x
