"""Small exact linear-algebra helpers over the integers and rationals."""

from __future__ import annotations

from fractions import Fraction

Matrix = tuple[tuple[int, ...], ...]


def int_det(m: Matrix) -> int:
    """Determinant of an integer matrix by fraction-free (Bareiss) elimination."""
    n = len(m)
    if n == 0:
        return 1
    a = [list(row) for row in m]
    sign = 1
    prev = 1
    for k in range(n - 1):
        if a[k][k] == 0:
            for i in range(k + 1, n):
                if a[i][k] != 0:
                    a[k], a[i] = a[i], a[k]
                    sign = -sign
                    break
            else:
                return 0
        for i in range(k + 1, n):
            for j in range(k + 1, n):
                a[i][j] = (a[i][j] * a[k][k] - a[i][k] * a[k][j]) // prev
            a[i][k] = 0
        prev = a[k][k]
    return sign * a[n - 1][n - 1]


def fraction_inverse(m: Matrix) -> tuple[tuple[Fraction, ...], ...]:
    """Exact inverse of an integer matrix; raises ZeroDivisionError if singular."""
    n = len(m)
    a = [[Fraction(x) for x in row] + [Fraction(int(i == j)) for j in range(n)]
         for i, row in enumerate(m)]
    for col in range(n):
        piv = next(r for r in range(col, n) if a[r][col] != 0)
        a[col], a[piv] = a[piv], a[col]
        inv = Fraction(1) / a[col][col]
        a[col] = [x * inv for x in a[col]]
        for r in range(n):
            if r != col and a[r][col] != 0:
                f = a[r][col]
                a[r] = [x - f * y for x, y in zip(a[r], a[col])]
    return tuple(tuple(row[n:]) for row in a)


def ldl_decomposition(
    m: Matrix,
) -> tuple[tuple[tuple[Fraction, ...], ...], tuple[Fraction, ...]]:
    """Exact LDL^T factorisation of a symmetric positive-definite integer matrix.

    Returns (L, diag) with L unit lower triangular.  Raises ValueError if a
    pivot fails to be positive, which certifies the matrix is not positive
    definite.
    """
    n = len(m)
    lower = [[Fraction(0)] * n for _ in range(n)]
    diag = [Fraction(0)] * n
    for i in range(n):
        s = Fraction(m[i][i]) - sum(lower[i][k] ** 2 * diag[k] for k in range(i))
        if s <= 0:
            raise ValueError("matrix is not positive definite")
        diag[i] = s
        lower[i][i] = Fraction(1)
        for j in range(i + 1, n):
            t = Fraction(m[j][i]) - sum(
                lower[j][k] * lower[i][k] * diag[k] for k in range(i)
            )
            lower[j][i] = t / s
    return tuple(tuple(row) for row in lower), tuple(diag)
