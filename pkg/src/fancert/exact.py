"""Small exact linear algebra kit over Fraction.

Matrices are tuples of row tuples. Dimensions here are tiny (the field
degree), so plain Gaussian elimination with exact pivots is the right tool;
nothing is cached or vectorized.
"""

from __future__ import annotations

from fractions import Fraction
from typing import Iterable, Sequence

Row = tuple[Fraction, ...]
Matrix = tuple[Row, ...]


def to_fraction(x) -> Fraction:
    if isinstance(x, Fraction):
        return x
    if isinstance(x, int):
        return Fraction(x)
    if isinstance(x, str):
        return Fraction(x)
    raise TypeError(f"cannot interpret {x!r} as an exact rational")


def matrix(rows: Iterable[Iterable]) -> Matrix:
    return tuple(tuple(to_fraction(x) for x in row) for row in rows)


def identity(n: int) -> Matrix:
    return tuple(
        tuple(Fraction(int(i == j)) for j in range(n)) for i in range(n)
    )


def mat_vec(a: Matrix, v: Sequence[Fraction]) -> Row:
    return tuple(sum((a[i][j] * v[j] for j in range(len(v))), Fraction(0))
                 for i in range(len(a)))


def mat_mul(a: Matrix, b: Matrix) -> Matrix:
    n, k, m = len(a), len(b), len(b[0])
    return tuple(
        tuple(sum((a[i][p] * b[p][j] for p in range(k)), Fraction(0))
              for j in range(m))
        for i in range(n)
    )


def transpose(a: Matrix) -> Matrix:
    return tuple(zip(*a))


def trace(a: Matrix) -> Fraction:
    return sum((a[i][i] for i in range(len(a))), Fraction(0))


def mat_add(a: Matrix, b: Matrix) -> Matrix:
    return tuple(tuple(x + y for x, y in zip(ra, rb)) for ra, rb in zip(a, b))


def mat_scale(a: Matrix, c: Fraction) -> Matrix:
    return tuple(tuple(c * x for x in row) for row in a)


def solve(a: Matrix, b: Sequence[Fraction]) -> Row:
    """Solve the square system a x = b exactly. Raises ValueError if singular."""
    n = len(a)
    aug = [list(row) + [to_fraction(x)] for row, x in zip(a, b)]
    for col in range(n):
        piv = next((r for r in range(col, n) if aug[r][col] != 0), None)
        if piv is None:
            raise ValueError("singular system")
        aug[col], aug[piv] = aug[piv], aug[col]
        inv = 1 / aug[col][col]
        aug[col] = [x * inv for x in aug[col]]
        for r in range(n):
            if r != col and aug[r][col] != 0:
                f = aug[r][col]
                aug[r] = [x - f * y for x, y in zip(aug[r], aug[col])]
    return tuple(row[n] for row in aug)


def inverse(a: Matrix) -> Matrix:
    n = len(a)
    cols = [solve(a, tuple(Fraction(int(i == j)) for i in range(n)))
            for j in range(n)]
    return transpose(matrix(cols))


def rank(a: Matrix) -> int:
    """Exact rank (row echelon over Q)."""
    rows = [list(r) for r in a]
    nrows, ncols = len(rows), len(rows[0]) if rows else 0
    r = 0
    for col in range(ncols):
        piv = next((i for i in range(r, nrows) if rows[i][col] != 0), None)
        if piv is None:
            continue
        rows[r], rows[piv] = rows[piv], rows[r]
        inv = 1 / rows[r][col]
        rows[r] = [x * inv for x in rows[r]]
        for i in range(nrows):
            if i != r and rows[i][col] != 0:
                f = rows[i][col]
                rows[i] = [x - f * y for x, y in zip(rows[i], rows[r])]
        r += 1
        if r == nrows:
            break
    return r


def char_poly(a: Matrix) -> tuple[Fraction, ...]:
    """Characteristic polynomial of a square matrix, constant term first.

    Faddeev-LeVerrier recursion; exact and O(n^4), fine at field-degree sizes.
    Returns det(X I - a) as monic coefficients c_0..c_n (low degree first).
    """
    n = len(a)
    coeffs = [Fraction(0)] * (n + 1)
    coeffs[n] = Fraction(1)
    m = identity(n)
    c = Fraction(1)
    for k in range(1, n + 1):
        m = mat_mul(a, mat_add(m, mat_scale(identity(n), c))) if k > 1 else a
        c = -trace(m) / k
        coeffs[n - k] = c
    return tuple(coeffs)


def first_dependency(vectors: Sequence[Sequence[Fraction]]) -> tuple[Fraction, ...] | None:
    """Return coefficients (c_0..c_{k-1}, 1) with sum c_i v_i + v_k = 0 for the
    first prefix v_0..v_k that is linearly dependent, or None if independent.

    Used as the second, elimination-based route to minimal polynomials.
    """
    basis: list[list[Fraction]] = []          # reduced echelon rows
    coords: list[list[Fraction]] = []         # expression of each basis row in inputs
    for k, v in enumerate(vectors):
        row = [to_fraction(x) for x in v]
        expr = [Fraction(0)] * k + [Fraction(1)]
        for b, e in zip(basis, coords):
            piv = next(j for j, x in enumerate(b) if x != 0)
            if row[piv] != 0:
                f = row[piv]
                row = [x - f * y for x, y in zip(row, b)]
                expr = [x - f * y for x, y in
                        zip(expr, e + [Fraction(0)] * (k + 1 - len(e)))]
        if all(x == 0 for x in row):
            return tuple(expr)
        piv = next(j for j, x in enumerate(row) if x != 0)
        inv = 1 / row[piv]
        basis.append([x * inv for x in row])
        coords.append([x * inv for x in expr])
    return None
