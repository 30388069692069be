"""Small matrices over exact rings: determinants, adjugates, Pfaffians, rank.

Entries may be ints, Fractions or :class:`~keyvar.exactpoly.Polynomial`
objects; the routines only use ring operations.  Sizes here never exceed 6,
so cofactor expansion is fast enough and keeps the code ring-agnostic.
"""
from __future__ import annotations

from fractions import Fraction
from typing import Sequence

Matrix = list[list]


def shape(m: Sequence[Sequence]) -> tuple[int, int]:
    rows = len(m)
    cols = len(m[0]) if rows else 0
    if any(len(r) != cols for r in m):
        raise ValueError("ragged matrix")
    return rows, cols


def _require_square(m: Sequence[Sequence]) -> int:
    r, c = shape(m)
    if r != c:
        raise ValueError(f"matrix is {r}x{c}, not square")
    return r


def _is_zero(x) -> bool:
    return x == 0


def transpose(m: Sequence[Sequence]) -> Matrix:
    return [list(col) for col in zip(*m)]


def matmul(a: Sequence[Sequence], b: Sequence[Sequence]) -> Matrix:
    ra, ca = shape(a)
    rb, cb = shape(b)
    if ca != rb:
        raise ValueError(f"cannot multiply {ra}x{ca} by {rb}x{cb}")
    out = []
    for i in range(ra):
        row = []
        for j in range(cb):
            acc = 0
            for k in range(ca):
                if not _is_zero(a[i][k]) and not _is_zero(b[k][j]):
                    acc = acc + a[i][k] * b[k][j]
            row.append(acc)
        out.append(row)
    return out


def matvec(a: Sequence[Sequence], v: Sequence) -> list:
    return [row[0] for row in matmul(a, [[x] for x in v])]


def dot(u: Sequence, v: Sequence):
    acc = 0
    for x, y in zip(u, v):
        acc = acc + x * y
    return acc


def scale(m: Sequence[Sequence], c) -> Matrix:
    return [[c * x for x in row] for row in m]


def add(a: Sequence[Sequence], b: Sequence[Sequence]) -> Matrix:
    return [[x + y for x, y in zip(ra, rb)] for ra, rb in zip(a, b)]


def identity(n: int, one=1) -> Matrix:
    zero = one * 0
    return [[one if i == j else zero for j in range(n)] for i in range(n)]


def minor(m: Sequence[Sequence], i: int, j: int) -> Matrix:
    return [row[:j] + row[j + 1:] for k, row in enumerate(m) if k != i]


def determinant(m: Sequence[Sequence]):
    """Determinant by cofactor expansion along the sparsest row."""
    n = _require_square(m)
    m = [list(r) for r in m]
    if n == 0:
        return 1
    if n == 1:
        return m[0][0]
    if n == 2:
        return m[0][0] * m[1][1] - m[0][1] * m[1][0]
    zeros = [sum(_is_zero(x) for x in row) for row in m]
    i = max(range(n), key=lambda k: zeros[k])
    acc = 0
    for j in range(n):
        if _is_zero(m[i][j]):
            continue
        sign = -1 if (i + j) % 2 else 1
        acc = acc + sign * m[i][j] * determinant(minor(m, i, j))
    return acc


def adjugate(m: Sequence[Sequence]) -> Matrix:
    """Classical adjoint, so that ``adjugate(m) @ m == det(m) * I``."""
    n = _require_square(m)
    if n == 1:
        return [[1]]
    cof = [[(-1 if (i + j) % 2 else 1) * determinant(minor(m, i, j))
            for j in range(n)] for i in range(n)]
    return transpose(cof)


def is_skew(m: Sequence[Sequence]) -> bool:
    n = _require_square(m)
    return all(_is_zero(m[i][j] + m[j][i]) for i in range(n) for j in range(n))


def is_symmetric(m: Sequence[Sequence]) -> bool:
    n = _require_square(m)
    return all(_is_zero(m[i][j] - m[j][i]) for i in range(n) for j in range(i + 1, n))


def pfaffian(m: Sequence[Sequence]):
    """Pfaffian of an even-size skew matrix, expanding along the first row."""
    n = _require_square(m)
    if not is_skew(m):
        raise ValueError("pfaffian needs a skew-symmetric matrix")
    if n % 2:
        raise ValueError("pfaffian needs an even-size matrix")
    return _pf(m, list(range(n)))


def _pf(m, idx: list[int]):
    if not idx:
        return 1
    first, rest = idx[0], idx[1:]
    acc = 0
    for k, j in enumerate(rest):
        if _is_zero(m[first][j]):
            continue
        sub = rest[:k] + rest[k + 1:]
        sign = -1 if k % 2 else 1
        acc = acc + sign * m[first][j] * _pf(m, sub)
    return acc


def sub_pfaffians(m: Sequence[Sequence]) -> list:
    """Signed 4x4 Pfaffians of a 5x5 skew matrix.

    Entry ``i`` (0-based) is ``(-1)**i`` times the Pfaffian with row and
    column ``i`` deleted.  These are the generators of the Pfaffian ideal.
    """
    n = _require_square(m)
    if n != 5:
        raise ValueError("sub_pfaffians expects a 5x5 matrix")
    if not is_skew(m):
        raise ValueError("sub_pfaffians needs a skew-symmetric matrix")
    out = []
    for i in range(5):
        keep = [k for k in range(5) if k != i]
        val = _pf(m, keep)
        out.append(-val if i % 2 else val)
    return out


def skew_from_upper(upper: Sequence[Sequence], zero=0) -> Matrix:
    """Build an n x n skew matrix from its strict upper triangle.

    ``upper[i]`` lists the entries ``(i, i+1), ..., (i, n-1)``.
    """
    n = len(upper) + 1
    m = [[zero for _ in range(n)] for _ in range(n)]
    for i, row in enumerate(upper):
        if len(row) != n - 1 - i:
            raise ValueError("upper triangle has wrong row lengths")
        for k, x in enumerate(row):
            j = i + 1 + k
            m[i][j] = x
            m[j][i] = -x
    return m


def numeric_rank(m: Sequence[Sequence]) -> int:
    """Exact rank of a rational matrix by fraction-free (Bareiss) elimination."""
    rows = [[Fraction(x) for x in r] for r in m]
    if not rows:
        return 0
    # clear denominators row by row so elimination stays in the integers
    ints = []
    for r in rows:
        lcm = 1
        for x in r:
            d = x.denominator
            lcm = lcm * d // _gcd(lcm, d)
        ints.append([int(x * lcm) for x in r])
    nr, nc = len(ints), len(ints[0])
    rank = 0
    prev = 1
    col = 0
    while rank < nr and col < nc:
        pivot = next((i for i in range(rank, nr) if ints[i][col]), None)
        if pivot is None:
            col += 1
            continue
        ints[rank], ints[pivot] = ints[pivot], ints[rank]
        p = ints[rank][col]
        for i in range(rank + 1, nr):
            for j in range(col + 1, nc):
                ints[i][j] = (p * ints[i][j] - ints[i][col] * ints[rank][j]) // prev
            ints[i][col] = 0
        prev = p
        rank += 1
        col += 1
    return rank


def _gcd(a: int, b: int) -> int:
    while b:
        a, b = b, a % b
    return abs(a)


def row_reduce(m: Sequence[Sequence]) -> tuple[Matrix, list[int]]:
    """Reduced row echelon form over Q and the list of pivot columns."""
    a = [[Fraction(x) for x in r] for r in m]
    nr = len(a)
    nc = len(a[0]) if nr else 0
    pivots = []
    r = 0
    for c in range(nc):
        p = next((i for i in range(r, nr) if a[i][c]), None)
        if p is None:
            continue
        a[r], a[p] = a[p], a[r]
        inv = 1 / a[r][c]
        a[r] = [x * inv for x in a[r]]
        for i in range(nr):
            if i != r and a[i][c]:
                f = a[i][c]
                a[i] = [x - f * y for x, y in zip(a[i], a[r])]
        pivots.append(c)
        r += 1
        if r == nr:
            break
    return a, pivots
