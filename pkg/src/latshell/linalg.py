"""Exact integer and rational matrix kernel.

Matrices are plain row-major sequences of sequences. Integer results come
back as ``list[list[int]]``; rational results as ``list[list[Fraction]]``.
Nothing in here touches floating point.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from math import gcd
from typing import Sequence

Matrix = Sequence[Sequence[int]]
RatMatrix = list[list[Fraction]]


class LinalgError(ValueError):
    pass


class NotSymmetricError(LinalgError):
    pass


class NotPositiveDefiniteError(LinalgError):
    pass


def shape(a: Matrix) -> tuple[int, int]:
    rows = len(a)
    if rows == 0:
        raise LinalgError("empty matrix")
    cols = len(a[0])
    if cols == 0 or any(len(r) != cols for r in a):
        raise LinalgError("ragged or zero-width matrix")
    return rows, cols


def identity(n: int) -> list[list[int]]:
    return [[int(i == j) for j in range(n)] for i in range(n)]


def diag(entries: Sequence[int]) -> list[list[int]]:
    n = len(entries)
    return [[entries[i] if i == j else 0 for j in range(n)] for i in range(n)]


def transpose(a):
    return [list(col) for col in zip(*a)]


def matmul(a, b):
    bt = list(zip(*b))
    if len(a[0]) != len(bt[0]):
        raise LinalgError("dimension mismatch in product")
    return [[sum(x * y for x, y in zip(row, col)) for col in bt] for row in a]


def matvec(a, v):
    return [sum(x * y for x, y in zip(row, v)) for row in a]


def bilinear(g, x, y):
    """Return x^T g y."""
    return sum(xi * gij * yj for xi, row in zip(x, g) for gij, yj in zip(row, y) if xi)


def quad(g, x):
    return bilinear(g, x, x)


def is_symmetric(a: Matrix) -> bool:
    n, m = shape(a)
    return n == m and all(a[i][j] == a[j][i] for i in range(n) for j in range(i))


def det(a: Matrix) -> int:
    """Determinant by fraction-free (Bareiss) elimination."""
    n, m = shape(a)
    if n != m:
        raise LinalgError(f"det of non-square {n}x{m} matrix")
    w = [list(map(int, row)) for row in a]
    sign = 1
    prev = 1
    for k in range(n - 1):
        if w[k][k] == 0:
            swap = next((i for i in range(k + 1, n) if w[i][k] != 0), None)
            if swap is None:
                return 0
            w[k], w[swap] = w[swap], w[k]
            sign = -sign
        pivot = w[k][k]
        for i in range(k + 1, n):
            wi, wk = w[i], w[k]
            for j in range(k + 1, n):
                wi[j] = (wi[j] * pivot - wi[k] * wk[j]) // prev
            wi[k] = 0
        prev = pivot
    return sign * w[n - 1][n - 1]


def leading_minors(a: Matrix) -> list[int]:
    n, _ = shape(a)
    return [det([row[:k] for row in a[:k]]) for k in range(1, n + 1)]


def is_positive_definite(a: Matrix) -> bool:
    """Sylvester's criterion on a symmetric integer matrix."""
    return is_symmetric(a) and all(m > 0 for m in leading_minors(a))


def ldlt(a: Matrix) -> tuple[RatMatrix, list[Fraction]]:
    """Exact A = L diag(d) L^T with L unit lower-triangular.

    Returns ``(L, d)`` where ``d`` holds the (positive) pivots.
    """
    if not is_symmetric(a):
        raise NotSymmetricError("ldlt needs a symmetric matrix")
    if not all(m > 0 for m in leading_minors(a)):
        raise NotPositiveDefiniteError("matrix is not positive definite")
    n = len(a)
    low = [[Fraction(int(i == j)) for j in range(n)] for i in range(n)]
    d: list[Fraction] = []
    for j in range(n):
        dj = Fraction(a[j][j]) - sum(low[j][k] ** 2 * d[k] for k in range(j))
        d.append(dj)
        for i in range(j + 1, n):
            s = Fraction(a[i][j]) - sum(low[i][k] * low[j][k] * d[k] for k in range(j))
            low[i][j] = s / dj
    return low, d


def rational_inverse(a: Matrix) -> RatMatrix:
    """Gauss-Jordan inverse over Q."""
    n, m = shape(a)
    if n != m:
        raise LinalgError("inverse of non-square matrix")
    w = [[Fraction(x) for x in row] + [Fraction(int(i == j)) for j in range(n)]
         for i, row in enumerate(a)]
    for c in range(n):
        p = next((r for r in range(c, n) if w[r][c] != 0), None)
        if p is None:
            raise LinalgError("singular matrix")
        w[c], w[p] = w[p], w[c]
        inv = 1 / w[c][c]
        w[c] = [x * inv for x in w[c]]
        for r in range(n):
            if r != c and w[r][c] != 0:
                f = w[r][c]
                w[r] = [x - f * y for x, y in zip(w[r], w[c])]
    return [row[n:] for row in w]


def integer_inverse(a: Matrix) -> list[list[int]]:
    """Inverse of a unimodular integer matrix."""
    inv = rational_inverse(a)
    if any(x.denominator != 1 for row in inv for x in row):
        raise LinalgError("matrix is not unimodular")
    return [[int(x) for x in row] for row in inv]


# -- Smith normal form -------------------------------------------------------

@dataclass(frozen=True)
class SnfResult:
    U: list[list[int]]
    S: list[list[int]]
    V: list[list[int]]

    @property
    def invariant_factors(self) -> tuple[int, ...]:
        k = min(len(self.S), len(self.S[0]))
        return tuple(self.S[i][i] for i in range(k))


def smith_normal_form(a: Matrix) -> SnfResult:
    """Return U, S, V with U·A·V = S diagonal and d1 | d2 | ... .

    The pivot choice is deterministic (smallest absolute value, first in
    row-major order), so the output is canonical for a fixed input.
    """
    m, n = shape(a)
    s = [list(map(int, row)) for row in a]
    u = identity(m)
    v = identity(n)

    def swap_rows(i, j):
        s[i], s[j] = s[j], s[i]
        u[i], u[j] = u[j], u[i]

    def swap_cols(i, j):
        for row in s:
            row[i], row[j] = row[j], row[i]
        for row in v:
            row[i], row[j] = row[j], row[i]

    def add_row(dst, src, f):  # row_dst += f * row_src
        s[dst] = [x + f * y for x, y in zip(s[dst], s[src])]
        u[dst] = [x + f * y for x, y in zip(u[dst], u[src])]

    def add_col(dst, src, f):
        for row in s:
            row[dst] += f * row[src]
        for row in v:
            row[dst] += f * row[src]

    for t in range(min(m, n)):
        while True:
            best = None
            for i in range(t, m):
                for j in range(t, n):
                    if s[i][j] and (best is None or abs(s[i][j]) < abs(s[best[0]][best[1]])):
                        best = (i, j)
            if best is None:
                break
            swap_rows(t, best[0])
            swap_cols(t, best[1])
            p = s[t][t]
            dirty = False
            for i in range(t + 1, m):
                if s[i][t]:
                    add_row(i, t, -(s[i][t] // p))
                    dirty = dirty or s[i][t] != 0
            for j in range(t + 1, n):
                if s[t][j]:
                    add_col(j, t, -(s[t][j] // p))
                    dirty = dirty or s[t][j] != 0
            if dirty:
                continue
            bad = next((i for i in range(t + 1, m)
                        if any(s[i][j] % p for j in range(t + 1, n))), None)
            if bad is None:
                break
            add_row(t, bad, 1)
        if s[t][t] < 0:
            s[t] = [-x for x in s[t]]
            u[t] = [-x for x in u[t]]
    return SnfResult(u, s, v)


def invariant_factors(a: Matrix) -> tuple[int, ...]:
    return smith_normal_form(a).invariant_factors


# -- Hermite normal form -----------------------------------------------------

def _xgcd(a: int, b: int) -> tuple[int, int, int]:
    x0, x1, y0, y1 = 1, 0, 0, 1
    while b:
        q, a, b = a // b, b, a % b
        x0, x1 = x1, x0 - q * x1
        y0, y1 = y1, y0 - q * y1
    return a, x0, y0


def hermite_normal_form(rows: Matrix) -> list[list[int]]:
    """Row-style HNF: a basis of the Z-span of ``rows``.

    Nonzero rows only, pivots positive and strictly moving right, entries
    above each pivot reduced into [0, pivot).
    """
    _, n = shape(rows)
    w = [list(map(int, r)) for r in rows]
    out: list[list[int]] = []
    col = 0
    while w and col < n:
        nz = [r for r in w if r[col]]
        if not nz:
            col += 1
            continue
        piv = nz[0]
        for r in nz[1:]:
            g, x, y = _xgcd(piv[col], r[col])
            a, b = piv[col] // g, r[col] // g
            new_piv = [x * p + y * q for p, q in zip(piv, r)]
            r[:] = [b * p - a * q for p, q in zip(piv, r)]
            piv = new_piv
        if piv[col] < 0:
            piv = [-x for x in piv]
        w = [r for r in w if r[col] == 0 and any(r)]
        out.append(piv)
        col += 1
    for i, r in enumerate(out):
        c = next(j for j, x in enumerate(r) if x)
        for k in range(i):
            f = out[k][c] // r[c]
            if f:
                out[k] = [x - f * y for x, y in zip(out[k], r)]
    return out


def content(values) -> int:
    g = 0
    for x in values:
        g = gcd(g, int(x))
    return g
