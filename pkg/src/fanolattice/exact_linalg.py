"""Exact integer and rational linear algebra.

Matrices are plain lists of rows.  Entries are Python ``int`` (arbitrary
precision) or :class:`fractions.Fraction`; nothing here ever touches a
float.
"""
from __future__ import annotations

from fractions import Fraction
from math import gcd
from typing import Iterable, Sequence

IntVector = tuple[int, ...]
IntMatrix = list[list[int]]
RatVector = tuple[Fraction, ...]
RatMatrix = list[list[Fraction]]


def identity(n: int) -> IntMatrix:
    return [[int(i == j) for j in range(n)] for i in range(n)]


def transpose(m: Sequence[Sequence]) -> list[list]:
    return [list(col) for col in zip(*m)]


def matmul(a: Sequence[Sequence], b: Sequence[Sequence]) -> list[list]:
    bt = transpose(b)
    return [[sum(x * y for x, y in zip(row, col)) for col in bt] for row in a]


def matvec(a: Sequence[Sequence], v: Sequence) -> tuple:
    return tuple(sum(x * y for x, y in zip(row, v)) for row in a)


def dot(u: Sequence, v: Sequence):
    return sum(x * y for x, y in zip(u, v))


def vector_gcd(v: Iterable[int]) -> int:
    g = 0
    for x in v:
        g = gcd(g, x)
    return g


def is_primitive(v: Sequence[int]) -> bool:
    return vector_gcd(v) == 1


def primitive_part(v: Sequence[int]) -> IntVector:
    g = vector_gcd(v)
    if g == 0:
        raise ValueError("zero vector has no primitive part")
    return tuple(x // g for x in v)


def _check_square(m: Sequence[Sequence]) -> int:
    n = len(m)
    if any(len(row) != n for row in m):
        raise ValueError(f"expected a square matrix, got {n} rows of lengths "
                         f"{sorted({len(r) for r in m})}")
    return n


def determinant(m: Sequence[Sequence[int]]) -> int:
    """Exact determinant by Bareiss fraction-free elimination."""
    n = _check_square(m)
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
        pivot = a[k][k]
        for i in range(k + 1, n):
            for j in range(k + 1, n):
                a[i][j] = (a[i][j] * pivot - a[i][k] * a[k][j]) // prev
        prev = pivot
    return sign * a[n - 1][n - 1]


def is_unimodular(m: Sequence[Sequence[int]]) -> bool:
    return abs(determinant(m)) == 1


def hermite_normal_form(m: Sequence[Sequence[int]]) -> tuple[IntMatrix, IntMatrix]:
    """Row-operation Hermite normal form.

    Returns ``(H, U)`` with ``U`` unimodular and ``U @ m == H``.  ``H`` is in
    row echelon form; each pivot is positive and the entries above a pivot
    lie in ``[0, pivot)``.  Zero rows sit at the bottom.  Pivot columns are
    scanned left to right and, within a column, the row with the smallest
    nonzero absolute value (lowest index on ties) is chosen, so the output
    is a deterministic function of the input.
    """
    rows = len(m)
    cols = len(m[0]) if rows else 0
    h = [list(map(int, row)) for row in m]
    u = identity(rows)
    r = 0
    for c in range(cols):
        if r == rows:
            break
        while True:
            nonzero = [i for i in range(r, rows) if h[i][c] != 0]
            if not nonzero:
                break
            p = min(nonzero, key=lambda i: (abs(h[i][c]), i))
            if p != r:
                h[r], h[p] = h[p], h[r]
                u[r], u[p] = u[p], u[r]
            done = True
            for i in range(r + 1, rows):
                if h[i][c]:
                    q = h[i][c] // h[r][c]
                    if q:
                        h[i] = [x - q * y for x, y in zip(h[i], h[r])]
                        u[i] = [x - q * y for x, y in zip(u[i], u[r])]
                    if h[i][c]:
                        done = False
            if done:
                break
        if r < rows and h[r][c] != 0:
            if h[r][c] < 0:
                h[r] = [-x for x in h[r]]
                u[r] = [-x for x in u[r]]
            piv = h[r][c]
            for i in range(r):
                q = h[i][c] // piv
                if q:
                    h[i] = [x - q * y for x, y in zip(h[i], h[r])]
                    u[i] = [x - q * y for x, y in zip(u[i], u[r])]
            r += 1
    return h, u


def rank(m: Sequence[Sequence]) -> int:
    return len(row_echelon(m))


def row_echelon(m: Sequence[Sequence]) -> list[list[Fraction]]:
    """Reduced row echelon form over Q, zero rows dropped."""
    a = [[Fraction(x) for x in row] for row in m]
    if not a:
        return []
    cols = len(a[0])
    out: list[list[Fraction]] = []
    r = 0
    for c in range(cols):
        p = next((i for i in range(r, len(a)) if a[i][c] != 0), None)
        if p is None:
            continue
        a[r], a[p] = a[p], a[r]
        piv = a[r][c]
        a[r] = [x / piv for x in a[r]]
        for i in range(len(a)):
            if i != r and a[i][c] != 0:
                f = a[i][c]
                a[i] = [x - f * y for x, y in zip(a[i], a[r])]
        r += 1
        if r == len(a):
            break
    out = [row for row in a[:r]]
    return out


def rational_solve(a: Sequence[Sequence], b: Sequence) -> RatVector | None:
    """Solve ``a x = b`` exactly.

    Returns one solution (free variables set to zero) or ``None`` when the
    system is inconsistent.
    """
    rows = len(a)
    if rows != len(b):
        raise ValueError("right-hand side length does not match row count")
    cols = len(a[0]) if rows else 0
    aug = [list(row) + [bi] for row, bi in zip(a, b)]
    ech = row_echelon(aug)
    x = [Fraction(0)] * cols
    for row in ech:
        lead = next(j for j, v in enumerate(row) if v != 0)
        if lead == cols:
            return None
        x[lead] = row[cols]
    return tuple(x)


def nullspace(m: Sequence[Sequence]) -> list[list[Fraction]]:
    """Basis of the right kernel ``{x : m x = 0}`` over Q."""
    if not m:
        raise ValueError("nullspace of an empty matrix needs a column count")
    cols = len(m[0])
    ech = row_echelon(m)
    pivots = []
    for row in ech:
        pivots.append(next(j for j, v in enumerate(row) if v != 0))
    free = [j for j in range(cols) if j not in pivots]
    basis = []
    for f in free:
        x = [Fraction(0)] * cols
        x[f] = Fraction(1)
        for row, p in zip(ech, pivots):
            x[p] = -row[f]
        basis.append(x)
    return basis


def integer_kernel_vector(m: Sequence[Sequence[int]]) -> IntVector:
    """Primitive integer generator of a one-dimensional right kernel."""
    ker = nullspace(m)
    if len(ker) != 1:
        raise ValueError(f"kernel has dimension {len(ker)}, expected 1")
    v = ker[0]
    den = 1
    for x in v:
        den = den * x.denominator // gcd(den, x.denominator)
    return primitive_part([int(x * den) for x in v])


def inverse(m: Sequence[Sequence]) -> RatMatrix:
    n = _check_square(m)
    aug = [[Fraction(x) for x in row] + [Fraction(int(i == j)) for j in range(n)]
           for i, row in enumerate(m)]
    ech = row_echelon(aug)
    if len(ech) < n or any(ech[i][i] != 1 for i in range(n)):
        raise ZeroDivisionError("matrix is singular")
    return [row[n:] for row in ech]


def integer_inverse(m: Sequence[Sequence[int]]) -> IntMatrix:
    """Inverse of a unimodular integer matrix."""
    inv = inverse(m)
    if any(x.denominator != 1 for row in inv for x in row):
        raise ValueError("matrix is not unimodular")
    return [[int(x) for x in row] for row in inv]


def fixed_space_dimension(mats: Sequence[Sequence[Sequence[int]]]) -> int:
    """Dimension of the common fixed space ``{x : g x = x for all g}``.

    Computed as ``n - rank`` of the stacked matrices ``g - I``.  Duplicate
    rows are dropped before elimination, which matters for large groups.
    """
    if not mats:
        raise ValueError("need at least one matrix")
    n = len(mats[0])
    rows: set[tuple[int, ...]] = set()
    for g in mats:
        if _check_square(g) != n:
            raise ValueError("matrices have different sizes")
        for i, row in enumerate(g):
            r = tuple(x - (i == j) for j, x in enumerate(row))
            if any(r):
                rows.add(r)
    if not rows:
        return n
    return n - rank(sorted(rows))


def scaled_inverse(m: Sequence[Sequence[int]]) -> tuple[int, IntMatrix]:
    """Return ``(d, R)`` with ``R @ m == d * I`` and ``d != 0``.

    Fraction-free Gauss-Jordan elimination; every intermediate division is
    exact.  ``|d| == |det m|``.  Raises ``ZeroDivisionError`` on singular
    input.
    """
    n = _check_square(m)
    a = [list(row) + [int(i == j) for j in range(n)] for i, row in enumerate(m)]
    prev = 1
    for k in range(n):
        if a[k][k] == 0:
            for i in range(k + 1, n):
                if a[i][k] != 0:
                    a[k], a[i] = a[i], a[k]
                    break
            else:
                raise ZeroDivisionError("matrix is singular")
        pk = a[k][k]
        rk = a[k]
        for i in range(n):
            if i == k:
                continue
            ri = a[i]
            f = ri[k]
            a[i] = [(pk * x - f * y) // prev for x, y in zip(ri, rk)]
        prev = pk
    d = a[n - 1][n - 1]
    return d, [row[n:] for row in a]
