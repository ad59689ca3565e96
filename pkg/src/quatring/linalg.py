"""Exact linear algebra over Q and Z.

Matrices are lists of rows.  Entries are ints or Fractions; nothing here
ever touches a float.
"""

from fractions import Fraction
from math import gcd, lcm

from .errors import SingularMatrixError


def identity(n):
    return [[Fraction(int(i == j)) for j in range(n)] for i in range(n)]


def transpose(m):
    return [list(col) for col in zip(*m)]


def mat_mul(a, b):
    bt = transpose(b)
    return [[sum((x * y for x, y in zip(row, col)), Fraction(0)) for col in bt] for row in a]


def mat_vec(m, v):
    return [sum((x * y for x, y in zip(row, v)), Fraction(0)) for row in m]


def vec_mat(v, m):
    """Row vector times matrix."""
    return [sum((v[k] * m[k][j] for k in range(len(v))), Fraction(0)) for j in range(len(m[0]))]


def clear_denominators(m):
    """Return (d, integer matrix) with m == integer matrix / d."""
    d = 1
    for row in m:
        for x in row:
            d = lcm(d, Fraction(x).denominator)
    return d, [[int(Fraction(x) * d) for x in row] for row in m]


def det(m):
    """Determinant by Bareiss fraction-free elimination."""
    n = len(m)
    if n == 0:
        return Fraction(1)
    d, a = clear_denominators(m)
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
        prev = a[k][k]
    return Fraction(sign * a[n - 1][n - 1], d**n)


def rref(m):
    """Reduced row echelon form; returns (rows, pivot columns)."""
    a = [[Fraction(x) for x in row] for row in m]
    rows = len(a)
    cols = len(a[0]) if rows else 0
    pivots = []
    r = 0
    for c in range(cols):
        piv = next((i for i in range(r, rows) if a[i][c] != 0), None)
        if piv is None:
            continue
        a[r], a[piv] = a[piv], a[r]
        inv = 1 / a[r][c]
        a[r] = [x * inv for x in a[r]]
        for i in range(rows):
            if i != r and a[i][c] != 0:
                f = a[i][c]
                a[i] = [x - f * y for x, y in zip(a[i], a[r])]
        pivots.append(c)
        r += 1
        if r == rows:
            break
    return a, pivots


def rank(m):
    return len(rref(m)[1]) if m else 0


def kernel(m, ncols=None):
    """Basis of {x : m x = 0}, one vector per free column."""
    if not m:
        n = ncols or 0
        return [[Fraction(int(i == j)) for i in range(n)] for j in range(n)]
    n = len(m[0])
    a, pivots = rref(m)
    free = [c for c in range(n) if c not in pivots]
    basis = []
    for f in free:
        v = [Fraction(0)] * n
        v[f] = Fraction(1)
        for row, pc in zip(a, pivots):
            v[pc] = -row[f]
        basis.append(v)
    return basis


def inverse(m):
    n = len(m)
    aug = [list(row) + [Fraction(int(i == j)) for j in range(n)] for i, row in enumerate(m)]
    a, pivots = rref(aug)
    if pivots[:n] != list(range(n)):
        raise SingularMatrixError("matrix is singular")
    return [row[n:] for row in a[:n]]


def solve(m, b):
    """Solve m x = b for square invertible m."""
    return mat_vec(inverse(m), b)


def hnf(rows, ncols):
    """Lower-triangular row Hermite normal form of an integer lattice.

    The result has one row per column, row ``i`` has its pivot in column
    ``i`` (positive), zeros to the right of the pivot, and entries to the
    left reduced into ``[0, pivot of that column)``.  Raises
    SingularMatrixError if the rows do not have full rank.
    """
    work = [list(map(int, r)) for r in rows if any(r)]
    out = [None] * ncols
    for c in reversed(range(ncols)):
        active = [r for r in work if r[c] != 0]
        rest = [r for r in work if r[c] == 0]
        while len(active) > 1:
            active.sort(key=lambda r: abs(r[c]))
            piv = active[0]
            nxt = [piv]
            for r in active[1:]:
                q = r[c] // piv[c]
                r = [x - q * y for x, y in zip(r, piv)]
                if r[c] != 0:
                    nxt.append(r)
                elif any(r):
                    rest.append(r)
            active = nxt
        if not active:
            raise SingularMatrixError("lattice does not have full rank")
        piv = active[0]
        if piv[c] < 0:
            piv = [-x for x in piv]
        out[c] = piv
        work = rest
    for c in range(ncols):
        row = out[c]
        for k in reversed(range(c)):
            q = row[k] // out[k][k]
            if q:
                row = [x - q * y for x, y in zip(row, out[k])]
        out[c] = row
    return out


def content(rows):
    g = 0
    for r in rows:
        for x in r:
            g = gcd(g, int(x))
    return g
