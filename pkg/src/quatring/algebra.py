"""Finite-dimensional Q-algebras given by structure constants.

A table ``c`` encodes ``e_i e_j = sum_k c[i][j][k] e_k``.  Indices are
0-based in code; ``e_0`` is always the identity.
"""

from __future__ import annotations

import json
from dataclasses import dataclass
from fractions import Fraction
from itertools import product

from . import linalg
from .arith import format_rational, to_rational
from .errors import (
    NoIdentityError,
    NoStandardInvolutionError,
    NotAssociativeError,
    PreconditionError,
)
from .trace import step

MAX_DIM = 8


class MultiplicationTable:
    """Structure constants of a unital associative algebra over Q.

    The constructor checks that ``e_0`` is a two-sided identity and that
    associativity holds on every triple of basis elements.
    """

    def __init__(self, c, check: bool = True):
        n = len(c)
        if not 2 <= n <= MAX_DIM:
            raise PreconditionError(f"dimension must be between 2 and {MAX_DIM}, got {n}")
        self.c = tuple(
            tuple(tuple(to_rational(x) for x in c[i][j]) for j in range(n)) for i in range(n)
        )
        if any(len(c[i]) != n or any(len(c[i][j]) != n for j in range(n)) for i in range(n)):
            raise PreconditionError("structure constants must form an n x n x n array")
        self.dim = n
        self._involution = None
        self._involution_done = False
        if check:
            self._check_identity()
            self._check_associative()

    def _check_identity(self):
        n = self.dim
        for j, k in product(range(n), repeat=2):
            want = int(j == k)
            if self.c[0][j][k] != want or self.c[j][0][k] != want:
                raise NoIdentityError("e_1 is not a two-sided identity")

    def _check_associative(self):
        n = self.dim
        basis = [self.basis_coords(i) for i in range(n)]
        prods = [[self.mul_coords(basis[i], basis[j]) for j in range(n)] for i in range(n)]
        for i, j, k in product(range(n), repeat=3):
            if self.mul_coords(prods[i][j], basis[k]) != self.mul_coords(basis[i], prods[j][k]):
                raise NotAssociativeError((i + 1, j + 1, k + 1))

    def __eq__(self, other):
        return isinstance(other, MultiplicationTable) and self.c == other.c

    def __hash__(self):
        return hash(self.c)

    def __repr__(self):
        return f"MultiplicationTable(dim={self.dim})"

    def basis_coords(self, i):
        return tuple(Fraction(int(k == i)) for k in range(self.dim))

    def mul_coords(self, x, y):
        n, c = self.dim, self.c
        z = [Fraction(0)] * n
        for i in range(n):
            if not x[i]:
                continue
            for j in range(n):
                if not y[j]:
                    continue
                xy = x[i] * y[j]
                row = c[i][j]
                for k in range(n):
                    if row[k]:
                        z[k] += xy * row[k]
        return tuple(z)

    def element(self, coords) -> "AlgebraElement":
        return AlgebraElement(self, tuple(to_rational(x) for x in coords))

    def basis(self) -> list["AlgebraElement"]:
        return [AlgebraElement(self, self.basis_coords(i)) for i in range(self.dim)]

    def one(self) -> "AlgebraElement":
        return AlgebraElement(self, self.basis_coords(0))

    def zero(self) -> "AlgebraElement":
        return AlgebraElement(self, (Fraction(0),) * self.dim)

    def standard_involution(self) -> "StandardInvolutionData | None":
        if not self._involution_done:
            self._involution = has_standard_involution(self)
            self._involution_done = True
        return self._involution

    def change_basis(self, rows) -> "MultiplicationTable":
        """Table in the basis whose i-th element has old coordinates ``rows[i]``."""
        p = [[to_rational(x) for x in r] for r in rows]
        pinv = linalg.inverse(p)
        n = self.dim
        c = [[None] * n for _ in range(n)]
        for i, j in product(range(n), repeat=2):
            c[i][j] = linalg.vec_mat(list(self.mul_coords(p[i], p[j])), pinv)
        return MultiplicationTable(c)

    @classmethod
    def with_recovered_identity(cls, c) -> tuple["MultiplicationTable", list]:
        """Rebuild a table whose identity is not ``e_1``.

        Solves ``u e_j = e_j u = e_j`` for the identity ``u``, then swaps it
        into the first position.  Returns the new table and the change of
        basis rows (old coordinates of the new basis).
        """
        raw = cls(c, check=False)
        n = raw.dim
        eqs, rhs = [], []
        for j in range(n):
            for k in range(n):
                eqs.append([raw.c[i][j][k] for i in range(n)])
                rhs.append(Fraction(int(j == k)))
                eqs.append([raw.c[j][i][k] for i in range(n)])
                rhs.append(Fraction(int(j == k)))
        aug = [row + [r] for row, r in zip(eqs, rhs)]
        red, pivots = linalg.rref(aug)
        if n in pivots or len(pivots) < n:
            raise NoIdentityError("algebra has no unique identity element")
        u = [Fraction(0)] * n
        for row, pc in zip(red, pivots):
            u[pc] = row[n]
        m = next(k for k in range(n) if u[k])
        rows = [u] + [list(raw.basis_coords(k)) for k in range(n) if k != m]
        return raw.change_basis(rows), rows

    def to_json(self) -> dict:
        n = self.dim
        return {
            "dim": n,
            "c": [[[format_rational(x) for x in self.c[i][j]] for j in range(n)] for i in range(n)],
        }

    @classmethod
    def from_json(cls, data) -> "MultiplicationTable":
        if isinstance(data, str):
            data = json.loads(data)
        table = cls(data["c"])
        if "dim" in data and int(data["dim"]) != table.dim:
            raise PreconditionError("declared dim does not match the structure constants")
        return table


@dataclass(frozen=True)
class AlgebraElement:
    table: MultiplicationTable
    coords: tuple

    def _check(self, other):
        if other.table is not self.table and other.table != self.table:
            raise PreconditionError("elements belong to different algebras")

    def _lift(self, other):
        if isinstance(other, AlgebraElement):
            self._check(other)
            return other
        return self.table.one() * to_rational(other)

    def __add__(self, other):
        other = self._lift(other)
        return AlgebraElement(self.table, tuple(x + y for x, y in zip(self.coords, other.coords)))

    __radd__ = __add__

    def __neg__(self):
        return AlgebraElement(self.table, tuple(-x for x in self.coords))

    def __sub__(self, other):
        return self + (-self._lift(other))

    def __rsub__(self, other):
        return self._lift(other) - self

    def __mul__(self, other):
        if isinstance(other, AlgebraElement):
            self._check(other)
            return AlgebraElement(self.table, self.table.mul_coords(self.coords, other.coords))
        s = to_rational(other)
        return AlgebraElement(self.table, tuple(s * x for x in self.coords))

    def __rmul__(self, other):
        s = to_rational(other)
        return AlgebraElement(self.table, tuple(s * x for x in self.coords))

    def __truediv__(self, other):
        return self * (1 / to_rational(other))

    def __eq__(self, other):
        if isinstance(other, AlgebraElement):
            return self.coords == other.coords and self.table == other.table
        try:
            return self == self._lift(other)
        except TypeError:
            return NotImplemented

    def __hash__(self):
        return hash(self.coords)

    def is_zero(self) -> bool:
        return not any(self.coords)

    def is_scalar(self) -> bool:
        return not any(self.coords[1:])

    def scalar(self) -> Fraction:
        if not self.is_scalar():
            raise ValueError(f"{self} is not a scalar")
        return self.coords[0]

    def __repr__(self):
        return "(" + ", ".join(format_rational(x) for x in self.coords) + ")"


@dataclass(frozen=True)
class StandardInvolutionData:
    """Traces and norms of basis elements and of pairwise sums.

    ``t[i]`` is the reduced trace of ``e_i``, ``n[i]`` its reduced norm and
    ``ncross[(i, j)]`` the reduced norm of ``e_i + e_j`` (``0 < i < j``).
    Index 0 holds the identity (trace 2, norm 1).
    """

    t: tuple
    n: tuple
    ncross: dict

    def trd(self, x) -> Fraction:
        return sum((ti * xi for ti, xi in zip(self.t, _coords(x))), Fraction(0))

    def nrd(self, x) -> Fraction:
        c = _coords(x)
        dim = len(c)
        total = c[0] * c[0] + c[0] * sum((self.t[i] * c[i] for i in range(1, dim)), Fraction(0))
        for i in range(1, dim):
            total += self.n[i] * c[i] * c[i]
        for (i, j), nij in self.ncross.items():
            total += (nij - self.n[i] - self.n[j]) * c[i] * c[j]
        return total

    def bilinear(self, i, j) -> Fraction:
        """T(e_i, e_j) for the norm form."""
        if i == j:
            return 2 * self.n[i]
        i, j = min(i, j), max(i, j)
        if i == 0:
            return self.t[j]
        return self.ncross[(i, j)] - self.n[i] - self.n[j]


def _coords(x):
    return x.coords if isinstance(x, AlgebraElement) else tuple(x)


def has_standard_involution(table: MultiplicationTable) -> StandardInvolutionData | None:
    """Decide whether the algebra has a standard involution.

    Checks that ``e_i^2 - t_i e_i`` is scalar for each basis element and then
    the same for every sum ``e_i + e_j``.  Returns None when it fails.
    """
    n = table.dim
    basis = [table.basis_coords(i) for i in range(n)]
    squares = [table.mul_coords(b, b) for b in basis]
    t = [Fraction(2)] + [squares[i][i] for i in range(1, n)]
    norms = [Fraction(1)]
    step("deg2.step1")
    for i in range(1, n):
        ni = tuple(s - (t[i] if k == i else 0) for k, s in enumerate(squares[i]))
        if any(ni[1:]):
            return None
        norms.append(-ni[0])
    step("deg2.step2")
    ncross = {}
    for i in range(1, n):
        for j in range(i + 1, n):
            ij = table.mul_coords(basis[i], basis[j])
            ji = table.mul_coords(basis[j], basis[i])
            sq = tuple(a + b + c + d for a, b, c, d in zip(squares[i], ij, ji, squares[j]))
            tij = t[i] + t[j]
            nij = tuple(s - (tij if k in (i, j) else 0) for k, s in enumerate(sq))
            if any(nij[1:]):
                return None
            ncross[(i, j)] = -nij[0]
    return StandardInvolutionData(tuple(t), tuple(norms), ncross)


def center(table: MultiplicationTable) -> list[AlgebraElement]:
    """Basis of the center, from the linear equations x e_i = e_i x."""
    n = table.dim
    rows = []
    for i in range(n):
        for k in range(n):
            rows.append([table.c[j][i][k] - table.c[i][j][k] for j in range(n)])
    return [table.element(v) for v in linalg.kernel(rows, n)]


def is_central(table: MultiplicationTable) -> bool:
    return len(center(table)) == 1


def _involution_of(x: AlgebraElement) -> StandardInvolutionData:
    data = x.table.standard_involution()
    if data is None:
        raise NoStandardInvolutionError("algebra has no standard involution")
    return data


def trd(x: AlgebraElement) -> Fraction:
    return _involution_of(x).trd(x)


def nrd(x: AlgebraElement) -> Fraction:
    return _involution_of(x).nrd(x)


def conj(x: AlgebraElement) -> AlgebraElement:
    return trd(x) * x.table.one() - x


def norm_form(table: MultiplicationTable):
    """The reduced norm as a quadratic form in the table's basis."""
    from .quadform import QuadraticForm

    data = table.standard_involution()
    if data is None:
        raise NoStandardInvolutionError("algebra has no standard involution")
    n = table.dim
    cross = [[data.bilinear(i, j) if i != j else Fraction(0) for j in range(n)] for i in range(n)]
    return QuadraticForm(tuple(data.n), cross)


def jacobson_radical(table: MultiplicationTable) -> list[AlgebraElement]:
    """For a rank-4 algebra with a standard involution, rad(B) = rad(nrd)."""
    from .quadform import radical

    if table.dim != 4:
        raise PreconditionError("the radical shortcut needs dimension 4")
    return [table.element(v) for v in radical(norm_form(table))]


# -- sample tables ----------------------------------------------------------


def quaternion_table(a, b) -> MultiplicationTable:
    """(a, b | Q) in the basis 1, i, j, ij."""
    a, b = to_rational(a), to_rational(b)
    z = Fraction(0)

    def v(*x):
        return [Fraction(y) for y in x]

    rows = [
        [v(1, 0, 0, 0), v(0, 1, 0, 0), v(0, 0, 1, 0), v(0, 0, 0, 1)],
        [v(0, 1, 0, 0), v(a, 0, 0, 0), v(0, 0, 0, 1), [z, z, a, z]],
        [v(0, 0, 1, 0), v(0, 0, 0, -1), v(b, 0, 0, 0), [z, -b, z, z]],
        [v(0, 0, 0, 1), [z, z, -a, z], [z, b, z, z], [-a * b, z, z, z]],
    ]
    return MultiplicationTable(rows)


def matrix_ring_table() -> MultiplicationTable:
    """M_2(Q) in the basis 1, E11, E12, E21."""
    basis = [((1, 0), (0, 1)), ((1, 0), (0, 0)), ((0, 1), (0, 0)), ((0, 0), (1, 0))]
    coords = _matrix_coords_solver(basis)
    c = [[coords(_mat_mul(x, y)) for y in basis] for x in basis]
    return MultiplicationTable(c)


def _mat_mul(x, y):
    return tuple(
        tuple(sum(x[i][k] * y[k][j] for k in range(2)) for j in range(2)) for i in range(2)
    )


def _matrix_coords_solver(basis):
    cols = [[Fraction(m[r][s]) for m in basis] for r in range(2) for s in range(2)]
    inv = linalg.inverse(cols)

    def coords(m):
        flat = [Fraction(m[r][s]) for r in range(2) for s in range(2)]
        return linalg.mat_vec(inv, flat)

    return coords


def truncated_polynomial_table(n: int) -> MultiplicationTable:
    """Q[x]/(x^n) in the basis 1, x, ..., x^(n-1)."""
    c = [[[int(i + j == k) for k in range(n)] for j in range(n)] for i in range(n)]
    return MultiplicationTable(c)


def diagonal_table(n: int) -> MultiplicationTable:
    """Q^n in the basis 1, (0,1,0,..), (0,0,1,..), ..."""
    c = [[[0] * n for _ in range(n)] for _ in range(n)]
    for j in range(n):
        for k in range(n):
            c[0][j][k] = c[j][0][k] = int(j == k)
    for i in range(1, n):
        c[i][i][i] = 1
    return MultiplicationTable(c)


def square_zero_table(n: int) -> MultiplicationTable:
    """Q[x_1..x_{n-1}]/(x_1..x_{n-1})^2 in the basis 1, x_1, ..."""
    c = [[[0] * n for _ in range(n)] for _ in range(n)]
    for j in range(n):
        for k in range(n):
            c[0][j][k] = c[j][0][k] = int(j == k)
    return MultiplicationTable(c)
