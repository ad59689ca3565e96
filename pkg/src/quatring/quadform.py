"""Quadratic forms over Q or over Z localized at a prime.

A form of rank n is stored by its values ``q[i] = Q(e_i)`` and its
off-diagonal bilinear values ``t[i][j] = T(e_i, e_j)``; the Gram matrix has
``2 q[i]`` on the diagonal.  Keeping ``q`` separately means nothing is lost
at p = 2.
"""

from __future__ import annotations

import json
from dataclasses import dataclass, field
from fractions import Fraction

from . import linalg
from .arith import INF, format_rational, ord_p, to_rational
from .errors import PreconditionError, SingularMatrixError
from .trace import step


@dataclass(frozen=True)
class LocalRing:
    """Q itself (``p is None``, trivial valuation) or Z localized at p."""

    p: int | None = None

    def ord(self, x):
        x = Fraction(x)
        if x == 0:
            return INF
        return 0 if self.p is None else ord_p(x, self.p)

    @property
    def uniformizer(self) -> int:
        return 1 if self.p is None else self.p

    @property
    def half_is_unit(self) -> bool:
        return self.p != 2

    def contains(self, x) -> bool:
        return self.ord(x) >= 0

    def is_unit(self, x) -> bool:
        return self.ord(x) == 0

    def __str__(self):
        return "Q" if self.p is None else f"Z_({self.p})"

    @classmethod
    def parse(cls, s) -> "LocalRing":
        if s is None or str(s).upper() == "Q":
            return FIELD_Q
        from .arith import is_prime

        p = int(s)
        if not is_prime(p):
            raise PreconditionError(f"{p} is not prime")
        return cls(p)


FIELD_Q = LocalRing(None)


def localized_at(p: int) -> LocalRing:
    return LocalRing.parse(p)


@dataclass(frozen=True)
class QuadraticForm:
    q: tuple
    t: tuple = field(default=())

    def __post_init__(self):
        n = len(self.q)
        q = tuple(to_rational(x) for x in self.q)
        if self.t:
            t = tuple(
                tuple(
                    Fraction(0) if i == j else to_rational(self.t[min(i, j)][max(i, j)])
                    for j in range(n)
                )
                for i in range(n)
            )
        else:
            t = tuple(tuple(Fraction(0) for _ in range(n)) for _ in range(n))
        object.__setattr__(self, "q", q)
        object.__setattr__(self, "t", t)

    @classmethod
    def diagonal(cls, values) -> "QuadraticForm":
        return cls(tuple(values))

    @classmethod
    def from_gram(cls, gram) -> "QuadraticForm":
        n = len(gram)
        return cls(tuple(Fraction(gram[i][i]) / 2 for i in range(n)), gram)

    @property
    def rank(self) -> int:
        return len(self.q)

    def bilinear_entry(self, i, j) -> Fraction:
        return 2 * self.q[i] if i == j else self.t[i][j]

    def gram(self):
        n = self.rank
        return [[self.bilinear_entry(i, j) for j in range(n)] for i in range(n)]

    def __call__(self, x) -> Fraction:
        n = self.rank
        total = sum((self.q[i] * x[i] * x[i] for i in range(n)), Fraction(0))
        for i in range(n):
            for j in range(i + 1, n):
                if self.t[i][j]:
                    total += self.t[i][j] * x[i] * x[j]
        return total

    def bilinear(self, x, y) -> Fraction:
        n = self.rank
        return sum(
            (x[i] * self.bilinear_entry(i, j) * y[j] for i in range(n) for j in range(n)
             if x[i] and y[j]),
            Fraction(0),
        )

    def is_integral(self, ring: LocalRing) -> bool:
        n = self.rank
        return all(ring.contains(x) for x in self.q) and all(
            ring.contains(self.t[i][j]) for i in range(n) for j in range(i + 1, n)
        )

    def transport(self, P, ring: LocalRing | None = None) -> "QuadraticForm":
        """The form x -> Q(P x); the columns of P are the new basis."""
        P = [[to_rational(x) for x in row] for row in P]
        d = linalg.det(P)
        if d == 0:
            raise SingularMatrixError("change of basis is singular")
        if ring is not None and ring.p is not None:
            if not ring.is_unit(d) or not all(ring.contains(x) for row in P for x in row):
                raise SingularMatrixError(f"change of basis is not invertible over {ring}")
        cols = linalg.transpose(P)
        n = self.rank
        q = tuple(self(c) for c in cols)
        t = [[self.bilinear(cols[i], cols[j]) if i != j else 0 for j in range(n)] for i in range(n)]
        return QuadraticForm(q, t)

    def to_json(self) -> dict:
        n = self.rank
        return {
            "rank": n,
            "q": [format_rational(x) for x in self.q],
            "t": {f"{i + 1},{j + 1}": format_rational(self.t[i][j])
                  for i in range(n) for j in range(i + 1, n)},
        }

    @classmethod
    def from_json(cls, data) -> "QuadraticForm":
        if isinstance(data, str):
            data = json.loads(data)
        q = [to_rational(x) for x in data["q"]]
        n = len(q)
        if "rank" in data and int(data["rank"]) != n:
            raise PreconditionError("declared rank does not match q")
        t = [[Fraction(0)] * n for _ in range(n)]
        for key, val in data.get("t", {}).items():
            i, j = (int(s) - 1 for s in key.split(","))
            if i == j or not (0 <= i < n and 0 <= j < n):
                raise PreconditionError(f"bad bilinear index {key!r}")
            t[min(i, j)][max(i, j)] = to_rational(val)
        return cls(tuple(q), t)


@dataclass(frozen=True)
class Block:
    """An atomic block pi^valuation * <u> or pi^valuation * [a, b, c].

    ``coeffs`` are the unit-scaled coefficients; ``start`` is the index of
    the block's first basis vector.
    """

    kind: str
    valuation: int | float
    coeffs: tuple
    start: int

    @property
    def size(self) -> int:
        return 1 if self.kind == "unary" else 2

    def scaled(self, ring: LocalRing) -> tuple:
        if self.valuation == INF:
            return tuple(Fraction(0) for _ in self.coeffs)
        s = Fraction(ring.uniformizer) ** self.valuation
        return tuple(s * c for c in self.coeffs)

    def is_atomic(self, ring: LocalRing) -> bool:
        if self.valuation == INF:
            return False
        if self.kind == "unary":
            return ring.is_unit(self.coeffs[0])
        if ring.half_is_unit:
            return False
        a, b, c = self.coeffs
        ob, oa = ring.ord(b), ring.ord(a)
        return ob < ring.ord(2 * a) <= ring.ord(2 * c) and (oa == 0 or ob == 0)


@dataclass(frozen=True)
class NormalizedDecomposition:
    form: QuadraticForm
    ring: LocalRing
    basis: tuple  # new basis vectors, in original coordinates
    blocks: tuple

    def change_of_basis(self):
        """Matrix whose columns are the new basis vectors."""
        return linalg.transpose([list(v) for v in self.basis])

    def valuations(self) -> list:
        return [b.valuation for b in self.blocks]

    def block_form(self) -> QuadraticForm:
        n = self.form.rank
        q = [Fraction(0)] * n
        t = [[Fraction(0)] * n for _ in range(n)]
        for b in self.blocks:
            vals = b.scaled(self.ring)
            if b.kind == "unary":
                q[b.start] = vals[0]
            else:
                q[b.start], t[b.start][b.start + 1], q[b.start + 1] = vals
        return QuadraticForm(tuple(q), t)

    def transported(self) -> QuadraticForm:
        return self.form.transport(self.change_of_basis())

    def radical(self) -> list:
        return [list(self.basis[b.start]) for b in self.blocks if b.valuation == INF]


def _pick_pivot(G, ring):
    """Indices (i, j), i <= j, of an entry of minimal valuation.

    Diagonal entries win ties; otherwise the lexicographically smallest pair.
    """
    m = len(G)
    best = min(ring.ord(G[i][j]) for i in range(m) for j in range(i, m))
    for i in range(m):
        if ring.ord(G[i][i]) == best:
            return i, i, best
    for i in range(m):
        for j in range(i + 1, m):
            if ring.ord(G[i][j]) == best:
                return i, j, best
    raise AssertionError("unreachable")


def _exact_quotient(num, den, ring):
    q = Fraction(num) / Fraction(den)
    if not ring.contains(q):
        raise AssertionError(f"non-integral division {num}/{den} over {ring}")
    return q


def _combine(vec, coeffs_and_vecs):
    out = list(vec)
    for c, w in coeffs_and_vecs:
        if c:
            out = [x + c * y for x, y in zip(out, w)]
    return out


def _relabel(vecs, used):
    """Drop the consumed vectors; the first len(used) vectors move into the vacated slots."""
    slots = list(vecs)
    k = len(used)
    displaced = [s for s in range(k) if s not in used]
    vacated = [u for u in used if u >= k]
    for d, v in zip(displaced, vacated):
        slots[v] = vecs[d]
    return slots[k:]


def _normalize(Q, ring, vecs, start):
    if not vecs:
        return [], []
    G = [[Q.bilinear(u, v) for v in vecs] for u in vecs]
    step("normalizequadform.step1")
    if all(x == 0 for row in G for x in row):
        blocks = [Block("unary", INF, (Fraction(0),), start + k) for k in range(len(vecs))]
        return [list(v) for v in vecs], blocks
    i, j, _ = _pick_pivot(G, ring)
    pi = Fraction(ring.uniformizer)

    if i == j or ring.half_is_unit:
        if i == j:
            step("normalizequadform.step2")
            f1 = list(vecs[i])
            rest = _relabel(vecs, [i])
        else:
            step("normalizequadform.step3")
            f1 = [x + y for x, y in zip(vecs[i], vecs[j])]
            rest = _relabel(vecs, [i])
            # e_j stays in the list; e_i (now f1 - e_j) is dropped
        t11 = Q.bilinear(f1, f1)
        rest = [_combine(e, [(-_exact_quotient(Q.bilinear(f1, e), t11, ring), f1)]) for e in rest]
        value = Q(f1)
        e = ring.ord(value)
        unit = Fraction(0) if e == INF else value / pi**e
        block = Block("unary", e, (unit,), start)
        basis, blocks = _normalize(Q, ring, rest, start + 1)
        return [f1] + basis, [block] + blocks

    step("normalizequadform.step4")
    tij = G[i][j]
    e = ring.ord(tij)
    f1 = [pi**e / tij * x for x in vecs[i]]
    f2 = list(vecs[j])
    rest = _relabel(vecs, [i, j])
    if ring.ord(2 * Q(f1)) > ring.ord(2 * Q(f2)):
        f1, f2 = f2, f1
    t11, t22, t12 = Q.bilinear(f1, f1), Q.bilinear(f2, f2), Q.bilinear(f1, f2)
    d = t11 * t22 - t12 * t12
    new_rest = []
    for ek in rest:
        t1k, t2k = Q.bilinear(f1, ek), Q.bilinear(f2, ek)
        tk = t12 * t2k - t22 * t1k
        uk = t12 * t1k - t11 * t2k
        new_rest.append(
            _combine(ek, [(_exact_quotient(tk, d, ring), f1), (_exact_quotient(uk, d, ring), f2)])
        )
    scale = pi**e
    block = Block("binary", e, (Q(f1) / scale, t12 / scale, Q(f2) / scale), start)
    basis, blocks = _normalize(Q, ring, new_rest, start + 2)
    return [f1, f2] + basis, [block] + blocks


def normalize(Q: QuadraticForm, ring: LocalRing = FIELD_Q) -> NormalizedDecomposition:
    """Split Q into an orthogonal sum of scaled atomic blocks.

    Over Q and over Z_(p) with p odd every block is unary; at p = 2 binary
    blocks [a, b, c] appear.  Block valuations are nondecreasing and blocks
    of the zero form come last with valuation inf.
    """
    if ring.p is not None and not Q.is_integral(ring):
        raise PreconditionError(f"form is not integral over {ring}")
    n = Q.rank
    start = [[Fraction(int(i == j)) for j in range(n)] for i in range(n)]
    basis, blocks = _normalize(Q, ring, start, 0)
    step("normalizequadform.step5")
    return NormalizedDecomposition(Q, ring, tuple(tuple(v) for v in basis), tuple(blocks))


def radical(Q: QuadraticForm, ring: LocalRing = FIELD_Q) -> list:
    """Basis of {x : T(x, y) = 0 for all y}."""
    if ring.p is None:
        return linalg.kernel(Q.gram(), Q.rank)
    return normalize(Q, ring).radical()


def is_nonsingular(Q: QuadraticForm) -> bool:
    return not radical(Q)


def transport(Q: QuadraticForm, P, ring: LocalRing | None = None) -> QuadraticForm:
    return Q.transport(P, ring)
