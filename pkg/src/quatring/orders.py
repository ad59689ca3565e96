"""Z-orders in (a, b | Q): Hermite bases, discriminants, saturation and maximal orders.

An order is stored as a denominator ``den`` and a lower-triangular 4x4
integer HNF matrix whose rows, divided by ``den``, are a Z-basis in the
coordinates 1, i, j, ij.  The first row is always (den, 0, 0, 0), i.e. 1.
"""

from __future__ import annotations

import json
import math
from dataclasses import dataclass
from fractions import Fraction

from . import linalg
from .arith import INF, factor, is_prime, legendre, ord_p, sqrt_mod_p, to_rational
from .errors import NotAnOrderError, PreconditionError
from .quadform import LocalRing, QuadraticForm, normalize
from .quaternion import QuaternionAlgebra
from .symbols import algebra_discriminant, valuationgame
from .trace import step

CLOSURE_ROUNDS = 20
MAXIMALIZE_ROUNDS = 10


def _vec(x) -> tuple:
    return tuple(to_rational(c) for c in x)


def _lattice(vectors) -> tuple[int, tuple]:
    """Canonical (den, HNF rows) for the Z-span of rational 4-vectors."""
    vectors = [_vec(v) for v in vectors]
    d = math.lcm(*(c.denominator for v in vectors for c in v))
    rows = linalg.hnf([[int(c * d) for c in v] for v in vectors], 4)
    g = math.gcd(d, linalg.content(rows))
    return d // g, tuple(tuple(x // g for x in r) for r in rows)


@dataclass(frozen=True)
class Order:
    algebra: QuaternionAlgebra
    den: int
    basis: tuple

    def __post_init__(self):
        basis = tuple(tuple(int(x) for x in row) for row in self.basis)
        object.__setattr__(self, "basis", basis)
        if len(basis) != 4 or any(len(r) != 4 for r in basis):
            raise NotAnOrderError("an order needs a 4x4 basis")
        if basis[0] != (self.den, 0, 0, 0):
            raise NotAnOrderError("first basis row must be 1")

    @classmethod
    def from_vectors(cls, algebra: QuaternionAlgebra, vectors, check: bool = True) -> "Order":
        d, rows = _lattice(vectors)
        order = cls(algebra, d, rows)
        if check:
            order.verify()
        return order

    def vectors(self) -> list[tuple]:
        return [tuple(Fraction(x, self.den) for x in row) for row in self.basis]

    def coordinates(self, x) -> list[Fraction]:
        """Coordinates of x in the order's basis."""
        return linalg.vec_mat(list(_vec(x)), linalg.inverse([list(v) for v in self.vectors()]))

    def contains(self, x) -> bool:
        return all(c.denominator == 1 for c in self.coordinates(x))

    def contains_order(self, other: "Order") -> bool:
        return all(self.contains(v) for v in other.vectors())

    def index_in(self, other: "Order") -> int:
        """[other : self], for self contained in other."""
        ratio = linalg.det([list(v) for v in self.vectors()]) / linalg.det(
            [list(v) for v in other.vectors()]
        )
        return abs(int(ratio))

    def verify(self):
        """Raise NotAnOrderError unless the lattice is a ring of integral elements."""
        B = self.algebra
        vecs = self.vectors()
        for v in vecs:
            if B.trd(v).denominator != 1 or B.nrd(v).denominator != 1:
                raise NotAnOrderError(f"basis element {v} is not integral")
        for x in vecs:
            for y in vecs:
                if not self.contains(B.mul(x, y)):
                    raise NotAnOrderError("lattice is not closed under multiplication")

    def to_json(self) -> dict:
        return {
            "algebra": self.algebra.to_json(),
            "den": str(self.den),
            "basis": [list(r) for r in self.basis],
        }

    @classmethod
    def from_json(cls, data) -> "Order":
        if isinstance(data, str):
            data = json.loads(data)
        B = QuaternionAlgebra.from_json(data["algebra"])
        den = int(data["den"])
        vectors = [[Fraction(int(x), den) for x in r] for r in data["basis"]]
        return cls.from_vectors(B, vectors)


def _square_integral(x: Fraction) -> Fraction:
    """x times the smallest square making it an integer."""
    t = math.prod(p ** ((e + 1) // 2) for p, e in factor(x.denominator))
    return x * t * t


def standard_order(B: QuaternionAlgebra) -> Order:
    """Z + Zi + Zj + Zij, after scaling a and b by squares into Z."""
    B = QuaternionAlgebra(_square_integral(B.a), _square_integral(B.b))
    return Order(B, 1, ((1, 0, 0, 0), (0, 1, 0, 0), (0, 0, 1, 0), (0, 0, 0, 1)))


def _check_integral(B, x):
    if B.trd(x).denominator != 1 or B.nrd(x).denominator != 1:
        raise PreconditionError(f"element {x} is not integral")


def order_from_generators(B: QuaternionAlgebra, elements, start: Order | None = None) -> Order:
    """The order generated by ``elements`` together with ``start`` (or 1, i, j, ij)."""
    elements = [_vec(x) for x in elements]
    for x in elements:
        _check_integral(B, x)
    if start is not None:
        vectors = start.vectors()
    elif B.a.denominator == 1 and B.b.denominator == 1:
        vectors = standard_order(B).vectors()
    else:
        vectors = [(Fraction(1), Fraction(0), Fraction(0), Fraction(0))]
    vectors = vectors + elements
    try:
        current = _lattice(vectors)
    except linalg.SingularMatrixError:
        raise NotAnOrderError("generators do not span a rank-4 lattice") from None
    for _ in range(CLOSURE_ROUNDS):
        d, rows = current
        vecs = [tuple(Fraction(x, d) for x in r) for r in rows]
        prods = [B.mul(x, y) for x in vecs for y in vecs]
        nxt = _lattice(vecs + prods)
        if nxt == current:
            order = Order(B, d, rows)
            order.verify()
            return order
        current = nxt
    raise NotAnOrderError(f"lattice did not stabilize after {CLOSURE_ROUNDS} rounds")


def adjoin(O: Order, *elements) -> Order:
    return order_from_generators(O.algebra, elements, start=O)


@dataclass(frozen=True)
class DiscriminantData:
    disc: int
    reduced: int


def discriminant(O: Order) -> DiscriminantData:
    B = O.algebra
    vecs = O.vectors()
    gram = [[B.trd(B.mul(x, y)) for y in vecs] for x in vecs]
    disc = abs(linalg.det(gram))
    if disc.denominator != 1:
        raise NotAnOrderError("discriminant is not an integer")
    disc = int(disc)
    r = math.isqrt(disc)
    if r * r != disc:
        raise NotAnOrderError(f"discriminant {disc} is not a square")
    # for a basis 1, x, y, z the reduced discriminant is also |trd((xy - yx) conj(z))|
    _, x, y, z = vecs
    comm = tuple(u - v for u, v in zip(B.mul(x, y), B.mul(y, x)))
    alt = abs(B.trd(B.mul(comm, B.conj(z))))
    assert alt == r, f"reduced discriminant mismatch: {alt} != {r}"
    return DiscriminantData(disc, r)


def is_maximal(O: Order) -> bool:
    return discriminant(O).reduced == algebra_discriminant(O.algebra.a, O.algebra.b)


# -- local enlargement ----------------------------------------------------


@dataclass(frozen=True)
class Saturation:
    """A p-saturated order with a normalized local basis.

    ``basis`` holds elements of the order (algebra coordinates) forming a
    Z_(p)-basis of its completion; ``blocks`` are the atomic blocks of nrd
    in that basis, with valuations at most 1.
    """

    order: Order
    p: int
    basis: tuple
    blocks: tuple


def _norm_form(O: Order, vecs) -> QuadraticForm:
    B = O.algebra
    n = len(vecs)
    q = tuple(B.nrd(v) for v in vecs)
    t = [[B.trd(B.mul(vecs[r], B.conj(vecs[s]))) if r != s else 0 for s in range(n)]
         for r in range(n)]
    return QuadraticForm(q, t)


def _to_algebra(O: Order, coords) -> tuple:
    """Element with the given order coordinates, scaled by a p-unit so it lies in O."""
    vecs = O.vectors()
    return tuple(sum((c * v[k] for c, v in zip(coords, vecs)), Fraction(0)) for k in range(4))


def _clear_prime_to(coords, p) -> list:
    d = math.lcm(*(Fraction(c).denominator for c in coords))
    assert d % p != 0
    return [c * d for c in coords]


def p_saturate(O: Order, p: int) -> Saturation:
    """Enlarge O at p until every atomic block of nrd has valuation at most 1."""
    if not is_prime(p):
        raise PreconditionError(f"{p} is not prime")
    step("computesaturatedorder.step1")
    ring = LocalRing(p)
    vecs = O.vectors()
    step("computesaturatedorder.step2")
    dec = normalize(_norm_form(O, vecs), ring)
    step("computesaturatedorder.step3")
    basis = [None] * 4
    blocks = []
    for blk in dec.blocks:
        if blk.valuation == INF:
            raise NotAnOrderError("reduced norm is degenerate on the order")
        shift = blk.valuation // 2
        for k in range(blk.start, blk.start + blk.size):
            x = _to_algebra(O, _clear_prime_to(dec.basis[k], p))
            basis[k] = tuple(c / Fraction(p) ** shift for c in x)
        blocks.append(type(blk)(blk.kind, blk.valuation - 2 * shift, blk.coeffs, blk.start))
    new = O if all(b.valuation < 2 for b in dec.blocks) else adjoin(O, *basis)
    return Saturation(new, p, tuple(basis), tuple(blocks))


def _pick_generator(B, p, candidates):
    """The candidate of least norm valuation: it generates the complement as a Z_p[i]-module."""
    return min(candidates, key=lambda c: ord_p(B.nrd(c), p))


def _add(x, y):
    return tuple(u + v for u, v in zip(x, y))


def _scale(c, x):
    return tuple(c * u for u in x)


def _finish_split_step(O, p, i, x_root, c):
    """Adjoin (x - i) c / p, the step shared by the odd and the odd-trace dyadic case."""
    B = O.algebra
    one = (Fraction(1), Fraction(0), Fraction(0), Fraction(0))
    elt = _scale(Fraction(1, p), B.mul(_add(_scale(x_root, one), _scale(-1, i)), c))
    return adjoin(O, elt)


def _maximalize_odd(sat: Saturation) -> Order:
    O, p = sat.order, sat.p
    B = O.algebra
    step("computepmaxorder.step2")
    rest = list(sat.basis[1:])
    # the first of i, j, k with a unit square becomes i
    idx = next(k for k, v in enumerate(rest) if ord_p(B.nrd(v), p) == 0)
    i = rest.pop(idx)
    a = -B.nrd(i)
    c = _pick_generator(B, p, [rest[0], rest[1], _add(rest[0], rest[1])])
    b = -B.nrd(c)
    vb = ord_p(b, p)
    if vb == 0:
        return O
    assert vb == 1, "saturated basis has a block of valuation above 1"
    an = a.numerator * pow(a.denominator, -1, p) % p
    if legendre(an, p) != 1:
        return O
    return _finish_split_step(O, p, i, Fraction(sqrt_mod_p(an, p)), c)


def _maximalize_dyadic_odd_trace(sat: Saturation) -> Order:
    O = sat.order
    B = O.algebra
    step("computepmaxorder.step3a")
    i = sat.basis[1] if not any(sat.basis[0][1:]) else sat.basis[0]
    j, k = sat.basis[2], sat.basis[3]
    c = _pick_generator(B, 2, [j, k, _add(j, k)])
    vb = ord_p(B.nrd(c), 2)
    if vb == 0:
        return O
    assert vb == 1, "saturated basis has a block of valuation above 1"
    t, n = B.trd(i), B.nrd(i)
    roots = [x for x in (0, 1) if (x * x - t * x + n) % 2 == 0]
    if not roots:
        return O
    return _finish_split_step(O, 2, i, Fraction(roots[0]), c)


def _dyadic_lift_element(sat: Saturation) -> tuple:
    """(1 + y i + z j + w ij)/2 for an orthogonal pair i, j of the even-trace order."""
    B = sat.order.algebra
    rest = list(sat.basis[1:])
    rest += [_add(rest[0], rest[1]), _add(rest[0], rest[2]), _add(rest[1], rest[2]),
             _add(_add(rest[0], rest[1]), rest[2])]
    i = next((v for v in rest if ord_p(B.nrd(v), 2) == 0), None)
    if i is None:
        raise AssertionError("no element of unit norm in an even-trace order")
    tii = 2 * B.nrd(i)
    js = []
    for f in sat.basis[1:]:
        tif = B.trd(B.mul(i, B.conj(f)))
        j = _add(f, _scale(-tif / tii, i))
        if any(j) and ord_p(tif / tii, 2) >= 0:
            d = math.lcm(*(x.denominator for x in j))
            js.append(_scale(Fraction(d), j) if d % 2 else j)
    j = min(js, key=lambda v: ord_p(B.nrd(v), 2))
    a, b = -B.nrd(i), -B.nrd(j)
    assert a.denominator == 1 and b.denominator == 1 and ord_p(b, 2) <= 1
    wit = valuationgame(int(a), int(b))
    ij = B.mul(i, j)
    one = (Fraction(1), Fraction(0), Fraction(0), Fraction(0))
    total = _add(_add(one, _scale(wit.y, i)), _add(_scale(wit.z, j), _scale(wit.w, ij)))
    return _scale(Fraction(1, 2), total)


def p_maximalize(O: Order, p: int) -> Order:
    """A p-maximal order containing O, equal to O away from p."""
    if not is_prime(p):
        raise PreconditionError(f"{p} is not prime")
    last = None
    for _ in range(MAXIMALIZE_ROUNDS):
        step("computepmaxorder.step1")
        sat = p_saturate(O, p)
        if p != 2:
            return _maximalize_odd(sat)
        if sat.blocks[0].kind == "binary":
            return _maximalize_dyadic_odd_trace(sat)
        step("computepmaxorder.step3b")
        d = ord_p(discriminant(sat.order).reduced, 2)
        if last is not None and d >= last:
            raise AssertionError("dyadic enlargement did not lower the discriminant")
        last = d
        O = adjoin(sat.order, _dyadic_lift_element(sat))
    raise AssertionError(f"dyadic enlargement did not finish in {MAXIMALIZE_ROUNDS} rounds")


def max_order(O: Order) -> Order:
    """A maximal order containing O: maximalize at every prime of its reduced discriminant."""
    for p in factor(discriminant(O).reduced).primes:
        O = p_maximalize(O, p)
    return O
