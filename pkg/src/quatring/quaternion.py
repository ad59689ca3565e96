"""Quaternion algebras (a, b | Q): recognition, explicit splitting and conics."""

from __future__ import annotations

import math
import random
from dataclasses import dataclass
from fractions import Fraction
from functools import cached_property

from . import linalg
from .algebra import AlgebraElement, MultiplicationTable, norm_form, quaternion_table
from .arith import format_rational, is_prime, legendre, sqrt_mod_p, to_rational
from .errors import (
    NoStandardInvolutionError,
    PreconditionError,
    SingularMatrixError,
    SingularNormError,
)
from .quadform import FIELD_Q, QuadraticForm, normalize
from .trace import step


@dataclass(frozen=True)
class QuaternionAlgebra:
    """(a, b | Q): i^2 = a, j^2 = b, ji = -ij, coordinates in 1, i, j, ij."""

    a: Fraction
    b: Fraction

    def __post_init__(self):
        a, b = to_rational(self.a), to_rational(self.b)
        if a == 0 or b == 0:
            raise PreconditionError("a and b must be nonzero")
        object.__setattr__(self, "a", a)
        object.__setattr__(self, "b", b)

    def __str__(self):
        return f"({format_rational(self.a)}, {format_rational(self.b)} | Q)"

    @cached_property
    def table(self) -> MultiplicationTable:
        return quaternion_table(self.a, self.b)

    def element(self, coords) -> AlgebraElement:
        return self.table.element(coords)

    def mul(self, x, y) -> tuple:
        a, b = self.a, self.b
        x0, x1, x2, x3 = x
        y0, y1, y2, y3 = y
        return (
            x0 * y0 + a * x1 * y1 + b * x2 * y2 - a * b * x3 * y3,
            x0 * y1 + x1 * y0 - b * x2 * y3 + b * x3 * y2,
            x0 * y2 + x2 * y0 + a * x1 * y3 - a * x3 * y1,
            x0 * y3 + x3 * y0 + x1 * y2 - x2 * y1,
        )

    @staticmethod
    def trd(x) -> Fraction:
        return 2 * Fraction(x[0])

    def nrd(self, x) -> Fraction:
        a, b = self.a, self.b
        return x[0] * x[0] - a * x[1] * x[1] - b * x[2] * x[2] + a * b * x[3] * x[3]

    @staticmethod
    def conj(x) -> tuple:
        return (x[0], -x[1], -x[2], -x[3])

    def to_json(self) -> dict:
        return {"a": format_rational(self.a), "b": format_rational(self.b)}

    @classmethod
    def from_json(cls, data) -> "QuaternionAlgebra":
        return cls(to_rational(data["a"]), to_rational(data["b"]))


@dataclass(frozen=True)
class Recognition:
    """A standard form for a table, with the generators in the table's basis."""

    algebra: QuaternionAlgebra
    i: tuple
    j: tuple


def recognize(table: MultiplicationTable) -> Recognition:
    """Decide whether a rank-4 table is a quaternion algebra and find standard generators."""
    if table.dim != 4:
        raise PreconditionError("recognition needs a rank-4 algebra")
    step("identquatalg.step1")
    data = table.standard_involution()
    if data is None:
        raise NoStandardInvolutionError("algebra has no standard involution")
    step("identquatalg.step2")
    dec = normalize(norm_form(table), FIELD_Q)
    step("identquatalg.step3")
    rad = dec.radical()
    if rad:
        raise SingularNormError(rad)
    one, i, j = (table.element(v) for v in dec.basis[:3])
    assert one == table.one()
    a, b = (i * i).scalar(), (j * j).scalar()
    assert (i * j + j * i).is_zero()
    return Recognition(QuaternionAlgebra(a, b), i.coords, j.coords)


def nilpotent_from_zerodivisor(x: AlgebraElement) -> AlgebraElement:
    """A nonzero e with e^2 = 0, from a nonzero x with nrd(x) = 0."""
    data = x.table.standard_involution()
    if data is None:
        raise NoStandardInvolutionError("algebra has no standard involution")
    if x.is_zero() or data.nrd(x) != 0:
        raise PreconditionError("x must be a nonzero element of reduced norm 0")
    step("etatoeps.step1")
    if data.trd(x) == 0:
        return x
    step("etatoeps.step2")
    form = norm_form(x.table)
    n = x.table.dim
    rows = [
        [form.bilinear(x.table.basis_coords(0), x.table.basis_coords(k)) for k in range(n)],
        [form.bilinear(x.coords, x.table.basis_coords(k)) for k in range(n)],
    ]
    y = x.table.element(linalg.kernel(rows, n)[0])
    xy = x * y
    return y if xy.is_zero() else xy


_I2 = ((1, 0), (0, 1))
IMAGE_I = ((1, 0), (0, -1))
IMAGE_J = ((0, 1), (1, 0))


def _mat_mul(x, y):
    return tuple(
        tuple(sum((Fraction(x[r][k]) * y[k][s] for k in range(2)), Fraction(0)) for s in range(2))
        for r in range(2)
    )


def _mat_comb(coeffs, mats):
    return tuple(
        tuple(sum((c * Fraction(m[r][s]) for c, m in zip(coeffs, mats)), Fraction(0)) for s in range(2))
        for r in range(2)
    )


@dataclass(frozen=True)
class SplittingData:
    """An explicit isomorphism B -> M_2(Q).

    ``i_prime`` and ``j_prime`` map to diag(1, -1) and [[0, 1], [1, 0]];
    ``image_i`` and ``image_j`` are the images of the standard generators.
    """

    algebra: QuaternionAlgebra
    nilpotent: tuple
    i_prime: tuple
    j_prime: tuple
    image_i: tuple
    image_j: tuple

    def to_matrix(self, x) -> tuple:
        ij = _mat_mul(self.image_i, self.image_j)
        return _mat_comb(x, (_I2, self.image_i, self.image_j, ij))

    def to_json(self) -> dict:
        def vec(v):
            return [format_rational(c) for c in v]

        def mat(m):
            return [vec(r) for r in m]

        return {
            "algebra": self.algebra.to_json(),
            "nilpotent": vec(self.nilpotent),
            "i_prime": vec(self.i_prime),
            "j_prime": vec(self.j_prime),
            "image_i": mat(self.image_i),
            "image_j": mat(self.image_j),
        }


def split_from_nilpotent(B: QuaternionAlgebra, e) -> SplittingData:
    """Standard generators i', j' with i'^2 = j'^2 = 1, j'i' = -i'j', from e != 0 with e^2 = 0.

    With s = trd(ek) the nilpotent is normalized as e' = e/s.
    """
    e = tuple(to_rational(c) for c in (e.coords if isinstance(e, AlgebraElement) else e))
    if not any(e) or any(B.mul(e, e)):
        raise PreconditionError("e must be a nonzero element with e^2 = 0")
    step("m2ffound.step1")
    for k in ((0, 1, 0, 0), (0, 0, 1, 0), (0, 0, 0, 1)):
        k = tuple(Fraction(c) for c in k)
        s = B.trd(B.mul(e, k))
        if s:
            break
    else:
        raise SingularNormError([list(e)])
    t, n = B.trd(k), B.nrd(k)
    # trd(e'k) must be +1 for e' to act as E12 on the ideal spanned by e', ke'
    ep = tuple(c / s for c in e)
    step("m2ffound.step2")
    one = (Fraction(1), Fraction(0), Fraction(0), Fraction(0))

    def add(*terms):
        return tuple(sum(c) for c in zip(*terms))

    def scale(c, x):
        return tuple(c * y for y in x)

    jp = add(k, B.mul(add(scale(-t, k), scale(n + 1, one)), ep))
    ip = add(B.mul(ep, k), scale(-1, B.mul(add(k, scale(t, one)), ep)))
    # coordinates of i and j in the basis 1, i', j', i'j', then push through the images
    cols = linalg.transpose([list(one), list(ip), list(jp), list(B.mul(ip, jp))])
    try:
        inv = linalg.inverse(cols)
    except SingularMatrixError:
        raise AssertionError("i', j' do not generate the algebra") from None
    targets = (_I2, IMAGE_I, IMAGE_J, _mat_mul(IMAGE_I, IMAGE_J))
    images = [_mat_comb(linalg.mat_vec(inv, list(k)), targets)
              for k in ((0, 1, 0, 0), (0, 0, 1, 0))]
    return SplittingData(B, e, ip, jp, images[0], images[1])


# -- conics ---------------------------------------------------------------


@dataclass(frozen=True)
class Conic:
    """The plane conic Q(x, y, z) = 0 of a ternary form."""

    form: QuadraticForm

    def __post_init__(self):
        if self.form.rank != 3:
            raise PreconditionError("a conic needs a ternary form")

    @classmethod
    def diagonal(cls, c1, c2, c3) -> "Conic":
        return cls(QuadraticForm((c1, c2, c3)))

    def __call__(self, x) -> Fraction:
        return self.form(x)

    def diagonalized(self) -> tuple:
        dec = normalize(self.form, FIELD_Q)
        return tuple(b.coeffs[0] for b in dec.blocks)

    def is_nonsingular(self) -> bool:
        return linalg.det(self.form.gram()) != 0


def conic_of(B: QuaternionAlgebra) -> Conic:
    """The conic nrd = 0 on trace-zero elements: -a x^2 - b y^2 + ab z^2."""
    return Conic.diagonal(-B.a, -B.b, B.a * B.b)


def algebra_of_conic(a, b, c) -> QuaternionAlgebra:
    """The algebra whose conic is a x^2 + b y^2 + c z^2 = 0: (-bc, -ac | Q)."""
    a, b, c = (to_rational(x) for x in (a, b, c))
    if 0 in (a, b, c):
        raise PreconditionError("conic coefficients must be nonzero")
    return QuaternionAlgebra(-b * c, -a * c)


def _primitive(v) -> tuple:
    """Integer representative with content 1 and first nonzero coordinate positive."""
    den = math.lcm(*(Fraction(x).denominator for x in v))
    w = [int(Fraction(x) * den) for x in v]
    g = math.gcd(*w)
    w = [x // g for x in w]
    if next(x for x in w if x) < 0:
        w = [-x for x in w]
    return tuple(w)


def _roots_in_range(A, B, C, h):
    """Integers s with A s^2 + B s + C = 0 and |s| <= h."""
    if A == 0:
        if B == 0:
            return range(-h, h + 1) if C == 0 else ()
        s, r = divmod(-C, B)
        return (s,) if r == 0 and abs(s) <= h else ()
    D = B * B - 4 * A * C
    if D < 0:
        return ()
    r = math.isqrt(D)
    if r * r != D:
        return ()
    out = []
    for num in {-B + r, -B - r}:
        s, rem = divmod(num, 2 * A)
        if rem == 0 and abs(s) <= h:
            out.append(s)
    return out


def _points_at_height(form: QuadraticForm, h: int) -> set:
    """Primitive zeros of the integral form with max norm exactly h."""
    found = set()
    for c in range(3):
        for f in range(3):
            if f == c:
                continue
            s = 3 - c - f
            for xf in range(-h, h + 1):
                x = [0, 0, 0]
                x[c], x[f] = h, xf
                A = form.q[s]
                B = sum(form.t[s][k] * x[k] for k in range(3) if k != s)
                C = form(x)
                for xs in _roots_in_range(int(A), int(B), int(C), h):
                    x[s] = xs
                    if math.gcd(*x) == 1:
                        found.add(_primitive(x))
    return found


def find_isotropic_naive(C: Conic, H: int = 10**4):
    """First zero of the conic by increasing max norm, or None.

    Within one height the lexicographically largest sign-normalized primitive
    triple wins.  Definite and nonsplit conics return None without a search.
    """
    if H < 1:
        raise PreconditionError("height bound must be at least 1")
    if not C.is_nonsingular():
        raise PreconditionError("conic is singular")
    diag = C.diagonalized()
    if all(d > 0 for d in diag) or all(d < 0 for d in diag):
        return None
    from .symbols import is_matrix_ring_global

    alg = algebra_of_conic(*diag)
    if not is_matrix_ring_global(alg.a, alg.b):
        return None
    den = math.lcm(*(x.denominator for x in C.form.q),
                   *(x.denominator for row in C.form.t for x in row))
    integral = QuadraticForm(tuple(x * den for x in C.form.q),
                             [[x * den for x in row] for row in C.form.t])
    for h in range(1, H + 1):
        pts = _points_at_height(integral, h)
        if pts:
            return max(pts)
    return None


def _reduce_mod(x: Fraction, p: int) -> int:
    x = Fraction(x)
    if x.denominator % p == 0:
        raise PreconditionError(f"coefficient {x} is not integral at {p}")
    return x.numerator * pow(x.denominator, -1, p) % p


def _normalize_mod(v, p) -> tuple:
    lead = next(x for x in v if x % p)
    inv = pow(lead, -1, p)
    return tuple(x * inv % p for x in v)


def conic_point_mod_p(C: Conic, p: int, seed=0) -> tuple:
    """A point of the conic over F_p, scaled so its first nonzero coordinate is 1."""
    if not is_prime(p):
        raise PreconditionError(f"{p} is not prime")
    q = [_reduce_mod(x, p) for x in C.form.q]
    t = [[_reduce_mod(x, p) for x in row] for row in C.form.t]
    gram = [[2 * q[i] if i == j else t[i][j] for j in range(3)] for i in range(3)]
    half_det = linalg.det(gram) / 2  # the Gram determinant of a ternary form is even
    if _reduce_mod(half_det, p) == 0:
        raise PreconditionError(f"conic is singular modulo {p}")

    def Q(v):
        return (sum(q[i] * v[i] * v[i] for i in range(3))
                + sum(t[i][j] * v[i] * v[j] for i in range(3) for j in range(i + 1, 3))) % p

    def T(v, w):
        return (Q([x + y for x, y in zip(v, w)]) - Q(v) - Q(w)) % p

    if p == 2:
        for v in ((1, 0, 0), (0, 1, 0), (0, 0, 1), (1, 1, 0), (1, 0, 1), (0, 1, 1), (1, 1, 1)):
            if Q(v) == 0:
                return v
        raise AssertionError("nonsingular conic over F_2 without a point")
    for v in ((1, 0, 0), (0, 1, 0), (0, 0, 1)):
        if Q(v) == 0:
            return v
    rng = random.Random(seed)
    while True:
        v = [rng.randrange(p) for _ in range(3)]
        w = [rng.randrange(p) for _ in range(3)]
        qv = Q(v)
        if qv == 0:
            continue
        # points lam*v + w of the line; independence of v, w keeps them nonzero
        cross = [(v[1] * w[2] - v[2] * w[1]) % p, (v[2] * w[0] - v[0] * w[2]) % p,
                 (v[0] * w[1] - v[1] * w[0]) % p]
        if not any(cross):
            continue
        b, c = T(v, w), Q(w)
        disc = (b * b - 4 * qv * c) % p
        if legendre(disc, p) == -1:
            continue
        r = sqrt_mod_p(disc, p)
        lam = (-b + r) * pow(2 * qv, -1, p) % p
        point = [(lam * x + y) % p for x, y in zip(v, w)]
        assert Q(point) == 0
        return _normalize_mod(point, p)

