"""Square, Hilbert and Jacobi symbols over Q."""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction

from .arith import (
    REAL,
    Place,
    factor,
    legendre,
    ord_p,
    to_rational,
    unit_part,
)
from .errors import PreconditionError
from .trace import step


def _nonzero(*xs):
    out = []
    for x in xs:
        if not isinstance(x, int):
            x = to_rational(x)
        if x == 0:
            raise PreconditionError("symbol arguments must be nonzero")
        out.append(x)
    return out


def square_symbol(a, v) -> int:
    """(a | v) for an odd place v: 1, -1, or 0 (odd valuation, or negative at infinity)."""
    (a,) = _nonzero(a)
    v = Place.parse(v)
    if v.p == 2:
        raise PreconditionError("the square symbol is only defined at odd places")
    if v.is_real:
        return 1 if a > 0 else 0
    if ord_p(a, v.p) % 2:
        return 0
    u = unit_part(a, v.p)
    return legendre(u.numerator * u.denominator, v.p)


def hilbert_odd(a, b, v) -> int:
    """(a, b)_v at an odd prime or the real place, by the square-symbol criterion."""
    a, b = _nonzero(a, b)
    v = Place.parse(v)
    sa, sb = square_symbol(a, v), square_symbol(b, v)
    if sa == 1 or sb == 1 or square_symbol(-a * b, v) == 1 or sa == sb == -1:
        return 1
    return -1


def hilbert_real(a, b) -> int:
    a, b = _nonzero(a, b)
    return -1 if a < 0 and b < 0 else 1


# -- the dyadic place -------------------------------------------------------


@dataclass(frozen=True)
class EvenLiftWitness:
    """y, z, w mod 4 with 1 - a y^2 - b z^2 + a b w^2 = 0 mod 4 and y odd."""

    y: int
    z: int
    w: int

    def check(self, a: int, b: int) -> bool:
        y, z, w = self.y, self.z, self.w
        return (1 - a * y * y - b * z * z + a * b * w * w) % 4 == 0 and y % 2 == 1


def _square_free_integer(x: Fraction) -> int:
    """An integer in the same square class as x, with every square factor of 4 removed."""
    n = x.numerator * x.denominator
    while n % 4 == 0:
        n //= 4
    return n


def evennorm(a: int, b: int) -> tuple[int, int]:
    """y, z mod 4 with 1 - a y^2 - b z^2 = 0 mod 4, for a odd and ord_2 b = 1."""
    if a % 2 == 0 or ord_p(b, 2) != 1:
        raise PreconditionError("evennorm needs ord_2(a) = 0 and ord_2(b) = 1")
    step("evennorm.step2")
    # every odd residue is 1 mod 2, and the lift of its square root is taken to be 1
    y, z = 1, 0
    for _ in range(4):
        step("evennorm.step3")
        n = (1 - a * y * y - b * z * z) % 4
        t = ord_p(n, 2) if n else math.inf
        if t >= 2:
            break
        if t % 2 == 0:
            y = (y + (1 << (t // 2))) % 4
        else:
            z = (z + (1 << (t // 2))) % 4
    else:
        raise AssertionError("evennorm did not converge")
    step("evennorm.step4")
    return y, z


def valuationgame(a: int, b: int) -> EvenLiftWitness:
    """Witness for 1 - a y^2 - b z^2 + a b w^2 = 0 mod 4 with y odd; needs a odd, ord_2 b <= 1."""
    if a % 2 == 0 or ord_p(b, 2) > 1:
        raise PreconditionError("valuationgame needs ord_2(a) = 0 and ord_2(b) in {0, 1}")
    if ord_p(b, 2) == 1:
        step("valuationgame.step1")
        y, z = evennorm(a, b)
        return EvenLiftWitness(y, z, 0)
    # both are units, and every unit is a square mod 2, with inverse root 1
    step("valuationgame.step2")
    return EvenLiftWitness(1, 1, 1)


def _dyadic_normal_pair(a: Fraction, b: Fraction) -> tuple[int, int]:
    """Integers in the same symbol class with ord_2 a = 0 and ord_2 b in {0, 1}.

    Uses (a, b) = (a t^2, b u^2) = (b, a) = (-ab, b).
    """
    a, b = _square_free_integer(a), _square_free_integer(b)
    if a % 2 == 0 and b % 2 == 0:
        a = -(a * b) // 4
    elif a % 2 == 0:
        a, b = b, a
    return a, b


def hilbert_even(a, b) -> int:
    """(a, b)_2."""
    a, b = _nonzero(a, b)
    step("evenhilbalg.step1")
    a, b = _dyadic_normal_pair(a, b)
    step("evenhilbalg.step2")
    wit = valuationgame(a, b)
    y, z, w = wit.y, wit.z, wit.w
    num = 1 - a * y * y - b * z * z + a * b * w * w
    assert num % 4 == 0
    n = num // 4  # nrd of i' = (1 + y i + z j + w ij)/2, whose trace is 1
    if any((r * r - r + n) % 2 == 0 for r in (0, 1)):
        return 1
    step("evenhilbalg.step3")
    b_prime = a * b * (z * z * b + y * y * a)  # (j')^2 for j' = (zb) i - (ya) j
    return 1 if ord_p(b_prime, 2) % 2 == 0 else -1


# -- global ----------------------------------------------------------------


def hilbert(a, b, v) -> int:
    v = Place.parse(v)
    if v.p == 2:
        return hilbert_even(a, b)
    return hilbert_odd(a, b, v)


def support(a, b) -> list[Place]:
    """The places where (a, b)_v can be -1: primes dividing 2ab, then infinity."""
    a, b = _nonzero(a, b)
    primes = {2}
    for x in (a, b):
        for part in (x.numerator, x.denominator):
            primes.update(factor(part).primes)
    return [Place(p) for p in sorted(primes)] + [REAL]


def local_symbols(a, b) -> dict[Place, int]:
    return {v: hilbert(a, b, v) for v in support(a, b)}


def ramified_set(a, b) -> list[Place]:
    """Places where (a, b | Q) is a division algebra, primes first."""
    return [v for v, s in local_symbols(a, b).items() if s == -1]


def algebra_discriminant(a, b) -> int:
    return math.prod(v.p for v in ramified_set(a, b) if not v.is_real)


def is_matrix_ring_global(a, b) -> bool:
    return not ramified_set(a, b)


def reciprocity_check(a, b) -> tuple[bool, dict[Place, int]]:
    symbols = local_symbols(a, b)
    return math.prod(symbols.values()) == 1, symbols


def dyadic_by_reciprocity(a, b) -> int:
    """(a, b)_2 recovered from the other local symbols."""
    return math.prod(hilbert_odd(a, b, v) for v in support(a, b) if v.p != 2)


def jacobi(a: int, b: int) -> int:
    """Jacobi symbol (a/b) for odd b, by reduce-and-flip with Hilbert symbols at 2 and infinity."""
    a, b = int(a), int(b)
    if b % 2 == 0:
        raise PreconditionError("jacobi needs an odd modulus")
    step("jacobi.step1")
    z = 1
    while True:
        step("jacobi.step2")
        if abs(b) == 1:
            return z
        r = a % abs(b)
        if r == 0:
            return 0
        a1 = r
        while a1 % 2 == 0:
            a1 //= 2
        step("jacobi.step3")
        z *= hilbert_even(r, b) * hilbert_real(r, b)
        a, b = b, a1
