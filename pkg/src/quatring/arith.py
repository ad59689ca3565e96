"""Integers and rationals: valuations, Legendre symbols, square roots mod p,
primality and factorization.
"""

from __future__ import annotations

import math
import random
from dataclasses import dataclass
from fractions import Fraction

from .errors import BudgetExhaustedError, NoSquareRootError, PreconditionError

INF = math.inf

TRIAL_DIVISION_BOUND = 10**4
_DETERMINISTIC_MR_BASES = (2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37)
_RANDOM_MR_ROUNDS = 64  # 4**-64 = 2**-128


def to_rational(x) -> Fraction:
    """Parse ints, Fractions and strings like "-3/4" into a Fraction."""
    if isinstance(x, Fraction):
        return x
    if isinstance(x, int):
        return Fraction(x)
    if isinstance(x, str):
        s = x.strip()
        if "/" in s:
            num, den = s.split("/")
            return Fraction(int(num), int(den))
        return Fraction(int(s))
    raise TypeError(f"cannot read {x!r} as a rational")


def format_rational(x) -> str:
    x = Fraction(x)
    if x.denominator == 1:
        return str(x.numerator)
    return f"{x.numerator}/{x.denominator}"


@dataclass(frozen=True, order=True)
class Place:
    """A place of Q: a prime ``p`` or the real place (``p is None``)."""

    p: int | None = None

    def __post_init__(self):
        if self.p is not None and not is_prime(self.p):
            raise PreconditionError(f"{self.p} is not prime")

    @property
    def is_real(self) -> bool:
        return self.p is None

    @property
    def is_odd(self) -> bool:
        return self.p != 2

    def __str__(self):
        return "inf" if self.p is None else str(self.p)

    @classmethod
    def parse(cls, s) -> "Place":
        if isinstance(s, Place):
            return s
        if str(s).lower() in ("inf", "infinity", "real", "oo"):
            return REAL
        return cls(int(s))

    def sort_key(self):
        return (1, 0) if self.p is None else (0, self.p)


REAL = Place(None)


def ord_p(x, p: int):
    """p-adic valuation of a rational; +inf for zero."""
    if not isinstance(x, (int, Fraction)):
        x = Fraction(x)
    if x == 0:
        return INF
    if p == 2 and isinstance(x, int):
        return (x & -x).bit_length() - 1
    v = 0
    n, d = x.numerator, x.denominator
    while n % p == 0:
        n //= p
        v += 1
    while d % p == 0:
        d //= p
        v -= 1
    return v


def ord_v(x, v: Place):
    """Valuation at a place; at the real place it is 0 for x > 0, 1 for x < 0."""
    x = Fraction(x)
    if x == 0:
        return INF
    if v.is_real:
        return 0 if x > 0 else 1
    return ord_p(x, v.p)


def unit_part(x, p: int) -> Fraction:
    """x / p**ord_p(x)."""
    x = Fraction(x)
    return x / Fraction(p) ** ord_p(x, p)


def legendre(a: int, p: int) -> int:
    """Legendre symbol by Euler's criterion."""
    if p == 2 or not is_prime(p):
        raise PreconditionError(f"{p} is not an odd prime")
    a = int(a) % p
    if a == 0:
        return 0
    return 1 if pow(a, (p - 1) // 2, p) == 1 else -1


def sqrt_mod_p(a: int, p: int) -> int:
    """Tonelli-Shanks square root mod a prime, canonical r <= p - r."""
    a = int(a) % p
    if p == 2 or a == 0:
        return a
    if legendre(a, p) != 1:
        raise NoSquareRootError(f"{a} is not a square modulo {p}")
    q, s = p - 1, 0
    while q % 2 == 0:
        q //= 2
        s += 1
    if s == 1:
        r = pow(a, (p + 1) // 4, p)
    else:
        z = 2
        while pow(z, (p - 1) // 2, p) != p - 1:
            z += 1
        m, c, t, r = s, pow(z, q, p), pow(a, q, p), pow(a, (q + 1) // 2, p)
        while t != 1:
            i, t2 = 0, t
            while t2 != 1:
                t2 = t2 * t2 % p
                i += 1
            b = pow(c, 1 << (m - i - 1), p)
            m, c = i, b * b % p
            t, r = t * c % p, r * b % p
    return min(r, p - r)


def _miller_rabin(n: int, a: int) -> bool:
    d, s = n - 1, 0
    while d % 2 == 0:
        d //= 2
        s += 1
    x = pow(a, d, n)
    if x in (1, n - 1):
        return True
    for _ in range(s - 1):
        x = x * x % n
        if x == n - 1:
            return True
    return False


def is_prime(n: int) -> bool:
    """Miller-Rabin; deterministic below 2**64, error < 2**-128 above."""
    n = int(n)
    if n < 2:
        return False
    for p in _DETERMINISTIC_MR_BASES:
        if n % p == 0:
            return n == p
    if not all(_miller_rabin(n, a) for a in _DETERMINISTIC_MR_BASES):
        return False
    if n < 1 << 64:
        return True
    rng = random.Random(n)
    return all(_miller_rabin(n, rng.randrange(2, n - 1)) for _ in range(_RANDOM_MR_ROUNDS))


@dataclass(frozen=True)
class Factorization:
    sign: int
    factors: tuple[tuple[int, int], ...]

    def __iter__(self):
        return iter(self.factors)

    def as_dict(self) -> dict[int, int]:
        return dict(self.factors)

    @property
    def primes(self) -> list[int]:
        return [p for p, _ in self.factors]

    def value(self) -> int:
        return self.sign * math.prod(p**e for p, e in self.factors)


def _pollard_brent(n: int, rng: random.Random) -> int:
    """A nontrivial factor of the odd composite n."""
    while True:
        y, c, m = rng.randrange(1, n), rng.randrange(1, n), 128
        g = r = q = 1
        while g == 1:
            x = y
            for _ in range(r):
                y = (y * y + c) % n
            k = 0
            while k < r and g == 1:
                ys = y
                for _ in range(min(m, r - k)):
                    y = (y * y + c) % n
                    q = q * abs(x - y) % n
                g = math.gcd(q, n)
                k += m
            r *= 2
        if g == n:
            g = 1
            while g == 1:
                ys = (ys * ys + c) % n
                g = math.gcd(abs(x - ys), n)
        if g != n:
            return g


def _split(n: int, out: dict[int, int], rng: random.Random):
    if n == 1:
        return
    if is_prime(n):
        out[n] = out.get(n, 0) + 1
        return
    r = math.isqrt(n)
    if r * r == n:
        _split(r, out, rng)
        _split(r, out, rng)
        return
    d = _pollard_brent(n, rng)
    _split(d, out, rng)
    _split(n // d, out, rng)


def factor(n: int) -> Factorization:
    """Trial division to 10**4, then Pollard rho (Brent) seeded from n."""
    n = int(n)
    if n == 0:
        raise PreconditionError("cannot factor 0")
    sign = -1 if n < 0 else 1
    m = abs(n)
    out: dict[int, int] = {}
    for p in (2, 3):
        while m % p == 0:
            out[p] = out.get(p, 0) + 1
            m //= p
    p = 5
    while p <= TRIAL_DIVISION_BOUND and p * p <= m:
        for q in (p, p + 2):
            while m % q == 0:
                out[q] = out.get(q, 0) + 1
                m //= q
        p += 6
    if m > 1:
        _split(m, out, random.Random(abs(n)))
    return Factorization(sign, tuple(sorted(out.items())))


def sqrad(n: int) -> int:
    """Product of the primes dividing n to an odd power."""
    if n < 1:
        raise PreconditionError("sqrad needs a positive integer")
    return math.prod(p for p, e in factor(n) if e % 2)


def is_square(n: int) -> bool:
    return n >= 0 and math.isqrt(n) ** 2 == n


def iroot(n: int, k: int) -> int:
    """floor(n ** (1/k)) for n >= 0."""
    if n < 2:
        return n
    lo, hi = 1, 1 << (n.bit_length() // k + 1)
    while lo < hi:
        mid = (lo + hi + 1) // 2
        if mid**k <= n:
            lo = mid
        else:
            hi = mid - 1
    return lo


def is_perfect_power(n: int) -> bool:
    """True if n = m**k for some k >= 2."""
    if n < 4:
        return False
    return any(iroot(n, k) ** k == n for k in range(2, n.bit_length() + 1))


def random_prime_in_progression(b: int, q: int, bound: int, seed, budget: int = 10**5) -> int:
    """A random prime l < bound with l = b (mod q)."""
    if math.gcd(b, q) != 1:
        raise PreconditionError(f"gcd({b}, {q}) != 1")
    rng = random.Random(seed)
    b %= q
    count = (bound - 1 - b) // q + 1 if bound > b else 0
    if count <= 0:
        raise BudgetExhaustedError("progression is empty below the bound")
    for _ in range(budget):
        ell = b + q * rng.randrange(count)
        if is_prime(ell):
            return ell
    raise BudgetExhaustedError(f"no prime = {b} mod {q} below {bound} after {budget} trials")
