"""Reductions between maximal orders, factoring, matrix-ring testing and quadratic residuosity.

These are demonstrations on small inputs.  ``factor_via_maxorder`` is
circular here: the maximal-order engine factors the discriminant itself,
so it shows the reduction is correct rather than providing a factoring
method.
"""

from __future__ import annotations

import math
import random
from fractions import Fraction

from .arith import (
    factor,
    iroot,
    is_prime,
    is_square,
    legendre,
    ord_p,
    random_prime_in_progression,
    sqrad,
    to_rational,
)
from .errors import BudgetExhaustedError, PreconditionError
from .orders import discriminant, max_order, standard_order
from .quaternion import QuaternionAlgebra
from .symbols import hilbert_even, is_matrix_ring_global, jacobi
from .trace import step

FACTOR_TRIALS = 1000
PRIME_SEARCH_BUDGET = 10**5


def is_prime_power(n: int) -> bool:
    """True if n = p^k with p prime and k >= 1, without factoring n."""
    if n < 2:
        return False
    if is_prime(n):
        return True
    for k in range(n.bit_length(), 1, -1):
        r = iroot(n, k)
        if r > 1 and r**k == n:
            return is_prime_power(r)
    return False


def factor_via_maxorder(n: int, seed=0) -> int:
    """A proper factor of n read off the discriminant of a maximal order in (n, b | Q)."""
    n = int(n)
    if n < 3 or n % 2 == 0:
        raise PreconditionError("n must be odd and at least 3")
    if is_square(n):
        raise PreconditionError(f"{n} is a square")
    if is_prime_power(n):
        raise PreconditionError(f"{n} is a prime power")
    rng = random.Random(seed)
    for _ in range(FACTOR_TRIALS):
        b = rng.randrange(1, n)
        g = math.gcd(b, n)
        if g > 1:
            return g
        O = max_order(standard_order(QuaternionAlgebra(n, b)))
        g = math.gcd(discriminant(O).reduced, n)
        if 1 < g < n:
            return g
    raise BudgetExhaustedError(f"no factor of {n} after {FACTOR_TRIALS} trials")


def _check_residuosity_input(a: int, b: int):
    if b < 1 or b % 2 == 0:
        raise PreconditionError("b must be odd and positive")
    if math.gcd(a, b) != 1:
        raise PreconditionError("a and b must be coprime")


def quadratic_residuosity(a: int, b: int) -> bool:
    """Is a a square modulo sqrad(b)?  Decided by factoring b."""
    a, b = int(a), int(b)
    _check_residuosity_input(a, b)
    return all(legendre(a, p) == 1 for p in factor(sqrad(b)).primes)


def residuosity_via_splitting(a: int, b: int, seed=0) -> bool:
    """Quadratic residuosity decided by one matrix-ring test on (a, l b | Q).

    Needs a > 0 and (a/b) = 1; otherwise it falls back to the direct test.
    """
    a, b = int(a), int(b)
    _check_residuosity_input(a, b)
    if a <= 0 or jacobi(a, b) != 1:
        step("residuosity.fallback")
        return quadratic_residuosity(a, b)
    rng = random.Random(seed)
    bound = max(1000, (4 * a * b) ** 2)
    binv = pow(b, -1, a)
    for _ in range(PRIME_SEARCH_BUDGET):
        c = rng.randrange(1, a) if a > 1 else 0
        if math.gcd(c, a) != 1:
            continue
        # l = c^2 / b mod a makes l b a square modulo a
        ell = random_prime_in_progression(c * c * binv % a, a, bound, rng.getrandbits(64))
        if ell == 2 or b % ell == 0 or a % ell == 0 or legendre(a, ell) != 1:
            continue
        step("residuosity.split")
        return is_matrix_ring_global(a, ell * b)
    raise BudgetExhaustedError(f"no suitable prime after {PRIME_SEARCH_BUDGET} candidates")


def _integral(x: Fraction) -> int:
    x = to_rational(x)
    return x.numerator * x.denominator


def _coprime_part(x: int, y: int) -> int:
    """The largest divisor of x coprime to y."""
    x = abs(x)
    while (g := math.gcd(x, y)) > 1:
        x //= g
    return x


def _odd_part(x: int) -> int:
    while x % 2 == 0:
        x //= 2
    return x


def is_matrix_ring_via_residuosity(a, b) -> bool:
    """Decide (a, b | Q) = M_2(Q) with quadratic residuosity queries at odd places.

    Primes dividing exactly one of a, b go to residuosity queries; primes
    dividing both are found by factoring gcd(a, b) only.
    """
    a, b = _integral(a), _integral(b)
    if a == 0 or b == 0:
        raise PreconditionError("a and b must be nonzero")
    if a < 0 and b < 0:
        return False
    if hilbert_even(a, b) == -1:
        return False
    b0 = _odd_part(_coprime_part(b, a))
    if b0 > 1 and not quadratic_residuosity(a, b0):
        return False
    a0 = _odd_part(_coprime_part(a, b))
    if a0 > 1 and not quadratic_residuosity(b, a0):
        return False
    g = _odd_part(math.gcd(a, b))
    for p in factor(g).primes if g > 1 else []:
        alpha, beta = ord_p(a, p), ord_p(b, p)
        u, w = a // p**alpha, b // p**beta
        c = (-1) ** (alpha * beta) * u**beta * w**alpha
        if not quadratic_residuosity(c % p, p):
            return False
    return True
