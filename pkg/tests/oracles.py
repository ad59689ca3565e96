"""Independent reference implementations used only by the tests."""

from fractions import Fraction

import sympy


def legendre_brute(a, p):
    a %= p
    if a == 0:
        return 0
    return 1 if any(x * x % p == a for x in range(1, p)) else -1


def jacobi_brute(a, b):
    """Product of brute-force Legendre symbols over the prime factors of b."""
    out = 1
    for p, e in sympy.factorint(b).items():
        out *= legendre_brute(a, p) ** e
    return out


def _split2(x):
    x = Fraction(x)
    n = x.numerator * x.denominator  # same square class
    alpha = 0
    while n % 2 == 0:
        n //= 2
        alpha += 1
    return alpha, n


def hilbert2_closed(a, b):
    """(a, b)_2 by the classical epsilon/omega formula."""
    alpha, u = _split2(a)
    beta, w = _split2(b)

    def eps(x):
        return ((x - 1) // 2) % 2

    def omega(x):
        return ((x * x - 1) // 8) % 2

    e = eps(u) * eps(w) + alpha * omega(w) + beta * omega(u)
    return -1 if e % 2 else 1


def hilbert_p_closed(a, b, p):
    """(a, b)_p for odd p by the tame-symbol formula."""
    a, b = Fraction(a), Fraction(b)
    alpha = sympy.multiplicity(p, a.numerator) - sympy.multiplicity(p, a.denominator)
    beta = sympy.multiplicity(p, b.numerator) - sympy.multiplicity(p, b.denominator)
    u = a / Fraction(p) ** alpha
    w = b / Fraction(p) ** beta
    sign = (-1) ** (alpha * beta * ((p - 1) // 2))
    t = Fraction(sign) * u**beta / w**alpha
    tn = t.numerator * pow(t.denominator, -1, p) % p
    return legendre_brute(tn, p)


def ramified_brute(a, b):
    """Ramified places via the closed formulas at every prime of 2ab and the sign test."""
    a, b = Fraction(a), Fraction(b)
    n = abs(a.numerator * a.denominator * b.numerator * b.denominator) * 2
    out = []
    for p in sorted(sympy.primefactors(n)):
        s = hilbert2_closed(a, b) if p == 2 else hilbert_p_closed(a, b, p)
        if s == -1:
            out.append(p)
    if a < 0 and b < 0:
        out.append("inf")
    return out


def mat_mul(x, y):
    return tuple(tuple(sum(x[i][k] * y[k][j] for k in range(2)) for j in range(2)) for i in range(2))
