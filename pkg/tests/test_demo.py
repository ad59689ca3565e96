import math

import pytest
from hypothesis import given, settings, strategies as st

from quatring.demo import (
    factor_via_maxorder,
    is_matrix_ring_via_residuosity,
    is_prime_power,
    quadratic_residuosity,
    residuosity_via_splitting,
)
from quatring.errors import PreconditionError
from quatring.symbols import is_matrix_ring_global
from quatring.trace import recording


def test_factor_examples():
    assert factor_via_maxorder(91, seed=1) in (7, 13)
    assert factor_via_maxorder(15) in (3, 5)
    with pytest.raises(PreconditionError):
        factor_via_maxorder(25)
    with pytest.raises(PreconditionError):
        factor_via_maxorder(27)
    with pytest.raises(PreconditionError):
        factor_via_maxorder(14)


def test_prime_power():
    assert is_prime_power(7) and is_prime_power(2**10) and is_prime_power(3**5)
    assert not is_prime_power(12) and not is_prime_power(1)


def test_residuosity_examples():
    assert quadratic_residuosity(4, 15)
    assert not quadratic_residuosity(7, 15)
    assert quadratic_residuosity(2, 7)
    with pytest.raises(PreconditionError):
        quadratic_residuosity(3, 15)
    with pytest.raises(PreconditionError):
        quadratic_residuosity(3, 8)


def test_splitting_route_examples():
    for a, b in [(4, 15), (7, 15), (2, 7), (11, 35), (3, 1)]:
        assert residuosity_via_splitting(a, b, seed=3) == quadratic_residuosity(a, b)
    with recording() as steps:
        residuosity_via_splitting(2, 7)
    assert "residuosity.split" in steps
    with recording() as steps:
        residuosity_via_splitting(-1, 7)
    assert steps == ["residuosity.fallback"]


def test_matrix_ring_via_residuosity_examples():
    assert is_matrix_ring_via_residuosity(1, 1)
    assert not is_matrix_ring_via_residuosity(-1, -1)
    assert is_matrix_ring_via_residuosity(3, 15) == is_matrix_ring_global(3, 15)


def brute_residue(a, b):
    """a is a square modulo sqrad(b), by exhaustive search."""
    from quatring.arith import sqrad

    m = sqrad(b)
    return any((x * x - a) % m == 0 for x in range(m)) if m > 1 else True


@settings(max_examples=60, deadline=None)
@given(st.integers(-300, 300), st.integers(0, 200).map(lambda x: 2 * x + 1), st.integers(0, 99))
def test_residuosity_routes_agree(a, b, seed):
    if math.gcd(a, b) != 1:
        return
    direct = quadratic_residuosity(a, b)
    assert direct == brute_residue(a, b)
    assert residuosity_via_splitting(a, b, seed) == direct


@settings(max_examples=200)
@given(st.integers(-500, 500).filter(bool), st.integers(-500, 500).filter(bool))
def test_matrix_ring_via_residuosity_agrees(a, b):
    assert is_matrix_ring_via_residuosity(a, b) == is_matrix_ring_global(a, b)
