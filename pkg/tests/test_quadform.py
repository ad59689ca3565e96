import random
from fractions import Fraction

import pytest
from hypothesis import given, settings, strategies as st

from quatring import linalg
from quatring.arith import INF
from quatring.errors import PreconditionError, SingularMatrixError
from quatring.quadform import (
    FIELD_Q,
    LocalRing,
    QuadraticForm,
    is_nonsingular,
    localized_at,
    normalize,
    radical,
    transport,
)

from checks import check_normalization

XY = QuadraticForm((0, 0), [[0, 1], [1, 0]])


def test_diagonal_over_q_is_untouched():
    dec = normalize(QuadraticForm.diagonal([1, -1]))
    assert [b.kind for b in dec.blocks] == ["unary", "unary"]
    assert dec.change_of_basis() == [[1, 0], [0, 1]]


def test_hyperbolic_plane_at_two():
    dec = normalize(XY, localized_at(2))
    (blk,) = dec.blocks
    assert blk.kind == "binary" and blk.valuation == 0
    assert tuple(blk.coeffs) == (0, 1, 0)
    assert blk.is_atomic(localized_at(2))


def test_scaled_binary_block_at_two():
    Q = QuadraticForm((2, 2), [[0, 2], [2, 0]])
    dec = normalize(Q, localized_at(2))
    (blk,) = dec.blocks
    assert blk.kind == "binary" and blk.valuation == 1 and tuple(blk.coeffs) == (1, 1, 1)
    check_normalization(Q, localized_at(2), dec)


def test_zero_form():
    dec = normalize(QuadraticForm.diagonal([0, 0, 0]), localized_at(3))
    assert dec.valuations() == [INF] * 3
    assert len(radical(QuadraticForm.diagonal([0, 0, 0]))) == 3


def test_radical_examples():
    for a, b in [(-1, -1), (2, 3), (Fraction(1, 2), -5)]:
        assert radical(QuadraticForm.diagonal([1, -a, -b, a * b])) == []
    rad = radical(QuadraticForm.diagonal([1, 0]))
    assert len(rad) == 1 and rad[0][0] == 0
    assert is_nonsingular(QuadraticForm.diagonal([1, -1, -1, 1]))


def test_transport_examples():
    Q = QuadraticForm((1, 2, 3), [[0, 1, 0], [1, 0, 5], [0, 5, 0]])
    assert transport(Q, linalg.identity(3)) == Q
    assert transport(XY, [[0, 1], [1, 0]]) == XY
    with pytest.raises(SingularMatrixError):
        transport(XY, [[1, 1], [1, 1]])
    with pytest.raises(SingularMatrixError):
        transport(XY, [[2, 0], [0, 1]], localized_at(2))


def test_odd_prime_valuations():
    Q = QuadraticForm.diagonal([9, 3, 1])
    dec = normalize(Q, localized_at(3))
    assert dec.valuations() == [0, 1, 2]
    check_normalization(Q, localized_at(3), dec)


def test_rejects_non_integral_and_bad_ring():
    with pytest.raises(PreconditionError):
        normalize(QuadraticForm.diagonal([Fraction(1, 3)]), localized_at(3))
    with pytest.raises(PreconditionError):
        LocalRing.parse(4)
    assert LocalRing.parse("Q") is FIELD_Q


def test_json_round_trip():
    Q = QuadraticForm((1, Fraction(-2, 3), 0), [[0, 1, 0], [1, 0, Fraction(1, 2)], [0, Fraction(1, 2), 0]])
    assert QuadraticForm.from_json(Q.to_json()) == Q


def random_form(rng, n, lo=-12, hi=12):
    q = tuple(rng.randint(lo, hi) for _ in range(n))
    t = [[0] * n for _ in range(n)]
    for i in range(n):
        for j in range(i + 1, n):
            t[i][j] = t[j][i] = rng.randint(lo, hi)
    return QuadraticForm(q, t)


rings = st.sampled_from([FIELD_Q, LocalRing(2), LocalRing(3), LocalRing(5)])


@settings(max_examples=200)
@given(st.integers(0, 10**9), st.integers(1, 4), rings)
def test_normalize_sound(seed, n, ring):
    Q = random_form(random.Random(seed), n)
    check_normalization(Q, ring, normalize(Q, ring))


@settings(max_examples=100)
@given(st.integers(0, 10**9), st.integers(1, 4), rings)
def test_inverse_transport_recovers_form(seed, n, ring):
    Q = random_form(random.Random(seed), n)
    dec = normalize(Q, ring)
    back = dec.block_form().transport(linalg.inverse(dec.change_of_basis()))
    assert back == Q


@settings(max_examples=100)
@given(st.integers(0, 10**9), st.integers(1, 4))
def test_radical_dimension_invariant(seed, n):
    rng = random.Random(seed)
    Q = random_form(rng, n, -2, 2)
    while True:
        P = [[rng.randint(-3, 3) for _ in range(n)] for _ in range(n)]
        if linalg.det(P):
            break
    assert len(radical(Q)) == len(radical(Q.transport(P)))
