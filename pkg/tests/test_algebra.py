import random
from fractions import Fraction

import pytest
from hypothesis import given, settings, strategies as st

from quatring import linalg
from quatring.algebra import (
    MultiplicationTable,
    center,
    conj,
    diagonal_table,
    has_standard_involution,
    is_central,
    jacobson_radical,
    matrix_ring_table,
    nrd,
    quaternion_table,
    square_zero_table,
    trd,
    truncated_polynomial_table,
)
from quatring.errors import NoIdentityError, NotAssociativeError, NoStandardInvolutionError

from oracles import mat_mul

M2_BASIS = [((1, 0), (0, 1)), ((1, 0), (0, 0)), ((0, 1), (0, 0)), ((0, 0), (1, 0))]


def to_matrix(x):
    return tuple(tuple(sum(c * m[r][s] for c, m in zip(x.coords, M2_BASIS)) for s in range(2))
                 for r in range(2))


def test_multiply_in_m2():
    M = matrix_ring_table()
    i = M.element((0, 2, 0, 0)) - 1  # diag(1, -1)
    j = M.element((0, 0, 1, 1))  # antidiag(1, 1)
    assert to_matrix(i * j) == ((0, 1), (-1, 0))
    assert to_matrix(i * j) == mat_mul(to_matrix(i), to_matrix(j))


def test_identity_and_idempotents():
    Q = quaternion_table(-1, -1)
    x = Q.element((1, 2, 3, 4))
    assert Q.one() * x == x == x * Q.one()
    D = diagonal_table(3)
    assert (D.basis()[1] * D.basis()[2]).is_zero()


def test_center():
    assert len(center(matrix_ring_table())) == 1
    assert len(center(truncated_polynomial_table(4))) == 4
    assert len(center(quaternion_table(-1, -1))) == 1
    assert is_central(quaternion_table(2, 3))
    assert not is_central(diagonal_table(3))


def test_standard_involution_detection():
    for a, b in [(-1, -1), (2, 5), (Fraction(1, 3), -7)]:
        data = has_standard_involution(quaternion_table(a, b))
        assert data is not None and data.t[1:] == (0, 0, 0)
    assert has_standard_involution(diagonal_table(3)) is None
    assert has_standard_involution(truncated_polynomial_table(4)) is None


def test_trd_nrd_conj():
    Q = quaternion_table(-1, -1)
    one = Q.one()
    assert trd(one) == 2 and nrd(one) == 1 and conj(one) == one
    x = Q.element((0, 1, 1, 0))
    assert trd(x) == 0 and nrd(x) == 2
    M = matrix_ring_table()
    for x in M.basis():
        m = to_matrix(x)
        assert trd(x) == m[0][0] + m[1][1]
        assert nrd(x) == m[0][0] * m[1][1] - m[0][1] * m[1][0]
    with pytest.raises(NoStandardInvolutionError):
        trd(diagonal_table(3).one())


def test_jacobson_radical():
    assert jacobson_radical(quaternion_table(3, -5)) == []
    rad = jacobson_radical(square_zero_table(4))
    assert len(rad) == 3 and all(x.coords[0] == 0 for x in rad)


def test_constructor_rejects_bad_tables():
    c = quaternion_table(-1, -1).to_json()["c"]
    c[1][1] = ["0", "0", "1", "0"]  # i*i = j breaks associativity
    with pytest.raises(NotAssociativeError, match=r"associativity violated at \(\d,\d,\d\)"):
        MultiplicationTable(c)
    bad = [[[int(i == j == k) for k in range(2)] for j in range(2)] for i in range(2)]
    with pytest.raises(NoIdentityError):
        MultiplicationTable(bad)


def test_recovered_identity():
    # Q x Q with basis (1,0), (0,1): identity is e1 + e2
    c = [[[1, 0], [0, 0]], [[0, 0], [0, 1]]]
    table, rows = MultiplicationTable.with_recovered_identity(c)
    assert rows[0] == [1, 1]
    assert table.one() * table.basis()[1] == table.basis()[1]


def test_json_round_trip():
    T = quaternion_table(Fraction(-1, 2), 3)
    assert MultiplicationTable.from_json(T.to_json()) == T


coords = st.lists(st.fractions(min_value=-20, max_value=20, max_denominator=6), min_size=4, max_size=4)
ab = st.sampled_from([(-1, -1), (1, 1), (2, 3), (-2, 5), (Fraction(3, 2), -7)])


@given(ab, coords, coords)
def test_involution_laws(pair, u, v):
    Q = quaternion_table(*pair)
    x, y = Q.element(u), Q.element(v)
    assert conj(conj(x)) == x
    assert conj(x * y) == conj(y) * conj(x)
    assert nrd(x * y) == nrd(x) * nrd(y)
    assert x * x - trd(x) * x + nrd(x) == 0


def _random_basis_change(rng, n=4):
    while True:
        rows = [[1] + [0] * (n - 1)]
        rows += [[rng.randint(-3, 3) for _ in range(n)] for _ in range(n - 1)]
        if linalg.det(rows) != 0:
            return rows


@settings(max_examples=30)
@given(st.integers(0, 10**6))
def test_base_change_covariance(seed):
    rng = random.Random(seed)
    for T in (quaternion_table(-1, 3), matrix_ring_table(), diagonal_table(4)):
        rows = _random_basis_change(rng)
        T2 = T.change_basis(rows)
        d1, d2 = has_standard_involution(T), has_standard_involution(T2)
        assert (d1 is None) == (d2 is None)
        if d1 is None:
            continue
        c = [Fraction(rng.randint(-5, 5)) for _ in range(4)]
        x2 = T2.element(c)
        x1 = T.element(linalg.vec_mat(c, rows))
        assert trd(x1) == trd(x2) and nrd(x1) == nrd(x2)


@given(ab, coords)
def test_minimal_polynomial(pair, u):
    Q = quaternion_table(*pair)
    x = Q.element(u)
    if not x.is_scalar():
        # 1, x, x^2 are dependent with the trd/nrd coefficients and 1, x are independent
        x2 = x * x
        assert x2 == trd(x) * x - nrd(x)
