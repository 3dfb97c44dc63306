import random

from hypothesis import given, settings
from hypothesis import strategies as st

from ttspec.fields import PrimeField, Rationals
from ttspec.linalg import Matrix, kronecker, rank_kernel, solve_linear

F2 = PrimeField(2)
F5 = PrimeField(5)
QQ = Rationals()


def back_substitute(rows, b):
    """Independent oracle for upper-triangular rational solves."""
    n = len(rows)
    x = [QQ.zero] * n
    for i in reversed(range(n)):
        acc = QQ.from_int(b[i]) if isinstance(b[i], int) else b[i]
        for j in range(i + 1, n):
            acc -= rows[i][j] * x[j]
        x[i] = acc / rows[i][i]
    return x


def test_rank_kernel_identity_f2():
    m = Matrix.identity(F2, 2)
    rank, basis = rank_kernel(m)
    assert rank == 2
    assert basis == []


def test_rank_kernel_zero_matrix():
    m = Matrix.zeros(F2, 2, 3)
    rank, basis = rank_kernel(m)
    assert rank == 0
    assert len(basis) == 3


def test_rank_kernel_repeated_rows_f2():
    # hand row-reduction: both rows equal, so rank 1 and kernel spanned by (1,1)
    m = Matrix.from_int_rows(F2, [[1, 1], [1, 1]])
    rank, basis = rank_kernel(m)
    assert rank == 1
    assert len(basis) == 1
    assert basis[0] == [1, 1]
    for v in basis:
        assert m.apply(v) == [0, 0]


def test_solve_identity_returns_rhs():
    m = Matrix.identity(F5, 3)
    assert solve_linear(m, [1, 2, 3]) == [1, 2, 3]


def test_solve_zero_matrix_inconsistent():
    m = Matrix.zeros(F5, 2, 2)
    assert solve_linear(m, [1, 0]) is None


def test_solve_rational_upper_triangular():
    rows = [[QQ.one, QQ.one], [QQ.zero, QQ.one]]
    m = Matrix.from_rows(QQ, rows)
    b = [QQ.from_int(3), QQ.from_int(1)]
    expected = back_substitute(rows, b)
    assert expected == [QQ.from_int(2), QQ.from_int(1)]
    assert solve_linear(m, b) == expected


def test_kronecker_with_scalar_one_is_identity():
    a = Matrix.from_int_rows(F2, [[1, 0], [1, 1]])
    one = Matrix.identity(F2, 1)
    assert kronecker(a, one) == a
    assert kronecker(one, a) == a


def test_kronecker_with_empty_matrix():
    a = Matrix.from_int_rows(F2, [[1, 0], [1, 1]])
    empty = Matrix.zeros(F2, 0, 0)
    got = kronecker(a, empty)
    assert (got.rows, got.cols) == (0, 0)


def test_kronecker_definition_expansion():
    # I_2 (x) N with N = [[0,1],[0,0]]: block diagonal with two copies of N
    i2 = Matrix.identity(F2, 2)
    n = Matrix.from_int_rows(F2, [[0, 1], [0, 0]])
    got = kronecker(i2, n)
    expected = Matrix.from_int_rows(
        F2,
        [
            [0, 1, 0, 0],
            [0, 0, 0, 0],
            [0, 0, 0, 1],
            [0, 0, 0, 0],
        ],
    )
    assert got == expected


@st.composite
def f5_matrix(draw, max_dim=4):
    rows = draw(st.integers(0, max_dim))
    cols = draw(st.integers(0, max_dim))
    entries = draw(st.lists(st.integers(0, 4), min_size=rows * cols, max_size=rows * cols))
    return Matrix(F5, rows, cols, entries)


@settings(max_examples=60, deadline=None)
@given(f5_matrix())
def test_rank_equals_rank_of_transpose(m):
    assert m.rank() == m.transpose().rank()


@settings(max_examples=60, deadline=None)
@given(f5_matrix(), st.integers(0, 10**6))
def test_solve_recovers_consistent_systems(m, seed):
    rng = random.Random(seed)
    x = [F5.rand(rng) for _ in range(m.cols)]
    b = m.apply(x)
    got = m.solve(b)
    assert got is not None
    assert m.apply(got) == b


@settings(max_examples=40, deadline=None)
@given(f5_matrix(max_dim=3))
def test_kernel_vectors_are_independent_and_annihilated(m):
    rank, basis = rank_kernel(m)
    assert rank + len(basis) == m.cols
    for v in basis:
        assert all(x == 0 for x in m.apply(v))
    if basis:
        k = Matrix.from_columns(F5, basis, m.cols)
        assert k.rank() == len(basis)


def test_kronecker_mixed_product_property():
    rng = random.Random(11)
    for _ in range(20):
        a = Matrix(F5, 2, 2, [F5.rand(rng) for _ in range(4)])
        b = Matrix(F5, 2, 3, [F5.rand(rng) for _ in range(6)])
        c = Matrix(F5, 2, 2, [F5.rand(rng) for _ in range(4)])
        d = Matrix(F5, 3, 2, [F5.rand(rng) for _ in range(6)])
        lhs = kronecker(a, b).mul(kronecker(c, d))
        rhs = kronecker(a.mul(c), b.mul(d))
        assert lhs == rhs


def test_inverse_round_trip_over_q():
    m = Matrix.from_int_rows(QQ, [[2, 1], [1, 1]])
    inv = m.inverse()
    assert inv is not None
    assert m.mul(inv) == Matrix.identity(QQ, 2)


def test_singular_matrix_has_no_inverse():
    m = Matrix.from_int_rows(QQ, [[1, 2], [2, 4]])
    assert m.inverse() is None
