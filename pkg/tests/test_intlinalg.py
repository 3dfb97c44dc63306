import random

from hypothesis import given, settings
from hypothesis import strategies as st

from ttspec.intlinalg import (
    IntMatrix,
    cokernel_invariants,
    diagonal_of,
    kernel_mod,
    smith_normal_form,
    solve_integer,
    zmod_homology,
)


def snf_check(a):
    u, d, v = smith_normal_form(a)
    assert u.mul(a).mul(v) == d
    assert abs(u.det()) == 1
    assert abs(v.det()) == 1
    diag = diagonal_of(d)
    for i in range(min(a.rows, a.cols)):
        for j in range(min(a.rows, a.cols)):
            if i != j:
                assert d[i, j] == 0
    for x, y in zip(diag, diag[1:]):
        if y != 0:
            assert x != 0 and y % x == 0
        # zeros only at the tail
        if x == 0:
            assert y == 0
    return diag


def test_snf_single_entry():
    assert snf_check(IntMatrix.from_rows([[2]])) == [2]


def test_snf_diag_2_3_gives_1_6():
    # classical divisibility normalization of diag(2,3)
    diag = snf_check(IntMatrix.from_rows([[2, 0], [0, 3]]))
    assert diag == [1, 6]


def test_snf_zero_matrix():
    diag = snf_check(IntMatrix.zeros(2, 3))
    assert diag == [0, 0]


@st.composite
def int_matrix(draw, max_dim=4, max_abs=6):
    rows = draw(st.integers(0, max_dim))
    cols = draw(st.integers(0, max_dim))
    entries = draw(
        st.lists(st.integers(-max_abs, max_abs), min_size=rows * cols, max_size=rows * cols)
    )
    return IntMatrix(rows, cols, entries)


@settings(max_examples=80, deadline=None)
@given(int_matrix())
def test_snf_reconstruction_property(a):
    snf_check(a)


def test_solve_integer_examples():
    b = IntMatrix.from_rows([[2, 0], [0, 3]])
    g = IntMatrix.from_rows([[4], [9]])
    x = solve_integer(b, g)
    assert x is not None
    assert b.mul(x) == g
    # 2x = 3 has no integer solution
    assert solve_integer(IntMatrix.from_rows([[2]]), IntMatrix.from_rows([[3]])) is None


def test_kernel_mod_multiplication_by_two_mod_twelve():
    m = IntMatrix.from_rows([[2]])
    k = kernel_mod(m, 12)
    # lattice {x : 2x = 0 mod 12} = 6Z
    assert k.rows == 1 and k.cols == 1
    assert abs(k[0, 0]) == 6


def test_kernel_mod_columns_satisfy_congruence():
    rng = random.Random(5)
    for _ in range(25):
        rows = rng.randint(1, 3)
        cols = rng.randint(1, 3)
        n = rng.choice([2, 4, 6, 12])
        m = IntMatrix(rows, cols, [rng.randint(-5, 5) for _ in range(rows * cols)])
        k = kernel_mod(m, n)
        prod = m.mul(k)
        assert all(x % n == 0 for x in prod.entries)


def test_cokernel_invariants():
    assert cokernel_invariants(IntMatrix.from_rows([[2, 0], [0, 3]])) == [6]
    assert cokernel_invariants(IntMatrix.from_rows([[1, 0], [0, 1]])) == []


def test_zmod_homology_of_multiplication_by_two_mod_twelve():
    # complex (Z/12) --2--> (Z/12): H^0 = {0,6} = Z/2, H^1 = Z/12 / 2Z/12 = Z/2
    d = IntMatrix.from_rows([[2]])
    h0 = zmod_homology(None, d, 1, 12)
    h1 = zmod_homology(d, None, 1, 12)
    assert h0 == [2]
    assert h1 == [2]


def test_zmod_homology_unit_complex_is_acyclic():
    d = IntMatrix.from_rows([[1]])
    assert zmod_homology(None, d, 1, 12) == []
    assert zmod_homology(d, None, 1, 12) == []


def test_zmod_homology_of_identity_free_module():
    # stalk complex (Z/4)^2 with no differentials: H^0 = (Z/4)^2
    assert zmod_homology(None, None, 2, 4) == [4, 4]
