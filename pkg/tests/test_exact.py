from fractions import Fraction

import pytest
import sympy
from hypothesis import given, settings, strategies as st

from matroiddet.errors import LatticeSpanMismatch
from matroiddet.exact import (IntegerMatrix, RationalMatrix, format_rational,
                              kernel_basis, lattice_index, parse_rational,
                              rank, saturation_basis, smith_invariants,
                              smith_normal_form, solve)

BRAID_4x6 = [
    [1, 1, 1, 0, 0, 0],
    [-1, 0, 0, 1, 1, 0],
    [0, -1, 0, -1, 0, 1],
    [0, 0, -1, 0, -1, -1],
]

small_ints = st.integers(-4, 4)


@st.composite
def int_matrices(draw, max_rows=5, max_cols=5):
    r = draw(st.integers(1, max_rows))
    c = draw(st.integers(1, max_cols))
    rows = draw(st.lists(st.lists(small_ints, min_size=c, max_size=c), min_size=r, max_size=r))
    return RationalMatrix.from_rows(rows, c)


@st.composite
def rational_matrices(draw):
    r = draw(st.integers(1, 4))
    c = draw(st.integers(1, 5))
    frac = st.builds(Fraction, st.integers(-6, 6), st.integers(1, 4))
    rows = draw(st.lists(st.lists(frac, min_size=c, max_size=c), min_size=r, max_size=r))
    return RationalMatrix.from_rows(rows, c)


def test_parse_rational():
    assert parse_rational("3/6") == Fraction(1, 2)
    assert parse_rational("-7") == -7
    assert parse_rational(" 2 / 3 ") == Fraction(2, 3)
    for bad in ["0.5", "1e3", "1/0", "", "a/b"]:
        with pytest.raises(ValueError):
            parse_rational(bad)


@given(st.integers(-10**6, 10**6), st.integers(1, 10**6))
def test_format_parse_round_trip(p, q):
    x = Fraction(p, q)
    assert parse_rational(format_rational(x)) == x


def test_rank_examples(banana_A):
    assert rank(banana_A) == 3
    assert rank(RationalMatrix.from_rows(BRAID_4x6)) == 3
    assert rank(RationalMatrix.zeros(3, 5)) == 0
    assert rank(RationalMatrix.zeros(0, 0)) == 0


def test_kernel_examples(banana_A, braid_A):
    K = kernel_basis(banana_A)
    assert K.shape == (4, 1)
    assert K.col(0) == (1, 1, 1, 1)
    assert kernel_basis(RationalMatrix.identity(4)).cols == 0
    Kb = kernel_basis(braid_A)
    assert Kb.cols == 3 and (braid_A @ Kb).is_zero()


def test_smith_examples():
    _, D, _ = smith_normal_form(RationalMatrix.from_rows([[2, 0], [0, 3]]))
    assert D == IntegerMatrix.from_rows([[1, 0], [0, 6]])
    _, D, _ = smith_normal_form(RationalMatrix.zeros(2, 3))
    assert D.is_zero()
    _, D, _ = smith_normal_form(RationalMatrix.from_rows([[2, 0], [0, 2]]))
    assert D == IntegerMatrix.from_rows([[2, 0], [0, 2]])


def test_lattice_index_examples():
    I2 = RationalMatrix.identity(2)
    assert lattice_index(RationalMatrix.from_rows([[2, 0], [0, 2]]), I2) == 4
    assert lattice_index(RationalMatrix.from_rows([[1, 1], [1, -1]]), I2) == 2
    # coordinate vectors of J and K against those of their disjoint union
    e = lambda i: [int(i == j) for j in range(4)]
    sub = RationalMatrix.from_columns([e(0), e(2), e(1)])
    amb = RationalMatrix.from_columns([e(0), e(1), e(2)])
    assert lattice_index(sub, amb) == 1


def test_lattice_index_span_mismatch():
    with pytest.raises(LatticeSpanMismatch):
        lattice_index(RationalMatrix.from_rows([[1], [0]]), RationalMatrix.identity(2))


def test_solve():
    A = RationalMatrix.from_rows([[1, 2], [3, 4]])
    assert solve(A, [5, 6]) == (Fraction(-4), Fraction(9, 2))
    assert solve(RationalMatrix.from_rows([[1, 1], [1, 1]]), [1, 2]) is None


def test_matrix_is_immutable(banana_A):
    with pytest.raises(AttributeError):
        banana_A.rows = 5


@settings(max_examples=60, deadline=None)
@given(rational_matrices())
def test_rank_properties(M):
    assert rank(M) == rank(M.T)
    K = kernel_basis(M)
    assert rank(M) + K.cols == M.cols
    assert (M @ K).is_zero() if K.cols else True


@settings(max_examples=60, deadline=None)
@given(rational_matrices())
def test_rank_matches_sympy(M):
    S = sympy.Matrix(M.rows, M.cols, [sympy.Rational(x.numerator, x.denominator) for x in M.entries])
    assert rank(M) == S.rank()


@settings(max_examples=60, deadline=None)
@given(int_matrices())
def test_smith_reconstruction(M):
    U, D, V = smith_normal_form(M)
    Mi = IntegerMatrix.from_rows(M.to_rows(), M.cols)
    assert U @ Mi @ V == D
    assert abs(sympy.Matrix(U.to_rows()).det()) == 1
    assert abs(sympy.Matrix(V.to_rows()).det()) == 1
    diag = [D[i, i] for i in range(min(D.rows, D.cols))]
    assert all(D[i, j] == 0 for i in range(D.rows) for j in range(D.cols) if i != j)
    assert all(x >= 0 for x in diag)
    for a, b in zip(diag, diag[1:]):
        assert (b == 0) or (a != 0 and b % a == 0)


@settings(max_examples=60, deadline=None)
@given(int_matrices())
def test_smith_invariants_match_sympy(M):
    from sympy.matrices.normalforms import smith_normal_form as sympy_snf
    S = sympy_snf(sympy.Matrix(M.rows, M.cols, [int(x) for x in M.entries]), domain=sympy.ZZ)
    theirs = sorted(abs(int(S[i, i])) for i in range(min(S.shape)) if S[i, i] != 0)
    assert sorted(smith_invariants(M)) == theirs


@settings(max_examples=60, deadline=None)
@given(int_matrices(max_rows=3, max_cols=3))
def test_lattice_index_square(M):
    S = sympy.Matrix(M.to_rows())
    if M.rows != M.cols or S.det() == 0:
        return
    assert lattice_index(M, M) == 1
    assert lattice_index(M, RationalMatrix.identity(M.rows)) == abs(int(S.det()))


@settings(max_examples=40, deadline=None)
@given(int_matrices(max_rows=4, max_cols=4))
def test_saturation_contains_lattice(M):
    if rank(M) == 0:
        return
    sat = saturation_basis(M)
    assert sat.cols == rank(M)
    # every original column is an integer combination of the saturated basis
    for j in range(M.cols):
        x = solve(sat, M.col(j))
        assert x is not None and all(c.denominator == 1 for c in x)
