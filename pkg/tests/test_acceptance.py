"""Acceptance suite: one block of tests per criterion.

All checks are exact.  A summary line per criterion is printed at the end of
the pytest run (see conftest.py).
"""

import time
from fractions import Fraction
from math import comb
from pathlib import Path

import pytest

from matroiddet.discriminant import (DEFECTIVE_PROBE, banana_multiplicities,
                                     degree_el, degree_lk, gale_dual,
                                     hk_samples, is_dual_defective,
                                     jacobian_jl, recursion_residuals,
                                     reduce_coloops)
from matroiddet.exact import RationalMatrix, rank, row_basis
from matroiddet.io import load_fixture
from matroiddet.matroid import Matroid, uniform_matrix
from matroiddet.newton import (SimplexSum, is_dilated_simplex,
                               is_generalized_permutohedron, vertices)
from matroiddet.poly import SparsePoly, circuit_polynomial
from matroiddet.tropical import uniform_discriminant_degree
from matroiddet.weyl import (Parameters, WeylOp, annihilation_check,
                             banana_matrix, build_system, lauricella_series,
                             recurrence_solve)
from matroiddet.errors import AnnihilationFailure

criterion = pytest.mark.criterion
PAPER_U = (Fraction(1, 2), Fraction(1, 3), Fraction(1, 5), Fraction(1, 7))


# 1 ---------------------------------------------------------------------------

@criterion(1, "Cayley cubic and Steiner quartic on 100 Horn-Kapranov samples")
def test_c1_cayley_cubic(banana):
    (c,) = banana.circuits()
    cubic = SparsePoly(4, {(1, 1, 1, 0): 1, (0, 1, 1, 1): 1, (1, 0, 1, 1): 1, (1, 1, 0, 1): 1})
    assert circuit_polynomial(c, 4) == cubic


@criterion(1, "Cayley cubic and Steiner quartic on 100 Horn-Kapranov samples")
def test_c1_steiner_quartic_vanishes(banana_A):
    start = time.perf_counter()
    quartic = SparsePoly.from_json(load_fixture("steiner_quartic"))
    assert quartic.coefficient((1, 1, 1, 1)) == -40
    samples = hk_samples(banana_A, 100, seed=0)
    assert len(samples) == 100
    assert all(quartic.evaluate(h.z) == 0 for h in samples)
    assert time.perf_counter() - start < 1.0


# 2 ---------------------------------------------------------------------------

@criterion(2, "degree formulas for the banana and braid matroids")
def test_c2_banana_degrees(banana):
    assert degree_el(banana) == 36
    assert degree_lk(banana, -2) == 12
    assert banana.mobius_invariant() == 3


@criterion(2, "degree formulas for the banana and braid matroids")
def test_c2_braid_degrees(braid):
    assert degree_el(braid) == 72
    assert braid.mobius_invariant() == 6


# 3 ---------------------------------------------------------------------------

BRAID_FLATS = {
    (), (0,), (1,), (2,), (3,), (4,), (5,),
    (0, 1, 3), (0, 2, 4), (1, 2, 5), (3, 4, 5), (0, 5), (1, 4), (2, 3),
    (0, 1, 2, 3, 4, 5),
}


@criterion(3, "braid flats and the conic of the flat {0,1,3}")
def test_c3_braid_flats(braid):
    flats = {tuple(sorted(F)) for F in braid.flats()}
    assert flats == BRAID_FLATS
    assert len(braid.flats()) == 15


@criterion(3, "braid flats and the conic of the flat {0,1,3}")
def test_c3_braid_conic_vanishes_on_samples(braid_A):
    # the conic exactly as quoted; see the decisions ledger for why this fails
    conic = SparsePoly.from_json(load_fixture("delta_013"))
    A013 = braid_A.select_columns([0, 1, 3])
    values = [conic.evaluate(h.z) for h in hk_samples(A013, 20, seed=0)]
    assert values == [0] * 20


# 4 ---------------------------------------------------------------------------

@criterion(4, "2^d beta matches the discriminant degrees; beta of uniform matroids")
def test_c4_beta_cross_checks(banana, braid):
    assert 2 ** banana.d * banana.beta_invariant() == 4
    assert 2 ** braid.d * braid.beta_invariant() == 8


@criterion(4, "2^d beta matches the discriminant degrees; beta of uniform matroids")
def test_c4_beta_uniform():
    for n in range(2, 8):
        for d in range(1, n):
            M = Matroid(uniform_matrix(d + 1, n + 1))
            assert M.is_uniform()
            assert M.beta_invariant() == comb(n - 1, d), (n, d)


# 5 ---------------------------------------------------------------------------

@criterion(5, "tropical pair enumeration gives 2^d C(n-1,d)")
def test_c5_uniform_discriminant_degree():
    for n in range(2, 9):
        for d in range(1, n):
            assert uniform_discriminant_degree(n, d, check=False) == 2 ** d * comb(n - 1, d), (n, d)


# 6 ---------------------------------------------------------------------------

@criterion(6, "banana is a certified hypersurface; the defective probe is not")
def test_c6_banana_hypersurface(banana_A):
    v = is_dual_defective(banana_A, samples=32, seed=0)
    assert v.kind == "Hypersurface" and v.certified
    # recheck the witness independently
    R = row_basis(reduce_coloops(banana_A)[0])
    B = gale_dual(R)
    assert rank(jacobian_jl(R, B, v.witness_t, v.witness_u)) == banana_A.cols - 1


@criterion(6, "banana is a certified hypersurface; the defective probe is not")
def test_c6_defective_probe():
    v = is_dual_defective(DEFECTIVE_PROBE, samples=32, seed=0)
    assert v.kind == "ProbablyDefective"
    assert v.samples_tried == 32


# 7 ---------------------------------------------------------------------------

def _banana_expected_ops(n, params):
    """H, P_1..P_n and Q written out directly from their closed forms."""
    z = lambda i: tuple(int(j == i) for j in range(n + 1))
    zero = (0,) * (n + 1)
    H = WeylOp(n, {**{(z(j), z(j)): 1 for j in range(n + 1)}, (zero, zero): params.s})
    P = []
    u = params.u
    for i in range(1, n + 1):
        two = lambda j: tuple(2 * int(k == j) for k in range(n + 1))
        P.append(WeylOp(n, {(z(0), two(0)): -1, (z(i), two(i)): 1,
                            (zero, z(0)): u[0], (zero, z(i)): -u[i]}))
    Q = WeylOp(n, {(zero, tuple(int(k != i) for k in range(n + 1))): 1 for i in range(n + 1)})
    return [H] + P + [Q]


@criterion(7, "banana operators annihilate the Lauricella series; corruption is detected")
def test_c7_build_system_matches_closed_form(banana_A):
    params = Parameters.from_u(PAPER_U, 2)
    assert params.s == -sum(PAPER_U) - 3
    system = build_system(Matroid(banana_A), params)
    assert system.all() == _banana_expected_ops(3, params)


@criterion(7, "banana operators annihilate the Lauricella series; corruption is detected")
@pytest.mark.parametrize("n,N", [(3, 7), (2, 8)])
def test_c7_annihilation(n, N):
    params = Parameters.from_u(PAPER_U[:n + 1], n - 1)
    ops = build_system(Matroid(banana_matrix(n)), params).all()
    assert len(ops) == n + 2
    report = annihilation_check(ops, lauricella_series(n, params, N), N)
    target = 4 if n == 3 else 6
    assert report.max_verified_order >= target


@criterion(7, "banana operators annihilate the Lauricella series; corruption is detected")
@pytest.mark.parametrize("n,N", [(3, 7), (2, 8)])
def test_c7_every_single_corruption_detected(n, N):
    params = Parameters.from_u(PAPER_U[:n + 1], n - 1)
    ops = build_system(Matroid(banana_matrix(n)), params).all()
    g = lauricella_series(n, params, N)
    for shift, c in g.terms.items():
        bad = g.with_coefficient(shift, c + 1)
        with pytest.raises(AnnihilationFailure):
            annihilation_check(ops, bad, N)


# 8 ---------------------------------------------------------------------------

@criterion(8, "recurrence oracle equals the Pochhammer closed form through order 4")
@pytest.mark.parametrize("n", [2, 3])
def test_c8_recurrence_equals_closed_form(n):
    params = Parameters.from_u(PAPER_U[:n + 1], n - 1)
    system = build_system(Matroid(banana_matrix(n)), params)
    closed = lauricella_series(n, params, 4)
    solved = recurrence_solve(system.P, closed.base, 4)
    assert solved.terms == closed.terms


# 9 ---------------------------------------------------------------------------

@criterion(9, "Newton polytopes of the banana and braid determinants")
def test_c9_banana_newton():
    S = SimplexSum.of(3, {**{(i,): 8 for i in range(4)}, (0, 1, 2, 3): 4})
    P = vertices(S)
    assert len(P.vertices) == 4
    assert all(sum(v) == 36 for v in P.vertices)
    # the factor (z0 z1 z2 z3)^8 translates the quartic's simplex 4 * conv(e_i)
    assert set(P.vertices) == {tuple(8 + 4 * (i == j) for j in range(4)) for i in range(4)}
    assert is_dilated_simplex(P, allow_translation=True)
    assert is_generalized_permutohedron(P)


@criterion(9, "Newton polytopes of the banana and braid determinants")
def test_c9_braid_newton():
    summands = {**{(i,): 8 for i in range(6)},
                **{F: 2 * 2 for F in [(0, 1, 3), (0, 2, 4), (1, 2, 5), (3, 4, 5)]},
                tuple(range(6)): 8}
    P = vertices(SimplexSum.of(5, summands))
    assert all(sum(v) == 72 for v in P.vertices)
    assert is_generalized_permutohedron(P)


# 10 --------------------------------------------------------------------------

@criterion(10, "banana multiplicities solve the Euler characteristic recursion")
def test_c10_banana_multiplicities():
    for n in range(2, 11):
        m = banana_multiplicities(n)
        assert recursion_residuals(n, m) == [0] * (n - 1)
        assert m == [2 ** (n - p) - 1 for p in range(n)]


# 11 --------------------------------------------------------------------------

@criterion(11, "out-of-scope computations are documented")
def test_c11_exclusions_documented():
    readme = (Path(__file__).resolve().parents[1] / "README.md").read_text().lower()
    assert "out of scope" in readme
    for phrase in ("2,129,137", "holonomic rank", "euler stratification"):
        assert phrase in readme, phrase
