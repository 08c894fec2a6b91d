import random
from fractions import Fraction
from itertools import product

import pytest
from hypothesis import given, settings, strategies as st

from matroiddet.discriminant import predicted_discriminant_degree
from matroiddet.errors import GroundSetTooLarge
from matroiddet.exact import RationalMatrix, rank, solve
from matroiddet.matroid import Matroid, uniform_matrix
from matroiddet.tropical import (Cone, bergman_flag_fan, dual_matroid, in_cone,
                                 indicator, minkowski_weight,
                                 nonnegative_solution, pin, sum_membership,
                                 uniform_bergman_cones,
                                 uniform_discriminant_degree, weight_l2)


def test_pin_and_indicator():
    assert pin([3, 5, 2]) == (1, 3, 0)
    assert indicator([0, 2], 3) == (0, -1, 0)
    assert indicator([0, 1], 3) == (1, 1, 0)
    assert indicator([2], 3) == (-1, -1, 0)


def test_flag_fan_counts(banana, braid):
    assert len(bergman_flag_fan(banana)) == 12
    assert len(bergman_flag_fan(braid)) == 18
    assert all(c.dimension == 2 for c, _ in bergman_flag_fan(braid).cones)


def test_dual_matroid(banana, braid):
    assert dual_matroid(banana).full_rank == 1
    D = dual_matroid(braid)
    assert D.full_rank == 3 and len(D.flats()) == len(braid.flats())


def test_uniform_cone_counts():
    assert len(uniform_bergman_cones(3, 2)) == 6
    assert len(uniform_bergman_cones(3, 1)) == 4
    with pytest.raises(ValueError):
        uniform_bergman_cones(2, 3)


def test_weight_l2(banana, braid, banana_A):
    assert weight_l2(banana) == 4 and weight_l2(braid) == 4
    assert weight_l2(Matroid(RationalMatrix.from_rows([[1, 1]]))) == 1


def test_minkowski_weight_examples():
    assert uniform_discriminant_degree(3, 2) == 4
    assert uniform_discriminant_degree(4, 2) == 12
    assert uniform_discriminant_degree(3, 1) == 4
    with pytest.raises(ValueError):
        uniform_discriminant_degree(3, 3)


def test_uncovered_cone_has_weight_zero():
    sigma = Cone.of_sets([[0, 1], [2]], 4)
    fanL = uniform_bergman_cones(3, 1, weight=2)
    fanP = uniform_bergman_cones(3, 1)
    assert minkowski_weight(sigma, fanL, fanP) == 0


def test_uniform_degree_matches_beta():
    for n, d in [(3, 1), (4, 1), (4, 3), (5, 2)]:
        M = Matroid(uniform_matrix(d + 1, n + 1))
        assert uniform_discriminant_degree(n, d) == predicted_discriminant_degree(M)[0]


def test_flag_cones_lie_in_coarse_cones():
    for n, d in [(3, 2), (4, 2)]:
        M = Matroid(uniform_matrix(d + 1, n + 1))
        coarse = uniform_bergman_cones(n, d)
        for cone, _ in bergman_flag_fan(M).cones:
            assert any(all(in_cone(g[:-1], [h[:-1] for h in c.generators]) for g in cone.generators)
                       for c, _ in coarse.cones)


def _min_twice(w):
    m = min(w)
    return sum(x == m for x in w) >= 2


def test_sum_membership_banana(banana):
    # the orthogonal complement is a point, so the sum is the tropical plane itself
    assert sum_membership([1, 2, 0, 0], banana)
    assert not sum_membership([1, 2, 3, 0], banana)
    for w in product(range(3), repeat=4):
        assert sum_membership(list(w), banana) == _min_twice(w), w


def test_sum_membership_edge_cases(braid):
    assert sum_membership([0] * 6, braid)
    with_coloop = Matroid(RationalMatrix.from_rows([[1, 1, 0], [0, 0, 1]]))
    assert not sum_membership([0, 0, 0], with_coloop)
    with pytest.raises(ValueError):
        sum_membership([0, 0], braid)
    with pytest.raises(GroundSetTooLarge):
        sum_membership([0] * 11, Matroid(uniform_matrix(2, 11)))


vec = st.lists(st.integers(-3, 3), min_size=3, max_size=3)


@settings(max_examples=80, deadline=None)
@given(st.lists(vec, min_size=1, max_size=4), vec)
def test_lp_matches_direct_solution(gens, target):
    sol = nonnegative_solution(gens, target)
    if sol is not None:
        assert all(c >= 0 for c in sol)
        assert [sum(c * g[i] for c, g in zip(sol, gens)) for i in range(3)] == [Fraction(x) for x in target]
    G = RationalMatrix.from_columns(gens, 3)
    if rank(G) == len(gens):
        # independent generators: coordinates are unique
        x = solve(G, target)
        assert (sol is not None) == (x is not None and all(c >= 0 for c in x))


@settings(max_examples=60, deadline=None)
@given(st.lists(vec, min_size=1, max_size=5), st.lists(st.integers(0, 4), min_size=5, max_size=5))
def test_lp_finds_positive_combinations(gens, coeffs):
    target = [sum(c * g[i] for c, g in zip(coeffs, gens)) for i in range(3)]
    assert nonnegative_solution(gens, target) is not None
