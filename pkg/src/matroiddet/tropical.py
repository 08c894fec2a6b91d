"""Bergman fans and the stable Minkowski sum weight formula.

Vectors live in the quotient ``Z^{n+1} / Z(1, ..., 1)``; every vector is
stored as the representative whose last coordinate is 0.  Cones are spanned
by indicator vectors ``e_F`` (min convention).
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from itertools import combinations, product
from math import comb
from typing import Iterable, Sequence

from .errors import GroundSetTooLarge, LoopError, NonIntegralWeight
from .exact import (RationalMatrix, kernel_basis, lattice_index, rank,
                    saturation_basis, solve)
from .matroid import Matroid

MAX_SUM_MEMBERSHIP = 10


def pin(v: Sequence) -> tuple[int, ...]:
    """Representative of ``v`` modulo the all-ones vector with last entry 0."""
    last = v[-1]
    return tuple(x - last for x in v)


def indicator(F: Iterable[int], size: int) -> tuple[int, ...]:
    F = set(F)
    return pin([1 if i in F else 0 for i in range(size)])


@dataclass(frozen=True)
class Cone:
    generators: tuple[tuple[int, ...], ...]
    size: int  # n + 1, the length of every generator

    @classmethod
    def of_sets(cls, sets: Iterable[Iterable[int]], size: int) -> "Cone":
        return cls(tuple(indicator(F, size) for F in sets), size)

    def matrix(self) -> RationalMatrix:
        """Generators as columns, in the chart that drops the pinned coordinate."""
        return RationalMatrix.from_columns([g[:-1] for g in self.generators], self.size - 1)

    @property
    def dimension(self) -> int:
        if not self.generators:
            return 0
        return rank(self.matrix())

    def to_json(self) -> list:
        return [list(g) for g in self.generators]


@dataclass
class WeightedFan:
    dimension: int
    size: int
    cones: list[tuple[Cone, int]]

    def __len__(self):
        return len(self.cones)

    def to_json(self) -> dict:
        return {
            "dimension": self.dimension,
            "cones": [{"generators": c.to_json(), "weight": w} for c, w in self.cones],
        }


# -- exact linear programming --------------------------------------------

def nonnegative_solution(G: Sequence[Sequence], target: Sequence) -> tuple[Fraction, ...] | None:
    """Some ``c >= 0`` with ``sum_k c_k G[k] == target``, or None.

    Phase one of the simplex method on exact rationals, Bland's rule for
    entering and leaving variables (so it cannot cycle).
    """
    k = len(G)
    m = len(target)
    if k == 0:
        return () if all(x == 0 for x in target) else None
    # rows: sum_k G[k][i] c_k + a_i = b_i with b_i >= 0
    rows = []
    for i in range(m):
        r = [Fraction(G[j][i]) for j in range(k)]
        b = Fraction(target[i])
        if b < 0:
            r = [-x for x in r]
            b = -b
        rows.append(r + [Fraction(int(a == i)) for a in range(m)] + [b])
    basis = [k + i for i in range(m)]
    nvar = k + m
    # objective: minimize sum of artificials; reduced costs relative to basis
    cost = [Fraction(0)] * nvar + [Fraction(0)]
    for r in rows:
        for j in range(nvar + 1):
            cost[j] -= r[j]
    for j in range(k, nvar):
        cost[j] = Fraction(0)
    while True:
        enter = next((j for j in range(nvar) if cost[j] < 0), None)
        if enter is None:
            break
        best = None
        for i, r in enumerate(rows):
            if r[enter] > 0:
                ratio = r[-1] / r[enter]
                if best is None or ratio < best[0] or (ratio == best[0] and basis[i] < basis[best[1]]):
                    best = (ratio, i)
        if best is None:  # unbounded below cannot happen in phase one
            break
        _, p = best
        piv = rows[p][enter]
        rows[p] = [x / piv for x in rows[p]]
        for i in range(m):
            if i != p and rows[i][enter] != 0:
                f = rows[i][enter]
                rows[i] = [x - f * y for x, y in zip(rows[i], rows[p])]
        f = cost[enter]
        cost = [x - f * y for x, y in zip(cost, rows[p])]
        basis[p] = enter
    if cost[-1] != 0:
        return None
    x = [Fraction(0)] * nvar
    for i, bv in enumerate(basis):
        x[bv] = rows[i][-1]
    if any(x[j] != 0 for j in range(k, nvar)):
        return None
    return tuple(x[:k])


def in_cone(v: Sequence, generators: Sequence[Sequence]) -> bool:
    return nonnegative_solution(generators, v) is not None


# -- fans -------------------------------------------------------------------

def maximal_flag_chains(M: Matroid) -> list[tuple[frozenset, ...]]:
    """Chains F_1 < ... < F_d of proper nonempty flats with rank(F_i) = i."""
    lattice = M.flats()
    by_rank = {}
    for F, r in zip(lattice.flats, lattice.ranks):
        by_rank.setdefault(r, []).append(F)
    chains = [()]
    for r in range(1, M.d + 1):
        chains = [c + (F,) for c in chains for F in by_rank.get(r, []) if not c or c[-1] < F]
    return chains


def bergman_flag_fan(M: Matroid) -> WeightedFan:
    """Fine (flag) fan structure on the tropical linear space, all weights 1."""
    cones = [(Cone.of_sets(chain, M.size), 1) for chain in maximal_flag_chains(M)]
    return WeightedFan(M.d, M.size, cones)


def dual_matroid(M: Matroid) -> Matroid:
    """Matroid of the orthogonal complement, realized by the transposed Gale dual."""
    B = kernel_basis(M.A)
    if B.cols == 0:
        raise LoopError(list(range(M.size)))
    return Matroid(B.T)


def uniform_bergman_cones(n: int, d: int, weight: int = 1) -> WeightedFan:
    """Coarse structure of the uniform tropical linear space: pos(e_J), |J| = d."""
    if not 0 <= d <= n:
        raise ValueError("need 0 <= d <= n")
    size = n + 1
    cones = [(Cone.of_sets([[j] for j in J], size), weight) for J in combinations(range(size), d)]
    return WeightedFan(d, size, cones)


def weight_l2(M: Matroid) -> int:
    """Weight of each maximal cone of the tropicalized coordinatewise square."""
    return 2 ** (M.d - M.num_components() + 1)


def _in_span_filter(sigma: Cone):
    """Predicate: does a cone's span lie inside span(sigma)?"""
    S = sigma.matrix()
    perp = kernel_basis(S.T)  # columns orthogonal to span(sigma)
    normals = perp.columns()

    def inside(c: Cone) -> bool:
        return all(sum(Fraction(a) * b for a, b in zip(g[:-1], nv)) == 0
                   for g in c.generators for nv in normals)
    return inside


def _contains(big_generators: list, small: Cone) -> bool:
    G = RationalMatrix.from_columns([g[:-1] for g in big_generators], small.size - 1)
    if rank(G) == len(big_generators):
        # simplicial: the coordinates are unique
        for g in small.generators:
            x = solve(G, g[:-1])
            if x is None or any(c < 0 for c in x):
                return False
        return True
    return all(in_cone(g[:-1], [h[:-1] for h in big_generators]) for g in small.generators)


def minkowski_weight(sigma: Cone, fanL: WeightedFan, fanPerp: WeightedFan, delta: int = 1) -> int:
    """Weight of ``sigma`` in the stable sum of two weighted fans.

    Sums ``w_L w_perp [N_sigma : N_L + N_perp]`` over pairs of cones whose sum
    has the dimension of sigma and contains it, then divides by ``delta``.
    """
    dim = sigma.dimension
    inside = _in_span_filter(sigma)
    left = [(c, w) for c, w in fanL.cones if inside(c)]
    right = [(c, w) for c, w in fanPerp.cones if inside(c)]
    ambient = saturation_basis(sigma.matrix())
    total = 0
    for (cL, wL), (cP, wP) in product(left, right):
        gens = list(cL.generators) + list(cP.generators)
        if not gens:
            continue
        G = RationalMatrix.from_columns([g[:-1] for g in gens], sigma.size - 1)
        if rank(G) < dim:
            continue
        if not _contains(gens, sigma):
            continue
        parts = []
        for c in (cL, cP):
            if c.generators:
                parts.extend(saturation_basis(c.matrix()).columns())
        sub = RationalMatrix.from_columns(parts, sigma.size - 1)
        total += wL * wP * lattice_index(sub, ambient)
    if total % delta:
        raise NonIntegralWeight(f"{total} is not divisible by {delta}")
    return total // delta


def uniform_discriminant_degree(n: int, d: int, check: bool = True) -> int:
    """Degree of the discriminant of a generic d-plane in P^n, by pair enumeration.

    Uses the maximal cone pos(e_0, ..., e_{n-2}) of the tropical discriminant;
    the uniform fan of L carries weight 2^d and the dual fan weight 1.
    """
    if not 0 < d < n:
        raise ValueError("need 0 < d < n")
    size = n + 1
    sigma = Cone.of_sets([[i] for i in range(n - 1)], size)
    fanL = uniform_bergman_cones(n, d, weight=2 ** d)
    fanP = uniform_bergman_cones(n, n - d - 1, weight=1)
    value = minkowski_weight(sigma, fanL, fanP)
    if check:
        assert value == 2 ** d * comb(n - 1, d), f"computed {value} for ({n}, {d})"
    return value


def sum_membership(w: Sequence[int], M: Matroid) -> bool:
    """Is ``w`` a sum of a point of Trop(L) and a point of Trop(L^perp)?"""
    if M.size > MAX_SUM_MEMBERSHIP:
        raise GroundSetTooLarge(f"{M.size} elements exceeds {MAX_SUM_MEMBERSHIP}")
    if len(w) != M.size:
        raise ValueError("vector length mismatch")
    if M.coloops():
        # the orthogonal complement misses the torus, so its tropicalization is empty
        return False
    target = pin(list(w))[:-1]
    fanL = bergman_flag_fan(M)
    fanP = bergman_flag_fan(dual_matroid(M))
    for (cL, _), (cP, _) in product(fanL.cones, fanP.cones):
        gens = [g[:-1] for g in cL.generators + cP.generators]
        if in_cone(target, gens):
            return True
    return False
