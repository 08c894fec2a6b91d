"""Minkowski sums of coordinate simplices (generalized permutohedra)."""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache
from itertools import permutations
from typing import Sequence

from .errors import GroundSetTooLarge, MissingData

MAX_COORDINATES = 9


@dataclass(frozen=True)
class SimplexSum:
    """``sum_F c_F * conv(e_i : i in F)`` in R^{n+1}."""
    n: int
    summands: tuple[tuple[frozenset, int], ...]

    def __post_init__(self):
        for F, c in self.summands:
            if not F or c <= 0:
                raise ValueError(f"bad summand {sorted(F)} with coefficient {c}")
            if max(F) > self.n or min(F) < 0:
                raise ValueError(f"flat {sorted(F)} outside 0..{self.n}")

    @classmethod
    def of(cls, n: int, summands) -> "SimplexSum":
        items = summands.items() if isinstance(summands, dict) else summands
        return cls(n, tuple((frozenset(F), int(c)) for F, c in items))

    @property
    def degree(self) -> int:
        return sum(c for _, c in self.summands)


@dataclass(frozen=True)
class LatticePolytope:
    n: int
    vertices: tuple[tuple[int, ...], ...]

    @property
    def degree(self) -> int | None:
        sums = {sum(v) for v in self.vertices}
        return sums.pop() if len(sums) == 1 else None

    def to_json(self) -> dict:
        return {"n": self.n, "degree": self.degree, "vertices": [list(v) for v in self.vertices]}


def build_newton_el(M, descriptor) -> SimplexSum:
    """Simplex summands ``m_F deg_F * Delta_F`` over connected flats with a nontrivial discriminant."""
    summands = []
    missing = []
    for row in descriptor.rows:
        if not row.connected or row.defective:
            continue
        if row.degree is None or row.multiplicity is None:
            missing.append(row.flat)
            continue
        c = row.degree * row.multiplicity
        if c:
            summands.append((row.flat, c))
    if missing:
        raise MissingData(missing)
    return SimplexSum(M.n, tuple(summands))


def _check_size(size: int):
    if size > MAX_COORDINATES:
        raise GroundSetTooLarge(f"{size} coordinates exceeds {MAX_COORDINATES}")


def vertices(S: SimplexSum) -> LatticePolytope:
    """Vertices as the maximizers of generic linear orders.

    For a total order of the coordinates each summand contributes
    ``c_F e_i`` for the largest ``i`` of ``F`` in that order.  Orders are
    explored from the top down: once the top k coordinates are fixed, the
    summands meeting them are settled, so the state is just the used set.
    """
    size = S.n + 1
    _check_size(size)
    masks = [(sum(1 << i for i in F), c) for F, c in S.summands]

    @lru_cache(maxsize=None)
    def partial(used: int) -> frozenset:
        # vectors contributed by summands meeting the top coordinates `used`
        # are fixed; return the possible contributions of the rest
        rest = [(m, c) for m, c in masks if not m & used]
        if not rest:
            return frozenset([(0,) * size])
        out = set()
        for i in range(size):
            if used >> i & 1:
                continue
            add = [0] * size
            add[i] = sum(c for m, c in rest if m >> i & 1)
            for tail in partial(used | 1 << i):
                out.add(tuple(a + b for a, b in zip(add, tail)))
        return frozenset(out)

    return LatticePolytope(S.n, tuple(sorted(partial(0))))


def vertices_by_orders(S: SimplexSum) -> LatticePolytope:
    """Same as :func:`vertices` by brute force over all coordinate orders."""
    size = S.n + 1
    _check_size(size)
    out = set()
    for order in permutations(range(size)):
        pos = {i: k for k, i in enumerate(order)}
        v = [0] * size
        for F, c in S.summands:
            v[max(F, key=pos.__getitem__)] += c
        out.add(tuple(v))
    return LatticePolytope(S.n, tuple(sorted(out)))


def support_function(S: SimplexSum, w: Sequence) -> Fraction:
    """``max <w, x>`` over the polytope, i.e. ``sum_F c_F max_{i in F} w_i``."""
    w = [Fraction(x) for x in w]
    return sum((c * max(w[i] for i in F) for F, c in S.summands), Fraction(0))


def _subset_values(P: LatticePolytope) -> list[int]:
    size = P.n + 1
    return [max(sum(v[i] for i in range(size) if mask >> i & 1) for v in P.vertices)
            for mask in range(1 << size)]


def is_generalized_permutohedron(P: LatticePolytope) -> bool:
    """Submodularity of ``z(S) = max_v sum_{i in S} v_i``, plus agreement of the
    vertex set with the vertices that ``z`` predicts for every coordinate order.
    """
    size = P.n + 1
    _check_size(size)
    if not P.vertices:
        return False
    z = _subset_values(P)
    for S in range(1 << size):
        for T in range(S + 1, 1 << size):
            if z[S] + z[T] < z[S | T] + z[S & T]:
                return False
    # submodularity alone allows polytopes whose normal fan is not coarser than
    # the braid fan; compare with the greedy vertex of every order
    @lru_cache(maxsize=None)
    def greedy(prefix: int) -> frozenset:
        if prefix == (1 << size) - 1:
            return frozenset([(0,) * size])
        out = set()
        for i in range(size):
            if prefix >> i & 1:
                continue
            step = z[prefix | 1 << i] - z[prefix]
            for tail in greedy(prefix | 1 << i):
                out.add(tail[:i] + (tail[i] + step,) + tail[i + 1:])
        return frozenset(out)

    return greedy(0) == set(P.vertices)


def is_dilated_simplex(P: LatticePolytope, allow_translation: bool = False) -> bool:
    """Vertices are exactly ``b + c e_i``, one per coordinate, for a common
    ``c > 0``; ``b`` must be 0 unless ``allow_translation``.
    """
    size = P.n + 1
    if len(P.vertices) != size:
        return False
    base = tuple(min(v[i] for v in P.vertices) for i in range(size))
    if any(base) and not allow_translation:
        return False
    cs = set()
    for v in P.vertices:
        nz = [a - b for a, b in zip(v, base) if a != b]
        if len(nz) != 1:
            return False
        cs.add(nz[0])
    return len(cs) == 1 and cs.pop() > 0
