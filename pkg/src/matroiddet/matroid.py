"""Matroids realized by rational matrices.

The ground set is ``{0, ..., n}`` (the columns of the realizing matrix) and
subsets are passed around as frozensets; internally the rank oracle keys on
bitmasks.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from itertools import combinations
from math import lcm
from typing import Iterable

from .errors import GroundSetTooLarge, LoopError
from .exact import RationalMatrix, int_rank, kernel_basis, rank
from .poly import SparsePoly

MAX_GROUND_SET = 24


def _mask(S: Iterable[int]) -> int:
    m = 0
    for i in S:
        m |= 1 << i
    return m


def _members(mask: int) -> frozenset:
    out = []
    i = 0
    while mask:
        if mask & 1:
            out.append(i)
        mask >>= 1
        i += 1
    return frozenset(out)


@dataclass(frozen=True)
class Circuit:
    """A minimal dependent set with its dependency vector.

    ``coefficients[k]`` belongs to the k-th smallest element of ``support``;
    the first one is normalized to 1.
    """
    support: tuple[int, ...]
    coefficients: tuple[Fraction, ...]

    def vector(self, size: int) -> tuple[Fraction, ...]:
        v = [Fraction(0)] * size
        for i, c in zip(self.support, self.coefficients):
            v[i] = c
        return tuple(v)


@dataclass(frozen=True)
class FlatLattice:
    flats: tuple[frozenset, ...]
    ranks: tuple[int, ...]
    covers: tuple[tuple[int, int], ...]  # (lower index, upper index)

    def __len__(self):
        return len(self.flats)

    def __iter__(self):
        return iter(self.flats)

    def of_rank(self, r: int) -> list[frozenset]:
        return [F for F, k in zip(self.flats, self.ranks) if k == r]

    def rank_of(self, F) -> int:
        return self.ranks[self.flats.index(frozenset(F))]


class Matroid:
    """Matroid of the columns of a rational matrix ``A``.

    The rank cache is a plain dict keyed by bitmask; entries are written at
    most once with a value that only depends on the key, so sharing one
    instance between threads is harmless.
    """

    def __init__(self, A: RationalMatrix):
        if A.cols == 0:
            raise ValueError("matrix has no columns")
        if A.cols > MAX_GROUND_SET:
            raise GroundSetTooLarge(f"{A.cols} elements exceeds {MAX_GROUND_SET}")
        zero = [j for j in range(A.cols) if all(x == 0 for x in A.col(j))]
        if zero:
            raise LoopError(zero)
        self.A = A
        self.size = A.cols
        self.n = A.cols - 1
        # columns scaled to integers; column scaling does not change the matroid
        self._cols = []
        for j in range(A.cols):
            col = A.col(j)
            m = lcm(*(e.denominator for e in col))
            self._cols.append([int(e * m) for e in col])
        self._rank_cache: dict[int, int] = {0: 0}
        self.full_rank = self.rank(range(self.size))
        self.d = self.full_rank - 1
        self._circuits = None
        self._flats = None

    @classmethod
    def from_matrix(cls, A) -> "Matroid":
        if not isinstance(A, RationalMatrix):
            A = RationalMatrix.from_rows(A)
        return cls(A)

    @property
    def ground_set(self) -> frozenset:
        return frozenset(range(self.size))

    def __repr__(self):
        return f"Matroid(rank={self.full_rank}, elements={self.size})"

    # -- rank oracle ------------------------------------------------------

    def rank_mask(self, mask: int) -> int:
        r = self._rank_cache.get(mask)
        if r is None:
            idx = _members(mask)
            cols = [self._cols[j] for j in sorted(idx)]
            # rank of the column set = rank of the matrix whose rows are those columns
            r = int_rank(cols)
            self._rank_cache[mask] = r
        return r

    def rank(self, S: Iterable[int]) -> int:
        return self.rank_mask(_mask(S))

    def is_independent(self, S) -> bool:
        S = list(S)
        return self.rank(S) == len(S)

    def closure(self, S: Iterable[int]) -> frozenset:
        m = _mask(S)
        r = self.rank_mask(m)
        return frozenset(i for i in range(self.size) if m >> i & 1 or self.rank_mask(m | 1 << i) == r)

    # -- flats ------------------------------------------------------------

    def flats(self) -> FlatLattice:
        if self._flats is None:
            bottom = self.closure(())
            seen = {bottom}
            frontier = [bottom]
            while frontier:
                nxt = []
                for F in frontier:
                    for e in range(self.size):
                        if e not in F:
                            G = self.closure(F | {e})
                            if G not in seen:
                                seen.add(G)
                                nxt.append(G)
                frontier = nxt
            flats = sorted(seen, key=lambda F: (self.rank(F), tuple(sorted(F))))
            ranks = tuple(self.rank(F) for F in flats)
            covers = tuple(
                (i, j)
                for j, G in enumerate(flats)
                for i, F in enumerate(flats)
                if ranks[j] == ranks[i] + 1 and F < G
            )
            self._flats = FlatLattice(tuple(flats), ranks, covers)
        return self._flats

    def flats_by_scan(self) -> list[frozenset]:
        """All flats via a full subset scan (slow reference route)."""
        out = []
        for mask in range(1 << self.size):
            r = self.rank_mask(mask)
            if all(mask >> i & 1 or self.rank_mask(mask | 1 << i) > r for i in range(self.size)):
                out.append(_members(mask))
        return sorted(out, key=lambda F: (self.rank(F), tuple(sorted(F))))

    # -- circuits and connectivity ---------------------------------------

    def circuits(self) -> list[Circuit]:
        if self._circuits is None:
            out = []
            for k in range(1, min(self.full_rank + 1, self.size) + 1):
                for S in combinations(range(self.size), k):
                    if self.rank(S) != k - 1:
                        continue
                    if all(self.rank(S[:i] + S[i + 1:]) == k - 1 for i in range(k)):
                        out.append(self._circuit(S))
            self._circuits = out
        return list(self._circuits)

    def _circuit(self, S: tuple[int, ...]) -> Circuit:
        K = kernel_basis(self.A.select_columns(S))
        assert K.cols == 1
        v = K.col(0)
        lead = next(x for x in v if x != 0)
        return Circuit(tuple(S), tuple(x / lead for x in v))

    def circuits_by_scan(self) -> list[tuple[int, ...]]:
        """Circuit supports via a scan of all subsets (reference route)."""
        dep = [m for m in range(1, 1 << self.size) if self.rank_mask(m) < bin(m).count("1")]
        depset = set(dep)
        out = []
        for m in dep:
            if not any((m & ~(1 << i)) in depset for i in range(self.size) if m >> i & 1):
                out.append(tuple(sorted(_members(m))))
        return sorted(out, key=lambda S: (len(S), S))

    def components(self) -> list[frozenset]:
        parent = list(range(self.size))

        def find(x):
            while parent[x] != x:
                parent[x] = parent[parent[x]]
                x = parent[x]
            return x

        for c in self.circuits():
            root = find(c.support[0])
            for e in c.support[1:]:
                parent[find(e)] = root
        groups: dict[int, set] = {}
        for e in range(self.size):
            groups.setdefault(find(e), set()).add(e)
        return sorted((frozenset(g) for g in groups.values()), key=lambda g: min(g))

    def num_components(self) -> int:
        return len(self.components())

    def is_connected(self) -> bool:
        return self.num_components() == 1

    def coloops(self) -> frozenset:
        K = kernel_basis(self.A)
        return frozenset(i for i in range(self.size) if all(x == 0 for x in K.row(i)))

    def is_uniform(self) -> bool:
        r = self.full_rank
        return all(self.rank(S) == r for S in combinations(range(self.size), r))

    # -- invariants -------------------------------------------------------

    def _check_enumerable(self):
        if self.size > MAX_GROUND_SET:
            raise GroundSetTooLarge(f"{self.size} elements")

    def characteristic_polynomial(self) -> SparsePoly:
        """chi(q) = sum over subsets S of (-1)^|S| q^(r(E) - r(S))."""
        self._check_enumerable()
        coeffs = [0] * (self.full_rank + 1)
        for mask in range(1 << self.size):
            sign = -1 if bin(mask).count("1") % 2 else 1
            coeffs[self.full_rank - self.rank_mask(mask)] += sign
        return SparsePoly.univariate(coeffs)

    def mobius_invariant(self) -> int:
        chi = self.characteristic_polynomial()
        return abs(int(chi.coefficient((0,))))

    def beta_invariant(self) -> int:
        """Crapo's beta invariant, (-1)^r(E) sum_S (-1)^|S| r(S)."""
        self._check_enumerable()
        total = 0
        for mask in range(1 << self.size):
            r = self.rank_mask(mask)
            total += -r if bin(mask).count("1") % 2 else r
        return total if self.full_rank % 2 == 0 else -total

    # -- restrictions -----------------------------------------------------

    def restriction(self, F: Iterable[int]) -> "Matroid":
        F = sorted(F)
        if not F:
            raise ValueError("restriction to the empty set")
        return Matroid(self.A.select_columns(F))

    def connected_flats(self) -> list[frozenset]:
        return [F for F in self.flats() if F and self.restriction(F).is_connected()]


def free_matroid(k: int) -> Matroid:
    """The boolean matroid on ``k`` elements (identity realization)."""
    return Matroid(RationalMatrix.identity(k))


def direct_sum(A: RationalMatrix, B: RationalMatrix) -> RationalMatrix:
    rows = [list(A.row(i)) + [0] * B.cols for i in range(A.rows)]
    rows += [[0] * A.cols + list(B.row(i)) for i in range(B.rows)]
    return RationalMatrix.from_rows(rows, A.cols + B.cols)


def uniform_matrix(rank_: int, size: int) -> RationalMatrix:
    """A Vandermonde realization of the uniform matroid U_{rank, size}."""
    return RationalMatrix.from_rows([[x ** k for x in range(1, size + 1)] for k in range(rank_)], size)


def matrix_rank(A: RationalMatrix) -> int:
    return rank(A)
