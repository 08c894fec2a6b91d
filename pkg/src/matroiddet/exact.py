"""Exact rational and integer linear algebra.

Everything here works over :class:`fractions.Fraction` and Python ints; no
floating point is ever involved.  Matrices are small and dense.
"""

from __future__ import annotations

import re
from fractions import Fraction
from math import gcd, lcm
from typing import Iterable, Sequence

from .errors import LatticeSpanMismatch

Rational = Fraction

_RATIONAL_RE = re.compile(r"^\s*([+-]?\d+)\s*(?:/\s*(\d+)\s*)?$")


def parse_rational(text) -> Fraction:
    """Parse ``"p/q"`` or ``"p"``.  Decimal literals are rejected."""
    if isinstance(text, Fraction):
        return text
    if isinstance(text, bool):
        raise ValueError(f"not a rational literal: {text!r}")
    if isinstance(text, int):
        return Fraction(text)
    m = _RATIONAL_RE.match(str(text))
    if not m:
        raise ValueError(f"not a rational literal: {text!r}")
    num = int(m.group(1))
    den = int(m.group(2)) if m.group(2) is not None else 1
    if den == 0:
        raise ValueError(f"zero denominator in {text!r}")
    return Fraction(num, den)


def format_rational(x: Fraction) -> str:
    x = Fraction(x)
    return str(x.numerator) if x.denominator == 1 else f"{x.numerator}/{x.denominator}"


class RationalMatrix:
    """Immutable dense matrix with :class:`Fraction` entries (row-major)."""

    __slots__ = ("rows", "cols", "entries")
    _coerce = staticmethod(Fraction)

    def __init__(self, rows: int, cols: int, entries: Iterable):
        entries = tuple(self._coerce(e) for e in entries)
        if rows < 0 or cols < 0 or len(entries) != rows * cols:
            raise ValueError(f"shape {rows}x{cols} does not match {len(entries)} entries")
        object.__setattr__(self, "rows", rows)
        object.__setattr__(self, "cols", cols)
        object.__setattr__(self, "entries", entries)

    def __setattr__(self, name, value):
        raise AttributeError("matrices are immutable")

    @classmethod
    def from_rows(cls, rows: Sequence[Sequence], cols: int | None = None):
        rows = [list(r) for r in rows]
        if cols is None:
            cols = len(rows[0]) if rows else 0
        if any(len(r) != cols for r in rows):
            raise ValueError("ragged rows")
        return cls(len(rows), cols, [e for r in rows for e in r])

    @classmethod
    def from_columns(cls, columns: Sequence[Sequence], rows: int | None = None):
        columns = [list(c) for c in columns]
        if rows is None:
            rows = len(columns[0]) if columns else 0
        if any(len(c) != rows for c in columns):
            raise ValueError("ragged columns")
        return cls(rows, len(columns), [columns[j][i] for i in range(rows) for j in range(len(columns))])

    @classmethod
    def zeros(cls, rows: int, cols: int):
        return cls(rows, cols, [0] * (rows * cols))

    @classmethod
    def identity(cls, n: int):
        return cls(n, n, [int(i == j) for i in range(n) for j in range(n)])

    @property
    def shape(self):
        return (self.rows, self.cols)

    def __getitem__(self, ij):
        i, j = ij
        return self.entries[i * self.cols + j]

    def row(self, i: int) -> tuple:
        return self.entries[i * self.cols:(i + 1) * self.cols]

    def col(self, j: int) -> tuple:
        return tuple(self.entries[i * self.cols + j] for i in range(self.rows))

    def to_rows(self) -> list[list]:
        return [list(self.row(i)) for i in range(self.rows)]

    def columns(self) -> list[tuple]:
        return [self.col(j) for j in range(self.cols)]

    def transpose(self):
        return type(self).from_rows([self.col(j) for j in range(self.cols)], self.rows)

    T = property(transpose)

    def select_columns(self, idx: Iterable[int]):
        idx = list(idx)
        return type(self).from_rows([[self[i, j] for j in idx] for i in range(self.rows)], len(idx))

    def select_rows(self, idx: Iterable[int]):
        idx = list(idx)
        return type(self).from_rows([self.row(i) for i in idx], self.cols)

    def hstack(self, other: "RationalMatrix"):
        if self.rows != other.rows:
            raise ValueError("row count mismatch")
        return RationalMatrix.from_rows(
            [list(self.row(i)) + list(other.row(i)) for i in range(self.rows)],
            self.cols + other.cols,
        )

    def __matmul__(self, other):
        if isinstance(other, RationalMatrix):
            if self.cols != other.rows:
                raise ValueError(f"cannot multiply {self.shape} by {other.shape}")
            ocols = other.columns()
            out = [sum((a * b for a, b in zip(self.row(i), c)), Fraction(0))
                   for i in range(self.rows) for c in ocols]
            cls = IntegerMatrix if isinstance(self, IntegerMatrix) and isinstance(other, IntegerMatrix) else RationalMatrix
            return cls(self.rows, other.cols, out)
        vec = list(other)
        if len(vec) != self.cols:
            raise ValueError("vector length mismatch")
        return tuple(sum((a * Fraction(b) for a, b in zip(self.row(i), vec)), Fraction(0))
                     for i in range(self.rows))

    def is_zero(self) -> bool:
        return all(e == 0 for e in self.entries)

    def __eq__(self, other):
        if not isinstance(other, RationalMatrix):
            return NotImplemented
        return self.shape == other.shape and self.entries == other.entries

    def __hash__(self):
        return hash((self.rows, self.cols, self.entries))

    def __repr__(self):
        body = "; ".join(" ".join(format_rational(e) for e in self.row(i)) for i in range(self.rows))
        return f"{type(self).__name__}({self.rows}x{self.cols}: [{body}])"


def _as_int(x) -> int:
    f = Fraction(x)
    if f.denominator != 1:
        raise ValueError(f"non-integer entry {x}")
    return f.numerator


class IntegerMatrix(RationalMatrix):
    """A :class:`RationalMatrix` whose entries are Python ints."""

    __slots__ = ()
    _coerce = staticmethod(_as_int)


# -- elimination ----------------------------------------------------------

def _integer_rows(M: RationalMatrix) -> list[list[int]]:
    """Rows of ``M`` scaled by their denominators' lcm (row space unchanged)."""
    out = []
    for i in range(M.rows):
        row = M.row(i)
        m = lcm(*(e.denominator for e in row)) if row else 1
        out.append([int(e * m) for e in row])
    return out


def _bareiss_rank(rows: list[list[int]]) -> int:
    a = [r[:] for r in rows]
    nrows = len(a)
    ncols = len(a[0]) if a else 0
    r = 0
    prev = 1
    for c in range(ncols):
        if r == nrows:
            break
        piv = next((i for i in range(r, nrows) if a[i][c] != 0), None)
        if piv is None:
            continue
        a[r], a[piv] = a[piv], a[r]
        p = a[r][c]
        for i in range(r + 1, nrows):
            f = a[i][c]
            row_i = a[i]
            row_r = a[r]
            for j in range(c + 1, ncols):
                row_i[j] = (p * row_i[j] - f * row_r[j]) // prev
            row_i[c] = 0
        prev = p
        r += 1
    return r


def rank(M: RationalMatrix) -> int:
    """Rank over Q by fraction-free (Bareiss) elimination."""
    if M.rows == 0 or M.cols == 0:
        return 0
    return _bareiss_rank(_integer_rows(M))


def int_rank(rows: list[list[int]]) -> int:
    """Rank of an integer matrix given as a list of rows."""
    if not rows or not rows[0]:
        return 0
    return _bareiss_rank(rows)


def rref(M: RationalMatrix) -> tuple[list[list[Fraction]], list[int]]:
    """Reduced row echelon form; returns (nonzero rows, pivot columns)."""
    a = M.to_rows()
    pivots = []
    r = 0
    for c in range(M.cols):
        piv = next((i for i in range(r, M.rows) if a[i][c] != 0), None)
        if piv is None:
            continue
        a[r], a[piv] = a[piv], a[r]
        p = a[r][c]
        a[r] = [x / p for x in a[r]]
        for i in range(M.rows):
            if i != r and a[i][c] != 0:
                f = a[i][c]
                a[i] = [x - f * y for x, y in zip(a[i], a[r])]
        pivots.append(c)
        r += 1
        if r == M.rows:
            break
    return a[:r], pivots


def kernel_basis(M: RationalMatrix) -> RationalMatrix:
    """Canonical basis of the right kernel, one column per free variable.

    Each basis vector has a 1 in its free coordinate and 0 in the other free
    coordinates, so the result depends only on the row space of ``M``.
    """
    R, pivots = rref(M)
    free = [j for j in range(M.cols) if j not in pivots]
    cols = []
    for f in free:
        v = [Fraction(0)] * M.cols
        v[f] = Fraction(1)
        for row, p in zip(R, pivots):
            v[p] = -row[f]
        cols.append(v)
    return RationalMatrix.from_columns(cols, M.cols)


def row_basis(M: RationalMatrix) -> RationalMatrix:
    """The nonzero rows of the RREF of ``M`` (a canonical row-space basis)."""
    R, _ = rref(M)
    return RationalMatrix.from_rows(R, M.cols)


def solve(M: RationalMatrix, b: Sequence) -> tuple[Fraction, ...] | None:
    """A particular solution of ``M x = b`` (free variables set to 0), or None."""
    aug = RationalMatrix.from_rows([list(M.row(i)) + [b[i]] for i in range(M.rows)], M.cols + 1)
    R, pivots = rref(aug)
    if pivots and pivots[-1] == M.cols:
        return None
    x = [Fraction(0)] * M.cols
    for row, p in zip(R, pivots):
        x[p] = row[-1]
    return tuple(x)


# -- integer normal forms -------------------------------------------------

def smith_normal_form(M: RationalMatrix) -> tuple[IntegerMatrix, IntegerMatrix, IntegerMatrix]:
    """Return ``(U, D, V)`` with ``U @ M @ V == D``.

    ``U`` and ``V`` are unimodular, ``D`` is diagonal with nonnegative entries
    and each diagonal entry divides the next.
    """
    m, n = M.rows, M.cols
    A = [[_as_int(M[i, j]) for j in range(n)] for i in range(m)]
    U = [[int(i == j) for j in range(m)] for i in range(m)]
    V = [[int(i == j) for j in range(n)] for i in range(n)]

    def swap_rows(i, k):
        A[i], A[k] = A[k], A[i]
        U[i], U[k] = U[k], U[i]

    def swap_cols(j, k):
        for row in A:
            row[j], row[k] = row[k], row[j]
        for row in V:
            row[j], row[k] = row[k], row[j]

    def add_row(dst, src, f):  # row dst += f * row src
        A[dst] = [x + f * y for x, y in zip(A[dst], A[src])]
        U[dst] = [x + f * y for x, y in zip(U[dst], U[src])]

    def add_col(dst, src, f):  # col dst += f * col src
        for row in A:
            row[dst] += f * row[src]
        for row in V:
            row[dst] += f * row[src]

    for t in range(min(m, n)):
        while True:
            nz = [(abs(A[i][j]), i, j) for i in range(t, m) for j in range(t, n) if A[i][j]]
            if not nz:
                break
            _, pi, pj = min(nz)
            swap_rows(t, pi)
            swap_cols(t, pj)
            p = A[t][t]
            dirty = False
            for i in range(t + 1, m):
                if A[i][t]:
                    add_row(i, t, -(A[i][t] // p))
                    dirty = dirty or A[i][t] != 0
            for j in range(t + 1, n):
                if A[t][j]:
                    add_col(j, t, -(A[t][j] // p))
                    dirty = dirty or A[t][j] != 0
            if dirty:
                continue
            bad = next((i for i in range(t + 1, m) for j in range(t + 1, n) if A[i][j] % p), None)
            if bad is None:
                break
            add_row(t, bad, 1)
        if A[t][t] < 0:
            A[t] = [-x for x in A[t]]
            U[t] = [-x for x in U[t]]
    return (IntegerMatrix.from_rows(U, m), IntegerMatrix.from_rows(A, n),
            IntegerMatrix.from_rows(V, n))


def smith_invariants(M: RationalMatrix) -> list[int]:
    """The nonzero diagonal entries of the Smith normal form."""
    _, D, _ = smith_normal_form(M)
    return [D[i, i] for i in range(min(D.rows, D.cols)) if D[i, i] != 0]


def integer_inverse(U: RationalMatrix) -> IntegerMatrix:
    """Inverse of a unimodular integer matrix."""
    n = U.rows
    aug = RationalMatrix.from_rows([list(U.row(i)) + [int(i == j) for j in range(n)] for i in range(n)], 2 * n)
    R, pivots = rref(aug)
    if pivots != list(range(n)):
        raise ValueError("matrix is singular")
    return IntegerMatrix.from_rows([r[n:] for r in R], n)


def saturation_basis(G: RationalMatrix) -> IntegerMatrix:
    """Columns form a Z-basis of ``span_Q(columns of G) ∩ Z^m``."""
    U, D, _ = smith_normal_form(G)
    r = sum(1 for i in range(min(D.rows, D.cols)) if D[i, i] != 0)
    Uinv = integer_inverse(U)
    return IntegerMatrix.from_rows([list(Uinv.row(i))[:r] for i in range(Uinv.rows)], r)


def lattice_basis(G: RationalMatrix) -> IntegerMatrix:
    """Columns form a Z-basis of the lattice generated by the columns of ``G``."""
    _, D, V = smith_normal_form(G)
    r = sum(1 for i in range(min(D.rows, D.cols)) if D[i, i] != 0)
    GV = IntegerMatrix.from_rows(G.to_rows(), G.cols) @ V
    return GV.select_columns(range(r))


def lattice_index(sub: RationalMatrix, ambient: RationalMatrix) -> int:
    """Index of the lattice spanned by ``sub``'s columns inside ``ambient``'s.

    Raises :class:`LatticeSpanMismatch` when the rational spans differ, and
    ``ValueError`` when ``sub`` is not contained in the ambient lattice.
    """
    if sub.rows != ambient.rows:
        raise ValueError("generators live in different ambient spaces")
    r_sub, r_amb = rank(sub), rank(ambient)
    if r_sub != r_amb or rank(sub.hstack(ambient)) != r_amb:
        raise LatticeSpanMismatch(f"spans differ (ranks {r_sub}, {r_amb})")
    if r_amb == 0:
        return 1
    basis = lattice_basis(ambient)
    # coordinates of each sub generator in the ambient basis
    coords = []
    for j in range(sub.cols):
        x = solve(basis, sub.col(j))
        if any(c.denominator != 1 for c in x):
            raise ValueError("sub lattice is not contained in the ambient lattice")
        coords.append(x)
    C = IntegerMatrix.from_columns(coords, basis.cols)
    idx = 1
    for d in smith_invariants(C):
        idx *= d
    return idx


def gcd_list(values: Iterable[int]) -> int:
    g = 0
    for v in values:
        g = gcd(g, v)
    return g
