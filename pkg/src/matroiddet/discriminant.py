"""Matroid discriminants: Horn-Kapranov sampling, dual defectivity, degree
formulas and the factorization of the principal determinant over flats.
"""

from __future__ import annotations

import random
from dataclasses import dataclass, field
from fractions import Fraction
from math import comb
from typing import Mapping, Sequence

from .errors import DisconnectedError, GaleMismatch, LoopError, OnArrangement
from .exact import RationalMatrix, kernel_basis, rank, row_basis
from .matroid import Matroid

DEFAULT_SAMPLES = 32
SAMPLE_RANGE = 100


def gale_dual(A: RationalMatrix) -> RationalMatrix:
    """A matrix ``B`` whose columns span ker A, so that A B = 0."""
    return kernel_basis(A)


@dataclass(frozen=True)
class HKSample:
    t: tuple[Fraction, ...]
    u: tuple[Fraction, ...]
    z: tuple[Fraction, ...]


def linear_forms(A: RationalMatrix, t: Sequence) -> tuple[Fraction, ...]:
    """The values ``t . a_i`` for every column ``a_i`` of A."""
    return A.T @ t


def horn_kapranov(A: RationalMatrix, B: RationalMatrix, t: Sequence, u: Sequence) -> HKSample:
    """The point ``z_j = (t . a_j)^2 (b_j . u)`` of the discriminant variety."""
    if A.cols != B.rows:
        raise GaleMismatch(f"A has {A.cols} columns but B has {B.rows} rows")
    if not (A @ B).is_zero():
        raise GaleMismatch("A B is not zero")
    t = tuple(Fraction(x) for x in t)
    u = tuple(Fraction(x) for x in u)
    ell = linear_forms(A, t)
    bad = [i for i, v in enumerate(ell) if v == 0]
    if bad:
        raise OnArrangement(f"t lies on the hyperplanes {bad}")
    bu = B @ u
    return HKSample(t, u, tuple(l * l * b for l, b in zip(ell, bu)))


def jacobian_jl(A: RationalMatrix, B: RationalMatrix, t: Sequence, u: Sequence) -> RationalMatrix:
    """The block matrix ``(diag(B u) A^T | diag(A^T t) B)``."""
    bu = B @ u
    at = A.T @ t
    rows = []
    for j in range(A.cols):
        rows.append([bu[j] * A[i, j] for i in range(A.rows)] + [at[j] * B[j, k] for k in range(B.cols)])
    return RationalMatrix.from_rows(rows, A.rows + B.cols)


def reduce_coloops(A: RationalMatrix) -> tuple[RationalMatrix, frozenset]:
    """Drop the coloop columns (zero rows of the Gale dual)."""
    K = kernel_basis(A)
    removed = frozenset(i for i in range(A.cols) if all(x == 0 for x in K.row(i)))
    if not removed:
        return A, removed
    keep = [j for j in range(A.cols) if j not in removed]
    return A.select_columns(keep), removed


@dataclass
class DefectivityVerdict:
    kind: str  # "Hypersurface" or "ProbablyDefective"
    certified: bool
    samples_tried: int
    coloops: frozenset = frozenset()
    witness_t: tuple | None = None
    witness_u: tuple | None = None
    witness_rank: int | None = None
    reason: str = ""

    @property
    def defective(self) -> bool:
        return self.kind != "Hypersurface"

    def to_json(self) -> dict:
        from .exact import format_rational as fr
        return {
            "verdict": self.kind,
            "certified": self.certified,
            "samples": self.samples_tried,
            "coloops": sorted(self.coloops),
            "witness": None if self.witness_t is None else {
                "t": [fr(x) for x in self.witness_t],
                "u": [fr(x) for x in self.witness_u],
                "rank": self.witness_rank,
            },
            "reason": self.reason,
        }


def _random_vector(rng: random.Random, k: int) -> tuple[Fraction, ...]:
    return tuple(Fraction(rng.randint(-SAMPLE_RANGE, SAMPLE_RANGE)) for _ in range(k))


def random_off_arrangement(A: RationalMatrix, rng: random.Random) -> tuple[Fraction, ...]:
    """A random integer point t with every ``t . a_i`` nonzero (redrawn, never perturbed)."""
    while True:
        t = _random_vector(rng, A.rows)
        if all(v != 0 for v in linear_forms(A, t)):
            return t


def is_dual_defective(A: RationalMatrix, samples: int = DEFAULT_SAMPLES, seed=0) -> DefectivityVerdict:
    """Decide whether the dual of the reciprocal space of ``A`` is a hypersurface.

    A Jacobian of rank n at some sample proves the hypersurface case.  Failing
    that after ``samples`` random draws the answer is ``ProbablyDefective``,
    which is evidence rather than proof.  Coloops force defectivity outright.
    """
    zero = [j for j in range(A.cols) if all(x == 0 for x in A.col(j))]
    if zero:
        raise LoopError(zero)
    R, removed = reduce_coloops(A)
    if removed:
        # the discriminant then sits inside a coordinate subspace of codimension >= 1
        return DefectivityVerdict("ProbablyDefective", True, 0, removed,
                                  reason="matroid has coloops")
    R = row_basis(R)
    B = gale_dual(R)
    n = R.cols - 1
    rng = random.Random(f"hk:{seed}")
    best = -1
    for k in range(samples):
        t = random_off_arrangement(R, rng)
        u = _random_vector(rng, B.cols)
        r = rank(jacobian_jl(R, B, t, u))
        best = max(best, r)
        if r == n:
            return DefectivityVerdict("Hypersurface", True, k + 1, removed, t, u, r,
                                      reason="Jacobian attains rank n")
    return DefectivityVerdict("ProbablyDefective", False, samples, removed,
                              reason=f"Jacobian rank at most {best} < {n} on every sample")


def hk_samples(A: RationalMatrix, count: int, seed=0) -> list[HKSample]:
    """Seeded Horn-Kapranov points of the discriminant of the reciprocal space of ``A``."""
    R = row_basis(A)
    B = gale_dual(R)
    out = []
    for k in range(count):
        rng = random.Random(f"sample:{seed}:{k}")
        t = random_off_arrangement(R, rng)
        u = _random_vector(rng, B.cols)
        out.append(horn_kapranov(R, B, t, u))
    return out


# -- degree formulas ------------------------------------------------------

def degree_lk(M: Matroid, k: int) -> int:
    """Degree of the coordinatewise k-th power of the linear space."""
    if k == 0:
        raise ValueError("k must be nonzero")
    e = M.d - M.num_components() + 1
    if k > 0:
        return k ** e
    return (-k) ** e * M.mobius_invariant()


def degree_el(M: Matroid) -> int:
    """Degree of the principal matroid determinant."""
    return (M.d + 1) * 2 ** (M.d - M.num_components() + 1) * M.mobius_invariant()


def predicted_discriminant_degree(M: Matroid) -> tuple[int, bool]:
    """``(2^d beta, conjectural)``; the value is proven when M is uniform."""
    if not M.is_connected():
        raise DisconnectedError(f"matroid has {M.num_components()} components")
    value = 2 ** M.d * M.beta_invariant()
    if M.is_uniform():
        assert value == 2 ** M.d * comb(M.n - 1, M.d), "beta of a uniform matroid"
        return value, False
    return value, True


# -- factorization over flats ---------------------------------------------

@dataclass
class FlatRow:
    flat: frozenset
    rank: int
    connected: bool
    defective: bool | None
    degree: int | None
    multiplicity: int | None
    conjectural: bool

    def to_json(self) -> dict:
        return {
            "flat": sorted(self.flat),
            "rank": self.rank,
            "connected": self.connected,
            "defective": self.defective,
            "degree": self.degree,
            "multiplicity": self.multiplicity,
            "conjectural": self.conjectural,
        }


@dataclass
class FactorizationDescriptor:
    rows: list[FlatRow]
    degree_el: int
    degree_sum: int | None = None
    consistent: bool | None = None
    missing: list = field(default_factory=list)

    def row(self, F) -> FlatRow:
        F = frozenset(F)
        return next(r for r in self.rows if r.flat == F)

    def to_json(self) -> dict:
        return {
            "rows": [r.to_json() for r in self.rows],
            "degree_EL": self.degree_el,
            "degree_sum": self.degree_sum,
            "consistent": self.consistent,
        }


def factorization_descriptor(M: Matroid, multiplicities: Mapping | None = None,
                             samples: int = DEFAULT_SAMPLES, seed=0) -> FactorizationDescriptor:
    """One row per nonempty flat, with degree and (user supplied) multiplicity.

    Defective flats have a trivial discriminant, recorded as degree 0.
    Multiplicities are never invented: flats absent from ``multiplicities``
    stay unknown.
    """
    mult = {frozenset(k): int(v) for k, v in (multiplicities or {}).items()}
    lattice = M.flats()
    rows = []
    for F, r in zip(lattice.flats, lattice.ranks):
        if not F:
            continue
        if len(F) == 1:
            rows.append(FlatRow(F, r, True, False, 1, mult.get(F), False))
            continue
        sub = M.restriction(F)
        connected = sub.is_connected()
        verdict = is_dual_defective(sub.A, samples, seed)
        conj = False
        if verdict.defective:
            degree = 0
        elif connected:
            degree, conj = predicted_discriminant_degree(sub)
        else:
            degree = None  # would contradict the connectivity conjecture; leave open
        rows.append(FlatRow(F, r, connected, verdict.defective, degree, mult.get(F), conj))
    desc = FactorizationDescriptor(rows, degree_el(M))
    contributing = [row for row in rows if row.degree != 0]
    desc.missing = [row.flat for row in contributing if row.degree is None or row.multiplicity is None]
    if not desc.missing:
        desc.degree_sum = sum(row.degree * row.multiplicity for row in contributing)
        desc.consistent = desc.degree_sum == desc.degree_el
    return desc


# -- banana multiplicities and Euler characteristics ------------------------

def banana_multiplicities(n: int) -> list[int]:
    """Multiplicities ``m_0, ..., m_{n-1}`` from the Euler characteristic recursion.

    ``m_0 = 2^n - 1`` and for ``1 <= p <= n-1``
    ``2^(n-p) = 2^n - 1 + sum_{q=1}^{p} C(p, q) (-1)^q m_q``.
    """
    if n < 2:
        raise ValueError("n must be at least 2")
    m = [2 ** n - 1]
    for p in range(1, n):
        rest = sum(comb(p, q) * (-1) ** q * m[q] for q in range(1, p))
        # the q = p term carries (-1)^p m_p
        m_p = (2 ** (n - p) - (2 ** n - 1) - rest) * (-1) ** p
        m.append(m_p)
    assert recursion_residuals(n, m) == [0] * (n - 1)
    assert m == [2 ** (n - p) - 1 for p in range(n)]
    return m


def recursion_residuals(n: int, m: Sequence[int]) -> list[int]:
    return [2 ** n - 1 + sum(comb(p, q) * (-1) ** q * m[q] for q in range(1, p + 1)) - 2 ** (n - p)
            for p in range(1, n)]


def chi_from_chi_tilde(chi_tilde: int, M: Matroid) -> int:
    return chi_tilde - M.beta_invariant()


# -- conjecture harness ----------------------------------------------------

DEFECTIVE_PROBE = RationalMatrix.from_rows([
    [1, 0, 0, 1, 3, 0],
    [0, 1, 0, 2, 1, 0],
    [0, 0, 1, 0, 0, 1],
])


@dataclass
class TrialRecord:
    label: str
    matrix: RationalMatrix
    components: int
    verdict: DefectivityVerdict
    predicted_degree: int | None
    conjectural: bool

    @property
    def connected(self) -> bool:
        return self.components == 1

    @property
    def agrees(self) -> bool:
        return self.connected != self.verdict.defective

    def to_json(self) -> dict:
        return {
            "label": self.label,
            "matrix": [[str(x) for x in r] for r in self.matrix.to_rows()],
            "components": self.components,
            "connected": self.connected,
            "verdict": self.verdict.kind,
            "certified": self.verdict.certified,
            "agrees": self.agrees,
            "predicted_degree": self.predicted_degree,
            "conjectural": self.conjectural,
        }


@dataclass
class HarnessReport:
    n: int
    d: int
    seed: object
    trials: list[TrialRecord]
    probe: TrialRecord

    @property
    def candidates(self) -> list[TrialRecord]:
        return [t for t in self.trials + [self.probe] if not t.agrees]

    def to_json(self) -> dict:
        return {
            "n": self.n,
            "d": self.d,
            "seed": self.seed,
            "trials": [t.to_json() for t in self.trials],
            "agreements": sum(t.agrees for t in self.trials),
            "probe": self.probe.to_json(),
            "candidates": [t.label for t in self.candidates],
            "conjectural": True,
        }


def _random_matrix(rng: random.Random, rows: int, cols: int) -> RationalMatrix:
    while True:
        A = RationalMatrix.from_rows([[rng.randint(-9, 9) for _ in range(cols)] for _ in range(rows)], cols)
        if rank(A) == rows and all(any(x != 0 for x in A.col(j)) for j in range(cols)):
            return A


def _block_matrix(rng: random.Random, rows: int, cols: int) -> RationalMatrix:
    """A direct sum of two random blocks with the requested total shape."""
    r1 = max(1, rows // 2)
    c1 = max(r1 + 1, cols // 2)
    r2, c2 = rows - r1, cols - c1
    if r2 < 1 or c2 <= r2:
        # not enough room for two connected blocks; fall back to one coloop
        r1, c1, r2, c2 = rows - 1, cols - 1, 1, 1
    A1 = _random_matrix(rng, r1, c1)
    A2 = _random_matrix(rng, r2, c2)
    out = [list(A1.row(i)) + [0] * c2 for i in range(r1)]
    out += [[0] * c1 + list(A2.row(i)) for i in range(r2)]
    return RationalMatrix.from_rows(out, cols)


def _record(label: str, A: RationalMatrix, samples: int, seed) -> TrialRecord:
    M = Matroid(A)
    verdict = is_dual_defective(A, samples, seed)
    comps = M.num_components()
    degree, conj = (None, False)
    if comps == 1:
        degree, conj = predicted_discriminant_degree(M)
    rec = TrialRecord(label, A, comps, verdict, degree, conj)
    if not rec.agrees and not verdict.certified:
        # recheck a suspected counterexample with more samples
        rec.verdict = is_dual_defective(A, samples * 4, f"{seed}:recheck")
    return rec


def conjecture_harness(n: int, d: int, trials: int, seed=0,
                       samples: int = DEFAULT_SAMPLES) -> HarnessReport:
    """Compare connectivity with dual defectivity on seeded random matrices.

    Even-numbered trials draw a generic matrix, odd-numbered ones a block
    diagonal (disconnected) matrix.  Nothing is asserted; disagreements are
    reported as candidates.
    """
    if not 0 <= d < n:
        raise ValueError("need 0 <= d < n")
    records = []
    for k in range(trials):
        rng = random.Random(f"{seed}:{k}")
        if k % 2 == 0:
            A, label = _random_matrix(rng, d + 1, n + 1), f"generic-{k}"
        else:
            A, label = _block_matrix(rng, d + 1, n + 1), f"block-{k}"
        records.append(_record(label, A, samples, f"{seed}:{k}"))
    probe = _record("defective-probe", DEFECTIVE_PROBE, samples, seed)
    return HarnessReport(n, d, seed, records, probe)
