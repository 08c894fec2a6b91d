"""Differential operators of the matroid hypergeometric system and their
action on generalized power series.

Operators are normally ordered sums ``c z^a d^b`` (all multiplications to the
left of all derivatives).  Series are finite sums ``c z^(base + shift)``
with a fixed rational base exponent and integer shifts.
"""

from __future__ import annotations

import re
from dataclasses import dataclass, field
from fractions import Fraction
from itertools import product
from typing import Iterable, Mapping, Sequence

from .errors import (AnnihilationFailure, DegenerateRecurrence,
                     HomogeneityError, ParameterDegenerate)
from .exact import RationalMatrix, format_rational, parse_rational, rref
from .poly import reciprocal_ideal_generators


def falling(x: Fraction, k: int) -> Fraction:
    """``x (x-1) ... (x-k+1)``."""
    out = Fraction(1)
    for i in range(k):
        out *= x - i
    return out


def pochhammer(x: Fraction, k: int) -> Fraction:
    """Rising factorial ``x (x+1) ... (x+k-1)``."""
    out = Fraction(1)
    for i in range(k):
        out *= x + i
    return out


# -- operators --------------------------------------------------------------

def _op_key(item):
    (a, b), _ = item
    return (-(sum(a) + sum(b)), tuple(-x for x in a + b))


class WeylOp:
    """Normally ordered element ``sum c z^a d^b`` of the Weyl algebra in n+1 variables."""

    __slots__ = ("n", "_terms")

    def __init__(self, n: int, terms: Mapping | Iterable = ()):
        items = terms.items() if isinstance(terms, Mapping) else terms
        clean: dict = {}
        for key, c in items:
            a, b = key
            a = tuple(int(x) for x in a)
            b = tuple(int(x) for x in b)
            if len(a) != n + 1 or len(b) != n + 1 or min(a + b) < 0:
                raise ValueError(f"bad exponents {a}, {b}")
            c = Fraction(c)
            if c:
                clean[(a, b)] = clean.get((a, b), Fraction(0)) + c
                if not clean[(a, b)]:
                    del clean[(a, b)]
        self.n = n
        self._terms = clean

    @property
    def terms(self) -> dict:
        return dict(self._terms)

    def sorted_terms(self):
        return sorted(self._terms.items(), key=_op_key)

    def __len__(self):
        return len(self._terms)

    def __add__(self, other: "WeylOp") -> "WeylOp":
        out = dict(self._terms)
        for k, c in other._terms.items():
            out[k] = out.get(k, 0) + c
        return WeylOp(self.n, out)

    def scale(self, c) -> "WeylOp":
        c = Fraction(c)
        return WeylOp(self.n, {k: c * v for k, v in self._terms.items()})

    def __sub__(self, other):
        return self + other.scale(-1)

    def __eq__(self, other):
        return isinstance(other, WeylOp) and self.n == other.n and self._terms == other._terms

    def __hash__(self):
        return hash((self.n, frozenset(self._terms.items())))

    def __repr__(self):
        return f"WeylOp({self.to_text()!r})"

    def max_shift(self) -> int:
        """Largest total derivative order of a term."""
        return max((sum(b) for a, b in self._terms), default=0)

    def order_shifts(self) -> set[int]:
        """How each term moves the series order (sum of non-distinguished exponents)."""
        return {sum(a[1:]) - sum(b[1:]) for a, b in self._terms}

    def min_order_shift(self) -> int:
        return min(self.order_shifts(), default=0)

    # -- text and JSON --------------------------------------------------

    def to_text(self) -> str:
        if not self._terms:
            return "0"
        parts = []
        for (a, b), c in self.sorted_terms():
            factors = [f"z{i}" + (f"^{k}" if k > 1 else "") for i, k in enumerate(a) if k]
            factors += [f"dz{i}" + (f"^{k}" if k > 1 else "") for i, k in enumerate(b) if k]
            body = " ".join([format_rational(abs(c))] + factors)
            parts.append(("-" if c < 0 else "+", body))
        out = ("-" if parts[0][0] == "-" else "") + parts[0][1]
        for sign, body in parts[1:]:
            out += f" {sign} {body}"
        return out

    @classmethod
    def from_text(cls, text: str, n: int) -> "WeylOp":
        tokens = text.split()
        terms = []
        sign = 1
        i = 0
        while i < len(tokens):
            tok = tokens[i]
            if tok in "+-":
                sign = -1 if tok == "-" else 1
                i += 1
                continue
            if tok.startswith("-") and len(tok) > 1:
                sign, tok = -sign, tok[1:]
            coef = parse_rational(tok)
            a, b = [0] * (n + 1), [0] * (n + 1)
            i += 1
            while i < len(tokens) and tokens[i] not in "+-":
                m = re.fullmatch(r"(dz|z)(\d+)(?:\^(\d+))?", tokens[i])
                if not m:
                    raise ValueError(f"bad factor {tokens[i]!r}")
                target = b if m.group(1) == "dz" else a
                target[int(m.group(2))] += int(m.group(3) or 1)
                i += 1
            terms.append(((tuple(a), tuple(b)), sign * coef))
            sign = 1
        return cls(n, _merge(terms))

    def to_json(self) -> dict:
        return {
            "n": self.n,
            "terms": [{"coef": format_rational(c), "zExp": list(a), "dExp": list(b)}
                      for (a, b), c in self.sorted_terms()],
        }

    @classmethod
    def from_json(cls, data: dict) -> "WeylOp":
        terms = [((tuple(t["zExp"]), tuple(t["dExp"])), parse_rational(t["coef"])) for t in data["terms"]]
        return cls(int(data["n"]), _merge(terms))


def _merge(terms) -> dict:
    out: dict = {}
    for k, c in terms:
        out[k] = out.get(k, 0) + c
    return out


def _unit(n: int, i: int, k: int = 1) -> tuple[int, ...]:
    e = [0] * (n + 1)
    e[i] = k
    return tuple(e)


# -- parameters and the system ----------------------------------------------

@dataclass(frozen=True)
class Parameters:
    u: tuple[Fraction, ...]
    s: Fraction

    @classmethod
    def from_u(cls, u: Sequence, d: int) -> "Parameters":
        """Pick ``s`` so that ``s + d + 1 + sum(u) = 0``."""
        u = tuple(parse_rational(x) if isinstance(x, str) else Fraction(x) for x in u)
        return cls(u, -sum(u) - d - 1)

    def check(self, d: int):
        if self.s + d + 1 + sum(self.u) != 0:
            raise HomogeneityError(f"s + d + 1 + sum(u) = {self.s + d + 1 + sum(self.u)} for d = {d}")


def euler_operator(n: int, s) -> WeylOp:
    terms = {(_unit(n, j), _unit(n, j)): 1 for j in range(n + 1)}
    terms[((0,) * (n + 1), (0,) * (n + 1))] = s
    return WeylOp(n, terms)


def row_operator(row: Sequence, u: Sequence) -> WeylOp:
    """``sum_j a_j z_j d_j^2 - sum_j a_j u_j d_j`` for one row ``a`` of the realization."""
    n = len(row) - 1
    terms: dict = {}
    for j, a in enumerate(row):
        a = Fraction(a)
        if a:
            terms[(_unit(n, j), _unit(n, j, 2))] = a
            terms[((0,) * (n + 1), _unit(n, j))] = -a * u[j]
    return WeylOp(n, terms)


def symbol_operator(h) -> WeylOp:
    """``h(d_0, ..., d_n)`` for a polynomial ``h``."""
    n = h.nvars - 1
    return WeylOp(n, {((0,) * (n + 1), e): c for e, c in h.terms.items()})


@dataclass
class HypergeometricSystem:
    H: WeylOp
    P: list[WeylOp]
    Q: list[WeylOp]

    def all(self) -> list[WeylOp]:
        return [self.H] + self.P + self.Q

    def labels(self) -> list[str]:
        return ["H"] + [f"P{i}" for i in range(len(self.P))] + [f"Q{i}" for i in range(len(self.Q))]


def build_system(M, params: Parameters) -> HypergeometricSystem:
    """The operators H, one P per row of the realization, one Q per circuit."""
    if len(params.u) != M.size:
        raise ValueError(f"need {M.size} parameters u, got {len(params.u)}")
    params.check(M.d)
    n = M.n
    H = euler_operator(n, params.s)
    P = [row_operator(M.A.row(i), params.u) for i in range(M.A.rows)]
    Q = [symbol_operator(h) for h in reciprocal_ideal_generators(M)]
    return HypergeometricSystem(H, P, Q)


def banana_matrix(n: int) -> RationalMatrix:
    """The n x (n+1) matrix ``(-sum e_i | e_1 | ... | e_n)``."""
    return RationalMatrix.from_rows([[-1] + [int(i == j) for j in range(n)] for i in range(n)], n + 1)


# -- series -----------------------------------------------------------------

class GenSeries:
    """``sum_shift c z^(base + shift)`` with integer shifts."""

    __slots__ = ("n", "base", "_terms")

    def __init__(self, n: int, base: Sequence, terms: Mapping | None = None):
        self.n = n
        self.base = tuple(Fraction(x) for x in base)
        if len(self.base) != n + 1:
            raise ValueError("base exponent has the wrong length")
        clean = {}
        for shift, c in (terms or {}).items():
            shift = tuple(int(x) for x in shift)
            c = Fraction(c)
            if c:
                clean[shift] = c
        self._terms = clean

    @property
    def terms(self) -> dict:
        return dict(self._terms)

    def __len__(self):
        return len(self._terms)

    def coefficient(self, shift) -> Fraction:
        return self._terms.get(tuple(shift), Fraction(0))

    def exponent(self, shift) -> tuple[Fraction, ...]:
        return tuple(b + s for b, s in zip(self.base, shift))

    @staticmethod
    def order_of(shift) -> int:
        return sum(shift[1:])

    def truncate(self, N: int) -> "GenSeries":
        return GenSeries(self.n, self.base, {k: c for k, c in self._terms.items() if self.order_of(k) <= N})

    def with_coefficient(self, shift, c) -> "GenSeries":
        terms = dict(self._terms)
        terms[tuple(shift)] = Fraction(c)
        return GenSeries(self.n, self.base, terms)

    def __add__(self, other: "GenSeries") -> "GenSeries":
        if other.base != self.base:
            raise ValueError("series live on different lattices")
        out = dict(self._terms)
        for k, c in other._terms.items():
            out[k] = out.get(k, 0) + c
        return GenSeries(self.n, self.base, out)

    def scale(self, c) -> "GenSeries":
        return GenSeries(self.n, self.base, {k: c * v for k, v in self._terms.items()})

    def is_zero(self) -> bool:
        return not self._terms

    def __eq__(self, other):
        return (isinstance(other, GenSeries) and self.base == other.base
                and self._terms == other._terms)

    def __repr__(self):
        return f"GenSeries(n={self.n}, base={[format_rational(b) for b in self.base]}, terms={len(self)})"

    def to_json(self) -> dict:
        return {
            "n": self.n,
            "base": [format_rational(b) for b in self.base],
            "terms": [{"shift": list(k), "coef": format_rational(c)}
                      for k, c in sorted(self._terms.items(), key=lambda kv: (self.order_of(kv[0]), tuple(-x for x in kv[0][1:])))],
        }

    @classmethod
    def from_json(cls, data: dict) -> "GenSeries":
        return cls(int(data["n"]), [parse_rational(b) for b in data["base"]],
                   {tuple(t["shift"]): parse_rational(t["coef"]) for t in data["terms"]})


def apply_op(op: WeylOp, g: GenSeries) -> GenSeries:
    """Exact action: ``z^a d^b z^e = falling(e, b) z^(e - b + a)``."""
    out: dict = {}
    for shift, c in g._terms.items():
        e = g.exponent(shift)
        for (a, b), k in op._terms.items():
            f = k * c
            for ej, bj in zip(e, b):
                if bj:
                    f *= falling(ej, bj)
                    if not f:
                        break
            if not f:
                continue
            new = tuple(s - bj + aj for s, aj, bj in zip(shift, a, b))
            out[new] = out.get(new, 0) + f
    return GenSeries(g.n, g.base, out)


# -- Lauricella series --------------------------------------------------------

def _compositions(n: int, N: int):
    """All m in N^n with |m| <= N, ordered by |m|."""
    for total in range(N + 1):
        yield from _exact(n, total)


def _exact(n: int, total: int):
    if n == 0:
        if total == 0:
            yield ()
        return
    for first in range(total, -1, -1):
        for rest in _exact(n - 1, total - first):
            yield (first,) + rest


def check_generic(params: Parameters):
    bad = [i for i, x in enumerate(params.u) if x.denominator == 1]
    if bad:
        raise ParameterDegenerate(f"integer parameters u at positions {bad}")


def lauricella_series(n: int, params: Parameters, N: int, sign: int = 1) -> GenSeries:
    """Truncation at ``|m| <= N`` of ``sum_m c_m sign^|m| z_0^(-s-|m|) z^m`` where
    ``c_m = (s)_|m| (1+s+u_0)_|m| / prod_i ((-u_i)_{m_i} m_i!)``.
    """
    if sign not in (1, -1):
        raise ValueError("sign must be +1 or -1")
    if len(params.u) != n + 1:
        raise ValueError(f"need {n + 1} parameters u")
    check_generic(params)
    s, u = params.s, params.u
    terms = {}
    for m in _compositions(n, N):
        k = sum(m)
        num = pochhammer(s, k) * pochhammer(1 + s + u[0], k)
        den = Fraction(1)
        for i, mi in enumerate(m, start=1):
            den *= pochhammer(-u[i], mi) * falling(Fraction(mi), mi)
        if den == 0:
            raise ParameterDegenerate(f"vanishing denominator at m = {m}")
        terms[(-k,) + m] = num / den * sign ** k
    return GenSeries(n, (-s,) + (0,) * n, terms)


# -- annihilation -------------------------------------------------------------

@dataclass
class OperatorCheck:
    index: int
    verified_order: int
    residual_terms: dict = field(default_factory=dict)


@dataclass
class AnnihilationReport:
    N: int
    checks: list[OperatorCheck]

    @property
    def max_verified_order(self) -> int:
        return min(c.verified_order for c in self.checks)

    def to_json(self) -> dict:
        return {
            "N": self.N,
            "maxVerifiedOrder": self.max_verified_order,
            "operators": [{"index": c.index, "verifiedOrder": c.verified_order,
                           "residualTerms": len(c.residual_terms)} for c in self.checks],
        }


def trusted_order(op: WeylOp, N: int) -> int:
    """Highest output order of ``op g`` not reached by terms of order > N."""
    return N + op.min_order_shift()


def annihilation_check(ops: Sequence[WeylOp], g: GenSeries, N: int) -> AnnihilationReport:
    """Verify that each operator kills ``g`` wherever truncation cannot interfere.

    Output coefficients of order at most ``N + min order shift`` must vanish
    exactly; the remaining ones are collected as residual boundary terms.
    Raises :class:`AnnihilationFailure` on the first nonzero trusted term.
    """
    checks = []
    for idx, op in enumerate(ops):
        out = apply_op(op, g)
        limit = trusted_order(op, N)
        residual = {}
        bad = []
        for shift, c in out.terms.items():
            if GenSeries.order_of(shift) <= limit:
                bad.append((GenSeries.order_of(shift), shift, c))
            else:
                residual[shift] = c
        if bad:
            _, shift, c = min(bad)
            raise AnnihilationFailure(idx, out.exponent(shift), c)
        checks.append(OperatorCheck(idx, limit, residual))
    return AnnihilationReport(N, checks)


# -- recurrence oracle -------------------------------------------------------

def recurrence_solve(P: Sequence[WeylOp], base: Sequence, N: int) -> GenSeries:
    """Coefficients of ``sum_m c_m z^(base + (-|m|, m))`` forced by the operators.

    Starting from ``c_0 = 1``, the coefficients of order k are the unique
    solution of every equation ``(op g)_t = 0`` whose output order t is
    complete once orders up to k are known.
    """
    if not P:
        raise ValueError("no operators")
    n = P[0].n
    base = tuple(Fraction(b) for b in base)
    known: dict[tuple, Fraction] = {(0,) * (n + 1): Fraction(1)}

    def image(shift) -> dict:
        single = GenSeries(n, base, {shift: 1})
        return {i: apply_op(op, single).terms for i, op in enumerate(P)}

    images = {}
    for k in range(1, N + 1):
        unknown = [(-k,) + m for m in _exact(n, k)]
        col = {s: j for j, s in enumerate(unknown)}
        # equations: for each operator, the output orders made complete at step k
        eqs: dict = {}
        for s in list(known) + unknown:
            if s not in images:
                images[s] = image(s)
            for i, out in images[s].items():
                limit = trusted_order(P[i], k)
                for t, v in out.items():
                    if GenSeries.order_of(t) > limit:
                        continue
                    row = eqs.setdefault((i, t), [Fraction(0)] * (len(unknown) + 1))
                    if s in col:
                        row[col[s]] += v
                    else:
                        row[-1] -= v * known[s]
        rows = [r for r in eqs.values() if any(r[:-1])]
        leftovers = [r for r in eqs.values() if not any(r[:-1]) and r[-1]]
        if leftovers:
            raise DegenerateRecurrence(f"inconsistent equations before order {k}")
        if not rows:
            raise DegenerateRecurrence(f"no equations determine order {k}")
        R, pivots = rref(RationalMatrix.from_rows(rows, len(unknown) + 1))
        if pivots and pivots[-1] == len(unknown):
            raise DegenerateRecurrence(f"inconsistent equations at order {k}")
        if len(pivots) < len(unknown):
            raise DegenerateRecurrence(f"order {k} coefficients are not determined")
        for r, p in zip(R, pivots):
            known[unknown[p]] = r[-1]
    return GenSeries(n, base, known)


def admissible_parameters(n: int, rng, denominators=(2, 3, 5, 7, 11, 13)) -> Parameters:
    """Random non-integer rational u with s fixed by homogeneity (d = n - 1)."""
    u = []
    for _ in range(n + 1):
        q = rng.choice(denominators)
        p = rng.randint(-3 * q, 3 * q)
        while p % q == 0:
            p = rng.randint(-3 * q, 3 * q)
        u.append(Fraction(p, q))
    return Parameters.from_u(u, n - 1)
