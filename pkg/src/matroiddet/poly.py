"""Sparse multivariate polynomials with rational coefficients."""

from __future__ import annotations

from fractions import Fraction
from typing import Iterable, Mapping, Sequence

from .exact import format_rational, parse_rational


def _glex_key(exp: tuple[int, ...]):
    # graded lex, largest first: higher total degree, then lexicographically larger
    return (-sum(exp), tuple(-e for e in exp))


class SparsePoly:
    """Immutable polynomial ``sum c_e x^e`` in ``nvars`` variables."""

    __slots__ = ("nvars", "_terms")

    def __init__(self, nvars: int, terms: Mapping[Sequence[int], object] | None = None):
        clean: dict[tuple[int, ...], Fraction] = {}
        for exp, c in (terms or {}).items():
            exp = tuple(int(e) for e in exp)
            if len(exp) != nvars or any(e < 0 for e in exp):
                raise ValueError(f"bad exponent {exp} for {nvars} variables")
            c = parse_rational(c) if isinstance(c, str) else Fraction(c)
            if c:
                clean[exp] = clean.get(exp, Fraction(0)) + c
                if not clean[exp]:
                    del clean[exp]
        self.nvars = nvars
        self._terms = clean

    # -- constructors -----------------------------------------------------

    @classmethod
    def zero(cls, nvars: int) -> "SparsePoly":
        return cls(nvars)

    @classmethod
    def constant(cls, nvars: int, c) -> "SparsePoly":
        return cls(nvars, {(0,) * nvars: c})

    @classmethod
    def variable(cls, nvars: int, i: int) -> "SparsePoly":
        e = [0] * nvars
        e[i] = 1
        return cls(nvars, {tuple(e): 1})

    @classmethod
    def univariate(cls, coeffs: Sequence) -> "SparsePoly":
        """``coeffs[k]`` is the coefficient of ``q^k``."""
        return cls(1, {(k,): c for k, c in enumerate(coeffs) if c})

    # -- access -----------------------------------------------------------

    @property
    def terms(self) -> dict[tuple[int, ...], Fraction]:
        return dict(self._terms)

    def sorted_terms(self) -> list[tuple[tuple[int, ...], Fraction]]:
        return sorted(self._terms.items(), key=lambda kv: _glex_key(kv[0]))

    def coefficient(self, exp: Sequence[int]) -> Fraction:
        return self._terms.get(tuple(exp), Fraction(0))

    def is_zero(self) -> bool:
        return not self._terms

    def __len__(self):
        return len(self._terms)

    def total_degree(self) -> int:
        if not self._terms:
            return -1
        return max(sum(e) for e in self._terms)

    def partial_degree(self, i: int) -> int:
        if not self._terms:
            return -1
        return max(e[i] for e in self._terms)

    def is_homogeneous(self) -> bool:
        return len({sum(e) for e in self._terms}) <= 1

    def univariate_coefficients(self) -> list[Fraction]:
        if self.nvars != 1:
            raise ValueError("not a univariate polynomial")
        out = [Fraction(0)] * (self.total_degree() + 1)
        for (k,), c in self._terms.items():
            out[k] = c
        return out

    # -- arithmetic -------------------------------------------------------

    def _check(self, other: "SparsePoly"):
        if not isinstance(other, SparsePoly):
            other = SparsePoly.constant(self.nvars, other)
        if other.nvars != self.nvars:
            raise ValueError("variable count mismatch")
        return other

    def __add__(self, other):
        other = self._check(other)
        out = dict(self._terms)
        for e, c in other._terms.items():
            out[e] = out.get(e, 0) + c
        return SparsePoly(self.nvars, out)

    __radd__ = __add__

    def __neg__(self):
        return self.scale(-1)

    def __sub__(self, other):
        return self + (-self._check(other))

    def __rsub__(self, other):
        return self._check(other) - self

    def __mul__(self, other):
        if not isinstance(other, SparsePoly):
            return self.scale(other)
        other = self._check(other)
        out: dict = {}
        for e1, c1 in self._terms.items():
            for e2, c2 in other._terms.items():
                e = tuple(a + b for a, b in zip(e1, e2))
                out[e] = out.get(e, 0) + c1 * c2
        return SparsePoly(self.nvars, out)

    __rmul__ = __mul__

    def __pow__(self, k: int):
        out = SparsePoly.constant(self.nvars, 1)
        for _ in range(k):
            out = out * self
        return out

    def scale(self, c) -> "SparsePoly":
        c = Fraction(c)
        return SparsePoly(self.nvars, {e: c * v for e, v in self._terms.items()})

    def evaluate(self, x: Sequence) -> Fraction:
        if len(x) != self.nvars:
            raise ValueError(f"expected {self.nvars} values, got {len(x)}")
        x = [Fraction(v) for v in x]
        total = Fraction(0)
        for e, c in self._terms.items():
            term = c
            for xi, k in zip(x, e):
                if k:
                    term *= xi ** k
            total += term
        return total

    def __eq__(self, other):
        if not isinstance(other, SparsePoly):
            return NotImplemented
        return self.nvars == other.nvars and self._terms == other._terms

    def __hash__(self):
        return hash((self.nvars, frozenset(self._terms.items())))

    def __repr__(self):
        return f"SparsePoly({self.nvars}, {self.to_text()!r})"

    # -- serialization ----------------------------------------------------

    def to_text(self, var: str = "x") -> str:
        if not self._terms:
            return "0"
        parts = []
        for e, c in self.sorted_terms():
            mono = " ".join(
                f"{var}{i}" + (f"^{k}" if k > 1 else "") for i, k in enumerate(e) if k
            )
            mag = format_rational(abs(c))
            body = mono if mono and mag == "1" else (f"{mag} {mono}" if mono else mag)
            sign = "-" if c < 0 else "+"
            parts.append((sign, body))
        first_sign, first = parts[0]
        out = ("-" if first_sign == "-" else "") + first
        for sign, body in parts[1:]:
            out += f" {sign} {body}"
        return out

    def to_json(self) -> dict:
        return {
            "nvars": self.nvars,
            "terms": [{"exp": list(e), "coef": format_rational(c)} for e, c in self.sorted_terms()],
        }

    @classmethod
    def from_json(cls, data: dict) -> "SparsePoly":
        nvars = int(data["nvars"])
        out: dict = {}
        for t in data["terms"]:
            e = tuple(int(k) for k in t["exp"])
            if e in out:
                raise ValueError(f"duplicate exponent {e}")
            out[e] = parse_rational(t["coef"])
        return cls(nvars, out)


def circuit_polynomial(circuit, nvars: int) -> SparsePoly:
    """``sum_{i in C} v_i prod_{j in C, j != i} x_j`` (denominators of sum v_i/x_i cleared)."""
    support = list(circuit.support)
    terms = {}
    for i, v in zip(support, circuit.coefficients):
        e = [0] * nvars
        for j in support:
            if j != i:
                e[j] = 1
        terms[tuple(e)] = v
    return SparsePoly(nvars, terms)


def reciprocal_ideal_generators(matroid) -> list[SparsePoly]:
    """One circuit polynomial per circuit; together they generate the ideal of the reciprocal space."""
    return [circuit_polynomial(c, matroid.size) for c in matroid.circuits()]


def product(polys: Iterable[SparsePoly], nvars: int) -> SparsePoly:
    out = SparsePoly.constant(nvars, 1)
    for p in polys:
        out = out * p
    return out
