"""File formats: matrices (JSON or CSV), polynomials, multiplicity maps, fixtures."""

from __future__ import annotations

import csv
import io
import json
from importlib import resources
from pathlib import Path

from .exact import RationalMatrix, parse_rational
from .poly import SparsePoly


def fixture_path(name: str) -> Path:
    if not name.endswith(".json"):
        name += ".json"
    return Path(str(resources.files("matroiddet") / "fixtures" / name))


def load_fixture(name: str) -> dict:
    with open(fixture_path(name)) as f:
        return json.load(f)


def matrix_from_json(data: dict) -> RationalMatrix:
    rows = [[parse_rational(x) for x in r] for r in data["entries"]]
    r, c = int(data["rows"]), int(data["cols"])
    if len(rows) != r or any(len(row) != c for row in rows):
        raise ValueError(f"entries do not match the declared shape {r}x{c}")
    return RationalMatrix.from_rows(rows, c)


def matrix_to_json(A: RationalMatrix) -> dict:
    return {"rows": A.rows, "cols": A.cols, "entries": [[str(x) for x in r] for r in A.to_rows()]}


def matrix_from_csv(text: str) -> RationalMatrix:
    rows = [[parse_rational(x) for x in r] for r in csv.reader(io.StringIO(text)) if r and any(x.strip() for x in r)]
    if not rows:
        raise ValueError("empty matrix")
    return RationalMatrix.from_rows(rows)


def load_matrix(path) -> RationalMatrix:
    text = Path(path).read_text()
    if text.lstrip().startswith("{"):
        return matrix_from_json(json.loads(text))
    return matrix_from_csv(text)


def load_poly(path) -> SparsePoly:
    return SparsePoly.from_json(json.loads(Path(path).read_text()))


def multiplicities_from_json(data) -> dict[frozenset, int]:
    items = data["multiplicities"] if isinstance(data, dict) else data
    out = {}
    for item in items:
        F = frozenset(int(i) for i in item["flat"])
        m = int(item["multiplicity"])
        if m <= 0:
            raise ValueError(f"multiplicity of {sorted(F)} must be positive")
        out[F] = m
    return out


def load_multiplicities(path) -> dict[frozenset, int]:
    return multiplicities_from_json(json.loads(Path(path).read_text()))
