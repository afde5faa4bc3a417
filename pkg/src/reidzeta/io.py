"""JSON/CSV readers and writers for algebras, matrices, graphs and Cayley tables."""
from __future__ import annotations

import csv
import io
import json
import sys
from fractions import Fraction
from pathlib import Path
from typing import Any

from .exact import RatMatrix, rat_from_str
from .families import Graph
from .nilpotent import NilAlgebra
from .oracle import FiniteEndo, FiniteGroup


class SchemaError(ValueError):
    pass


def read_text(path: str) -> str:
    if path == "-":
        return sys.stdin.read()
    try:
        return Path(path).read_text()
    except OSError as exc:
        raise SchemaError(f"{path}: {exc.strerror}") from exc


def load_json(path: str) -> Any:
    text = read_text(path)
    try:
        return json.loads(text)
    except json.JSONDecodeError as exc:
        raise SchemaError(f"{path}: invalid JSON at line {exc.lineno} column {exc.colno}: "
                          f"{exc.msg}") from exc


def _rat(value, where: str) -> Fraction:
    try:
        return rat_from_str(value)
    except (ValueError, ZeroDivisionError) as exc:
        raise SchemaError(f"{where}: {value!r} is not a rational") from exc


def _require(data: dict, key: str, where: str):
    if not isinstance(data, dict):
        raise SchemaError(f"{where}: expected a JSON object")
    if key not in data:
        raise SchemaError(f"{where}: missing key {key!r}")
    return data[key]


def algebra_from_json(data: Any, where: str = "algebra") -> NilAlgebra:
    dim = _require(data, "dim", where)
    if not isinstance(dim, int) or isinstance(dim, bool) or dim < 0:
        raise SchemaError(f"{where}.dim: expected a non-negative integer")
    basis = data.get("basis") or [f"e{i}" for i in range(1, dim + 1)]
    if len(basis) != dim:
        raise SchemaError(f"{where}.basis: {len(basis)} names for dimension {dim}")
    raw = data.get("brackets", {})
    if not isinstance(raw, dict):
        raise SchemaError(f"{where}.brackets: expected an object keyed by \"i,j\"")
    brackets = {}
    for key, vec in raw.items():
        ctx = f"{where}.brackets[{key!r}]"
        try:
            i, j = (int(x) for x in key.split(","))
        except ValueError as exc:
            raise SchemaError(f"{ctx}: key must look like \"i,j\"") from exc
        if not 1 <= i < j <= dim:
            raise SchemaError(f"{ctx}: need 1 <= i < j <= {dim}")
        if not isinstance(vec, list) or len(vec) != dim:
            raise SchemaError(f"{ctx}: expected {dim} coefficients")
        brackets[(i - 1, j - 1)] = {k: _rat(c, f"{ctx}[{k}]") for k, c in enumerate(vec)}
    meta = data.get("metadata") or {}
    family = meta.get("family", "custom")
    params = {k: v for k, v in meta.items() if k != "family"}
    return NilAlgebra(dim, tuple(basis), brackets, family, params)


def matrix_from_json(data: Any, where: str = "matrix") -> RatMatrix:
    rows = _require(data, "matrix", where) if isinstance(data, dict) else data
    if not isinstance(rows, list) or not all(isinstance(r, list) for r in rows):
        raise SchemaError(f"{where}: expected a list of rows")
    if rows and any(len(r) != len(rows[0]) for r in rows):
        raise SchemaError(f"{where}: rows have different lengths")
    return RatMatrix([[_rat(c, f"{where}[{i}][{j}]") for j, c in enumerate(r)]
                      for i, r in enumerate(rows)])


def matrix_to_json(m: RatMatrix) -> dict:
    return {"matrix": m.to_json()}


def graph_from_json(data: Any, where: str = "graph") -> Graph:
    n = _require(data, "n", where)
    edges = data.get("edges", [])
    try:
        return Graph(int(n), [tuple(e) for e in edges])
    except (TypeError, ValueError) as exc:
        raise SchemaError(f"{where}: {exc}") from exc


def cayley_from_text(text: str, where: str) -> FiniteGroup:
    """JSON {"order", "identity", "table"} or CSV rows of 0-based indices."""
    stripped = text.lstrip()
    try:
        if stripped.startswith("{"):
            data = json.loads(text)
            return FiniteGroup.from_json(data)
        rows = [list(map(int, r)) for r in csv.reader(io.StringIO(text)) if r]
        return FiniteGroup(len(rows), tuple(tuple(r) for r in rows), 0)
    except (KeyError, ValueError, TypeError) as exc:
        raise SchemaError(f"{where}: {exc}") from exc


def endo_from_json(data: Any, group: FiniteGroup, where: str = "endo") -> FiniteEndo:
    images = _require(data, "images", where)
    try:
        return FiniteEndo(group, tuple(int(x) for x in images))
    except (ValueError, TypeError) as exc:
        raise SchemaError(f"{where}: {exc}") from exc


def dump(data: Any) -> str:
    return json.dumps(data, indent=2, sort_keys=False) + "\n"


__all__ = [
    "SchemaError", "algebra_from_json", "cayley_from_text", "dump", "endo_from_json",
    "graph_from_json", "load_json", "matrix_from_json", "matrix_to_json", "read_text",
]
