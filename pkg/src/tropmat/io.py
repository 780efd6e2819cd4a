"""JSON interchange. Sets are written as sorted arrays of 1-based integers."""

from __future__ import annotations

import json
from fractions import Fraction
from pathlib import Path
from typing import Any

from .axioms import AxiomReport, Tom
from .core import NdType, from_mask, full_mask, to_mask
from .realize import WeightMatrix
from .subdivision import MixedSubdivision, SubdivisionReport


class SchemaError(ValueError):
    """Input that parses as JSON but does not match the expected shape."""

    def __init__(self, field: str, message: str):
        super().__init__(f"{field}: {message}")
        self.field = field


def load_json(path: str | Path) -> Any:
    try:
        return json.loads(Path(path).read_text())
    except json.JSONDecodeError as exc:
        raise SchemaError(str(path), f"malformed JSON ({exc.msg} at line {exc.lineno})") from exc


def dumps(obj: Any) -> str:
    return json.dumps(obj, indent=2, sort_keys=True)


# --- field readers -------------------------------------------------------------


def _int_field(obj: dict, key: str, low: int = 1, high: int | None = None) -> int:
    if not isinstance(obj, dict):
        raise SchemaError("<root>", "expected a JSON object")
    if key not in obj:
        raise SchemaError(key, "missing")
    v = obj[key]
    if not isinstance(v, int) or isinstance(v, bool):
        raise SchemaError(key, "must be an integer")
    if v < low or (high is not None and v > high):
        raise SchemaError(key, f"out of range [{low}, {high if high is not None else '∞'}]")
    return v


def _subset(value: Any, d: int, where: str) -> int:
    if not isinstance(value, list) or not value:
        raise SchemaError(where, "must be a nonempty array of coordinates")
    for j in value:
        if not isinstance(j, int) or isinstance(j, bool) or not 1 <= j <= d:
            raise SchemaError(where, f"coordinate {j!r} outside 1..{d}")
    return to_mask(value)


def type_from_json(value: Any, n: int, d: int, where: str) -> NdType:
    if not isinstance(value, list) or len(value) != n:
        raise SchemaError(where, f"must be an array of {n} subsets")
    return NdType(d, tuple(_subset(e, d, f"{where}[{i}]") for i, e in enumerate(value)))


def type_to_json(A: NdType) -> list[list[int]]:
    return [list(from_mask(e)) for e in A.entries]


# --- TOM -------------------------------------------------------------------------


def tom_to_json(M: Tom) -> dict:
    out: dict[str, Any] = {"n": M.n, "d": M.d, "types": [type_to_json(A) for A in sorted(M.types)]}
    if M.labels is not None:
        out["labels"] = list(M.labels)
    return out


def tom_from_json(obj: Any) -> Tom:
    n = _int_field(obj, "n")
    d = _int_field(obj, "d", 1, 16)
    raw = obj.get("types")
    if not isinstance(raw, list):
        raise SchemaError("types", "must be an array of types")
    types = [type_from_json(t, n, d, f"types[{k}]") for k, t in enumerate(raw)]
    labels = obj.get("labels")
    if labels is not None:
        if not isinstance(labels, list) or len(labels) != d:
            raise SchemaError("labels", f"must be an array of {d} integers")
        labels = tuple(labels)
    return Tom.from_types(n, d, types, labels)


# --- weights ---------------------------------------------------------------------


def _rational(v: Any, where: str) -> Fraction:
    if isinstance(v, bool):
        raise SchemaError(where, "must be a rational")
    if isinstance(v, int):
        return Fraction(v)
    if isinstance(v, str):
        try:
            return Fraction(v.strip())
        except (ValueError, ZeroDivisionError) as exc:
            raise SchemaError(where, f"cannot parse {v!r} as a rational") from exc
    raise SchemaError(where, "must be an integer or a decimal / p/q string")


def fraction_str(x: Fraction) -> str:
    return str(x.numerator) if x.denominator == 1 else f"{x.numerator}/{x.denominator}"


def weights_from_json(obj: Any) -> WeightMatrix:
    n = _int_field(obj, "n")
    d = _int_field(obj, "d", 1, 16)
    rows = obj.get("w")
    if not isinstance(rows, list) or len(rows) != n:
        raise SchemaError("w", f"must be an array of {n} rows")
    out = []
    for i, row in enumerate(rows):
        if not isinstance(row, list) or len(row) != d:
            raise SchemaError(f"w[{i}]", f"must have {d} entries")
        out.append(tuple(_rational(v, f"w[{i}][{j}]") for j, v in enumerate(row)))
    return WeightMatrix(tuple(out))


def weights_to_json(W: WeightMatrix) -> dict:
    return {"n": W.n, "d": W.d, "w": [[fraction_str(x) for x in row] for row in W.rows]}


# --- subdivisions ------------------------------------------------------------------


def subdivision_from_json(obj: Any) -> MixedSubdivision:
    n = _int_field(obj, "n")
    d = _int_field(obj, "d", 1, 16)
    raw = obj.get("maximal_cells")
    if not isinstance(raw, list) or not raw:
        raise SchemaError("maximal_cells", "must be a nonempty array of types")
    cells = [type_from_json(t, n, d, f"maximal_cells[{k}]") for k, t in enumerate(raw)]
    return MixedSubdivision.of(n, d, cells)


def subdivision_to_json(S: MixedSubdivision) -> dict:
    return {"n": S.n, "d": S.d, "maximal_cells": [type_to_json(A) for A in sorted(S.maximal_cells)]}


# --- reports -----------------------------------------------------------------------


def jsonable(value: Any) -> Any:
    if isinstance(value, NdType):
        return type_to_json(value)
    if isinstance(value, Fraction):
        return fraction_str(value)
    if isinstance(value, dict):
        return {str(k): jsonable(v) for k, v in value.items()}
    if isinstance(value, (list, tuple, frozenset, set)):
        items = [jsonable(v) for v in value]
        return sorted(items) if isinstance(value, (set, frozenset)) else items
    return value


def axiom_report_to_json(reports: list[AxiomReport]) -> dict:
    return {
        "passed": all(r.passed for r in reports),
        "axioms": [{"axiom": r.axiom, "passed": r.passed, "witness": jsonable(r.witness)} for r in reports],
    }


def subdivision_report_to_json(rep: SubdivisionReport) -> dict:
    return {
        "passed": rep.passed,
        "volume": rep.volume,
        "failures": [{"kind": f.kind, "witness": jsonable(f.witness)} for f in rep.failures],
    }


def parse_type_arg(text: str, d: int) -> NdType:
    """Compact command-line notation ``12,3,13``."""
    A = NdType.parse(text, d)
    if any(e & ~full_mask(d) for e in A.entries):
        raise SchemaError("type", f"{text} uses coordinates outside 1..{d}")
    return A
