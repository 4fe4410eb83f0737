"""JSON algebra files.

    {"name": "H(1)", "dim": 3, "field": {"type": "Q"},
     "brackets": [{"i": 1, "j": 2, "coeffs": [[3, "1"]]}]}

Indices are 1-based with ``i < j``; values are exact strings ("-3/2") or
integers.  Unknown keys are rejected.
"""
from __future__ import annotations

import json
from fractions import Fraction
from pathlib import Path

from . import catalog
from .lie import LieAlgebra, StructureError
from .linalg import QQ, FieldSpec, GF

SCHEMA_VERSION = 1

_TOP_KEYS = {"name", "dim", "field", "brackets", "labels"}
_BRACKET_KEYS = {"i", "j", "coeffs"}


class AlgebraFileError(ValueError):
    pass


def field_to_json(f: FieldSpec) -> dict:
    return {"type": "Q"} if f.kind == "Q" else {"type": "Fp", "p": f.characteristic}


def field_from_json(doc) -> FieldSpec:
    if not isinstance(doc, dict) or "type" not in doc:
        raise AlgebraFileError("field must be an object with a 'type'")
    extra = set(doc) - {"type", "p"}
    if extra:
        raise AlgebraFileError(f"unknown field keys {sorted(extra)}")
    if doc["type"] == "Q":
        if "p" in doc:
            raise AlgebraFileError("Q takes no 'p'")
        return QQ
    if doc["type"] == "Fp":
        try:
            return GF(int(doc["p"]))
        except (KeyError, ValueError) as e:
            raise AlgebraFileError(f"bad prime field: {e}") from None
    raise AlgebraFileError(f"unknown field type {doc['type']!r}")


def _value(f: FieldSpec, raw):
    if isinstance(raw, bool) or isinstance(raw, float):
        raise AlgebraFileError(f"coefficient {raw!r} is not exact; use an int or a string")
    if isinstance(raw, str):
        try:
            return f(Fraction(raw.replace("−", "-")))
        except (ValueError, ZeroDivisionError) as e:
            raise AlgebraFileError(f"bad coefficient {raw!r}: {e}") from None
    if isinstance(raw, int):
        return f(raw)
    raise AlgebraFileError(f"bad coefficient {raw!r}")


def algebra_from_json(doc: dict) -> LieAlgebra:
    if not isinstance(doc, dict):
        raise AlgebraFileError("algebra file must hold a JSON object")
    extra = set(doc) - _TOP_KEYS
    if extra:
        raise AlgebraFileError(f"unknown keys {sorted(extra)}")
    for k in ("name", "dim", "field", "brackets"):
        if k not in doc:
            raise AlgebraFileError(f"missing key {k!r}")
    n = doc["dim"]
    if not isinstance(n, int) or isinstance(n, bool) or n < 0:
        raise AlgebraFileError("dim must be a nonnegative integer")
    f = field_from_json(doc["field"])
    brackets = {}
    for entry in doc["brackets"]:
        if not isinstance(entry, dict):
            raise AlgebraFileError("each bracket must be an object")
        extra = set(entry) - _BRACKET_KEYS
        if extra or set(entry) != _BRACKET_KEYS:
            raise AlgebraFileError(f"bracket entries need exactly i, j, coeffs; got {sorted(entry)}")
        i, j = entry["i"], entry["j"]
        if not (isinstance(i, int) and isinstance(j, int)):
            raise AlgebraFileError("bracket indices must be integers")
        if not (1 <= i < j <= n):
            raise AlgebraFileError(f"bracket ({i}, {j}) needs 1 <= i < j <= {n}")
        if (i, j) in brackets:
            raise AlgebraFileError(f"bracket ({i}, {j}) listed twice")
        coeffs = {}
        for pair in entry["coeffs"]:
            if not (isinstance(pair, list) and len(pair) == 2 and isinstance(pair[0], int)):
                raise AlgebraFileError(f"coefficient entries are [k, value], got {pair!r}")
            k, raw = pair
            if not 1 <= k <= n:
                raise AlgebraFileError(f"output index {k} out of range")
            coeffs[k] = f.norm(coeffs.get(k, f.zero) + _value(f, raw))
        brackets[(i, j)] = coeffs
    labels = doc.get("labels")
    if labels is not None and (len(labels) != n or not all(isinstance(s, str) for s in labels)):
        raise AlgebraFileError("labels must be a list of dim strings")
    try:
        return LieAlgebra.from_brackets(str(doc["name"]), n, brackets, f, labels, one_based=True)
    except StructureError as e:
        raise AlgebraFileError(str(e)) from None


def algebra_to_json(L: LieAlgebra) -> dict:
    doc = {
        "name": L.name,
        "dim": L.dim,
        "field": field_to_json(L.field),
        "brackets": [
            {"i": i + 1, "j": j + 1, "coeffs": [[k + 1, str(c)] for k, c in coeffs]}
            for (i, j), coeffs in sorted(L.sc.items())
        ],
    }
    if L.labels:
        doc["labels"] = list(L.labels)
    return doc


def load_algebra(source: str, field: FieldSpec | None = None) -> LieAlgebra:
    """Read ``catalog:KEY`` or a JSON file; ``field`` re-reads a rational algebra mod p."""
    if source.startswith("catalog:"):
        return catalog.get(source, field or QQ)
    try:
        doc = json.loads(Path(source).read_text())
    except json.JSONDecodeError as e:
        raise AlgebraFileError(f"{source}: invalid JSON ({e})") from None
    L = algebra_from_json(doc)
    if field is not None and field != L.field:
        L = L.over(field)
    return L


def dumps(doc) -> str:
    return json.dumps(doc, indent=2, sort_keys=True) + "\n"
