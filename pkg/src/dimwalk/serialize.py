"""JSON interchange for series documents (schema version 1).

Layout::

    {"schema_version": 1, "kind": "spatial" | "spatiotemporal" | "power",
     "lambda": <number> | "hilbert", "dimension": <int or null>,
     "temporal": <bool, power documents only>, "scale": <number>,
     "coeffs": [<number> | [{"weight": w, "family": f, "params": {...}}, ...]],
     "provenance": [<walk log entries>]}

Floats are written with Python's shortest round-trip repr, so
``loads(dumps(s)) == s`` exactly.
"""
from __future__ import annotations

import json
import math
from pathlib import Path
from typing import Optional

from .errors import DocumentError
from .gegenbauer import GegenbauerBasis
from .series import AnySeries, PowerSeries, SpatialSeries, SpatioTemporalSeries
from .temporal import FAMILIES, Atom, TemporalPD

SCHEMA_VERSION = 1
KINDS = ("spatial", "spatiotemporal", "power")


def _atom_out(a: Atom) -> dict:
    return {"weight": a.weight, "family": a.family, "params": a.params_dict()}


def _temporal_out(p: TemporalPD) -> list:
    return [_atom_out(a) for a in p.atoms]


def to_document(s: AnySeries, provenance: Optional[list] = None) -> dict:
    if isinstance(s, SpatialSeries):
        doc = {"kind": "spatial", "lambda": s.basis.lam, "dimension": s.basis.dimension,
               "scale": 1.0, "coeffs": s.coefficient_list()}
    elif isinstance(s, SpatioTemporalSeries):
        doc = {"kind": "spatiotemporal", "lambda": s.basis.lam, "dimension": s.basis.dimension,
               "scale": s.scale, "coeffs": [_temporal_out(c) for c in s.coeffs]}
    elif isinstance(s, PowerSeries):
        coeffs = [_temporal_out(c) for c in s.coeffs] if s.temporal else s.coefficient_list()
        doc = {"kind": "power", "lambda": "hilbert", "dimension": None, "temporal": s.temporal,
               "scale": s.scale, "coeffs": coeffs}
    else:
        raise TypeError(f"cannot serialise {type(s).__name__}")
    doc = {"schema_version": SCHEMA_VERSION, **doc, "provenance": list(provenance or [])}
    return doc


def _number(value, what: str) -> float:
    if isinstance(value, bool) or not isinstance(value, (int, float)):
        raise DocumentError(f"{what} must be a number, got {value!r}")
    value = float(value)
    if not math.isfinite(value):
        raise DocumentError(f"{what} must be finite")
    return value


def _atom_in(obj, where: str) -> Atom:
    if not isinstance(obj, dict) or "family" not in obj or "weight" not in obj:
        raise DocumentError(f"{where}: atoms need 'weight' and 'family'")
    family = obj["family"]
    if family not in FAMILIES:
        raise DocumentError(f"{where}: unknown family {family!r}")
    params = obj.get("params", {}) or {}
    if not isinstance(params, dict):
        raise DocumentError(f"{where}: params must be an object")
    name = FAMILIES[family]
    if name is None:
        param = 0.0
    elif name not in params:
        raise DocumentError(f"{where}: {family} needs parameter {name!r}")
    else:
        param = _number(params[name], f"{where} {name}")
    try:
        return Atom(_number(obj["weight"], f"{where} weight"), family, param)
    except ValueError as exc:
        raise DocumentError(f"{where}: {exc}") from exc


def _temporal_in(obj, n: int) -> TemporalPD:
    if not isinstance(obj, list):
        raise DocumentError(f"coefficient {n} must be a list of atoms")
    return TemporalPD(tuple(_atom_in(a, f"coefficient {n}") for a in obj))


def from_document(doc: dict):
    """Parse a document into ``(series, provenance)``; raises ``DocumentError``."""
    if not isinstance(doc, dict):
        raise DocumentError("document must be a JSON object")
    if doc.get("schema_version") != SCHEMA_VERSION:
        raise DocumentError(f"unsupported schema_version {doc.get('schema_version')!r}")
    kind = doc.get("kind")
    if kind not in KINDS:
        raise DocumentError(f"kind must be one of {KINDS}")
    coeffs = doc.get("coeffs")
    if not isinstance(coeffs, list):
        raise DocumentError("coeffs must be a list")
    provenance = doc.get("provenance")
    if provenance is None:
        provenance = []
    if not isinstance(provenance, list):
        raise DocumentError("provenance must be a list")
    scale = _number(doc.get("scale", 1.0), "scale")
    try:
        if kind == "power":
            if doc.get("lambda", "hilbert") != "hilbert":
                raise DocumentError("power documents use lambda 'hilbert'")
            temporal = bool(doc.get("temporal", False))
            if temporal:
                series = PowerSeries(tuple(_temporal_in(c, n) for n, c in enumerate(coeffs)), True, scale)
            else:
                series = PowerSeries([_number(c, f"coefficient {n}") for n, c in enumerate(coeffs)], False, scale)
            return series, provenance
        lam = _number(doc.get("lambda"), "lambda")
        dim = doc.get("dimension")
        if dim is not None and (isinstance(dim, bool) or not isinstance(dim, int)):
            raise DocumentError("dimension must be an integer or null")
        basis = GegenbauerBasis(lam, dim)
        if kind == "spatial":
            if scale != 1.0:
                raise DocumentError("spatial documents carry scale 1")
            series = SpatialSeries(basis, [_number(c, f"coefficient {n}") for n, c in enumerate(coeffs)])
        else:
            series = SpatioTemporalSeries(basis, tuple(_temporal_in(c, n) for n, c in enumerate(coeffs)), scale)
    except DocumentError:
        raise
    except (ValueError, TypeError) as exc:
        raise DocumentError(str(exc)) from exc
    return series, provenance


def dumps(s: AnySeries, provenance: Optional[list] = None) -> str:
    return json.dumps(to_document(s, provenance), allow_nan=False, indent=1)


def loads(text: str):
    try:
        doc = json.loads(text)
    except json.JSONDecodeError as exc:
        raise DocumentError(f"invalid JSON: {exc}") from exc
    return from_document(doc)


def write(path, s: AnySeries, provenance: Optional[list] = None) -> None:
    Path(path).write_text(dumps(s, provenance) + "\n")


def read(path):
    try:
        text = Path(path).read_text()
    except OSError as exc:
        raise DocumentError(f"cannot read {path}: {exc}") from exc
    return loads(text)
