"""JSON formats for measures, disk functions and characteristic pairs.

Complex numbers are ``[re, im]`` pairs, angles are radians. Floats are written
with Python's shortest round-trip representation, so output is byte-stable and
re-parses to identical doubles.
"""
from __future__ import annotations

import json
from typing import Any

import jsonschema
import numpy as np

from .errors import InvalidInput
from .levy import CharacteristicPair
from .measure import (AtomicMeasure, CircleMeasure, FiniteCircleMeasure, MomentMeasure,
                      StructuredMeasure)
from .series import TruncatedSeries
from .transform import (BlaschkeF, ConstantF, ExpHerglotzF, HerglotzData, SeriesF, StructuredF,
                        ZeroF)

_num = {"type": "number"}
_cplx = {"type": "array", "items": _num, "minItems": 2, "maxItems": 2}
_cplx_list = {"type": "array", "items": _cplx}
_atoms = {
    "type": "array",
    "items": {
        "type": "object",
        "properties": {"angle": _num, "weight": {"type": "number", "minimum": 0}},
        "required": ["angle", "weight"],
        "additionalProperties": False,
    },
}
RHO_SCHEMA = {
    "type": "object",
    "properties": {
        "mass": {"type": "number", "minimum": 0},
        "r": _cplx_list,
        "atoms": {"anyOf": [_atoms, {"type": "null"}]},
    },
    "required": ["mass"],
}
F_SCHEMAS = {
    "zero": {"type": "object", "properties": {"kind": {"const": "zero"}}, "required": ["kind"]},
    "constant": {"type": "object", "properties": {"kind": {"const": "constant"}, "c": _cplx},
                 "required": ["kind", "c"]},
    "blaschke": {"type": "object",
         "properties": {
             "kind": {"const": "blaschke"},
             "p": {"type": "integer", "minimum": 0},
             "factors": {"type": "array", "items": {
                 "type": "object",
                 "properties": {"alpha": _cplx, "mult": {"type": "integer", "minimum": 1}},
                 "required": ["alpha"]}},
             "phase": _cplx},
                 "required": ["kind"]},
    "expherglotz": {"type": "object",
                    "properties": {"kind": {"const": "expherglotz"}, "b": _num, "rho": RHO_SCHEMA},
                    "required": ["kind", "b", "rho"]},
    "series": {"type": "object",
               "properties": {"kind": {"const": "series"}, "coeffs": {**_cplx_list, "minItems": 1}},
               "required": ["kind", "coeffs"]},
}
MEASURE_SCHEMAS = {
    "atomic": {"type": "object",
               "properties": {"type": {"const": "atomic"}, "atoms": {**_atoms, "minItems": 1}},
               "required": ["type", "atoms"]},
    "moments": {"type": "object", "properties": {"type": {"const": "moments"}, "m": _cplx_list},
                "required": ["type", "m"]},
    "structured": {"type": "object", "properties": {"type": {"const": "structured"}, "f": {"type": "object"}},
                   "required": ["type", "f"]},
}
PAIR_SCHEMA = {
    "type": "object",
    "properties": {"b": _num, "rho": RHO_SCHEMA},
    "required": ["b", "rho"],
}


def _check(doc: Any, schema: dict, what: str) -> None:
    try:
        jsonschema.validate(doc, schema)
    except jsonschema.ValidationError as exc:
        best = jsonschema.exceptions.best_match([exc]) or exc
        where = "/".join(str(p) for p in best.absolute_path) or "<root>"
        raise InvalidInput(f"invalid {what} JSON at {where}: {best.message}") from None


def _check_tagged(doc: Any, tag: str, schemas: dict, what: str) -> str:
    if not isinstance(doc, dict):
        raise InvalidInput(f"invalid {what} JSON: expected an object, got {type(doc).__name__}")
    value = doc.get(tag)
    if value not in schemas:
        raise InvalidInput(f"invalid {what} JSON: '{tag}' must be one of {sorted(schemas)}, got {value!r}")
    _check(doc, schemas[value], f"{value} {what}")
    return value


def cplx(z: complex) -> list[float]:
    z = complex(z)
    return [float(z.real), float(z.imag)]


def cplx_list(a) -> list[list[float]]:
    return [cplx(z) for z in np.asarray(a, dtype=complex)]


def _to_cplx(pair) -> complex:
    return complex(pair[0], pair[1])


def _to_cplx_array(items) -> np.ndarray:
    return np.array([_to_cplx(p) for p in items], dtype=complex)


# -- encode --------------------------------------------------------------------

def rho_to_json(rho: FiniteCircleMeasure) -> dict:
    atoms = None
    if rho.atoms is not None:
        atoms = [{"angle": float(a), "weight": float(w)} for a, w in zip(*rho.atoms)]
    return {"mass": float(rho.mass), "r": cplx_list(rho.r), "atoms": atoms}


def F_to_json(f: StructuredF) -> dict:
    if isinstance(f, ZeroF):
        return {"kind": "zero"}
    if isinstance(f, ConstantF):
        return {"kind": "constant", "c": cplx(f.c)}
    if isinstance(f, BlaschkeF):
        return {"kind": "blaschke", "p": f.p,
                "factors": [{"alpha": cplx(a), "mult": m} for a, m in f.factors],
                "phase": cplx(f.phase)}
    if isinstance(f, ExpHerglotzF):
        return {"kind": "expherglotz", "b": float(f.b), "rho": rho_to_json(f.rho)}
    if isinstance(f, SeriesF):
        return {"kind": "series", "coeffs": cplx_list(f.s.coeffs)}
    raise TypeError(f"cannot encode {type(f).__name__}")


def measure_to_json(mu: CircleMeasure) -> dict:
    if isinstance(mu, AtomicMeasure):
        return {"type": "atomic",
                "atoms": [{"angle": float(a), "weight": float(w)} for a, w in zip(mu.angles, mu.weights)]}
    if isinstance(mu, MomentMeasure):
        return {"type": "moments", "m": cplx_list(mu.m)}
    if isinstance(mu, StructuredMeasure):
        return {"type": "structured", "f": F_to_json(mu.f)}
    raise TypeError(f"cannot encode {type(mu).__name__}")


def pair_to_json(pair: HerglotzData) -> dict:
    return {"b": float(pair.b), "rho": rho_to_json(pair.rho)}


def dumps(doc: Any) -> str:
    return json.dumps(doc, sort_keys=True, allow_nan=False) + "\n"


# -- decode --------------------------------------------------------------------

def rho_from_json(doc: dict) -> FiniteCircleMeasure:
    _check(doc, RHO_SCHEMA, "rho")
    atoms = doc.get("atoms")
    if atoms:
        ang = [a["angle"] for a in atoms]
        wt = [a["weight"] for a in atoms]
        K = len(doc.get("r", []))
        rho = FiniteCircleMeasure.from_atoms(ang, wt, K)
        if abs(rho.mass - doc["mass"]) > 1e-10:
            raise InvalidInput(f"rho mass {doc['mass']} disagrees with its atoms ({rho.mass})")
        return rho
    return FiniteCircleMeasure(doc["mass"], _to_cplx_array(doc.get("r", [])))


def F_from_json(doc: dict) -> StructuredF:
    kind = _check_tagged(doc, "kind", F_SCHEMAS, "F")
    if kind == "zero":
        return ZeroF()
    if kind == "constant":
        return ConstantF(_to_cplx(doc["c"]))
    if kind == "blaschke":
        factors = tuple((_to_cplx(f["alpha"]), f.get("mult", 1)) for f in doc.get("factors", []))
        return BlaschkeF(doc.get("p", 0), factors, _to_cplx(doc.get("phase", [1.0, 0.0])))
    if kind == "expherglotz":
        return ExpHerglotzF(doc["b"], rho_from_json(doc["rho"]))
    return SeriesF(TruncatedSeries(_to_cplx_array(doc["coeffs"])))


def measure_from_json(doc: dict) -> CircleMeasure:
    kind = _check_tagged(doc, "type", MEASURE_SCHEMAS, "measure")
    if kind == "atomic":
        return AtomicMeasure([a["angle"] for a in doc["atoms"]], [a["weight"] for a in doc["atoms"]])
    if kind == "moments":
        return MomentMeasure(_to_cplx_array(doc["m"]))
    return StructuredMeasure(F_from_json(doc["f"]))


def pair_from_json(doc: dict) -> CharacteristicPair:
    _check(doc, PAIR_SCHEMA, "characteristic pair")
    return CharacteristicPair(doc["b"], rho_from_json(doc["rho"]))


def loads(text: str) -> Any:
    try:
        return json.loads(text)
    except json.JSONDecodeError as exc:
        raise InvalidInput(f"not valid JSON: {exc}") from None
