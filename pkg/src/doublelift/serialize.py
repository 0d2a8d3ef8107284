"""Canonical JSON serialization for every structure kind.

Every file is a JSON object with a top-level "kind" tag.  Composition and
tensor tables are stored as arrays of [lhs, rhs, result] triples sorted
lexicographically, and dumps always emits sorted keys, so the canonical
form of a value is unique and round-trips byte for byte.
"""

from __future__ import annotations

import json
from typing import Any, Mapping

from .doublecat import DoubleCategory, HKey
from .errors import StructureError
from .fincat import FiniteCategory, FunctorData, Monoid, StrictMonoidalCategory
from .grothendieck import Precosheaf
from .twocat import DecoratedBicategory, StrictBicategory


def _triples(table: Mapping[tuple[int, int], int]) -> list[list[int]]:
    return sorted([a, b, v] for (a, b), v in table.items())


def _table(triples) -> dict[tuple[int, int], int]:
    return {(a, b): v for a, b, v in triples}


def _pairs(mapping: Mapping[int, int]) -> list[list[int]]:
    return sorted([k, v] for k, v in mapping.items())


def _mapping(pairs) -> dict[int, int]:
    return {k: v for k, v in pairs}


def to_obj(value) -> dict[str, Any]:
    if isinstance(value, Monoid):
        out: dict[str, Any] = {
            "kind": "monoid",
            "table": [list(row) for row in value.table],
            "unit": value.unit,
        }
        if value.names:
            out["names"] = list(value.names)
        return out
    if isinstance(value, FiniteCategory):
        out = {
            "kind": "category",
            "n_objects": value.n_objects,
            "dom": list(value.dom),
            "cod": list(value.cod),
            "identity": list(value.identity),
            "composition": _triples(value.composition),
        }
        if value.object_names:
            out["object_names"] = list(value.object_names)
        if value.morphism_names:
            out["morphism_names"] = list(value.morphism_names)
        return out
    if isinstance(value, StrictMonoidalCategory):
        return {
            "kind": "monoidal-category",
            "base": to_obj(value.base),
            "unit_obj": value.unit_obj,
            "tensor_obj": _triples(value.tensor_obj),
            "tensor_mor": _triples(value.tensor_mor),
        }
    if isinstance(value, StrictBicategory):
        out = {
            "kind": "bicategory",
            "n0": value.n0,
            "dom0": list(value.dom0),
            "cod0": list(value.cod0),
            "dom1": list(value.dom1),
            "cod1": list(value.cod1),
            "id1": list(value.id1),
            "id2": list(value.id2),
            "vcomp": _triples(value.vcomp),
            "hcomp1": _triples(value.hcomp1),
            "hcomp2": _triples(value.hcomp2),
        }
        if value.names1:
            out["names1"] = list(value.names1)
        if value.names2:
            out["names2"] = list(value.names2)
        return out
    if isinstance(value, DecoratedBicategory):
        return {
            "kind": "decorated-bicategory",
            "decoration": to_obj(value.decoration),
            "bicat": to_obj(value.bicat),
        }
    if isinstance(value, Precosheaf):
        return {
            "kind": "precosheaf",
            "dec": to_obj(value.dec),
            "on_cells1": [_pairs(m) for m in value.on_cells1],
            "on_cells2": [_pairs(m) for m in value.on_cells2],
        }
    if isinstance(value, DoubleCategory):
        return {
            "kind": "double-category",
            "c0": to_obj(value.c0),
            "c1": to_obj(value.c1),
            "src": [list(value.src.object_map), list(value.src.morphism_map)],
            "tgt": [list(value.tgt.object_map), list(value.tgt.morphism_map)],
            "hid": [list(value.hid.object_map), list(value.hid.morphism_map)],
            "hcomp": sorted([kind, u, v, w] for (kind, u, v), w in value.hcomp.items()),
        }
    raise StructureError("unknown-kind", type(value).__name__)


def from_obj(obj: dict[str, Any]):
    kind = obj.get("kind")
    if kind == "monoid":
        names = tuple(obj["names"]) if "names" in obj else None
        return Monoid(tuple(tuple(r) for r in obj["table"]), obj["unit"], names)
    if kind == "category":
        return FiniteCategory(
            obj["n_objects"], tuple(obj["dom"]), tuple(obj["cod"]),
            tuple(obj["identity"]), _table(obj["composition"]),
            tuple(obj["object_names"]) if "object_names" in obj else None,
            tuple(obj["morphism_names"]) if "morphism_names" in obj else None,
        )
    if kind == "monoidal-category":
        return StrictMonoidalCategory(
            from_obj(obj["base"]), obj["unit_obj"],
            _table(obj["tensor_obj"]), _table(obj["tensor_mor"]),
        )
    if kind == "bicategory":
        return StrictBicategory(
            obj["n0"], tuple(obj["dom0"]), tuple(obj["cod0"]),
            tuple(obj["dom1"]), tuple(obj["cod1"]),
            tuple(obj["id1"]), tuple(obj["id2"]),
            _table(obj["vcomp"]), _table(obj["hcomp1"]), _table(obj["hcomp2"]),
            tuple(obj["names1"]) if "names1" in obj else None,
            tuple(obj["names2"]) if "names2" in obj else None,
        )
    if kind == "decorated-bicategory":
        return DecoratedBicategory(from_obj(obj["decoration"]), from_obj(obj["bicat"]))
    if kind == "precosheaf":
        return Precosheaf(
            from_obj(obj["dec"]),
            tuple(_mapping(m) for m in obj["on_cells1"]),
            tuple(_mapping(m) for m in obj["on_cells2"]),
        )
    if kind == "double-category":
        c0 = from_obj(obj["c0"])
        c1 = from_obj(obj["c1"])
        src = FunctorData(c1, c0, tuple(obj["src"][0]), tuple(obj["src"][1]))
        tgt = FunctorData(c1, c0, tuple(obj["tgt"][0]), tuple(obj["tgt"][1]))
        hid = FunctorData(c0, c1, tuple(obj["hid"][0]), tuple(obj["hid"][1]))
        hcomp: dict[HKey, int] = {(k, u, v): w for k, u, v, w in obj["hcomp"]}
        return DoubleCategory(c0, c1, src, tgt, hid, hcomp)
    raise StructureError("unknown-kind", repr(kind))


def dumps(value) -> str:
    return json.dumps(to_obj(value), sort_keys=True, indent=2) + "\n"


def loads(text: str):
    try:
        obj = json.loads(text)
    except json.JSONDecodeError as exc:
        raise StructureError("parse-error", f"line {exc.lineno}, column {exc.colno}: {exc.msg}")
    if not isinstance(obj, dict):
        raise StructureError("parse-error", "top level must be an object")
    return from_obj(obj)


def dump(value, path: str) -> None:
    with open(path, "w") as fh:
        fh.write(dumps(value))


def load(path: str):
    with open(path) as fh:
        return loads(fh.read())
