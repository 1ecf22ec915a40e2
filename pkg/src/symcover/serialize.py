"""Versioned JSON artifacts for covers and circuits.

One self-describing schema for both cover kinds: the file carries the
modulus with its factorization and the construction metadata, so a
verifier never has to re-derive parameters from flags.  Dumping is
deterministic (sorted keys, sorted index lists, fixed indentation):
identical inputs produce byte-identical files.
"""

from __future__ import annotations

import json
from pathlib import Path

from .zmod import Modulus
from .cover2d import Rectangle, WeightedRectCover
from .coverkd import Box, WeightedBoxCover
from .circuit import (
    Gate,
    LinearForm,
    SigmaPiSigmaCircuit,
    VariableSpace,
)

SCHEMA_VERSION = 1


class SchemaError(ValueError):
    """Raised when a JSON artifact does not match the expected shape."""


def _mod_fields(mod: Modulus) -> dict:
    return {"m": mod.m, "factors": [list(f) for f in mod.factors]}


def _mod_from(data: dict) -> Modulus:
    return Modulus(data["m"], tuple((p, e) for p, e in data["factors"]))


def cover_to_dict(cover: WeightedRectCover | WeightedBoxCover) -> dict:
    if cover.mod is None:
        raise ValueError("only covers with a modulus are serialized")
    if isinstance(cover, WeightedRectCover):
        kind, k = "rect", 2
        parts_of = lambda item: [sorted(item.rows), sorted(item.cols)]
    else:
        kind, k = "box", cover.k
        parts_of = lambda item: [sorted(p) for p in item.parts]
    return {
        "schema_version": SCHEMA_VERSION,
        "kind": kind,
        "n": cover.n,
        "k": k,
        **_mod_fields(cover.mod),
        "items": [
            {"parts": parts_of(shape), "weight": w} for shape, w in cover.items
        ],
        "meta": cover.meta,
    }


def cover_from_dict(data: dict) -> WeightedRectCover | WeightedBoxCover:
    try:
        if data["schema_version"] != SCHEMA_VERSION:
            raise SchemaError(f"unsupported schema_version {data['schema_version']}")
        mod = _mod_from(data)
        kind = data["kind"]
        items_raw = [(d["parts"], d["weight"]) for d in data["items"]]
        if kind == "rect":
            items = [
                (Rectangle(frozenset(p[0]), frozenset(p[1])), w)
                for p, w in items_raw
            ]
            return WeightedRectCover(data["n"], mod, items, data.get("meta", {}))
        if kind == "box":
            boxes = [
                (Box(tuple(frozenset(part) for part in p)), w) for p, w in items_raw
            ]
            return WeightedBoxCover(
                data["n"], data["k"], mod, boxes, data.get("meta", {})
            )
        raise SchemaError(f"unknown cover kind {kind!r}")
    except (KeyError, TypeError) as exc:
        raise SchemaError(f"malformed cover artifact: {exc}") from exc


def circuit_to_dict(c: SigmaPiSigmaCircuit) -> dict:
    return {
        "schema_version": SCHEMA_VERSION,
        "kind": "circuit",
        "n": c.vars.n,
        "groups": list(c.vars.groups),
        **_mod_fields(c.mod),
        "gates": [
            {
                "repetition": g.repetition,
                "forms": [
                    [[grp, idx, coef] for (grp, idx), coef in sorted(f.coeffs.items())]
                    for f in g.forms
                ],
            }
            for g in c.gates
        ],
    }


def circuit_from_dict(data: dict) -> SigmaPiSigmaCircuit:
    try:
        if data["schema_version"] != SCHEMA_VERSION:
            raise SchemaError(f"unsupported schema_version {data['schema_version']}")
        if data["kind"] != "circuit":
            raise SchemaError(f"not a circuit artifact: kind {data['kind']!r}")
        mod = _mod_from(data)
        space = VariableSpace(tuple(data["groups"]), data["n"])
        gates = []
        for g in data["gates"]:
            forms = [
                LinearForm({(grp, idx): coef for grp, idx, coef in triples})
                for triples in g["forms"]
            ]
            gates.append(Gate(forms, repetition=g["repetition"]))
        return SigmaPiSigmaCircuit(mod, space, gates)
    except (KeyError, TypeError, ValueError) as exc:
        if isinstance(exc, SchemaError):
            raise
        raise SchemaError(f"malformed circuit artifact: {exc}") from exc


def dump(data: dict, path: str | Path) -> None:
    Path(path).write_text(json.dumps(data, sort_keys=True, indent=2) + "\n")


def load(path: str | Path) -> dict:
    try:
        return json.loads(Path(path).read_text())
    except json.JSONDecodeError as exc:
        raise SchemaError(f"not valid JSON: {path}: {exc}") from exc
