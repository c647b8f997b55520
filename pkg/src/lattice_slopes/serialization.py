"""Lattice JSON: ``{"name", "gram": [["p/q", ...], ...], "group_generators"}``."""

from __future__ import annotations

import json
from pathlib import Path

from . import exact_linalg as xl
from .corpus import CorpusEntry
from .lattice import Lattice

__all__ = ["SchemaError", "entry_from_json", "entry_to_json", "load_entry", "save_entry", "load_lattice"]


class SchemaError(ValueError):
    pass


def entry_from_json(data: dict) -> CorpusEntry:
    if not isinstance(data, dict) or "gram" not in data:
        raise SchemaError("lattice JSON needs a 'gram' field")
    gram = data["gram"]
    if not isinstance(gram, list) or not gram or not all(isinstance(r, list) for r in gram):
        raise SchemaError("'gram' must be a nonempty list of rows")
    try:
        G = xl.rat_matrix(gram)
    except (TypeError, ValueError, ZeroDivisionError) as exc:
        raise SchemaError(f"bad Gram entry: {exc}") from exc
    gens = data.get("group_generators")
    if gens is not None:
        try:
            gens = tuple(xl.int_matrix(g) for g in gens)
        except (TypeError, ValueError) as exc:
            raise SchemaError(f"bad generator entry: {exc}") from exc
    entry = CorpusEntry(str(data.get("name", "")), G, gens, str(data.get("provenance", "")))
    entry.lattice  # validates symmetry and positive definiteness
    return entry


def entry_to_json(entry: CorpusEntry) -> dict:
    out = {"name": entry.name, "gram": [[xl.format_rat(a) for a in row] for row in entry.gram]}
    if entry.generators is not None:
        out["group_generators"] = [[list(r) for r in g] for g in entry.generators]
    if entry.provenance:
        out["provenance"] = entry.provenance
    return out


def load_entry(path: str | Path) -> CorpusEntry:
    with open(path) as fh:
        try:
            data = json.load(fh)
        except json.JSONDecodeError as exc:
            raise SchemaError(f"{path}: invalid JSON ({exc})") from exc
    entry = entry_from_json(data)
    if not entry.name:
        entry = CorpusEntry(Path(path).stem, entry.gram, entry.generators, entry.provenance)
    return entry


def save_entry(entry: CorpusEntry, path: str | Path) -> None:
    with open(path, "w") as fh:
        json.dump(entry_to_json(entry), fh, indent=2)
        fh.write("\n")


def load_lattice(path: str | Path) -> Lattice:
    return load_entry(path).lattice
