"""JSON serialization for matrices and matrix families.

Formats:
  polynomial  -- list of [coefficient-string, [[gen, slot, exp], ...]]
  matrix      -- {"rows": r, "cols": c, "entries": [[poly, ...], ...]}
  family      -- {"field": descriptor, "n": n, "family": [matrix, ...]}
Field descriptors are {"type": "Fp", "p": ...} or {"type": "Q"}.
"""

from __future__ import annotations

import json

from .fields import field_from_descriptor
from .matrix import Mat
from .poly import Algebra, poly_from_json


class JsonIOError(ValueError):
    pass


def mat_to_json(mat: Mat) -> dict:
    return {
        "rows": mat.rows,
        "cols": mat.cols,
        "entries": [[e.to_json() for e in row] for row in mat.entries],
    }


def mat_from_json(ring, data) -> Mat:
    try:
        rows, cols = int(data["rows"]), int(data["cols"])
        entries = data["entries"]
        if len(entries) != rows or any(len(r) != cols for r in entries):
            raise JsonIOError("matrix shape does not match declared size")
        return Mat(ring, [[poly_from_json(ring, e) for e in row]
                          for row in entries])
    except (KeyError, TypeError, ValueError) as exc:
        raise JsonIOError(f"bad matrix JSON: {exc}") from exc


def _scan_layout(fam_data):
    """(number of generators, slot set) appearing in a family's monomials."""
    ngens, slots = 0, set()
    for m in fam_data:
        for row in m.get("entries", []):
            for poly in row:
                for _, mono in poly:
                    for g, s, _ in mono:
                        ngens = max(ngens, int(g) + 1)
                        slots.add(int(s))
    return ngens, slots


def family_to_json(field, mats) -> dict:
    return {
        "field": field.descriptor(),
        "n": mats[0].rows,
        "family": [mat_to_json(m) for m in mats],
    }


def family_from_json(data):
    """(field, list of Mat) from a family document; free algebra inferred."""
    try:
        field = field_from_descriptor(data["field"])
        n = int(data["n"])
        fam_data = data["family"]
        if not isinstance(fam_data, list) or not fam_data:
            raise JsonIOError("family must be a nonempty list")
        ngens, slots = _scan_layout(fam_data)
        gens = tuple(f"g{i}" for i in range(ngens))
        ring = Algebra(field, gens=gens).ring(tuple(sorted(slots)) or (0,), 0)
        mats = [mat_from_json(ring, m) for m in fam_data]
    except JsonIOError:
        raise
    except (KeyError, TypeError, ValueError) as exc:
        raise JsonIOError(f"bad family JSON: {exc}") from exc
    for m in mats:
        if m.rows != n or m.cols != n:
            raise JsonIOError("family members must be n x n")
    return field, mats


def load_document(path=None, stream=None):
    """Parse a JSON document from a path or a stream; JsonIOError on failure."""
    try:
        if path is not None:
            with open(path, "r", encoding="utf-8") as fh:
                return json.load(fh)
        return json.load(stream)
    except (OSError, json.JSONDecodeError) as exc:
        raise JsonIOError(f"cannot read JSON input: {exc}") from exc


def dump_document(doc, path=None, stream=None):
    text = json.dumps(doc, indent=1, sort_keys=True) + "\n"
    if path is not None:
        with open(path, "w", encoding="utf-8") as fh:
            fh.write(text)
    else:
        stream.write(text)


__all__ = ["JsonIOError", "mat_to_json", "mat_from_json", "family_to_json",
           "family_from_json", "load_document", "dump_document"]
