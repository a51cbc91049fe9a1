"""Polytope file format: canonical JSON with exact coordinates.

Coordinates are integers or "p/q" strings, never floats.  Facets are
optional on input (recomputed under the enumeration guard when absent)
and always written on output, with members and facet lists sorted, so
write -> read -> write is byte-identical.
"""

from __future__ import annotations

import json
from fractions import Fraction
from typing import Optional

from .errors import InvalidInputError
from .linalg import Vec
from .polytope import Polytope, validate

FORMAT_VERSION = "1"


def _coord_to_json(x: Fraction):
    if x.denominator == 1:
        return int(x)
    return f"{x.numerator}/{x.denominator}"


def _coord_from_json(x) -> Fraction:
    if isinstance(x, bool) or isinstance(x, float):
        raise InvalidInputError(f"coordinates must be exact (int or 'p/q'), got {x!r}")
    if isinstance(x, int):
        return Fraction(x)
    if isinstance(x, str):
        try:
            return Fraction(x)
        except (ValueError, ZeroDivisionError) as exc:
            raise InvalidInputError(f"bad coordinate {x!r}: {exc}") from exc
    raise InvalidInputError(f"bad coordinate {x!r}")


def polytope_to_dict(p: Polytope) -> dict:
    out = {
        "format_version": FORMAT_VERSION,
        "dimension": p.dim,
        "vertices": [[_coord_to_json(c) for c in v] for v in p.vertices],
        "facets": [list(f) for f in p.facets],
    }
    if p.name is not None:
        out["name"] = p.name
    return out


def polytope_from_dict(data: dict) -> Polytope:
    if not isinstance(data, dict):
        raise InvalidInputError("polytope file must be a JSON object")
    if data.get("format_version") != FORMAT_VERSION:
        raise InvalidInputError(
            f"unsupported format_version {data.get('format_version')!r}"
        )
    dim = data.get("dimension")
    if not isinstance(dim, int) or isinstance(dim, bool) or dim < 1:
        raise InvalidInputError("dimension must be a positive integer")
    raw_vertices = data.get("vertices")
    if not isinstance(raw_vertices, list) or not raw_vertices:
        raise InvalidInputError("vertices must be a nonempty list")
    vertices = []
    for row in raw_vertices:
        if not isinstance(row, list) or len(row) != dim:
            raise InvalidInputError(f"each vertex needs {dim} coordinates")
        vertices.append(Vec(_coord_from_json(c) for c in row))
    name = data.get("name")
    if name is not None and not isinstance(name, str):
        raise InvalidInputError("name must be a string")
    raw_facets = data.get("facets")
    if raw_facets is None:
        return Polytope.from_vertices(dim, vertices, name=name)
    if not isinstance(raw_facets, list):
        raise InvalidInputError("facets must be a list of index lists")
    facets = []
    for f in raw_facets:
        if not isinstance(f, list) or not all(
            isinstance(i, int) and not isinstance(i, bool) for i in f
        ):
            raise InvalidInputError("each facet must be a list of integers")
        if any(i < 0 or i >= len(vertices) for i in f):
            raise InvalidInputError("facet index out of range")
        facets.append(tuple(sorted(f)))
    p = Polytope(dim, tuple(vertices), tuple(sorted(facets)), name=name)
    report = validate(p)
    if not report.ok:
        raise InvalidInputError("invalid polytope: " + "; ".join(report.violations))
    return p


def dumps(p: Polytope) -> str:
    return json.dumps(polytope_to_dict(p), sort_keys=True, indent=2) + "\n"


def loads(text: str) -> Polytope:
    try:
        data = json.loads(text)
    except json.JSONDecodeError as exc:
        raise InvalidInputError(f"not valid JSON: {exc}") from exc
    return polytope_from_dict(data)


def write_polytope(p: Polytope, path: str) -> None:
    with open(path, "w", encoding="utf-8") as fh:
        fh.write(dumps(p))


def read_polytope(path: str) -> Polytope:
    try:
        with open(path, "r", encoding="utf-8") as fh:
            text = fh.read()
    except OSError as exc:
        raise InvalidInputError(f"cannot read {path}: {exc}") from exc
    return loads(text)
