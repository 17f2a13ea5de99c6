"""JSON and OFF encodings for realizations and run reports.

Rationals travel as canonical strings ("2/3", or "4" when integral) so a
round trip is loss-free and the files stay diff-friendly. Report dumps sort
their keys; everything except the timing block is deterministic for a given
input, which the tests rely on.
"""

from __future__ import annotations

import json
from dataclasses import fields, is_dataclass
from fractions import Fraction

from .errors import InvalidInputError
from .flat import FlatComplex
from .rounding import Realization
from .verify import Certificate


def rat_str(x: Fraction | int) -> str:
    f = Fraction(x)
    return str(f.numerator) if f.denominator == 1 else f"{f.numerator}/{f.denominator}"


def parse_rat(s: str) -> Fraction:
    try:
        return Fraction(s)
    except (ValueError, ZeroDivisionError) as e:
        raise InvalidInputError(f"bad rational {s!r}: {e}") from None


def jsonable(obj):
    """Recursively convert to JSON-encodable values; Fractions to strings."""
    if isinstance(obj, Fraction):
        return rat_str(obj)
    if isinstance(obj, Certificate):
        d = {f.name: getattr(obj, f.name) for f in fields(obj)}
        d["ok"] = obj.ok
        return jsonable(d)
    if is_dataclass(obj) and not isinstance(obj, type):
        # shallow, so nested Certificates still hit their branch above
        return jsonable({f.name: getattr(obj, f.name) for f in fields(obj)})
    if isinstance(obj, dict):
        return {str(k): jsonable(v) for k, v in obj.items()}
    if isinstance(obj, (list, tuple)):
        return [jsonable(v) for v in obj]
    if obj is None or isinstance(obj, (bool, int, float, str)):
        return obj
    raise TypeError(f"cannot serialize {type(obj).__name__}")


def realization_to_json(r: Realization) -> str:
    doc = {
        "dim": r.d,
        "coords": [list(p) for p in r.coords],
        "facets": [[node, list(verts)] for node, verts in sorted(r.facets.items())],
        "base_facet": list(r.base_facet),
        "metadata": jsonable(r.metadata),
    }
    return json.dumps(doc, sort_keys=True)


def realization_from_json(text: str | bytes) -> Realization:
    try:
        doc = json.loads(text)
    except json.JSONDecodeError as e:
        raise InvalidInputError(f"invalid JSON: {e}") from None
    # accept the combined realize output {"realization": ..., "report": ...}
    if isinstance(doc, dict) and "dim" not in doc and "realization" in doc:
        doc = doc["realization"]
    try:
        d = doc["dim"]
        coords = [tuple(int(c) for c in p) for p in doc["coords"]]
        facets = {int(node): tuple(verts) for node, verts in doc["facets"]}
        base = tuple(doc["base_facet"])
    except (KeyError, TypeError, ValueError) as e:
        raise InvalidInputError(f"malformed realization JSON: {e}") from None
    if any(len(p) != d for p in coords):
        raise InvalidInputError("every coordinate row must have length dim")
    meta = {}
    for k, v in doc.get("metadata", {}).items():
        meta[k] = parse_rat(v) if isinstance(v, str) else v
    return Realization(d=d, coords=coords, facets=facets, base_facet=base, metadata=meta)


def report_to_dict(report) -> dict:
    return jsonable(report)


def report_to_json(report, include_timing: bool = True) -> str:
    doc = report_to_dict(report)
    if not include_timing:
        doc.pop("timing", None)
    return json.dumps(doc, sort_keys=True, separators=(",", ":"))


def flat_to_json(flat: FlatComplex) -> str:
    doc = {
        "dim": flat.d,
        "L": flat.L,
        "lambda": rat_str(flat.lam),
        "R_eff": flat.R_eff,
        "coords": [[rat_str(c) for c in p] for p in flat.coords],
        "facets": [[node, list(v)] for node, v in sorted(flat.facets.items())],
        "base_facet": list(flat.base_facet),
    }
    return json.dumps(doc, sort_keys=True)


def emit_off(r: Realization) -> str:
    """OFF mesh for 3-dimensional realizations, facets oriented outward.

    A facet (a, b, c) is outward when the signed volume of (a, b, c, p) is
    negative for interior p; summing that affine form over all vertices
    gives the interior side's sign without picking a reference point.
    """
    if r.d != 3:
        raise InvalidInputError(f"OFF output needs dimension 3, got {r.d}")
    coords = r.coords
    faces = [tuple(r.base_facet)] + [verts for _, verts in sorted(r.facets.items())]

    def vol(a, b, c, p) -> int:
        ax, ay, az = coords[a]
        m = [
            [coords[b][0] - ax, coords[c][0] - ax, p[0] - ax],
            [coords[b][1] - ay, coords[c][1] - ay, p[1] - ay],
            [coords[b][2] - az, coords[c][2] - az, p[2] - az],
        ]
        return (
            m[0][0] * (m[1][1] * m[2][2] - m[1][2] * m[2][1])
            - m[0][1] * (m[1][0] * m[2][2] - m[1][2] * m[2][0])
            + m[0][2] * (m[1][0] * m[2][1] - m[1][1] * m[2][0])
        )

    lines = ["OFF", f"{len(coords)} {len(faces)} 0"]
    for p in coords:
        lines.append(f"{p[0]} {p[1]} {p[2]}")
    n = len(coords)
    for a, b, c in faces:
        # vol is affine in p, so this sum is n times the volume at the mean
        total = sum(vol(a, b, c, coords[v]) for v in range(n))
        if total == 0:
            raise InvalidInputError("degenerate facet orientation")
        if total > 0:
            b, c = c, b
        lines.append(f"3 {a} {b} {c}")
    return "\n".join(lines) + "\n"
