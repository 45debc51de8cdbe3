"""JSON formats. Rationals are written as ``"p/q"`` (or ``"p"``) strings."""

from __future__ import annotations

import json
from fractions import Fraction
from pathlib import Path

from .errors import InputError
from .linalg import fmt_rat, rat
from .polytope import HPolytope, Projection, VPolytope


def _rats(values) -> list[str]:
    return [fmt_rat(x) for x in values]


def _parse_rats(values) -> tuple[Fraction, ...]:
    try:
        return tuple(rat(v) for v in values)
    except (TypeError, ValueError, ZeroDivisionError) as exc:
        raise InputError(f"bad rational in {values!r}") from exc


def hpolytope_to_json(H: HPolytope) -> dict:
    return {
        "ambient_dim": H.ambient_dim,
        "inequalities": [{"normal": _rats(a), "rhs": fmt_rat(b)} for a, b in H.inequalities],
        "equations": [{"normal": _rats(a), "rhs": fmt_rat(b)} for a, b in H.equations],
    }


def vpolytope_to_json(V: VPolytope) -> dict:
    return {"ambient_dim": V.ambient_dim, "vertices": [_rats(v) for v in V.vertices]}


def _rows(items, n):
    out = []
    for item in items:
        a, b = _parse_rats(item["normal"]), _parse_rats([item["rhs"]])[0]
        if len(a) != n:
            raise InputError("row length does not match ambient_dim")
        out.append((a, b))
    return tuple(out)


def polytope_from_json(data: dict) -> HPolytope | VPolytope:
    """Either format, told apart by the ``vertices`` key."""
    try:
        n = int(data["ambient_dim"])
        if "vertices" in data:
            pts = [_parse_rats(v) for v in data["vertices"]]
            if not pts or any(len(p) != n for p in pts):
                raise InputError("vertices must be nonempty and match ambient_dim")
            return VPolytope.of(pts)
        return HPolytope(n, _rows(data.get("inequalities", []), n), _rows(data.get("equations", []), n))
    except (KeyError, TypeError) as exc:
        raise InputError(f"malformed polytope JSON: {exc}") from exc


def projection_to_json(p: Projection) -> dict:
    return {"matrix": [_rats(r) for r in p.matrix], "offset": _rats(p.offset)}


def projection_from_json(data: dict) -> Projection:
    try:
        matrix = tuple(_parse_rats(r) for r in data["matrix"])
        offset = _parse_rats(data.get("offset", [0] * len(matrix)))
    except (KeyError, TypeError) as exc:
        raise InputError(f"malformed projection JSON: {exc}") from exc
    if len({len(r) for r in matrix}) > 1 or len(offset) != len(matrix):
        raise InputError("projection matrix is ragged")
    return Projection(matrix, offset)


def extension_to_json(Q: HPolytope, proj: Projection) -> dict:
    return {"Q": hpolytope_to_json(Q), "projection": projection_to_json(proj)}


def dumps(payload) -> str:
    """Canonical text: sorted keys, two-space indent, trailing newline."""
    return json.dumps(payload, sort_keys=True, indent=2) + "\n"


def write_json(path: str | Path, payload) -> None:
    Path(path).write_text(dumps(payload))


def read_json(path: str | Path):
    try:
        return json.loads(Path(path).read_text())
    except OSError as exc:
        raise InputError(f"cannot read {path}: {exc}") from exc
    except json.JSONDecodeError as exc:
        raise InputError(f"{path} is not valid JSON: {exc}") from exc
