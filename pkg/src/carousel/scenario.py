"""Scenario files: a small versioned JSON schema for every CLI verb.

Top-level object: ``schema`` must be "carousel/1"; ``kind`` picks the
geometry payload.  2D entries are [x, y, r] triples, 3D entries are
[x, y, z, r]; sites and bare points must carry r = 0.  ``tolerance`` and
``seed`` are optional.  Validation is strict: unknown keys are rejected so
fixtures stay diff-able.
"""

from __future__ import annotations

import json
import math
from dataclasses import dataclass, field
from pathlib import Path

from .errors import ParseError, SchemaError
from .planar import Circle2, Point2, Tolerance
from .witness import CarouselInstance

SCHEMA_TAG = "carousel/1"

KINDS = (
    "theorem2d",
    "corollary2d",
    "points2d",
    "sweep",
    "sphere3_ex41",
    "sphere3_ex42",
)

_COMMON_KEYS = {"schema", "kind", "tolerance", "seed"}
_KIND_KEYS = {
    "theorem2d": {"sites", "circles"},
    "sweep": {"sites", "circles", "j", "k", "tol"},
    "points2d": {"sites", "circles"},
    "corollary2d": {"circles"},
    "sphere3_ex41": {"side", "r"},
    "sphere3_ex42": {"t", "arc_radius_factor", "side", "r"},
}


@dataclass(frozen=True)
class Scenario:
    kind: str
    tolerance: Tolerance
    seed: int | None
    sites: tuple[Point2, ...] = ()
    circles: tuple[Circle2, ...] = ()
    j: int | None = None
    k: int | None = None
    tol: float | None = None
    side: float = 1.0
    r: float = 0.1
    t: int = 3
    arc_radius_factor: float = 10.0
    raw: dict = field(default_factory=dict, compare=False)

    def instance(self) -> CarouselInstance:
        if self.kind not in ("theorem2d", "sweep"):
            raise SchemaError(f"kind {self.kind!r} has no carousel instance")
        return CarouselInstance(self.sites, self.circles[0], self.circles[1])


def _num(v, where: str) -> float:
    if isinstance(v, bool) or not isinstance(v, (int, float)):
        raise SchemaError(f"{where}: expected a number, got {v!r}")
    f = float(v)
    if not math.isfinite(f):
        raise SchemaError(f"{where}: number must be finite")
    return f


def _entry2d(v, where: str) -> Circle2:
    if not isinstance(v, list) or len(v) != 3:
        raise SchemaError(f"{where}: expected [x, y, r]")
    x, y, r = (_num(c, where) for c in v)
    if r < 0.0:
        raise SchemaError(f"{where}: radius must be >= 0")
    return Circle2(Point2(x, y), r)


def _array2d(data, key: str, count: int, point_only: bool = False):
    if key not in data:
        raise SchemaError(f"missing field {key!r}")
    arr = data[key]
    if not isinstance(arr, list) or len(arr) != count:
        raise SchemaError(f"field {key!r} must be a list of {count} entries")
    out = []
    for i, v in enumerate(arr):
        c = _entry2d(v, f"{key}[{i}]")
        if point_only and c.radius != 0.0:
            raise SchemaError(f"{key}[{i}]: must have radius 0")
        out.append(c)
    return tuple(out)


def parse_scenario(data: dict) -> Scenario:
    """Validate a decoded scenario object and build the typed payload."""
    if not isinstance(data, dict):
        raise SchemaError("scenario must be a JSON object")
    if data.get("schema") != SCHEMA_TAG:
        raise SchemaError(f"schema must be {SCHEMA_TAG!r}, got {data.get('schema')!r}")
    kind = data.get("kind")
    if kind not in KINDS:
        raise SchemaError(f"kind must be one of {KINDS}, got {kind!r}")
    allowed = _COMMON_KEYS | _KIND_KEYS[kind]
    unknown = set(data) - allowed
    if unknown:
        raise SchemaError(f"unknown fields for kind {kind!r}: {sorted(unknown)}")

    tolerance = Tolerance()
    if "tolerance" in data:
        t = data["tolerance"]
        if not isinstance(t, dict) or set(t) - {"eps_geom", "eps_decision"}:
            raise SchemaError("tolerance must be {eps_geom, eps_decision}")
        try:
            tolerance = Tolerance(
                eps_geom=_num(t.get("eps_geom", 1e-9), "tolerance.eps_geom"),
                eps_decision=_num(t.get("eps_decision", 1e-6), "tolerance.eps_decision"),
            )
        except ValueError as exc:
            raise SchemaError(str(exc)) from exc

    seed = None
    if "seed" in data:
        s = data["seed"]
        if isinstance(s, bool) or not isinstance(s, int) or not 0 <= s < 2**64:
            raise SchemaError("seed must be an unsigned 64-bit integer")
        seed = s

    kwargs = dict(kind=kind, tolerance=tolerance, seed=seed, raw=data)

    if kind in ("theorem2d", "sweep"):
        sites = _array2d(data, "sites", 3, point_only=True)
        kwargs["sites"] = tuple(c.center for c in sites)
        kwargs["circles"] = _array2d(data, "circles", 2)
        if kind == "sweep":
            for key, hi in (("j", 2), ("k", 1)):
                if key in data:
                    v = data[key]
                    if isinstance(v, bool) or not isinstance(v, int) or not 0 <= v <= hi:
                        raise SchemaError(f"{key} must be an integer in 0..{hi}")
                    kwargs[key] = v
            if "tol" in data:
                v = _num(data["tol"], "tol")
                if v <= 0.0:
                    raise SchemaError("tol must be positive")
                kwargs["tol"] = v
    elif kind == "points2d":
        sites = _array2d(data, "sites", 3, point_only=True)
        kwargs["sites"] = tuple(c.center for c in sites)
        kwargs["circles"] = _array2d(data, "circles", 2, point_only=True)
    elif kind == "corollary2d":
        kwargs["circles"] = _array2d(data, "circles", 5)
    elif kind == "sphere3_ex41":
        kwargs["side"] = _num(data.get("side", 1.0), "side")
        kwargs["r"] = _num(data.get("r", 0.1), "r")
        if kwargs["side"] <= 0.0 or kwargs["r"] <= 0.0:
            raise SchemaError("side and r must be positive")
    elif kind == "sphere3_ex42":
        tval = data.get("t", 3)
        if isinstance(tval, bool) or not isinstance(tval, int) or tval < 3:
            raise SchemaError("t must be an integer >= 3")
        kwargs["t"] = tval
        kwargs["arc_radius_factor"] = _num(data.get("arc_radius_factor", 10.0), "arc_radius_factor")
        kwargs["side"] = _num(data.get("side", 1.0), "side")
        kwargs["r"] = _num(data.get("r", 0.1), "r")
        if kwargs["arc_radius_factor"] <= 0.0 or kwargs["side"] <= 0.0 or kwargs["r"] <= 0.0:
            raise SchemaError("arc_radius_factor, side and r must be positive")

    return Scenario(**kwargs)


def load_scenario(path: str | Path) -> Scenario:
    """Read, decode and validate a scenario file."""
    try:
        text = Path(path).read_text(encoding="utf-8")
    except OSError as exc:
        raise ParseError(f"cannot read {path}: {exc}") from exc
    try:
        data = json.loads(text)
    except json.JSONDecodeError as exc:
        raise ParseError(f"{path}: {exc}") from exc
    return parse_scenario(data)


def instance_scenario_dict(inst: CarouselInstance, seed: int | None = None, kind: str = "theorem2d") -> dict:
    """Self-contained scenario object reproducing one instance."""
    data = {
        "schema": SCHEMA_TAG,
        "kind": kind,
        "sites": [[s.x, s.y, 0.0] for s in inst.sites],
        "circles": [
            [inst.u0.center.x, inst.u0.center.y, inst.u0.radius],
            [inst.u1.center.x, inst.u1.center.y, inst.u1.radius],
        ],
    }
    if seed is not None:
        data["seed"] = seed
    return data


def points_scenario_dict(sites, b0: Point2, b1: Point2, seed: int | None = None) -> dict:
    data = {
        "schema": SCHEMA_TAG,
        "kind": "points2d",
        "sites": [[s.x, s.y, 0.0] for s in sites],
        "circles": [[b0.x, b0.y, 0.0], [b1.x, b1.y, 0.0]],
    }
    if seed is not None:
        data["seed"] = seed
    return data


def corollary_scenario_dict(cs, us, seed: int | None = None) -> dict:
    data = {
        "schema": SCHEMA_TAG,
        "kind": "corollary2d",
        "circles": [[c.center.x, c.center.y, c.radius] for c in (*cs, *us)],
    }
    if seed is not None:
        data["seed"] = seed
    return data
