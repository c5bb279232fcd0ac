"""Deterministic report serialization.

Reports are canonical JSON: sorted keys, two-space indent, shortest
round-trip float repr, trailing newline.  Anything time-dependent stays out
of the serialized payload so identical inputs give byte-identical files.
"""

from __future__ import annotations

import json

from . import __version__
from .hull import ArcInterval, ContainmentResult
from .spheres import Containment3Result, Example41Report, Example42Report
from .witness import Witness, XiSweepReport

TOOL_INFO = {"name": "carousel", "version": __version__}


def canonical_json(data) -> str:
    return json.dumps(data, sort_keys=True, indent=2, allow_nan=False) + "\n"


def arc_to_list(arc: ArcInterval) -> list[float] | str:
    if arc.is_full:
        return "full"
    if arc.is_empty:
        return "empty"
    return [arc.lo, arc.hi]


def containment_to_dict(res: ContainmentResult) -> dict:
    return {
        "contained": res.contained,
        "slack": res.slack,
        "witness_direction": res.witness_direction,
        "uncovered": [arc_to_list(a) for a in res.uncovered],
    }


def containment3_to_dict(res: Containment3Result) -> dict:
    out = {
        "contained": res.contained,
        "slack": res.slack,
        "witness_direction": list(res.witness_direction) if res.witness_direction else None,
    }
    if res.projection_certificate is not None:
        out["projection_certificate"] = containment_to_dict(res.projection_certificate)
    return out


def witness_to_dict(w: Witness) -> dict:
    return {"j": w.j, "k": w.k, "slack": w.slack}


def sweep_to_dict(rep: XiSweepReport) -> dict:
    return {
        "j": rep.j,
        "k": rep.k,
        "xi_star": rep.xi_star,
        "slack_at_xi_star": rep.slack_at_xi_star,
        "tangency": rep.tangency.value,
    }


def example41_to_dict(rep: Example41Report) -> dict:
    return {
        "side": rep.side,
        "r": rep.r,
        "face_distances": [list(d) for d in rep.face_distances],
        "centers": [[p.x, p.y, p.z] for p in rep.centers],
        "all_refuted": rep.all_refuted,
        "outcomes": [
            {"j": o.j, "k": o.k, **containment3_to_dict(o.result)} for o in rep.outcomes
        ],
    }


def example42_to_dict(rep: Example42Report) -> dict:
    return {
        "t": rep.t,
        "arc_radius_factor": rep.arc_radius_factor,
        "side": rep.side,
        "arc_center": [rep.arc_center.x, rep.arc_center.y, rep.arc_center.z],
        "arc_radius": rep.arc_radius,
        "sphere_indices": list(rep.sphere_indices),
        "spheres": [[s.center.x, s.center.y, s.center.z, s.radius] for s in rep.spheres],
        "tangency_residuals": list(rep.tangency_residuals),
        "interior_margins": list(rep.interior_margins),
        "all_refuted": rep.all_refuted,
        "outcomes": [
            {"j": o.j, "k": o.k, **containment3_to_dict(o.result)} for o in rep.outcomes
        ],
    }
