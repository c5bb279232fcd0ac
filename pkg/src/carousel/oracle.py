"""Independent sampling oracle for the 2D containment predicate.

Every generator circle is sampled densely, the planar convex hull of all
samples is taken as a polygon, and the target circle's own samples are
tested point-in-polygon.  This is a primal-space cross-check of the dual
(support/arc-cover) decision; the two may legitimately disagree only inside
a narrow slack band around tangency, set by the sampling density.
"""

from __future__ import annotations

import math

import numpy as np
from scipy.spatial import ConvexHull, QhullError

from .hull import GeneratorSet
from .planar import Circle2

DEFAULT_SAMPLES = 3600

# |slack| band inside which the inscribed-polygon oracle may disagree
ORACLE_SLACK_BAND = 1e-4


def _circle_samples(c: Circle2, m: int) -> np.ndarray:
    if c.radius <= 0.0:
        return np.array([[c.center.x, c.center.y]])
    ang = np.linspace(0.0, 2.0 * math.pi, m, endpoint=False)
    return np.column_stack(
        (c.center.x + c.radius * np.cos(ang), c.center.y + c.radius * np.sin(ang))
    )


def sample_hull_polygon(gens: GeneratorSet, samples: int = DEFAULT_SAMPLES) -> np.ndarray:
    """Counterclockwise vertex array of the hull polygon of all circle samples."""
    pts = np.vstack([_circle_samples(g, samples) for g in gens])
    try:
        hull = ConvexHull(pts)
    except QhullError:
        # degenerate cloud (a point or collinear points): keep the extremes
        spread = pts.max(axis=0) - pts.min(axis=0)
        norm = float(np.hypot(*spread))
        if norm == 0.0:
            return pts[:1]
        t = pts @ (spread / norm)
        return pts[[int(np.argmin(t)), int(np.argmax(t))]]
    return pts[hull.vertices]


def polygon_contains_points(poly: np.ndarray, queries: np.ndarray, eps: float = 1e-12) -> np.ndarray:
    """Vectorized membership of query points in a convex ccw polygon.

    Locates each query's wedge around the polygon centroid by binary search
    on vertex angles, then checks the single facing edge.
    """
    k = len(poly)
    if k == 1:
        return np.hypot(*(queries - poly[0]).T) <= eps
    if k == 2:
        a, b = poly
        ab = b - a
        denom = float(ab @ ab)
        t = np.clip((queries - a) @ ab / denom, 0.0, 1.0)
        feet = a + t[:, None] * ab
        return np.hypot(*(queries - feet).T) <= eps

    centroid = poly.mean(axis=0)
    rel = poly - centroid
    angles = np.arctan2(rel[:, 1], rel[:, 0])
    start = int(np.argmin(angles))
    poly = np.roll(poly, -start, axis=0)
    angles = np.roll(angles, -start)

    q_ang = np.arctan2(queries[:, 1] - centroid[1], queries[:, 0] - centroid[0])
    idx = np.searchsorted(angles, q_ang, side="right") - 1
    idx %= k
    a = poly[idx]
    b = poly[(idx + 1) % k]
    cross = (b[:, 0] - a[:, 0]) * (queries[:, 1] - a[:, 1]) - (b[:, 1] - a[:, 1]) * (
        queries[:, 0] - a[:, 0]
    )
    return cross >= -eps


def sampling_oracle_contains(
    target: Circle2, gens: GeneratorSet, samples: int = DEFAULT_SAMPLES
) -> bool:
    """True iff every sampled target point lies in the sampled hull polygon."""
    poly = sample_hull_polygon(gens, samples)
    queries = _circle_samples(target, samples)
    return bool(np.all(polygon_contains_points(poly, queries)))


def hull_polygon_area(gens: GeneratorSet, samples: int = DEFAULT_SAMPLES) -> float:
    """Area of the densely inscribed hull polygon (independent area estimate)."""
    pts = np.vstack([_circle_samples(g, samples) for g in gens])
    try:
        hull = ConvexHull(pts)
    except QhullError:
        return 0.0
    return float(hull.volume)  # in 2D, "volume" is the area
