"""Weak carousel procedures over a triangle of sites and two circles.

An instance holds three sites A0, A1, A2 and two circles u0, u1 inside their
hull.  A witness is a pair (j, k) such that u_(1-k) lies in the convex hull
of u_k together with the two sites other than A_j.  The xi-sweep scales both
circles about their own centers by a common factor and traces the supremum
of the scales at which a fixed (j, k) witness still holds, classifying the
boundary piece that becomes tangent there.
"""

from __future__ import annotations

import enum
import math
import random
from dataclasses import dataclass, replace

from .errors import (
    CoincidentPoints,
    DegenerateHull,
    GenerationExhausted,
    InvalidInstance,
    NotInterior,
)
from .hull import (
    ArcPiece,
    GeneratorSet,
    circle_in_hull,
    hull_boundary,
    min_slack,
)
from .planar import (
    DEFAULT_TOLERANCE,
    TAU,
    Circle2,
    Point2,
    Tolerance,
    orientation,
    point_segment_distance,
)

JK_PAIRS = tuple((j, k) for j in (0, 1, 2) for k in (0, 1))


@dataclass(frozen=True)
class CarouselInstance:
    """Three sites plus two circles satisfying the containment hypotheses."""

    sites: tuple[Point2, Point2, Point2]
    u0: Circle2
    u1: Circle2

    def circle(self, k: int) -> Circle2:
        return self.u0 if k == 0 else self.u1


@dataclass(frozen=True)
class Witness:
    """A (j, k) pair whose inclusion holds, with the slack it holds by."""

    j: int
    k: int
    slack: float


class Tangency(enum.Enum):
    NONE_AT_ONE = "none_at_one"
    LEG = "leg"
    FRONT_ARC = "front_arc"
    BASE_SIDE = "base_side"


@dataclass(frozen=True)
class XiSweepReport:
    """Critical-scale trace for a fixed (j, k): supremum and binding tangency."""

    j: int
    k: int
    xi_star: float
    slack_at_xi_star: float
    tangency: Tangency


@dataclass(frozen=True)
class RngConfig:
    """Sampling ranges for the fuzz-instance generator."""

    coord_range: tuple[float, float] = (-10.0, 10.0)
    radius_range: tuple[float, float] = (0.0, 3.0)
    min_hypothesis_slack: float = 0.01
    max_tries: int = 10_000


def sites_as_generators(sites) -> GeneratorSet:
    return GeneratorSet(tuple(Circle2(s, 0.0) for s in sites))


def validate_instance(inst: CarouselInstance, tol: Tolerance = DEFAULT_TOLERANCE) -> None:
    """Check the carousel hypotheses; raises InvalidInstance otherwise."""
    a0, a1, a2 = inst.sites
    if orientation(a0, a1, a2, tol) == 0:
        if inst.u0.radius > 0.0 or inst.u1.radius > 0.0:
            raise InvalidInstance("collinear sites admit only radius-0 circles")
    site_gens = sites_as_generators(inst.sites)
    for k in (0, 1):
        res = circle_in_hull(inst.circle(k), site_gens, tol)
        if not res.contained:
            raise InvalidInstance(
                f"u{k} is not inside the site hull (slack {res.slack:.3g})"
            )


def scaled_instance(inst: CarouselInstance, zeta: float) -> CarouselInstance:
    """Shrink both circles about their own centers by factor zeta in [0, 1]."""
    if not 0.0 <= zeta <= 1.0:
        raise ValueError(f"zeta must be in [0, 1], got {zeta}")
    return replace(
        inst,
        u0=Circle2(inst.u0.center, zeta * inst.u0.radius),
        u1=Circle2(inst.u1.center, zeta * inst.u1.radius),
    )


def witness_generators(inst: CarouselInstance, j: int, k: int) -> GeneratorSet:
    """Generator set for the (j, k) inclusion: u_k plus the sites other than A_j."""
    kept = tuple(Circle2(s, 0.0) for i, s in enumerate(inst.sites) if i != j)
    return GeneratorSet((inst.circle(k),) + kept)


def witness_search(
    inst: CarouselInstance, tol: Tolerance = DEFAULT_TOLERANCE
) -> list[Witness]:
    """All (j, k) pairs whose inclusion holds, sorted by descending slack."""
    validate_instance(inst, tol)
    found = []
    for j, k in JK_PAIRS:
        res = circle_in_hull(inst.circle(1 - k), witness_generators(inst, j, k), tol)
        if res.contained:
            found.append(Witness(j, k, res.slack))
    found.sort(key=lambda w: (-w.slack, w.j, w.k))
    return found


def corollary_witness_search(
    c0: Circle2,
    c1: Circle2,
    c2: Circle2,
    u0: Circle2,
    u1: Circle2,
    tol: Tolerance = DEFAULT_TOLERANCE,
) -> list[Witness]:
    """Witness search with three circle generators instead of point sites."""
    cs = (c0, c1, c2)
    base = GeneratorSet(cs)
    us = (u0, u1)
    for k in (0, 1):
        res = circle_in_hull(us[k], base, tol)
        if not res.contained:
            raise InvalidInstance(
                f"u{k} is not inside the generator hull (slack {res.slack:.3g})"
            )
    found = []
    for j, k in JK_PAIRS:
        gens = GeneratorSet((us[k],) + tuple(c for i, c in enumerate(cs) if i != j))
        res = circle_in_hull(us[1 - k], gens, tol)
        if res.contained:
            found.append(Witness(j, k, res.slack))
    found.sort(key=lambda w: (-w.slack, w.j, w.k))
    return found


def _strictly_inside(p: Point2, tri, tol: Tolerance) -> bool:
    a, b, c = tri
    ref = orientation(a, b, c, tol)
    if ref == 0:
        return False
    return (
        orientation(a, b, p, tol) == ref
        and orientation(b, c, p, tol) == ref
        and orientation(c, a, p, tol) == ref
    )


def _point_witness_slack(sites, b_keep: Point2, b_target: Point2, j: int, tol) -> float:
    kept = tuple(Circle2(s, 0.0) for i, s in enumerate(sites) if i != j)
    gens = GeneratorSet((Circle2(b_keep, 0.0),) + kept)
    return min_slack(Circle2(b_target, 0.0), gens, tol)


def two_carousel_points(
    sites, b0: Point2, b1: Point2, tol: Tolerance = DEFAULT_TOLERANCE
) -> Witness:
    """Point-only carousel witness via the triangle decomposition through b0.

    Splitting the site triangle into the three sub-triangles spanned by b0
    and two sites, b1 is strictly inside one of them (pick k = 0 and the
    missing site's index), or b1 lies on the segment from b0 to a site A_j,
    in which case b0 lies behind b1 as seen from A_j (pick k = 1 and that j).
    """
    if b0.distance_to(b1) <= tol.eps_geom:
        raise CoincidentPoints("the two interior points coincide")
    sites = tuple(sites)
    for p, name in ((b0, "b0"), (b1, "b1")):
        if not _strictly_inside(p, sites, tol):
            raise NotInterior(f"{name} is not strictly inside the site triangle")

    for j in range(3):
        tri = (b0, sites[(j + 1) % 3], sites[(j + 2) % 3])
        if _strictly_inside(b1, tri, tol):
            return Witness(j, 0, _point_witness_slack(sites, b0, b1, j, tol))

    # b1 sits on one of the three segments from b0 to a site
    for j in range(3):
        aj = sites[j]
        if orientation(b0, aj, b1, tol) == 0:
            t = (b1 - b0).dot(aj - b0)
            if 0.0 < t < (aj - b0).dot(aj - b0):
                return Witness(j, 1, _point_witness_slack(sites, b1, b0, j, tol))

    # numerical fringe: fall back to closed sub-triangle membership
    for j in range(3):
        tri = (b0, sites[(j + 1) % 3], sites[(j + 2) % 3])
        a, b, c = tri
        ref = orientation(a, b, c, tol)
        signs = (
            orientation(a, b, b1, tol),
            orientation(b, c, b1, tol),
            orientation(c, a, b1, tol),
        )
        if ref != 0 and all(s == 0 or s == ref for s in signs):
            return Witness(j, 0, _point_witness_slack(sites, b0, b1, j, tol))
    raise NotInterior("b1 could not be located in the decomposition")


# -- xi sweep ----------------------------------------------------------------

PRE_GRID = 64


def sweep_slack(
    inst: CarouselInstance, j: int, k: int, zeta: float, tol: Tolerance = DEFAULT_TOLERANCE
) -> float:
    """Slack of the scaled (j, k) inclusion at scale zeta."""
    target = inst.circle(1 - k)
    scaled_target = Circle2(target.center, zeta * target.radius)
    own = inst.circle(k)
    kept = tuple(Circle2(s, 0.0) for i, s in enumerate(inst.sites) if i != j)
    gens = GeneratorSet((Circle2(own.center, zeta * own.radius),) + kept)
    return min_slack(scaled_target, gens, tol)


def _classify_tangency(
    inst: CarouselInstance, j: int, k: int, zeta: float, tol: Tolerance
) -> Tangency:
    """Which boundary piece of the hull the scaled target touches at zeta.

    Picks the boundary piece nearest the touch point; ties at a vertex go to
    the leg.  Arc pieces always belong to the scaled u_k circle, segments
    between the two sites form the base side, segments involving u_k are legs.
    """
    own = inst.circle(k)
    target = inst.circle(1 - k)
    scaled_own = Circle2(own.center, zeta * own.radius)
    kept = tuple(Circle2(s, 0.0) for i, s in enumerate(inst.sites) if i != j)
    gens = GeneratorSet((scaled_own,) + kept)
    res = circle_in_hull(Circle2(target.center, zeta * target.radius), gens, tol)
    theta = res.witness_direction
    if theta is None:
        # contained at the reported scale: use the minimizing direction anyway
        theta = 0.0
    touch = Point2(
        target.center.x + zeta * target.radius * math.cos(theta),
        target.center.y + zeta * target.radius * math.sin(theta),
    )
    try:
        boundary = hull_boundary(gens, tol)
    except DegenerateHull:
        return Tangency.BASE_SIDE
    glist = list(gens.generators)
    entries = []
    for piece in boundary.pieces:
        if isinstance(piece, ArcPiece):
            g = glist[piece.generator]
            ang = math.atan2(touch.y - g.center.y, touch.x - g.center.x)
            rel = (ang - piece.start_angle) % TAU
            if rel <= piece.width:
                dist = abs(touch.distance_to(g.center) - g.radius)
            else:
                dist = min(touch.distance_to(piece.start), touch.distance_to(piece.end))
            entries.append((dist, 1, Tangency.FRONT_ARC))
        else:
            dist = point_segment_distance(touch, piece.start, piece.end)
            if 0 in piece.generators:
                entries.append((dist, 0, Tangency.LEG))
            else:
                entries.append((dist, 2, Tangency.BASE_SIDE))
    dmin = min(e[0] for e in entries)
    near = [e for e in entries if e[0] <= dmin + tol.eps_geom]
    near.sort(key=lambda e: (e[1], e[0]))
    return near[0][2]


def xi_sweep_fixed(
    inst: CarouselInstance,
    j: int,
    k: int,
    tol: float = 1e-9,
    tolerance: Tolerance = DEFAULT_TOLERANCE,
) -> XiSweepReport:
    """Supremum scale at which the fixed (j, k) inclusion still holds.

    A 64-point pre-grid over [0, 1] brackets the first sign change of the
    slack (the slack need not be monotone in zeta), then bisection refines
    the bracket to width ``tol``.  If the slack is nonnegative on the whole
    grid including zeta = 1, the sweep reports xi_star = 1 with no tangency.
    """
    if tol <= 0.0:
        raise ValueError(f"tol must be positive, got {tol}")
    if j not in (0, 1, 2) or k not in (0, 1):
        raise ValueError(f"need j in 0..2 and k in 0..1, got ({j}, {k})")
    validate_instance(inst, tolerance)

    zs = [i / (PRE_GRID - 1) for i in range(PRE_GRID)]
    slacks = [sweep_slack(inst, j, k, z, tolerance) for z in zs]
    bad = next((i for i, s in enumerate(slacks) if s < 0.0), None)

    if bad is None:
        return XiSweepReport(j, k, 1.0, slacks[-1], Tangency.NONE_AT_ONE)
    if bad == 0:
        return XiSweepReport(
            j, k, 0.0, slacks[0], _classify_tangency(inst, j, k, 0.0, tolerance)
        )

    lo, hi = zs[bad - 1], zs[bad]
    while hi - lo > tol:
        mid = 0.5 * (lo + hi)
        if sweep_slack(inst, j, k, mid, tolerance) >= 0.0:
            lo = mid
        else:
            hi = mid
    xi = lo
    return XiSweepReport(
        j,
        k,
        xi,
        sweep_slack(inst, j, k, xi, tolerance),
        _classify_tangency(inst, j, k, hi, tolerance),
    )


# -- seeded instance generation ----------------------------------------------


def _sample_triangle(rng: random.Random, cfg: RngConfig):
    lo, hi = cfg.coord_range
    span = hi - lo
    min_cross = 0.04 * span * span  # reject slivers; keeps placement feasible
    for _ in range(cfg.max_tries):
        pts = tuple(Point2(rng.uniform(lo, hi), rng.uniform(lo, hi)) for _ in range(3))
        a, b, c = pts
        if abs((b - a).cross(c - a)) >= min_cross:
            return pts
    raise GenerationExhausted("could not sample a non-degenerate triangle")


def _interior_point(rng: random.Random, sites) -> Point2:
    r1 = math.sqrt(rng.random())
    r2 = rng.random()
    a, b, c = sites
    w0 = 1.0 - r1
    w1 = r1 * (1.0 - r2)
    w2 = r1 * r2
    return Point2(
        w0 * a.x + w1 * b.x + w2 * c.x,
        w0 * a.y + w1 * b.y + w2 * c.y,
    )


def _edge_clearance(p: Point2, sites) -> float:
    dists = []
    for i in range(3):
        a = sites[i]
        b = sites[(i + 1) % 3]
        dists.append(point_segment_distance(p, a, b))
    return min(dists)


def random_instance(seed: int, config: RngConfig = RngConfig()) -> CarouselInstance:
    """Deterministic valid instance from a seed.

    Sites are sampled in the configured square with a sliver rejection;
    circle centers and radii are rejection-sampled until both hypothesis
    inclusions hold with slack above the configured floor.
    """
    rng = random.Random(seed)
    tol = DEFAULT_TOLERANCE
    sites = _sample_triangle(rng, config)
    site_gens = sites_as_generators(sites)
    r_lo, r_hi = config.radius_range
    floor = config.min_hypothesis_slack
    circles = []
    tries = 0
    while len(circles) < 2:
        tries += 1
        if tries > config.max_tries:
            raise GenerationExhausted(
                f"no admissible circle after {config.max_tries} rejections"
            )
        center = _interior_point(rng, sites)
        room = _edge_clearance(center, sites) - floor
        if room <= r_lo:
            continue
        radius = rng.uniform(r_lo, min(r_hi, room))
        cand = Circle2(center, radius)
        if circle_in_hull(cand, site_gens, tol).slack > floor:
            circles.append(cand)
    return CarouselInstance(sites, circles[0], circles[1])


def random_points_instance(seed: int, config: RngConfig = RngConfig()):
    """Deterministic triangle plus two distinct interior points."""
    rng = random.Random(seed)
    sites = _sample_triangle(rng, config)
    floor = 1e-3 * (config.coord_range[1] - config.coord_range[0])
    pts = []
    tries = 0
    while len(pts) < 2:
        tries += 1
        if tries > config.max_tries:
            raise GenerationExhausted("could not sample interior points")
        p = _interior_point(rng, sites)
        if _edge_clearance(p, sites) < floor:
            continue
        if pts and pts[0].distance_to(p) <= 1e-6:
            continue
        pts.append(p)
    return sites, pts[0], pts[1]


def random_corollary_instance(seed: int, config: RngConfig = RngConfig()):
    """Deterministic corollary instance: three circle generators plus two circles."""
    rng = random.Random(seed)
    tol = DEFAULT_TOLERANCE
    lo, hi = config.coord_range
    floor = config.min_hypothesis_slack
    tries = 0
    while True:
        tries += 1
        if tries > config.max_tries:
            raise GenerationExhausted("could not sample corollary generators")
        centers = tuple(Point2(rng.uniform(lo, hi), rng.uniform(lo, hi)) for _ in range(3))
        a, b, c = centers
        if abs((b - a).cross(c - a)) < 0.04 * (hi - lo) ** 2:
            continue
        cs = tuple(Circle2(p, rng.uniform(0.2, 2.0)) for p in centers)
        base = GeneratorSet(cs)
        us = []
        inner_tries = 0
        while len(us) < 2 and inner_tries < 200:
            inner_tries += 1
            center = _interior_point(rng, centers)
            radius = rng.uniform(0.0, 1.5)
            cand = Circle2(center, radius)
            if circle_in_hull(cand, base, tol).slack > floor:
                us.append(cand)
        if len(us) == 2:
            return cs[0], cs[1], cs[2], us[0], us[1]
