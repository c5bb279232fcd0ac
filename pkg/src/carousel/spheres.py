"""3D counterexample constructions and sphere-hull containment testing.

The tetrahedron is embedded as alternating vertices of the cube [0, side]^3,
which makes every construction coordinate rational.  Containment of a sphere
in the convex hull of spheres and points is decided by minimizing the support
slack over the direction sphere: an icosphere seed grid followed by local
refinement of the best seeds.  A non-containment verdict carries a witness
direction with strictly negative slack and is therefore a proof; containment
verdicts are search results.  An orthogonal projection to a plane reduces to
the exact 2D arc-cover test and soundly refutes 3D inclusions.
"""

from __future__ import annotations

import functools
import math
from dataclasses import dataclass, replace

import numpy as np

from .errors import ConstructionFailed, DegenerateBasis, PreconditionRadius
from .hull import ContainmentResult, GeneratorSet, circle_in_hull
from .planar import DEFAULT_TOLERANCE, Circle2, Point2, Tolerance

ICO_LEVELS = {12: 0, 42: 1, 162: 2, 642: 3, 2562: 4, 10242: 5, 40962: 6}


@dataclass(frozen=True)
class Point3:
    """Point (or free vector) in 3-space."""

    x: float
    y: float
    z: float

    def __post_init__(self):
        if not all(math.isfinite(v) for v in (self.x, self.y, self.z)):
            raise ValueError(f"coordinates must be finite, got {(self.x, self.y, self.z)}")

    def __add__(self, o: "Point3") -> "Point3":
        return Point3(self.x + o.x, self.y + o.y, self.z + o.z)

    def __sub__(self, o: "Point3") -> "Point3":
        return Point3(self.x - o.x, self.y - o.y, self.z - o.z)

    def __mul__(self, s: float) -> "Point3":
        return Point3(self.x * s, self.y * s, self.z * s)

    __rmul__ = __mul__

    def dot(self, o: "Point3") -> float:
        return self.x * o.x + self.y * o.y + self.z * o.z

    def cross(self, o: "Point3") -> "Point3":
        return Point3(
            self.y * o.z - self.z * o.y,
            self.z * o.x - self.x * o.z,
            self.x * o.y - self.y * o.x,
        )

    def norm(self) -> float:
        return math.sqrt(self.dot(self))

    def distance_to(self, o: "Point3") -> float:
        return (self - o).norm()

    def normalized(self) -> "Point3":
        n = self.norm()
        if n <= 0.0:
            raise ValueError("cannot normalize the zero vector")
        return self * (1.0 / n)


@dataclass(frozen=True)
class Sphere3:
    """Sphere with nonnegative radius; radius 0 denotes a point."""

    center: Point3
    radius: float

    def __post_init__(self):
        if not (math.isfinite(self.radius) and self.radius >= 0.0):
            raise ValueError(f"radius must be finite and >= 0, got {self.radius}")


@dataclass(frozen=True)
class Containment3Result:
    """3D verdict: refutations carry a certified witness direction."""

    contained: bool
    slack: float
    witness_direction: tuple[float, float, float] | None = None
    projection_certificate: ContainmentResult | None = None


def tetrahedron_from_cube(side: float) -> tuple[Point3, Point3, Point3, Point3]:
    """Regular tetrahedron on alternating vertices of the cube [0, side]^3."""
    if side <= 0.0:
        raise ValueError(f"side must be positive, got {side}")
    s = side
    return (
        Point3(0.0, 0.0, 0.0),
        Point3(s, s, 0.0),
        Point3(s, 0.0, s),
        Point3(0.0, s, s),
    )


def axis_points(a0: Point3, a1: Point3, a2: Point3, a3: Point3):
    """Midpoints B, C of two opposite edges and the trisection points of [B, C]."""
    b = (a0 + a1) * 0.5
    c = (a2 + a3) * 0.5
    p_minus1 = b + (c - b) * (1.0 / 3.0)
    p_0 = b + (c - b) * (2.0 / 3.0)
    return b, c, p_minus1, p_0


@functools.lru_cache(maxsize=8)
def icosphere_directions(level: int) -> np.ndarray:
    """Unit vertices of a subdivided icosahedron; 10*4**level + 2 directions."""
    phi = (1.0 + math.sqrt(5.0)) / 2.0
    verts = [
        (-1, phi, 0), (1, phi, 0), (-1, -phi, 0), (1, -phi, 0),
        (0, -1, phi), (0, 1, phi), (0, -1, -phi), (0, 1, -phi),
        (phi, 0, -1), (phi, 0, 1), (-phi, 0, -1), (-phi, 0, 1),
    ]
    faces = [
        (0, 11, 5), (0, 5, 1), (0, 1, 7), (0, 7, 10), (0, 10, 11),
        (1, 5, 9), (5, 11, 4), (11, 10, 2), (10, 7, 6), (7, 1, 8),
        (3, 9, 4), (3, 4, 2), (3, 2, 6), (3, 6, 8), (3, 8, 9),
        (4, 9, 5), (2, 4, 11), (6, 2, 10), (8, 6, 7), (9, 8, 1),
    ]
    pts = np.array(verts, dtype=float)
    pts /= np.linalg.norm(pts, axis=1, keepdims=True)
    tris = np.array(faces, dtype=int)
    for _ in range(level):
        cache: dict[tuple[int, int], int] = {}
        pts_list = [tuple(p) for p in pts]

        def midpoint(i, j):
            key = (i, j) if i < j else (j, i)
            if key in cache:
                return cache[key]
            m = np.array(pts_list[i]) + np.array(pts_list[j])
            m /= np.linalg.norm(m)
            pts_list.append(tuple(m))
            cache[key] = len(pts_list) - 1
            return cache[key]

        new_tris = []
        for i, j, k in tris:
            a = midpoint(i, j)
            b = midpoint(j, k)
            c = midpoint(k, i)
            new_tris.extend([(i, a, c), (j, b, a), (k, c, b), (a, b, c)])
        pts = np.array(pts_list, dtype=float)
        tris = np.array(new_tris, dtype=int)
    out = pts.copy()
    out.setflags(write=False)
    return out


def _seed_level(seed_count: int) -> int:
    if seed_count in ICO_LEVELS:
        return ICO_LEVELS[seed_count]
    for count in sorted(ICO_LEVELS):
        if count >= seed_count:
            return ICO_LEVELS[count]
    return max(ICO_LEVELS.values())


def _slack_terms(target: Sphere3, gens):
    t = target.center
    return [
        (g.center.x - t.x, g.center.y - t.y, g.center.z - t.z, g.radius)
        for g in gens
    ], target.radius


def _slack_at(terms, rt, u) -> float:
    ux, uy, uz = u
    best = -math.inf
    for dx, dy, dz, r in terms:
        v = dx * ux + dy * uy + dz * uz + r
        if v > best:
            best = v
    return best - rt


def _pair_circle_minimum(terms, i, j):
    """Minimum of the shared value of generators i, j on their equality circle."""
    dxi, dyi, dzi, ri = terms[i]
    dxj, dyj, dzj, rj = terms[j]
    nx, ny, nz = dxi - dxj, dyi - dyj, dzi - dzj
    nn = math.sqrt(nx * nx + ny * ny + nz * nz)
    if nn <= 1e-15:
        return None
    c0 = (rj - ri) / nn
    if abs(c0) > 1.0:
        return None
    nx, ny, nz = nx / nn, ny / nn, nz / nn
    rho = math.sqrt(max(0.0, 1.0 - c0 * c0))
    # orthonormal basis of the circle plane
    if abs(nx) <= abs(ny) and abs(nx) <= abs(nz):
        ax, ay, az = 1.0, 0.0, 0.0
    elif abs(ny) <= abs(nz):
        ax, ay, az = 0.0, 1.0, 0.0
    else:
        ax, ay, az = 0.0, 0.0, 1.0
    px, py, pz = ny * az - nz * ay, nz * ax - nx * az, nx * ay - ny * ax
    pn = math.sqrt(px * px + py * py + pz * pz)
    px, py, pz = px / pn, py / pn, pz / pn
    qx, qy, qz = ny * pz - nz * py, nz * px - nx * pz, nx * py - ny * px
    gp = dxi * px + dyi * py + dzi * pz
    gq = dxi * qx + dyi * qy + dzi * qz
    h = math.hypot(gp, gq)
    if h <= 1e-15:
        cosv, sinv = 1.0, 0.0
    else:
        cosv, sinv = -gp / h, -gq / h
    return (
        c0 * nx + rho * (px * cosv + qx * sinv),
        c0 * ny + rho * (py * cosv + qy * sinv),
        c0 * nz + rho * (pz * cosv + qz * sinv),
    )


def _triple_points(terms, i, j, k):
    """Unit directions where generators i, j, k share the same support value."""
    def plane(a, b):
        dxa, dya, dza, ra = terms[a]
        dxb, dyb, dzb, rb = terms[b]
        return (dxa - dxb, dya - dyb, dza - dzb, rb - ra)

    n1x, n1y, n1z, b1 = plane(i, j)
    n2x, n2y, n2z, b2 = plane(i, k)
    g11 = n1x * n1x + n1y * n1y + n1z * n1z
    g12 = n1x * n2x + n1y * n2y + n1z * n2z
    g22 = n2x * n2x + n2y * n2y + n2z * n2z
    det = g11 * g22 - g12 * g12
    if abs(det) <= 1e-18:
        return []
    x = (b1 * g22 - b2 * g12) / det
    y = (b2 * g11 - b1 * g12) / det
    bx = x * n1x + y * n2x
    by = x * n1y + y * n2y
    bz = x * n1z + y * n2z
    cx = n1y * n2z - n1z * n2y
    cy = n1z * n2x - n1x * n2z
    cz = n1x * n2y - n1y * n2x
    cc = cx * cx + cy * cy + cz * cz
    if cc <= 1e-18:
        return []
    rem = 1.0 - (bx * bx + by * by + bz * bz)
    if rem < 0.0:
        return []
    z = math.sqrt(rem / cc)
    return [
        (bx + z * cx, by + z * cy, bz + z * cz),
        (bx - z * cx, by - z * cy, bz - z * cz),
    ]


def _refine_seed(terms, rt, u, scale) -> tuple[float, tuple[float, float, float]]:
    """Local active-set refinement from one seed direction.

    Repeatedly builds the exact stationary candidates of the currently
    active generator subset (single minima, pair equality-circle minima,
    triple intersections) and jumps to the best improvement.
    """
    best_u = u
    best = _slack_at(terms, rt, u)
    n = len(terms)
    for band in (1e-1, 1e-2, 1e-4, 1e-6, 1e-8, 1e-10, 1e-12):
        vals = []
        ux, uy, uz = best_u
        for dx, dy, dz, r in terms:
            vals.append(dx * ux + dy * uy + dz * uz + r)
        top = max(vals)
        active = [i for i in range(n) if vals[i] >= top - band * scale]
        if len(active) > 4:
            # at a stationary point at most three generators tie; keep the top few
            active = sorted(active, key=lambda i: -vals[i])[:4]
        cands = []
        for i in active:
            dx, dy, dz, _ = terms[i]
            norm = math.sqrt(dx * dx + dy * dy + dz * dz)
            if norm > 1e-15:
                cands.append((-dx / norm, -dy / norm, -dz / norm))
        for a in range(len(active)):
            for b in range(a + 1, len(active)):
                cand = _pair_circle_minimum(terms, active[a], active[b])
                if cand is not None:
                    cands.append(cand)
                for c in range(b + 1, len(active)):
                    cands.extend(_triple_points(terms, active[a], active[b], active[c]))
        for cand in cands:
            v = _slack_at(terms, rt, cand)
            if v < best:
                best = v
                best_u = cand
    return best, best_u


def sphere_in_hull3(
    target: Sphere3,
    gens,
    tol: Tolerance = DEFAULT_TOLERANCE,
    seed_count: int = 2562,
) -> Containment3Result:
    """Decide sphere containment in the hull of spheres and points.

    Minimizes the support slack over directions: icosphere seeds, then local
    refinement from the 20 best seeds plus every single-generator minimum.
    Ties between equal minima break toward the lexicographically smallest
    direction, which keeps the result deterministic.
    """
    gens = list(gens)
    if not gens:
        raise ValueError("generator list must be nonempty")
    terms, rt = _slack_terms(target, gens)
    scale = max(1.0, max(abs(v) for t in terms for v in t), rt)

    dirs = icosphere_directions(_seed_level(seed_count))
    mat = np.array([(t[0], t[1], t[2]) for t in terms])
    radii = np.array([t[3] for t in terms])
    vals = dirs @ mat.T + radii
    slacks = vals.max(axis=1) - rt
    order = np.lexsort((dirs[:, 2], dirs[:, 1], dirs[:, 0], slacks))

    seeds = [tuple(dirs[i]) for i in order[:20]]
    for dx, dy, dz, _ in terms:
        norm = math.sqrt(dx * dx + dy * dy + dz * dz)
        if norm > 1e-15:
            seeds.append((-dx / norm, -dy / norm, -dz / norm))

    best = math.inf
    best_u = (1.0, 0.0, 0.0)
    for seed in seeds:
        v, u = _refine_seed(terms, rt, seed, scale)
        if v < best - 1e-15 or (abs(v - best) <= 1e-15 and u < best_u):
            best = v
            best_u = u
    norm = math.sqrt(sum(c * c for c in best_u))
    best_u = tuple(c / norm for c in best_u)

    contained = best >= -tol.eps_decision
    return Containment3Result(
        contained=contained,
        slack=best,
        witness_direction=None if contained else best_u,
    )


# -- projection reduction ------------------------------------------------------


def plane_through(p: Point3, q: Point3, r: Point3):
    """Orthonormal in-plane basis (origin, e1, e2) of the plane through three points."""
    w1 = q - p
    w2 = r - p
    n1 = w1.norm()
    if n1 <= 1e-12:
        raise DegenerateBasis("first two plane points coincide")
    e1 = w1 * (1.0 / n1)
    w2p = w2 - e1 * w2.dot(e1)
    n2 = w2p.norm()
    if n2 <= 1e-12:
        raise DegenerateBasis("plane points are collinear")
    return p, e1, w2p * (1.0 / n2)


def project_to_plane(p: Point3, plane) -> Point2:
    origin, e1, e2 = plane
    rel = p - origin
    return Point2(rel.dot(e1), rel.dot(e2))


def projection_reduction(
    target: Sphere3,
    gens,
    plane,
    tol: Tolerance = DEFAULT_TOLERANCE,
) -> ContainmentResult:
    """Project spheres orthogonally into a plane and run the exact 2D test.

    Projection commutes with convex hulls, so a 2D non-containment exactly
    refutes the 3D inclusion.  A 2D containment says nothing about 3D and is
    reported as the (inconclusive) 2D result.
    """
    origin, e1, e2 = plane
    for v, name in ((e1, "e1"), (e2, "e2")):
        if abs(v.norm() - 1.0) > 1e-9:
            raise DegenerateBasis(f"{name} is not a unit vector")
    if abs(e1.dot(e2)) > 1e-9:
        raise DegenerateBasis("basis vectors are not orthogonal")
    target2 = Circle2(project_to_plane(target.center, plane), target.radius)
    gens2 = GeneratorSet(
        tuple(Circle2(project_to_plane(g.center, plane), g.radius) for g in gens)
    )
    return circle_in_hull(target2, gens2, tol)


# -- counterexample reproductions ----------------------------------------------


def _face_distances(vertices, p: Point3) -> list[float]:
    """Distance from p to each face plane, positive toward the inside."""
    out = []
    for j in range(4):
        others = [vertices[i] for i in range(4) if i != j]
        n = (others[1] - others[0]).cross(others[2] - others[0])
        n = n.normalized()
        if (vertices[j] - others[0]).dot(n) < 0.0:
            n = n * -1.0
        out.append((p - others[0]).dot(n))
    return out


@dataclass(frozen=True)
class PairOutcome:
    j: int
    k: int
    result: Containment3Result


@dataclass(frozen=True)
class Example41Report:
    """Outcome of the two-sphere tetrahedron check over all 8 (j, k) pairs."""

    side: float
    r: float
    vertices: tuple[Point3, Point3, Point3, Point3]
    centers: tuple[Point3, Point3]  # (P_-1, P_0)
    face_distances: tuple[tuple[float, ...], tuple[float, ...]]
    outcomes: tuple[PairOutcome, ...]

    @property
    def all_refuted(self) -> bool:
        return all(not o.result.contained for o in self.outcomes)


def _ex41_target_gens(vertices, spheres, j: int, k: int):
    # k indexes the generator sphere: 0 -> S_0, -1 -> S_-1; target is the other
    s_m1, s_0 = spheres
    gen_sphere = s_0 if k == 0 else s_m1
    target = s_m1 if k == 0 else s_0
    gens = [gen_sphere] + [
        Sphere3(vertices[i], 0.0) for i in range(4) if i != j
    ]
    return target, gens


def example_4_1(
    side: float = 1.0,
    r: float = 0.1,
    tol: Tolerance = DEFAULT_TOLERANCE,
    seed_count: int = 2562,
) -> Example41Report:
    """Two equal spheres on the trisection points of the mid-edge axis.

    Every one of the 8 inclusions (choice of omitted vertex and of which
    sphere generates) is refuted by a negative-slack direction, and the
    omitted-vertex-3 cases additionally carry an exact 2D projection
    certificate in the plane through A2, A3 and the axis endpoint B.
    """
    verts = tetrahedron_from_cube(side)
    b, c, p_m1, p_0 = axis_points(*verts)
    face_d = (tuple(_face_distances(verts, p_m1)), tuple(_face_distances(verts, p_0)))
    for dists in face_d:
        if min(dists) < r + tol.eps_decision:
            raise PreconditionRadius(
                f"radius {r} does not fit strictly inside (min face distance {min(dists):.6g})"
            )
    spheres = (Sphere3(p_m1, r), Sphere3(p_0, r))
    plane = plane_through(b, verts[2], verts[3])
    outcomes = []
    for j in range(4):
        for k in (-1, 0):
            target, gens = _ex41_target_gens(verts, spheres, j, k)
            res = sphere_in_hull3(target, gens, tol, seed_count)
            if j == 3:
                cert = projection_reduction(target, gens, plane, tol)
                res = replace(res, projection_certificate=cert)
            outcomes.append(PairOutcome(j, k, res))
    return Example41Report(
        side=side,
        r=r,
        vertices=verts,
        centers=(p_m1, p_0),
        face_distances=face_d,
        outcomes=tuple(outcomes),
    )


@dataclass(frozen=True)
class Example42Report:
    """Chain of spheres tangent to a common guide arc inside the tetrahedron."""

    t: int
    arc_radius_factor: float
    side: float
    vertices: tuple[Point3, Point3, Point3, Point3]
    arc_center: Point3
    arc_radius: float
    sphere_indices: tuple[int, ...]  # -1, 0, 1, ..., t-2
    spheres: tuple[Sphere3, ...]
    tangency_residuals: tuple[float, ...]
    interior_margins: tuple[float, ...]
    outcomes: tuple[PairOutcome, ...]

    @property
    def all_refuted(self) -> bool:
        return all(not o.result.contained for o in self.outcomes)


def example_4_2(
    t: int,
    arc_radius_factor: float = 10.0,
    side: float = 1.0,
    r: float = 0.1,
    tol: Tolerance = DEFAULT_TOLERANCE,
    seed_count: int = 2562,
) -> Example42Report:
    """Extend the two-sphere axis configuration to t spheres on the axis.

    The interior centers divide the segment between the two original centers
    equidistantly.  A guide-arc center sits on the in-plane perpendicular of
    the axis at its midpoint, at height arc_radius_factor times the axis
    length; the arc is pinned tangent to the two end circles and every
    interior radius is chosen tangent to the same arc.  If any sphere would
    poke out of the tetrahedron, all radii shrink by a common offset (which
    preserves the tangencies, against a concentric arc) until every sphere
    is strictly inside; failing that raises ConstructionFailed.
    """
    if t < 3:
        raise ValueError(f"need t >= 3, got {t}")
    verts = tetrahedron_from_cube(side)
    b, c, p_m1, p_0 = axis_points(*verts)
    axis = (c - b).normalized()
    length = (c - b).norm()
    mid = (b + c) * 0.5
    # in-plane unit normal of the axis within the plane through A2, A3, B
    a2_rel = verts[2] - mid
    n = a2_rel - axis * a2_rel.dot(axis)
    n = n.normalized()

    height = arc_radius_factor * length
    center_o = mid + n * height

    indices = tuple([-1, 0] + list(range(1, t - 1)))
    centers = {-1: p_m1, 0: p_0}
    for i in range(1, t - 1):
        centers[i] = p_0 + (p_m1 - p_0) * (i / (t - 1))

    dist_end = center_o.distance_to(p_0)
    bulges = {i: dist_end - center_o.distance_to(centers[i]) for i in indices}

    # largest base radius keeping every sphere strictly inside
    margin_room = []
    for i in indices:
        d_min = min(_face_distances(verts, centers[i]))
        margin_room.append(d_min - tol.eps_decision - bulges[i])
    base_r = min(r, min(margin_room))
    if base_r <= 0.0:
        raise ConstructionFailed(
            "no positive radius keeps every sphere strictly inside the tetrahedron"
        )
    arc_radius = dist_end + base_r
    spheres = tuple(Sphere3(centers[i], base_r + bulges[i]) for i in indices)

    residuals = tuple(
        abs(center_o.distance_to(s.center) + s.radius - arc_radius) for s in spheres
    )
    margins = tuple(
        min(_face_distances(verts, s.center)) - s.radius for s in spheres
    )

    outcomes = []
    for j in range(4):
        for pos, k in enumerate(indices):
            target = spheres[pos]
            gens = [s for q, s in enumerate(spheres) if q != pos] + [
                Sphere3(verts[i], 0.0) for i in range(4) if i != j
            ]
            res = sphere_in_hull3(target, gens, tol, seed_count)
            outcomes.append(PairOutcome(j, k, res))

    return Example42Report(
        t=t,
        arc_radius_factor=arc_radius_factor,
        side=side,
        vertices=verts,
        arc_center=center_o,
        arc_radius=arc_radius,
        sphere_indices=indices,
        spheres=spheres,
        tangency_residuals=residuals,
        interior_margins=margins,
        outcomes=tuple(outcomes),
    )
