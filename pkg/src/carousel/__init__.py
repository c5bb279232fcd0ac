"""Circle/sphere convex-hull containment toolkit.

2D: support-function containment of circles in hulls of circles and points,
with arc-cover certificates and hull boundary construction.  Carousel
procedures: witness search over a triangle of sites, the point-only
decomposition rule, and the xi-sweep locating the critical scale of a fixed
witness.  3D: sphere-in-hull direction search and the tetrahedron
counterexample constructions, with exact 2D projection certificates.
"""

__version__ = "0.1.0"

from .errors import (
    CarouselError,
    CoincidentPoints,
    ConstructionFailed,
    DegenerateBasis,
    DegenerateHull,
    DegenerateRadius,
    EqualRadii,
    FocusInsideOrOn,
    GenerationExhausted,
    InvalidInstance,
    NestedCircles,
    NotInterior,
    ParseError,
    PreconditionRadius,
    SchemaError,
    UnsupportedKind,
)
from .hull import (
    ArcInterval,
    ArcPiece,
    ContainmentResult,
    GeneratorSet,
    HullBoundary,
    SegmentPiece,
    circle_in_hull,
    coverage_arc,
    hull_area,
    hull_boundary,
    merge_arcs,
    min_slack,
    support,
    uncovered_gaps,
)
from .planar import (
    DEFAULT_TOLERANCE,
    AffineSimilarity,
    Circle2,
    Homothety,
    Point2,
    Tolerance,
    circle,
    external_homothety_center,
    homothety_apply,
    homothety_apply_circle,
    homothety_conjugate,
    orientation,
    pt,
    reangle_clearance,
    reangle_contains,
    tangent_points_from_point,
)
from .spheres import (
    Containment3Result,
    Example41Report,
    Example42Report,
    Point3,
    Sphere3,
    axis_points,
    example_4_1,
    example_4_2,
    plane_through,
    projection_reduction,
    sphere_in_hull3,
    tetrahedron_from_cube,
)
from .witness import (
    CarouselInstance,
    RngConfig,
    Tangency,
    Witness,
    XiSweepReport,
    corollary_witness_search,
    random_instance,
    scaled_instance,
    sweep_slack,
    two_carousel_points,
    witness_search,
    xi_sweep_fixed,
)
