"""Discrete affine geometry of convex equal-area polygons."""

from .adss import Adss, AdssNode, AdssSegment, adss_endpoints_vs_evolute_cusps, compute_adss
from .core import AffineMap2, HyperbolaBranch, Line2, hyperbola_line_intersection, line_intersection
from .curve import (
    ConvexCurve,
    affine_arclength,
    approximate,
    circle,
    ellipse,
    from_polyline,
    superellipse,
    uniform_affine_sample,
)
from .diffgeo import SextacticReport, delta_mu, quadratic_moment, sextactic_edges
from .errors import GeometryError, InternalInvariantViolation
from .evolute import EvoluteGraph, ParallelPolygon, evolute_graph, parallel, parallel_cusp_on_evolute
from .isoperimetric import IsoperimetricReport, isoperimetric_check, mixed_area
from .moduli import (
    ClosureCase,
    ModuliPoint,
    classify_closure,
    close_open_chain,
    construct,
    regular_R,
    sample_polygons,
)
from .polygon import (
    EqualAreaPolygon,
    ValidationReport,
    curvatures,
    gen_affinely_regular,
    normalize_unit_l,
    normals,
    validate,
)
from .render import RenderScene, render_svg

__version__ = "0.1.0"
