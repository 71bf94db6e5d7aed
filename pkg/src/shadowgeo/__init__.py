"""Shadow and coverage decisions for families of pairwise disjoint balls.

A point is shadowed by a family of balls when every straight line through
it meets at least one ball.  The package decides that question exactly in
the plane and in space by reducing it to coverage problems on a circle or
on the unit sphere, searches for avoiding affine planes in any dimension,
and ships the reference constructions used by the bundled verification
suites.
"""

from .circlecover import Arc, ArcSet, CircleCoverage, cover_circle, uncovered_arcs
from .constructions import (
    Cube14Config,
    LemmaConfig,
    build_cube14,
    build_lemma,
    random_disjoint_balls,
    random_equal_balls,
)
from .geometry import (
    CLOSED,
    OPEN,
    Ball,
    Band,
    Cap,
    DimensionUnsupported,
    GeometryError,
    PointInsideBall,
    Scene,
    ball_band,
    ball_sphere_cap,
    tangent_arcs,
)
from .sceneio import dump_scene, load_scene_file, load_scene_text, scene_from_dict, scene_to_dict
from .shadow import (
    NOT_SHADOWED,
    POSSIBLY_SHADOWED,
    SHADOWED,
    PlaneFrame,
    ShadowVerdict,
    find_avoiding_plane,
    heuristic_shadow,
    point_shadow,
    tangent_shadow,
)
from .spherecover import CapSet, SphereCoverage, cover_sphere, falsify

__version__ = "0.1.0"

__all__ = [
    "Arc",
    "ArcSet",
    "Ball",
    "Band",
    "Cap",
    "CapSet",
    "CircleCoverage",
    "CLOSED",
    "Cube14Config",
    "DimensionUnsupported",
    "GeometryError",
    "LemmaConfig",
    "NOT_SHADOWED",
    "OPEN",
    "PlaneFrame",
    "PointInsideBall",
    "POSSIBLY_SHADOWED",
    "Scene",
    "ShadowVerdict",
    "SHADOWED",
    "SphereCoverage",
    "__version__",
    "ball_band",
    "ball_sphere_cap",
    "build_cube14",
    "build_lemma",
    "cover_circle",
    "cover_sphere",
    "dump_scene",
    "falsify",
    "find_avoiding_plane",
    "heuristic_shadow",
    "load_scene_file",
    "load_scene_text",
    "point_shadow",
    "random_disjoint_balls",
    "random_equal_balls",
    "scene_from_dict",
    "scene_to_dict",
    "tangent_arcs",
    "tangent_shadow",
]
