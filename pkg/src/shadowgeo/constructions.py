"""Builders for the reference configurations and seeded random scenes."""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from .geometry import (
    CLOSED,
    OPEN,
    Ball,
    GenerationFailed,
    InvariantViolation,
    Scene,
    pair_relation,
)
from .sampling import sample_sphere

_CONSTRUCTION_TOL = 1e-12
_MAX_REJECTIONS = 100_000


@dataclass(eq=False)
class LemmaConfig:
    """Equilateral triangle with a disc of half the altitude at each vertex.

    With side s the discs have radius s*sqrt(3)/4 < s/2, so they are
    pairwise disjoint, while the circumscribed circle (radius s/sqrt(3))
    stays inside the convex hull of the three discs.
    """

    side: float
    vertices: np.ndarray
    disc_radius: float
    scene: Scene

    @property
    def circumradius(self) -> float:
        return self.side / math.sqrt(3.0)

    @property
    def circumcenter(self) -> np.ndarray:
        return self.vertices.mean(axis=0)


def build_lemma(side: float = 1.0, topology: str = CLOSED) -> LemmaConfig:
    """Three discs of radius side*sqrt(3)/4 at the vertices of an equilateral triangle."""
    if not (math.isfinite(side) and side > 0):
        raise ValueError("triangle side must be positive")
    s = float(side)
    vertices = np.array([
        [0.0, 0.0],
        [s, 0.0],
        [s / 2.0, s * math.sqrt(3.0) / 2.0],
    ])
    rho = s * math.sqrt(3.0) / 4.0
    balls = [Ball(v, rho, topology) for v in vertices]
    scene = Scene(2, balls, label=f"lemma-triangle-side-{s:g}")
    if scene.disjointness_violations(_CONSTRUCTION_TOL):
        raise InvariantViolation("vertex discs must be pairwise disjoint")
    return LemmaConfig(side=s, vertices=vertices, disc_radius=rho, scene=scene)


@dataclass(eq=False)
class Cube14Config:
    """Fourteen balls centered on the unit sphere: cube vertices plus face centers.

    The eight vertex balls have radius 1/sqrt(3), half the cube edge, so
    adjacent ones are exactly tangent; each face ball's radius
    sqrt(2 - 2/sqrt(3)) - 1/sqrt(3) makes it tangent to the four vertex
    balls of its face.  That yields 12 + 24 tangent pairs and no overlaps.
    """

    scene: Scene
    vertex_radius: float
    face_radius: float
    tangent_vertex_pairs: int
    tangent_face_pairs: int


def build_cube14(topology: str = OPEN) -> Cube14Config:
    """The 8 + 6 tangent ball configuration, self-checked at 1e-12."""
    r = 1.0 / math.sqrt(3.0)
    r1 = math.sqrt(2.0 - 2.0 / math.sqrt(3.0)) - r
    balls = []
    for sx in (1.0, -1.0):
        for sy in (1.0, -1.0):
            for sz in (1.0, -1.0):
                balls.append(Ball(np.array([sx, sy, sz]) * r, r, topology))
    for axis in range(3):
        for sign in (1.0, -1.0):
            c = np.zeros(3)
            c[axis] = sign
            balls.append(Ball(c, r1, topology))
    scene = Scene(3, balls, label="cube14")
    counts = {"vv_tangent": 0, "vf_tangent": 0, "ff_tangent": 0, "overlapping": 0}
    for i in range(14):
        for j in range(i + 1, 14):
            rel = pair_relation(balls[i], balls[j], _CONSTRUCTION_TOL)
            if rel == "overlapping":
                counts["overlapping"] += 1
            elif rel == "tangent":
                if i < 8 and j < 8:
                    counts["vv_tangent"] += 1
                elif i >= 8 and j >= 8:
                    counts["ff_tangent"] += 1
                else:
                    counts["vf_tangent"] += 1
    if counts != {"vv_tangent": 12, "vf_tangent": 24, "ff_tangent": 0, "overlapping": 0}:
        raise InvariantViolation(f"unexpected tangency structure: {counts}")
    return Cube14Config(scene=scene, vertex_radius=r, face_radius=r1,
                        tangent_vertex_pairs=12, tangent_face_pairs=24)


def random_equal_balls(dim: int, k: int, radius: float, seed: int,
                       topology: str = CLOSED, box: float = 5.0,
                       min_gap: float = 0.01) -> Scene:
    """k disjoint equal balls with centers drawn uniformly from [-box, box]^dim.

    Rejection sampling keeps center separations at least 2*radius + min_gap;
    the same seed always returns the same scene.
    """
    if k < 0 or dim < 1 or radius <= 0:
        raise ValueError("need dim >= 1, k >= 0 and a positive radius")
    rng = np.random.default_rng(seed)
    centers: list[np.ndarray] = []
    rejections = 0
    while len(centers) < k:
        c = rng.uniform(-box, box, dim)
        if all(np.linalg.norm(c - o) >= 2 * radius + min_gap for o in centers):
            centers.append(c)
        else:
            rejections += 1
            if rejections > _MAX_REJECTIONS:
                raise GenerationFailed(
                    f"could not place {k} balls of radius {radius} in a box of half-width {box}")
    balls = [Ball(c, radius, topology) for c in centers]
    return Scene(dim, balls, label=f"random-equal-{dim}d-k{k}-seed{seed}")


def random_disjoint_balls(dim: int, k: int, seed: int,
                          radius_range: tuple[float, float] = (0.2, 1.5),
                          topology: str = CLOSED, box: float = 5.0,
                          min_gap: float = 0.01) -> Scene:
    """k disjoint balls with radii drawn uniformly from radius_range."""
    lo, hi = radius_range
    if k < 0 or dim < 1 or not 0 < lo <= hi:
        raise ValueError("need dim >= 1, k >= 0 and 0 < lo <= hi")
    rng = np.random.default_rng(seed)
    placed: list[tuple[np.ndarray, float]] = []
    rejections = 0
    while len(placed) < k:
        r = rng.uniform(lo, hi)
        c = rng.uniform(-box, box, dim)
        if all(np.linalg.norm(c - o) >= r + ro + min_gap for o, ro in placed):
            placed.append((c, r))
        else:
            rejections += 1
            if rejections > _MAX_REJECTIONS:
                raise GenerationFailed(
                    f"could not place {k} balls with radii in {radius_range}")
    balls = [Ball(c, r, topology) for c, r in placed]
    return Scene(dim, balls, label=f"random-{dim}d-k{k}-seed{seed}")


def boundary_sample(scene: Scene, ball_index: int, count: int, seed: int) -> list[np.ndarray]:
    """Seeded points on one ball's boundary sphere, outside all other closed balls.

    Points falling inside or on another ball are filtered out, so two
    tangent balls lose each other's tangency point.  May return fewer than
    ``count`` points.
    """
    if not 0 <= ball_index < len(scene.balls):
        raise IndexError(f"ball index {ball_index} out of range")
    b = scene.balls[ball_index]
    dirs = sample_sphere(count, seed, scene.dim)
    pts = b.center[None, :] + b.radius * dirs
    out = []
    for p in pts:
        if all(np.linalg.norm(p - o.center) > o.radius
               for j, o in enumerate(scene.balls) if j != ball_index):
            out.append(p)
    return out


def random_exterior_point(scene: Scene, seed: int, box: float = 6.0,
                          standoff: float = 0.05) -> np.ndarray:
    """A seeded point at clearance >= standoff from every ball in the scene."""
    rng = np.random.default_rng(seed)
    for _ in range(_MAX_REJECTIONS):
        x = rng.uniform(-box, box, scene.dim)
        if not scene.balls or float(scene.clearances(x).min()) >= standoff:
            return x
    raise GenerationFailed("could not find an exterior point with the requested standoff")
