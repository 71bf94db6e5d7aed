"""Primitives for line-transversal geometry of ball families.

Vectors are 1-D float numpy arrays and angles are radians throughout.
The central reduction: seen from a point x strictly outside a ball with
center c and radius r, the unit directions d whose line through x meets
the ball form the band |d . u| >= cos(alpha), where u = (c - x)/|c - x|
and alpha = arcsin(r / |c - x|).  Everything else in this package is
built from that fact, from its restriction to tangent planes of the unit
sphere, and from the spherical cap a ball cuts out of the unit sphere.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from .circlecover import PERIOD_LINE, Arc

TOL = 1e-9
"""Default predicate tolerance; scene coordinates are assumed |x| <~ 1e2."""

OPEN = "open"
CLOSED = "closed"
_TOPOLOGIES = (OPEN, CLOSED)


class GeometryError(Exception):
    """A geometric precondition does not hold."""


class PointInsideBall(GeometryError):
    """The query point lies strictly inside a ball."""

    def __init__(self, index: int | None = None):
        self.index = index
        where = f" (ball {index})" if index is not None else ""
        super().__init__(f"point lies strictly inside a ball{where}")


class DimensionUnsupported(GeometryError):
    """The operation has no exact implementation in this dimension."""


class BadDimension(GeometryError):
    """A dimension or codimension argument is out of range."""


class GenerationFailed(GeometryError):
    """A rejection sampler exhausted its budget."""


class InvariantViolation(GeometryError):
    """A construction failed its own self-check."""


def as_vector(x, dim: int | None = None) -> np.ndarray:
    """Coerce to a finite 1-D float array, optionally checking its length."""
    v = np.atleast_1d(np.asarray(x, dtype=float))
    if v.ndim != 1:
        raise ValueError(f"expected a vector, got shape {v.shape}")
    if dim is not None and v.size != dim:
        raise ValueError(f"expected {dim} coordinates, got {v.size}")
    if not np.all(np.isfinite(v)):
        raise ValueError("coordinates must be finite")
    return v


def unit(v) -> np.ndarray:
    v = np.asarray(v, dtype=float)
    n = float(np.linalg.norm(v))
    if n < 1e-300:
        raise ValueError("cannot normalize a zero vector")
    return v / n


def orthonormal_basis(axis) -> tuple[np.ndarray, np.ndarray]:
    """Deterministic orthonormal basis of the plane normal to a unit 3-vector.

    e1 = normalize(k x axis) where k is the coordinate axis least aligned
    with ``axis`` (ties broken by lowest index), e2 = axis x e1.  Fixing
    the rule keeps every arc angle in the package reproducible.
    """
    axis = as_vector(axis, 3)
    k = np.zeros(3)
    k[int(np.argmin(np.abs(axis)))] = 1.0
    e1 = unit(np.cross(k, axis))
    return e1, np.cross(axis, e1)


@dataclass(frozen=True, eq=False)
class Ball:
    """A ball with an open or closed topology flag.

    The flag only matters on the boundary sphere: tangency counts as a hit
    for a closed ball and as a miss for an open one.
    """

    center: np.ndarray
    radius: float
    topology: str = CLOSED

    def __post_init__(self) -> None:
        object.__setattr__(self, "center", as_vector(self.center))
        if not (math.isfinite(self.radius) and self.radius > 0):
            raise ValueError(f"ball radius must be positive, got {self.radius!r}")
        if self.topology not in _TOPOLOGIES:
            raise ValueError(f"topology must be 'open' or 'closed', got {self.topology!r}")

    @property
    def dim(self) -> int:
        return self.center.size

    def clearance(self, p) -> float:
        """Distance from p to the boundary sphere; negative inside."""
        p = as_vector(p, self.dim)
        return float(np.linalg.norm(p - self.center)) - self.radius

    def contains(self, p, tol: float = 0.0) -> bool:
        c = self.clearance(p)
        return c < -tol if self.topology == OPEN else c <= tol


@dataclass(eq=False)
class Scene:
    """A finite family of same-dimension balls, expected pairwise disjoint.

    Disjointness is checked, not enforced: callers decide what to do with
    the offending pairs reported by :meth:`disjointness_violations`.
    """

    dim: int
    balls: list[Ball]
    label: str = ""

    def __post_init__(self) -> None:
        if self.dim < 1:
            raise ValueError("scene dimension must be >= 1")
        for i, b in enumerate(self.balls):
            if b.dim != self.dim:
                raise ValueError(f"ball {i} has dimension {b.dim}, scene has {self.dim}")

    def __len__(self) -> int:
        return len(self.balls)

    def clearances(self, x) -> np.ndarray:
        """Per-ball distance from x to the boundary sphere (negative inside)."""
        x = as_vector(x, self.dim)
        return np.array([b.clearance(x) for b in self.balls])

    def disjointness_violations(self, tol: float = TOL) -> list[tuple[int, int]]:
        """Index pairs whose balls overlap by more than tol."""
        bad = []
        for i in range(len(self.balls)):
            for j in range(i + 1, len(self.balls)):
                gap = float(np.linalg.norm(self.balls[i].center - self.balls[j].center))
                if gap < self.balls[i].radius + self.balls[j].radius - tol:
                    bad.append((i, j))
        return bad


@dataclass(frozen=True, eq=False)
class Band:
    """Directions whose line through the viewpoint meets one ball.

    The set {d : |d . axis| >= cos(half_angle)} on the unit direction
    sphere.  ``boundary`` marks a viewpoint sitting on the ball's sphere,
    where half_angle degenerates to pi/2 and the caller must apply the
    ball's topology.
    """

    axis: np.ndarray
    half_angle: float
    boundary: bool = False

    def __post_init__(self) -> None:
        object.__setattr__(self, "axis", as_vector(self.axis))
        if not 0.0 <= self.half_angle <= math.pi / 2:
            raise ValueError(f"band half_angle out of [0, pi/2]: {self.half_angle!r}")

    def contains_direction(self, d, tol: float = 0.0) -> bool:
        d = as_vector(d, self.axis.size)
        return abs(float(d @ self.axis)) >= math.cos(self.half_angle) - tol


@dataclass(frozen=True, eq=False)
class Cap:
    """Spherical cap {p in S^2 : p . axis >= cos(angular_radius)}.

    angular_radius 0 means empty, pi means the whole sphere.
    """

    axis: np.ndarray
    angular_radius: float
    topology: str = CLOSED

    def __post_init__(self) -> None:
        axis = as_vector(self.axis, 3)
        n = float(np.linalg.norm(axis))
        if not math.isclose(n, 1.0, rel_tol=0, abs_tol=1e-9):
            raise ValueError("cap axis must be a unit vector")
        if not -1e-12 <= self.angular_radius <= math.pi + 1e-12:
            raise ValueError(f"cap angular_radius out of [0, pi]: {self.angular_radius!r}")
        if self.topology not in _TOPOLOGIES:
            raise ValueError(f"topology must be 'open' or 'closed', got {self.topology!r}")
        object.__setattr__(self, "axis", axis)
        object.__setattr__(self, "angular_radius", min(max(self.angular_radius, 0.0), math.pi))

    @property
    def is_empty(self) -> bool:
        return self.angular_radius <= 0.0

    @property
    def is_full(self) -> bool:
        return self.angular_radius >= math.pi

    def contains(self, p, tol: float = 0.0) -> bool:
        p = as_vector(p, 3)
        return float(p @ self.axis) >= math.cos(self.angular_radius) - tol


def ball_band(x, ball: Ball, tol: float = TOL) -> Band:
    """Band of directions through x whose line meets the ball.

    Raises PointInsideBall when x is inside by more than tol; a viewpoint
    on the sphere (within tol) yields the degenerate half_angle pi/2 with
    the boundary flag set.
    """
    x = as_vector(x, ball.dim)
    v = ball.center - x
    d = float(np.linalg.norm(v))
    if d < ball.radius - tol:
        raise PointInsideBall()
    if abs(d - ball.radius) <= tol:
        return Band(axis=v / d, half_angle=math.pi / 2, boundary=True)
    return Band(axis=v / d, half_angle=math.asin(min(ball.radius / d, 1.0)))


def ball_sphere_cap(ball: Ball) -> Cap:
    """Intersection of a ball with the unit sphere about the origin, as a cap.

    cos(beta) = (|c|^2 + 1 - r^2) / (2 |c|); values above 1 give the empty
    cap, below -1 the full sphere.  A ball centered at the origin is a
    special case: it meets the sphere iff its radius reaches 1.
    """
    if ball.dim != 3:
        raise DimensionUnsupported("caps are defined on the unit sphere in R^3")
    n = float(np.linalg.norm(ball.center))
    if n < 1e-300:
        reaches = ball.radius > 1.0 or (ball.radius >= 1.0 and ball.topology == CLOSED)
        return Cap(np.array([0.0, 0.0, 1.0]), math.pi if reaches else 0.0, ball.topology)
    q = (n * n + 1.0 - ball.radius * ball.radius) / (2.0 * n)
    if q > 1.0:
        return Cap(ball.center / n, 0.0, ball.topology)
    if q < -1.0:
        return Cap(ball.center / n, math.pi, ball.topology)
    return Cap(ball.center / n, math.acos(q), ball.topology)


def tangent_arcs(x, ball: Ball, tol: float = TOL) -> list[Arc]:
    """Tangent directions at a unit-sphere point x whose line meets the ball.

    x must be a point of the unit sphere outside the ball.  Writing
    v = c - x and v_T for its projection onto the tangent plane at x, the
    tangent line along d(theta) meets the closed ball iff
    |v_T| |cos(theta - theta0)| >= sqrt(|v|^2 - r^2).  The result is one
    period-pi arc, or no arc when the ball stays clear of every tangent
    line (including the degenerate case v_T = 0 of a ball sitting on the
    normal axis).
    """
    x = as_vector(x, 3)
    v = ball.center - x
    nv2 = float(v @ v)
    r = ball.radius
    if nv2 < (r - tol) * (r - tol):
        raise PointInsideBall()
    v_t = v - float(v @ x) * x
    n_t = float(np.linalg.norm(v_t))
    reach = math.sqrt(max(nv2 - r * r, 0.0))
    if n_t < 1e-300 or reach > n_t:
        return []
    e1, e2 = orthonormal_basis(x)
    theta0 = math.atan2(float(v_t @ e2), float(v_t @ e1))
    return [Arc(theta0, math.acos(min(reach / n_t, 1.0)), PERIOD_LINE)]


def pair_relation(b1: Ball, b2: Ball, tol: float = TOL) -> str:
    """Classify two balls as 'disjoint', 'tangent', or 'overlapping'."""
    if b1.dim != b2.dim:
        raise ValueError("balls live in different dimensions")
    gap = float(np.linalg.norm(b1.center - b2.center)) - (b1.radius + b2.radius)
    if abs(gap) <= tol:
        return "tangent"
    return "overlapping" if gap < 0 else "disjoint"


def line_point_distance(x, d, p) -> float:
    """Distance from p to the line through x with unit direction d."""
    x = as_vector(x)
    d = as_vector(d, x.size)
    w = as_vector(p, x.size) - x
    return float(np.linalg.norm(w - float(w @ d) * d))


def line_ball_clearance(x, d, ball: Ball) -> float:
    """Distance from the line (x, d) to the ball surface; negative when it cuts in."""
    return line_point_distance(x, d, ball.center) - ball.radius


def line_hits_ball(x, d, ball: Ball, tol: float = 0.0) -> bool:
    """Whether the line (x, d) meets the ball, honoring its topology."""
    c = line_ball_clearance(x, d, ball)
    return c < -tol if ball.topology == OPEN else c <= tol
