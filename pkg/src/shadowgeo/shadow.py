"""Point-shadow, tangent-shadow, and avoiding-plane decision procedures.

A point is "shadowed" by a family of pairwise-disjoint balls when every
line through it meets at least one ball.  In the plane this is an arc
union on the period-pi circle of line directions; in space it is a cap
union on the direction sphere.  A point on some ball's boundary follows
that ball's topology: a closed ball shadows it trivially (the point is in
the ball), an open ball restricts the candidate lines to its tangent
plane, where the test becomes a circle cover again.

Exact decisions exist for dimensions 2 and 3.  Above that a seeded
multi-start ascent can certify "not shadowed" by producing a verified
witness line, but its failure to find one proves nothing.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field

import numpy as np

from .circlecover import PERIOD_LINE, Arc, ArcSet, cover_circle
from .geometry import (
    CLOSED,
    OPEN,
    TOL,
    BadDimension,
    Ball,
    Band,
    Cap,
    DimensionUnsupported,
    PointInsideBall,
    Scene,
    as_vector,
    ball_band,
    line_ball_clearance,
    orthonormal_basis,
    tangent_arcs,
    unit,
)
from .spherecover import (
    COVERED,
    INDETERMINATE as COVER_INDETERMINATE,
    UNCOVERED,
    CapSet,
    cover_sphere,
)
from .sampling import sample_sphere

SHADOWED = "shadowed"
NOT_SHADOWED = "not_shadowed"
INDETERMINATE = "indeterminate"
POSSIBLY_SHADOWED = "possibly_shadowed"


@dataclass(eq=False)
class ShadowVerdict:
    """Outcome of a shadow decision.

    For a not-shadowed verdict the witness line (witness_point,
    witness_direction) misses every ball and ``margin`` is its smallest
    line-to-surface clearance (length units, tangencies at a boundary
    viewpoint excluded).  ``gap`` is the largest angular gap for the
    circle-based tests.  ``possibly_shadowed`` is the honest answer of the
    heuristic search when it finds nothing: it is not a proof.
    """

    verdict: str
    witness_point: np.ndarray | None = None
    witness_direction: np.ndarray | None = None
    margin: float | None = None
    gap: float | None = None
    per_ball_bands: list[Band] = field(default_factory=list)
    trivial: bool = False
    boundary_index: int | None = None
    method: str = ""
    search_margin: float | None = None

    @property
    def shadowed(self) -> bool | None:
        return {SHADOWED: True, NOT_SHADOWED: False}.get(self.verdict)


@dataclass(eq=False)
class PlaneFrame:
    """An affine m-plane given by a point and m orthonormal basis rows."""

    point: np.ndarray
    basis: np.ndarray

    def __post_init__(self) -> None:
        self.point = as_vector(self.point)
        self.basis = np.atleast_2d(np.asarray(self.basis, dtype=float))
        if self.basis.shape[1] != self.point.size:
            raise ValueError("basis rows must match the point's dimension")
        gram = self.basis @ self.basis.T
        if np.max(np.abs(gram - np.eye(self.basis.shape[0]))) > 1e-9:
            raise ValueError("plane basis must be orthonormal")

    @property
    def m(self) -> int:
        return self.basis.shape[0]

    def distance(self, p) -> float:
        """Distance from p to the affine plane."""
        v = as_vector(p, self.point.size) - self.point
        return float(np.linalg.norm(v - self.basis.T @ (self.basis @ v)))


def line_clearances(scene: Scene, x, d) -> np.ndarray:
    """Per-ball clearance of the line through x with unit direction d."""
    return np.array([line_ball_clearance(x, d, b) for b in scene.balls])


def witness_clearance(scene: Scene, x, d, skip: tuple[int, ...] = ()) -> float:
    """Smallest line-ball clearance over the scene, ignoring ``skip`` indices."""
    vals = [
        line_ball_clearance(x, d, b)
        for i, b in enumerate(scene.balls)
        if i not in skip
    ]
    return min(vals) if vals else math.inf


def shadow_arcs_2d(scene: Scene, x, tol: float = TOL) -> ArcSet:
    """Period-pi arcs of line directions through x hitting each disc.

    Assumes x strictly outside every disc; arc centers are the polar
    angles of the center directions and half-widths arcsin(r/dist).
    """
    x = as_vector(x, 2)
    arcs = []
    for b in scene.balls:
        v = b.center - x
        dist = float(np.linalg.norm(v))
        arcs.append(Arc(math.atan2(v[1], v[0]), math.asin(min(b.radius / dist, 1.0)),
                        PERIOD_LINE))
    return ArcSet(PERIOD_LINE, arcs)


def _classify_point(scene: Scene, x, tol: float) -> tuple[np.ndarray, list[int]]:
    clear = scene.clearances(x)
    inside = np.flatnonzero(clear < -tol)
    if inside.size:
        raise PointInsideBall(int(inside[0]))
    touching = [i for i in range(len(scene.balls)) if abs(clear[i]) <= tol]
    return clear, touching


def point_shadow(scene: Scene, x, tol: float = TOL, falsifier_grid: int = 20000) -> ShadowVerdict:
    """Exact shadow decision for a point in dimension 2 or 3."""
    x = as_vector(x, scene.dim)
    if scene.dim not in (2, 3):
        raise DimensionUnsupported(
            f"exact shadow decisions cover dimensions 2 and 3, not {scene.dim}; "
            "use heuristic_shadow")
    _, touching = _classify_point(scene, x, tol)
    bands = [ball_band(x, b, tol) for b in scene.balls]
    if touching:
        closed_touch = [i for i in touching if scene.balls[i].topology == CLOSED]
        if closed_touch:
            return ShadowVerdict(SHADOWED, trivial=True, boundary_index=closed_touch[0],
                                 per_ball_bands=bands, method="boundary-closed")
        return _boundary_open_shadow(scene, x, touching, bands, tol)
    if scene.dim == 2:
        return _interior_shadow_2d(scene, x, bands, tol)
    return _interior_shadow_3d(scene, x, bands, tol, falsifier_grid)


def _interior_shadow_2d(scene: Scene, x, bands, tol: float) -> ShadowVerdict:
    cov = cover_circle(shadow_arcs_2d(scene, x, tol), tol)
    if cov.covered:
        return ShadowVerdict(SHADOWED, per_ball_bands=bands, gap=0.0, method="arc-union")
    d = np.array([math.cos(cov.witness), math.sin(cov.witness)])
    return ShadowVerdict(NOT_SHADOWED, witness_point=np.array(x, dtype=float),
                         witness_direction=d, margin=witness_clearance(scene, x, d),
                         gap=cov.largest_gap, per_ball_bands=bands, method="arc-union")


def _interior_shadow_3d(scene: Scene, x, bands, tol: float, falsifier_grid: int) -> ShadowVerdict:
    caps = []
    for band, ball in zip(bands, scene.balls):
        caps.append(Cap(band.axis, band.half_angle, ball.topology))
        caps.append(Cap(-band.axis, band.half_angle, ball.topology))
    cov = cover_sphere(CapSet(caps), tol, falsifier_grid)
    if cov.verdict == COVERED:
        return ShadowVerdict(SHADOWED, per_ball_bands=bands, method="cap-union")
    if cov.verdict == UNCOVERED:
        d = cov.witness
        return ShadowVerdict(NOT_SHADOWED, witness_point=np.array(x, dtype=float),
                             witness_direction=d, margin=witness_clearance(scene, x, d),
                             gap=None, per_ball_bands=bands, method="cap-union",
                             search_margin=cov.margin)
    return ShadowVerdict(INDETERMINATE, per_ball_bands=bands, method="cap-union",
                         search_margin=cov.margin)


def _boundary_open_shadow(scene: Scene, x, touching, bands, tol: float) -> ShadowVerdict:
    """Shadow decision for x on the boundary of one or more open balls.

    A line through x misses a touching open ball iff its direction is
    orthogonal to that ball's axis, so the candidates are the common
    orthogonal directions of all touching axes: a tangent great circle for
    one constraint in R^3, a single line for two independent constraints,
    nothing for three.
    """
    axes = [bands[i].axis for i in touching]
    base = [axes[0]]
    for a in axes[1:]:
        if all(abs(abs(float(a @ b)) - 1.0) > 1e-9 for b in base):
            base.append(a)
    if scene.dim == 2:
        if len(base) >= 2:
            return ShadowVerdict(SHADOWED, per_ball_bands=bands, method="boundary-pinched",
                                 boundary_index=touching[0])
        u = base[0]
        d = np.array([-u[1], u[0]])
        return _candidate_line_verdict(scene, x, d, touching, bands, tol)
    if len(base) == 1:
        return _great_circle_shadow(scene, x, touching, base[0], bands, tol)
    d = np.cross(base[0], base[1])
    n = float(np.linalg.norm(d))
    if n < 1e-12 or any(abs(float(d @ a)) / n > 1e-9 for a in base[2:]):
        return ShadowVerdict(SHADOWED, per_ball_bands=bands, method="boundary-pinched",
                             boundary_index=touching[0])
    return _candidate_line_verdict(scene, x, d / n, touching, bands, tol)


def _candidate_line_verdict(scene: Scene, x, d, touching, bands, tol: float) -> ShadowVerdict:
    """Judge the single line that could miss every touching open ball."""
    for j, b in enumerate(scene.balls):
        if j in touching:
            continue
        c = line_ball_clearance(x, d, b)
        hit = c < -tol or (abs(c) <= tol and b.topology == CLOSED)
        if hit:
            return ShadowVerdict(SHADOWED, per_ball_bands=bands, method="boundary-candidate",
                                 boundary_index=touching[0])
    return ShadowVerdict(NOT_SHADOWED, witness_point=np.array(x, dtype=float),
                         witness_direction=np.asarray(d, dtype=float),
                         margin=witness_clearance(scene, x, d, skip=tuple(touching)),
                         per_ball_bands=bands, method="boundary-candidate",
                         boundary_index=touching[0])


def _great_circle_shadow(scene: Scene, x, touching, u, bands, tol: float) -> ShadowVerdict:
    """Circle cover over the tangent great circle orthogonal to axis u."""
    e1, e2 = orthonormal_basis(u)
    arcs = []
    for j, band in enumerate(bands):
        if j in touching:
            continue
        w = band.axis
        c1, c2 = float(w @ e1), float(w @ e2)
        reach = math.hypot(c1, c2)
        blocked = math.cos(band.half_angle)
        if reach < 1e-15 or blocked > reach:
            continue
        arcs.append(Arc(math.atan2(c2, c1), math.acos(min(blocked / reach, 1.0)),
                        PERIOD_LINE))
    cov = cover_circle(ArcSet(PERIOD_LINE, arcs), tol)
    if cov.covered:
        return ShadowVerdict(SHADOWED, per_ball_bands=bands, gap=0.0,
                             method="boundary-circle", boundary_index=touching[0])
    d = math.cos(cov.witness) * e1 + math.sin(cov.witness) * e2
    return ShadowVerdict(NOT_SHADOWED, witness_point=np.array(x, dtype=float),
                         witness_direction=d,
                         margin=witness_clearance(scene, x, d, skip=tuple(touching)),
                         gap=cov.largest_gap, per_ball_bands=bands,
                         method="boundary-circle", boundary_index=touching[0])


def tangent_shadow(scene: Scene, x, tol: float = TOL) -> ShadowVerdict:
    """Shadow decision restricted to tangent lines of S^2 at a sphere point x.

    x is normalized onto the unit sphere and must be outside every ball.
    The verdict says whether the balls block every tangent line at x.
    """
    if scene.dim != 3:
        raise DimensionUnsupported("tangent shadows are defined on S^2 in R^3")
    x = unit(as_vector(x, 3))
    arcs: list[Arc] = []
    for b in scene.balls:
        arcs.extend(tangent_arcs(x, b, tol))
    cov = cover_circle(ArcSet(PERIOD_LINE, arcs), tol)
    if cov.covered:
        return ShadowVerdict(SHADOWED, gap=0.0, method="tangent")
    e1, e2 = orthonormal_basis(x)
    d = math.cos(cov.witness) * e1 + math.sin(cov.witness) * e2
    return ShadowVerdict(NOT_SHADOWED, witness_point=x, witness_direction=d,
                         margin=witness_clearance(scene, x, d), gap=cov.largest_gap,
                         method="tangent")


def _band_margin(d: np.ndarray, axes: np.ndarray, cos_alpha: np.ndarray) -> float:
    return float(np.min(cos_alpha - np.abs(axes @ d)))


def heuristic_shadow(scene: Scene, x, restarts: int = 64, seed: int = 0,
                     tol: float = TOL) -> ShadowVerdict:
    """Witness-search shadow test for any dimension.

    Maximizes mu(d) = min_i (cos(alpha_i) - |d . u_i|) over unit directions
    by seeded multi-start ascent.  A best margin above tol certifies "not
    shadowed" with a re-verified witness line; anything else returns
    possibly_shadowed, which is not a proof of shadowing.  Dimension 2
    delegates to the exact decision.
    """
    x = as_vector(x, scene.dim)
    if scene.dim == 2:
        return point_shadow(scene, x, tol)
    _, touching = _classify_point(scene, x, tol)
    if touching:
        if scene.dim == 3:
            return point_shadow(scene, x, tol)
        closed_touch = [i for i in touching if scene.balls[i].topology == CLOSED]
        if closed_touch:
            return ShadowVerdict(SHADOWED, trivial=True, boundary_index=closed_touch[0],
                                 method="boundary-closed")
        return ShadowVerdict(POSSIBLY_SHADOWED, method="heuristic",
                             boundary_index=touching[0])
    bands = [ball_band(x, b, tol) for b in scene.balls]
    if not bands:
        d = np.zeros(scene.dim)
        d[0] = 1.0
        return ShadowVerdict(NOT_SHADOWED, witness_point=np.array(x, dtype=float),
                             witness_direction=d, margin=math.inf,
                             per_ball_bands=bands, method="heuristic", search_margin=math.inf)
    axes = np.stack([b.axis for b in bands])
    cos_alpha = np.array([math.cos(b.half_angle) for b in bands])
    best_d, best_mu = None, -math.inf
    for start in sample_sphere(restarts, seed, scene.dim):
        d = np.array(start)
        mu = _band_margin(d, axes, cos_alpha)
        step = 0.1
        for _ in range(200):
            if step < 1e-12:
                break
            vals = cos_alpha - np.abs(axes @ d)
            i = int(np.argmin(vals))
            g = -math.copysign(1.0, float(axes[i] @ d)) * axes[i]
            g_t = g - float(g @ d) * d
            n = float(np.linalg.norm(g_t))
            if n < 1e-15:
                break
            cand = unit(d + (step / n) * g_t)
            mu_c = _band_margin(cand, axes, cos_alpha)
            if mu_c > mu:
                d, mu = cand, mu_c
            else:
                step /= 2.0
        if mu > best_mu or (mu == best_mu and best_d is not None
                            and tuple(d) < tuple(best_d)):
            best_d, best_mu = d, mu
    if best_mu > tol:
        return ShadowVerdict(NOT_SHADOWED, witness_point=np.array(x, dtype=float),
                             witness_direction=best_d,
                             margin=witness_clearance(scene, x, best_d),
                             per_ball_bands=bands, method="heuristic",
                             search_margin=best_mu)
    return ShadowVerdict(POSSIBLY_SHADOWED, per_ball_bands=bands, method="heuristic",
                         search_margin=best_mu)


def find_avoiding_plane(scene: Scene, x, m: int, restarts: int = 64, seed: int = 0,
                        tol: float = TOL) -> PlaneFrame | None:
    """Search for an affine m-plane through x avoiding every ball.

    For lines in dimensions 2 and 3 the exact shadow decision answers
    directly.  Otherwise a seeded multi-start ascent maximizes the worst
    squared clearance min_i (|v_i|^2 - |proj v_i|^2 - r_i^2) over
    orthonormal frames; a returned frame is always re-verified (every
    center farther from the plane than its radius plus tol), and None
    means no avoiding plane was found, which for the heuristic path is
    not a proof that none exists.
    """
    x = as_vector(x, scene.dim)
    n = scene.dim
    if not 1 <= m <= n - 1:
        raise BadDimension(f"plane dimension m must satisfy 1 <= m <= {n - 1}, got {m}")
    _, touching = _classify_point(scene, x, tol)
    if m == 1 and n in (2, 3):
        verdict = point_shadow(scene, x, tol)
        if verdict.verdict == NOT_SHADOWED:
            return PlaneFrame(x, verdict.witness_direction[None, :])
        return None
    if not scene.balls:
        frame = np.zeros((m, n))
        for i in range(m):
            frame[i, i] = 1.0
        return PlaneFrame(x, frame)
    centers = np.stack([b.center for b in scene.balls])
    radii = np.array([b.radius for b in scene.balls])
    v = centers - x[None, :]
    norm2 = (v * v).sum(axis=1)
    r2 = radii * radii

    def objective(w: np.ndarray) -> tuple[float, int]:
        proj = v @ w
        vals = norm2 - (proj * proj).sum(axis=1) - r2
        i = int(np.argmin(vals))
        return float(vals[i]), i

    rng = np.random.default_rng(seed)
    best_w, best_f = None, -math.inf
    for _ in range(max(restarts, 1)):
        w, _ = np.linalg.qr(rng.standard_normal((n, m)))
        f, _i = objective(w)
        step = 0.1
        for _ in range(200):
            if step < 1e-12:
                break
            _f, i = objective(w)
            grad = -2.0 * np.outer(v[i], v[i] @ w)
            g_n = float(np.linalg.norm(grad))
            if g_n < 1e-15:
                break
            cand, _ = np.linalg.qr(w + (step / g_n) * grad)
            f_c, _ = objective(cand)
            if f_c > f:
                w, f = cand, f_c
            else:
                step /= 2.0
        if f > best_f:
            best_w, best_f = w, f
    if best_w is None:
        return None
    frame = PlaneFrame(x, best_w.T)
    clear = [frame.distance(b.center) - b.radius for b in scene.balls]
    if min(clear) > tol:
        return frame
    return None
