"""Coverage of the unit sphere by spherical caps, with certified witnesses.

The decision runs in three stages.  Trivial checks handle empty and
whole-sphere cap sets.  A deterministic Fibonacci-grid falsifier,
polished by tangent-space ascent, certifies "uncovered" by exhibiting a
direction with positive margin.  Finally a boundary arrangement test
certifies "covered": if the closed caps miss any region, the region's
boundary contains an arc of some cap's boundary circle that no other cap
covers, so checking every boundary circle against the other caps decides
coverage exactly (up to the tolerance fuzz shared with the circle merge).

Margins are in dot-product units: mu(d) = min_i cos(beta_i) - d . a_i is
positive exactly when d lies strictly outside every closed cap.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field

import numpy as np

from .circlecover import PERIOD_CIRCLE, Arc, ArcSet, cover_circle, uncovered_arcs
from .geometry import TOL, Cap, orthonormal_basis, unit
from .sampling import fibonacci_sphere, sample_sphere

COVERED = "covered"
UNCOVERED = "uncovered"
INDETERMINATE = "indeterminate"

_CONTAIN_TOL = 1e-12


def _cap_contains_cap(outer: Cap, inner: Cap) -> bool:
    if outer.is_full:
        return True
    ang = math.acos(min(max(float(outer.axis @ inner.axis), -1.0), 1.0))
    return ang + inner.angular_radius <= outer.angular_radius + _CONTAIN_TOL


@dataclass(eq=False)
class CapSet:
    """A family of caps, normalized on construction.

    Empty caps are dropped, and so is any cap contained in another: it
    adds nothing to the union, and keeping an exact duplicate would let a
    boundary circle vacuously certify itself in the arrangement test.
    """

    caps: list[Cap]
    _axes: np.ndarray = field(init=False, repr=False)
    _cosb: np.ndarray = field(init=False, repr=False)

    def __post_init__(self) -> None:
        live = [c for c in self.caps if not c.is_empty]
        drop = [False] * len(live)
        for i, ci in enumerate(live):
            for j, cj in enumerate(live):
                if i == j or drop[j]:
                    continue
                if _cap_contains_cap(cj, ci) and (not _cap_contains_cap(ci, cj) or j < i):
                    drop[i] = True
                    break
        self.caps = [c for c, d in zip(live, drop) if not d]
        if self.caps:
            self._axes = np.stack([c.axis for c in self.caps])
            self._cosb = np.array([math.cos(c.angular_radius) for c in self.caps])
        else:
            self._axes = np.zeros((0, 3))
            self._cosb = np.zeros(0)

    def __len__(self) -> int:
        return len(self.caps)


@dataclass(eq=False)
class SphereCoverage:
    """Outcome of a sphere coverage decision.

    ``margin`` is mu at the witness for an uncovered verdict, the best
    (sub-tolerance) falsifier margin otherwise.  ``boundary_report``
    lists, per cap, the arcs of its boundary circle that the other caps
    leave uncovered; it is populated whenever the arrangement stage ran.
    """

    verdict: str
    witness: np.ndarray | None
    margin: float
    boundary_report: list[list[Arc]] | None = None
    stage: str = ""

    @property
    def covered(self) -> bool | None:
        return {COVERED: True, UNCOVERED: False}.get(self.verdict)


def margin(d, caps: CapSet) -> float:
    """mu(d) = min over caps of cos(beta) - d . axis (inf for no caps)."""
    if not caps.caps:
        return math.inf
    d = np.asarray(d, dtype=float)
    return float(np.min(caps._cosb - caps._axes @ d))


def _grid_margins(points: np.ndarray, caps: CapSet) -> np.ndarray:
    return (caps._cosb[None, :] - points @ caps._axes.T).min(axis=1)


def _lex_smallest(points: np.ndarray) -> int:
    order = np.lexsort((points[:, 2], points[:, 1], points[:, 0]))
    return int(order[0])


def _ascend(d0: np.ndarray, caps: CapSet, max_steps: int = 200,
            step0: float = 0.1, step_min: float = 1e-12) -> tuple[np.ndarray, float]:
    """Maximize mu from d0 by subgradient ascent with step halving."""
    d = unit(d0)
    mu = margin(d, caps)
    step = step0
    for _ in range(max_steps):
        if step < step_min:
            break
        vals = caps._cosb - caps._axes @ d
        g = -caps._axes[int(np.argmin(vals))]
        g_t = g - float(g @ d) * d
        n = float(np.linalg.norm(g_t))
        if n < 1e-15:
            break
        cand = unit(d + (step / n) * g_t)
        mu_c = margin(cand, caps)
        if mu_c > mu:
            d, mu = cand, mu_c
        else:
            step /= 2.0
    return d, mu


def falsify(caps: CapSet, tol: float = TOL, grid: int = 20000) -> tuple[np.ndarray, float]:
    """Best uncovered-direction candidate: grid argmax polished by ascent.

    Returns (direction, mu); the caller decides whether mu > tol certifies
    an uncovered verdict.  Exact grid ties break to the lexicographically
    smallest point so reruns are reproducible.
    """
    pts = fibonacci_sphere(grid)
    mus = _grid_margins(pts, caps)
    best = mus.max()
    ties = np.flatnonzero(mus == best)
    start = pts[ties[0]] if ties.size == 1 else pts[ties[_lex_smallest(pts[ties])]]
    return _ascend(np.array(start), caps)


def cap_boundary_cover_arcs(caps: CapSet, i: int, tol: float = TOL) -> ArcSet:
    """Arcs of cap i's boundary circle covered by the other closed caps.

    The circle is d(t) = cos(b_i) a_i + sin(b_i) (e1 cos t + e2 sin t);
    cap j covers the t-set where A + R cos(t - phi) >= cos(b_j), an arc
    recovered from A = cos(b_i) a_i . a_j and the tangential component of
    a_j.  A slack of tol keeps coincident boundary circles counted as
    covered: closed caps meeting along a shared circle genuinely cover it.
    """
    cap_i = caps.caps[i]
    b = cap_i.angular_radius
    e1, e2 = orthonormal_basis(cap_i.axis)
    cos_b, sin_b = math.cos(b), math.sin(b)
    arcs: list[Arc] = []
    for j, cap_j in enumerate(caps.caps):
        if j == i:
            continue
        if cap_j.is_full:
            arcs.append(Arc(0.0, math.pi, PERIOD_CIRCLE))
            continue
        a_j = cap_j.axis
        big_a = cos_b * float(cap_i.axis @ a_j)
        c1, c2 = float(e1 @ a_j), float(e2 @ a_j)
        big_r = sin_b * math.hypot(c1, c2)
        target = math.cos(cap_j.angular_radius) - tol
        if big_r < 1e-15:
            if big_a >= target:
                arcs.append(Arc(0.0, math.pi, PERIOD_CIRCLE))
            continue
        w = (target - big_a) / big_r
        if w <= -1.0:
            arcs.append(Arc(0.0, math.pi, PERIOD_CIRCLE))
        elif w < 1.0:
            arcs.append(Arc(math.atan2(c2, c1), math.acos(w), PERIOD_CIRCLE))
    return ArcSet(PERIOD_CIRCLE, arcs)


def boundary_arrangement(caps: CapSet, tol: float = TOL) -> list[list[Arc]]:
    """Per cap, the arcs of its boundary circle left uncovered by the others."""
    return [
        uncovered_arcs(cap_boundary_cover_arcs(caps, i, tol), tol)
        for i in range(len(caps.caps))
    ]


def _boundary_probe(caps: CapSet, report: list[list[Arc]], tol: float):
    """Points just outside each uncovered boundary arc, for margin probing."""
    for i, gaps in enumerate(report):
        cap_i = caps.caps[i]
        e1, e2 = orthonormal_basis(cap_i.axis)
        t_out = cap_i.angular_radius + 10.0 * tol
        for g in gaps:
            t = g.center
            q = math.cos(t_out) * cap_i.axis + math.sin(t_out) * (
                math.cos(t) * e1 + math.sin(t) * e2
            )
            yield unit(q)


def cover_sphere(caps: CapSet, tol: float = TOL, falsifier_grid: int = 20000) -> SphereCoverage:
    """Decide whether the caps cover S^2.

    Uncovered verdicts always carry a witness direction with mu > tol.
    Covered verdicts come from the boundary arrangement.  When the
    arrangement finds uncovered boundary arcs but no probe clears the
    tolerance, the configuration sits within tol of tangency and the
    verdict is indeterminate, never guessed.
    """
    if not caps.caps:
        return SphereCoverage(UNCOVERED, np.array([0.0, 0.0, 1.0]), math.inf, stage="trivial")
    if any(c.is_full for c in caps.caps):
        return SphereCoverage(COVERED, None, 0.0, stage="trivial")
    d, mu = falsify(caps, tol, falsifier_grid)
    if mu > tol:
        return SphereCoverage(UNCOVERED, d, mu, stage="falsifier")
    report = boundary_arrangement(caps, tol)
    if all(not gaps for gaps in report):
        return SphereCoverage(COVERED, None, mu, boundary_report=report, stage="arrangement")
    best_q, best_mu = None, -math.inf
    for q in _boundary_probe(caps, report, tol):
        mu_q = margin(q, caps)
        if mu_q > best_mu:
            best_q, best_mu = q, mu_q
    if best_mu > tol:
        return SphereCoverage(UNCOVERED, best_q, best_mu,
                              boundary_report=report, stage="arrangement")
    return SphereCoverage(INDETERMINATE, None, best_mu,
                          boundary_report=report, stage="arrangement")


def uncovered_area_estimate(caps: CapSet, samples: int, seed: int) -> float:
    """Monte Carlo estimate of the area where mu(d) > 0 (4*pi when no caps)."""
    if samples < 1:
        raise ValueError("need at least one sample")
    if not caps.caps:
        return 4.0 * math.pi
    pts = sample_sphere(samples, seed)
    frac = float(np.count_nonzero(_grid_margins(pts, caps) > 0.0)) / samples
    return 4.0 * math.pi * frac
