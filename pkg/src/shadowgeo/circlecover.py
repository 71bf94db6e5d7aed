"""Arc unions on a circle: merge-based coverage with gap witnesses.

Arcs live on a circle of period pi (undirected line directions) or 2*pi
(oriented directions, boundary-circle parameters).  Coverage fuses gaps
shorter than ``tol`` so that exact-tangency unions count as covered
instead of leaking hairline float gaps.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

PERIOD_LINE = math.pi
PERIOD_CIRCLE = math.tau

TOL = 1e-9

_PERIODS = (PERIOD_LINE, PERIOD_CIRCLE)


def _snap_period(p: float) -> float:
    for q in _PERIODS:
        if math.isclose(p, q, rel_tol=1e-12):
            return q
    raise ValueError(f"period must be pi or 2*pi, got {p!r}")


@dataclass(frozen=True)
class Arc:
    """Closed angular interval [center - half_width, center + half_width] mod period."""

    center: float
    half_width: float
    period: float = PERIOD_LINE

    def __post_init__(self) -> None:
        period = _snap_period(self.period)
        if not (math.isfinite(self.center) and math.isfinite(self.half_width)):
            raise ValueError("arc parameters must be finite")
        if self.half_width < 0:
            raise ValueError("arc half_width must be >= 0")
        # a half-width of period/2 or more is the whole circle
        object.__setattr__(self, "center", self.center % period)
        object.__setattr__(self, "half_width", min(self.half_width, period / 2))
        object.__setattr__(self, "period", period)

    @property
    def is_full(self) -> bool:
        return self.half_width >= self.period / 2

    @property
    def length(self) -> float:
        return 2.0 * self.half_width

    def signed_distance(self, theta: float) -> float:
        """Circular distance from theta to this arc; negative inside."""
        half = self.period / 2
        delta = abs((theta - self.center + half) % self.period - half)
        return delta - self.half_width

    def contains(self, theta: float, tol: float = 0.0) -> bool:
        return self.signed_distance(theta) <= tol


@dataclass
class ArcSet:
    """A finite family of arcs sharing one period."""

    period: float
    arcs: list[Arc]

    def __post_init__(self) -> None:
        self.period = _snap_period(self.period)
        for a in self.arcs:
            if a.period != self.period:
                raise ValueError("mixed arc periods in one ArcSet")

    def __len__(self) -> int:
        return len(self.arcs)


@dataclass(frozen=True)
class CircleCoverage:
    """Outcome of a circle coverage decision.

    ``witness`` is the midpoint of the largest gap when uncovered, and
    ``largest_gap`` its angular length (0 when covered, the full period
    when there are no arcs at all).
    """

    covered: bool
    witness: float | None
    largest_gap: float


def _gaps(arcset: ArcSet, tol: float) -> list[tuple[float, float]]:
    """Complement of the arc union as (start, end) pairs, each longer than tol.

    Ends may exceed the period for the single gap that wraps through 0.
    """
    period = arcset.period
    if any(a.is_full for a in arcset.arcs):
        return []
    intervals: list[tuple[float, float]] = []
    for a in arcset.arcs:
        lo = (a.center - a.half_width) % period
        hi = lo + a.length
        if hi <= period:
            intervals.append((lo, hi))
        else:
            intervals.append((lo, period))
            intervals.append((0.0, hi - period))
    if not intervals:
        return [(0.0, period)]
    intervals.sort()
    merged = [list(intervals[0])]
    for lo, hi in intervals[1:]:
        if lo <= merged[-1][1] + tol:
            merged[-1][1] = max(merged[-1][1], hi)
        else:
            merged.append([lo, hi])
    gaps = [
        (first[1], second[0])
        for first, second in zip(merged, merged[1:])
        if second[0] - first[1] > tol
    ]
    wrap = merged[0][0] + period - merged[-1][1]
    if wrap > tol:
        gaps.append((merged[-1][1], merged[0][0] + period))
    return gaps


def cover_circle(arcs: ArcSet, tol: float = TOL) -> CircleCoverage:
    """Decide whether the arcs cover the whole circle.

    Gaps of length ``tol`` or less are fused shut, so unions that close up
    by exact tangency are reported as covered.  When uncovered, the witness
    is the midpoint of the largest surviving gap and sits clear of every
    arc by at least half that gap.
    """
    if not arcs.arcs:
        return CircleCoverage(covered=False, witness=0.0, largest_gap=arcs.period)
    gaps = _gaps(arcs, tol)
    if not gaps:
        return CircleCoverage(covered=True, witness=None, largest_gap=0.0)
    start, end = max(gaps, key=lambda g: g[1] - g[0])
    witness = ((start + end) / 2.0) % arcs.period
    return CircleCoverage(covered=False, witness=witness, largest_gap=end - start)


def uncovered_arcs(arcs: ArcSet, tol: float = TOL) -> list[Arc]:
    """The complement of the union, reported as arcs of the same period."""
    return [
        Arc(((s + e) / 2.0) % arcs.period, (e - s) / 2.0, arcs.period)
        for s, e in _gaps(arcs, tol)
    ]


def uncovered_measure(arcs: ArcSet, tol: float = TOL) -> float:
    """Total angular length not covered by the union (0 iff covered)."""
    if not arcs.arcs:
        return arcs.period
    return sum(e - s for s, e in _gaps(arcs, tol))
