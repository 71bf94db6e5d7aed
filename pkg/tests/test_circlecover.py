import math

import pytest
from hypothesis import given, strategies as st

from shadowgeo.circlecover import (
    PERIOD_CIRCLE,
    PERIOD_LINE,
    Arc,
    ArcSet,
    cover_circle,
    uncovered_arcs,
    uncovered_measure,
)

from oracles import circle_point_margins


def test_arc_normalizes_center_and_caps_half_width():
    a = Arc(center=math.pi + 0.5, half_width=10.0, period=PERIOD_LINE)
    assert a.center == pytest.approx(0.5)
    assert a.half_width == PERIOD_LINE / 2
    assert a.is_full


def test_arc_rejects_bad_parameters():
    with pytest.raises(ValueError):
        Arc(0.0, -0.1)
    with pytest.raises(ValueError):
        Arc(math.nan, 0.1)
    with pytest.raises(ValueError):
        Arc(0.0, 0.1, period=1.5)


def test_arcset_rejects_mixed_periods():
    with pytest.raises(ValueError):
        ArcSet(PERIOD_LINE, [Arc(0.0, 0.1, PERIOD_LINE), Arc(0.0, 0.1, PERIOD_CIRCLE)])


def test_signed_distance_and_contains():
    a = Arc(0.0, 0.5, PERIOD_CIRCLE)
    assert a.signed_distance(0.0) == pytest.approx(-0.5)
    assert a.signed_distance(0.5) == pytest.approx(0.0)
    assert a.signed_distance(math.pi) == pytest.approx(math.pi - 0.5)
    # wraps: 2*pi - 0.25 is inside
    assert a.contains(2 * math.pi - 0.25)
    assert not a.contains(1.0)


def test_empty_set_is_uncovered_with_full_gap():
    cov = cover_circle(ArcSet(PERIOD_LINE, []))
    assert not cov.covered
    assert cov.witness == 0.0
    assert cov.largest_gap == PERIOD_LINE


def test_single_full_arc_covers():
    cov = cover_circle(ArcSet(PERIOD_CIRCLE, [Arc(1.0, math.pi, PERIOD_CIRCLE)]))
    assert cov.covered
    assert cov.largest_gap == 0.0
    assert cov.witness is None


def test_half_arc_leaves_half_gap():
    cov = cover_circle(ArcSet(PERIOD_LINE, [Arc(0.0, math.pi / 4)]))
    assert not cov.covered
    assert cov.largest_gap == pytest.approx(math.pi / 2)
    assert cov.witness == pytest.approx(math.pi / 2)


def test_exact_tangency_counts_as_covered():
    # [
    #   -pi/4, pi/4] and [pi/4, 3pi/4] close the period-pi circle exactly
    arcs = ArcSet(PERIOD_LINE, [Arc(0.0, math.pi / 4), Arc(math.pi / 2, math.pi / 4)])
    assert cover_circle(arcs).covered
    assert uncovered_measure(arcs) == pytest.approx(0.0, abs=1e-12)


def test_hairline_gap_is_fused_but_real_gap_is_not():
    eps = 1e-12
    arcs = ArcSet(PERIOD_LINE, [Arc(0.0, math.pi / 4 - eps), Arc(math.pi / 2, math.pi / 4)])
    assert cover_circle(arcs, tol=1e-9).covered
    # shrinking one half-width by 0.05 opens a 0.05 gap at each end
    wide = ArcSet(PERIOD_LINE, [Arc(0.0, math.pi / 4 - 0.05), Arc(math.pi / 2, math.pi / 4)])
    cov = cover_circle(wide, tol=1e-9)
    assert not cov.covered
    assert cov.largest_gap == pytest.approx(0.05, abs=1e-9)
    assert uncovered_measure(wide) == pytest.approx(0.1, abs=1e-9)


def test_wrap_around_gap_reported_once():
    # covers [0.2, 2pi - 0.2]; the only gap straddles zero
    arcs = ArcSet(PERIOD_CIRCLE, [Arc(math.pi, math.pi - 0.2, PERIOD_CIRCLE)])
    cov = cover_circle(arcs)
    assert not cov.covered
    assert cov.largest_gap == pytest.approx(0.4)
    assert cov.witness == pytest.approx(0.0, abs=1e-12) or cov.witness == pytest.approx(
        PERIOD_CIRCLE, abs=1e-12
    )


def test_witness_picks_largest_gap():
    arcs = ArcSet(
        PERIOD_CIRCLE,
        [Arc(0.0, 0.5, PERIOD_CIRCLE), Arc(2.0, 0.5, PERIOD_CIRCLE), Arc(4.0, 0.4, PERIOD_CIRCLE)],
    )
    cov = cover_circle(arcs)
    # gaps: (0.5,1.5) len 1.0, (2.5,3.6) len 1.1, (4.4, 2pi-0.5) len ~1.38
    assert not cov.covered
    assert cov.largest_gap == pytest.approx(2 * math.pi - 4.9)
    assert cov.witness == pytest.approx((4.4 + 2 * math.pi - 0.5) / 2)


def test_uncovered_arcs_complement_the_union():
    arcs = ArcSet(PERIOD_LINE, [Arc(0.3, 0.2), Arc(1.8, 0.3)])
    holes = uncovered_arcs(arcs)
    together = ArcSet(PERIOD_LINE, arcs.arcs + holes)
    assert cover_circle(together).covered
    assert uncovered_measure(arcs) == pytest.approx(sum(h.length for h in holes))


def test_uncovered_measure_of_empty_set_is_period():
    assert uncovered_measure(ArcSet(PERIOD_CIRCLE, [])) == PERIOD_CIRCLE


@st.composite
def arc_sets(draw, period=PERIOD_CIRCLE, max_arcs=8):
    n = draw(st.integers(0, max_arcs))
    arcs = [
        Arc(
            draw(st.floats(0.0, period, allow_nan=False)),
            draw(st.floats(0.0, period / 2, allow_nan=False)),
            period,
        )
        for _ in range(n)
    ]
    return ArcSet(period, arcs)


def _raw(arcset):
    return [(a.center, a.half_width) for a in arcset.arcs]


@given(arc_sets())
def test_uncovered_witness_is_certified(arcset):
    cov = cover_circle(arcset)
    if cov.covered:
        return
    margin = circle_point_margins([cov.witness], _raw(arcset), arcset.period)[0]
    assert margin >= cov.largest_gap / 2 - 1e-9


@given(arc_sets())
def test_covered_verdict_agrees_with_dense_sampling(arcset):
    cov = cover_circle(arcset)
    if not cov.covered:
        return
    ts = [i * arcset.period / 4096 for i in range(4096)]
    margins = circle_point_margins(ts, _raw(arcset), arcset.period)
    # fused gaps never hide a point deeper than the fusion tolerance
    assert margins.max() <= 1e-9 or not _raw(arcset)


@given(arc_sets(max_arcs=6), st.floats(0.0, PERIOD_CIRCLE, allow_nan=False))
def test_adding_an_arc_never_uncovers(arcset, extra_center):
    before = cover_circle(arcset)
    arcset.arcs.append(Arc(extra_center, 0.3, arcset.period))
    after = cover_circle(arcset)
    if before.covered:
        assert after.covered
    assert uncovered_measure(arcset) <= before.largest_gap * len(arcset.arcs) + 1e-9


@given(arc_sets(max_arcs=6), st.floats(-10.0, 10.0, allow_nan=False))
def test_rotation_preserves_verdict_and_measure(arcset, shift):
    base = cover_circle(arcset)
    measure = uncovered_measure(arcset)
    rotated = ArcSet(
        arcset.period,
        [Arc(a.center + shift, a.half_width, a.period) for a in arcset.arcs],
    )
    rot = cover_circle(rotated)
    assert rot.covered == base.covered
    assert rot.largest_gap == pytest.approx(base.largest_gap, abs=1e-9)
    assert uncovered_measure(rotated) == pytest.approx(measure, abs=1e-9)
