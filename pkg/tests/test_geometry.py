import random
from fractions import Fraction

import pytest
from hypothesis import given, strategies as st

from gridpolicy.geometry import (
    ActionCone,
    Direction,
    IntervalSet,
    Point,
    Segment,
    clip_segment_to_region,
    cone_contains,
    coreach_within_region,
    denominator_profile,
    point_on_segment,
    pt,
    reach_interval_on_segment,
    reach_within_region,
    seg,
    segment_intersection,
    segments_collinear_overlap,
    subtract_segments,
)
from gridpolicy.world import region

L, R, U, D = Direction.LEFT, Direction.RIGHT, Direction.UP, Direction.DOWN

rationals = st.fractions(min_value=-50, max_value=50, max_denominator=64)


@given(rationals, rationals)
def test_rat_addition_roundtrip(a, b):
    assert (a + b) - b == a


@given(rationals, rationals)
def test_rat_multiplication_roundtrip(a, b):
    if b != 0:
        assert (a * b) / b == a


@given(rationals, rationals)
def test_rat_canonical_form(a, b):
    c = a + b
    assert c.denominator > 0
    from math import gcd

    assert gcd(c.numerator, c.denominator) == 1


def test_cone_contains_examples():
    assert cone_contains(ActionCone.of(R, U), pt(1, 1))
    assert not cone_contains(ActionCone.of(L), pt(1, 0))
    assert cone_contains(ActionCone.of(R, D), pt(13, -1))


def test_zero_vector_in_every_cone():
    for dirs in [(), (R,), (L, U), (L, R, U, D)]:
        assert cone_contains(ActionCone.of(*dirs), pt(0, 0))


def test_empty_cone_rejects_nonzero():
    assert not cone_contains(ActionCone.of(), pt(0, 1))


@given(
    st.sampled_from([(R, U), (L, U), (R, D), (L, D)]),
    st.fractions(min_value=0, max_value=20, max_denominator=32),
    st.fractions(min_value=0, max_value=20, max_denominator=32),
)
def test_cone_contains_nonnegative_combinations(gens, lam1, lam2):
    d1, d2 = gens
    v = d1.vector.scale(lam1) + d2.vector.scale(lam2)
    assert cone_contains(ActionCone.of(d1, d2), v)


def test_axis_only():
    assert ActionCone.of(L, R).axis_only()
    assert ActionCone.of(U).axis_only()
    assert not ActionCone.of(L, U).axis_only()
    assert ActionCone.of().axis_only()


def test_point_on_segment_examples():
    assert point_on_segment(pt(1, 1), seg(0, 0, 2, 2))
    assert not point_on_segment(pt(3, 3), seg(0, 0, 2, 2))
    p = Point(Fraction(2, 3), Fraction(4, 3))
    s = Segment(Point(Fraction(2, 3), Fraction(4, 3)), pt(0, 2))
    assert point_on_segment(p, s)


def test_point_on_degenerate_segment():
    assert point_on_segment(pt(1, 1), seg(1, 1, 1, 1))
    assert not point_on_segment(pt(1, 2), seg(1, 1, 1, 1))


def test_collinear_overlap_examples():
    merged = segments_collinear_overlap(seg(0, 0, 2, 0), seg(1, 0, 3, 0))
    assert merged == seg(0, 0, 3, 0)
    assert segments_collinear_overlap(seg(0, 0, 1, 0), seg(0, 1, 1, 1)) is None
    assert segments_collinear_overlap(seg(0, 0, 1, 0), seg(2, 0, 3, 0)) is None


def test_collinear_overlap_abutting():
    assert segments_collinear_overlap(seg(0, 0, 1, 0), seg(1, 0, 3, 0)) == seg(0, 0, 3, 0)


def test_collinear_overlap_keeps_first_orientation():
    merged = segments_collinear_overlap(seg(2, 0, 0, 0), seg(1, 0, 3, 0))
    assert merged == seg(3, 0, 0, 0)


def test_subtract_segments_examples():
    s = seg(0, 0, 4, 0)
    assert subtract_segments(s, []) == [s]
    assert subtract_segments(s, [seg(0, 0, 4, 0)]) == []
    assert subtract_segments(s, [seg(1, 0, 2, 0)]) == [seg(0, 0, 1, 0), seg(2, 0, 4, 0)]


def test_subtract_segments_ignores_noncollinear():
    s = seg(0, 0, 4, 0)
    assert subtract_segments(s, [seg(0, 1, 4, 1), seg(1, 1, 1, 5)]) == [s]


def test_subtract_segments_degenerate_removal_splits():
    s = seg(0, 0, 4, 0)
    out = subtract_segments(s, [seg(2, 0, 2, 0)])
    assert out == [seg(0, 0, 2, 0), seg(2, 0, 4, 0)]


def test_subtract_degenerate_survivor():
    p = seg(2, 0, 2, 0)
    assert subtract_segments(p, [seg(0, 0, 1, 0)]) == [p]
    assert subtract_segments(p, [seg(1, 0, 3, 0)]) == []


def test_subtract_segments_cover_property():
    rng = random.Random(7)
    for _ in range(200):
        s = seg(0, 0, rng.randint(1, 8), 0)
        cuts = []
        for _ in range(rng.randint(0, 4)):
            a = Fraction(rng.randint(0, 32), 4)
            b = a + Fraction(rng.randint(0, 8), 4)
            cuts.append(Segment(Point(a, Fraction(0)), Point(b, Fraction(0))))
        pieces = subtract_segments(s, cuts)
        for piece in pieces:
            assert point_on_segment(piece.a, s) and point_on_segment(piece.b, s)
        # pairwise disjoint interiors, ordered along s
        for p1, p2 in zip(pieces, pieces[1:]):
            assert p1.b.x <= p2.a.x
        # union of pieces and cuts covers s (sample at quarter steps)
        t = s.a
        step = Point(Fraction(1, 4), Fraction(0))
        while t.x <= s.b.x:
            covered = any(point_on_segment(t, p) for p in pieces) or any(
                point_on_segment(t, c) for c in cuts
            )
            assert covered
            t = t + step


SQUARE_RU = region(0, [pt(0, 0), pt(1, 0), pt(1, 2), pt(0, 2)], ActionCone.of(R, U))
SQUARE_L = region(0, [pt(0, 0), pt(1, 0), pt(1, 2), pt(0, 2)], ActionCone.of(L))
SQUARE_U = region(0, [pt(0, 0), pt(1, 0), pt(1, 2), pt(0, 2)], ActionCone.of(U))


def test_reach_within_region_examples():
    edge = seg(1, 0, 1, 2)
    assert reach_within_region(SQUARE_RU, pt(0, 0), edge) == edge
    assert reach_within_region(SQUARE_RU, pt(0, 2), edge) == seg(1, 2, 1, 2)
    assert reach_within_region(SQUARE_L, pt(0, 0), edge) is None


def test_reach_result_is_reachable():
    rng = random.Random(3)
    edge = seg(1, 0, 1, 2)
    for _ in range(100):
        p = Point(Fraction(rng.randint(0, 4), 4), Fraction(rng.randint(0, 8), 4))
        got = reach_within_region(SQUARE_RU, p, edge)
        for t8 in range(17):
            t = edge.at(Fraction(t8, 16))
            expected = cone_contains(SQUARE_RU.actions, t - p)
            actual = got is not None and point_on_segment(t, got)
            assert actual == expected


def _coreach_oracle(reg, source, target, resolution=8):
    """Lattice brute force: pairwise cone-membership over 1/resolution steps."""
    hits = []
    for i in range(resolution + 1):
        s = source.at(Fraction(i, resolution))
        ok = False
        for j in range(resolution + 1):
            t = target.at(Fraction(j, resolution))
            if cone_contains(reg.actions, t - s):
                ok = True
                break
        hits.append((s, ok))
    return hits


@pytest.mark.parametrize(
    "reg,source,target,expected",
    [
        (SQUARE_RU, seg(0, 0, 0, 2), seg(1, 0, 1, 2), seg(0, 0, 0, 2)),
        (SQUARE_RU, seg(0, 0, 0, 2), seg(1, 2, 1, 2), seg(0, 0, 0, 2)),
        (SQUARE_U, seg(0, 0, 1, 0), seg(1, 0, 1, 2), seg(1, 0, 1, 0)),
    ],
)
def test_coreach_examples_against_oracle(reg, source, target, expected):
    got = coreach_within_region(reg, source, target)
    assert got == [expected]
    for s, ok in _coreach_oracle(reg, source, target):
        assert ok == any(point_on_segment(s, piece) for piece in got)


def test_coreach_empty():
    got = coreach_within_region(SQUARE_L, seg(0, 0, 1, 0), seg(1, 0, 1, 2))
    # only the shared corner can "reach" by a leftward/zero move
    assert got == [seg(1, 0, 1, 0)]
    got = coreach_within_region(SQUARE_U, seg(0, 2, 1, 2), seg(0, 0, 1, 0))
    assert got == []


def test_coreach_matches_oracle_random_cones():
    rng = random.Random(11)
    for _ in range(60):
        dirs = [d for d in Direction if rng.random() < 0.5]
        if not dirs:
            dirs = [U]
        reg = region(0, [pt(0, 0), pt(2, 0), pt(2, 2), pt(0, 2)], ActionCone.of(*dirs))
        edges = [seg(0, 0, 2, 0), seg(2, 0, 2, 2), seg(2, 2, 0, 2), seg(0, 2, 0, 0)]
        source = edges[rng.randrange(4)]
        full = edges[rng.randrange(4)]
        lo = Fraction(rng.randint(0, 8), 8)
        hi = Fraction(rng.randint(0, 8), 8)
        if lo > hi:
            lo, hi = hi, lo
        target = Segment(full.at(lo), full.at(hi))
        got = coreach_within_region(reg, source, target)
        assert len(got) <= 1
        for s, ok in _coreach_oracle(reg, source, target, resolution=16):
            mine = any(point_on_segment(s, piece) for piece in got)
            if ok:
                assert mine
            if mine:
                assert reach_interval_on_segment(reg.actions, s, target) is not None


def test_denominator_profile_examples():
    d, bits = denominator_profile([Point(Fraction(1, 2), Fraction(1, 3))])
    assert (d, bits) == (6, 2)
    d, bits = denominator_profile([pt(0, 0), pt(1, 1)])
    assert (d, bits) == (1, 1)
    d, bits = denominator_profile(
        [
            Point(Fraction(2, 3), Fraction(4, 3)),
            pt(0, 2),
            Point(Fraction(2, 3), Fraction(11, 9)),
        ]
    )
    assert (d, bits) == (9, 4)


def test_segment_intersection_cases():
    assert segment_intersection(seg(0, 0, 2, 2), seg(0, 2, 2, 0)) == pt(1, 1)
    assert segment_intersection(seg(0, 0, 1, 0), seg(2, 1, 3, 1)) is None
    assert segment_intersection(seg(0, 0, 2, 0), seg(1, 0, 3, 0)) == seg(1, 0, 2, 0)
    assert segment_intersection(seg(0, 0, 1, 0), seg(1, 0, 1, 5)) == pt(1, 0)


def test_clip_segment_to_region():
    square = region(0, [pt(0, 0), pt(2, 0), pt(2, 2), pt(0, 2)], ActionCone.of(U))
    assert clip_segment_to_region(seg(-1, 1, 3, 1), square) == seg(0, 1, 2, 1)
    assert clip_segment_to_region(seg(0, 3, 2, 3), square) is None
    assert clip_segment_to_region(seg(1, 1, 3, 3), square) == seg(1, 1, 2, 2)


def test_interval_set_mirror_of_subtract():
    s = IntervalSet()
    f = Fraction
    assert s.carve(f(0), f(4)) == [(f(0), f(4))]
    s.claim(f(1), f(2))
    s.claim(f(2), f(3))
    assert s.items == [(f(1), f(3))]
    assert s.carve(f(0), f(4)) == [(f(0), f(1)), (f(3), f(4))]
    assert s.carve(f(2), f(2)) == []
    s.claim(f(0), f(1))
    assert s.carve(f(0), f(4)) == [(f(3), f(4))]
