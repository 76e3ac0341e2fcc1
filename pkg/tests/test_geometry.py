import random
from fractions import Fraction

import pytest
from hypothesis import assume, given, strategies as st

from lelong import fixtures
from lelong.field import qi
from lelong.geometry import (
    CommonComponentError,
    GeometryError,
    Line,
    PlaneCurve,
    ProjectiveTransform,
    ProjPoint,
    affine_normalize,
    choose_chart,
    collinear,
    conic_through,
    intersect,
    line_through,
    m_invariant,
    proj_point,
)
from lelong import linalg
from lelong.poly import MultiPoly
from oracles import brute_m1, brute_m2

coord = st.integers(-3, 3)
point2 = st.tuples(coord, coord, coord).filter(any).map(lambda c: proj_point(*c))


def _distinct(points):
    out = []
    for p in points:
        if p not in out:
            out.append(p)
    return out


configs = st.lists(point2, min_size=2, max_size=8).map(_distinct).filter(lambda s: len(s) >= 2)
transforms = st.lists(st.integers(-3, 3), min_size=9, max_size=9).map(
    lambda v: [v[0:3], v[3:6], v[6:9]]
).filter(lambda m: linalg.det(m) != 0).map(ProjectiveTransform)


def test_proj_point_normalization_and_errors():
    assert proj_point(2, 4, 6) == proj_point(1, 2, 3)
    with pytest.raises(GeometryError):
        proj_point(0, 0, 0)
    assert ProjPoint.from_affine([Fraction(1, 2), 3]).affine() == (qi(Fraction(1, 2)), qi(3))


def test_line_through_examples():
    L = line_through(proj_point(1, 0, 0), proj_point(0, 1, 0))
    assert L == Line.from_form(0, 0, 1)
    assert L.contains(proj_point(1, 1, 0))
    assert not L.contains(proj_point(1, 1, 1))
    p, q = proj_point(1, 2, 1), proj_point(0, 1, 1)
    M = line_through(p, q)
    # cross-product oracle
    a = [p.coords[1] * q.coords[2] - p.coords[2] * q.coords[1],
         p.coords[2] * q.coords[0] - p.coords[0] * q.coords[2],
         p.coords[0] * q.coords[1] - p.coords[1] * q.coords[0]]
    assert M == Line.from_form(*a)
    with pytest.raises(GeometryError):
        line_through(p, p)


def test_intersect_examples():
    ((p, exact),) = intersect(Line.from_form(1, 0, 0), Line.from_form(0, 1, 0))
    assert exact and p == proj_point(0, 0, 1)
    z = [MultiPoly.variable(3, i) for i in range(3)]
    conic = PlaneCurve(z[1] * z[2] - z[0] * z[0])
    hits = intersect(Line.from_form(0, 1, 0), conic)
    assert hits == [(proj_point(0, 0, 1), True)]
    with pytest.raises(CommonComponentError):
        intersect(Line.from_form(1, 2, 3), Line.from_form(2, 4, 6))


def test_skew_lines_in_p3():
    L1 = line_through(proj_point(1, 0, 0, 0), proj_point(0, 1, 0, 0))
    L2 = line_through(proj_point(0, 0, 1, 0), proj_point(0, 0, 0, 1))
    assert intersect(L1, L2) == []


def test_conic_conic_at_most_four():
    rng = random.Random(5)
    for _ in range(10):
        pts = [proj_point(rng.randint(-3, 3), rng.randint(-3, 3), 1) for _ in range(10)]
        pts = _distinct(pts)
        try:
            c1 = conic_through(pts[:5])
            c2 = conic_through(pts[5:10])
        except (GeometryError, ValueError):
            continue
        try:
            hits = intersect(c1, c2)
        except CommonComponentError:
            continue
        assert len(hits) <= 4
        for p, exact in hits:
            assert c1.contains(p) and c2.contains(p)


def test_irrational_intersection_flagged_inexact():
    z = [MultiPoly.variable(3, i) for i in range(3)]
    conic = PlaneCurve(z[0] * z[0] - 2 * z[2] * z[2])
    hits = intersect(Line.from_form(0, 1, 0), conic)
    assert len(hits) == 2 and not any(e for _, e in hits)
    for p, _ in hits:
        assert conic.contains(p)


@given(point2, point2, point2)
def test_two_lines_through_p_meet_at_p(p, q, r):
    assume(not collinear([p, q, r]) and len(_distinct([p, q, r])) == 3)
    hits = intersect(line_through(p, q), line_through(p, r))
    assert [h for h, _ in hits] == [p]


def test_m_invariant_examples():
    S = list(fixtures.example_33().points.values())
    assert m_invariant(S, 1) == 3
    assert m_invariant([p for k, p in fixtures.example_36().points.items() if k.startswith("p")], 2) == 5
    assert m_invariant([proj_point(1, 0, 2), proj_point(3, 1, 1)], 1) == 2


@given(configs, transforms)
def test_m_invariant_projective_invariance(S, m):
    image = [m.apply(p) for p in S]
    assert m_invariant(image, 1) == m_invariant(S, 1)
    assert m_invariant(image, 2) == m_invariant(S, 2)


@given(configs)
def test_m_invariant_lower_bounds(S):
    assert m_invariant(S, 1) >= 2
    assert m_invariant(S, 2) >= min(len(S), 5)


@given(configs)
def test_m_invariant_matches_brute_force(S):
    assert m_invariant(S, 1) == brute_m1(S)
    assert m_invariant(S, 2) == brute_m2(S)


def test_m_invariant_in_p3():
    S = [proj_point(1, 0, 0, 0), proj_point(0, 1, 0, 0), proj_point(1, 1, 0, 0), proj_point(0, 0, 1, 1)]
    assert m_invariant(S, 1) == 3
    with pytest.raises(GeometryError):
        m_invariant(S, 2)


def test_choose_chart_examples():
    assert choose_chart([proj_point(1, 2, 1), proj_point(0, 0, 3)]).is_identity()
    chart = choose_chart([proj_point(1, 0), proj_point(0, 1)])
    assert chart.matrix[-1] == [qi(1), qi(1)]
    rng = random.Random(7)
    S = _distinct([proj_point(*[rng.randint(-3, 3) for _ in range(3)]) for _ in range(12) if True])
    S = [p for p in S][:7]
    chart = choose_chart(S)
    assert all(chart.apply(p).coords[-1] != 0 for p in S)


@given(configs)
def test_choose_chart_avoids_infinity(S):
    chart = choose_chart(S)
    assert all(chart.apply(p).is_affine() for p in S)


STANDARD = [(0, 0, 0), (1, 0, 0), (0, 1, 0), (0, 0, 1)]


def test_affine_normalize_examples():
    assert affine_normalize(STANDARD).is_identity()
    doubled = [tuple(2 * c for c in p) for p in STANDARD]
    A = affine_normalize(doubled)
    assert A.a == [[qi(Fraction(1, 2)) if i == j else qi(0) for j in range(3)] for i in range(3)]
    assert not any(A.b)
    with pytest.raises(GeometryError):
        affine_normalize([(0, 0, 0), (1, 0, 0), (2, 0, 0), (0, 1, 0)])


@given(st.lists(st.tuples(coord, coord, coord, coord), min_size=4, max_size=4))
def test_affine_normalize_random(quad):
    vs = [[a - b for a, b in zip(p, quad[0])] for p in quad[1:]]
    assume(linalg.rank(vs) == 3)
    A = affine_normalize(quad)
    images = [A.apply(p) for p in quad]
    std = [(0, 0, 0, 0), (1, 0, 0, 0), (0, 1, 0, 0), (0, 0, 1, 0)]
    assert images == [tuple(qi(c) for c in s) for s in std]
