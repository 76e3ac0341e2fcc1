from fractions import Fraction

import pytest
from hypothesis import given, strategies as st

from lelong import fixtures
from lelong.currents import Current
from lelong.geometry import Line, PlaneCurve, proj_point
from lelong.poly import MultiPoly
from lelong.theorems import (
    PreconditionError,
    check_prop310,
    check_thm11,
    check_thm12,
    check_thm38,
    classify,
    verify_certificates,
)

F = Fraction


def _xyt():
    return [MultiPoly.variable(3, i) for i in range(3)]


def test_classify_examples():
    ex = fixtures.example_35(3)
    cl = classify(ex.current, F(1, 2))
    assert cl.shape == "FiniteOneOffLine"
    assert cl.line == ex.lines["L"]
    assert set(cl.points) == {ex.points[k] for k in ("p1", "p2", "p3")}
    assert cl.outlier == ex.points["q"]
    assert verify_certificates(cl)
    x, y, t = _xyt()
    C = PlaneCurve(x * x + y * y - t * t)
    cl = classify(Current.build(2, [(F(1, 2), C)]), F(2, 5))
    assert cl.shape == "Conic" and cl.conic == C
    assert classify(Current.build(2), F(1, 3)).shape == "Empty"


def test_classify_line_shapes():
    L = Line.from_form(1, 2, 3)
    assert classify(Current.build(2, [(1, L)]), F(1, 2)).shape == "ComplexLine"
    L2, L3 = Line.from_form(1, 0, 0), Line.from_form(0, 1, 0)
    T = Current.build(2, [(F(1, 2), L2), (F(1, 4), L3), (F(1, 4), Line.from_form(1, 1, -1))])
    cl = classify(T, F(2, 5))
    assert cl.shape == "LineUnionSubsetOfLine" and cl.line == L2
    assert cl.points == [proj_point(1, 0, 1)]
    assert verify_certificates(cl)


def test_classify_rejects_cubic_components():
    x, y, t = _xyt()
    cubic = PlaneCurve(y * y * t - x * x * x - x * t * t)
    with pytest.raises(PreconditionError):
        classify(Current.build(2, [(F(1, 3), cubic)]), F(1, 2))


def test_classify_unknown_is_unclassified():
    probe = proj_point(0, 1, 1)
    T = Current.build(2, [(F(1, 2), Line.from_form(0, 1, 0))], residual_mass=F(1, 2), probe_points=[probe])
    cl = classify(T, F(2, 5))
    assert cl.shape == "Unclassified" and cl.evidence == [probe] and cl.truncated


def test_thm11_examples():
    r = check_thm11(fixtures.example_32().current, F(3, 5))
    assert r.passed and r.classification.shape == "FiniteOneOffLine"
    r = check_thm11(fixtures.example_33().current, F(1, 2))
    assert r.passed and r.classification.shape == "Empty"
    for m in range(2, 7):
        assert check_thm11(fixtures.example_35(m).current, F(1, 2)).passed


def test_thm11_preconditions():
    T = fixtures.example_32().current
    with pytest.raises(PreconditionError):
        check_thm11(T, F(2, 5))
    with pytest.raises(PreconditionError):
        check_thm11(T.scale(2), F(1, 2))


def test_thm12_examples():
    r = check_thm12(fixtures.example_36().current, F(2, 5))
    assert r.passed and r.classification.shape == "Empty"
    r = check_thm12(fixtures.example_37(10).current, F(2, 5))
    assert r.passed and r.classification.shape == "FiniteSubsetOfConic"
    assert r.classification.truncated
    for seed in range(20):
        T = fixtures.random_current(seed, max_components=5, allow_conics=False)
        assert check_thm12(T, F(2, 5)).passed


def test_thm12_preconditions():
    with pytest.raises(PreconditionError):
        check_thm12(fixtures.example_39(3).current, F(2, 5))
    with pytest.raises(PreconditionError):
        check_thm12(fixtures.example_36().current, F(1, 2))


def test_thm38_examples():
    ex = fixtures.example_35(2)
    q, p1, p2 = ex.points["q"], ex.points["p1"], ex.points["p2"]
    r = check_thm38(ex.current, F(3, 5), q, p1)
    assert r.passed
    assert r.witness.contains(q) or r.witness.contains(p1)
    L = Line.from_form(0, 0, 1)
    r = check_thm38(Current.build(2, [(1, L)]), 1, proj_point(1, 0, 0), proj_point(0, 1, 0))
    assert r.passed and r.witness == L


def test_thm38_example_39_precondition():
    ex = fixtures.example_39()
    q = ex.points["q"]
    other = ex.lines["L1"].point_at(1, 1)
    with pytest.raises(PreconditionError):
        check_thm38(ex.current, F(3, 5), q, other)


def test_prop310_examples():
    ex = fixtures.example_35(3)
    triple = [ex.points[k] for k in ("p1", "p2", "p3")]
    r = check_prop310(ex.current, F(1, 2), triple, ex.lines["L"])
    assert r.passed and "1 point" in r.detail
    L = Line.from_form(1, 1, 1)
    triple = [L.point_at(1, t) for t in (0, 1, 2)]
    assert check_prop310(Current.build(2, [(1, L)]), F(2, 3), triple, L).passed


def test_prop310_preconditions():
    ex = fixtures.example_35(3)
    L = ex.lines["L"]
    with pytest.raises(PreconditionError):
        check_prop310(ex.current, F(1, 2), [ex.points["p1"], ex.points["p2"], ex.points["q"]], L)
    with pytest.raises(PreconditionError):
        check_prop310(ex.current, F(2, 5), [ex.points[k] for k in ("p1", "p2", "p3")], L)


@given(st.integers(0, 10**6), st.sampled_from([F(1, 2), F(3, 5), F(2, 3), F(3, 4)]))
def test_thm11_fuzz(seed, alpha):
    assert check_thm11(fixtures.random_current(seed), alpha).passed


@given(st.integers(0, 10**6))
def test_classify_certificates_reverify(seed):
    T = fixtures.random_current(seed)
    for alpha in (F(2, 5), F(1, 2)):
        cl = classify(T, alpha)
        assert verify_certificates(cl)
        for c in cl.certificates:
            if isinstance(c.carrier, PlaneCurve):
                assert c.carrier.value(c.point) == 0
