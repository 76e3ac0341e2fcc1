import math
import random
from fractions import Fraction

import pytest
import sympy
from hypothesis import assume, given, strategies as st

from conftest import bivariate, small_fractions
from lelong.field import GaussianRational, I, qi
from lelong.poly import (
    MultiPoly,
    divide_exact,
    interpolation_nullspace,
    is_coprime,
    order_at,
    resultant,
    univariate_roots,
)
from oracles import sympy_resultant, taylor_order, to_sympy

X = MultiPoly.variable(2, 0)
Y = MultiPoly.variable(2, 1)


def const(c, n=2):
    return MultiPoly.constant(n, c)


def test_evaluate_examples():
    z = [MultiPoly.variable(3, i) for i in range(3)]
    p1 = z[0] * (z[0] + 2 * z[1] + 3 * z[2] - 1)
    assert p1.evaluate([1, 0, 0]) == 0
    p = X * X + Y * Y
    assert p.evaluate([1, I]) == 0
    q = X * Y + 7 * X - const(5)
    assert q.evaluate([0, 0]) == -5


def test_evaluate_dimension_mismatch():
    with pytest.raises(ValueError):
        X.evaluate([1, 2, 3])


def test_order_at_examples():
    assert order_at(X * Y, (0, 0)) == 2
    assert order_at(MultiPoly.zero(2), (0, 0)) == math.inf
    assert order_at(X + const(1), (0, 0)) == 0
    pts = [(0, 0), (1, 0), (0, 1), (2, 3), (-1, 2)]
    (conic,) = interpolation_nullspace(pts, [1] * 5, 2)
    for p in pts:
        assert order_at(conic, p) == 1


@given(bivariate(), bivariate(), small_fractions, small_fractions)
def test_order_of_product_is_additive(p, q, a, b):
    assert order_at(p * q, (a, b)) == order_at(p, (a, b)) + order_at(q, (a, b))


@given(bivariate(), st.integers(-3, 3), st.integers(-3, 3))
def test_order_matches_taylor(p, a, b):
    assert order_at(p, (a, b)) == taylor_order(p, (a, b))


def test_resultant_examples():
    r = resultant(X * X + Y * Y - const(1), X - Y, 0)
    target = 2 * Y * Y - const(1)
    assert r == target or r == -target
    p = X * X * Y + Y - const(3)
    assert resultant(p, p, 0).is_zero()
    a, b = Fraction(2, 3), GaussianRational(1, -4)
    r = resultant(X - const(a), X - const(b), 0)
    assert r == const(b - a) or r == const(a - b)


def test_resultant_degenerate_input():
    with pytest.raises(ValueError):
        resultant(Y, X, 0)


@given(bivariate(), bivariate(), st.sampled_from([0, 1]))
def test_resultant_matches_sympy(p, q, var):
    assume(p.degree_in(var) >= 1 and q.degree_in(var) >= 1)
    r = resultant(p, q, var)
    expected = sympy_resultant(p, q, var)
    got, _ = to_sympy(r)
    assert sympy.expand(got - expected) == 0 or sympy.expand(got + expected) == 0


def test_is_coprime_examples():
    assert not is_coprime(X * Y, X * (Y - const(1)))
    assert is_coprime(X, Y)
    with pytest.raises(ValueError):
        is_coprime(MultiPoly.variable(3, 0), MultiPoly.variable(3, 1))


@given(bivariate(), bivariate())
def test_multiple_is_never_coprime(p, r):
    assume(p.degree >= 1 and not r.is_zero())
    assert not is_coprime(p, p * r)


@given(bivariate(max_degree=2), bivariate(max_degree=2))
def test_is_coprime_matches_sympy_gcd(p, q):
    assume(not p.is_zero() and not q.is_zero())
    ep, zs = to_sympy(p)
    eq, _ = to_sympy(q)
    g = sympy.gcd(ep, eq)
    assert is_coprime(p, q) == (sympy.Poly(g, *zs).total_degree() == 0)


@given(bivariate(), bivariate())
def test_divide_exact_roundtrip(p, q):
    assume(not q.is_zero())
    assert divide_exact(p * q, q) == p


def test_divide_exact_rejects_remainder():
    with pytest.raises(ValueError):
        divide_exact(X * X + const(1), X)


def _general_points(rng, k):
    pts = []
    while len(pts) < k:
        p = (rng.randint(-3, 3), rng.randint(-3, 3))
        if p not in pts:
            pts.append(p)
    return pts


def test_interpolation_examples():
    rng = random.Random(11)
    pts = _general_points(rng, 7)
    basis = interpolation_nullspace(pts, [2, 2, 2, 1, 1, 1, 1], 4)
    assert len(basis) >= 2
    five = [(0, 0), (1, 0), (0, 1), (2, 3), (-1, 2)]
    assert len(interpolation_nullspace(five, [1] * 5, 2)) == 1
    assert interpolation_nullspace([(0, 0)], [1], 0) == []


@given(st.lists(st.tuples(st.integers(-3, 3), st.integers(-3, 3)), min_size=1, max_size=4, unique=True),
       st.data())
def test_interpolation_basis_meets_orders(pts, data):
    orders = [data.draw(st.integers(1, 3)) for _ in pts]
    degree = data.draw(st.integers(0, 4))
    basis = interpolation_nullspace(pts, orders, degree)
    conditions = sum(k * (k + 1) // 2 for k in orders)
    assert len(basis) >= (degree + 1) * (degree + 2) // 2 - conditions
    for b in basis:
        assert b.degree <= degree
        for p, k in zip(pts, orders):
            assert order_at(b, p) >= k


def test_univariate_roots_exact_and_numeric():
    # (x - 1/2)(x^2 + 1)(x^2 - 2)
    x = sympy.symbols("x")
    poly = sympy.Poly(sympy.expand((x - sympy.Rational(1, 2)) * (x**2 + 1) * (x**2 - 2)), x)
    coeffs = [qi(Fraction(int(c.p), int(c.q))) for c in reversed(poly.all_coeffs())]
    roots = univariate_roots(coeffs)
    exact = {r for r, ok in roots if ok}
    assert exact == {qi(Fraction(1, 2)), I, -I}
    inexact = [r for r, ok in roots if not ok]
    assert len(inexact) == 2
    assert all(abs(abs(complex(r)) - 2**0.5) < 1e-12 for r in inexact)


def test_json_roundtrip():
    p = 3 * X * X - GaussianRational(1, 2) * Y + const(Fraction(1, 7))
    assert MultiPoly.from_json(p.to_json()) == p
