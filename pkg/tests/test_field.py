from fractions import Fraction

import mpmath
import pytest
from hypothesis import given

from conftest import gaussian, small_fractions
from lelong.field import (
    ONE,
    ZERO,
    GaussianRational,
    I,
    format_rational,
    is_zero,
    snap,
    sqrt_qi,
    to_float,
    to_fraction,
)


def G(a, b=0):
    return GaussianRational(a, b)


def test_basic_ops():
    assert G(1, 1) * G(1, -1) == 2
    assert G(Fraction(2, 3)) + G(Fraction(1, 3)) == 1
    assert G(3, 4) / G(3, 4) == 1
    assert I * I == -1


def test_division_by_zero():
    with pytest.raises(ZeroDivisionError):
        ONE / ZERO
    with pytest.raises(ZeroDivisionError):
        G(1, 2) / G(0, 0)


def test_hash_matches_fraction_for_reals():
    assert hash(G(Fraction(1, 3))) == hash(Fraction(1, 3))
    assert len({G(2), G(Fraction(4, 2)), G(2, 0)}) == 1


@pytest.mark.parametrize("x, root", [(-1, G(0, 1)), (G(0, 2), G(1, 1)), (4, G(2)), (Fraction(9, 4), G(Fraction(3, 2))), (0, G(0))])
def test_sqrt_examples(x, root):
    assert sqrt_qi(x) == root


def test_sqrt_absent():
    assert sqrt_qi(2) is None
    assert sqrt_qi(G(0, 1)) is None  # sqrt(i) has irrational parts


@given(gaussian, gaussian, gaussian)
def test_field_axioms(a, b, c):
    assert (a + b) + c == a + (b + c)
    assert a * (b + c) == a * b + a * c
    assert a - a == 0
    if a:
        assert a * a.inverse() == 1


@given(gaussian)
def test_sqrt_of_square_is_present(y):
    r = sqrt_qi(y * y)
    assert r is not None
    assert r * r == y * y
    # canonical branch
    assert r.re > 0 or (r.re == 0 and r.im >= 0)


@given(gaussian)
def test_sqrt_returned_roots_square_back(x):
    r = sqrt_qi(x)
    if r is not None:
        assert r * r == x


@given(gaussian)
def test_json_roundtrip(x):
    assert GaussianRational.from_json(x.to_json()) == x


def test_to_float():
    assert to_float(Fraction(1, 3)) == complex(1 / 3)
    assert to_float(0) == 0j
    assert to_float(10**40) == complex(1e40)
    with pytest.raises(OverflowError):
        to_float(Fraction(10**400))
    # extended exponent at higher precision
    big = to_float(Fraction(10**400), 128)
    assert mpmath.almosteq(big.real, mpmath.mpf(10) ** 400, rel_eps=mpmath.mpf(2) ** -120)


@given(small_fractions)
def test_format_rational_roundtrip(x):
    assert to_fraction(format_rational(x)) == x
    assert "/" in format_rational(x)


def test_snap_and_zero_test():
    x = mpmath.mpc(1, 0) / 3
    assert snap(x) == G(Fraction(1, 3))
    assert is_zero(mpmath.mpf(2) ** -200)
    assert not is_zero(mpmath.mpf(2) ** -20)
