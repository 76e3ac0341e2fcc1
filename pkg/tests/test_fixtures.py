from fractions import Fraction

import pytest

from lelong import fixtures
from lelong.currents import mass
from lelong.geometry import Line, PlaneCurve


@pytest.mark.parametrize("ident", fixtures.EXAMPLE_IDS)
def test_examples_have_unit_mass_and_hold(ident):
    ex = fixtures.gen_example(ident)
    assert mass(ex.current) == 1
    failed = [(name, detail) for name, ok, detail in ex.check() if not ok]
    assert not failed


@pytest.mark.parametrize("m", range(2, 9))
def test_example_35_mass_identity(m):
    ex = fixtures.example_35(m)
    assert Fraction(m - 1, 2 * m) + m * Fraction(m + 1, 2 * m * m) == 1
    assert mass(ex.current) == 1


@pytest.mark.parametrize("N", [0, 3, 10])
def test_example_37_truncation_carries_residual(N):
    ex = fixtures.example_37(N)
    assert mass(ex.current) == 1
    assert ex.current.residual_mass == Fraction(1, 5) * Fraction(1, 2 ** (N + 1))


def test_invalid_params():
    with pytest.raises(ValueError):
        fixtures.gen_example("3.5", m=1)
    with pytest.raises(ValueError):
        fixtures.gen_example("3.7", N=2, eps=[1, 1, 1])
    with pytest.raises(ValueError):
        fixtures.gen_example("4.1")


def test_random_current_is_deterministic():
    assert fixtures.random_current(0) == fixtures.random_current(0)
    assert fixtures.random_current(0) != fixtures.random_current(1)


@pytest.mark.parametrize("seed", range(40))
def test_random_current_mass(seed):
    assert mass(fixtures.random_current(seed)) == 1
    assert mass(fixtures.random_current(seed, total_mass=Fraction(3, 2))) == Fraction(3, 2)
    T3 = fixtures.random_current(seed, n=3)
    assert T3.ambient_dim == 3 and all(isinstance(c, Line) for c in T3.components)


def test_conic_and_two_lines_mass():
    for seed in range(500):
        T = fixtures.random_current(seed)
        kinds = sorted(type(c).__name__ for c in T.components)
        if kinds == ["Line", "Line", "PlaneCurve"]:
            (wc,) = [w for w, c in T.terms if isinstance(c, PlaneCurve)]
            w1, w2 = [w for w, c in T.terms if isinstance(c, Line)]
            assert 2 * wc + w1 + w2 == mass(T) == 1
            return
    pytest.fail("no seed produced one conic and two lines")


@pytest.mark.parametrize("kind", fixtures.GREEN_KINDS)
def test_green_configurations_are_seeded(kind):
    assert fixtures.green_configuration(kind, 5) == fixtures.green_configuration(kind, 5)
