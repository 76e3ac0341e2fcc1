import sys
from fractions import Fraction

from hypothesis import settings, strategies as st

from lelong.field import GaussianRational
from lelong.poly import MultiPoly

settings.register_profile("default", deadline=None, max_examples=60)
settings.load_profile("default")

small_fractions = st.fractions(min_value=-20, max_value=20, max_denominator=12)
gaussian = st.builds(GaussianRational, small_fractions, small_fractions)
real_gaussian = st.builds(GaussianRational, small_fractions, st.just(Fraction(0)))


@st.composite
def bivariate(draw, max_degree=3, max_terms=5):
    terms = {}
    for _ in range(draw(st.integers(1, max_terms))):
        i = draw(st.integers(0, max_degree))
        j = draw(st.integers(0, max_degree - i))
        terms[(i, j)] = draw(st.integers(-5, 5))
    return MultiPoly(2, terms)


def pytest_terminal_summary(terminalreporter):
    mod = sys.modules.get("test_acceptance")
    if mod is None or not mod.RESULTS:
        return
    terminalreporter.section("acceptance criteria")
    for line in mod.summary_lines():
        terminalreporter.write_line(line)
