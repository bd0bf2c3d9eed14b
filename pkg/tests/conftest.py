from fractions import Fraction

import hypothesis.strategies as st
import pytest
from hypothesis import HealthCheck, settings

from halfwalk.exact_series import LaurentPoly, SeriesT, rat

settings.register_profile(
    "fixed",
    derandomize=True,
    max_examples=60,
    deadline=None,
    suppress_health_check=[HealthCheck.too_slow],
)
settings.load_profile("fixed")

ACCEPTANCE_LINES = []


def pytest_terminal_summary(terminalreporter):
    if ACCEPTANCE_LINES:
        terminalreporter.section("acceptance criteria")
        for line in ACCEPTANCE_LINES:
            terminalreporter.write_line(line)


rationals = st.builds(
    lambda p, q: rat(Fraction(p, q)),
    st.integers(-20, 20),
    st.integers(1, 6),
)


@st.composite
def laurent_polys(draw, lo=-3, hi=3, max_terms=4):
    terms = draw(st.dictionaries(st.integers(lo, hi), rationals, max_size=max_terms))
    return LaurentPoly(terms)


@st.composite
def series(draw, order=None, lo=-2, hi=3):
    N = draw(st.integers(0, 5)) if order is None else order
    cs = draw(st.lists(laurent_polys(lo, hi), min_size=N + 1, max_size=N + 1))
    return SeriesT(cs, N)


@st.composite
def series_triples(draw):
    N = draw(st.integers(0, 5))
    return tuple(draw(series(order=N)) for _ in range(3))


@pytest.fixture
def excursions():
    """Dyck-path counts f(0;n), n <= 40, from the binomial formula."""
    from math import comb

    return [comb(n, n // 2) // (n // 2 + 1) if n % 2 == 0 else 0 for n in range(41)]
