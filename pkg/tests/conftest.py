import sys
from fractions import Fraction

import pytest
from hypothesis import settings, strategies as st

from urncalc.dualbasis import clear_cache
from urncalc.multiset import Multiset

settings.register_profile("default", max_examples=60, deadline=None)
settings.load_profile("default")


@st.composite
def multisets(draw, n=None, min_n=1, max_n=3, min_size=0, max_size=4, full=False):
    n = draw(st.integers(min_n, max_n)) if n is None else n
    lo = n if full else 0
    size = draw(st.integers(max(min_size, lo), max(max_size, lo)))
    counts = [1 if full else 0] * n
    for _ in range(size - sum(counts)):
        counts[draw(st.integers(0, n - 1))] += 1
    return Multiset.from_vector(counts)


@st.composite
def simplex_points(draw, n=None, max_n=3, max_den=12):
    """Rational points with a common denominator ``d``."""
    n = draw(st.integers(1, max_n)) if n is None else n
    d = draw(st.integers(1, max_den))
    cuts = sorted(draw(st.lists(st.integers(0, d), min_size=n - 1, max_size=n - 1)))
    bounds = [0] + cuts + [d]
    return tuple(Fraction(bounds[i + 1] - bounds[i], d) for i in range(n))


@pytest.fixture
def no_disk_cache(monkeypatch):
    monkeypatch.delenv("URNCALC_CACHE_DIR", raising=False)
    clear_cache()
    yield
    clear_cache()


def pytest_terminal_summary(terminalreporter):
    mod = sys.modules.get("test_acceptance")
    if mod is None or not mod.RESULTS:
        return
    terminalreporter.section("acceptance criteria")
    for line in mod.summary_lines():
        terminalreporter.write_line(line)
