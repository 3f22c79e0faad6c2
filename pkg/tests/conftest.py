from fractions import Fraction

import pytest
from hypothesis import strategies as st

from trilift.exact import Point, PointSet

small_rats = st.fractions(min_value=-20, max_value=20, max_denominator=12)


@st.composite
def points(draw, coords=small_rats):
    return Point(draw(coords), draw(coords))


@st.composite
def point_sets(draw, min_size=3, max_size=7):
    pts = draw(st.lists(points(), min_size=min_size, max_size=max_size, unique=True))
    return PointSet(pts)


@st.composite
def triangles(draw):
    a, b, c = draw(st.lists(points(), min_size=3, max_size=3, unique=True))
    if (b.x - a.x) * (c.y - a.y) == (b.y - a.y) * (c.x - a.x):
        c = Point(c.x + 1, c.y + Fraction(1, 3)) if (b.x - a.x) * Fraction(1, 3) != (b.y - a.y) else Point(c.x, c.y + 1)
    return a, b, c


def P(*coords) -> PointSet:
    return PointSet([Point(Fraction(x), Fraction(y)) for x, y in coords])


@pytest.fixture
def grid2():
    return P((0, 0), (0, 1), (1, 0), (1, 1))


# Acceptance reporting: tests marked ``criterion(n, title)`` get one
# PASS/FAIL line each in the terminal summary. Tests append free-form detail
# through the ``detail`` fixture.

_criteria: list[str] = []


def pytest_configure(config):
    config.addinivalue_line("markers", "criterion(n, title): acceptance criterion")


@pytest.fixture
def detail(request):
    notes: list[str] = []
    request.node._criterion_notes = notes
    return notes


@pytest.hookimpl(hookwrapper=True)
def pytest_runtest_makereport(item, call):
    outcome = yield
    rep = outcome.get_result()
    mark = item.get_closest_marker("criterion")
    if mark is None or rep.when != "call":
        return
    n, title = mark.args
    status = "PASS" if rep.passed else "FAIL"
    notes = "; ".join(getattr(item, "_criterion_notes", []))
    _criteria.append(f"{status} criterion {n}: {title}" + (f" ({notes})" if notes else ""))


def pytest_terminal_summary(terminalreporter):
    if _criteria:
        terminalreporter.section("acceptance criteria")
        for line in sorted(_criteria, key=lambda s: int(s.split()[2].rstrip(":"))):
            terminalreporter.write_line(line)
