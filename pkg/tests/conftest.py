from fractions import Fraction
from itertools import combinations

from hypothesis import HealthCheck, assume, settings
from hypothesis import strategies as st

from pptope.geometry import Point, PointSet

settings.register_profile("default", deadline=None,
                          suppress_health_check=[HealthCheck.too_slow, HealthCheck.filter_too_much])
settings.load_profile("default")


# fixed configurations (0-based indices)
TRIANGLE = [(0, 0), (4, 0), (1, 3)]
UNIT_SQUARE = [(0, 0), (1, 0), (1, 1), (0, 1)]
QUAD = [(0, 0), (4, 0), (5, 3), (1, 4)]
TRI_PLUS_ONE = [(0, 0), (4, 0), (1, 3), (2, 1)]
PENTAGON = [(0, 0), (4, 0), (5, 3), (2, 5), (-1, 3)]
QUAD_PLUS_ONE = [(0, 0), (10, 0), (10, 10), (0, 10), (4, 3)]
TRI_PLUS_TWO = [(0, 0), (12, 0), (5, 11), (4, 3), (7, 4)]
HEXAGON = [(0, 0), (2, 0), (3, 1), (2, 3), (0, 3), (-1, 1)]


def convex_ngon(n):
    """Points on the parabola y = x^2: convex position, no three collinear."""
    return [(i, i * i) for i in range(n)]


def general_position(pts):
    ps = [Point.of(*p) for p in pts]
    if len(set(ps)) != len(ps):
        return False
    for a, b, c in combinations(ps, 3):
        if (b.x - a.x) * (c.y - a.y) - (b.y - a.y) * (c.x - a.x) == 0:
            return False
    return True


rationals = st.builds(Fraction, st.integers(-30, 30), st.integers(1, 6))


@st.composite
def point_sets(draw, min_n=3, max_n=6, coords=st.integers(-40, 40)):
    n = draw(st.integers(min_n, max_n))
    pts = draw(st.lists(st.tuples(coords, coords), min_size=n, max_size=n, unique=True))
    assume(general_position(pts))
    return PointSet(pts)


@st.composite
def rational_point_sets(draw, n=4):
    pts = draw(st.lists(st.tuples(rationals, rationals), min_size=n, max_size=n, unique=True))
    assume(general_position(pts))
    return PointSet(pts)


# --- acceptance summary ------------------------------------------------------

_criteria: dict = {}


def pytest_runtest_logreport(report):
    if "test_acceptance.py" not in report.nodeid:
        return
    name = report.nodeid.split("::")[-1]
    if report.when == "call" or (report.when == "setup" and report.outcome != "passed"):
        _criteria[name] = report.outcome


def pytest_terminal_summary(terminalreporter):
    if not _criteria:
        return
    terminalreporter.section("acceptance criteria")
    for name in sorted(_criteria):
        status = "PASS" if _criteria[name] == "passed" else "FAIL"
        terminalreporter.write_line(f"{status}  {name}")
