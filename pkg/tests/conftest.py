import math

import pytest

from spatial_linking.geometry import PLEmbedding

# Triangle 1-2-3 flat in z=0, triangle 4-5-6 threading it once at (1,0,0).
# Edge 1-6 needs a detour or it would hit edge 2-4.
HOPF_VERTICES = [(0, -1, 0), (2, -1, 0), (1, 2, 0), (1, 0, 1), (1, 0, -1), (3, 0, 1)]
HOPF_BENDS = {(1, 6): [(5, -7, 9)]}


def polygon_knot(curve, m, scale=100):
    """A closed polygon through m samples of ``curve``, stored as a K_3 with
    the rest of the polygon on edge 1-3."""
    pts = [tuple(round(scale * c) for c in curve(2 * math.pi * k / m)) for k in range(m)]
    return PLEmbedding(3, [pts[0], pts[1], pts[2]], {(1, 3): tuple(reversed(pts[3:]))})


def trefoil_curve(t):
    return (math.sin(t) + 2 * math.sin(2 * t), math.cos(t) - 2 * math.cos(2 * t), -math.sin(3 * t))


def figure_eight_curve(t):
    r = 2 + math.cos(2 * t)
    return (r * math.cos(3 * t), r * math.sin(3 * t), math.sin(4 * t))


@pytest.fixture(scope="session")
def hopf_k6():
    return PLEmbedding(6, HOPF_VERTICES, HOPF_BENDS)


@pytest.fixture(scope="session")
def split_k6():
    far = [(0, 0, 0), (4, 1, 0), (1, 5, 1), (100, 3, 7), (104, 0, 9), (101, 6, 5)]
    return PLEmbedding(6, far)


@pytest.fixture(scope="session")
def trefoil_polygon():
    return polygon_knot(trefoil_curve, 24)


@pytest.fixture(scope="session")
def figure_eight_polygon():
    return polygon_knot(figure_eight_curve, 40)


def pytest_terminal_summary(terminalreporter):
    try:
        from test_acceptance import LINES
    except ImportError:
        return
    if LINES:
        terminalreporter.section("acceptance criteria")
        for line in LINES:
            terminalreporter.write_line(line)
