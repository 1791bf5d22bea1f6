import math

import numpy as np
import pytest
from hypothesis import settings

from eqarea.curve import ConvexCurve
from eqarea.moduli import DEFAULT_FRAME, ModuliPoint, construct, sample_polygons
from eqarea.polygon import gen_affinely_regular, normalize_unit_l

settings.register_profile("repo", max_examples=60, deadline=None)
settings.load_profile("repo")


def _cache(fn):
    store = {}

    def wrapped(*args):
        if args not in store:
            store[args] = fn(*args)
        return store[args]

    return wrapped


@_cache
def samples(n: int, count: int, positive: bool = False):
    """Deterministic moduli samples; the default frame already has l = 1."""
    return sample_polygons(n, count, np.random.default_rng(1000 + n), positive=positive)


@pytest.fixture
def hexagon():
    return normalize_unit_l(gen_affinely_regular(6))


@pytest.fixture
def perturbed_hexagon():
    return construct(ModuliPoint(6, (1.2,), DEFAULT_FRAME)).polygons[0]


def egg(eps: float = 0.15) -> ConvexCurve:
    """Smooth strictly convex oval without symmetries of the ellipse."""

    def pos(t):
        t = np.asarray(t, dtype=float)
        return np.column_stack([np.cos(t) + eps * np.cos(2 * t), np.sin(t) - eps * np.sin(2 * t)])

    def d1(t):
        t = np.asarray(t, dtype=float)
        return np.column_stack([-np.sin(t) - 2 * eps * np.sin(2 * t), np.cos(t) - 2 * eps * np.cos(2 * t)])

    def d2(t):
        t = np.asarray(t, dtype=float)
        return np.column_stack([-np.cos(t) - 4 * eps * np.cos(2 * t), -np.sin(t) + 4 * eps * np.sin(2 * t)])

    return ConvexCurve(pos, 2 * math.pi, d1, d2, name="egg")


ACCEPTANCE_LINES: list = []


def pytest_terminal_summary(terminalreporter):
    if ACCEPTANCE_LINES:
        terminalreporter.section("acceptance criteria")
        for line in sorted(ACCEPTANCE_LINES):
            terminalreporter.write_line(line)
