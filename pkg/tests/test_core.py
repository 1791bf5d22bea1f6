import math

import numpy as np
import pytest
from hypothesis import given
from hypothesis import strategies as st

from eqarea.core import (
    AffineMap2,
    HyperbolaBranch,
    Line2,
    as_point,
    det2,
    hyperbola_line_intersection,
    line_intersection,
)
from eqarea.errors import DegenerateAsymptotes, DegenerateMap, NonFinite

coord = st.floats(-1e3, 1e3, allow_nan=False, allow_infinity=False)
vec = st.tuples(coord, coord)


def test_det2_examples():
    assert det2((1, 0), (0, 1)) == 1
    assert det2((2, 3), (2, 3)) == 0
    assert det2((1, 2), (3, 4)) == -2


@given(vec, vec, vec, coord)
def test_det2_antisymmetric_bilinear(u, v, w, a):
    assert det2(u, v) == -det2(v, u)
    lhs = det2((u[0] + a * w[0], u[1] + a * w[1]), v)
    rhs = det2(u, v) + a * det2(w, v)
    scale = (1 + abs(a)) * (1 + np.abs(u).max() + np.abs(w).max()) * (1 + np.abs(v).max())
    assert abs(lhs - rhs) <= 1e-12 * scale


def test_line_intersection_examples():
    x_axis, y_axis = Line2((0, 0), (1, 0)), Line2((0, 0), (0, 1))
    assert np.allclose(line_intersection(x_axis, y_axis), (0, 0))
    assert line_intersection(Line2((0, 0), (1, 0)), Line2((0, 1), (1, 0))) is None
    p = line_intersection(Line2((0, 0), (1, 1)), Line2((2, 0), (0, 1)))
    assert np.allclose(p, (2, 2))


@given(vec, vec, vec, vec)
def test_line_intersection_affine_equivariant(b1, d1, b2, d2):
    if np.hypot(*d1) < 1e-3 or np.hypot(*d2) < 1e-3:
        return
    if abs(det2(d1, d2)) < 1e-2 * np.hypot(*d1) * np.hypot(*d2):
        return
    T = AffineMap2([[1.3, 0.4], [-0.2, 0.9]], [3.0, -1.0])
    l1, l2 = Line2(b1, d1), Line2(b2, d2)
    x = line_intersection(l1, l2)
    y = line_intersection(T.apply_line(l1), T.apply_line(l2))
    assert np.allclose(T(x), y, rtol=1e-9, atol=1e-9 * (1 + np.abs(y).max()))


def test_non_finite_rejected():
    with pytest.raises(NonFinite):
        as_point((math.nan, 0.0))
    with pytest.raises(ValueError):
        Line2((0, 0), (0, 0))


def test_affine_map_roundtrip():
    T = AffineMap2.from_coefficients(2, 1, 0, 1, 5, -3)
    pts = np.array([[0.0, 0.0], [1.0, 2.0], [-3.0, 0.5]])
    assert np.allclose(T.inverse()(T(pts)), pts)
    S = AffineMap2.from_triangles(pts, T(pts))
    assert np.allclose(S.linear, T.linear) and np.allclose(S.translation, T.translation)
    with pytest.raises(DegenerateMap):
        AffineMap2([[1, 2], [2, 4]]).inverse()


def _unit_hyperbola():
    return HyperbolaBranch(Line2((0, 0), (0, 1)), Line2((0, 0), (1, 0)), (1, 1))


def test_hyperbola_secant_tangent_miss():
    h = _unit_hyperbola()
    pts = hyperbola_line_intersection(h, Line2((3, 0), (-1, 1)))
    r5 = math.sqrt(5)
    expect = sorted([((3 - r5) / 2, (3 + r5) / 2), ((3 + r5) / 2, (3 - r5) / 2)], reverse=True)
    assert len(pts) == 2
    assert np.allclose(sorted([tuple(p) for p in pts], reverse=True), expect, atol=1e-12)
    tangent = hyperbola_line_intersection(h, Line2((2, 0), (-1, 1)))
    assert len(tangent) == 1 and np.allclose(tangent[0], (1, 1), atol=1e-7)
    assert hyperbola_line_intersection(h, Line2((1, 0), (-1, 1))) == []


def test_hyperbola_opposite_branch():
    h = HyperbolaBranch(Line2((0, 0), (0, 1)), Line2((0, 0), (1, 0)), (1, 1), same_branch=False)
    pts = hyperbola_line_intersection(h, Line2((-3, 0), (1, -1)))
    assert len(pts) == 2
    assert all(p[0] < 0 and p[1] < 0 for p in pts)
    assert hyperbola_line_intersection(h, Line2((3, 0), (-1, 1))) == []


@given(st.floats(0.2, 5), st.floats(-3, 3), st.floats(0.05, 3.0))
def test_hyperbola_points_satisfy_equation(c, b, slope):
    h = HyperbolaBranch(Line2((0, 0), (1, 0.3)), Line2((0, 0), (-0.2, 1)), (c, c))
    centre, k = h.frame()
    for p in hyperbola_line_intersection(h, Line2((0, b), (1, -slope))):
        u, v = h.coords(p, centre)
        assert abs(u * v - k) <= 1e-9 * abs(k)
        assert h.contains(p)


def test_degenerate_asymptotes():
    h = HyperbolaBranch(Line2((0, 0), (1, 0)), Line2((0, 1), (1, 0)), (1, 1))
    with pytest.raises(DegenerateAsymptotes):
        h.frame()
