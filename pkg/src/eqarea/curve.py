"""Approximation of closed convex curves by equal-area polygons.

The walk places three points at equal affine arc-length spacing ``L / n``
and then repeatedly intersects the curve with the line through ``P_{k-3}``
parallel to ``P_{k-2} P_{k-1}``.  The walk is closed with two off-curve
vertices by the hyperbola construction in :mod:`eqarea.moduli`.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from enum import Enum
from typing import Callable

import numpy as np
from scipy.interpolate import CubicSpline
from scipy.optimize import brentq

from .errors import (
    GeometryError,
    IntersectionNotFound,
    NonConvexIntermediate,
    NonConvexSample,
    TooFewVertices,
)
from .moduli import ClosureCase, close_open_chain

QUAD_TOL = 1e-10
MAX_INTERVALS = 4096


class ConvexCurve:
    """A closed, positively oriented, strictly convex parameterized curve.

    ``position`` maps ``t`` in ``[0, period)`` to a point and must accept
    numpy arrays of parameters.  Derivatives default to central differences
    with Richardson extrapolation.
    """

    def __init__(self, position: Callable, period: float = 2 * math.pi,
                 d1: Callable | None = None, d2: Callable | None = None,
                 h: float | None = None, name: str = "curve"):
        self.position = position
        self.period = float(period)
        self._d1 = d1
        self._d2 = d2
        self.h = 1e-5 * self.period if h is None else h
        self.name = name
        self._table = None

    def __call__(self, t):
        return np.asarray(self.position(t), dtype=float)

    def point(self, t: float) -> np.ndarray:
        return np.asarray(self.position(np.asarray([t], dtype=float)), dtype=float).reshape(-1, 2)[0]

    def points(self, ts) -> np.ndarray:
        return np.asarray(self.position(np.asarray(ts, dtype=float)), dtype=float).reshape(-1, 2)

    def d1(self, ts) -> np.ndarray:
        ts = np.asarray(ts, dtype=float)
        if self._d1 is not None:
            return np.asarray(self._d1(ts), dtype=float).reshape(-1, 2)
        h = self.h

        def cd(hh):
            return (self.points(ts + hh) - self.points(ts - hh)) / (2 * hh)

        return (4 * cd(h / 2) - cd(h)) / 3

    def d2(self, ts) -> np.ndarray:
        ts = np.asarray(ts, dtype=float)
        if self._d2 is not None:
            return np.asarray(self._d2(ts), dtype=float).reshape(-1, 2)
        h = self.h
        mid = self.points(ts)

        def sd(hh):
            return (self.points(ts + hh) - 2 * mid + self.points(ts - hh)) / (hh * hh)

        return (4 * sd(h / 2) - sd(h)) / 3

    def bracket(self, ts) -> np.ndarray:
        """``[g'(t), g''(t)]``."""
        a, b = self.d1(ts), self.d2(ts)
        return a[:, 0] * b[:, 1] - a[:, 1] * b[:, 0]

    def integrand(self, ts) -> np.ndarray:
        """``[g', g'']^(1/3)``; tiny negative values from rounding clamp to 0."""
        ts = np.atleast_1d(np.asarray(ts, dtype=float))
        a, b = self.d1(ts), self.d2(ts)
        br = a[:, 0] * b[:, 1] - a[:, 1] * b[:, 0]
        speed3 = np.sum(a * a, axis=1) ** 1.5
        if np.any(br < -1e-6 * np.maximum(speed3, 1e-300)):
            bad = float(ts[np.argmin(br)])
            raise NonConvexSample(f"curve is not convex near t={bad:.6g}")
        return np.cbrt(np.maximum(br, 0.0))

    def transformed(self, T) -> ConvexCurve:
        """Image under an orientation-preserving affine map."""
        if T.det <= 0:
            raise ValueError("only orientation-preserving maps keep the curve positively oriented")
        d1 = (lambda ts: T.apply_vector(self.d1(ts))) if self._d1 else None
        d2 = (lambda ts: T.apply_vector(self.d2(ts))) if self._d2 else None
        return ConvexCurve(lambda ts: T(self.points(ts)), self.period, d1, d2, self.h,
                           name=f"affine({self.name})")


# -- built-in curves ---------------------------------------------------------

def circle(r: float = 1.0) -> ConvexCurve:
    return ellipse(r, r, name="circle")


def ellipse(a: float, b: float, name: str = "ellipse") -> ConvexCurve:
    def pos(t):
        t = np.asarray(t, dtype=float)
        return np.column_stack([a * np.cos(t), b * np.sin(t)])

    def d1(t):
        return np.column_stack([-a * np.sin(t), b * np.cos(t)])

    def d2(t):
        return np.column_stack([-a * np.cos(t), -b * np.sin(t)])

    return ConvexCurve(pos, 2 * math.pi, d1, d2, name=name)


def superellipse(p: float = 4.0) -> ConvexCurve:
    """``|x|^p + |y|^p = 1`` (``p >= 2``) parameterized by polar angle.

    For ``p > 2`` the curve has zero Euclidean curvature on the axes, so the
    affine integrand vanishes at four points.
    """
    if p < 2:
        raise ValueError("superellipse needs p >= 2 for second derivatives")

    def parts(t):
        t = np.asarray(t, dtype=float)
        c, s = np.cos(t), np.sin(t)
        ac, as_ = np.abs(c), np.abs(s)
        g = ac**p + as_**p
        g1 = p * c * s * (as_ ** (p - 2) - ac ** (p - 2))
        g2 = (p * (c * c - s * s) * (as_ ** (p - 2) - ac ** (p - 2))
              + p * (p - 2) * (c * c * as_ ** (p - 2) + s * s * ac ** (p - 2)))
        r = g ** (-1.0 / p)
        r1 = -r * g1 / (p * g)
        r2 = -(1.0 / p) * ((-(1.0 / p) - 1.0) * g ** (-1.0 / p - 2.0) * g1 * g1
                           + g ** (-1.0 / p - 1.0) * g2)
        return c, s, r, r1, r2

    def pos(t):
        c, s, r, _r1, _r2 = parts(t)
        return np.column_stack([r * c, r * s])

    def d1(t):
        c, s, r, r1, _r2 = parts(t)
        return np.column_stack([r1 * c - r * s, r1 * s + r * c])

    def d2(t):
        c, s, r, r1, r2 = parts(t)
        return np.column_stack([r2 * c - 2 * r1 * s - r * c, r2 * s + 2 * r1 * c - r * s])

    return ConvexCurve(pos, 2 * math.pi, d1, d2, name=f"superellipse({p:g})")


MIN_POLYLINE_POINTS = 10_000


def from_polyline(points, min_points: int = MIN_POLYLINE_POINTS) -> ConvexCurve:
    """Periodic cubic spline through a dense closed sample of a convex curve.

    The spline is parameterized by chord length.  Sparse samples give
    noisy second derivatives, hence the ``min_points`` floor.
    """
    pts = np.asarray(points, dtype=float)
    if np.allclose(pts[0], pts[-1]):
        pts = pts[:-1]
    if len(pts) < min_points:
        raise TooFewVertices(f"polyline needs at least {min_points} points, got {len(pts)}")
    area = 0.5 * float(np.sum(pts[:, 0] * np.roll(pts[:, 1], -1) - np.roll(pts[:, 0], -1) * pts[:, 1]))
    if area < 0:
        pts = pts[::-1]
    seg = np.linalg.norm(np.diff(np.vstack([pts, pts[:1]]), axis=0), axis=1)
    knots = np.concatenate([[0.0], np.cumsum(seg)])
    T = float(knots[-1])
    spline = CubicSpline(knots, np.vstack([pts, pts[:1]]), bc_type="periodic")
    d1s, d2s = spline.derivative(1), spline.derivative(2)

    def wrap(t):
        return np.mod(np.asarray(t, dtype=float), T)

    return ConvexCurve(lambda t: spline(wrap(t)), T, lambda t: d1s(wrap(t)),
                       lambda t: d2s(wrap(t)), name="polyline")


# -- quadrature --------------------------------------------------------------

def adaptive_simpson(f: Callable, a: float, b: float, tol: float = QUAD_TOL,
                     max_depth: int = 40, max_intervals: int = MAX_INTERVALS) -> float:
    """Adaptive Simpson rule with Richardson correction.

    Refinement is breadth-first: every unconverged interval of one level is
    split at once, so ``f`` sees one vectorized call per level.  An interval
    is accepted when its error estimate is below its share of ``tol``
    (proportional to its width).  Once more than ``max_intervals`` are
    still open, all of them are accepted as they stand; this bounds the
    work when ``f`` is noisier than ``tol`` (finite-difference derivatives).
    """
    if b == a:
        return 0.0
    width = b - a
    fa, fm, fb = f(np.array([a, 0.5 * (a + b), b]))
    lo, hi = np.array([a]), np.array([b])
    fl, fc, fr = np.array([fa]), np.array([fm]), np.array([fb])
    whole = (hi - lo) / 6 * (fl + 4 * fc + fr)
    total = 0.0
    for depth in range(max_depth + 1):
        mid = 0.5 * (lo + hi)
        vals = f(np.concatenate([0.5 * (lo + mid), 0.5 * (mid + hi)]))
        flm, frm = vals[: len(lo)], vals[len(lo):]
        left = (mid - lo) / 6 * (fl + 4 * flm + fc)
        right = (hi - mid) / 6 * (fc + 4 * frm + fr)
        delta = left + right - whole
        done = np.abs(delta) <= 15 * tol * (hi - lo) / width
        if depth == max_depth or len(lo) > max_intervals:
            done[:] = True
        total += float(np.sum((left + right + delta / 15)[done]))
        keep = ~done
        if not keep.any():
            break
        lo, mid, hi = lo[keep], mid[keep], hi[keep]
        fl, flm, fc, frm, fr = fl[keep], flm[keep], fc[keep], frm[keep], fr[keep]
        left, right = left[keep], right[keep]
        lo, hi = np.concatenate([lo, mid]), np.concatenate([mid, hi])
        fl, fc, fr = np.concatenate([fl, fc]), np.concatenate([flm, frm]), np.concatenate([fc, fr])
        whole = np.concatenate([left, right])
    return total


def affine_arclength(c: ConvexCurve, t0: float, t1: float, tol: float = QUAD_TOL) -> float:
    """``int_{t0}^{t1} [g', g'']^(1/3) dt``."""
    if t1 < t0:
        raise ValueError("t1 must not precede t0")
    if t1 == t0:
        return 0.0
    # split into a few panels so the initial Simpson estimate is not fooled
    k = max(1, int(math.ceil(16 * (t1 - t0) / c.period)))
    edges = np.linspace(t0, t1, k + 1)
    return sum(adaptive_simpson(c.integrand, edges[i], edges[i + 1], tol / k) for i in range(k))


class _ArcTable:
    """Cumulative affine arc length on a fixed grid starting at ``t0``."""

    def __init__(self, c: ConvexCurve, t0: float, cells: int = 64):
        self.c = c
        self.t0 = t0
        self.knots = t0 + np.linspace(0.0, c.period, cells + 1)
        parts = [adaptive_simpson(c.integrand, self.knots[i], self.knots[i + 1], QUAD_TOL / cells)
                 for i in range(cells)]
        self.cum = np.concatenate([[0.0], np.cumsum(parts)])

    @property
    def total(self) -> float:
        return float(self.cum[-1])

    def s(self, t: float) -> float:
        """Arc length from ``t0`` to ``t`` (``t0 <= t <= t0 + T``)."""
        i = int(np.clip(np.searchsorted(self.knots, t, side="right") - 1, 0, len(self.knots) - 2))
        if t <= self.knots[i]:
            return float(self.cum[i])
        return float(self.cum[i]) + adaptive_simpson(self.c.integrand, self.knots[i], t, QUAD_TOL / 64)

    def t_of(self, s: float) -> float:
        """Inverse of :meth:`s`."""
        if s <= 0:
            return self.t0
        if s >= self.total:
            return float(self.knots[-1])
        i = int(np.searchsorted(self.cum, s, side="right") - 1)
        lo, hi = float(self.knots[i]), float(self.knots[i + 1])
        base = float(self.cum[i])
        g = lambda t: base + adaptive_simpson(self.c.integrand, lo, t, QUAD_TOL / 64) - s  # noqa: E731
        return brentq(g, lo, hi, xtol=1e-14, rtol=4 * np.finfo(float).eps)


def uniform_affine_sample(c: ConvexCurve, n: int, t_start: float = 0.0) -> np.ndarray:
    """``n`` points at equal affine arc-length spacing starting at ``t_start``."""
    return c.points(uniform_affine_params(c, n, t_start))


def uniform_affine_params(c: ConvexCurve, n: int, t_start: float = 0.0, table=None) -> np.ndarray:
    if n < 1:
        raise ValueError("n must be positive")
    table = table or _ArcTable(c, t_start)
    step = table.total / n
    return np.array([t_start] + [table.t_of(k * step) for k in range(1, n)])


# -- the equal-area walk -----------------------------------------------------

class Termination(str, Enum):
    CLOSED_EXACTLY = "ClosedExactly"
    CLOSURE_CASE2 = "ClosureCase2"


@dataclass
class ApproxResult:
    vertices: np.ndarray
    m: int
    n_requested: int
    edge_affine_lengths: list
    terminated_by: Termination
    params: np.ndarray = field(repr=False, default=None)
    on_curve: int = 0
    case: str | None = None

    def to_dict(self) -> dict:
        return {
            "kind": "approx",
            "vertices": self.vertices.tolist(),
            "m": self.m,
            "n_requested": self.n_requested,
            "edge_affine_lengths": list(self.edge_affine_lengths),
            "terminated_by": self.terminated_by.value,
            "closure_case": self.case,
        }


def _forward_intersection(c: ConvexCurve, base: np.ndarray, direction: np.ndarray,
                          t_from: float, t_limit: float, steps: int) -> float | None:
    """First parameter after ``t_from`` where the curve crosses the line."""

    def f(t):
        p = c.point(t) - base
        return direction[0] * p[1] - direction[1] * p[0]

    dt = (t_limit - t_from) / steps
    a, fa = t_from, f(t_from)
    for k in range(1, steps + 1):
        b = t_from + k * dt if k < steps else t_limit
        fb = f(b)
        if fa < 0 <= fb:
            if fb == 0:
                return b
            return brentq(f, a, b, xtol=1e-13, rtol=4 * np.finfo(float).eps)
        a, fa = b, fb
    return None


def approximate(c: ConvexCurve, n: int, t_start: float = 0.0, tol: float = 1e-7) -> ApproxResult:
    """Equal-area polygon walked along ``c`` with affine step ``L / n``."""
    if n < 5:
        raise TooFewVertices(f"need n >= 5, got {n}")
    table = _ArcTable(c, t_start)
    L = table.total
    ts = [t_start, table.t_of(L / n), table.t_of(2 * L / n)]
    pts = [c.point(t) for t in ts]
    t_end = t_start + c.period
    best = None
    while True:
        k = len(pts)
        direction = pts[-1] - pts[-2]
        t_next = _forward_intersection(c, pts[-3], direction, ts[-1], t_end, 64)
        if t_next is None:
            if best is not None:
                break
            raise IntersectionNotFound("walk left the forward arc without closing")
        if abs(t_next - t_end) <= 1e-9 * c.period:
            # the walk landed back on P_1: the on-curve loop is already closed
            verts = np.array(pts)
            return _result(c, table, verts, np.array(ts), n, Termination.CLOSED_EXACTLY, k, None)
        # closures of very short chains are transients; start halfway round
        if k >= max(3, n // 2):
            feasible = None
            try:
                closure = close_open_chain(np.array(pts), tol)
                feasible = closure.case != ClosureCase.INFEASIBLE
            except NonConvexIntermediate:
                feasible = False
            except GeometryError:
                # far-off closure that lost precision: no verdict either way
                pass
            if feasible:
                best = (k, closure)
            elif feasible is False and best is not None:
                break
        ts.append(t_next)
        pts.append(c.point(t_next))
    k, closure = best
    P = _pick_closure(c, closure.polygons, table)
    verts = np.array(P.vertices)
    return _result(c, table, verts, np.array(ts[:k]), n, Termination.CLOSURE_CASE2, k, closure.case.value)


def _pick_closure(c: ConvexCurve, polygons, table):
    """Among two closures, keep the one whose off-curve vertices hug the curve."""
    if len(polygons) == 1:
        return polygons[0]
    dense = c.points(np.linspace(table.t0, table.t0 + c.period, 4097)[:-1])

    def dev(P):
        tail = P.vertices[-2:]
        return max(float(np.min(np.linalg.norm(dense - q, axis=1))) for q in tail)

    return min(polygons, key=dev)


def _result(c, table, verts, params, n, how, on_curve, case) -> ApproxResult:
    lengths = [table.s(params[i + 1]) - table.s(params[i]) for i in range(len(params) - 1)]
    if how == Termination.CLOSED_EXACTLY:
        lengths.append(table.total - table.s(params[-1]))
    return ApproxResult(verts, len(verts), n, lengths, how, params, on_curve, case)
