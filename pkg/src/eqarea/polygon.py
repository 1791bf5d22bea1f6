"""Convex equal-area polygons.

Vertices are stored 0-based.  Edge ``k`` runs from vertex ``k`` to vertex
``k + 1`` (mod n); it is the edge written ``v_{(k+1)+1/2}`` when the first
vertex is labelled ``P_1``.  Edge quantities (curvatures, parallel factors)
are indexed by edge, vertex quantities (normals, triangle brackets) by
vertex.
"""

from __future__ import annotations

import math
import os
from dataclasses import dataclass, field

import numpy as np

from .core import AffineMap2, as_points, det2_rows
from .errors import (
    DegenerateMap,
    DegenerateScale,
    NotConvex,
    NotEqualArea,
    TooFewVertices,
)

DEFAULT_TOL = 1e-9


def default_tol() -> float:
    """Validation tolerance, overridable through ``EAG_TOL``."""
    env = os.environ.get("EAG_TOL")
    return float(env) if env else DEFAULT_TOL


def edges(vertices: np.ndarray) -> np.ndarray:
    return np.roll(vertices, -1, axis=0) - vertices


def triangle_brackets(vertices: np.ndarray) -> np.ndarray:
    """``[v_in, v_out]`` at every vertex (twice the consecutive-triangle area)."""
    e = edges(vertices)
    return det2_rows(np.roll(e, 1, axis=0), e)


def shoelace_area(vertices: np.ndarray) -> float:
    x, y = vertices[:, 0], vertices[:, 1]
    return 0.5 * float(np.dot(x, np.roll(y, -1)) - np.dot(np.roll(x, -1), y))


def turning_number(vertices: np.ndarray) -> float:
    e = edges(vertices)
    ang = np.arctan2(e[:, 1], e[:, 0])
    turn = np.mod(np.roll(ang, -1) - ang + np.pi, 2 * np.pi) - np.pi
    return float(turn.sum() / (2 * np.pi))


@dataclass(frozen=True)
class ValidationReport:
    is_convex: bool
    is_equal_area: bool
    triangle_areas: list
    max_rel_deviation: float
    l: float

    @property
    def ok(self) -> bool:
        return self.is_convex and self.is_equal_area

    def to_dict(self) -> dict:
        return {
            "kind": "validation",
            "is_convex": self.is_convex,
            "is_equal_area": self.is_equal_area,
            "triangle_areas": list(self.triangle_areas),
            "max_rel_deviation": self.max_rel_deviation,
            "l": self.l,
        }


def validate(vertices, tol: float | None = None) -> ValidationReport:
    """Check strict convexity and equality of all consecutive-triangle areas.

    ``l`` is the mean bracket ``[v_{i-1/2}, v_{i+1/2}]``; the polygon is
    equal-area when every bracket is within ``tol`` (relative) of it.
    """
    tol = default_tol() if tol is None else tol
    v = as_points(vertices)
    if len(v) < 5:
        raise TooFewVertices(f"need at least 5 vertices, got {len(v)}")
    br = triangle_brackets(v)
    mean = float(br.mean())
    convex = bool(np.all(br > 0)) and abs(turning_number(v) - 1.0) < 1e-6
    if mean > 0:
        dev = float(np.max(np.abs(br - mean)) / mean)
    else:
        dev = math.inf
    return ValidationReport(
        is_convex=convex,
        is_equal_area=bool(dev <= tol),
        triangle_areas=[float(a) for a in 0.5 * br],
        max_rel_deviation=dev,
        l=mean,
    )


def _ratios(v: np.ndarray, tol: float) -> np.ndarray:
    e = edges(v)
    diag = np.roll(v, -2, axis=0) - np.roll(v, 1, axis=0)
    ee = np.einsum("ij,ij->i", e, e)
    # [diag_k, e_k] is the difference of neighbouring brackets, so it is
    # measured on the same scale as the equal-area test
    cross = det2_rows(diag, e)
    scale = abs(float(triangle_brackets(v).mean()))
    bad = np.abs(cross) > 2.0 * tol * scale * (1.0 + 1e-9)
    if np.any(bad):
        raise NotEqualArea(f"diagonals not parallel to edges {np.flatnonzero(bad).tolist()}")
    return np.einsum("ij,ij->i", diag, e) / ee


@dataclass(frozen=True, eq=False)
class EqualAreaPolygon:
    """A validated convex equal-area polygon.

    Build with :meth:`from_vertices`; the constructor itself does not
    validate.
    """

    vertices: np.ndarray
    l: float
    mu: np.ndarray
    tol: float = DEFAULT_TOL
    report: ValidationReport | None = field(default=None, repr=False)

    @classmethod
    def from_vertices(cls, vertices, tol: float | None = None) -> EqualAreaPolygon:
        tol = default_tol() if tol is None else tol
        v = as_points(vertices).copy()
        rep = validate(v, tol)
        if not rep.is_convex:
            raise NotConvex("polygon is not strictly convex and positively oriented")
        if not rep.is_equal_area:
            raise NotEqualArea(
                f"triangle areas deviate by {rep.max_rel_deviation:.3g} (tol {tol:.3g})"
            )
        mu = 3.0 - _ratios(v, max(tol, 1e-9))
        v.setflags(write=False)
        mu.setflags(write=False)
        return cls(v, rep.l, mu, tol, rep)

    @property
    def n(self) -> int:
        return len(self.vertices)

    @property
    def normalized(self) -> bool:
        return abs(self.l - 1.0) <= 1e-9

    @property
    def edges(self) -> np.ndarray:
        return edges(self.vertices)

    @property
    def normals(self) -> np.ndarray:
        return normals(self)

    @property
    def area(self) -> float:
        return shoelace_area(self.vertices)

    def transformed(self, T: AffineMap2) -> EqualAreaPolygon:
        if abs(T.det) < 1e-300:
            raise DegenerateMap("map is singular")
        w = T(self.vertices)
        if T.det < 0:
            w = w[::-1]
        return EqualAreaPolygon.from_vertices(w, self.tol)

    def to_dict(self) -> dict:
        return {
            "kind": "polygon",
            "n": self.n,
            "l": self.l,
            "vertices": self.vertices.tolist(),
            "mu": self.mu.tolist(),
        }


def curvatures(P: EqualAreaPolygon) -> np.ndarray:
    """Discrete affine curvature of every edge.

    Edge ``k`` has ``P[k+2] - P[k-1] = (3 - mu[k]) * (P[k+1] - P[k])``.
    """
    return 3.0 - _ratios(P.vertices, max(P.tol, 1e-9))


def normals(P: EqualAreaPolygon) -> np.ndarray:
    """Affine normals ``n_i = P[i-1] + P[i+1] - 2 P[i]``."""
    v = P.vertices
    return np.roll(v, 1, axis=0) + np.roll(v, -1, axis=0) - 2.0 * v


def normalize_unit_l(P: EqualAreaPolygon) -> EqualAreaPolygon:
    """Scale about the vertex centroid so that the common bracket becomes 1."""
    if not P.l > 0:
        raise DegenerateScale(f"l must be positive, got {P.l}")
    c = P.vertices.mean(axis=0)
    v = c + (P.vertices - c) / math.sqrt(P.l)
    return EqualAreaPolygon.from_vertices(v, P.tol)


def regular_vertices(n: int) -> np.ndarray:
    k = np.arange(n)
    a = 2.0 * np.pi * k / n
    return np.column_stack([np.cos(a), np.sin(a)])


def gen_affinely_regular(n: int, T: AffineMap2 | None = None, tol: float | None = None) -> EqualAreaPolygon:
    """Image of the unit-circumradius regular ``n``-gon under ``T``.

    Orientation-reversing maps are followed by a reversal of the vertex
    order so the result stays positively oriented.
    """
    if n < 5:
        raise TooFewVertices(f"need n >= 5, got {n}")
    T = AffineMap2.identity() if T is None else T
    if abs(T.det) <= 1e-12 * max(1.0, float(np.abs(T.linear).max()) ** 2):
        raise DegenerateMap("affine map is singular")
    v = T(regular_vertices(n))
    if T.det < 0:
        v = v[::-1]
    return EqualAreaPolygon.from_vertices(v, tol)


def regular_mu(n: int) -> float:
    return 2.0 - 2.0 * math.cos(2.0 * math.pi / n)


def affine_fit(src: np.ndarray, dst: np.ndarray) -> tuple[AffineMap2, float]:
    """Least-squares affine map ``src -> dst`` and its max vertex residual."""
    A = np.column_stack([src, np.ones(len(src))])
    coef, *_ = np.linalg.lstsq(A, dst, rcond=None)
    T = AffineMap2(coef[:2].T, coef[2])
    return T, float(np.max(np.linalg.norm(T(src) - dst, axis=1)))


def affine_regular_residual(P: EqualAreaPolygon) -> float:
    """Max vertex residual of the best affine image of the regular n-gon,
    relative to the polygon's diameter."""
    _T, res = affine_fit(regular_vertices(P.n), P.vertices)
    span = float(np.ptp(P.vertices, axis=0).max())
    return res / span
