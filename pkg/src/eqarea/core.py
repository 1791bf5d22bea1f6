"""Planar primitives: brackets, lines, affine maps and hyperbola branches.

Points and vectors are plain ``numpy`` arrays of shape ``(2,)``; arrays of
points have shape ``(n, 2)``.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from .errors import DegenerateAsymptotes, DegenerateMap, NonFinite

PARALLEL_TOL = 1e-12
TANGENCY_TOL = 1e-10


def as_point(p) -> np.ndarray:
    a = np.asarray(p, dtype=float).reshape(2)
    if not (math.isfinite(a[0]) and math.isfinite(a[1])):
        raise NonFinite(f"non-finite coordinates: {p!r}")
    return a


def as_points(pts) -> np.ndarray:
    a = np.asarray(pts, dtype=float)
    if a.ndim != 2 or a.shape[1] != 2:
        raise ValueError(f"expected an (n, 2) array of points, got shape {a.shape}")
    if not np.all(np.isfinite(a)):
        raise NonFinite("non-finite coordinates in point array")
    return a


def det2(u, v) -> float:
    """Bracket ``[u, v] = u.x * v.y - u.y * v.x``."""
    return float(u[0] * v[1] - u[1] * v[0])


def det2_rows(u: np.ndarray, v: np.ndarray) -> np.ndarray:
    """Row-wise bracket of two ``(n, 2)`` arrays."""
    return u[..., 0] * v[..., 1] - u[..., 1] * v[..., 0]


@dataclass(frozen=True)
class Line2:
    base: np.ndarray
    dir: np.ndarray

    def __post_init__(self):
        object.__setattr__(self, "base", as_point(self.base))
        object.__setattr__(self, "dir", as_point(self.dir))
        if abs(self.dir[0]) + abs(self.dir[1]) < 1e-300:
            raise ValueError("line direction must be nonzero")

    @classmethod
    def through(cls, p, q) -> Line2:
        p = as_point(p)
        return cls(p, as_point(q) - p)

    def at(self, t: float) -> np.ndarray:
        return self.base + t * self.dir

    def param(self, x) -> float:
        """Parameter of the orthogonal projection of ``x`` onto the line."""
        return float(np.dot(as_point(x) - self.base, self.dir) / np.dot(self.dir, self.dir))

    def distance(self, x) -> float:
        return abs(det2(self.dir, as_point(x) - self.base)) / math.hypot(*self.dir)

    def side(self, x) -> float:
        """Signed bracket of ``x`` relative to the line; positive on the left."""
        return det2(self.dir, as_point(x) - self.base)


def line_intersection(l1: Line2, l2: Line2, tol: float = PARALLEL_TOL):
    """Intersection point of two lines, or ``None`` when they are parallel.

    Lines count as parallel when ``|[d1, d2]| <= tol * |d1| * |d2|``.
    """
    d = det2(l1.dir, l2.dir)
    if abs(d) <= tol * math.hypot(*l1.dir) * math.hypot(*l2.dir):
        return None
    t = det2(l2.base - l1.base, l2.dir) / d
    return l1.at(t)


@dataclass(frozen=True)
class AffineMap2:
    linear: np.ndarray
    translation: np.ndarray = np.zeros(2)

    def __post_init__(self):
        lin = np.asarray(self.linear, dtype=float).reshape(2, 2)
        object.__setattr__(self, "linear", lin)
        object.__setattr__(self, "translation", as_point(self.translation))

    @classmethod
    def identity(cls) -> AffineMap2:
        return cls(np.eye(2), np.zeros(2))

    @classmethod
    def from_coefficients(cls, a, b, c, d, e, f) -> AffineMap2:
        """``(x, y) -> (a x + b y + e, c x + d y + f)``."""
        return cls([[a, b], [c, d]], [e, f])

    @classmethod
    def from_triangles(cls, src, dst) -> AffineMap2:
        """The unique map sending three source points onto three targets."""
        src, dst = as_points(src), as_points(dst)
        m_src = np.column_stack([src[1] - src[0], src[2] - src[0]])
        m_dst = np.column_stack([dst[1] - dst[0], dst[2] - dst[0]])
        if abs(np.linalg.det(m_src)) < 1e-300:
            raise DegenerateMap("source triangle is degenerate")
        lin = m_dst @ np.linalg.inv(m_src)
        return cls(lin, dst[0] - lin @ src[0])

    @property
    def det(self) -> float:
        return float(np.linalg.det(self.linear))

    def __call__(self, pts) -> np.ndarray:
        pts = np.asarray(pts, dtype=float)
        return pts @ self.linear.T + self.translation

    def apply_vector(self, v) -> np.ndarray:
        return np.asarray(v, dtype=float) @ self.linear.T

    def apply_line(self, line: Line2) -> Line2:
        return Line2(self(line.base), self.apply_vector(line.dir))

    def compose(self, other: AffineMap2) -> AffineMap2:
        """``self o other``."""
        return AffineMap2(self.linear @ other.linear, self(other.translation))

    def inverse(self) -> AffineMap2:
        if abs(self.det) < 1e-300:
            raise DegenerateMap("map is not invertible")
        inv = np.linalg.inv(self.linear)
        return AffineMap2(inv, -inv @ self.translation)


@dataclass(frozen=True)
class HyperbolaBranch:
    """One branch of the hyperbola with the given asymptotes through a point.

    With ``same_branch`` true the branch containing ``through`` is meant,
    otherwise the opposite one.
    """

    asym1: Line2
    asym2: Line2
    through: np.ndarray
    same_branch: bool = True

    def __post_init__(self):
        object.__setattr__(self, "through", as_point(self.through))

    def frame(self):
        """Centre ``O`` and the constant ``c`` of ``u * v = c``.

        Coordinates ``(u, v)`` are taken in the basis ``(asym1.dir, asym2.dir)``
        centred at the asymptote intersection.
        """
        centre = line_intersection(self.asym1, self.asym2)
        if centre is None:
            raise DegenerateAsymptotes("hyperbola asymptotes are parallel")
        u, v = self.coords(self.through, centre)
        return centre, u * v

    def coords(self, x, centre) -> tuple[float, float]:
        d1, d2 = self.asym1.dir, self.asym2.dir
        w = as_point(x) - centre
        den = det2(d1, d2)
        return det2(w, d2) / den, det2(d1, w) / den

    def residual(self, x) -> float:
        """``u(x) v(x) - c``; zero exactly on either branch."""
        centre, c = self.frame()
        u, v = self.coords(x, centre)
        return u * v - c

    def contains(self, x) -> bool:
        centre, _ = self.frame()
        u, _v = self.coords(x, centre)
        u0, _ = self.coords(self.through, centre)
        same = (u > 0) == (u0 > 0)
        return same if self.same_branch else not same


def hyperbola_line_intersection(h: HyperbolaBranch, line: Line2) -> list[np.ndarray]:
    """Points of branch ``h`` on ``line``, sorted by the line parameter.

    Solves ``(u0 + t du)(v0 + t dv) = c`` in asymptote coordinates.  A
    discriminant within the tangency tolerance of zero gives a single point.
    """
    centre, c = h.frame()
    if c == 0.0:
        raise DegenerateAsymptotes("through-point lies on an asymptote")
    u0, v0 = h.coords(line.base, centre)
    du, dv = h.coords(line.base + line.dir, centre)
    du, dv = du - u0, dv - v0
    qa = du * dv
    qb = u0 * dv + v0 * du
    qc = u0 * v0 - c
    # line parallel to an asymptote: the quadratic degenerates to a linear equation
    dnorm = math.hypot(du, dv)
    if min(abs(du), abs(dv)) <= PARALLEL_TOL * dnorm:
        ts = [] if qb == 0.0 else [-qc / qb]
    else:
        disc = qb * qb - 4.0 * qa * qc
        if abs(disc) <= TANGENCY_TOL * max(qb * qb, abs(4.0 * qa * qc)):
            ts = [-qb / (2.0 * qa)]
        elif disc < 0:
            ts = []
        else:
            sq = math.sqrt(disc)
            # numerically stable pair of roots
            q = -0.5 * (qb + math.copysign(sq, qb))
            ts = sorted([q / qa, qc / q])
    pts = []
    branch_sign = 1.0 if h.same_branch else -1.0
    u_ref = h.coords(h.through, centre)[0]
    for t in ts:
        u = u0 + t * du
        if u * u_ref * branch_sign > 0:
            pts.append(line.at(t))
    return pts
