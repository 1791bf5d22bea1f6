"""Equal-area polygons from a curvature seed.

Three frame points plus ``n - 5`` interior curvatures determine vertices
``P_1 .. P_{n-2}`` (1-based) by the diagonal rule.  The last two vertices
come from intersecting a hyperbola branch with a line; the intersection
count sorts the seed into one of the closure cases:

``Case0``    the line enters the branch's sector once: one closure
``Case1``    the line is parallel to an asymptote: one closure
``Case2a``   the line crosses the sector along segment AB and ``R > 4``: two
``CaseW``    as above with ``R == 4`` (tangency): one
``Infeasible`` no closing vertex exists
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from enum import Enum

import numpy as np

from .core import (
    HyperbolaBranch,
    Line2,
    det2,
    hyperbola_line_intersection,
    line_intersection,
)
from .errors import FrameDegenerate, GeometryError, NonConvexIntermediate, OutOfRegime
from .polygon import EqualAreaPolygon, regular_mu, regular_vertices

DEFAULT_FRAME = ((0.0, 0.0), (1.0, 0.0), (2.0, 1.0))
CLASS_TOL = 1e-8
CONCURRENT_TOL = 1e-12


class ClosureCase(str, Enum):
    CASE0 = "Case0"
    CASE1 = "Case1"
    CASE2A = "Case2a"
    CASEW = "CaseW"
    INFEASIBLE = "Infeasible"


@dataclass(frozen=True)
class ModuliPoint:
    n: int
    mu_seed: tuple = ()
    frame: tuple = DEFAULT_FRAME

    def __post_init__(self):
        object.__setattr__(self, "mu_seed", tuple(float(m) for m in self.mu_seed))
        object.__setattr__(self, "frame", tuple(tuple(map(float, p)) for p in self.frame))
        if self.n < 5:
            raise GeometryError(f"n must be at least 5, got {self.n}")
        if len(self.mu_seed) != self.n - 5:
            raise GeometryError(f"n={self.n} needs {self.n - 5} seed values, got {len(self.mu_seed)}")
        if len(self.frame) != 3:
            raise FrameDegenerate("frame must have three points")

    def to_dict(self) -> dict:
        return {"n": self.n, "mu_seed": list(self.mu_seed), "frame": [list(p) for p in self.frame]}


def regular_frame(n: int) -> tuple:
    """Three consecutive vertices of the unit-circumradius regular n-gon."""
    return tuple(tuple(p) for p in regular_vertices(n)[:3].tolist())


@dataclass
class ClosureClassification:
    case: ClosureCase
    R: float | None = None
    polygons: list = field(default_factory=list)
    # construction data, kept for diagnostics and rendering
    chain: np.ndarray | None = None
    O: np.ndarray | None = None
    A: np.ndarray | None = None
    B: np.ndarray | None = None

    def to_dict(self) -> dict:
        return {
            "kind": "construct",
            "case": self.case.value,
            "R": self.R,
            "polygons": [p.to_dict() for p in self.polygons],
        }


def build_chain(m: ModuliPoint) -> np.ndarray:
    """Vertices ``P_1 .. P_{n-2}`` from the frame and the seed."""
    pts = [np.asarray(p, dtype=float) for p in m.frame]
    if not det2(pts[1] - pts[0], pts[2] - pts[1]) > 0:
        raise FrameDegenerate("frame must be non-collinear and positively oriented")
    for k, mu in enumerate(m.mu_seed):
        if not mu < 2.0:
            raise NonConvexIntermediate(f"seed value {mu} at position {k} is not < 2")
        # 1-based index i = k + 2: P_{i+2} = P_{i-1} + (3 - mu) (P_{i+1} - P_i)
        pts.append(pts[-3] + (3.0 - mu) * (pts[-1] - pts[-2]))
    chain = np.array(pts)
    # the closing chord P_{n-2} -> P_1 stands in for the two missing edges
    e = np.diff(np.vstack([chain, chain[:1]]), axis=0)
    e_next = np.roll(e, -1, axis=0)
    cross = e[:, 0] * e_next[:, 1] - e[:, 1] * e_next[:, 0]
    dot = np.einsum("ij,ij->i", e, e_next)
    if np.any(cross[:-2] <= 0) or np.arctan2(cross, dot).sum() > 2 * math.pi + 1e-9:
        raise NonConvexIntermediate("chain winds past a full turn before closing")
    return chain


def _closure_geometry(chain: np.ndarray):
    n = len(chain) + 2
    P = lambda i: chain[i - 1]  # noqa: E731  (1-based access)
    r1 = Line2.through(P(n - 2), P(1))
    r2 = Line2(P(n - 4), P(n - 2) - P(n - 3))
    r3 = Line2(P(3), P(2) - P(1))
    h = HyperbolaBranch(r1, r2, P(n - 3), same_branch=False)
    return r1, r2, r3, h


def _geometric_case(chain: np.ndarray, class_tol: float):
    """Case from the position of A and B relative to the branch's sector."""
    r1, r2, r3, h = _closure_geometry(chain)
    O = line_intersection(r1, r2)
    if O is None:
        raise NonConvexIntermediate("closing asymptotes are parallel")
    A = line_intersection(r1, r3)
    B = line_intersection(r2, r3)
    if B is None:
        return ClosureCase.CASE1, None, O, A, None
    frame_area = 0.5 * det2(chain[1] - chain[0], chain[2] - chain[1])
    R = 0.5 * abs(det2(A - O, B - O)) / frame_area if A is not None else math.inf
    scale = float(np.abs(chain).max()) + 1.0
    if A is not None and np.linalg.norm(A - O) <= CONCURRENT_TOL * scale:
        # r3 runs through the centre (then A = B = O): the sector test is
        # void, and a line through the centre meets the far branch at most once
        return ClosureCase.CASE0, 0.0, O, A, B
    centre, _c = h.frame()
    u_ref, v_ref = h.coords(h.through, centre)
    # branch h sits in the sector opposite to the one containing P_{n-3}
    a_on = A is not None and h.coords(A, centre)[0] * u_ref < 0
    b_on = h.coords(B, centre)[1] * v_ref < 0
    if a_on and b_on:
        if abs(R - 4.0) <= class_tol * 4.0:
            return ClosureCase.CASEW, R, O, A, B
        return (ClosureCase.CASE2A if R > 4.0 else ClosureCase.INFEASIBLE), R, O, A, B
    if a_on or b_on:
        return ClosureCase.CASE0, R, O, A, B
    return ClosureCase.INFEASIBLE, R, O, A, B


def close_chain(chain: np.ndarray, p_n: np.ndarray) -> np.ndarray:
    """Full vertex loop given ``P_1 .. P_{n-2}`` and the last vertex ``P_n``."""
    n = len(chain) + 2
    P = lambda i: chain[i - 1]  # noqa: E731
    r2 = Line2(P(n - 4), P(n - 2) - P(n - 3))
    through_prev = Line2(P(n - 2), p_n - P(n - 3))
    p_n1 = line_intersection(r2, through_prev)
    if p_n1 is None:
        raise NonConvexIntermediate("cannot place the second-to-last vertex")
    return np.vstack([chain, p_n1, p_n])


def _closing_residual(chain: np.ndarray, p_n: np.ndarray) -> float:
    """Bracket of the last edge against r1; zero for an exact closure."""
    loop = close_chain(chain, p_n)
    last = loop[-1] - loop[-2]
    r1 = chain[0] - chain[-1]
    return det2(last, r1) / (np.linalg.norm(last) * np.linalg.norm(r1))


def _polish(chain: np.ndarray, p_n: np.ndarray, steps: int = 4) -> np.ndarray:
    """Newton refinement of ``P_n`` along r3 against the closing residual."""
    d = chain[1] - chain[0]
    h = 1e-7 * max(1.0, float(np.abs(p_n).max())) / float(np.linalg.norm(d))
    best, best_res = p_n, abs(_closing_residual(chain, p_n))
    t = 0.0
    for _ in range(steps):
        if best_res < 1e-15:
            break
        try:
            f0 = _closing_residual(chain, p_n + t * d)
            df = (_closing_residual(chain, p_n + (t + h) * d)
                  - _closing_residual(chain, p_n + (t - h) * d)) / (2 * h)
        except NonConvexIntermediate:
            break
        if df == 0.0:
            break
        t -= f0 / df
        cand = p_n + t * d
        try:
            res = abs(_closing_residual(chain, cand))
        except NonConvexIntermediate:
            break
        if res < best_res:
            best, best_res = cand, res
    return best


def _closes_convexly(loop: np.ndarray) -> bool:
    e = np.roll(loop, -1, axis=0) - loop
    diag = np.roll(loop, -2, axis=0) - np.roll(loop, 1, axis=0)
    # convex closure <=> every diagonal is longer than, and codirected with, its edge
    return bool(np.all(np.einsum("ij,ij->i", diag, e) > np.einsum("ij,ij->i", e, e)))


def _feasible_closures(chain: np.ndarray, case: ClosureCase, A) -> list[np.ndarray]:
    """Closing loops for the case, ordered by distance of ``P_n`` from ``A``."""
    if case == ClosureCase.INFEASIBLE:
        return []
    _r1, _r2, r3, h = _closure_geometry(chain)
    pts = hyperbola_line_intersection(h, r3)
    if case == ClosureCase.CASEW and len(pts) == 2:
        pts = [0.5 * (pts[0] + pts[1])]
    if A is not None and len(pts) == 2:
        pts.sort(key=lambda p: float(np.linalg.norm(p - A)))
    loops = []
    for p in pts:
        try:
            loop = close_chain(chain, _polish(chain, p))
        except NonConvexIntermediate:
            continue
        if _closes_convexly(loop):
            loops.append(loop)
    return loops


def _classify_chain(chain: np.ndarray, class_tol: float):
    case, R, O, A, B = _geometric_case(chain, class_tol)
    loops = _feasible_closures(chain, case, A)
    if not loops:
        case = ClosureCase.INFEASIBLE
    return ClosureClassification(case, R, [], chain, O, A, B), loops


def close_open_chain(chain, tol: float = 1e-9, class_tol: float = CLASS_TOL) -> ClosureClassification:
    """Close an open convex chain ``P_1 .. P_{m-2}`` with two more vertices.

    The chain must already satisfy the diagonal rule on its interior edges.
    """
    chain = np.asarray(chain, dtype=float)
    if len(chain) < 3:
        raise GeometryError("need at least three chain vertices")
    res, loops = _classify_chain(chain, class_tol)
    res.polygons = [EqualAreaPolygon.from_vertices(loop, tol) for loop in loops]
    return res


def classify_closure(m: ModuliPoint, class_tol: float = CLASS_TOL) -> ClosureClassification:
    """Closure case and ``R`` for a seed.

    Only the closing vertices are computed; a geometric case whose closing
    vertices would give a non-convex loop is reported as ``Infeasible``.
    """
    return _classify_chain(build_chain(m), class_tol)[0]


def construct(m: ModuliPoint, tol: float = 1e-9, class_tol: float = CLASS_TOL) -> ClosureClassification:
    """Build every convex equal-area polygon with the given seed and frame.

    For ``Case2a`` the first polygon is the closure nearer to ``A``.
    """
    return close_open_chain(build_chain(m), tol, class_tol)


def regular_R(n: int) -> float:
    """Closed-form closure ratio of the affinely regular n-gon (n >= 9)."""
    if n < 9:
        raise OutOfRegime(f"closed form holds for n >= 9, got {n}")
    ca = math.cos(4.0 * math.pi / n)
    X = 1.0 / (2.0 * ca)
    Y = 1.0 / math.sqrt(2.0 * (1.0 + ca))
    return (X + Y) ** 2 / (X * Y)


def regular_seed(n: int) -> tuple:
    return (regular_mu(n),) * (n - 5)


def sample_seed(rng: np.random.Generator, n: int, low: float = -1.0, high: float = 3.0) -> tuple:
    """Uniform seed in ``[low, high]`` times the regular curvature of ``n``."""
    r = regular_mu(n)
    return tuple((r * rng.uniform(low, high, size=n - 5)).tolist())


POSITIVE_SPREAD = (0.8, 1.2)


def sample_polygons(n: int, count: int, rng: np.random.Generator, frame=DEFAULT_FRAME,
                    low: float | None = None, high: float | None = None,
                    positive: bool = False, max_tries: int | None = None):
    """Rejection-sample ``count`` polygons from random seeds.

    Seeds are drawn by :func:`sample_seed`.  Every closure of a feasible
    seed is kept, so a ``Case2a`` seed can contribute two polygons.  With
    ``positive`` only polygons whose curvatures are all positive are kept
    and the seed range defaults to a narrow band around the regular
    curvature, since wide seeds almost never close with all ``mu > 0``.
    """
    default = POSITIVE_SPREAD if positive else (-1.0, 3.0)
    low = default[0] if low is None else low
    high = default[1] if high is None else high
    out = []
    tries = 0
    max_tries = max_tries or 200 * count + 1000
    while len(out) < count:
        tries += 1
        if tries > max_tries:
            raise RuntimeError(f"only {len(out)} of {count} polygons after {max_tries} seeds")
        try:
            res = construct(ModuliPoint(n, sample_seed(rng, n, low, high), frame))
        except GeometryError:
            # non-convex chain, or a closure that lost equal-area precision
            continue
        for P in res.polygons:
            if positive and not np.all(P.mu > 0):
                continue
            out.append(P)
            if len(out) == count:
                break
    return out
