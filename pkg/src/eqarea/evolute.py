"""Parallel polygons and the affine evolute.

Both require a normalized polygon (common bracket ``l = 1``) so that the
parallel parameter ``lam`` has its intrinsic scale.

Node ``k`` of the evolute is the intersection of the normal lines at
vertices ``k`` and ``k + 1``; it belongs to edge ``k`` of the polygon.
Evolute edge ``i`` lies on the normal line at vertex ``i`` and joins
nodes ``i - 1`` and ``i``.  Writing a point of that line as
``P_i + t n_i``, node ``k`` sits at ``t = 1 / mu[k]``.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from enum import Enum

import numpy as np

from .diffgeo import signed_delta_mu
from .errors import InternalInvariantViolation, NotNormalized
from .polygon import EqualAreaPolygon, normals

ZERO_MU = 1e-12
MEMBERSHIP_TOL = 1e-9


def require_normalized(P: EqualAreaPolygon) -> None:
    if not P.normalized:
        raise NotNormalized(f"polygon has l = {P.l!r}; normalize to l = 1 first")


@dataclass(frozen=True)
class ParallelPolygon:
    """The ``lam``-parallel polygon ``P_i + lam n_i``.

    Attributes
    ----------
    lam : float
    vertices : ndarray, shape (n, 2)
    edge_factors : ndarray, shape (n,)
        ``1 - lam mu[i]``; parallel edge ``i`` is this multiple of edge ``i``.
    cusp_vertices : list of int
        Vertices where the two adjacent factors have strictly opposite signs.
    """

    lam: float
    vertices: np.ndarray
    edge_factors: np.ndarray
    cusp_vertices: list

    def to_dict(self) -> dict:
        return {
            "kind": "parallel",
            "lambda": self.lam,
            "vertices": self.vertices.tolist(),
            "edge_factors": self.edge_factors.tolist(),
            "cusp_vertices": list(self.cusp_vertices),
        }


def parallel(P: EqualAreaPolygon, lam: float) -> ParallelPolygon:
    """The parallel polygon at parameter ``lam``.

    Raises
    ------
    NotNormalized
        If ``P`` does not have ``l = 1``.
    """
    require_normalized(P)
    lam = float(lam)
    verts = P.vertices + lam * normals(P)
    f = 1.0 - lam * np.asarray(P.mu)
    cusps = np.flatnonzero(np.roll(f, 1) * f < 0).tolist()
    return ParallelPolygon(lam, verts, f, cusps)


class EdgeKind(str, Enum):
    SEGMENT = "Segment"
    COMPLEMENT = "Complement"
    HALF_LINE = "HalfLine"
    # both neighbouring nodes at infinity: the part of the line missing P_i is empty
    EMPTY = "Empty"


class NodeStatus(str, Enum):
    ORDINARY = "ordinary"
    CUSP = "cusp"
    FLAT = "flat"
    INFINITY = "infinity"


@dataclass(frozen=True)
class EvoluteNode:
    """Node ``k``: a finite point, or a point at infinity in ``direction``."""

    index: int
    point: np.ndarray | None
    direction: np.ndarray | None = None

    @property
    def at_infinity(self) -> bool:
        return self.point is None

    def to_dict(self) -> dict:
        if self.at_infinity:
            return {"kind": "infinity", "direction": self.direction.tolist()}
        return {"kind": "point", "point": self.point.tolist()}


@dataclass(frozen=True)
class EvoluteEdge:
    """Edge ``i`` on the normal line ``P_i + t n_i``.

    ``t_prev`` and ``t_next`` are the line parameters of nodes ``i - 1`` and
    ``i`` (``inf`` with the sign of the far side for nodes at infinity).
    """

    vertex_index: int
    kind: EdgeKind
    base: np.ndarray
    orientation: np.ndarray
    t_prev: float
    t_next: float

    def contains_param(self, t: float, tol: float = 0.0) -> bool:
        lo, hi = min(self.t_prev, self.t_next), max(self.t_prev, self.t_next)
        if self.kind == EdgeKind.COMPLEMENT:
            return t <= lo + tol or t >= hi - tol
        if self.kind == EdgeKind.EMPTY:
            return False
        return lo - tol <= t <= hi + tol

    def distance(self, x) -> float:
        """Euclidean distance from ``x`` to this edge's point set."""
        x = np.asarray(x, dtype=float)
        nn = float(np.dot(self.orientation, self.orientation))
        t = float(np.dot(x - self.base, self.orientation)) / nn
        foot = self.base + t * self.orientation
        off = float(np.linalg.norm(x - foot))
        if self.contains_param(t):
            return off
        if self.kind == EdgeKind.EMPTY:
            return math.inf
        finite = [s for s in (self.t_prev, self.t_next) if math.isfinite(s)]
        along = min(abs(t - s) for s in finite) * math.sqrt(nn)
        return math.hypot(off, along)

    def to_dict(self) -> dict:
        def enc(t):
            return t if math.isfinite(t) else ("inf" if t > 0 else "-inf")

        return {
            "vertex": self.vertex_index,
            "kind": self.kind.value,
            "base": self.base.tolist(),
            "orientation": self.orientation.tolist(),
            "t_prev": enc(self.t_prev),
            "t_next": enc(self.t_next),
        }


@dataclass(frozen=True)
class EvoluteGraph:
    """Nodes, oriented edges and cusp classification of the affine evolute.

    ``cusp_nodes`` uses the orientation definition (a node is a cusp when
    it is the head of both adjacent edges or the tail of both).
    ``sextactic_cusp_nodes`` uses the sign of consecutive curvature
    differences; ``disagreements`` lists nodes where the two differ.
    """

    nodes: list
    edges: list
    status: list
    cusp_nodes: list
    sextactic_cusp_nodes: list
    flat_nodes: list
    disagreements: list = field(default_factory=list)

    @property
    def is_point(self) -> bool:
        pts = [nd.point for nd in self.nodes]
        if any(p is None for p in pts):
            return False
        pts = np.array(pts)
        scale = 1.0 + float(np.abs(pts).max())
        return float(np.ptp(pts, axis=0).max()) <= 1e-9 * scale

    def to_dict(self) -> dict:
        return {
            "kind": "evolute",
            "nodes": [nd.to_dict() for nd in self.nodes],
            "edges": [e.to_dict() for e in self.edges],
            "node_status": [s.value for s in self.status],
            "cusp_nodes": list(self.cusp_nodes),
            "flat_nodes": list(self.flat_nodes),
            "disagreements": list(self.disagreements),
        }


def _node_params(mu: np.ndarray) -> np.ndarray:
    with np.errstate(divide="ignore"):
        t = 1.0 / mu
    t[np.abs(mu) <= ZERO_MU] = np.nan
    return t


def _edge(i: int, P: EqualAreaPolygon, nrm: np.ndarray, t: np.ndarray) -> EvoluteEdge:
    n = P.n
    a, b = t[(i - 1) % n], t[i]
    fa, fb = math.isfinite(a), math.isfinite(b)
    if fa and fb:
        kind = EdgeKind.SEGMENT if a * b > 0 else EdgeKind.COMPLEMENT
    elif fa or fb:
        kind = EdgeKind.HALF_LINE
        # the ray runs from the finite node away from P_i (t = 0)
        if not fa:
            a = math.copysign(math.inf, b)
        else:
            b = math.copysign(math.inf, a)
    else:
        kind = EdgeKind.EMPTY
        a, b = -math.inf, math.inf
    return EvoluteEdge(i, kind, P.vertices[i].copy(), nrm[i].copy(), float(a), float(b))


def _is_head(edge: EvoluteEdge, t_node: float, t_other: float) -> bool:
    """Whether the node at ``t_node`` is where the oriented edge ends."""
    forward = t_node > t_other
    return (not forward) if edge.kind == EdgeKind.COMPLEMENT else forward


def evolute_graph(P: EqualAreaPolygon) -> EvoluteGraph:
    """Build the affine evolute of a normalized polygon.

    Raises
    ------
    NotNormalized
        If ``P`` does not have ``l = 1``.
    """
    require_normalized(P)
    n = P.n
    mu = np.asarray(P.mu, dtype=float)
    nrm = normals(P)
    t = _node_params(mu)
    nodes = []
    for k in range(n):
        if math.isfinite(t[k]):
            nodes.append(EvoluteNode(k, P.vertices[k] + t[k] * nrm[k]))
        else:
            d = nrm[k] / np.linalg.norm(nrm[k])
            nodes.append(EvoluteNode(k, None, d))
    edges = [_edge(i, P, nrm, t) for i in range(n)]

    dm = signed_delta_mu(P)
    status, cusps, sext, flat, disagree = [], [], [], [], []
    for k in range(n):
        k1 = (k + 1) % n
        strict = dm[k] * dm[k1] < 0
        if strict:
            sext.append(k)
        if not math.isfinite(t[k]):
            status.append(NodeStatus.INFINITY)
            continue
        if dm[k] == 0 or dm[k1] == 0:
            status.append(NodeStatus.FLAT)
            flat.append(k)
            continue
        e_in, e_out = edges[k], edges[k1]
        head_in = _is_head(e_in, t[k], e_in.t_prev)
        head_out = _is_head(e_out, t[k], e_out.t_next)
        cusp = head_in == head_out
        status.append(NodeStatus.CUSP if cusp else NodeStatus.ORDINARY)
        if cusp:
            cusps.append(k)
        if cusp != strict:
            disagree.append(k)
    return EvoluteGraph(nodes, edges, status, cusps, sext, flat, disagree)


def parallel_cusp_on_evolute(P: EqualAreaPolygon, lam: float,
                             tol: float = MEMBERSHIP_TOL,
                             graph: EvoluteGraph | None = None) -> list:
    """Cusps of the ``lam``-parallel, each checked to lie on its evolute edge.

    ``graph`` may pass a precomputed evolute of ``P`` for sweeps.

    Returns
    -------
    list of (int, ndarray)
        Vertex index and location of every cusp.

    Raises
    ------
    InternalInvariantViolation
        If a cusp lies farther than ``tol`` (relative to its size) from
        evolute edge ``i``.
    """
    par = parallel(P, lam)
    graph = evolute_graph(P) if graph is None else graph
    out = []
    for i in par.cusp_vertices:
        x = par.vertices[i]
        d = graph.edges[i].distance(x)
        if d > tol * (1.0 + float(np.abs(x).max())):
            raise InternalInvariantViolation(
                f"parallel cusp at vertex {i} is {d:.3g} away from evolute edge {i}"
            )
        out.append((i, x))
    return out
