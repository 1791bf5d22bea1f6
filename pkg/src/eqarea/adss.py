"""The affine distance symmetry set (ADSS).

For two edges ``i`` and ``j`` that are not adjacent, the point where the
parallel edges ``i(lam)`` and ``j(lam)`` cross moves affinely in ``lam``:

    X(lam) = P_i + lam n_i + a(lam) v_i = P_j + lam n_j + b(lam) v_j

with ``a`` and ``b`` affine.  The crossing is genuine while ``a`` lies
between ``0`` and ``1 - lam mu[i]`` and ``b`` between ``0`` and
``1 - lam mu[j]``.  Between the collapse values ``1 / mu[i]`` and
``1 / mu[j]`` those are four linear inequalities, so each pair yields
closed ``lam`` intervals, solved exactly.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from enum import Enum

import numpy as np

from .core import Line2, det2
from .evolute import EvoluteGraph, evolute_graph, require_normalized
from .polygon import EqualAreaPolygon, normals

COLLAPSE_TOL = 1e-10
MERGE_TOL = 1e-9
PARALLEL_EDGES_TOL = 1e-12
MATCH_TOL = 1e-8


@dataclass(frozen=True)
class AdssSegment:
    """Points equidistant to edges ``i`` and ``j``.

    Attributes
    ----------
    edge_pair : (int, int)
    lambda_range : (float, float)
        May be infinite on one or both sides when curvatures are mixed.
    endpoints : list
        ``(point, vertex)`` at each finite end, where ``vertex`` names the
        normal line bounding it; ``None`` for an unbounded end.
    origin, velocity : ndarray
        ``X(lam) = origin + lam * velocity``.
    """

    edge_pair: tuple
    lambda_range: tuple
    endpoints: list
    origin: np.ndarray
    velocity: np.ndarray
    a_coef: tuple = field(repr=False, default=(0.0, 0.0))
    b_coef: tuple = field(repr=False, default=(0.0, 0.0))

    def at(self, lam: float) -> np.ndarray:
        return self.origin + lam * self.velocity

    @property
    def carrier(self) -> Line2:
        return Line2(self.origin, self.velocity)

    def to_dict(self) -> dict:
        def enc(x):
            return x if math.isfinite(x) else ("inf" if x > 0 else "-inf")

        return {
            "edge_pair": list(self.edge_pair),
            "lambda_range": [enc(x) for x in self.lambda_range],
            "endpoints": [
                None if e is None else {"point": e[0].tolist(), "normal_at": e[1]}
                for e in self.endpoints
            ],
        }


class NodeKind(str, Enum):
    INTERIOR = "Interior"
    ENDPOINT = "Endpoint"
    CUSP = "Cusp"


@dataclass(frozen=True)
class AdssNode:
    location: np.ndarray
    kind: NodeKind
    incident_segments: list
    lam: float
    vertices: list

    @property
    def degree(self) -> int:
        return len(self.incident_segments)

    def to_dict(self) -> dict:
        return {
            "point": self.location.tolist(),
            "kind": self.kind.value,
            "segments": list(self.incident_segments),
            "lambda": self.lam,
            "normal_at": list(self.vertices),
        }


@dataclass(frozen=True)
class AdssBranch:
    """A maximal chain of segments glued at degree-two nodes.

    ``nodes`` runs along the chain; ``-1`` stands for an unbounded end.
    """

    nodes: list
    segments: list
    closed: bool

    def to_dict(self) -> dict:
        return {"nodes": list(self.nodes), "segments": list(self.segments), "closed": self.closed}


@dataclass(frozen=True)
class Adss:
    segments: list
    nodes: list
    branches: list

    @property
    def endpoints(self) -> list:
        return [k for k, nd in enumerate(self.nodes) if nd.kind == NodeKind.ENDPOINT]

    @property
    def cusps(self) -> list:
        return [k for k, nd in enumerate(self.nodes) if nd.kind == NodeKind.CUSP]

    def to_dict(self) -> dict:
        return {
            "kind": "adss",
            "segments": [s.to_dict() for s in self.segments],
            "nodes": [nd.to_dict() for nd in self.nodes],
            "branches": [b.to_dict() for b in self.branches],
        }


def _solve_linear(c0: float, c1: float, lo: float, hi: float) -> tuple[float, float]:
    """Restrict ``[lo, hi]`` to ``c0 + c1 lam >= 0``."""
    if c1 == 0.0:
        return (lo, hi) if c0 >= 0 else (math.inf, -math.inf)
    root = -c0 / c1
    return (max(lo, root), hi) if c1 > 0 else (lo, min(hi, root))


def _pieces(breaks: list) -> list:
    b = sorted(set(breaks))
    edges = [-math.inf] + b + [math.inf]
    return list(zip(edges[:-1], edges[1:]))


def _sample_inside(lo: float, hi: float) -> float:
    if math.isinf(lo) and math.isinf(hi):
        return 0.0
    if math.isinf(lo):
        return hi - 1.0
    if math.isinf(hi):
        return lo + 1.0
    return 0.5 * (lo + hi)


def _pair_intervals(a: tuple, b: tuple, mu_i: float, mu_j: float) -> list:
    """``lam`` intervals with ``a`` in ``[0, f_i]`` and ``b`` in ``[0, f_j]``."""
    breaks = [1.0 / m for m in (mu_i, mu_j) if m != 0.0]
    out = []
    for lo, hi in _pieces(breaks):
        mid = _sample_inside(lo, hi)
        cons = []
        for (c0, c1), m in ((a, mu_i), (b, mu_j)):
            s = 1.0 if 1.0 - mid * m > 0 else -1.0
            # s * x >= 0 and s * (f - x) >= 0 with f = 1 - lam m
            cons.append((s * c0, s * c1))
            cons.append((s * (1.0 - c0), s * (-m - c1)))
        L, H = lo, hi
        for c0, c1 in cons:
            L, H = _solve_linear(c0, c1, L, H)
            if L > H:
                break
        if L < H:
            out.append([L, H])
    # rejoin pieces that meet at a collapse value
    merged = []
    for iv in out:
        if merged and merged[-1][1] == iv[0]:
            merged[-1][1] = iv[1]
        else:
            merged.append(iv)
    return merged


def _tag(a: float, b: float, f_i: float, f_j: float, i: int, j: int, n: int) -> int:
    res = [abs(a), abs(a - f_i), abs(b), abs(b - f_j)]
    return [i, (i + 1) % n, j, (j + 1) % n][int(np.argmin(res))]


def _segments(P: EqualAreaPolygon) -> list:
    n = P.n
    V, N = P.vertices, normals(P)
    E = np.roll(V, -1, axis=0) - V
    mu = np.asarray(P.mu, dtype=float)
    segs = []
    for i in range(n):
        for j in range(i + 2, n):
            if (i - j) % n < 2:
                continue
            vi, vj = E[i], E[j]
            D = det2(vi, vj)
            if abs(D) <= PARALLEL_EDGES_TOL * np.linalg.norm(vi) * np.linalg.norm(vj):
                continue
            # a v_i - b v_j = r0 + lam r1
            r0, r1 = V[j] - V[i], N[j] - N[i]
            a = (det2(r0, vj) / D, det2(r1, vj) / D)
            b = (det2(r0, vi) / D, det2(r1, vi) / D)
            origin = V[i] + a[0] * vi
            velocity = N[i] + a[1] * vi
            for L, H in _pair_intervals(a, b, mu[i], mu[j]):
                if math.isfinite(L) and math.isfinite(H):
                    # single-lam contacts, e.g. the total collapse of a regular polygon
                    if H - L <= COLLAPSE_TOL * max(1.0, abs(L)):
                        continue
                    if np.linalg.norm((H - L) * velocity) <= MERGE_TOL:
                        continue
                ends = []
                for lam in (L, H):
                    if not math.isfinite(lam):
                        ends.append(None)
                        continue
                    aa, bb = a[0] + a[1] * lam, b[0] + b[1] * lam
                    tag = _tag(aa, bb, 1 - lam * mu[i], 1 - lam * mu[j], i, j, n)
                    ends.append((origin + lam * velocity, tag))
                segs.append(AdssSegment((i, j), (L, H), ends, origin, velocity, a, b))
    return segs


def _parallel_cusp(mu: np.ndarray, k: int, lam: float) -> bool:
    n = len(mu)
    return (1.0 - lam * mu[(k - 1) % n]) * (1.0 - lam * mu[k]) < 0


def _nodes(segs: list, mu: np.ndarray) -> tuple[list, list]:
    pts, owners = [], []
    ends_to_node = {}
    for s_idx, s in enumerate(segs):
        for e_idx, end in enumerate(s.endpoints):
            if end is None:
                continue
            p, tag = end
            lam = s.lambda_range[e_idx]
            for k, q in enumerate(pts):
                if np.linalg.norm(q - p) <= MERGE_TOL:
                    owners[k].append((s_idx, tag, lam))
                    ends_to_node[(s_idx, e_idx)] = k
                    break
            else:
                pts.append(p)
                owners.append([(s_idx, tag, lam)])
                ends_to_node[(s_idx, e_idx)] = len(pts) - 1
    nodes = []
    for p, own in zip(pts, owners):
        inc = [o[0] for o in own]
        tags = sorted({o[1] for o in own})
        lam = float(np.mean([o[2] for o in own]))
        if len(inc) == 1:
            kind = NodeKind.ENDPOINT
        else:
            # the normal line shared by the incident segments
            common = [t for t in tags if all(t == o[1] for o in own)] or tags
            cusp = any(_parallel_cusp(mu, t, lam) for t in common)
            kind = NodeKind.CUSP if cusp else NodeKind.INTERIOR
        nodes.append(AdssNode(p, kind, inc, lam, tags))
    return nodes, ends_to_node


def _branches(segs: list, nodes: list, ends_to_node: dict) -> list:
    def other_end(s_idx, node):
        ends = [ends_to_node.get((s_idx, e), -1) for e in (0, 1)]
        if ends[0] == node:
            return ends[1]
        return ends[0]

    seen = set()
    branches = []

    def walk(start, s_idx):
        chain_nodes, chain_segs = [start], []
        node, s = start, s_idx
        while True:
            seen.add(s)
            chain_segs.append(s)
            nxt = other_end(s, node)
            chain_nodes.append(nxt)
            if nxt == -1 or nodes[nxt].degree != 2 or nxt == start:
                break
            cand = [t for t in nodes[nxt].incident_segments if t != s and t not in seen]
            if not cand:
                break
            node, s = nxt, cand[0]
        closed = chain_nodes[-1] == start and start != -1
        branches.append(AdssBranch(chain_nodes, chain_segs, closed))

    for k, nd in enumerate(nodes):
        if nd.degree != 2:
            for s in nd.incident_segments:
                if s not in seen:
                    walk(k, s)
    # segments unbounded at both ends, or rays hanging off degree-two chains
    for s_idx, s in enumerate(segs):
        if s_idx in seen:
            continue
        ends = [ends_to_node.get((s_idx, e), -1) for e in (0, 1)]
        if -1 in ends:
            walk(-1, s_idx)
    for s_idx in range(len(segs)):
        if s_idx not in seen:
            walk(ends_to_node[(s_idx, 0)], s_idx)
    return branches


def compute_adss(P: EqualAreaPolygon) -> Adss:
    """Segments, classified nodes and branches of the ADSS.

    Parameters
    ----------
    P : EqualAreaPolygon
        Normalized (``l = 1``).

    Raises
    ------
    NotNormalized
    """
    require_normalized(P)
    mu = np.asarray(P.mu, dtype=float)
    segs = _segments(P)
    nodes, ends_to_node = _nodes(segs, mu)
    return Adss(segs, nodes, _branches(segs, nodes, ends_to_node))


@dataclass(frozen=True)
class EndpointMatch:
    pairs: list
    unmatched_endpoints: list
    unmatched_cusps: list
    max_distance: float

    @property
    def ok(self) -> bool:
        return not self.unmatched_endpoints and not self.unmatched_cusps

    def to_dict(self) -> dict:
        return {
            "kind": "adss_match",
            "pairs": [list(p) for p in self.pairs],
            "unmatched_endpoints": list(self.unmatched_endpoints),
            "unmatched_cusps": list(self.unmatched_cusps),
            "max_distance": self.max_distance,
            "ok": self.ok,
        }


def adss_endpoints_vs_evolute_cusps(P: EqualAreaPolygon, tol: float = MATCH_TOL,
                                    adss: Adss | None = None,
                                    graph: EvoluteGraph | None = None) -> EndpointMatch:
    """Pair every ADSS endpoint with an evolute cusp at the same place.

    Each cusp is used at most once; anything left over on either side is
    reported as unmatched.
    """
    adss = compute_adss(P) if adss is None else adss
    graph = evolute_graph(P) if graph is None else graph
    ends = adss.endpoints
    cusps = list(graph.cusp_nodes)
    free = set(cusps)
    pairs, lost, worst = [], [], 0.0
    for e in ends:
        x = adss.nodes[e].location
        best, bd = None, math.inf
        for c in free:
            d = float(np.linalg.norm(graph.nodes[c].point - x))
            if d < bd:
                best, bd = c, d
        if best is not None and bd <= tol:
            pairs.append((e, best))
            free.discard(best)
            worst = max(worst, bd)
        else:
            lost.append(e)
    return EndpointMatch(pairs, lost, sorted(free), worst)
