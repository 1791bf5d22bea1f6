"""Deterministic SVG figures of polygons, normals, evolutes, parallels and
symmetry sets.

Coordinates are written with 9 significant digits and the document has no
timestamps or ids, so identical scenes give identical bytes.  The y axis
points up, as in the usual mathematical convention.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field

import numpy as np

from .adss import Adss, NodeKind
from .errors import EmptyScene
from .evolute import EdgeKind, EvoluteGraph, NodeStatus

MARGIN = 0.05
WIDTH_PX = 800

STYLES = {
    "polygon": {"stroke": "#000000", "fill": "none", "dash": None},
    "normals": {"stroke": "#888888", "fill": "none", "dash": "2 2"},
    "evolute": {"stroke": "#1f4e9c", "fill": "none", "dash": None},
    "parallel": {"stroke": "#6a6a6a", "fill": "none", "dash": None},
    "adss": {"stroke": "#b02020", "fill": "none", "dash": "6 3"},
    "points": {"stroke": "#000000", "fill": "#000000", "dash": None},
}


def fmt(x: float) -> str:
    s = f"{float(x):.9g}"
    return "0" if s in ("-0", "0") else s


@dataclass
class Layer:
    """One drawable group.

    ``paths`` are closed or open polylines, ``rays`` are ``(origin,
    direction)`` pairs clipped to the viewport, ``lines`` are full lines
    given as ``(point, direction)``, and ``markers`` are ``(point, shape,
    filled)`` with ``shape`` ``"circle"`` or ``"square"``.
    """

    kind: str
    paths: list = field(default_factory=list)
    closed: list = field(default_factory=list)
    rays: list = field(default_factory=list)
    lines: list = field(default_factory=list)
    markers: list = field(default_factory=list)
    style: dict | None = None

    def finite_points(self) -> list:
        pts = [p for path in self.paths for p in path]
        pts += [o for o, _ in self.rays]
        pts += [p for p, _, _ in self.markers]
        return pts


@dataclass
class RenderScene:
    layers: list = field(default_factory=list)

    def add(self, layer: Layer) -> RenderScene:
        self.layers.append(layer)
        return self

    @property
    def viewport(self) -> tuple[float, float, float, float]:
        """``(xmin, ymin, xmax, ymax)`` of all finite geometry plus a 5% margin."""
        pts = [np.asarray(p, dtype=float) for L in self.layers for p in L.finite_points()]
        if not pts:
            raise EmptyScene("scene has no finite geometry")
        a = np.array(pts)
        lo, hi = a.min(axis=0), a.max(axis=0)
        span = max(float((hi - lo).max()), 1e-9)
        pad = MARGIN * span
        return float(lo[0] - pad), float(lo[1] - pad), float(hi[0] + pad), float(hi[1] + pad)


def _clip(origin, direction, box, t_min: float) -> tuple | None:
    """Part of ``origin + t direction`` with ``t >= t_min`` inside ``box``."""
    xmin, ymin, xmax, ymax = box
    lo, hi = t_min, math.inf
    for o, d, a, b in ((origin[0], direction[0], xmin, xmax), (origin[1], direction[1], ymin, ymax)):
        if d == 0:
            if not a <= o <= b:
                return None
            continue
        t1, t2 = (a - o) / d, (b - o) / d
        lo, hi = max(lo, min(t1, t2)), min(hi, max(t1, t2))
    if lo >= hi:
        return None
    o, d = np.asarray(origin, float), np.asarray(direction, float)
    return o + lo * d, o + hi * d


def _pt(p) -> str:
    return f"{fmt(p[0])},{fmt(-p[1])}"


def _style_attrs(style: dict, width: float) -> str:
    out = f'stroke="{style["stroke"]}" stroke-width="{fmt(width)}" fill="{style["fill"]}"'
    if style.get("dash"):
        scaled = " ".join(fmt(float(v) * width) for v in style["dash"].split())
        out += f' stroke-dasharray="{scaled}"'
    return out


def render_svg(scene: RenderScene) -> str:
    """SVG 1.1 document for ``scene``.

    Raises
    ------
    EmptyScene
        If the scene has no layers or no finite geometry.
    """
    if not scene.layers:
        raise EmptyScene("scene has no layers")
    box = scene.viewport
    xmin, ymin, xmax, ymax = box
    w, h = xmax - xmin, ymax - ymin
    sw = 0.002 * max(w, h)
    r = 0.006 * max(w, h)
    height_px = max(1, round(WIDTH_PX * h / w))
    out = [
        '<?xml version="1.0" encoding="UTF-8"?>',
        f'<svg xmlns="http://www.w3.org/2000/svg" version="1.1" width="{WIDTH_PX}" '
        f'height="{height_px}" viewBox="{fmt(xmin)} {fmt(-ymax)} {fmt(w)} {fmt(h)}">',
    ]
    for layer in scene.layers:
        style = dict(STYLES.get(layer.kind, STYLES["polygon"]))
        style.update(layer.style or {})
        attrs = _style_attrs(style, sw)
        out.append(f'<g class="{layer.kind}">')
        for k, path in enumerate(layer.paths):
            pts = " ".join(_pt(p) for p in path)
            tag = "polygon" if (k < len(layer.closed) and layer.closed[k]) else "polyline"
            out.append(f'<{tag} points="{pts}" {attrs}/>')
        for origin, direction in layer.rays:
            seg = _clip(origin, direction, box, 0.0)
            if seg is not None:
                out.append(f'<polyline points="{_pt(seg[0])} {_pt(seg[1])}" {attrs}/>')
        for point, direction in layer.lines:
            seg = _clip(point, direction, box, -math.inf)
            if seg is not None:
                out.append(f'<polyline points="{_pt(seg[0])} {_pt(seg[1])}" {attrs}/>')
        for p, shape, filled in layer.markers:
            fill = style["stroke"] if filled else "#ffffff"
            mattrs = f'stroke="{style["stroke"]}" stroke-width="{fmt(sw)}" fill="{fill}"'
            if shape == "square":
                out.append(
                    f'<rect x="{fmt(p[0] - r)}" y="{fmt(-p[1] - r)}" width="{fmt(2 * r)}" '
                    f'height="{fmt(2 * r)}" {mattrs}/>'
                )
            else:
                out.append(f'<circle cx="{fmt(p[0])}" cy="{fmt(-p[1])}" r="{fmt(r)}" {mattrs}/>')
        out.append("</g>")
    out.append("</svg>")
    return "\n".join(out) + "\n"


def polygon_layer(vertices, kind: str = "polygon") -> Layer:
    v = [np.asarray(p, float) for p in vertices]
    return Layer(kind, paths=[v], closed=[True])


def normals_layer(vertices, normals) -> Layer:
    v, n = np.asarray(vertices, float), np.asarray(normals, float)
    return Layer("normals", paths=[[v[i], v[i] + n[i]] for i in range(len(v))], closed=[False] * len(v))


def evolute_layer(graph: EvoluteGraph) -> Layer:
    """Evolute edges with filled markers on cusps and hollow ones elsewhere."""
    layer = Layer("evolute")
    for e in graph.edges:
        if e.kind == EdgeKind.EMPTY:
            continue
        lo, hi = sorted((e.t_prev, e.t_next))
        d = e.orientation
        if e.kind == EdgeKind.SEGMENT:
            layer.paths.append([e.base + lo * d, e.base + hi * d])
            layer.closed.append(False)
        elif e.kind == EdgeKind.COMPLEMENT:
            layer.rays.append((e.base + lo * d, -d))
            layer.rays.append((e.base + hi * d, d))
        else:
            t0 = lo if math.isfinite(lo) else hi
            sign = 1.0 if math.isinf(hi) else -1.0
            layer.rays.append((e.base + t0 * d, sign * d))
    for nd, st in zip(graph.nodes, graph.status):
        if nd.at_infinity:
            continue
        layer.markers.append((nd.point, "circle", st == NodeStatus.CUSP))
    # a point evolute keeps a single marker
    if graph.is_point and layer.markers:
        layer.paths, layer.closed = [], []
        layer.markers = layer.markers[:1]
    return layer


def adss_layer(adss: Adss) -> Layer:
    """ADSS segments; endpoints as round dots, cusps as square dots."""
    layer = Layer("adss")
    for s in adss.segments:
        L, H = s.lambda_range
        if math.isfinite(L) and math.isfinite(H):
            layer.paths.append([s.at(L), s.at(H)])
            layer.closed.append(False)
        elif math.isfinite(L):
            layer.rays.append((s.at(L), s.velocity))
        elif math.isfinite(H):
            layer.rays.append((s.at(H), -s.velocity))
        else:
            layer.lines.append((s.origin, s.velocity))
    for nd in adss.nodes:
        if nd.kind == NodeKind.ENDPOINT:
            layer.markers.append((nd.location, "circle", True))
        elif nd.kind == NodeKind.CUSP:
            layer.markers.append((nd.location, "square", True))
    return layer


def points_layer(points, filled: bool = True) -> Layer:
    return Layer("points", markers=[(np.asarray(p, float), "circle", filled) for p in points])
