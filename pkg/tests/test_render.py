import xml.etree.ElementTree as ET

import numpy as np
import pytest

from eqarea.adss import compute_adss
from eqarea.errors import EmptyScene
from eqarea.evolute import evolute_graph
from eqarea.render import (
    Layer,
    RenderScene,
    _clip,
    adss_layer,
    evolute_layer,
    fmt,
    polygon_layer,
    render_svg,
)

SVG = "{http://www.w3.org/2000/svg}"


def test_fmt():
    assert fmt(-0.0) == "0" and fmt(1.0) == "1" and fmt(1 / 3) == "0.333333333"
    assert fmt(-1e-20) == "-1e-20"


def test_clip():
    box = (-1, -1, 1, 1)
    a, b = _clip((0, 0), (1, 0), box, 0.0)
    assert np.allclose(a, (0, 0)) and np.allclose(b, (1, 0))
    a, b = _clip((0, 0.5), (1, 1), box, -np.inf)
    assert np.allclose(a, (-1, -0.5)) and np.allclose(b, (0.5, 1))
    assert _clip((5, 5), (1, 0), box, 0.0) is None
    assert _clip((0, 2), (1, 0), box, -np.inf) is None


def test_empty_scene():
    with pytest.raises(EmptyScene):
        render_svg(RenderScene())
    with pytest.raises(EmptyScene):
        render_svg(RenderScene([Layer("polygon")]))


def test_viewport_margin(hexagon):
    s = RenderScene([polygon_layer(hexagon.vertices)])
    xmin, ymin, xmax, ymax = s.viewport
    lo, hi = hexagon.vertices.min(axis=0), hexagon.vertices.max(axis=0)
    pad = 0.05 * (hi - lo).max()
    assert np.allclose([xmin, ymin, xmax, ymax], [lo[0] - pad, lo[1] - pad, hi[0] + pad, hi[1] + pad])


def test_svg_parses_and_flips_y(hexagon):
    svg = render_svg(RenderScene([polygon_layer(hexagon.vertices)]))
    root = ET.fromstring(svg)
    poly = root.find(f"{SVG}g/{SVG}polygon")
    pts = [tuple(map(float, p.split(","))) for p in poly.get("points").split()]
    assert np.allclose([(x, -y) for x, y in pts], hexagon.vertices, atol=1e-8)


def test_markers(hexagon, perturbed_hexagon):
    layer = evolute_layer(evolute_graph(hexagon))
    assert len(layer.markers) == 1 and layer.paths == []
    g = evolute_graph(perturbed_hexagon)
    ev = evolute_layer(g)
    assert sum(1 for _p, _s, filled in ev.markers if filled) == len(g.cusp_nodes) == 6
    ad = adss_layer(compute_adss(perturbed_hexagon))
    shapes = [s for _p, s, _f in ad.markers]
    assert shapes.count("circle") == 6 and shapes.count("square") == 3


def test_rendering_is_deterministic(perturbed_hexagon):
    def scene():
        P = perturbed_hexagon
        return RenderScene([polygon_layer(P.vertices), evolute_layer(evolute_graph(P)),
                            adss_layer(compute_adss(P))])

    assert render_svg(scene()) == render_svg(scene())
