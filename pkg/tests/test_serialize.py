import json

import numpy as np
import pytest

from eqarea.adss import compute_adss
from eqarea.curve import approximate, circle
from eqarea.diffgeo import sextactic_edges
from eqarea.evolute import evolute_graph, parallel
from eqarea.isoperimetric import isoperimetric_check
from eqarea.moduli import ModuliPoint, construct, regular_frame, regular_seed
from eqarea.polygon import validate
from eqarea.serialize import dumps, polygon_vertices


def _reports(P):
    return [
        P.to_dict(),
        validate(P.vertices).to_dict(),
        sextactic_edges(P).to_dict(),
        evolute_graph(P).to_dict(),
        parallel(P, 0.7).to_dict(),
        compute_adss(P).to_dict(),
        isoperimetric_check(P).to_dict(),
        construct(ModuliPoint(9, regular_seed(9), regular_frame(9))).to_dict(),
        approximate(circle(), 9).to_dict(),
    ]


def test_round_trip_is_byte_identical(perturbed_hexagon):
    for doc in _reports(perturbed_hexagon):
        text = dumps(doc)
        assert dumps(json.loads(text)) == text
        assert text.endswith("\n")


def test_floats_round_trip_exactly(perturbed_hexagon):
    text = dumps(perturbed_hexagon.to_dict())
    back = np.array(json.loads(text)["vertices"])
    assert np.array_equal(back, perturbed_hexagon.vertices)


def test_numpy_values_and_nan():
    assert json.loads(dumps({"a": np.float64(0.1), "b": np.arange(3)})) == {"a": 0.1, "b": [0, 1, 2]}
    with pytest.raises(ValueError):
        dumps({"x": float("nan")})


def test_polygon_vertices_shapes():
    v = [[0, 0], [1, 0], [1, 1]]
    for doc in (v, {"vertices": v}, {"polygons": [{"vertices": v}]}):
        assert polygon_vertices(doc).shape == (3, 2)
    with pytest.raises((KeyError, ValueError, TypeError)):
        polygon_vertices({"nothing": 1})
