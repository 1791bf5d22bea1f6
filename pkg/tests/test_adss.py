import math

import numpy as np
import pytest

from eqarea.adss import NodeKind, adss_endpoints_vs_evolute_cusps, compute_adss
from eqarea.core import AffineMap2, det2
from eqarea.diffgeo import sign_changes
from eqarea.evolute import evolute_graph
from eqarea.polygon import edges, gen_affinely_regular, normalize_unit_l, normals

from .conftest import samples


def _finite_lams(seg, k=7):
    L, H = seg.lambda_range
    L = L if math.isfinite(L) else (H - 10 if math.isfinite(H) else -10)
    H = H if math.isfinite(H) else L + 10
    return np.linspace(L, H, k)


def test_regular_polygon_has_empty_adss(hexagon):
    A = compute_adss(hexagon)
    assert A.segments == [] and A.nodes == [] and A.branches == []
    assert compute_adss(normalize_unit_l(gen_affinely_regular(11))).segments == []


def test_perturbed_hexagon_structure(perturbed_hexagon):
    A = compute_adss(perturbed_hexagon)
    assert len(A.endpoints) == 6 and len(A.cusps) == 3 and len(A.branches) == 3
    m = adss_endpoints_vs_evolute_cusps(perturbed_hexagon, adss=A)
    assert m.ok and len(m.pairs) == 6


def test_points_are_equidistant():
    # X(lam) lies on edge line i and edge line j of the lam-parallel
    for P in samples(9, 10, True):
        v, nrm = edges(P.vertices), normals(P)
        for s in compute_adss(P).segments:
            i, j = s.edge_pair
            for lam in _finite_lams(s):
                x = s.at(lam)
                for k in (i, j):
                    base = P.vertices[k] + lam * nrm[k]
                    off = det2(x - base, v[k]) / np.linalg.norm(v[k])
                    assert abs(off) <= 1e-9 * (1 + np.abs(x).max())


def test_carrier_parallel_to_velocity():
    P = samples(10, 3, True)[0]
    for s in compute_adss(P).segments:
        lams = _finite_lams(s, 3)
        d = s.at(lams[2]) - s.at(lams[0])
        assert abs(det2(d, s.velocity)) <= 1e-12 * (1 + np.linalg.norm(d) * np.linalg.norm(s.velocity))


@pytest.mark.parametrize("n", [7, 9, 12])
def test_structure_on_positive_samples(n):
    for P in samples(n, 30, True):
        if sign_changes(P) < 6:
            continue
        A = compute_adss(P)
        g = evolute_graph(P)
        m = adss_endpoints_vs_evolute_cusps(P, adss=A, graph=g)
        assert m.ok and m.max_distance <= 1e-8
        assert len(A.branches) >= 3
        for k in A.cusps:
            x = A.nodes[k].location
            assert min(e.distance(x) for e in g.edges) <= 1e-8 * (1 + np.abs(x).max())


def test_node_degrees():
    P = samples(9, 5, True)[1]
    A = compute_adss(P)
    for nd in A.nodes:
        if nd.kind == NodeKind.ENDPOINT:
            assert nd.degree == 1
        else:
            assert nd.degree >= 2


def test_affine_equivariance():
    T = AffineMap2([[1.0, 0.7], [0.0, 1.0]], [0.5, -0.5])
    P = samples(8, 6, True)[2]
    A, B = compute_adss(P), compute_adss(P.transformed(T))
    pa = np.array(sorted(map(tuple, np.round(T([nd.location for nd in A.nodes]), 7))))
    pb = np.array(sorted(map(tuple, np.round([nd.location for nd in B.nodes], 7))))
    assert pa.shape == pb.shape and np.allclose(pa, pb, atol=1e-6)


def test_serializes():
    A = compute_adss(samples(7, 2, True)[0])
    d = A.to_dict()
    assert d["kind"] == "adss" and len(d["segments"]) == len(A.segments)
