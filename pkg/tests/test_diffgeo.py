import numpy as np
import pytest
from hypothesis import given
from hypothesis import strategies as st

from eqarea.diffgeo import (
    QUADRATIC_BASIS,
    delta_mu,
    quadratic_moment,
    quadratic_moment_scale,
    sextactic_edges,
    sign_changes,
)
from eqarea.errors import TooFewVertices
from eqarea.polygon import gen_affinely_regular

from .conftest import samples

coef = st.floats(-2, 2, allow_nan=False)


def test_regular_polygon_everything_flagged():
    rep = sextactic_edges(gen_affinely_regular(10))
    assert rep.count == 10 and rep.strict_edges == []
    assert sign_changes(gen_affinely_regular(10)) == 0


def test_perturbed_hexagon(perturbed_hexagon):
    P = perturbed_hexagon
    assert np.allclose(sorted(set(np.round(P.mu, 12))), [0.75, 1.2])
    rep = sextactic_edges(P)
    assert rep.strict_edges == list(range(6)) and rep.count == 6
    assert sign_changes(P) == 6


def test_pentagon_rejected():
    with pytest.raises(TooFewVertices):
        sextactic_edges(gen_affinely_regular(5))


def test_delta_mu_sums_to_zero():
    for P in samples(9, 30):
        assert abs(delta_mu(P).sum()) < 1e-12 * (1 + np.abs(P.mu).max())


@pytest.mark.parametrize("n", range(6, 13))
def test_at_least_six_sextactic_edges(n):
    for P in samples(n, 100):
        rep = sextactic_edges(P)
        assert rep.count >= 6
        assert set(rep.strict_edges) <= set(rep.sextactic_edges)


@given(st.tuples(coef, coef, coef, coef, coef, coef), st.integers(0, 49), st.sampled_from([6, 8, 11]))
def test_quadratic_moment_vanishes(q, k, n):
    P = samples(n, 50)[k]
    assert abs(quadratic_moment(P, q)) <= 1e-9 * quadratic_moment_scale(P, q)


def test_moment_does_not_vanish_for_cubics():
    # sanity control: the identity is special to degree two
    hits = 0
    for P in samples(9, 20):
        x = P.vertices[:, 0]
        val = float(np.dot(delta_mu(P), x**3))
        scale = float(np.dot(np.abs(delta_mu(P)), 1 + np.abs(x**3)))
        hits += abs(val) > 1e-6 * scale
    assert hits >= 15


def test_basis_spans_quadratics():
    M = np.array(QUADRATIC_BASIS, dtype=float)
    assert np.linalg.matrix_rank(M) == 6
