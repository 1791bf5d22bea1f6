"""Curvature differences, sextactic edges and the quadratic-moment identity.

``delta_mu[i] = mu[i] - mu[i-1]`` lives at vertex ``i``, between the two
edges that meet there.  Edge ``i`` is sextactic when the differences at
its two ends, ``delta_mu[i]`` and ``delta_mu[i+1]``, do not have the same
strict sign.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .errors import InternalInvariantViolation, TooFewVertices
from .polygon import EqualAreaPolygon

ZERO_REL = 1e-12


def delta_mu(P: EqualAreaPolygon) -> np.ndarray:
    """Cyclic curvature differences ``mu[i] - mu[i-1]``."""
    mu = np.asarray(P.mu, dtype=float)
    return mu - np.roll(mu, 1)


def _snap_zeros(dm: np.ndarray, mu: np.ndarray) -> np.ndarray:
    """Set differences below ``ZERO_REL * max|mu|`` to exact zeros."""
    scale = float(np.max(np.abs(mu))) if len(mu) else 0.0
    out = dm.copy()
    out[np.abs(out) <= ZERO_REL * scale] = 0.0
    return out


def signed_delta_mu(P: EqualAreaPolygon) -> np.ndarray:
    """``delta_mu`` with numerical zeros snapped to ``0.0``."""
    return _snap_zeros(delta_mu(P), np.asarray(P.mu))


@dataclass(frozen=True)
class SextacticReport:
    """Sextactic edges of a polygon.

    Attributes
    ----------
    delta_mu : list of float
        Raw cyclic differences, one per vertex.
    sextactic_edges : list of int
        Edges ``i`` with ``delta_mu[i] * delta_mu[i+1] <= 0`` after zero
        snapping.
    strict_edges : list of int
        The subset where the product is strictly negative.
    """

    delta_mu: list
    sextactic_edges: list
    strict_edges: list

    @property
    def count(self) -> int:
        return len(self.sextactic_edges)

    def to_dict(self) -> dict:
        return {
            "kind": "sextactic",
            "delta_mu": list(self.delta_mu),
            "sextactic_edges": list(self.sextactic_edges),
            "count": self.count,
        }


def sextactic_edges(P: EqualAreaPolygon) -> SextacticReport:
    """Flag every edge where the curvature difference changes sign.

    Parameters
    ----------
    P : EqualAreaPolygon
        A validated polygon with at least six vertices.

    Returns
    -------
    SextacticReport

    Raises
    ------
    TooFewVertices
        If ``P`` has fewer than six vertices.
    InternalInvariantViolation
        If fewer than six edges are flagged, which cannot happen for a
        genuine convex equal-area polygon.
    """
    if P.n < 6:
        raise TooFewVertices(f"sextactic analysis needs n >= 6, got {P.n}")
    raw = delta_mu(P)
    dm = _snap_zeros(raw, np.asarray(P.mu))
    prod = dm * np.roll(dm, -1)
    flagged = np.flatnonzero(prod <= 0).tolist()
    strict = np.flatnonzero(prod < 0).tolist()
    if len(flagged) < 6:
        raise InternalInvariantViolation(
            f"only {len(flagged)} sextactic edges on a validated polygon"
        )
    return SextacticReport([float(x) for x in raw], flagged, strict)


def sign_changes(P: EqualAreaPolygon) -> int:
    """Number of strict sign changes of ``delta_mu`` around the cycle,
    skipping zeros."""
    dm = signed_delta_mu(P)
    s = np.sign(dm[dm != 0])
    if len(s) == 0:
        return 0
    return int(np.count_nonzero(s != np.roll(s, -1)))


def eval_quadratic(q, pts: np.ndarray) -> np.ndarray:
    """``a x^2 + b x y + c y^2 + d x + e y + f`` at each point."""
    a, b, c, d, e, f = (float(x) for x in q)
    x, y = pts[:, 0], pts[:, 1]
    return a * x * x + b * x * y + c * y * y + d * x + e * y + f


def quadratic_moment(P: EqualAreaPolygon, q) -> float:
    """``sum_i delta_mu[i] * q(P_i)`` for a quadratic ``q``.

    Vanishes on every convex equal-area polygon.

    Parameters
    ----------
    P : EqualAreaPolygon
    q : sequence of six floats
        Coefficients ``(a, b, c, d, e, f)`` of
        ``a x^2 + b x y + c y^2 + d x + e y + f``.
    """
    return float(np.dot(delta_mu(P), eval_quadratic(q, P.vertices)))


def quadratic_moment_scale(P: EqualAreaPolygon, q) -> float:
    """Natural magnitude ``sum_i |delta_mu[i]| (1 + |q(P_i)|)`` for relative
    comparisons of :func:`quadratic_moment`."""
    return float(np.dot(np.abs(delta_mu(P)), 1.0 + np.abs(eval_quadratic(q, P.vertices))))


QUADRATIC_BASIS = (
    (0, 0, 0, 0, 0, 1),
    (0, 0, 0, 1, 0, 0),
    (0, 0, 0, 0, 1, 0),
    (1, 0, 0, 0, 0, 0),
    (0, 1, 0, 0, 0, 0),
    (0, 0, 1, 0, 0, 0),
)
