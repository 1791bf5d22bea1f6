"""Mixed areas and the discrete affine isoperimetric inequality."""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .core import as_points, det2_rows
from .errors import InternalInvariantViolation, NotParallel
from .evolute import require_normalized
from .polygon import EqualAreaPolygon, affine_regular_residual, edges, normals, shoelace_area

PARALLEL_TOL = 1e-9
IDENTITY_TOL = 1e-9
EQUALITY_TOL = 1e-7


def mixed_area(P, Q, tol: float = PARALLEL_TOL) -> float:
    """Mixed area ``1/2 sum [Q_i, P_{i+1} - P_i]`` of edge-wise parallel loops.

    Corresponding edges may point the same or opposite ways; zero-length
    edges are skipped by the parallelism check.

    Raises
    ------
    NotParallel
        If the loops differ in length or some pair of corresponding edges
        is not parallel within ``tol`` (sine of the angle).
    """
    P, Q = as_points(P), as_points(Q)
    if len(P) != len(Q):
        raise NotParallel(f"vertex counts differ: {len(P)} vs {len(Q)}")
    eP, eQ = edges(P), edges(Q)
    nP, nQ = np.linalg.norm(eP, axis=1), np.linalg.norm(eQ, axis=1)
    cross = np.abs(det2_rows(eP, eQ))
    live = (nP > 0) & (nQ > 0)
    bad = live & (cross > tol * nP * nQ)
    if np.any(bad):
        raise NotParallel(f"edges {np.flatnonzero(bad).tolist()} are not parallel")
    return 0.5 * float(np.sum(det2_rows(Q, eP)))


@dataclass(frozen=True)
class IsoperimetricReport:
    """Terms of ``sum mu <= L^2 / (2 A)`` for a normalized polygon.

    Attributes
    ----------
    L : float
        Affine perimeter, equal to ``n`` under ``l = 1``.
    A : float
        Enclosed area.
    sum_mu, bound, gap : float
        ``gap = bound - sum_mu`` with ``bound = L^2 / (2 A)``.
    area_normals, mixed_area_normals : float
        ``A(n)`` and ``A(P, n)`` for the loop of affine normals; they equal
        ``sum_mu / 2`` and ``-L / 2``.
    affine_residual : float
        Relative distance to the nearest affine image of the regular n-gon.
    equality_certified : bool
        The gap vanishes and the polygon is affinely regular.
    """

    L: float
    A: float
    sum_mu: float
    bound: float
    gap: float
    area_normals: float
    mixed_area_normals: float
    affine_residual: float
    equality_certified: bool

    def to_dict(self) -> dict:
        return {
            "kind": "isoperimetric",
            "L": self.L,
            "A": self.A,
            "sum_mu": self.sum_mu,
            "bound": self.bound,
            "gap": self.gap,
            "area_normals": self.area_normals,
            "mixed_area_normals": self.mixed_area_normals,
            "affine_residual": self.affine_residual,
            "equality_certified": self.equality_certified,
        }


def _close(x: float, y: float, tol: float) -> bool:
    return abs(x - y) <= tol * max(1.0, abs(x), abs(y))


def isoperimetric_check(P: EqualAreaPolygon) -> IsoperimetricReport:
    """Evaluate the isoperimetric inequality and its two supporting identities.

    Raises
    ------
    NotNormalized
        If ``P`` does not have ``l = 1``.
    InternalInvariantViolation
        If ``A(n) != sum_mu / 2`` or ``A(P, n) != -L / 2``.
    """
    require_normalized(P)
    n = P.n
    L = float(n)
    A = shoelace_area(P.vertices)
    sum_mu = float(np.sum(P.mu))
    bound = L * L / (2.0 * A)
    gap = bound - sum_mu
    N = normals(P)
    a_nn = mixed_area(N, N)
    a_pn = mixed_area(P.vertices, N)
    if not _close(a_nn, 0.5 * sum_mu, IDENTITY_TOL):
        raise InternalInvariantViolation(f"A(n) = {a_nn!r} but sum(mu)/2 = {0.5 * sum_mu!r}")
    if not _close(a_pn, -0.5 * L, IDENTITY_TOL):
        raise InternalInvariantViolation(f"A(P, n) = {a_pn!r} but -L/2 = {-0.5 * L!r}")
    resid = affine_regular_residual(P)
    certified = abs(gap) <= EQUALITY_TOL * bound and resid <= EQUALITY_TOL
    return IsoperimetricReport(L, A, sum_mu, bound, gap, a_nn, a_pn, resid, certified)
