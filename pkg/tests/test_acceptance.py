"""Acceptance criteria, one test per criterion (criterion 8 in two parts).

Each test records a PASS/FAIL line that is printed in the terminal summary.
"""

import math
import subprocess
import sys
import time
from contextlib import contextmanager
from pathlib import Path

import numpy as np
import pytest

from eqarea.adss import adss_endpoints_vs_evolute_cusps, compute_adss
from eqarea.curve import approximate, circle, ellipse, superellipse, uniform_affine_sample
from eqarea.diffgeo import QUADRATIC_BASIS, quadratic_moment, quadratic_moment_scale, sextactic_edges, sign_changes
from eqarea.evolute import evolute_graph, parallel_cusp_on_evolute
from eqarea.isoperimetric import isoperimetric_check
from eqarea.moduli import ClosureCase, ModuliPoint, construct, regular_frame, regular_R, regular_seed, sample_polygons
from eqarea.polygon import gen_affinely_regular, normalize_unit_l, regular_vertices

from .conftest import ACCEPTANCE_LINES

GOLDEN = Path(__file__).parent / "golden"
SAMPLE_NS = range(6, 13)
POSITIVE_NS = range(7, 13)

_cache = {}


def general_samples():
    """1000 moduli samples for each n in 6..12."""
    if "general" not in _cache:
        _cache["general"] = {n: sample_polygons(n, 1000, np.random.default_rng(n)) for n in SAMPLE_NS}
    return _cache["general"]


def positive_samples(per_n):
    key = ("positive", per_n)
    if key not in _cache:
        _cache[key] = {n: sample_polygons(n, per_n, np.random.default_rng(100 + n), positive=True)
                       for n in POSITIVE_NS}
    return _cache[key]


@contextmanager
def criterion(label, budget):
    t0 = time.perf_counter()
    detail = {}
    try:
        yield detail
    except BaseException as exc:
        dt = time.perf_counter() - t0
        ACCEPTANCE_LINES.append(f"criterion {label}: FAIL ({dt:.2f} s) {type(exc).__name__}: {exc}".splitlines()[0])
        raise
    dt = time.perf_counter() - t0
    extra = " ".join(f"{k}={v}" for k, v in detail.items())
    if dt >= budget:
        ACCEPTANCE_LINES.append(f"criterion {label}: FAIL runtime {dt:.2f} s >= {budget} s {extra}")
        pytest.fail(f"criterion {label} took {dt:.2f} s (budget {budget} s)")
    ACCEPTANCE_LINES.append(f"criterion {label}: PASS ({dt:.2f} s) {extra}")


def test_criterion_1_regular_curvature():
    with criterion("1 regular curvature", 1.0) as d:
        worst = 0.0
        for n in range(5, 25):
            mu = gen_affinely_regular(n).mu
            worst = max(worst, float(np.abs(mu - (2 - 2 * math.cos(2 * math.pi / n))).max()))
        assert worst <= 1e-10
        assert gen_affinely_regular(6).mu[0] == pytest.approx(1.0, abs=1e-10)
        assert gen_affinely_regular(9).mu[0] == pytest.approx(0.467911, abs=1e-6)
        d["max_err"] = f"{worst:.1e}"


def test_criterion_2_quadratic_moment():
    with criterion("2 quadratic moment", 30.0) as d:
        worst, count = 0.0, 0
        for n, polys in general_samples().items():
            assert len(polys) == 1000
            for P in polys:
                for q in QUADRATIC_BASIS:
                    worst = max(worst, abs(quadratic_moment(P, q)) / quadratic_moment_scale(P, q))
                count += 1
        assert worst <= 1e-9
        d["polygons"] = count
        d["max_rel"] = f"{worst:.1e}"


def test_criterion_3_six_sextactic_edges():
    general_samples()
    with criterion("3 sextactic edges", 10.0) as d:
        violations, least = 0, math.inf
        for polys in general_samples().values():
            for P in polys:
                c = sextactic_edges(P).count
                least = min(least, c)
                violations += c < 6
        assert violations == 0
        d["min_count"] = least


def _lambda_sweep(P, steps=100):
    inv = 1.0 / np.asarray(P.mu)
    return np.linspace(0.5 * inv.min(), 1.5 * inv.max(), steps)


def test_criterion_4_evolute_cusps():
    with criterion("4 evolute cusps", 60.0) as d:
        checked, cusp_hits = 0, 0
        for polys in positive_samples(100).values():
            for P in polys:
                g = evolute_graph(P)
                assert g.cusp_nodes == sextactic_edges(P).strict_edges
                for lam in _lambda_sweep(P):
                    hits = parallel_cusp_on_evolute(P, lam, tol=1e-9, graph=g)
                    cusp_hits += len(hits)
                checked += 1
        d["polygons"] = checked
        d["parallel_cusps"] = cusp_hits


def test_criterion_5_adss_structure():
    with criterion("5 ADSS structure", 120.0) as d:
        pool = [P for polys in positive_samples(100).values() for P in polys if sign_changes(P) >= 6]
        pool = pool[:500]
        assert len(pool) == 500
        worst, least_branches = 0.0, math.inf
        for P in pool:
            A = compute_adss(P)
            g = evolute_graph(P)
            m = adss_endpoints_vs_evolute_cusps(P, tol=1e-8, adss=A, graph=g)
            assert m.ok
            worst = max(worst, m.max_distance)
            for k in A.cusps:
                x = A.nodes[k].location
                assert min(e.distance(x) for e in g.edges) <= 1e-8 * (1 + np.abs(x).max())
            least_branches = min(least_branches, len(A.branches))
        assert least_branches >= 3
        d["samples"] = len(pool)
        d["max_endpoint_dist"] = f"{worst:.1e}"
        d["min_branches"] = least_branches


def test_criterion_6_isoperimetric():
    general_samples()
    with criterion("6 isoperimetric", 10.0) as d:
        least = math.inf
        for polys in general_samples().values():
            for P in polys:
                r = isoperimetric_check(P)
                assert r.gap >= -1e-9 * r.bound
                assert abs(r.area_normals - 0.5 * r.sum_mu) <= 1e-9 * max(1, abs(r.sum_mu))
                assert abs(r.mixed_area_normals + 0.5 * r.L) <= 1e-9 * r.L
                least = min(least, r.gap / r.bound)
        for n in range(5, 25):
            r = isoperimetric_check(normalize_unit_l(gen_affinely_regular(n)))
            assert abs(r.gap) <= 1e-9 * r.bound and r.equality_certified
        h = isoperimetric_check(normalize_unit_l(gen_affinely_regular(6)))
        assert h.L == 6 and h.A == pytest.approx(3, abs=1e-12) and h.sum_mu == pytest.approx(6, abs=1e-12)
        d["min_gap_over_bound"] = f"{least:.1e}"


def test_criterion_7_moduli_closure():
    with criterion("7 moduli closure", 5.0) as d:
        res = construct(ModuliPoint(9, regular_seed(9), regular_frame(9)))
        assert res.case == ClosureCase.CASE2A
        assert abs(res.R - regular_R(9)) <= 1e-6
        match = min(float(np.abs(P.vertices - regular_vertices(9)).max()) for P in res.polygons)
        assert match <= 1e-6
        assert all(regular_R(n) > 4 for n in range(9, 201))
        d["R"] = f"{res.R:.9f}"
        d["match"] = f"{match:.1e}"


def test_criterion_8a_circle_and_ellipse():
    with criterion("8a circle/ellipse", 60.0) as d:
        c = approximate(circle(), 12)
        assert c.m == 12
        err_c = float(np.abs(c.vertices - regular_vertices(12)).max())
        e = approximate(ellipse(2, 1), 12)
        err_e = float(np.abs(e.vertices - c.vertices * [2.0, 1.0]).max())
        assert err_c <= 1e-8 and err_e <= 1e-8
        d["circle_err"] = f"{err_c:.1e}"
        d["ellipse_err"] = f"{err_e:.1e}"


def test_criterion_8b_superellipse_sweep():
    with criterion("8b superellipse sweep", 60.0) as d:
        c = superellipse(4)
        ratio, dev = [], []
        for n in (32, 64, 128):
            r = approximate(c, n)
            U = uniform_affine_sample(c, n)
            k = min(r.m, n)
            ratio.append(abs(r.m / n - 1))
            dev.append(float(np.linalg.norm(r.vertices[:k] - U[:k], axis=1).max()))
        d["m_ratio_err"] = [round(x, 4) for x in ratio]
        d["max_dev"] = [round(x, 4) for x in dev]
        assert ratio[0] > ratio[1] > ratio[2], f"|m/n - 1| = {ratio}, max deviation = {dev}"
        assert dev[0] > dev[1] > dev[2], f"max deviation = {dev}"


def _shell(cmd):
    return subprocess.run(cmd, shell=True, capture_output=True, check=True, cwd=GOLDEN).stdout


def test_criterion_9_cli_determinism():
    with criterion("9 CLI determinism", 5.0):
        exe = f"{sys.executable} -m eqarea.cli"
        golden_json = (GOLDEN / "analyze_hexagon.json").read_bytes()
        golden_svg = (GOLDEN / "scene_hexagon.svg").read_bytes()
        for _ in range(2):
            assert _shell(f"{exe} gen-regular 6 | {exe} analyze -") == golden_json
            assert _shell(f"{exe} render scene_hexagon.json") == golden_svg
