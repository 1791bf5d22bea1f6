"""Command-line interface.

Exit codes: 0 success, 1 error, 2 the input polygon failed validation,
64 usage error.  Reports go to standard output as JSON unless ``-o`` is
given.
"""

from __future__ import annotations

import argparse
import sys
from pathlib import Path

import numpy as np

from . import __version__
from .adss import compute_adss
from .core import AffineMap2
from .curve import approximate, circle, ellipse, from_polyline, superellipse
from .diffgeo import sextactic_edges
from .errors import GeometryError, NotConvex, NotEqualArea, TooFewVertices
from .evolute import evolute_graph, parallel
from .isoperimetric import isoperimetric_check
from .moduli import DEFAULT_FRAME, ModuliPoint, construct, regular_frame, sample_polygons
from .polygon import EqualAreaPolygon, gen_affinely_regular, normalize_unit_l, normals, validate
from .render import (
    RenderScene,
    adss_layer,
    evolute_layer,
    normals_layer,
    points_layer,
    polygon_layer,
    render_svg,
)
from .serialize import dumps, polygon_vertices, read_json

EXIT_OK, EXIT_ERROR, EXIT_INVALID, EXIT_USAGE = 0, 1, 2, 64
VALIDATION_ERRORS = (NotConvex, NotEqualArea, TooFewVertices)


class UsageError(Exception):
    pass


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        self.print_usage(sys.stderr)
        raise UsageError(f"{self.prog}: error: {message}")


def _emit(text: str, out: str | None) -> None:
    if out:
        Path(out).write_text(text)
    else:
        sys.stdout.write(text)


def _load_polygon(source: str) -> EqualAreaPolygon:
    return EqualAreaPolygon.from_vertices(polygon_vertices(read_json(source)))


def _load_normalized(source: str) -> EqualAreaPolygon:
    return normalize_unit_l(_load_polygon(source))


# -- subcommands -------------------------------------------------------------

def cmd_gen_regular(a) -> int:
    T = AffineMap2.from_coefficients(*a.affine) if a.affine else None
    _emit(dumps(gen_affinely_regular(a.n, T).to_dict()), a.output)
    return EXIT_OK


def cmd_construct(a) -> int:
    if a.frame is None or a.frame == ["default"]:
        frame = DEFAULT_FRAME
    elif a.frame == ["regular"]:
        frame = regular_frame(a.n)
    else:
        vals = [float(x) for x in a.frame]
        if len(vals) != 6:
            raise UsageError("--frame takes 'regular', 'default' or six numbers")
        frame = tuple(tuple(vals[k:k + 2]) for k in (0, 2, 4))
    res = construct(ModuliPoint(a.n, tuple(a.mu), frame))
    _emit(dumps(res.to_dict()), a.output)
    return EXIT_OK


def cmd_validate(a) -> int:
    rep = validate(polygon_vertices(read_json(a.polygon)))
    _emit(dumps(rep.to_dict()), a.output)
    return EXIT_OK if rep.ok else EXIT_INVALID


def cmd_analyze(a) -> int:
    P = _load_polygon(a.polygon)
    Pn = normalize_unit_l(P)
    iso = isoperimetric_check(Pn)
    doc = {
        "kind": "analyze",
        "n": P.n,
        "l": P.l,
        "vertices": Pn.vertices.tolist(),
        "mu": Pn.mu.tolist(),
    }
    if P.n >= 6:
        sx = sextactic_edges(Pn)
        doc.update(delta_mu=sx.delta_mu, sextactic_edges=sx.sextactic_edges,
                   sextactic_count=sx.count)
    else:
        doc.update(delta_mu=(Pn.mu - np.roll(Pn.mu, 1)).tolist(), sextactic_edges=None,
                   sextactic_count=None)
    iso_doc = iso.to_dict()
    del iso_doc["kind"]
    doc.update(iso_doc)
    _emit(dumps(doc), a.output)
    return EXIT_OK


def cmd_evolute(a) -> int:
    P = _load_normalized(a.polygon)
    doc = evolute_graph(P).to_dict()
    doc["vertices"] = P.vertices.tolist()
    _emit(dumps(doc), a.output)
    return EXIT_OK


def cmd_parallel(a) -> int:
    P = _load_normalized(a.polygon)
    doc = parallel(P, a.lam).to_dict()
    doc["source_vertices"] = P.vertices.tolist()
    _emit(dumps(doc), a.output)
    return EXIT_OK


def cmd_adss(a) -> int:
    P = _load_normalized(a.polygon)
    doc = compute_adss(P).to_dict()
    doc["vertices"] = P.vertices.tolist()
    _emit(dumps(doc), a.output)
    return EXIT_OK


def _curve(spec: list):
    name, args = spec[0], spec[1:]
    try:
        if name == "circle":
            return circle(float(args[0]) if args else 1.0)
        if name == "ellipse":
            return ellipse(float(args[0]), float(args[1]))
        if name == "superellipse":
            return superellipse(float(args[0]) if args else 4.0)
        if name == "polyline":
            return from_polyline(polygon_vertices(read_json(args[0])))
    except (IndexError, ValueError) as exc:
        if isinstance(exc, GeometryError):
            raise
        raise UsageError(f"bad curve arguments {spec!r}") from exc
    raise UsageError(f"unknown curve {name!r}; use circle, ellipse, superellipse or polyline")


def cmd_approx(a) -> int:
    res = approximate(_curve(a.curve), a.n, a.t_start)
    _emit(dumps(res.to_dict()), a.output)
    return EXIT_OK


def cmd_sample(a) -> int:
    rng = np.random.Generator(np.random.Philox(a.seed))
    polys = sample_polygons(a.n, a.count, rng, positive=a.positive)
    doc = {"kind": "samples", "n": a.n, "seed": a.seed,
           "polygons": [P.to_dict() for P in polys]}
    _emit(dumps(doc), a.output)
    return EXIT_OK


def scene_for(doc) -> RenderScene:
    """Figure for any report produced by this CLI."""
    kind = doc.get("kind") if isinstance(doc, dict) else None
    scene = RenderScene()
    if kind in ("evolute", "adss"):
        P = normalize_unit_l(EqualAreaPolygon.from_vertices(np.asarray(doc["vertices"])))
        scene.add(polygon_layer(P.vertices))
        scene.add(evolute_layer(evolute_graph(P)))
        if kind == "adss":
            scene.add(adss_layer(compute_adss(P)))
    elif kind == "parallel":
        scene.add(polygon_layer(doc["source_vertices"]))
        scene.add(polygon_layer(doc["vertices"], kind="parallel"))
        cusps = [doc["vertices"][i] for i in doc["cusp_vertices"]]
        if cusps:
            scene.add(points_layer(cusps))
    elif kind == "construct":
        for p in doc["polygons"]:
            scene.add(polygon_layer(p["vertices"]))
    elif kind == "approx":
        scene.add(polygon_layer(doc["vertices"]))
        scene.add(points_layer(doc["vertices"], filled=False))
    elif kind == "scene":
        P = normalize_unit_l(EqualAreaPolygon.from_vertices(np.asarray(doc["vertices"])))
        layers = doc.get("layers", ["polygon", "normals", "evolute", "adss"])
        for name in layers:
            if name == "polygon":
                scene.add(polygon_layer(P.vertices))
            elif name == "normals":
                scene.add(normals_layer(P.vertices, normals(P)))
            elif name == "evolute":
                scene.add(evolute_layer(evolute_graph(P)))
            elif name == "adss":
                scene.add(adss_layer(compute_adss(P)))
            elif name == "parallel":
                for lam in doc.get("lambdas", []):
                    scene.add(polygon_layer(parallel(P, lam).vertices, kind="parallel"))
            else:
                raise ValueError(f"unknown layer {name!r}")
    else:
        verts = polygon_vertices(doc)
        scene.add(polygon_layer(verts))
    return scene


def cmd_render(a) -> int:
    svg = render_svg(scene_for(read_json(a.report)))
    _emit(svg, a.output)
    return EXIT_OK


# -- parser ------------------------------------------------------------------

def build_parser() -> argparse.ArgumentParser:
    p = _Parser(prog="eqarea", description="Convex equal-area polygons.")
    p.add_argument("--version", action="version", version=f"eqarea {__version__}")
    sub = p.add_subparsers(dest="command", required=True, parser_class=_Parser)

    def out(sp):
        sp.add_argument("-o", "--output", help="write to this file instead of stdout")
        return sp

    sp = out(sub.add_parser("gen-regular", help="affinely regular n-gon"))
    sp.add_argument("n", type=int)
    sp.add_argument("--affine", type=float, nargs=6, metavar=("A", "B", "C", "D", "E", "F"),
                    help="map (x, y) -> (a x + b y + e, c x + d y + f)")
    sp.set_defaults(func=cmd_gen_regular)

    sp = out(sub.add_parser("construct", help="close a polygon from a curvature seed"))
    sp.add_argument("n", type=int)
    sp.add_argument("--mu", type=float, nargs="*", default=[])
    sp.add_argument("--frame", nargs="+", help="'regular', 'default' or x1 y1 x2 y2 x3 y3")
    sp.set_defaults(func=cmd_construct)

    for name, func, text in (
        ("validate", cmd_validate, "check convexity and equal areas"),
        ("analyze", cmd_analyze, "curvatures, sextactic edges and isoperimetric terms"),
        ("evolute", cmd_evolute, "affine evolute"),
        ("adss", cmd_adss, "affine distance symmetry set"),
    ):
        sp = out(sub.add_parser(name, help=text))
        sp.add_argument("polygon", help="polygon JSON file, or - for stdin")
        sp.set_defaults(func=func)

    sp = out(sub.add_parser("parallel", help="lambda-parallel polygon"))
    sp.add_argument("polygon")
    sp.add_argument("--lambda", dest="lam", type=float, required=True)
    sp.set_defaults(func=cmd_parallel)

    sp = out(sub.add_parser("approx", help="equal-area polygon along a convex curve"))
    sp.add_argument("--curve", nargs="+", required=True,
                    help="circle [r] | ellipse a b | superellipse p | polyline FILE")
    sp.add_argument("--n", type=int, required=True)
    sp.add_argument("--t-start", type=float, default=0.0)
    sp.set_defaults(func=cmd_approx)

    sp = out(sub.add_parser("sample", help="random polygons from the moduli space"))
    sp.add_argument("n", type=int)
    sp.add_argument("--count", type=int, default=10)
    sp.add_argument("--seed", type=int, default=0)
    sp.add_argument("--positive", action="store_true", help="keep only all-positive curvature")
    sp.set_defaults(func=cmd_sample)

    sp = out(sub.add_parser("render", help="SVG figure of a report"))
    sp.add_argument("report")
    sp.set_defaults(func=cmd_render)
    return p


def run(argv=None) -> int:
    try:
        args = build_parser().parse_args(argv)
        return args.func(args)
    except UsageError as exc:
        print(exc, file=sys.stderr)
        return EXIT_USAGE
    except SystemExit as exc:
        # --help and --version
        return int(exc.code or 0)
    except VALIDATION_ERRORS as exc:
        print(f"eqarea: invalid polygon: {exc}", file=sys.stderr)
        return EXIT_INVALID
    except (GeometryError, OSError, KeyError, TypeError) as exc:
        print(f"eqarea: error: {exc}", file=sys.stderr)
        return EXIT_ERROR
    except ValueError as exc:
        # json.JSONDecodeError and other malformed input
        print(f"eqarea: error: {exc}", file=sys.stderr)
        return EXIT_ERROR


def main() -> None:
    sys.exit(run())


if __name__ == "__main__":
    main()
