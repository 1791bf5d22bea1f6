"""JSON input and output for reports and polygons.

Floats are written in Python's shortest round-trip form, so a report
parsed and written again is byte-identical.  Non-finite values never reach
the encoder; reports encode them as the strings ``"inf"`` and ``"-inf"``.
"""

from __future__ import annotations

import json
import sys
from pathlib import Path

import numpy as np


def _default(o):
    if isinstance(o, np.ndarray):
        return o.tolist()
    if isinstance(o, np.generic):
        return o.item()
    raise TypeError(f"cannot serialize {type(o).__name__}")


def dumps(obj) -> str:
    return json.dumps(obj, indent=2, allow_nan=False, default=_default) + "\n"


def read_json(source: str):
    """Parse JSON from a path, or from standard input when ``source`` is ``-``."""
    if source == "-":
        return json.loads(sys.stdin.read())
    return json.loads(Path(source).read_text())


def polygon_vertices(doc) -> np.ndarray:
    """Vertex array from a bare list, a polygon report, or the first polygon
    of a construction report."""
    if isinstance(doc, list):
        return np.asarray(doc, dtype=float)
    if "vertices" in doc:
        return np.asarray(doc["vertices"], dtype=float)
    if doc.get("polygons"):
        return np.asarray(doc["polygons"][0]["vertices"], dtype=float)
    raise ValueError("document holds no polygon vertices")
