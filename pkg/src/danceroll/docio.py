"""JSON document schemas for polygons.

Three kinds of document:

    {"kind": "spherical", "rho": 3, "vertices": [[x,y,z], ...], "closed": true}
    {"kind": "dancing-pair", "A": [[...], ...], "b": [[...], ...], "closed": true}
    {"kind": "horizontal", "A": [[...], ...], "b": [[...], ...], "closed": true}

with homogeneous coordinates for the planar kinds; horizontal documents
carry the exact lifted (A, b) representatives per vertex.  An optional
"metadata" object (tolerance, seed, rho) is preserved on round-trips.
"""

import json
import warnings

import numpy as np

from .dancing import DancingPair, HorizontalPolygon, QDanPoint
from .rolling import SphericalPolygon

QUAT_NORM_WARN = 1e-6


class DocumentError(ValueError):
    pass


def _vec_list(rows):
    return [[float(c) for c in row] for row in rows]


def polygon_to_doc(poly, metadata=None):
    doc = {"kind": "spherical", "rho": poly.rho,
           "vertices": _vec_list(poly.vertices), "closed": poly.closed}
    if metadata:
        doc["metadata"] = metadata
    return doc


def pair_to_doc(pair, metadata=None):
    doc = {"kind": "dancing-pair", "A": _vec_list(pair.A),
           "b": _vec_list(pair.b), "closed": pair.closed}
    if metadata:
        doc["metadata"] = metadata
    return doc


def horizontal_to_doc(poly, metadata=None):
    doc = {"kind": "horizontal",
           "A": _vec_list(p.A for p in poly.points),
           "b": _vec_list(p.b for p in poly.points),
           "closed": poly.closed}
    if metadata:
        doc["metadata"] = metadata
    return doc


def _require(cond, msg):
    if not cond:
        raise DocumentError(msg)


def _check_rows(rows, name):
    _require(isinstance(rows, list) and len(rows) >= 1, "%s must be a nonempty list" % name)
    for row in rows:
        _require(isinstance(row, list) and len(row) == 3
                 and all(isinstance(c, (int, float)) for c in row),
                 "%s entries must be numeric 3-vectors" % name)


def doc_to_polygon(doc):
    _require(doc.get("kind") == "spherical", "expected a spherical document")
    _check_rows(doc["vertices"], "vertices")
    return SphericalPolygon([np.array(v, dtype=float) for v in doc["vertices"]],
                            closed=bool(doc.get("closed", True)),
                            rho=float(doc.get("rho", 3.0)))


def doc_to_pair(doc):
    _require(doc.get("kind") == "dancing-pair", "expected a dancing-pair document")
    _check_rows(doc["A"], "A")
    _check_rows(doc["b"], "b")
    _require(len(doc["A"]) == len(doc["b"]), "A and b must have equal length")
    return DancingPair([np.array(a, dtype=float) for a in doc["A"]],
                       [np.array(b, dtype=float) for b in doc["b"]],
                       closed=bool(doc.get("closed", False)))


def doc_to_horizontal(doc):
    _require(doc.get("kind") == "horizontal", "expected a horizontal document")
    _check_rows(doc["A"], "A")
    _check_rows(doc["b"], "b")
    _require(len(doc["A"]) == len(doc["b"]), "A and b must have equal length")
    points = [QDanPoint(np.array(a, dtype=float), np.array(b, dtype=float))
              for a, b in zip(doc["A"], doc["b"])]
    return HorizontalPolygon(points, closed=bool(doc.get("closed", False)))


def load_document(path):
    with open(path) as fh:
        doc = json.load(fh)
    _require(isinstance(doc, dict) and "kind" in doc, "document must carry a kind")
    return doc

def parse_document(doc):
    kind = doc.get("kind")
    if kind == "spherical":
        return doc_to_polygon(doc)
    if kind == "dancing-pair":
        return doc_to_pair(doc)
    if kind == "horizontal":
        return doc_to_horizontal(doc)
    raise DocumentError("unknown document kind %r" % kind)


def dump_document(doc, path=None):
    text = json.dumps(doc, indent=2, sort_keys=True)
    if path is None:
        return text
    with open(path, "w") as fh:
        fh.write(text + "\n")
    return text


def parse_quaternion(text):
    """Parse 's,x,y,z'; normalizes, warning when the input is far from unit."""
    parts = [float(p) for p in str(text).split(",")]
    if len(parts) != 4:
        raise DocumentError("quaternion must be four comma-separated reals s,x,y,z")
    q = np.array(parts, dtype=float)
    n = np.linalg.norm(q)
    if n == 0.0:
        raise DocumentError("zero quaternion")
    if abs(n - 1.0) > QUAT_NORM_WARN:
        warnings.warn("quaternion normalized from |q| = %.9g" % n)
    return q / n
