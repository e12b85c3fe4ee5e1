"""Shape JSON, point CSV, stats CSV and SVG output."""
from __future__ import annotations

import csv
import json
import math
from importlib import resources
from pathlib import Path

import jsonschema
import numpy as np

from .curves import Arc, Segment
from .geometry import CoWedge, Disc, Halfplane, PolygonWithHoles, Wedge


def shape_schema() -> dict:
    return json.loads(resources.files("rcp").joinpath("schemas/shape.schema.json").read_text())


def shape_from_dict(spec: dict):
    jsonschema.validate(spec, shape_schema())
    kind = spec["type"]
    if kind in ("wedge", "cowedge"):
        cls = Wedge if kind == "wedge" else CoWedge
        apex = tuple(spec.get("apex", (0.0, 0.0)))
        if "theta" in spec:
            return cls.from_angle(spec["theta"], spec.get("rotation", 0.0), apex)
        return cls(apex, tuple(spec["dir1"]), tuple(spec["dir2"]))
    if kind == "halfplane":
        return Halfplane(tuple(spec.get("origin", (0.0, 0.0))), tuple(spec["direction"]))
    if kind == "disc":
        return Disc(tuple(spec.get("center", (0.0, 0.0))), float(spec["radius"]))
    return PolygonWithHoles.normalized([tuple(p) for p in spec["outer"]],
                                       [[tuple(p) for p in h] for h in spec.get("holes", [])])


def shape_to_dict(shape) -> dict:
    if isinstance(shape, (Wedge, CoWedge)):
        return {"type": "wedge" if isinstance(shape, Wedge) else "cowedge",
                "apex": list(shape.apex), "dir1": list(shape.dir1), "dir2": list(shape.dir2)}
    if isinstance(shape, Halfplane):
        return {"type": "halfplane", "origin": list(shape.origin), "direction": list(shape.direction)}
    if isinstance(shape, Disc):
        return {"type": "disc", "center": list(shape.center), "radius": shape.radius}
    if isinstance(shape, PolygonWithHoles):
        return {"type": "polygon", "outer": [list(p) for p in shape.outer],
                "holes": [[list(p) for p in h] for h in shape.holes]}
    raise TypeError(f"cannot serialize {type(shape).__name__}")


def load_shape(path):
    with open(path) as fh:
        return shape_from_dict(json.load(fh))


def save_shape(shape, path) -> None:
    with open(path, "w") as fh:
        json.dump(shape_to_dict(shape), fh, indent=2)


def load_points(path) -> np.ndarray:
    rows = []
    with open(path, newline="") as fh:
        for k, row in enumerate(csv.reader(fh)):
            if not row or (k == 0 and row[0].strip() == "x"):
                continue
            if len(row) != 2:
                raise ValueError(f"{path}:{k + 1}: expected x,y")
            rows.append((float(row[0]), float(row[1])))
    return np.array(rows, dtype=float).reshape(-1, 2)


def save_points(P, path) -> None:
    # repr round-trips floats exactly, so files are byte-identical per seed
    with open(path, "w") as fh:
        for x, y in np.asarray(P, dtype=float).reshape(-1, 2):
            fh.write(f"{float(x)!r},{float(y)!r}\n")


def write_rows(rows, path) -> None:
    """List of dicts to CSV; columns are the union of keys in first-seen order."""
    cols = []
    for r in rows:
        cols += [k for k in r if k not in cols]
    with open(path, "w", newline="") as fh:
        w = csv.DictWriter(fh, fieldnames=cols)
        w.writeheader()
        w.writerows(rows)


def _polyline(c, steps=24):
    if isinstance(c, Segment):
        return [c.p, c.q]
    if isinstance(c, Arc):
        return [c.point_at(c.start + c.sweep * t / steps) for t in range(steps + 1)]
    return [c[0], c[1]]


def curves_svg(curves, bbox, path, size: int = 800, points=None) -> None:
    (x0, y0), (x1, y1) = bbox
    s = size / max(x1 - x0, y1 - y0, 1e-300)

    def tr(p):
        return (p[0] - x0) * s, size - (p[1] - y0) * s

    out = [f'<svg xmlns="http://www.w3.org/2000/svg" width="{size}" height="{size}">',
           f'<rect width="{size}" height="{size}" fill="white" stroke="black"/>']
    for c in curves:
        pts = " ".join("{:.2f},{:.2f}".format(*tr(p)) for p in _polyline(c))
        out.append(f'<polyline points="{pts}" fill="none" stroke="black" stroke-width="0.6"/>')
    for p in [] if points is None else points:
        x, y = tr(p)
        out.append(f'<circle cx="{x:.2f}" cy="{y:.2f}" r="1.5" fill="red"/>')
    out.append("</svg>")
    Path(path).write_text("\n".join(out))


def series_svg(xs, ys, path, title: str = "", size: int = 480) -> None:
    """Log-log scatter of a count series."""
    lx = [math.log(x) for x in xs]
    ly = [math.log(max(y, 1e-300)) for y in ys]
    (a, b), (c, d) = (min(lx), max(lx)), (min(ly), max(ly))
    sx = (size - 60) / max(b - a, 1e-9)
    sy = (size - 60) / max(d - c, 1e-9)
    out = [f'<svg xmlns="http://www.w3.org/2000/svg" width="{size}" height="{size}">',
           f'<text x="10" y="20" font-size="14">{title}</text>']
    pts = [(30 + (u - a) * sx, size - 30 - (v - c) * sy) for u, v in zip(lx, ly)]
    out.append('<polyline points="{}" fill="none" stroke="blue"/>'.format(
        " ".join(f"{x:.1f},{y:.1f}" for x, y in pts)))
    out += [f'<circle cx="{x:.1f}" cy="{y:.1f}" r="3"/>' for x, y in pts]
    out.append("</svg>")
    Path(path).write_text("\n".join(out))
