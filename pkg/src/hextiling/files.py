"""Tiling files (JSON), verification reports (JSON), tables (CSV) and SVG figures."""
from __future__ import annotations

import csv
import io
import json
import math

import numpy as np

from .analysis import AsymptoticRow
from .construction import FAMILIES, Tile, TilingPatch
from .geometry import Polygon, TolerancePolicy
from .verify import VerificationReport

FORMAT_VERSION = 1


class TilingFileError(ValueError):
    """The file is not a well-formed tiling document."""


def _num(x: float) -> str:
    if not math.isfinite(x):
        raise TilingFileError(f"non-finite coordinate {x!r}")
    return format(float(x), ".17g")


def encode_tiling(patch: TilingPatch) -> str:
    """Canonical JSON text; coordinates carry 17 significant digits."""
    head = {
        "format_version": FORMAT_VERSION,
        "family": patch.family,
        "k": int(patch.k),
        "rings": int(patch.rings),
        "center": None,
        "tolerance": None,
        "tiles": None,
    }
    lines = ["{"]
    for key in ("format_version", "family", "k", "rings"):
        lines.append(f"  {json.dumps(key)}: {json.dumps(head[key])},")
    lines.append(f'  "center": [{_num(patch.center[0])}, {_num(patch.center[1])}],')
    tol = ", ".join(f"{json.dumps(k)}: {_num(v)}" for k, v in patch.tolerance.as_dict().items())
    lines.append(f'  "tolerance": {{{tol}}},')
    lines.append('  "tiles": [')
    rows = []
    for t in patch.tiles:
        verts = ", ".join(f"[{_num(x)}, {_num(y)}]" for x, y in t.polygon.vertices)
        rows.append(f'    {{"id": {int(t.id)}, "kind": {json.dumps(t.kind)}, "vertices": [{verts}]}}')
    lines.append(",\n".join(rows))
    lines.append("  ]")
    lines.append("}")
    return "\n".join(lines) + "\n"


def decode_tiling(text: str) -> TilingPatch:
    try:
        doc = json.loads(text)
    except json.JSONDecodeError as exc:
        raise TilingFileError(f"not valid JSON: {exc}") from exc
    if not isinstance(doc, dict):
        raise TilingFileError("top level must be an object")
    try:
        version = doc["format_version"]
        family = doc["family"]
        k = doc["k"]
        rings = doc["rings"]
        raw_tiles = doc["tiles"]
    except KeyError as exc:
        raise TilingFileError(f"missing field {exc}") from exc
    if version != FORMAT_VERSION:
        raise TilingFileError(f"unsupported format_version {version!r}")
    if family not in FAMILIES:
        raise TilingFileError(f"unknown family {family!r}")
    if not isinstance(k, int) or not isinstance(rings, int):
        raise TilingFileError("k and rings must be integers")
    if not isinstance(raw_tiles, list) or not raw_tiles:
        raise TilingFileError("tile list is empty")
    try:
        tol = TolerancePolicy(**{key: float(v) for key, v in doc.get("tolerance", {}).items()})
        center = np.array(doc.get("center", [0.0, 0.0]), dtype=float)
        tiles = []
        seen = set()
        for raw in raw_tiles:
            tid = raw["id"]
            if not isinstance(tid, int) or tid in seen:
                raise TilingFileError(f"tile id {tid!r} is not a unique integer")
            seen.add(tid)
            tiles.append(Tile(tid, str(raw["kind"]), Polygon(np.array(raw["vertices"], dtype=float))))
    except (KeyError, TypeError, ValueError) as exc:
        raise TilingFileError(f"bad tile data: {exc}") from exc
    if center.shape != (2,):
        raise TilingFileError("center must be an [x, y] pair")
    return TilingPatch(family=family, k=k, rings=rings, tiles=tuple(tiles), center=center, tolerance=tol)


def write_tiling(patch: TilingPatch, path) -> None:
    with open(path, "w", encoding="utf-8") as fh:
        fh.write(encode_tiling(patch))


def read_tiling(path) -> TilingPatch:
    with open(path, encoding="utf-8") as fh:
        return decode_tiling(fh.read())


def _jsonable(value):
    if isinstance(value, float) and not math.isfinite(value):
        return None
    if isinstance(value, dict):
        return {k: _jsonable(v) for k, v in value.items()}
    if isinstance(value, (list, tuple)):
        return [_jsonable(v) for v in value]
    return value


def encode_report(report: VerificationReport, claims: dict | None = None) -> str:
    doc = report.to_dict()
    if claims is not None:
        doc["claims"] = claims
    return json.dumps(_jsonable(doc), indent=2, sort_keys=True) + "\n"


CSV_COLUMNS = ("k", "r_k", "D_k", "total_index", "bound", "ratio")


def encode_table(rows: list[AsymptoticRow]) -> str:
    buf = io.StringIO()
    writer = csv.writer(buf, lineterminator="\n")
    writer.writerow(CSV_COLUMNS)
    for row in rows:
        writer.writerow([row.k, repr(row.r_k), repr(row.D_k), row.total_index, repr(row.bound), repr(row.ratio)])
    return buf.getvalue()


_FILL = {
    "central-hexagon": "#f4a259",
    "apex-hexagon": "#8cb369",
    "ray-hexagon": "#5b8e7d",
    "glued-hexagon": "#f4e285",
    "hexagon": "#e8eef2",
    "central-polygon": "#bc4b51",
    "heptagon": "#bc4b51",
    "octagon": "#bc4b51",
}


def render_svg(patch: TilingPatch, irregular_points=(), width: float = 800.0) -> str:
    """SVG 1.1 drawing: one path per tile plus one circle per given point."""
    pts = np.vstack([t.polygon.vertices for t in patch.tiles])
    lo, hi = pts.min(axis=0), pts.max(axis=0)
    span = float(max(hi - lo))
    pad = 0.02 * span
    scale = width / (span + 2 * pad)
    height = (hi[1] - lo[1] + 2 * pad) * scale

    def xy(p):
        # flip y so the picture keeps the mathematical orientation
        return f"{(p[0] - lo[0] + pad) * scale:.4f},{(hi[1] - p[1] + pad) * scale:.4f}"

    out = [
        '<?xml version="1.0" encoding="UTF-8"?>',
        f'<svg xmlns="http://www.w3.org/2000/svg" version="1.1" width="{width:.4f}" height="{height:.4f}" '
        f'viewBox="0 0 {width:.4f} {height:.4f}">',
        f"<title>{patch.family} k={patch.k} rings={patch.rings}</title>",
        '<g stroke="#222222" stroke-width="0.8" stroke-linejoin="round">',
    ]
    for t in patch.tiles:
        d = "M " + " L ".join(xy(p) for p in t.polygon.vertices) + " Z"
        fill = _FILL.get(t.kind, "#ffffff")
        out.append(f'<path id="tile-{t.id}" class="{t.kind}" d="{d}" fill="{fill}"/>')
    out.append("</g>")
    if len(irregular_points):
        out.append('<g fill="#d1495b" stroke="none">')
        r = max(2.0, 0.004 * width)
        for p in irregular_points:
            cx, cy = xy(p).split(",")
            out.append(f'<circle class="irregular" cx="{cx}" cy="{cy}" r="{r:.4f}"/>')
        out.append("</g>")
    out.append("</svg>")
    return "\n".join(out) + "\n"
