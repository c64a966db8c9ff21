"""Independent checks on a finite tiling patch.

Nothing here looks at how a patch was built: tiles are treated as bare
polygons.  Overlap and coverage use shapely; vertex/edge incidences use a
k-d tree over vertices and edge midpoints.
"""
from __future__ import annotations

import math
from collections import Counter
from dataclasses import asdict, dataclass, field

import numpy as np
import shapely
from scipy.sparse import coo_matrix
from scipy.sparse.csgraph import connected_components
from scipy.spatial import cKDTree

from .construction import TilingPatch
from .geometry import (
    congruence_signature,
    is_simple,
    is_strictly_convex,
    normality_radii,
    polygon_area,
    polygon_diameter,
)


class ValidationError(ValueError):
    pass


class OverlapError(ValidationError):
    def __init__(self, tile_a, tile_b, area):
        super().__init__(f"tiles {tile_a} and {tile_b} overlap with area {area:.3e}")
        self.tile_ids = (tile_a, tile_b)
        self.area = area


class GapError(ValidationError):
    def __init__(self, witness, message="coverage gap"):
        super().__init__(f"{message} near ({witness[0]:.9g}, {witness[1]:.9g})")
        self.witness = (float(witness[0]), float(witness[1]))


@dataclass(frozen=True)
class VertexIncidence:
    location: tuple
    tiles_with_vertex: tuple
    edges_containing_interior: tuple


@dataclass
class VerificationReport:
    valid: bool
    error: str | None = None
    core_radius: float = 0.0
    tile_count: int = 0
    core_tile_ids: list = field(default_factory=list)
    irregular_vertices: list = field(default_factory=list)
    irregular_count: int = 0
    edge_to_edge: bool = False
    area_min: float = math.nan
    area_max: float = math.nan
    all_strictly_convex: bool = False
    vertex_count_histogram: dict = field(default_factory=dict)
    non_hexagon_count: int = 0
    prototile_count: int = 0
    normality: tuple = (math.nan, math.nan)
    per_tile_index: list = field(default_factory=list)
    total_index: int = 0
    constraint_violations: list = field(default_factory=list)
    max_diameter: float = math.nan
    min_area: float = math.nan
    akopyan_bound: float = math.nan
    bound_satisfied: bool = False

    def to_dict(self) -> dict:
        d = asdict(self)
        d["normality"] = {"r_in_min": self.normality[0], "R_out_max": self.normality[1]}
        d["vertex_count_histogram"] = {str(k): v for k, v in sorted(self.vertex_count_histogram.items())}
        return d


def _shapes(patch: TilingPatch):
    return [shapely.Polygon(t.polygon.vertices) for t in patch.tiles]


def validate_patch(patch: TilingPatch) -> float:
    """Check disjointness and coverage; return the certified core radius.

    The core radius is the distance from the patch centre to the outer
    boundary of the covered region, less the largest tile diameter, so every
    tile meeting the core disk has all its neighbours present.
    """
    tol = patch.tolerance
    if not patch.tiles:
        raise ValidationError("patch has no tiles")
    for t in patch.tiles:
        if not is_simple(t.polygon):
            raise ValidationError(f"tile {t.id} is not a simple polygon")

    shapes = _shapes(patch)
    ids = [t.id for t in patch.tiles]
    tree = shapely.STRtree(shapes)
    left, right = tree.query(shapes, predicate="intersects")
    keep = left < right
    left, right = left[keep], right[keep]
    if len(left):
        overlap = shapely.area(shapely.intersection(np.take(shapes, left), np.take(shapes, right)))
        bad = np.flatnonzero(overlap > tol.eps_area)
        if len(bad):
            i = bad[np.argmax(overlap[bad])]
            raise OverlapError(ids[left[i]], ids[right[i]], float(overlap[i]))

    # a tiny dilation closes round-off cracks between tiles sharing an edge
    grow = 10 * tol.eps_on_segment
    union = shapely.union_all(shapely.buffer(shapes, grow, join_style="mitre"))
    center = shapely.Point(*patch.center)
    parts = list(getattr(union, "geoms", [union]))
    host = next((g for g in parts if g.covers(center)), None)
    if host is None:
        raise GapError(patch.center, "patch centre is not covered")
    for ring in host.interiors:
        hole = shapely.Polygon(ring)
        if hole.area > tol.eps_area:
            pt = hole.representative_point()
            raise GapError((pt.x, pt.y))

    reach = host.exterior.distance(center) - grow
    d_max = max(polygon_diameter(t.polygon) for t in patch.tiles)
    core = reach - d_max
    if core <= 0:
        raise ValidationError(f"patch too small: covered radius {reach:.6g} below tile diameter {d_max:.6g}")
    return float(core)


def _all_incidences(patch: TilingPatch) -> list[VertexIncidence]:
    tol = patch.tolerance
    verts, owners = [], []
    a_pts, b_pts, edge_owner, edge_index = [], [], [], []
    for t in patch.tiles:
        pts = t.polygon.vertices
        verts.append(pts)
        owners.extend([t.id] * len(pts))
        a_pts.append(pts)
        b_pts.append(np.roll(pts, -1, axis=0))
        edge_owner.extend([t.id] * len(pts))
        edge_index.extend(range(len(pts)))
    V = np.vstack(verts)
    owners = np.array(owners)
    A, B = np.vstack(a_pts), np.vstack(b_pts)
    edge_owner = np.array(edge_owner)

    # cluster coincident vertices
    pairs = cKDTree(V).query_pairs(tol.eps_snap, output_type="ndarray")
    n = len(V)
    graph = coo_matrix((np.ones(len(pairs)), (pairs[:, 0], pairs[:, 1])), shape=(n, n))
    n_clusters, labels = connected_components(graph, directed=False)

    mids = (A + B) / 2
    ab = B - A
    length2 = np.sum(ab * ab, axis=1)
    reach = 0.5 * math.sqrt(float(length2.max())) + tol.eps_on_segment
    edge_tree = cKDTree(mids)

    order = np.argsort(labels, kind="stable")
    bounds = np.searchsorted(labels[order], np.arange(n_clusters + 1))
    out = []
    for c in range(n_clusters):
        members = order[bounds[c]:bounds[c + 1]]
        loc = V[members].mean(axis=0)
        holders = set(owners[members].tolist())
        cand = np.array(edge_tree.query_ball_point(loc, reach), dtype=int)
        if len(cand) == 0:
            continue
        cand = cand[~np.isin(edge_owner[cand], list(holders))]
        if len(cand) == 0:
            continue
        t = np.clip(np.sum((loc - A[cand]) * ab[cand], axis=1) / length2[cand], 0.0, 1.0)
        foot = A[cand] + t[:, None] * ab[cand]
        dist = np.hypot(*(foot - loc).T)
        da = np.hypot(*(A[cand] - loc).T)
        db = np.hypot(*(B[cand] - loc).T)
        hit = cand[(dist <= tol.eps_on_segment) & (da > tol.eps_snap) & (db > tol.eps_snap)]
        if len(hit) == 0:
            continue
        edges = tuple(sorted((int(edge_owner[e]), int(edge_index[e])) for e in hit))
        out.append(VertexIncidence(
            location=(float(loc[0]), float(loc[1])),
            tiles_with_vertex=tuple(sorted(holders)),
            edges_containing_interior=edges,
        ))
    out.sort(key=lambda inc: inc.location)
    return out


def _core_tiles(patch: TilingPatch, core_radius: float):
    center = shapely.Point(*patch.center)
    shapes = _shapes(patch)
    dist = shapely.distance(center, shapes)
    return [t for t, d in zip(patch.tiles, dist) if d <= core_radius]


def _within(inc: VertexIncidence, patch: TilingPatch, radius: float) -> bool:
    return math.hypot(inc.location[0] - patch.center[0], inc.location[1] - patch.center[1]) <= radius


def find_irregular_vertices(patch: TilingPatch, core_radius: float | None = None) -> list[VertexIncidence]:
    """Points that are a vertex of one tile and inside an edge of another, in the core."""
    if core_radius is None:
        core_radius = validate_patch(patch)
    return [inc for inc in _all_incidences(patch) if _within(inc, patch, core_radius)]


def _subdivision_counts(incidences) -> Counter:
    counts = Counter()
    for inc in incidences:
        for tile_id, _ in inc.edges_containing_interior:
            counts[tile_id] += 1
    return counts


def tile_index(tile_id: int, patch: TilingPatch, incidences=None) -> int:
    """Edge count after subdividing at irregular vertices, minus 6."""
    if incidences is None:
        incidences = _all_incidences(patch)
    tile = patch.tile(tile_id)
    return len(tile.polygon) + _subdivision_counts(incidences)[tile_id] - 6


def total_index(patch: TilingPatch) -> int:
    core = validate_patch(patch)
    counts = _subdivision_counts(_all_incidences(patch))
    return sum(len(t.polygon) + counts[t.id] - 6 for t in _core_tiles(patch, core))


def akopyan_bound(max_diameter: float, min_area: float) -> float:
    return 2 * math.pi * max_diameter**2 / min_area - 6


def check_akopyan(patch: TilingPatch) -> tuple[float, bool]:
    core = validate_patch(patch)
    tiles = _core_tiles(patch, core)
    d = max(polygon_diameter(t.polygon) for t in tiles)
    a = min(polygon_area(t.polygon) for t in tiles)
    bound = akopyan_bound(d, a)
    return bound, total_index(patch) <= bound + patch.tolerance.eps_area


def full_report(patch: TilingPatch) -> VerificationReport:
    """Run every check; validation failures are raised, not swallowed."""
    tol = patch.tolerance
    core = validate_patch(patch)
    core_tiles = _core_tiles(patch, core)
    incidences = _all_incidences(patch)
    irregular = [inc for inc in incidences if _within(inc, patch, core)]
    counts = _subdivision_counts(incidences)

    areas = [polygon_area(t.polygon) for t in patch.tiles]
    per_index = [len(t.polygon) + counts[t.id] - 6 for t in core_tiles]
    total = sum(per_index)
    violations = [t.id for t, i in zip(core_tiles, per_index) if i < 0]

    classes = {}
    for t in core_tiles:
        classes.setdefault(congruence_signature(t.polygon), t.polygon)
    radii = [normality_radii(p) for p in classes.values()]

    d_max = max(polygon_diameter(t.polygon) for t in core_tiles)
    a_min = min(polygon_area(t.polygon) for t in core_tiles)
    bound = akopyan_bound(d_max, a_min)

    return VerificationReport(
        valid=True,
        core_radius=core,
        tile_count=len(patch.tiles),
        core_tile_ids=[t.id for t in core_tiles],
        irregular_vertices=irregular,
        irregular_count=len(irregular),
        edge_to_edge=not irregular,
        area_min=min(areas),
        area_max=max(areas),
        all_strictly_convex=all(is_strictly_convex(t.polygon, tol) for t in patch.tiles),
        vertex_count_histogram=dict(Counter(len(t.polygon) for t in patch.tiles)),
        non_hexagon_count=sum(1 for t in core_tiles if len(t.polygon) != 6),
        prototile_count=len(classes),
        normality=(min(r for r, _ in radii), max(r for _, r in radii)),
        per_tile_index=per_index,
        total_index=total,
        constraint_violations=violations,
        max_diameter=d_max,
        min_area=a_min,
        akopyan_bound=bound,
        bound_satisfied=total <= bound + tol.eps_area,
    )


def family_claims(report: VerificationReport, family: str, k: int, eps_area: float = 1e-7) -> dict:
    """Claims a constructed patch of the given family must satisfy."""
    unit = abs(report.area_min - 1) <= eps_area and abs(report.area_max - 1) <= eps_area
    claims = {
        "valid": report.valid,
        "strictly_convex": report.all_strictly_convex,
        "akopyan_bound": report.bound_satisfied,
    }
    if family == "gk":
        claims.update(
            irregular_count=report.irregular_count == k,
            all_hexagons=set(report.vertex_count_histogram) == {6},
            unit_area=unit,
            total_index=report.total_index == k,
            prototiles=report.prototile_count == 5,
        )
    elif family == "fk-dissected":
        claims.update(
            edge_to_edge=report.edge_to_edge,
            non_hexagon_count=report.non_hexagon_count == k,
            unit_area=unit,
            prototiles=report.prototile_count == 3,
        )
    elif family == "fk-undissected":
        claims.update(
            edge_to_edge=report.edge_to_edge,
            non_hexagon_count=report.non_hexagon_count == 1,
            total_index=report.total_index == 6 * k - 6,
            min_area=abs(report.min_area - 1) <= eps_area,
            prototiles=report.prototile_count == 3,
        )
    return claims
