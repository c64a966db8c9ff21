"""Cone patches of the unit-area hexagonal tiling and the assembled families.

Canonical frame: apex ``o`` at the origin, cone bisector along +x.  The lower
boundary ray is ``L1`` and the upper one ``L2``.

The base patch is enumerated in oblique lattice coordinates ``(a, b)``
meaning ``a * e1 + b * e2`` with ``e1``, ``e2`` the vertices of the central
unit hexagon at -30 and +30 degrees.  Hexagon centres are the lattice points
with ``a = b (mod 3)``; the hexagon at ``(a, b)`` has vertices at the six
offsets in ``HEX_OFFSETS``.
"""
from __future__ import annotations

import math
from dataclasses import dataclass, field, replace

import numpy as np

from .geometry import (
    DEFAULT_TOLERANCE,
    Polygon,
    TolerancePolicy,
    is_strictly_convex,
    polygon_area,
    rotation,
    signed_area,
)


class InvalidParameterError(ValueError):
    pass


class InfeasibleModificationError(ValueError):
    pass


# side length (= circumradius) of the unit-area regular hexagon
UNIT_HEX_SIDE = math.sqrt(2.0 / (3.0 * math.sqrt(3.0)))

_E1 = UNIT_HEX_SIDE * np.array([math.cos(-math.pi / 6), math.sin(-math.pi / 6)])
_E2 = UNIT_HEX_SIDE * np.array([math.cos(math.pi / 6), math.sin(math.pi / 6)])

# vertex offsets of a hexagon in oblique coordinates, counterclockwise from 30 deg
HEX_OFFSETS = ((0, 1), (-1, 1), (-1, 0), (0, -1), (1, -1), (1, 0))

FAMILIES = ("gk", "fk-dissected", "fk-undissected")


def _lattice(a, b) -> np.ndarray:
    return a * _E1 + b * _E2


@dataclass(frozen=True)
class ConeSpec:
    alpha: float

    def __post_init__(self):
        if not (0 < self.alpha <= math.pi / 3 + 1e-15):
            raise InvalidParameterError(f"cone angle must lie in (0, pi/3], got {self.alpha!r}")

    @property
    def l1_direction(self) -> np.ndarray:
        return np.array([math.cos(self.alpha / 2), -math.sin(self.alpha / 2)])

    @property
    def l2_direction(self) -> np.ndarray:
        return np.array([math.cos(self.alpha / 2), math.sin(self.alpha / 2)])


@dataclass(frozen=True)
class ConePatch:
    cone: ConeSpec
    apex_triangle: Polygon
    hexagons: tuple
    hexagon_kinds: tuple
    trapezoids_l1: tuple
    trapezoids_l2: tuple
    ray_vertices_l1: np.ndarray = field(repr=False)
    ray_vertices_l2: np.ndarray = field(repr=False)
    rings: int

    def tiles(self):
        """All tiles as ``(kind, polygon)`` pairs."""
        out = [("apex-triangle", self.apex_triangle)]
        out += list(zip(self.hexagon_kinds, self.hexagons))
        out += [("trapezoid-l1", t) for t in self.trapezoids_l1]
        out += [("trapezoid-l2", t) for t in self.trapezoids_l2]
        return out

    def total_area(self) -> float:
        return sum(polygon_area(p) for _, p in self.tiles())


@dataclass(frozen=True)
class ModificationData:
    p1_new: np.ndarray
    q1_new: np.ndarray
    p2_new: np.ndarray
    q2_new: np.ndarray
    v1: np.ndarray
    v2: np.ndarray
    z1: np.ndarray
    z2: np.ndarray
    x1: np.ndarray
    x2: np.ndarray
    pentagon_area: float
    t: float
    t_max: float


@dataclass(frozen=True)
class Tile:
    id: int
    kind: str
    polygon: Polygon


@dataclass(frozen=True)
class TilingPatch:
    family: str
    k: int
    rings: int
    tiles: tuple
    center: np.ndarray = field(default_factory=lambda: np.zeros(2), repr=False)
    tolerance: TolerancePolicy = DEFAULT_TOLERANCE

    def polygons(self):
        return [t.polygon for t in self.tiles]

    def tile(self, tile_id: int) -> Tile:
        for t in self.tiles:
            if t.id == tile_id:
                return t
        raise KeyError(tile_id)


def _hexagon_kind(a: int, b: int) -> str:
    if (a, b) == (1, 1):
        return "apex-hexagon"
    if (b == 1 and a % 3 == 1) or (a == 1 and b % 3 == 1):
        return "ray-hexagon"
    return "hexagon"


def base_cone_patch(rings: int) -> ConePatch:
    """Restriction of the unit-area regular hexagonal tiling to the pi/3 cone.

    ``rings`` trapezoids are kept along each ray, and every hexagon whose
    centre satisfies ``a + b <= 3 * rings``.
    """
    if not isinstance(rings, (int, np.integer)) or rings < 1:
        raise InvalidParameterError(f"rings must be a positive integer, got {rings!r}")
    limit = 3 * rings

    apex = Polygon([_lattice(0, 0), _lattice(1, 0), _lattice(0, 1)])

    hexagons, kinds = [], []
    for s in range(2, limit + 1):
        for a in range(1, s):
            b = s - a
            if b < 1 or (a - b) % 3:
                continue
            hexagons.append(Polygon([_lattice(a + da, b + db) for da, db in HEX_OFFSETS]))
            kinds.append(_hexagon_kind(a, b))

    trap_l1, trap_l2 = [], []
    for m in range(1, rings + 1):
        c = 3 * m
        trap_l1.append(Polygon([_lattice(c + da, db) for da, db in HEX_OFFSETS if db >= 0]))
        # start at the ray so the loop stays counterclockwise
        loop = [_lattice(da, c + db) for da, db in HEX_OFFSETS[3:] + HEX_OFFSETS[:3] if da >= 0]
        trap_l2.append(Polygon(loop))

    ray = [1] + [x for m in range(1, rings + 1) for x in (3 * m - 1, 3 * m + 1)]
    ray_l1 = np.array([_lattice(a, 0) for a in ray])
    ray_l2 = np.array([_lattice(0, a) for a in ray])
    return ConePatch(
        cone=ConeSpec(math.pi / 3),
        apex_triangle=apex,
        hexagons=tuple(hexagons),
        hexagon_kinds=tuple(kinds),
        trapezoids_l1=tuple(trap_l1),
        trapezoids_l2=tuple(trap_l2),
        ray_vertices_l1=ray_l1,
        ray_vertices_l2=ray_l2,
        rings=rings,
    )


def shear_map(alpha: float) -> np.ndarray:
    """Unit-determinant diagonal map taking the pi/3 cone onto the alpha cone."""
    if not (0 < alpha <= math.pi / 3 + 1e-15):
        raise InvalidParameterError(f"alpha must lie in (0, pi/3], got {alpha!r}")
    lam = math.sqrt(math.tan(alpha / 2) / math.tan(math.pi / 6))
    return np.array([[1.0 / lam, 0.0], [0.0, lam]])


def apply_map(patch: ConePatch, matrix) -> ConePatch:
    m = np.asarray(matrix, dtype=float)
    det = float(np.linalg.det(m))
    if abs(det - 1.0) > 1e-12:
        raise InvalidParameterError(f"map must preserve area, determinant is {det!r}")
    ray_l1 = patch.ray_vertices_l1 @ m.T
    ray_l2 = patch.ray_vertices_l2 @ m.T
    d = ray_l2[0]
    alpha = 2 * math.atan2(d[1], d[0])
    return ConePatch(
        cone=ConeSpec(alpha),
        apex_triangle=patch.apex_triangle.transformed(m),
        hexagons=tuple(h.transformed(m) for h in patch.hexagons),
        hexagon_kinds=patch.hexagon_kinds,
        trapezoids_l1=tuple(t.transformed(m) for t in patch.trapezoids_l1),
        trapezoids_l2=tuple(t.transformed(m) for t in patch.trapezoids_l2),
        ray_vertices_l1=ray_l1,
        ray_vertices_l2=ray_l2,
        rings=patch.rings,
    )


def _close(a, b, eps) -> bool:
    return bool(np.hypot(*(np.asarray(a) - np.asarray(b))) <= eps)


def _substitute(poly: Polygon, moves, eps) -> Polygon:
    pts = np.array(poly.vertices)
    for old, new in moves:
        d = np.hypot(*(pts - old).T)
        pts[d <= eps] = new
    return Polygon(pts)


def _neighbours_in_loop(poly: Polygon, point, eps):
    pts = poly.vertices
    n = len(pts)
    for i in range(n):
        if _close(pts[i], point, eps):
            return pts[(i - 1) % n], pts[(i + 1) % n]
    raise ValueError("point is not a vertex of the polygon")


def modify_to_G(patch: ConePatch, tol: TolerancePolicy = DEFAULT_TOLERANCE):
    """Move the ray vertices so the apex triangle gets area 1/3.

    Returns the modified patch and the intermediate quantities.  The first
    ray vertex is scaled by sqrt(2); the second slides along the ray to the
    unique position restoring unit area of the apex hexagon; every later ray
    vertex is translated by the same vector as the second one.
    """
    if patch.cone.alpha >= math.pi / 3 - 1e-12:
        raise InfeasibleModificationError("the modification needs a cone angle below pi/3")
    eps = tol.eps_snap
    p = patch.ray_vertices_l1
    q = patch.ray_vertices_l2
    u1 = p[0] / np.hypot(*p[0])
    u2 = q[0] / np.hypot(*q[0])

    apex_hex = patch.hexagons[patch.hexagon_kinds.index("apex-hexagon")]
    _, z1 = _neighbours_in_loop(apex_hex, p[1], eps)
    z2, _ = _neighbours_in_loop(apex_hex, q[1], eps)
    x1 = (z1 @ u1) * u1
    x2 = (z2 @ u2) * u2
    origin = np.zeros(2)
    pentagon = signed_area([origin, x1, z1, z2, x2])
    if pentagon < 4.0 / 3.0 - tol.eps_area:
        raise InfeasibleModificationError(f"pentagon area {pentagon!r} is below 4/3")

    p1n = math.sqrt(2.0) * p[0]
    q1n = math.sqrt(2.0) * q[0]

    def hexagon_area(t):
        return signed_area([p1n, p1n + t * u1, z1, z2, q1n + t * u2, q1n])

    # each moving vertex only neighbours fixed ones, so the area is affine in t
    t_max = float((x1 - p1n) @ u1)
    h0 = hexagon_area(0.0)
    slope = (hexagon_area(t_max) - h0) / t_max
    t = (1.0 - h0) / slope
    if not (0 < t <= t_max * (1 + 1e-12)):
        raise InfeasibleModificationError(f"displacement {t!r} outside (0, {t_max!r}]")
    p2n = p1n + t * u1
    q2n = q1n + t * u2
    v1 = p2n - p[1]
    v2 = q2n - q[1]

    new_l1 = np.vstack([p1n, p[1:] + v1])
    new_l2 = np.vstack([q1n, q[1:] + v2])
    moves = list(zip(p, new_l1)) + list(zip(q, new_l2))

    def move(poly):
        return _substitute(poly, moves, eps)

    modified = ConePatch(
        cone=patch.cone,
        apex_triangle=Polygon([origin, p1n, q1n]),
        hexagons=tuple(move(h) for h in patch.hexagons),
        hexagon_kinds=patch.hexagon_kinds,
        trapezoids_l1=tuple(move(t_) for t_ in patch.trapezoids_l1),
        trapezoids_l2=tuple(move(t_) for t_ in patch.trapezoids_l2),
        ray_vertices_l1=new_l1,
        ray_vertices_l2=new_l2,
        rings=patch.rings,
    )
    data = ModificationData(
        p1_new=p1n, q1_new=q1n, p2_new=p2n, q2_new=q2n, v1=v1, v2=v2,
        z1=np.array(z1), z2=np.array(z2), x1=x1, x2=x2,
        pentagon_area=pentagon, t=t, t_max=t_max,
    )
    return modified, data


def glue_along_edge(a: Polygon, b: Polygon, tol: TolerancePolicy = DEFAULT_TOLERANCE) -> Polygon:
    """Union of two polygons sharing one full edge; shared endpoints stay vertices."""
    A, B = a.vertices, b.vertices
    na, nb = len(A), len(B)
    eps = tol.eps_snap
    for i in range(na):
        a0, a1 = A[i], A[(i + 1) % na]
        for j in range(nb):
            if _close(B[j], a1, eps) and _close(B[(j + 1) % nb], a0, eps):
                loop_a = [A[(i + 1 + s) % na] for s in range(na)]
                loop_b = [B[(j + 1 + s) % nb] for s in range(nb)]
                return Polygon(loop_a + loop_b[1:-1])
    raise ValueError("polygons do not share an edge")


def _rotated(poly: Polygon, rot: np.ndarray) -> Polygon:
    return Polygon(poly.vertices @ rot.T)


def _finish(family, k, rings, tagged, tol) -> TilingPatch:
    def key(item):
        c = item[1].centroid()
        ang = math.atan2(c[1], c[0]) % (2 * math.pi)
        return (round(ang, 9), round(math.hypot(c[0], c[1]), 9), item[0])

    ordered = sorted(tagged, key=key)
    tiles = tuple(Tile(i, kind, poly) for i, (kind, poly) in enumerate(ordered))
    return TilingPatch(family=family, k=k, rings=rings, tiles=tiles, tolerance=tol)


def _rotate_and_glue(cone: ConePatch, copies: int, kind_map, tol):
    alpha = cone.cone.alpha
    rots = [rotation(c * alpha) for c in range(copies)]
    tagged = []
    for c in range(copies):
        for kind, h in zip(cone.hexagon_kinds, cone.hexagons):
            tagged.append((kind_map.get(kind, kind), _rotated(h, rots[c])))
        nxt = rots[(c + 1) % copies]
        for upper, lower in zip(cone.trapezoids_l2, cone.trapezoids_l1):
            glued = glue_along_edge(_rotated(upper, rots[c]), _rotated(lower, nxt), tol)
            tagged.append(("glued-hexagon", glued))
    return tagged


def _check_k_rings(k, rings, k_min):
    if not isinstance(k, (int, np.integer)) or k < k_min:
        raise InvalidParameterError(f"k must be an integer >= {k_min}, got {k!r}")
    if not isinstance(rings, (int, np.integer)) or rings < 2:
        raise InvalidParameterError(f"rings must be an integer >= 2, got {rings!r}")


def central_vertices(first_vertex, alpha: float, count: int) -> np.ndarray:
    return np.array([rotation(j * alpha) @ first_vertex for j in range(count)])


def assemble_gk(k: int, rings: int = 4, tol: TolerancePolicy = DEFAULT_TOLERANCE) -> TilingPatch:
    """Hexagon tiling with exactly ``k`` irregular vertices, all near the centre."""
    _check_k_rings(k, rings, 3)
    alpha = 2 * math.pi / (3 * k)
    cone = apply_map(base_cone_patch(rings), shear_map(alpha))
    g, data = modify_to_G(cone, tol)
    n = 3 * k
    tagged = _rotate_and_glue(g, n, {}, tol)

    verts = central_vertices(data.p1_new, alpha, n)
    mids = (verts + np.roll(verts, -1, axis=0)) / 2
    origin = np.zeros(2)
    for j in range(k):
        c = 3 * j
        loop = [origin, mids[c], verts[(c + 1) % n], verts[(c + 2) % n], verts[(c + 3) % n], mids[(c + 3) % n]]
        tagged.append(("central-hexagon", Polygon(loop)))
    return _finish("gk", k, rings, tagged, tol)


def assemble_fk(k: int, rings: int = 4, central_mode: str = "dissect",
                tol: TolerancePolicy = DEFAULT_TOLERANCE) -> TilingPatch:
    """Edge-to-edge tiling built from 6k unmodified cone copies.

    ``central_mode='none'`` keeps the central regular 6k-gon whole;
    ``'dissect'`` splits it into two heptagons (k = 2) or k octagons.
    """
    _check_k_rings(k, rings, 2)
    if central_mode not in ("none", "dissect"):
        raise InvalidParameterError(f"central_mode must be 'none' or 'dissect', got {central_mode!r}")
    alpha = math.pi / (3 * k)
    cone = apply_map(base_cone_patch(rings), shear_map(alpha))
    n = 6 * k
    plain = {"apex-hexagon": "hexagon", "ray-hexagon": "hexagon"}
    tagged = _rotate_and_glue(cone, n, plain, tol)

    verts = central_vertices(cone.ray_vertices_l1[0], alpha, n)
    if central_mode == "none":
        tagged.append(("central-polygon", Polygon(verts)))
        family = "fk-undissected"
    elif k == 2:
        tagged.append(("heptagon", Polygon(verts[0:7])))
        tagged.append(("heptagon", Polygon(np.vstack([verts[6:12], verts[0]]))))
        family = "fk-dissected"
    else:
        origin = np.zeros(2)
        for j in range(k):
            idx = [(6 * j + s) % n for s in range(7)]
            tagged.append(("octagon", Polygon(np.vstack([origin, verts[idx]]))))
        family = "fk-dissected"
    return _finish(family, k, rings, tagged, tol)


def construct(family: str, k: int, rings: int = 4, tol: TolerancePolicy = DEFAULT_TOLERANCE) -> TilingPatch:
    if family == "gk":
        return assemble_gk(k, rings, tol)
    if family == "fk-dissected":
        return assemble_fk(k, rings, "dissect", tol)
    if family == "fk-undissected":
        return assemble_fk(k, rings, "none", tol)
    raise InvalidParameterError(f"unknown family {family!r}; expected one of {FAMILIES}")


def all_tiles_convex(patch: TilingPatch) -> bool:
    return all(is_strictly_convex(t.polygon, patch.tolerance) for t in patch.tiles)


def with_tiles(patch: TilingPatch, tiles) -> TilingPatch:
    return replace(patch, tiles=tuple(tiles))
