"""Planar polygon primitives with one explicit tolerance policy.

Every polygon is an immutable counterclockwise vertex loop stored as a
read-only ``(n, 2)`` float array.  All functions here are pure.
"""
from __future__ import annotations

import math
from dataclasses import dataclass, field

import numpy as np
from scipy.optimize import linprog


class GeometryError(ValueError):
    """Raised for invalid geometric input (non-finite or degenerate)."""


@dataclass(frozen=True)
class TolerancePolicy:
    eps_snap: float = 1e-7
    eps_area: float = 1e-7
    eps_angle: float = 1e-9
    eps_on_segment: float = 1e-9

    def __post_init__(self):
        for name in ("eps_snap", "eps_area", "eps_angle", "eps_on_segment"):
            value = getattr(self, name)
            if not (math.isfinite(value) and value > 0):
                raise GeometryError(f"{name} must be a positive finite number, got {value!r}")

    def as_dict(self) -> dict:
        return {
            "eps_snap": self.eps_snap,
            "eps_area": self.eps_area,
            "eps_angle": self.eps_angle,
            "eps_on_segment": self.eps_on_segment,
        }


DEFAULT_TOLERANCE = TolerancePolicy()

# quantum for congruence signatures (lengths and radians)
SIGNATURE_QUANTUM = 1e-6


def _as_points(vertices) -> np.ndarray:
    pts = np.array(vertices, dtype=float)
    if pts.ndim != 2 or pts.shape[1] != 2:
        raise GeometryError(f"expected an (n, 2) array of points, got shape {pts.shape}")
    if not np.all(np.isfinite(pts)):
        raise GeometryError("polygon has non-finite coordinates")
    return pts


def signed_area(vertices) -> float:
    """Shoelace signed area; positive for counterclockwise loops."""
    pts = _as_points(vertices)
    # centring keeps the cross products well conditioned far from the origin
    pts = pts - pts.mean(axis=0)
    x, y = pts[:, 0], pts[:, 1]
    xn, yn = np.roll(x, -1), np.roll(y, -1)
    return 0.5 * float(np.sum(x * yn - xn * y))


@dataclass(frozen=True, eq=False)
class Polygon:
    """Counterclockwise simple polygon.

    Construction checks finiteness, vertex count, distinct consecutive
    vertices and positive orientation.  Simplicity is checked separately by
    :func:`is_simple` since it is quadratic in the vertex count.
    """

    vertices: np.ndarray = field(repr=False)

    def __post_init__(self):
        pts = _as_points(self.vertices)
        if len(pts) < 3:
            raise GeometryError("polygon needs at least 3 vertices")
        steps = np.hypot(*(np.roll(pts, -1, axis=0) - pts).T)
        if np.any(steps <= DEFAULT_TOLERANCE.eps_snap * 1e-3):
            raise GeometryError("polygon has repeated consecutive vertices")
        if signed_area(pts) <= 0:
            raise GeometryError("polygon must be counterclockwise with positive area")
        pts.setflags(write=False)
        object.__setattr__(self, "vertices", pts)

    def __len__(self):
        return len(self.vertices)

    def __repr__(self):
        return f"Polygon(n={len(self)}, area={polygon_area(self):.6g})"

    @classmethod
    def from_any_orientation(cls, vertices) -> "Polygon":
        pts = _as_points(vertices)
        if signed_area(pts) < 0:
            pts = pts[::-1]
        return cls(pts)

    def transformed(self, matrix, offset=(0.0, 0.0)) -> "Polygon":
        """Apply ``x -> matrix @ x + offset``; reflections are re-oriented."""
        m = np.asarray(matrix, dtype=float)
        pts = self.vertices @ m.T + np.asarray(offset, dtype=float)
        if np.linalg.det(m) < 0:
            pts = pts[::-1]
        return Polygon(pts)

    def edges(self):
        return list(zip(self.vertices, np.roll(self.vertices, -1, axis=0)))

    def centroid(self) -> np.ndarray:
        pts = self.vertices
        x, y = pts[:, 0], pts[:, 1]
        xn, yn = np.roll(x, -1), np.roll(y, -1)
        cross = x * yn - xn * y
        a = 0.5 * np.sum(cross)
        cx = np.sum((x + xn) * cross) / (6 * a)
        cy = np.sum((y + yn) * cross) / (6 * a)
        return np.array([cx, cy])

    def perimeter(self) -> float:
        d = np.roll(self.vertices, -1, axis=0) - self.vertices
        return float(np.sum(np.hypot(d[:, 0], d[:, 1])))


def rotation(theta: float) -> np.ndarray:
    c, s = math.cos(theta), math.sin(theta)
    return np.array([[c, -s], [s, c]])


def polygon_area(poly: Polygon) -> float:
    return signed_area(poly.vertices)


def fan_area(poly: Polygon) -> float:
    """Area as a sum of triangles fanned from the first vertex.

    Kept separate from the shoelace path so the two can cross-check.
    """
    pts = poly.vertices
    o = pts[0]
    total = 0.0
    for i in range(1, len(pts) - 1):
        a = pts[i] - o
        b = pts[i + 1] - o
        total += 0.5 * (a[0] * b[1] - a[1] * b[0])
    return total


def interior_angles(poly: Polygon) -> np.ndarray:
    """Interior angle at every vertex, in radians, for a CCW loop.

    Reflex vertices give angles above pi.
    """
    pts = poly.vertices
    prev = np.roll(pts, 1, axis=0) - pts
    nxt = np.roll(pts, -1, axis=0) - pts
    cross = nxt[:, 0] * prev[:, 1] - nxt[:, 1] * prev[:, 0]
    dot = np.sum(nxt * prev, axis=1)
    ang = np.arctan2(cross, dot)
    return np.mod(ang, 2 * math.pi)


def is_strictly_convex(poly: Polygon, tol: TolerancePolicy = DEFAULT_TOLERANCE) -> bool:
    ang = interior_angles(poly)
    return bool(np.all((ang > 0) & (ang < math.pi - tol.eps_angle)))


def _segments_cross(a, b, c, d) -> bool:
    def orient(p, q, r):
        return (q[0] - p[0]) * (r[1] - p[1]) - (q[1] - p[1]) * (r[0] - p[0])

    d1, d2 = orient(c, d, a), orient(c, d, b)
    d3, d4 = orient(a, b, c), orient(a, b, d)
    return (d1 * d2 < 0) and (d3 * d4 < 0)


def is_simple(poly: Polygon) -> bool:
    """True when no two non-adjacent edges cross."""
    pts = poly.vertices
    n = len(pts)
    for i in range(n):
        a, b = pts[i], pts[(i + 1) % n]
        for j in range(i + 2, n):
            if i == 0 and j == n - 1:
                continue
            if _segments_cross(a, b, pts[j], pts[(j + 1) % n]):
                return False
    return True


def convex_hull(points) -> np.ndarray:
    """Andrew's monotone chain; returns the hull CCW without collinear points."""
    pts = sorted(map(tuple, _as_points(points)))
    if len(pts) <= 2:
        return np.array(pts)

    def cross(o, a, b):
        return (a[0] - o[0]) * (b[1] - o[1]) - (a[1] - o[1]) * (b[0] - o[0])

    lower, upper = [], []
    for p in pts:
        while len(lower) >= 2 and cross(lower[-2], lower[-1], p) <= 0:
            lower.pop()
        lower.append(p)
    for p in reversed(pts):
        while len(upper) >= 2 and cross(upper[-2], upper[-1], p) <= 0:
            upper.pop()
        upper.append(p)
    return np.array(lower[:-1] + upper[:-1])


def polygon_diameter(poly: Polygon) -> float:
    """Largest vertex-to-vertex distance, by rotating calipers on the hull."""
    hull = convex_hull(poly.vertices)
    n = len(hull)
    if n == 2:
        return float(np.hypot(*(hull[1] - hull[0])))

    def area2(i, j, k):
        a, b, c = hull[i], hull[j], hull[k]
        return abs((b[0] - a[0]) * (c[1] - a[1]) - (b[1] - a[1]) * (c[0] - a[0]))

    best = 0.0
    j = 1
    for i in range(n):
        i2 = (i + 1) % n
        # advance the antipodal pointer while the triangle keeps growing
        while area2(i, i2, (j + 1) % n) > area2(i, i2, j):
            j = (j + 1) % n
        for p in (i, i2):
            for q in (j, (j + 1) % n):
                best = max(best, float(np.hypot(*(hull[p] - hull[q]))))
    return best


def diameter_brute_force(poly: Polygon) -> float:
    pts = poly.vertices
    diff = pts[:, None, :] - pts[None, :, :]
    return float(np.sqrt(np.max(np.sum(diff**2, axis=-1))))


def point_on_segment_interior(p, a, b, tol: TolerancePolicy = DEFAULT_TOLERANCE) -> bool:
    p, a, b = (np.asarray(v, dtype=float) for v in (p, a, b))
    ab = b - a
    length2 = float(ab @ ab)
    if length2 <= tol.eps_snap**2:
        raise GeometryError("segment endpoints coincide")
    t = float((p - a) @ ab) / length2
    t = min(1.0, max(0.0, t))
    dist = float(np.hypot(*(a + t * ab - p)))
    if dist > tol.eps_on_segment:
        return False
    return bool(np.hypot(*(p - a)) > tol.eps_snap and np.hypot(*(p - b)) > tol.eps_snap)


def _raw_signature(pts: np.ndarray) -> list[tuple[int, int]]:
    poly = Polygon(pts)
    ang = interior_angles(poly)
    d = np.roll(pts, -1, axis=0) - pts
    lengths = np.hypot(d[:, 0], d[:, 1])
    q = SIGNATURE_QUANTUM
    return [(int(round(a / q)), int(round(l / q))) for a, l in zip(ang, lengths)]


def congruence_signature(poly: Polygon) -> tuple[tuple[int, int], ...]:
    """Canonical (angle, following edge length) cycle, quantized.

    The minimum is taken over all starting vertices of the polygon and of
    its mirror image, so isometric polygons (reflections included) share a
    signature.
    """
    pts = poly.vertices
    mirrored = (pts * np.array([-1.0, 1.0]))[::-1]
    candidates = []
    for loop in (pts, mirrored):
        seq = _raw_signature(loop)
        n = len(seq)
        candidates.extend(tuple(seq[i:] + seq[:i]) for i in range(n))
    return min(candidates)


def _chebyshev_radius(poly: Polygon) -> float:
    pts = poly.vertices
    d = np.roll(pts, -1, axis=0) - pts
    # outward normals of a CCW loop
    normals = np.column_stack([d[:, 1], -d[:, 0]])
    norms = np.hypot(normals[:, 0], normals[:, 1])
    normals = normals / norms[:, None]
    offsets = np.sum(normals * pts, axis=1)
    # maximize r subject to n_i . c + r <= b_i
    a_ub = np.column_stack([normals, np.ones(len(pts))])
    res = linprog(
        c=[0.0, 0.0, -1.0],
        A_ub=a_ub,
        b_ub=offsets,
        bounds=[(None, None), (None, None), (0, None)],
        method="highs",
    )
    if not res.success:
        raise GeometryError(f"Chebyshev centre LP failed: {res.message}")
    cx, cy, _ = res.x
    # re-evaluate the radius at the LP centre to shed solver slack
    return float(np.min(offsets - normals @ np.array([cx, cy])))


def _circle_two(a, b):
    c = (a + b) / 2
    return c, float(np.hypot(*(a - c)))


def _circle_three(a, b, c):
    ax, ay = a
    bx, by = b
    cx, cy = c
    d = 2 * (ax * (by - cy) + bx * (cy - ay) + cx * (ay - by))
    if d == 0:
        return None
    ux = ((ax * ax + ay * ay) * (by - cy) + (bx * bx + by * by) * (cy - ay) + (cx * cx + cy * cy) * (ay - by)) / d
    uy = ((ax * ax + ay * ay) * (cx - bx) + (bx * bx + by * by) * (ax - cx) + (cx * cx + cy * cy) * (bx - ax)) / d
    center = np.array([ux, uy])
    return center, float(np.hypot(*(a - center)))


def min_enclosing_circle(points) -> tuple[np.ndarray, float]:
    """Smallest enclosing circle by Welzl's incremental method.

    Points are processed in the given order (no shuffling) so the result is
    deterministic; the inputs here are small vertex loops.
    """
    pts = _as_points(points)
    slack = 1e-12

    def inside(circle, p):
        center, r = circle
        return np.hypot(*(p - center)) <= r * (1 + slack) + slack

    circle = (pts[0].copy(), 0.0)
    for i in range(1, len(pts)):
        if inside(circle, pts[i]):
            continue
        circle = (pts[i].copy(), 0.0)
        for j in range(i):
            if inside(circle, pts[j]):
                continue
            circle = _circle_two(pts[i], pts[j])
            for m in range(j):
                if inside(circle, pts[m]):
                    continue
                three = _circle_three(pts[i], pts[j], pts[m])
                if three is not None:
                    circle = three
    return circle


def normality_radii(poly: Polygon) -> tuple[float, float]:
    """(inscribed Chebyshev radius, minimal enclosing circle radius)."""
    r_in = _chebyshev_radius(poly)
    _, r_out = min_enclosing_circle(poly.vertices)
    return r_in, r_out


def regular_polygon(n: int, circumradius: float, phase: float = 0.0, center=(0.0, 0.0)) -> Polygon:
    t = phase + 2 * math.pi * np.arange(n) / n
    pts = np.column_stack([np.cos(t), np.sin(t)]) * circumradius + np.asarray(center, dtype=float)
    return Polygon(pts)
