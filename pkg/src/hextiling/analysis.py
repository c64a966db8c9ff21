"""Closed-form diameter, index and bound quantities for the undissected F_k."""
from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from .construction import InvalidParameterError, apply_map, base_cone_patch, shear_map
from .geometry import signed_area


@dataclass(frozen=True)
class AsymptoticRow:
    k: int
    r_k: float
    D_k: float
    A_k: float
    total_index: int
    bound: float
    ratio: float


def closed_form_rk(k: int) -> float:
    """Leg length of the isosceles apex triangle of area 1/6 and angle pi/(3k)."""
    if k < 1:
        raise InvalidParameterError(f"k must be >= 1, got {k!r}")
    return 1.0 / math.sqrt(3.0 * math.sin(math.pi / (3 * k)))


def closed_form_Dk(k: int) -> float:
    return 2.0 * closed_form_rk(k)


def pentagon_area(alpha: float) -> float:
    """Area of conv{o, x1, z1, z2, x2} for the first hexagon of the alpha cone.

    ``z1``, ``z2`` are the two vertices of that hexagon off the rays and
    ``x1``, ``x2`` their orthogonal projections onto the rays.
    """
    if not (0 < alpha <= math.pi / 3 + 1e-15):
        raise InvalidParameterError(f"alpha must lie in (0, pi/3], got {alpha!r}")
    cone = apply_map(base_cone_patch(1), shear_map(alpha))
    first = cone.hexagons[cone.hexagon_kinds.index("apex-hexagon")]
    p, q = cone.ray_vertices_l1, cone.ray_vertices_l2
    u1 = p[0] / np.hypot(*p[0])
    u2 = q[0] / np.hypot(*q[0])
    ray_points = np.vstack([p[:2], q[:2]])
    free = [v for v in first.vertices if np.hypot(*(ray_points - v).T).min() > 1e-9]
    z1, z2 = sorted(free, key=lambda v: v[1])
    x1 = (z1 @ u1) * u1
    x2 = (z2 @ u2) * u2
    return signed_area([np.zeros(2), x1, z1, z2, x2])


def ratio_row(k: int) -> AsymptoticRow:
    if not isinstance(k, (int, np.integer)) or k < 2:
        raise InvalidParameterError(f"k must be an integer >= 2, got {k!r}")
    r = closed_form_rk(k)
    d = 2 * r
    bound = 2 * math.pi * d * d - 6
    index = 6 * k - 6
    return AsymptoticRow(k=int(k), r_k=r, D_k=d, A_k=1.0, total_index=index, bound=bound, ratio=bound / index)


def asymptotic_table(ks) -> list[AsymptoticRow]:
    return [ratio_row(k) for k in ks]


def log_sampled_ks(k_max: int = 10**6, count: int = 200) -> list[int]:
    """Distinct integers from 2 to ``k_max``, roughly log-uniform."""
    grid = np.unique(np.round(np.geomspace(2, k_max, count)).astype(int))
    return [int(k) for k in grid]
