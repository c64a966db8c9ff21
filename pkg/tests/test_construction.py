import math

import numpy as np
import pytest
from scipy.spatial import cKDTree

import shapely
from hextiling.construction import (
    ConeSpec,
    InfeasibleModificationError,
    InvalidParameterError,
    apply_map,
    assemble_fk,
    assemble_gk,
    base_cone_patch,
    glue_along_edge,
    modify_to_G,
    shear_map,
)
from hextiling.geometry import (
    Polygon,
    congruence_signature,
    interior_angles,
    is_strictly_convex,
    polygon_area,
    rotation,
    signed_area,
)
from oracles import cached_patch, clip_enumeration_counts, vertex_cloud

# frozen from clip_enumeration_counts: {area in twelfths: count}
ORACLE_COUNTS = {
    1: {2: 1, 12: 1, 6: 2},
    2: {2: 1, 12: 5, 6: 4},
    3: {2: 1, 12: 12, 6: 6},
    4: {2: 1, 12: 22, 6: 8},
    5: {2: 1, 12: 35, 6: 10},
    6: {2: 1, 12: 51, 6: 12},
}


def _g(alpha, rings=4):
    return modify_to_G(apply_map(base_cone_patch(rings), shear_map(alpha)))


def _counts(patch):
    return {2: 1, 12: len(patch.hexagons), 6: len(patch.trapezoids_l1) + len(patch.trapezoids_l2)}


@pytest.mark.parametrize("rings", range(1, 7))
def test_base_patch_matches_clip_oracle(rings):
    patch = base_cone_patch(rings)
    assert _counts(patch) == ORACLE_COUNTS[rings]
    assert len(patch.trapezoids_l1) == rings


def test_frozen_counts_reproduce():
    assert clip_enumeration_counts(3) == ORACLE_COUNTS[3]


def test_base_patch_areas():
    patch = base_cone_patch(3)
    assert polygon_area(patch.apex_triangle) == pytest.approx(1 / 6, abs=1e-12)
    for t in patch.trapezoids_l1 + patch.trapezoids_l2:
        assert polygon_area(t) == pytest.approx(0.5, abs=1e-12)
    for h in patch.hexagons:
        assert polygon_area(h) == pytest.approx(1.0, abs=1e-12)
    c = ORACLE_COUNTS[3]
    assert patch.total_area() == pytest.approx(1 / 6 + c[12] + c[6] / 2, rel=1e-12)


def test_base_patch_ray_edges():
    patch = base_cone_patch(3)
    p = patch.ray_vertices_l1
    for m, trap in enumerate(patch.trapezoids_l1, start=1):
        # trapezoid m has ray edge [p_2m, p_2m+1] (1-based)
        verts = {tuple(np.round(v, 12)) for v in trap.vertices}
        assert tuple(np.round(p[2 * m - 1], 12)) in verts
        assert tuple(np.round(p[2 * m], 12)) in verts


def test_base_patch_rejects_bad_rings():
    with pytest.raises(InvalidParameterError):
        base_cone_patch(0)


def test_shear_map_examples():
    assert np.allclose(shear_map(math.pi / 3), np.eye(2), atol=1e-15)
    m = shear_map(math.pi / 6)
    assert m[1, 1] == pytest.approx(0.681250, abs=1e-6)
    for alpha in (math.pi / 3, math.pi / 6, 0.1, 1e-3):
        m = shear_map(alpha)
        assert abs(np.linalg.det(m) - 1) <= 1e-15
        image = m @ np.array([math.cos(math.pi / 6), math.sin(math.pi / 6)])
        assert math.atan2(image[1], image[0]) == pytest.approx(alpha / 2, abs=1e-14)
        tri = base_cone_patch(1).apex_triangle.transformed(m)
        assert polygon_area(tri) == pytest.approx(1 / 6, abs=1e-12)


@pytest.mark.parametrize("alpha", [0.0, -0.1, math.pi / 3 + 0.01])
def test_shear_map_range(alpha):
    with pytest.raises(InvalidParameterError):
        shear_map(alpha)


def test_apply_map_identity_and_areas():
    base = base_cone_patch(2)
    same = apply_map(base, np.eye(2))
    for (_, a), (_, b) in zip(base.tiles(), same.tiles()):
        assert np.array_equal(a.vertices, b.vertices)
    mapped = apply_map(base, shear_map(math.pi / 6))
    assert mapped.cone.alpha == pytest.approx(math.pi / 6, abs=1e-14)
    for (_, a), (_, b) in zip(base.tiles(), mapped.tiles()):
        assert polygon_area(b) == pytest.approx(polygon_area(a), rel=1e-12)
    with pytest.raises(InvalidParameterError):
        apply_map(base, 2 * np.eye(2))


def test_cone_spec_directions():
    cone = ConeSpec(0.4)
    d1, d2 = cone.l1_direction, cone.l2_direction
    assert math.acos(d1 @ d2) == pytest.approx(0.4, abs=1e-12)
    assert np.allclose(d2, d1 * [1, -1])


@pytest.mark.parametrize("alpha", [math.pi / 4, math.pi / 6, math.pi / 12, 2 * math.pi / 9])
def test_modification_internals(alpha):
    cone = apply_map(base_cone_patch(4), shear_map(alpha))
    g, data = modify_to_G(cone)
    p, q = cone.ray_vertices_l1, cone.ray_vertices_l2
    assert np.hypot(*data.p1_new) / np.hypot(*p[0]) == pytest.approx(math.sqrt(2), abs=1e-12)
    assert polygon_area(g.apex_triangle) == pytest.approx(1 / 3, abs=1e-12)
    hexagon = [data.p1_new, data.p2_new, data.z1, data.z2, data.q2_new, data.q1_new]
    assert signed_area(hexagon) == pytest.approx(1.0, abs=1e-12)
    assert is_strictly_convex(Polygon(hexagon))
    assert np.hypot(*(data.p2_new - data.p1_new)) == pytest.approx(np.hypot(*(data.q2_new - data.q1_new)), abs=1e-12)
    assert data.pentagon_area > 4 / 3
    assert 0 < data.t <= data.t_max

    # the first quadrangle before and after the later ray vertices move
    first = cone.trapezoids_l1[0]
    others = [v for v in first.vertices
              if np.hypot(*(v - p[1])) > 1e-9 and np.hypot(*(v - p[2])) > 1e-9]
    far_top, near_top = sorted(others, key=lambda v: -v[0])
    before = Polygon([data.p2_new, p[2], far_top, near_top])
    assert polygon_area(before) == pytest.approx(5 / 12, abs=1e-12)
    assert polygon_area(g.trapezoids_l1[0]) == pytest.approx(0.5, abs=1e-12)


def test_parallel_translation_lemma():
    cone = apply_map(base_cone_patch(4), shear_map(math.pi / 9))
    _, data = modify_to_G(cone)
    for trap in cone.trapezoids_l1:
        pts = np.array(trap.vertices)
        on_ray = np.abs(pts[:, 1] + pts[:, 0] * math.tan(math.pi / 18)) < 1e-9
        assert on_ray.sum() == 2
        moved = pts.copy()
        moved[on_ray] += data.v1
        assert signed_area(moved) == pytest.approx(signed_area(pts), abs=1e-12)


def test_modified_patch_properties():
    alpha = 2 * math.pi / 15
    g, data = _g(alpha)
    for kind, tile in g.tiles():
        assert is_strictly_convex(tile)
    for t in g.trapezoids_l1:
        assert polygon_area(t) == pytest.approx(0.5, abs=1e-12)
    for h in g.hexagons:
        assert polygon_area(h) == pytest.approx(1.0, abs=1e-12)
    # glue-edge angles are acute
    for trap, ray in ((g.trapezoids_l1, g.ray_vertices_l1), (g.trapezoids_l2, g.ray_vertices_l2)):
        for t in trap:
            ang = interior_angles(t)
            d = np.min(np.hypot(*(t.vertices[:, None, :] - ray[None, :, :]).transpose(2, 0, 1)), axis=1)
            assert np.all(ang[d < 1e-9] < math.pi / 2)
    assert np.allclose(data.v2, data.v1 * [1, -1], atol=1e-12)


def test_modified_patch_axial_symmetry():
    g, _ = _g(2 * math.pi / 12)
    pts = np.vstack([t.vertices for _, t in g.tiles()])
    mirrored = pts * [1, -1]
    dist, _ = cKDTree(pts).query(mirrored)
    assert dist.max() <= 1e-7


def test_modification_needs_narrow_cone():
    with pytest.raises(InfeasibleModificationError):
        modify_to_G(base_cone_patch(2))


def test_glue_along_edge():
    a = Polygon([(0, 0), (1, 0), (1, 1), (0, 1)])
    b = Polygon([(1, 0), (2, 0), (2, 1), (1, 1)])
    merged = glue_along_edge(a, b)
    assert len(merged) == 6
    assert polygon_area(merged) == pytest.approx(2)
    with pytest.raises(ValueError):
        glue_along_edge(a, Polygon([(5, 5), (6, 5), (6, 6)]))


@pytest.mark.parametrize("k", [3, 4, 6])
def test_gk_structure(k):
    patch = cached_patch("gk", k)
    central = [t for t in patch.tiles if t.kind == "central-hexagon"]
    assert len(central) == k
    p = sum(polygon_area(t.polygon) for t in central)
    assert p == pytest.approx(k, abs=1e-9)
    for t in patch.tiles:
        assert len(t.polygon) == 6
        assert polygon_area(t.polygon) == pytest.approx(1.0, abs=1e-7)
        assert is_strictly_convex(t.polygon)


def test_g3_central_nonagon():
    patch = cached_patch("gk", 3)
    central = shapely.union_all([shapely.Polygon(t.polygon.vertices) for t in patch.tiles
                                 if t.kind == "central-hexagon"])
    ring = shapely.simplify(central, 1e-9).exterior
    assert len(ring.coords) - 1 == 9
    assert central.area == pytest.approx(3.0, abs=1e-9)


def test_g4_midpoints():
    patch = cached_patch("gk", 4)
    central = [t.polygon for t in patch.tiles if t.kind == "central-hexagon"]
    # off-centre right-angle vertices of the central hexagons are the edge midpoints
    mids = []
    for poly in central:
        ang = interior_angles(poly)
        mids += [tuple(np.round(v, 9)) for v, a in zip(poly.vertices, ang)
                 if abs(a - math.pi / 2) < 1e-9 and np.hypot(*v) > 1e-9]
    uniq = set(mids)
    assert len(uniq) == 4
    assert all(mids.count(m) == 2 for m in uniq)


def test_fk_central_tiles():
    p2 = cached_patch("fk-dissected", 2)
    hept = [t for t in p2.tiles if len(t.polygon) == 7]
    assert len(hept) == 2
    for t in hept:
        assert polygon_area(t.polygon) == pytest.approx(1.0, abs=1e-9)
    p3 = cached_patch("fk-dissected", 3)
    octs = [t.polygon for t in p3.tiles if len(t.polygon) == 8]
    assert len(octs) == 3
    assert len({congruence_signature(o) for o in octs}) == 1
    for o in octs:
        assert polygon_area(o) == pytest.approx(1.0, abs=1e-9)
    u2 = cached_patch("fk-undissected", 2)
    big = [t.polygon for t in u2.tiles if len(t.polygon) != 6]
    assert len(big) == 1 and len(big[0]) == 12
    assert polygon_area(big[0]) == pytest.approx(2.0, abs=1e-9)
    others = [t.polygon for t in u2.tiles if len(t.polygon) == 6]
    assert all(abs(polygon_area(h) - 1) < 1e-9 for h in others)


def test_parameter_errors():
    with pytest.raises(InvalidParameterError):
        assemble_gk(2, 4)
    with pytest.raises(InvalidParameterError):
        assemble_gk(3, 1)
    with pytest.raises(InvalidParameterError):
        assemble_fk(1, 4)
    with pytest.raises(InvalidParameterError):
        assemble_fk(3, 4, "bogus")


def _rotation_invariant(patch, angle):
    pts = np.unique(np.round(vertex_cloud(patch), 9), axis=0)
    turned = pts @ rotation(angle).T
    dist, _ = cKDTree(pts).query(turned)
    return dist.max() <= 1e-7


@pytest.mark.parametrize("family,k", [("gk", 3), ("gk", 5), ("fk-dissected", 2), ("fk-dissected", 4),
                                      ("fk-undissected", 3)])
def test_rotational_symmetry(family, k):
    patch = cached_patch(family, k)
    assert _rotation_invariant(patch, 2 * math.pi / k)
    assert not _rotation_invariant(patch, math.pi / k / 7)


@pytest.mark.parametrize("family,k", [("gk", 4), ("fk-dissected", 3), ("fk-undissected", 5)])
def test_area_conservation(family, k):
    patch = cached_patch(family, k)
    shapes = [shapely.Polygon(t.polygon.vertices) for t in patch.tiles]
    union = shapely.union_all(shapes)
    total = sum(polygon_area(t.polygon) for t in patch.tiles)
    assert total == pytest.approx(union.area, rel=1e-8)


@pytest.mark.parametrize("family,k,expected", [("gk", 3, 5), ("gk", 7, 5), ("gk", 10, 5),
                                               ("fk-dissected", 2, 3), ("fk-dissected", 5, 3),
                                               ("fk-undissected", 4, 3)])
def test_prototile_classes(family, k, expected):
    patch = cached_patch(family, k)
    assert len({congruence_signature(t.polygon) for t in patch.tiles}) == expected


def test_undissected_has_two_hexagon_classes():
    patch = cached_patch("fk-undissected", 6)
    hexes = {congruence_signature(t.polygon) for t in patch.tiles if len(t.polygon) == 6}
    assert len(hexes) == 2


def test_canonical_order_is_stable():
    a = assemble_gk(3, 3)
    b = assemble_gk(3, 3)
    assert [t.kind for t in a.tiles] == [t.kind for t in b.tiles]
    for ta, tb in zip(a.tiles, b.tiles):
        assert np.array_equal(ta.polygon.vertices, tb.polygon.vertices)
