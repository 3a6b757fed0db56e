from collections import Counter
from fractions import Fraction

import pytest
from hypothesis import given, settings, strategies as st

from spatial_linking.generators import moment_curve, random_embedding
from spatial_linking.geometry import (
    GenericityError,
    InvalidEmbeddingError,
    NoGenericDirectionError,
    PLEmbedding,
    build_scene_diagram,
    find_generic_direction,
    genericity_failure,
    require_valid,
    segments_intersect,
    validate_embedding,
)


def kinds(e):
    return {v.kind for v in validate_embedding(e)}


def test_moment_curve_k6_valid():
    assert validate_embedding(moment_curve(6)) == []


def test_coincident_vertices():
    e = PLEmbedding(4, [(0, 0, 0), (1, 5, 2), (0, 0, 0), (3, 1, 7)])
    assert "coincident vertices" in kinds(e)
    with pytest.raises(InvalidEmbeddingError):
        require_valid(e)


def test_vertex_interior_to_edge():
    e = PLEmbedding(4, [(0, 0, 0), (2, 2, 2), (1, 1, 1), (5, 0, 3)])
    assert "vertex interior to edge" in kinds(e)


def test_crossing_edges_detected():
    # 1-2 and 3-4 are two diagonals of a planar square
    e = PLEmbedding(4, [(0, 0, 0), (2, 2, 0), (0, 2, 0), (2, 0, 0)])
    assert "segments intersect" in kinds(e)


def test_bend_on_another_edge():
    e = PLEmbedding(4, [(0, 0, 0), (4, 0, 0), (0, 4, 1), (4, 4, 7)], {(3, 4): [(2, 0, 0)]})
    assert "point interior to segment" in kinds(e)


def test_hopf_fixture_valid(hopf_k6):
    assert validate_embedding(hopf_k6) == []
    assert not hopf_k6.is_rectilinear


@pytest.mark.parametrize("a,b,c,d,hit", [
    ((0, 0, 0), (2, 0, 0), (1, -1, 0), (1, 1, 0), True),
    ((0, 0, 0), (2, 0, 0), (1, -1, 1), (1, 1, 1), False),
    ((0, 0, 0), (2, 0, 0), (2, 0, 0), (3, 0, 0), True),     # touching end to end
    ((0, 0, 0), (2, 0, 0), (3, 0, 0), (4, 0, 0), False),    # collinear, apart
    ((0, 0, 0), (4, 0, 0), (1, 0, 0), (2, 0, 0), True),     # collinear overlap
])
def test_segments_intersect(a, b, c, d, hit):
    assert segments_intersect(a, b, c, d) is hit
    assert segments_intersect(c, d, a, b) is hit


def test_generic_direction_deterministic():
    e = moment_curve(6)
    d = find_generic_direction(e)
    assert d == find_generic_direction(moment_curve(6))
    assert genericity_failure(e, d) is None


def test_vertical_edge_rejects_default():
    e = PLEmbedding(4, [(0, 0, 0), (0, 0, 5), (3, 1, 2), (-2, 4, 1)])
    assert genericity_failure(e, (0, 0, 1)).startswith("a")
    d = find_generic_direction(e)
    assert d != (0, 0, 1)
    with pytest.raises(GenericityError):
        build_scene_diagram(e, (0, 0, 1))


def test_planar_triangle_accepts_default():
    e = PLEmbedding(3, [(0, 0, 0), (4, 0, 0), (1, 3, 0)])
    assert find_generic_direction(e) == (0, 0, 1)
    assert build_scene_diagram(e).crossings == ()


def test_vertex_above_edge_rejected():
    e = PLEmbedding(4, [(0, 0, 0), (4, 0, 0), (2, 0, 3), (9, 9, 1)])
    assert genericity_failure(e, (0, 0, 1)).startswith("c")


def test_budget_exhausted():
    e = PLEmbedding(2, [(0, 0, 0), (0, 0, 1)])
    with pytest.raises(NoGenericDirectionError):
        find_generic_direction(e, budget=1)


def test_crossing_sign_hand_computed():
    # over strand (0,0,0)->(2,2,0), under strand (0,2,-1)->(2,0,-1), viewer on +z.
    # Right-hand rule: (2,2,0) x (2,-2,0) = (0,0,-8), pointing away from the viewer.
    e = PLEmbedding(4, [(0, 0, 0), (2, 2, 0), (0, 2, -1), (2, 0, -1)])
    scene = build_scene_diagram(e, (0, 0, 1))
    k12, k34 = scene.edge_index[(1, 2)], scene.edge_index[(3, 4)]
    hits = [c for c in scene.crossings if {c.over.edge, c.under.edge} == {k12, k34}]
    assert len(hits) == 1
    c = hits[0]
    assert (c.over.edge, c.under.edge) == (k12, k34)
    assert c.over.param == Fraction(1, 2) and c.under.param == Fraction(1, 2)
    assert c.sign == -1


def test_crossing_sign_flips_with_direction():
    e = PLEmbedding(4, [(0, 0, 0), (2, 2, 0), (0, 2, -1), (2, 0, -1)])
    up = build_scene_diagram(e, (0, 0, 1))
    down = build_scene_diagram(e, (0, 0, -1))
    # seen from below the other strand is over and the picture is mirrored,
    # which leaves the sign unchanged
    assert [c.sign for c in up.crossings] == [c.sign for c in down.crossings]
    assert [c.over.edge for c in up.crossings] == [c.under.edge for c in down.crossings]


def test_split_triangles_no_inter_crossings(split_k6):
    scene = build_scene_diagram(split_k6)
    a = {scene.edge_index[e] for e in [(1, 2), (2, 3), (1, 3)]}
    b = {scene.edge_index[e] for e in [(4, 5), (5, 6), (4, 6)]}
    assert not [c for c in scene.crossings if {c.over.edge, c.under.edge} & a and {c.over.edge, c.under.edge} & b]


def scaled(e, k, shift=(0, 0, 0)):
    verts = [tuple(k * c + s for c, s in zip(v, shift)) for v in e.vertices]
    bends = {key: [tuple(k * c + s for c, s in zip(p, shift)) for p in pts] for key, pts in e.bends.items()}
    return PLEmbedding(e.n, verts, bends)


def signature(scene):
    return sorted((c.over.edge, c.under.edge, c.over.param, c.under.param, c.sign) for c in scene.crossings)


@pytest.mark.parametrize("k,shift", [(3, (0, 0, 0)), (Fraction(1, 7), (5, -2, 11))])
def test_scale_and_translation_invariance(k, shift, hopf_k6):
    d = find_generic_direction(hopf_k6)
    assert signature(build_scene_diagram(hopf_k6, d)) == signature(build_scene_diagram(scaled(hopf_k6, k, shift), d))


@settings(max_examples=15, deadline=None)
@given(st.integers(4, 7), st.integers(0, 10**6))
def test_every_crossing_listed_twice(n, seed):
    scene = build_scene_diagram(random_embedding(n, seed))
    seen = Counter()
    for k, lst in enumerate(scene.edge_passages):
        for ep in lst:
            c = scene.crossings[ep.crossing]
            seen[(ep.crossing, ep.over)] += 1
            assert k == (c.over.edge if ep.over else c.under.edge)
            assert ep.other_edge == (c.under.edge if ep.over else c.over.edge)
            assert ep.sign == c.sign
    assert set(seen) == {(c.id, b) for c in scene.crossings for b in (True, False)}
    assert all(v == 1 for v in seen.values())


def test_edge_passages_ordered_along_edge():
    scene = build_scene_diagram(random_embedding(8, 3))
    for k, lst in enumerate(scene.edge_passages):
        params = []
        for ep in lst:
            c = scene.crossings[ep.crossing]
            loc = c.over if ep.over else c.under
            params.append((loc.segment, loc.param))
        assert params == sorted(params)
