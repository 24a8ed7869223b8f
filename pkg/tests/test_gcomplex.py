from __future__ import annotations

import pytest

from orbitypes.gcomplex import (
    ComplexError,
    IrregularActionError,
    SimplicialAction,
    SimplicialComplex,
    barycentric_subdivision,
    check_regular,
    component_ids,
    connected_components,
    disjoint_union,
    fixed_subcomplex,
    isotropy,
    orbit_groupoid,
    pi0_transformation_groupoid,
    product_action,
    product_projections,
    quotient,
    regularize,
    subdivide_action,
)
from orbitypes.gcomplex import _product_ready
from orbitypes.group_core import generate_group
from orbitypes.scenario import example_action

from conftest import SMALL_EXAMPLES, built
from oracles import (
    components,
    face_adjacency,
    pointwise_stabilizer,
    setwise_stabilizer,
    simplices_of,
)


def triangle_boundary(gens):
    K = SimplicialComplex.from_facets(3, [[0, 1], [1, 2], [0, 2]])
    return SimplicialAction.tautological(generate_group(3, gens), K)


# -- complexes ---------------------------------------------------------------------


def test_face_closure_counts():
    assert len(SimplicialComplex.from_facets(3, [[0, 1], [1, 2]])) == 5
    assert len(SimplicialComplex.from_facets(3, [])) == 0
    assert len(SimplicialComplex.from_facets(3, [[0, 1, 2]])) == 7


def test_simplices_match_oracle_and_order():
    facets = [[0, 1, 2], [2, 3], [4]]
    K = SimplicialComplex.from_facets(5, facets)
    assert set(K.simplices) == simplices_of(facets)
    assert list(K.simplices) == sorted(K.simplices, key=lambda s: (len(s), s))


@pytest.mark.parametrize("facets", [[[0, 5]], [[1, 1]], [[]]])
def test_bad_facets_rejected(facets):
    with pytest.raises(ComplexError):
        SimplicialComplex.from_facets(3, facets)


def test_components_match_dfs():
    facets = [[0, 1], [1, 2], [3, 4], [5]]
    K = SimplicialComplex.from_facets(6, facets)
    ours = sorted(sorted(K.simplices[i] for i in c) for c in connected_components(K))
    simp = simplices_of(facets)
    theirs = sorted(components(simp, face_adjacency(simp)))
    assert ours == theirs
    ids = component_ids(K)
    assert ids[0] == 0


def test_disjoint_union_adds_components():
    a = SimplicialComplex.from_facets(3, [[0, 1], [1, 2], [0, 2]])
    b = SimplicialComplex.from_facets(2, [[0], [1]])
    u = disjoint_union(a, b)
    assert len(connected_components(u)) == len(connected_components(a)) + len(connected_components(b))


def test_pole_vertices_are_two_components(rs5):
    poles = fixed_subcomplex(rs5, rs5.group.whole)
    assert len(connected_components(rs5.complex, poles)) == 2


# -- subdivision and regularity ------------------------------------------------------------


def test_edge_subdivision():
    K = SimplicialComplex.from_facets(2, [[0, 1]])
    B = barycentric_subdivision(K)
    assert B.vertex_count == 3
    assert len(B) == 5


def test_subdivision_vertex_count_equals_simplex_count():
    K = SimplicialComplex.from_facets(4, [[0, 1, 2], [1, 2, 3]])
    assert barycentric_subdivision(K).vertex_count == len(K)


def test_rotation_transports_to_hexagon_rotation():
    a = triangle_boundary([[1, 2, 0]])
    b = subdivide_action(a)
    assert b.complex.vertex_count == 6
    assert len([s for s in b.complex.simplices if len(s) == 2]) == 6
    r = b.group.generator_witness[0]
    # the rotation moves every hexagon vertex and cycles original vertices among themselves
    assert all(b.vertex_map[r][v] != v for v in range(6))


def test_dihedral_triangle_needs_one_subdivision():
    a = triangle_boundary([[1, 2, 0], [0, 2, 1]])
    assert not check_regular(a)
    r = regularize(a)
    assert r.regular and r.subdivision_depth == 1
    assert len(r.complex) == 12


def test_regularize_is_idempotent(rs5):
    assert rs5.regular and rs5.subdivision_depth == 0
    assert regularize(rs5) is rs5


def test_free_polygon_already_regular():
    K = SimplicialComplex.from_facets(4, [[i, (i + 1) % 4] for i in range(4)])
    a = SimplicialAction.tautological(generate_group(4, [[1, 2, 3, 0]]), K)
    assert regularize(a).subdivision_depth == 0


@pytest.mark.parametrize("name", SMALL_EXAMPLES)
def test_regularity_exhaustive(name):
    a = built(name)
    perms = a.vertex_map
    for s in a.complex.simplices:
        assert setwise_stabilizer(perms, s) == pointwise_stabilizer(perms, s)


def test_isotropy_requires_regular():
    a = triangle_boundary([[1, 2, 0], [0, 2, 1]])
    with pytest.raises(IrregularActionError):
        isotropy(a, 0)


def test_vertex_set_must_be_preserved():
    K = SimplicialComplex.from_facets(2, [[0, 1]])
    with pytest.raises(ComplexError):
        SimplicialAction.tautological(generate_group(3, [[2, 1, 0]]), K)


def test_non_simplicial_map_rejected():
    K = SimplicialComplex.from_facets(3, [[0, 1], [1, 2]])
    with pytest.raises(ComplexError):
        SimplicialAction.tautological(generate_group(3, [[1, 0, 2]]), K)


# -- isotropy and fixed sets ------------------------------------------------------------------


def test_isotropy_examples(rs5, dih3):
    poles = [i for i, s in enumerate(rs5.complex.simplices) if s in ((5,), (6,))]
    for p in poles:
        assert isotropy(rs5, p).order == 5
    K = dih3.complex
    # new vertices 3.. are barycentres; edge midpoints have one reflection each
    for x, s in enumerate(K.simplices):
        if len(s) == 1:
            assert isotropy(dih3, x).order == 2
        else:
            assert isotropy(dih3, x).order == 1


@pytest.mark.parametrize("name", SMALL_EXAMPLES)
def test_isotropy_matches_pointwise_stabilizer(name):
    a = built(name)
    for x, s in enumerate(a.complex.simplices):
        assert list(isotropy(a, x).elements) == pointwise_stabilizer(a.vertex_map, s)


def test_fixed_subcomplex_examples(rs5, dih3):
    assert len(fixed_subcomplex(rs5, rs5.group.trivial_subgroup)) == len(rs5.complex)
    assert len(fixed_subcomplex(rs5, rs5.group.whole)) == 2
    assert fixed_subcomplex(dih3, dih3.group.whole) == ()


@pytest.mark.parametrize("name", SMALL_EXAMPLES)
def test_fixed_sets_are_face_closed(name):
    a = built(name)
    for S in a.group.subgroups:
        pts = set(fixed_subcomplex(a, S))
        for x in pts:
            assert set(a.complex.faces[x]) <= pts


# -- orbits and quotient ---------------------------------------------------------------------


def test_orbit_groupoids(rs5):
    pole = rs5.complex.index[(5,)]
    P = orbit_groupoid(rs5, pole)
    assert P.n_objects == 1 and P.automorphism_count(0) == 5
    free = rs5.complex.index[(0, 1)]
    F = orbit_groupoid(rs5, free)
    assert F.n_objects == 5 and F.n_morphisms == 25
    assert all(F.automorphism_count(i) == 1 for i in range(5))
    assert len(set(F.components())) == 1


def test_quotient_examples(rs5, dih3):
    Q = quotient(rs5)
    assert sum(1 for c in Q.classes if len(c) == 1) == 2
    D = quotient(dih3)
    nontrivial = [k for k, c in enumerate(D.classes) if isotropy(dih3, c[0]).order > 1]
    assert len(nontrivial) == 2


def test_transitive_free_polygon_has_one_vertex_class():
    K = SimplicialComplex.from_facets(5, [[i, (i + 1) % 5] for i in range(5)])
    a = SimplicialAction.tautological(generate_group(5, [[1, 2, 3, 4, 0]]), K)
    Q = quotient(a)
    assert sum(1 for c in Q.classes if a.complex.dims[c[0]] == 0) == 1


@pytest.mark.parametrize("name", SMALL_EXAMPLES)
def test_quotient_classes_are_orbits(name):
    a = built(name)
    Q = quotient(a)
    for cls in Q.classes:
        x = cls[0]
        assert sorted({a.act(g, x) for g in a.group.elements()}) == list(cls)


# -- products ------------------------------------------------------------------------------------


def test_edge_times_edge_is_two_triangles():
    K = SimplicialComplex.from_facets(2, [[0, 1]])
    a = SimplicialAction.tautological(generate_group(2, []), K)
    p = product_action(a, a)
    assert sum(1 for s in p.complex.simplices if len(s) == 3) == 2
    # 4 vertices, 4 sides plus one diagonal, 2 triangles
    assert len(p.complex) == 11


def test_product_with_point_is_isomorphic():
    rs5 = example_action("rotation_sphere(5)")
    pt = example_action("point")
    p = product_action(rs5, pt)
    assert len(p.complex) == len(rs5.complex)
    assert p.group.order == rs5.group.order
    assert sorted(isotropy(p, x).order for x in p.points) == sorted(isotropy(rs5, x).order for x in rs5.points)


def test_product_components_and_projections():
    a = example_action("two_squares")
    b = example_action("rotation_sphere(3)")
    p = product_action(a, b)
    assert len(connected_components(p.complex)) == 2
    pa, pb = product_projections(a, b, p)
    Ka, Kb = _product_ready(a).complex, _product_ready(b).complex
    for s in p.complex.simplices:
        assert tuple(sorted({pa[v] for v in s})) in Ka.index
        assert tuple(sorted({pb[v] for v in s})) in Kb.index


# -- pi0 of the transformation groupoid ------------------------------------------------------------


def test_two_squares_pi0_groupoid():
    a = built("two_squares")
    P = pi0_transformation_groupoid(a)
    assert P.n_objects == 2
    assert P.group.order == 2
    assert set(P.act[1]) == {0, 1} and P.act[1][0] == 1


def test_connected_complex_pi0_has_one_object():
    a = example_action("rotation_sphere(3)")
    G = generate_group(5, [[1, 2, 0, 3, 4]], component_generators=[0])
    b = SimplicialAction.tautological(G, a.complex)
    assert pi0_transformation_groupoid(b).n_objects == 1


def test_trivial_component_quotient_on_three_components():
    K = SimplicialComplex.from_facets(3, [[0], [1], [2]])
    G = generate_group(3, [], component_generators=[])
    P = pi0_transformation_groupoid(SimplicialAction.tautological(G, K))
    assert P.n_objects == 3 and P.n_morphisms == 3


def test_pi0_requires_component_data(rs5):
    with pytest.raises(Exception):
        pi0_transformation_groupoid(rs5)
