from __future__ import annotations

import pytest

from orbitypes.gcomplex import SimplicialAction, SimplicialComplex, isotropy, quotient
from orbitypes.group_core import cyclic_group, generate_group, subgroup_key
from orbitypes.strata import (
    FrontierError,
    check_counting,
    check_counting_all,
    closure_decomposition,
    frontier_poset,
    link_action,
    links_equivariantly_isomorphic,
    normal_type_refinement,
    orbit_type_partition,
    posets_isomorphic,
    product_poset,
    refinement_between,
    refines,
    simplex_face_poset,
    strata,
)

from conftest import SMALL_EXAMPLES, built
from oracles import components


def broken_frontier():
    """C2 fixes the edge uv and swaps two pendant edges at u."""
    u, v, p, q = 0, 1, 2, 3
    K = SimplicialComplex.from_facets(4, [[u, v], [u, p], [u, q]])
    return SimplicialAction.tautological(generate_group(4, [[0, 1, 3, 2]]), K)


# -- partitions ---------------------------------------------------------------------------


def test_dihedral_triangle_partitions(dih3):
    iso = orbit_type_partition(dih3, "iso")
    assert len(iso.blocks) == 2
    sizes = sorted(len(b) for b in iso.blocks.values())
    assert 6 in sizes
    conj = orbit_type_partition(dih3, "conj")
    assert len(conj.blocks) == 2


@pytest.mark.parametrize("name", SMALL_EXAMPLES)
def test_conj_refines_iso(name):
    a = built(name)
    iso = orbit_type_partition(a, "iso")
    conj = orbit_type_partition(a, "conj")
    iso.check(a)
    conj.check(a)
    assert refines(conj, iso)
    assert refines(iso, iso)


def test_dihedral_square_separates_reflection_classes():
    a = built("dihedral_polygon(4)")
    iso = orbit_type_partition(a, "iso")
    conj = orbit_type_partition(a, "conj")
    assert len(conj.blocks) > len(iso.blocks)
    assert not refines(iso, conj)


def test_unknown_mode(rs5):
    with pytest.raises(ValueError):
        orbit_type_partition(rs5, "bogus")
    with pytest.raises(ValueError):
        strata(rs5, "iso", "bogus")


# -- strata ----------------------------------------------------------------------------------


def test_rotation_sphere_strata(rs5):
    st = strata(rs5)
    assert len(st) == 3
    poles = [s for s in st if isotropy(rs5, s.points[0]).order == 5]
    assert len(poles) == 2 and all(len(s.points) == 1 for s in poles)


@pytest.mark.parametrize("name", SMALL_EXAMPLES)
@pytest.mark.parametrize("where", ["source", "quotient"])
def test_strata_partition_points(name, where):
    a = built(name)
    st = strata(a, "iso", where)
    pts = sorted(p for s in st for p in s.points)
    assert pts == list(a.points)


@pytest.mark.parametrize("name", SMALL_EXAMPLES)
def test_quotient_strata_are_orbit_unions(name):
    a = built(name)
    Q = quotient(a)
    for s in strata(a, "iso", "quotient"):
        for c in s.classes:
            assert set(Q.classes[c]) <= set(s.points)


@pytest.mark.parametrize("name", SMALL_EXAMPLES)
def test_source_strata_match_dfs(name):
    a = built(name)
    K = a.complex
    part = orbit_type_partition(a, "iso")
    expected = []
    for pts in part.blocks.values():
        keep = set(pts)
        edges = [(x, y) for x in pts for y in K.faces[x] if y in keep]
        expected += components(pts, edges)
    ours = [list(s.points) for s in strata(a, "iso", "source")]
    assert sorted(ours) == sorted(expected)


# -- frontier order ---------------------------------------------------------------------------


def test_rotation_sphere_order(rs5):
    P = frontier_poset(rs5)
    assert P.frontier_ok
    P.check_order_axioms()
    assert len(P.covers) == 2
    assert len(P.maximal()) == 1 and len(P.minimal()) == 2


@pytest.mark.parametrize("m", [3, 5, 8])
def test_rotation_sphere_poset_is_edge_face_poset(m):
    a = built(f"rotation_sphere({m})")
    P = frontier_poset(a)
    assert posets_isomorphic(P.graph(), simplex_face_poset(1))


def test_torus_poset_is_square_face_poset(torus):
    P = frontier_poset(torus)
    assert len(P) == 9
    target = product_poset(simplex_face_poset(1), simplex_face_poset(1))
    assert posets_isomorphic(P.graph(), target)
    assert not posets_isomorphic(P.graph(), simplex_face_poset(2))


def test_face_poset_sizes():
    assert simplex_face_poset(0).number_of_nodes() == 1
    assert simplex_face_poset(2).number_of_nodes() == 7
    assert product_poset(simplex_face_poset(1), simplex_face_poset(0)).number_of_nodes() == 3


@pytest.mark.parametrize("name", SMALL_EXAMPLES)
@pytest.mark.parametrize("mode", ["iso", "conj"])
@pytest.mark.parametrize("where", ["source", "quotient"])
def test_frontier_and_axioms(name, mode, where):
    P = frontier_poset(built(name), mode, where)
    assert P.frontier_ok
    P.check_order_axioms()
    for a, b in P.covers:
        assert P.geq[a][b] and a != b


def test_closure_decomposition(rs5):
    triv = subgroup_key(rs5.group.trivial_subgroup)
    assert len(closure_decomposition(rs5, triv)) == 3
    pole = subgroup_key(rs5.group.whole)
    parts = closure_decomposition(rs5, pole)
    assert len(parts) == 2
    with pytest.raises(KeyError):
        closure_decomposition(rs5, ("missing",))


@pytest.mark.parametrize("where", ["source", "quotient"])
def test_broken_frontier_is_reported(where):
    a = broken_frontier()
    P = frontier_poset(a, "iso", where)
    assert not P.frontier_ok and P.violations
    with pytest.raises(FrontierError) as exc:
        closure_decomposition(a, subgroup_key(a.group.trivial_subgroup), "iso", where)
    assert exc.value.violations == P.violations


# -- links and refinement ---------------------------------------------------------------------------


def test_pole_links_isomorphic(rs5):
    n, s = rs5.complex.index[(5,)], rs5.complex.index[(6,)]
    assert links_equivariantly_isomorphic(rs5, n, s)
    e = rs5.complex.index[(0, 1)]
    assert not links_equivariantly_isomorphic(rs5, n, e)
    L = link_action(rs5, n)
    L.check()
    assert L.complex.vertex_count == 5


@pytest.mark.parametrize("name", SMALL_EXAMPLES)
def test_refinement_is_bounded(name):
    a = built(name)
    ref = normal_type_refinement(a)
    coarser, finer = refinement_between(a, ref)
    assert coarser and finer
    n_iso = len(orbit_type_partition(a, "iso").blocks)
    n_src = len(strata(a, "iso", "source"))
    assert n_iso <= ref.n_blocks() <= n_src


def test_refinement_on_dihedral_triangle(dih3):
    assert normal_type_refinement(dih3).n_blocks() == 2


# -- counting identities ---------------------------------------------------------------------------


def test_counting_dihedral_triangle(dih3):
    r = check_counting(dih3, cyclic_group(2))
    assert (r.objects, r.objects_sum) == (6, 6)
    assert (r.orbit_classes, r.orbit_classes_sum) == (2, 2)
    assert r.ok


def test_counting_rotation_sphere(rs5):
    r = check_counting(rs5, cyclic_group(5))
    # two poles, four injections each, every injection its own class
    assert (r.objects, r.objects_sum) == (8, 8)
    assert (r.orbit_classes, r.orbit_classes_sum) == (8, 8)


@pytest.mark.parametrize("name", SMALL_EXAMPLES)
def test_counting_all(name):
    for r in check_counting_all(built(name)):
        assert r.ok, r.as_dict()
        d = r.as_dict()["arrows_diagnostic"]
        assert d["actual"] == d["indexed_by_orbits"]
        assert d["indexed_by_points"] >= d["actual"]
