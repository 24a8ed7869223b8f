from __future__ import annotations

import pytest

from orbitypes.group_core import cyclic_group, symmetric_group
from orbitypes.groupoid import (
    ActionGroupoid,
    GroupoidError,
    TableGroupoid,
    blocks_of,
    is_isomorphic,
    numbered_components,
    restrict_objects,
)

from oracles import components


def s3_on_points():
    G = symmetric_group(3)
    act = [tuple(p) for p in G.perms]
    return ActionGroupoid([0, 1, 2], G, act)


def test_numbered_components_match_dfs():
    pairs = [(0, 3), (3, 5), (1, 2), (6, 6)]
    comp = numbered_components(7, pairs)
    theirs = components(range(7), pairs)
    assert sorted(blocks_of(comp)) == sorted(theirs)
    # numbered by least element
    assert comp[0] == 0 and comp[1] == 1 and comp[4] == 2


def test_action_groupoid_axioms_and_counts():
    X = s3_on_points()
    X.check_axioms()
    X.check_action()
    assert X.n_morphisms == 18
    assert X.automorphism_count(0) == 2
    assert X.orbits() == [0, 0, 0]


def test_encoding_round_trip():
    X = s3_on_points()
    for m in range(X.n_morphisms):
        x, g = X.unpack(m)
        assert X.morphism(x, g) == m
        assert X.target(m) == X.act[g][x]
        assert X.compose(X.inverse(m), m) == X.identity(x)


def test_non_composable_raises():
    X = s3_on_points()
    g = next(g for g in X.group.elements() if X.act[g][0] != 0)
    m = X.morphism(0, g)
    with pytest.raises(GroupoidError):
        X.compose(m, m)


def test_bad_action_detected():
    G = cyclic_group(3)
    X = ActionGroupoid([0, 1, 2], G, [(0, 1, 2), (1, 0, 2), (0, 1, 2)])
    with pytest.raises(GroupoidError):
        X.check_action()


def test_adjacency_joins_components_but_not_orbits():
    G = cyclic_group(2)
    X = ActionGroupoid([0, 1, 2, 3], G, [(0, 1, 2, 3), (1, 0, 3, 2)], adjacency=[(1, 2), (2, 1)])
    assert X.orbits() == [0, 0, 1, 1]
    assert X.components() == [0, 0, 0, 0]


def test_restrict_objects():
    G = cyclic_group(2)
    X = ActionGroupoid([0, 1, 2, 3], G, [(0, 1, 2, 3), (1, 0, 3, 2)])
    Y = restrict_objects(X, [2, 3])
    Y.check_axioms()
    assert Y.objects == [2, 3]
    with pytest.raises(GroupoidError):
        restrict_objects(X, [0, 2])


def test_table_groupoid_and_isomorphism():
    G = cyclic_group(2)
    X = ActionGroupoid(["p"], G, [(0,), (0,)])
    T = TableGroupoid(
        objects=["q"],
        sources=[0, 0],
        targets=[0, 0],
        identities=[0],
        inverses=[0, 1],
        table={(0, 0): 0, (0, 1): 1, (1, 0): 1, (1, 1): 0},
    )
    T.check_axioms()
    assert is_isomorphic(X, T, [0], [0, 1])
    assert not is_isomorphic(X, T, [0], [1, 0])
    assert not is_isomorphic(X, T, [0], [0, 0])


def test_broken_table_rejected():
    T = TableGroupoid(
        objects=["q"],
        sources=[0, 0],
        targets=[0, 0],
        identities=[0],
        inverses=[0, 1],
        table={(0, 0): 0, (0, 1): 1, (1, 0): 1, (1, 1): 1},
    )
    with pytest.raises(GroupoidError):
        T.check_axioms()
