"""Orbit-type partitions, strata, the frontier order, and link data."""

from __future__ import annotations

from dataclasses import dataclass, field
from functools import cached_property
from itertools import product as iproduct
from typing import Literal, Optional

import networkx as nx
from networkx.algorithms.isomorphism import DiGraphMatcher

from .gcomplex import (
    IrregularActionError,
    Point,
    SimplicialAction,
    SimplicialComplex,
    isotropy,
    quotient,
)
from .group_core import (
    FiniteGroup,
    GroupHom,
    Subgroup,
    conjugacy_representative,
    enumerate_homs,
    find_isomorphism,
    group_label,
    pi0_hom_classes,
    subgroup_key,
)
from .groupoid import numbered_components
from .level_structures import level_groupoid

Mode = Literal["iso", "conj"]
Where = Literal["source", "quotient"]


class FrontierError(RuntimeError):
    def __init__(self, message: str, violations: list[tuple[int, int]]) -> None:
        super().__init__(message)
        self.violations = violations


# -- partitions ----------------------------------------------------------------------


@dataclass
class OrbitTypePartition:
    mode: str
    key_of: tuple  # one key per point
    blocks: dict  # key -> tuple of points, in key order
    labels: dict  # key -> readable label

    def check(self, action: SimplicialAction) -> None:
        seen: set[int] = set()
        for key, pts in self.blocks.items():
            for p in pts:
                if p in seen:
                    raise AssertionError("blocks overlap")
                if _key(action, p, self.mode) != key:
                    raise AssertionError(f"point {p} does not match its block key")
                seen.add(p)
        if seen != set(action.points):
            raise AssertionError("blocks do not cover the points")


def _key(action: SimplicialAction, x: Point, mode: str):
    S = isotropy(action, x)
    if mode == "iso":
        return subgroup_key(S)
    if mode == "conj":
        return conjugacy_representative(S)
    raise ValueError(f"unknown mode {mode!r}")


def orbit_type_partition(action: SimplicialAction, mode: Mode = "iso") -> OrbitTypePartition:
    if not action.regular:
        raise IrregularActionError("orbit types need a regular action")
    keys = tuple(_key(action, x, mode) for x in action.points)
    blocks: dict = {}
    labels: dict = {}
    for x, k in enumerate(keys):
        blocks.setdefault(k, []).append(x)
        if k not in labels:
            labels[k] = _label(action, x, mode)
    order = sorted(blocks)
    return OrbitTypePartition(
        mode, keys, {k: tuple(blocks[k]) for k in order}, {k: labels[k] for k in order}
    )


def _label(action: SimplicialAction, x: Point, mode: str) -> str:
    S = isotropy(action, x)
    name = group_label(S.abstract)
    if mode == "conj":
        return f"{name}@{conjugacy_representative(S)}"
    return name


def refines(fine: OrbitTypePartition, coarse: OrbitTypePartition) -> bool:
    image: dict = {}
    for a, b in zip(fine.key_of, coarse.key_of):
        if image.setdefault(a, b) != b:
            return False
    return True


# -- strata ---------------------------------------------------------------------------


@dataclass(frozen=True)
class Stratum:
    key: object
    label: str
    component: int
    points: tuple[Point, ...]
    classes: tuple[int, ...]

    @property
    def name(self) -> str:
        return f"{self.label}#{self.component}"


def strata(action: SimplicialAction, mode: Mode = "iso", where: Where = "quotient") -> list[Stratum]:
    part = orbit_type_partition(action, mode)
    Q = quotient(action)
    K = action.complex
    out: list[Stratum] = []
    for key, pts in part.blocks.items():
        if where == "source":
            members = list(pts)
            keep = set(members)
            pairs = [(a, b) for a in members for b in K.faces[a] if b in keep]
        elif where == "quotient":
            members = sorted({Q.class_of[p] for p in pts})
            keep = set(members)
            pairs = [(a, b) for a, b in Q.adjacency if a in keep and b in keep]
        else:
            raise ValueError(f"unknown location {where!r}")
        pos = {m: i for i, m in enumerate(members)}
        comp = numbered_components(len(members), ((pos[a], pos[b]) for a, b in pairs))
        groups: list[list[int]] = [[] for _ in range(max(comp, default=-1) + 1)]
        for m, c in zip(members, comp):
            groups[c].append(m)
        for c, grp in enumerate(groups):
            if where == "source":
                points = tuple(grp)
                classes = tuple(sorted({Q.class_of[p] for p in grp}))
            else:
                classes = tuple(grp)
                points = tuple(sorted(p for cl in grp for p in Q.classes[cl]))
            out.append(Stratum(key, part.labels[key], c, points, classes))
    return out


# -- frontier order ----------------------------------------------------------------------


@dataclass
class StratumPoset:
    strata: list[Stratum]
    where: str
    closures: list[frozenset[int]]
    cells: list[frozenset[int]]
    geq: list[list[bool]] = field(default_factory=list)
    frontier_ok: bool = True
    violations: list[tuple[int, int]] = field(default_factory=list)

    def __len__(self) -> int:
        return len(self.strata)

    def check_order_axioms(self) -> None:
        n = len(self)
        for a in range(n):
            if not self.geq[a][a]:
                raise AssertionError("relation is not reflexive")
            for b in range(n):
                if a != b and self.geq[a][b] and self.geq[b][a]:
                    raise AssertionError("relation is not antisymmetric")
                if self.geq[a][b]:
                    for c in range(n):
                        if self.geq[b][c] and not self.geq[a][c]:
                            raise AssertionError("relation is not transitive")

    def graph(self) -> nx.DiGraph:
        """Strict order as a digraph with edges from larger to smaller."""
        D = nx.DiGraph()
        D.add_nodes_from(range(len(self)))
        D.add_edges_from(
            (a, b) for a in range(len(self)) for b in range(len(self)) if a != b and self.geq[a][b]
        )
        return D

    @cached_property
    def covers(self) -> list[tuple[int, int]]:
        return sorted(nx.transitive_reduction(self.graph()).edges())

    def maximal(self) -> list[int]:
        return [a for a in range(len(self)) if not any(self.geq[b][a] and b != a for b in range(len(self)))]

    def minimal(self) -> list[int]:
        return [a for a in range(len(self)) if not any(self.geq[a][b] and b != a for b in range(len(self)))]


def _cells(action: SimplicialAction, S: Stratum, where: str) -> frozenset[int]:
    return frozenset(S.points if where == "source" else S.classes)


def _closure(action: SimplicialAction, cells: frozenset[int], where: str, Q) -> frozenset[int]:
    if where == "source":
        return frozenset(action.complex.closure(cells))
    out = set(cells)
    for c in cells:
        out |= Q.face_classes[c]
    return frozenset(out)


def frontier_poset(action: SimplicialAction, mode: Mode = "iso", where: Where = "quotient") -> StratumPoset:
    st = strata(action, mode, where)
    Q = quotient(action)
    cells = [_cells(action, s, where) for s in st]
    closures = [_closure(action, c, where, Q) for c in cells]
    n = len(st)
    geq = [[cells[b] <= closures[a] for b in range(n)] for a in range(n)]
    violations = [
        (a, b)
        for a in range(n)
        for b in range(n)
        if (closures[a] & cells[b]) and not cells[b] <= closures[a]
    ]
    return StratumPoset(st, where, closures, cells, geq, not violations, violations)


def closure_decomposition(
    action: SimplicialAction, key, mode: Mode = "iso", where: Where = "quotient"
) -> list[int]:
    """Indices of the strata whose disjoint union is the closure of the ``key`` strata."""
    P = frontier_poset(action, mode, where)
    if not P.frontier_ok:
        detail = ", ".join(f"{P.strata[a].name} meets {P.strata[b].name}" for a, b in P.violations[:10])
        raise FrontierError(f"frontier condition fails: {detail}", P.violations)
    own = [i for i, s in enumerate(P.strata) if s.key == key]
    if not own:
        raise KeyError(f"no stratum has key {key!r}")
    target = frozenset().union(*(P.closures[i] for i in own))
    parts = [j for j in range(len(P)) if P.cells[j] <= target]
    covered = frozenset().union(*(P.cells[j] for j in parts))
    if covered != target:
        raise AssertionError("closure is not a union of strata")
    return parts


# -- posets ----------------------------------------------------------------------------------


def simplex_face_poset(n: int) -> nx.DiGraph:
    """Nonempty faces of the n-simplex, edges from larger to strictly smaller."""
    faces = [frozenset(c) for r in range(1, n + 2) for c in _subsets(range(n + 1), r)]
    D = nx.DiGraph()
    D.add_nodes_from(faces)
    D.add_edges_from((a, b) for a in faces for b in faces if b < a)
    return D


def _subsets(items, r):
    from itertools import combinations

    return combinations(items, r)


def product_poset(P: nx.DiGraph, Q: nx.DiGraph) -> nx.DiGraph:
    D = nx.DiGraph()
    nodes = list(iproduct(P.nodes, Q.nodes))
    D.add_nodes_from(nodes)

    def geq(G, a, b):
        return a == b or G.has_edge(a, b)

    D.add_edges_from(
        (a, b) for a in nodes for b in nodes if a != b and geq(P, a[0], b[0]) and geq(Q, a[1], b[1])
    )
    return D


def posets_isomorphic(P: nx.DiGraph, Q: nx.DiGraph) -> bool:
    """Isomorphism of strict order relations given as transitively closed digraphs."""
    return P.number_of_nodes() == Q.number_of_nodes() and DiGraphMatcher(P, Q).is_isomorphic()


# -- links ---------------------------------------------------------------------------------


@dataclass
class LinkAction:
    base: Point
    vertices: tuple[int, ...]  # original vertex ids, re-indexed by position
    complex: SimplicialComplex
    cofaces: tuple[Point, ...]  # original coface per link simplex
    isotropy: Subgroup
    vertex_perm: dict  # group element -> permutation of link vertices

    def check(self) -> None:
        simplices = set(self.complex.simplices)
        for g, perm in self.vertex_perm.items():
            for s in simplices:
                if tuple(sorted(perm[v] for v in s)) not in simplices:
                    raise AssertionError("isotropy does not preserve the link")


def link_action(action: SimplicialAction, x: Point) -> LinkAction:
    if not action.regular:
        raise IrregularActionError("links need a regular action")
    K = action.complex
    sigma = set(K.simplices[x])
    cof = [i for i, s in enumerate(K.simplices) if len(s) > len(sigma) and sigma <= set(s)]
    verts = sorted({v for i in cof for v in K.simplices[i]} - sigma)
    pos = {v: i for i, v in enumerate(verts)}
    rest = [tuple(sorted(pos[v] for v in K.simplices[i] if v not in sigma)) for i in cof]
    L = SimplicialComplex(len(verts), tuple(sorted(set(rest), key=lambda s: (len(s), s))))
    order = {s: i for i, s in enumerate(L.simplices)}
    cofaces = [0] * len(rest)
    for i, r in zip(cof, rest):
        cofaces[order[r]] = i
    S = isotropy(action, x)
    perms = {g: tuple(pos[action.vertex_map[g][v]] for v in verts) for g in sorted(S.elements)}
    return LinkAction(x, tuple(verts), L, tuple(cofaces), S, perms)


def _link_graph(link: LinkAction, gens: list[int]) -> nx.DiGraph:
    D = nx.DiGraph()
    simplices = link.complex.simplices
    idx = {s: i for i, s in enumerate(simplices)}
    for i, s in enumerate(simplices):
        D.add_node(i, dim=len(s) - 1)
    for i, s in enumerate(simplices):
        for v in s:
            if len(s) > 1:
                D.add_edge(i, idx[tuple(u for u in s if u != v)], label=("face",))
    for k, g in enumerate(gens):
        perm = link.vertex_perm[g]
        for i, s in enumerate(simplices):
            j = idx[tuple(sorted(perm[v] for v in s))]
            if D.has_edge(i, j):
                D[i][j]["label"] = D[i][j]["label"] + (k,)
            else:
                D.add_edge(i, j, label=(k,))
    return D


def links_equivariantly_isomorphic(action: SimplicialAction, x0: Point, x1: Point) -> bool:
    """Some isomorphism of isotropy groups admits an equivariant isomorphism of links."""
    L0, L1 = link_action(action, x0), link_action(action, x1)
    if subgroup_key(L0.isotropy) != subgroup_key(L1.isotropy):
        return False
    if sorted(map(len, L0.complex.simplices)) != sorted(map(len, L1.complex.simplices)):
        return False
    A0, A1 = L0.isotropy.abstract, L1.isotropy.abstract
    emb0, emb1 = L0.isotropy.embedding.image, L1.isotropy.embedding.image
    gens0 = [emb0[a] for a in A0.generator_witness]
    G0 = _link_graph(L0, gens0)
    match = lambda a, b: a["dim"] == b["dim"]
    ematch = lambda a, b: a["label"] == b["label"]
    for phi in enumerate_homs(A0, A1, injective_only=True):
        gens1 = [emb1[phi.image[a]] for a in A0.generator_witness]
        G1 = _link_graph(L1, gens1)
        if DiGraphMatcher(G0, G1, node_match=match, edge_match=ematch).is_isomorphic():
            return True
    return False


def _fixed_link_data(action: SimplicialAction, x: Point, S: Subgroup) -> dict[Subgroup, tuple[int, int]]:
    """``L -> (dim, reduced Euler characteristic)`` of the fixed set of the local link."""
    K = action.complex
    sigma = set(K.simplices[x])
    d = len(sigma) - 1
    cof = [i for i, s in enumerate(K.simplices) if len(s) > len(sigma) and sigma <= set(s)]
    masks = [action.iso_mask(i) for i in cof]
    out = {}
    boundary = (-1) ** (d - 1) if d >= 1 else -1
    for L in S.parent.subgroups:
        if not L.issubset(S):
            continue
        lm = 0
        for g in L.elements:
            lm |= 1 << g
        fixed = [len(K.simplices[i]) - len(sigma) - 1 for i, m in zip(cof, masks) if m & lm == lm]
        link_dim = max(fixed, default=-1)
        link_chi = -1 + sum((-1) ** k for k in fixed)
        out[L] = (d + link_dim, -boundary * link_chi)
    return out


@dataclass
class NormalTypeRefinement:
    key_of: tuple
    blocks: dict
    signatures: dict

    def n_blocks(self) -> int:
        return len(self.blocks)


def normal_type_refinement(action: SimplicialAction) -> NormalTypeRefinement:
    """Refine the isomorphism partition by the fixed-point data of local links.

    Points with isotropy ``S`` are compared through the abstract representative
    ``H`` of ``S``; the data is pulled back along a stored isomorphism and made
    canonical by minimising over ``Aut(H)``.
    """
    G = action.group
    reps: dict[tuple, FiniteGroup] = {}
    autos: dict[tuple, list[GroupHom]] = {}
    isos: dict[int, GroupHom] = {}
    keys = []
    for x in action.points:
        S = isotropy(action, x)
        k = subgroup_key(S)
        if k not in reps:
            reps[k] = S.abstract
            autos[k] = enumerate_homs(S.abstract, S.abstract, injective_only=True)
        idx = G.subgroup_index[S]
        if idx not in isos:
            isos[idx] = find_isomorphism(reps[k], S.abstract).then(S.embedding)
        data = _fixed_link_data(action, x, S)
        H = reps[k]
        psi = isos[idx]
        best = None
        for alpha in autos[k]:
            sig = []
            for L in H.subgroups:
                image = G.subgroup([psi.image[alpha.image[h]] for h in L.elements])
                sig.append(data[image])
            sig = tuple(sig)
            if best is None or sig < best:
                best = sig
        keys.append((k, best))
    blocks: dict = {}
    for x, k in enumerate(keys):
        blocks.setdefault(k, []).append(x)
    order = sorted(blocks)
    return NormalTypeRefinement(
        tuple(keys), {k: tuple(blocks[k]) for k in order}, {k: k[1] for k in order}
    )


def refinement_between(action: SimplicialAction, ref: NormalTypeRefinement) -> tuple[bool, bool]:
    """(coarser than source strata, finer than the iso partition)."""
    st = strata(action, "iso", "source")
    coarser = all(len({ref.key_of[p] for p in s.points}) == 1 for s in st)
    part = orbit_type_partition(action, "iso")
    finer = all(k[0] == part.key_of[x] for x, k in enumerate(ref.key_of))
    return coarser, finer


# -- counting identities -----------------------------------------------------------------------


@dataclass
class CountingReport:
    h_label: str
    h_order: int
    objects: int
    objects_sum: int
    orbit_classes: int
    orbit_classes_sum: int
    breakdown: list[dict]
    arrows: int
    arrows_by_orbit: int
    arrows_by_point: int

    @property
    def ok(self) -> bool:
        return self.objects == self.objects_sum and self.orbit_classes == self.orbit_classes_sum

    def as_dict(self) -> dict:
        return {
            "H": self.h_label,
            "order": self.h_order,
            "a": {"lhs": self.objects, "rhs": self.objects_sum, "ok": self.objects == self.objects_sum},
            "b": {
                "lhs": self.orbit_classes,
                "rhs": self.orbit_classes_sum,
                "ok": self.orbit_classes == self.orbit_classes_sum,
            },
            "breakdown": self.breakdown,
            "arrows_diagnostic": {
                "actual": self.arrows,
                "indexed_by_orbits": self.arrows_by_orbit,
                "indexed_by_points": self.arrows_by_point,
            },
            "ok": self.ok,
        }


def check_counting(action: SimplicialAction, H: FiniteGroup) -> CountingReport:
    G = action.group
    X = level_groupoid(action, H)
    part = orbit_type_partition(action, "iso")
    Q = quotient(action)
    lhs_a = X.n_objects
    lhs_b = len(set(X.orbits()))
    rhs_a = rhs_b = 0
    by_orbit = by_point = 0
    breakdown = []
    for key, pts in part.blocks.items():
        K = isotropy(action, pts[0]).abstract
        injections = len(enumerate_homs(H, K, injective_only=True)) if K.order % H.order == 0 else 0
        classes = len(pi0_hom_classes(H, K, injective_only=True)) if injections else 0
        orbit_classes = sorted({Q.class_of[p] for p in pts})
        rhs_a += len(pts) * injections
        rhs_b += len(orbit_classes) * classes
        # the arrow display read two ways; only the first matches |X(H)_1|
        by_orbit += sum(len(Q.classes[c]) * G.order for c in orbit_classes) * injections
        by_point += sum(len(Q.classes[Q.class_of[p]]) * G.order for p in pts) * injections
        breakdown.append(
            {
                "K": part.labels[key],
                "points": len(pts),
                "orbit_classes": len(orbit_classes),
                "injections": injections,
                "injection_classes": classes,
            }
        )
    return CountingReport(
        group_label(H), H.order, lhs_a, rhs_a, lhs_b, rhs_b, breakdown, X.n_morphisms, by_orbit, by_point
    )


def subgroup_iso_classes(G: FiniteGroup) -> list[Subgroup]:
    """Least subgroup of each isomorphism class, in subgroup order."""
    seen: dict[tuple, Subgroup] = {}
    for S in G.subgroups:
        seen.setdefault(subgroup_key(S), S)
    return list(seen.values())


def check_counting_all(action: SimplicialAction) -> list[CountingReport]:
    return [check_counting(action, S.abstract) for S in subgroup_iso_classes(action.group)]


__all__ = [
    "FrontierError",
    "LinkAction",
    "NormalTypeRefinement",
    "OrbitTypePartition",
    "CountingReport",
    "Stratum",
    "StratumPoset",
    "check_counting",
    "check_counting_all",
    "closure_decomposition",
    "frontier_poset",
    "link_action",
    "links_equivariantly_isomorphic",
    "normal_type_refinement",
    "orbit_type_partition",
    "posets_isomorphic",
    "product_poset",
    "refinement_between",
    "refines",
    "simplex_face_poset",
    "strata",
    "subgroup_iso_classes",
]
