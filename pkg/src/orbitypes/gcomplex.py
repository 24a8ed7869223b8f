"""Finite simplicial complexes carrying simplicial group actions.

A *point* is the index of a simplex in the working complex and stands for its
barycenter.  Once an action is regular, every point of the open simplex has the
isotropy of its barycenter, so these finitely many points see every orbit type.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from functools import cached_property
from itertools import combinations
from typing import Iterable, Optional, Sequence

from .group_core import (
    FiniteGroup,
    GroupError,
    Subgroup,
    conjugacy_representative,
    generate_group,
    group_pi0,
    subgroup_key,
)
from .groupoid import (
    ActionGroupoid,
    TableGroupoid,
    blocks_of,
    is_isomorphic,
    numbered_components,
    restrict_objects,
)

Point = int
Simplex = tuple[int, ...]


class ComplexError(ValueError):
    pass


class IrregularActionError(ComplexError):
    pass


@dataclass(frozen=True, eq=False)
class SimplicialComplex:
    vertex_count: int
    simplices: tuple[Simplex, ...]

    @classmethod
    def from_facets(cls, vertex_count: int, facets: Iterable[Sequence[int]]) -> "SimplicialComplex":
        if vertex_count < 0:
            raise ComplexError("vertex_count must be non-negative")
        found: set[Simplex] = set()
        for k, facet in enumerate(facets):
            f = tuple(int(v) for v in facet)
            if not f:
                raise ComplexError(f"facet {k} is empty")
            if len(set(f)) != len(f):
                raise ComplexError(f"facet {k} repeats a vertex")
            if any(v < 0 or v >= vertex_count for v in f):
                raise ComplexError(f"facet {k} has a vertex outside 0..{vertex_count - 1}")
            f = tuple(sorted(f))
            if f in found:
                continue
            for r in range(1, len(f) + 1):
                found.update(combinations(f, r))
        return cls(vertex_count, tuple(sorted(found, key=lambda s: (len(s), s))))

    def __len__(self) -> int:
        return len(self.simplices)

    @cached_property
    def index(self) -> dict[Simplex, int]:
        return {s: i for i, s in enumerate(self.simplices)}

    @cached_property
    def dims(self) -> tuple[int, ...]:
        return tuple(len(s) - 1 for s in self.simplices)

    @property
    def dim(self) -> int:
        return max(self.dims, default=-1)

    @cached_property
    def faces(self) -> tuple[tuple[int, ...], ...]:
        """Proper faces of each simplex, as indices."""
        idx = self.index
        return tuple(
            tuple(idx[f] for r in range(1, len(s)) for f in combinations(s, r))
            for s in self.simplices
        )

    @cached_property
    def facet_indices(self) -> tuple[int, ...]:
        has_coface = set()
        for fs in self.faces:
            has_coface.update(fs)
        return tuple(i for i in range(len(self.simplices)) if i not in has_coface)

    @cached_property
    def vertex_simplices(self) -> tuple[int, ...]:
        """Index of the 0-simplex ``(v,)`` for each vertex, or -1 if absent."""
        return tuple(self.index.get((v,), -1) for v in range(self.vertex_count))

    def face_pairs(self, subset: Optional[Iterable[int]] = None) -> list[tuple[int, int]]:
        if subset is None:
            return [(i, j) for i, fs in enumerate(self.faces) for j in fs]
        keep = set(subset)
        return [(i, j) for i in keep for j in self.faces[i] if j in keep]

    def closure(self, points: Iterable[int]) -> set[int]:
        out: set[int] = set()
        for p in points:
            out.add(p)
            out.update(self.faces[p])
        return out


def connected_components(K: SimplicialComplex, subset: Optional[Iterable[int]] = None) -> list[list[int]]:
    """Components under the face relation, numbered by least simplex index."""
    if subset is None:
        comp = numbered_components(len(K), K.face_pairs())
        return blocks_of(comp)
    members = sorted(set(subset))
    pos = {p: i for i, p in enumerate(members)}
    comp = numbered_components(
        len(members), ((pos[a], pos[b]) for a, b in K.face_pairs(members))
    )
    return [[members[i] for i in block] for block in blocks_of(comp)]


def component_ids(K: SimplicialComplex, subset: Optional[Iterable[int]] = None) -> dict[int, int]:
    return {p: c for c, block in enumerate(connected_components(K, subset)) for p in block}


def disjoint_union(a: SimplicialComplex, b: SimplicialComplex) -> SimplicialComplex:
    n = a.vertex_count
    facets = [a.simplices[i] for i in a.facet_indices]
    facets += [tuple(v + n for v in b.simplices[i]) for i in b.facet_indices]
    return SimplicialComplex.from_facets(n + b.vertex_count, facets)


# -- actions -------------------------------------------------------------------


@dataclass(frozen=True, eq=False)
class SimplicialAction:
    """A finite group acting on a complex through vertex permutations.

    ``orientation`` optionally orders the two ends of every edge in a
    group-invariant way that is acyclic on each simplex; products use it to
    order simplices.  ``None`` means the vertex index order.
    """

    group: FiniteGroup
    complex: SimplicialComplex
    vertex_map: tuple[tuple[int, ...], ...]
    subdivision_depth: int = 0
    orientation: Optional[frozenset[tuple[int, int]]] = field(default=None, repr=False)

    @classmethod
    def tautological(
        cls,
        group: FiniteGroup,
        complex: SimplicialComplex,
        orientation: Optional[frozenset[tuple[int, int]]] = None,
    ) -> "SimplicialAction":
        """The action of a permutation group on the vertices it permutes."""
        if group.perms is None:
            raise ComplexError("group carries no permutations")
        n = complex.vertex_count
        vmap = []
        for p in group.perms:
            if len(p) < n or any(p[v] >= n for v in range(n)):
                raise ComplexError("group does not preserve the vertex set")
            vmap.append(tuple(p[:n]))
        act = cls(group, complex, tuple(vmap), orientation=orientation)
        act.validate()
        return act

    def validate(self) -> None:
        G, K = self.group, self.complex
        if len(self.vertex_map) != G.order:
            raise ComplexError("one vertex permutation per group element is required")
        n = K.vertex_count
        for p in self.vertex_map:
            if sorted(p) != list(range(n)):
                raise ComplexError("vertex map entries must be permutations")
        for a in G.elements():
            pa = self.vertex_map[a]
            for b in G.elements():
                pb, pab = self.vertex_map[b], self.vertex_map[G.mul[a][b]]
                if any(pab[v] != pa[pb[v]] for v in range(n)):
                    raise ComplexError("vertex map is not a homomorphism")
        idx = K.index
        for g in G.generator_witness:
            p = self.vertex_map[g]
            for s in K.simplices:
                if tuple(sorted(p[v] for v in s)) not in idx:
                    raise ComplexError(f"element {g} maps simplex {s} to a non-simplex")
        if self.orientation is not None and not self.orientation_invariant():
            raise ComplexError("orientation is not preserved by the group")

    def orientation_invariant(self) -> bool:
        if self.orientation is None:
            edges = {s for s in self.complex.simplices if len(s) == 2}
            return all(
                self.vertex_map[g][u] < self.vertex_map[g][v]
                for g in self.group.generator_witness
                for u, v in edges
            )
        return all(
            (self.vertex_map[g][u], self.vertex_map[g][v]) in self.orientation
            for g in self.group.generator_witness
            for u, v in self.orientation
        )

    def ordered(self, s: Simplex) -> Simplex:
        if self.orientation is None:
            return s
        o = self.orientation
        return tuple(sorted(s, key=lambda v: sum((u, v) in o for u in s)))

    # -- derived tables ------------------------------------------------------

    @cached_property
    def simplex_map(self) -> tuple[tuple[int, ...], ...]:
        """``simplex_map[g][i]`` is the index of ``g`` applied to simplex ``i``."""
        idx = self.complex.index
        return tuple(
            tuple(idx[tuple(sorted(p[v] for v in s))] for s in self.complex.simplices)
            for p in self.vertex_map
        )

    @cached_property
    def _iso_masks(self) -> tuple[int, ...]:
        G = self.group
        vmask = []
        for v in range(self.complex.vertex_count):
            m = 0
            for g in G.elements():
                if self.vertex_map[g][v] == v:
                    m |= 1 << g
            vmask.append(m)
        full = (1 << G.order) - 1
        out = []
        for s in self.complex.simplices:
            m = full
            for v in s:
                m &= vmask[v]
            out.append(m)
        return tuple(out)

    @cached_property
    def regular(self) -> bool:
        """Setwise stabilizers of simplices fix them pointwise."""
        for g in self.group.elements():
            row = self.simplex_map[g]
            for i, m in enumerate(self._iso_masks):
                if row[i] == i and not (m >> g) & 1:
                    return False
        return True

    def iso_mask(self, x: Point) -> int:
        return self._iso_masks[x]

    @cached_property
    def _isotropy(self) -> tuple[Subgroup, ...]:
        cache: dict[int, Subgroup] = {}
        out = []
        for m in self._iso_masks:
            if m not in cache:
                elems = tuple(g for g in self.group.elements() if (m >> g) & 1)
                cache[m] = Subgroup(self.group, elems)
            out.append(cache[m])
        return tuple(out)

    @property
    def points(self) -> range:
        return range(len(self.complex))

    def act(self, g: int, x: Point) -> Point:
        return self.simplex_map[g][x]

    @cached_property
    def orbit_ids(self) -> tuple[int, ...]:
        return tuple(
            numbered_components(
                len(self.complex),
                ((x, self.simplex_map[g][x]) for g in self.group.generator_witness for x in self.points),
            )
        )

    def action_groupoid(self) -> ActionGroupoid:
        return ActionGroupoid(list(self.points), self.group, self.simplex_map, _symmetric(self.complex.face_pairs()))


def _symmetric(pairs: Iterable[tuple[int, int]]) -> set[tuple[int, int]]:
    out = set()
    for a, b in pairs:
        out.add((a, b))
        out.add((b, a))
    return out


def isotropy(action: SimplicialAction, x: Point) -> Subgroup:
    if not action.regular:
        raise IrregularActionError("isotropy of barycenters needs a regular action")
    return action._isotropy[x]


def check_regular(action: SimplicialAction) -> bool:
    return action.regular


# -- subdivision -----------------------------------------------------------------


def barycentric_subdivision(K: SimplicialComplex) -> SimplicialComplex:
    faces_of = {s: [t for t in (K.simplices[j] for j in K.faces[i])] + [s] for i, s in enumerate(K.simplices)}
    idx = K.index
    facets = []
    for i in K.facet_indices:
        s = K.simplices[i]
        facets.extend(_maximal_chains(s, faces_of, idx))
    return SimplicialComplex.from_facets(len(K), facets)


def _maximal_chains(s: Simplex, faces_of, idx) -> list[tuple[int, ...]]:
    if len(s) == 1:
        return [(idx[s],)]
    out = []
    for v in s:
        sub = tuple(u for u in s if u != v)
        for chain in _maximal_chains(sub, faces_of, idx):
            out.append(chain + (idx[s],))
    return out


def subdivide_action(action: SimplicialAction) -> SimplicialAction:
    K = action.complex
    sd = barycentric_subdivision(K)
    dims = K.dims
    orientation = frozenset(
        (u, v) if dims[u] < dims[v] else (v, u)
        for s in sd.simplices
        if len(s) == 2
        for u, v in [s]
    )
    return SimplicialAction(
        action.group,
        sd,
        action.simplex_map,
        subdivision_depth=action.subdivision_depth + 1,
        orientation=orientation,
    )


def regularize(action: SimplicialAction, max_depth: int = 2) -> SimplicialAction:
    out = action
    while not out.regular:
        if out.subdivision_depth - action.subdivision_depth >= max_depth:
            bad = [
                (g, x)
                for g in out.group.elements()
                for x in out.points
                if out.act(g, x) == x and not (out.iso_mask(x) >> g) & 1
            ]
            raise IrregularActionError(
                f"still irregular after {max_depth} subdivisions; first offenders {bad[:5]}"
            )
        out = subdivide_action(out)
    return out


# -- fixed sets, orbits, quotients -------------------------------------------------


def _subgroup_mask(H: Subgroup) -> int:
    m = 0
    for h in H.elements:
        m |= 1 << h
    return m


def fixed_subcomplex(action: SimplicialAction, H: Subgroup) -> tuple[Point, ...]:
    """Points fixed by every element of ``H``; closed under faces."""
    if H.parent is not action.group:
        raise GroupError("H is not a subgroup of the acting group")
    if not action.regular:
        raise IrregularActionError("fixed subcomplex needs a regular action")
    hm = _subgroup_mask(H)
    return tuple(x for x in action.points if action.iso_mask(x) & hm == hm)


def orbit_groupoid(action: SimplicialAction, x: Point) -> ActionGroupoid:
    orbit = sorted({action.act(g, x) for g in action.group.elements()})
    full = ActionGroupoid(list(action.points), action.group, action.simplex_map)
    return restrict_objects(full, orbit)


@dataclass(frozen=True, eq=False)
class QuotientSpace:
    classes: tuple[tuple[Point, ...], ...]
    class_of: tuple[int, ...]
    adjacency: frozenset[tuple[int, int]]
    iso_keys: tuple[tuple, ...]
    conj_reps: tuple[int, ...]
    dims: tuple[int, ...]

    def __len__(self) -> int:
        return len(self.classes)

    @cached_property
    def face_classes(self) -> tuple[frozenset[int], ...]:
        """Classes of the proper faces of any member of each class."""
        faces: list[set[int]] = [set() for _ in self.classes]
        for a, b in self.adjacency:
            if self.dims[b] < self.dims[a]:
                faces[a].add(b)
        return tuple(frozenset(f) for f in faces)


def quotient(action: SimplicialAction) -> QuotientSpace:
    if not action.regular:
        raise IrregularActionError("quotient needs a regular action")
    K = action.complex
    class_of = action.orbit_ids
    classes = tuple(tuple(b) for b in blocks_of(class_of))
    adj = set()
    for i, fs in enumerate(K.faces):
        for j in fs:
            a, b = class_of[i], class_of[j]
            adj.add((a, b))
            adj.add((b, a))
    reps = [c[0] for c in classes]
    iso = [isotropy(action, x) for x in reps]
    return QuotientSpace(
        classes=classes,
        class_of=tuple(class_of),
        adjacency=frozenset(adj),
        iso_keys=tuple(subgroup_key(S) for S in iso),
        conj_reps=tuple(conjugacy_representative(S) for S in iso),
        dims=tuple(K.dims[x] for x in reps),
    )


# -- products ---------------------------------------------------------------------


def _staircase(s: Simplex, t: Simplex, n1: int) -> list[tuple[int, ...]]:
    p, q = len(s) - 1, len(t) - 1
    out = []
    for ups in combinations(range(p + q), p):
        i = j = 0
        path = [s[0] * n1 + t[0]]
        upset = set(ups)
        for step in range(p + q):
            if step in upset:
                i += 1
            else:
                j += 1
            path.append(s[i] * n1 + t[j])
        out.append(tuple(path))
    return out


def _product_ready(a: SimplicialAction) -> SimplicialAction:
    return a if a.orientation_invariant() else subdivide_action(a)


def product_action(a: SimplicialAction, b: SimplicialAction) -> SimplicialAction:
    """Coordinatewise action of the product group on the staircase product.

    A factor without a group-invariant edge orientation is subdivided once
    first; the subdivision is ordered by simplex dimension.
    """
    if not (a.regular and b.regular):
        raise IrregularActionError("product_action needs regular factors")
    a, b = _product_ready(a), _product_ready(b)
    K1, K2 = a.complex, b.complex
    n1, n2 = K1.vertex_count, K2.vertex_count
    facets = []
    for i in K1.facet_indices:
        for j in K2.facet_indices:
            facets.extend(_staircase(a.ordered(K1.simplices[i]), b.ordered(K2.simplices[j]), n2))
    K = SimplicialComplex.from_facets(n1 * n2, facets)
    gens = []
    for g in a.group.generator_witness:
        p = a.vertex_map[g]
        gens.append([p[u] * n2 + v for u in range(n1) for v in range(n2)])
    for h in b.group.generator_witness:
        p = b.vertex_map[h]
        gens.append([u * n2 + p[v] for u in range(n1) for v in range(n2)])
    G = generate_group(max(n1 * n2, 1), gens)
    o1 = _edge_order(a)
    o2 = _edge_order(b)
    orientation = frozenset(
        (x, y) if _precedes(x, y, n2, o1, o2) else (y, x)
        for s in K.simplices
        if len(s) == 2
        for x, y in [s]
    )
    return SimplicialAction.tautological(G, K, orientation=orientation)


def _edge_order(a: SimplicialAction) -> set[tuple[int, int]]:
    if a.orientation is not None:
        return set(a.orientation)
    return {s for s in a.complex.simplices if len(s) == 2}


def _precedes(x: int, y: int, n2: int, o1, o2) -> bool:
    (u1, v1), (u2, v2) = divmod(x, n2), divmod(y, n2)
    return (u1 == u2 or (u1, u2) in o1) and (v1 == v2 or (v1, v2) in o2)


def product_projections(a: SimplicialAction, b: SimplicialAction, prod: SimplicialAction) -> tuple[list[int], list[int]]:
    """Vertex projections of the product onto its (possibly subdivided) factors."""
    n2 = _product_ready(b).complex.vertex_count
    n = prod.complex.vertex_count
    return [v // n2 for v in range(n)], [v % n2 for v in range(n)]


# -- pi_0 -------------------------------------------------------------------------


def pi0_transformation_groupoid(action: SimplicialAction) -> ActionGroupoid:
    """``[pi0(X) / pi0(G)]``, verified against the componentwise quotient of ``[X/G]``."""
    G = action.group
    if G.component_subgroup is None:
        raise GroupError("acting group has no component subgroup")
    Q, proj = group_pi0(G)
    comp = component_ids(action.complex)
    blocks = blocks_of([comp[x] for x in action.points])
    for n in G.component_subgroup.elements:
        for block in blocks:
            if comp[action.act(n, block[0])] != comp[block[0]]:
                raise GroupError("identity component moves a connected component")
    reps = [min(g for g in G.elements() if proj.image[g] == q) for q in Q.elements()]
    act = [tuple(comp[action.act(reps[q], b[0])] for b in blocks) for q in Q.elements()]
    pi0 = ActionGroupoid(list(range(len(blocks))), Q, act)
    quot, obj_map, mor_map = componentwise_quotient(action, proj)
    if not is_isomorphic(pi0, quot, obj_map, mor_map(pi0)):
        raise GroupError("pi0 groupoid does not match the componentwise quotient")
    return pi0


def componentwise_quotient(action: SimplicialAction, proj):
    """Quotient of ``[X/G]`` identifying morphisms in one component of ``G x X``.

    Returns the quotient groupoid, the object map from ``pi0`` objects and a
    factory for the morphism map.
    """
    G = action.group
    K = action.complex
    comp = component_ids(K)
    npts = len(K)
    base = ActionGroupoid(list(action.points), G, action.simplex_map)
    N = G.component_subgroup
    pairs = []
    for x in action.points:
        for g in G.elements():
            m = base.morphism(x, g)
            for n in N.elements:
                pairs.append((m, base.morphism(x, G.mul[g][n])))
    for i, fs in enumerate(K.faces):
        for j in fs:
            for g in G.elements():
                pairs.append((base.morphism(i, g), base.morphism(j, g)))
    cls = numbered_components(base.n_morphisms, pairs)
    ncls = max(cls) + 1
    obj_of_point = comp
    nobj = max(comp.values()) + 1 if comp else 0
    sources = [0] * ncls
    targets = [0] * ncls
    labels: list = [None] * ncls
    for m in range(base.n_morphisms):
        c = cls[m]
        s, t = obj_of_point[base.source(m)], obj_of_point[base.target(m)]
        if labels[c] is None:
            labels[c] = base.unpack(m)
            sources[c], targets[c] = s, t
        elif (sources[c], targets[c]) != (s, t):
            raise GroupError("morphism class has inconsistent ends")
    table: dict[tuple[int, int], int] = {}
    for m1 in range(base.n_morphisms):
        x1, g1 = base.unpack(m1)
        y = base.target(m1)
        for g2 in G.elements():
            m2 = base.morphism(y, g2)
            c = cls[base.compose(m2, m1)]
            key = (cls[m2], cls[m1])
            if table.setdefault(key, c) != c:
                raise GroupError("composition does not descend to the quotient")
    # classes composable only through different representatives of one object
    for c2 in range(ncls):
        for c1 in range(ncls):
            if targets[c1] == sources[c2] and (c2, c1) not in table:
                raise GroupError("composable classes lack a composite")
    identities = [cls[base.identity(min(x for x in range(npts) if comp[x] == o))] for o in range(nobj)]
    inverses = [cls[base.inverse(base.morphism(*labels[c]))] for c in range(ncls)]
    quot = TableGroupoid(list(range(nobj)), sources, targets, identities, inverses, table, labels)

    def morphism_map(pi0: ActionGroupoid) -> list[int]:
        out = []
        for m in range(pi0.n_morphisms):
            o, q = pi0.unpack(m)
            x = min(p for p in range(npts) if comp[p] == o)
            g = min(h for h in G.elements() if proj.image[h] == q)
            out.append(cls[base.morphism(x, g)])
        return out

    return quot, list(range(nobj)), morphism_map
