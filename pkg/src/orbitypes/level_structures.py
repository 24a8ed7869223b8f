"""Fixed points with level structure and the database category built from them.

For an abstract group ``H`` the groupoid ``X(H)`` has objects ``(x, phi)``
with ``phi: H -> iso(x)`` injective, and a morphism ``(x, phi) -> (g.x,
c_g . phi)`` for every group element ``g``.  Levels are stored as image arrays
in the acting group.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from functools import cached_property
from typing import Optional

from .gcomplex import IrregularActionError, Point, SimplicialAction, isotropy
from .group_core import (
    FiniteGroup,
    GroupError,
    GroupHom,
    HomClass,
    Subgroup,
    compose_hom_classes,
    enumerate_homs,
    find_isomorphism,
    group_label,
    hom_class_of,
    homs_into_subgroup,
    identity_hom,
    pi0_hom_classes,
    subgroup_key,
)
from .groupoid import ActionGroupoid


@dataclass(frozen=True)
class LevelPoint:
    point: Point
    level: GroupHom

    @property
    def image(self) -> tuple[int, ...]:
        return self.level.image


class LevelGroupoid(ActionGroupoid):
    """``X(H)`` for one abstract group ``H``, adjacency from the face relation."""

    def __init__(self, action: SimplicialAction, H: FiniteGroup) -> None:
        if not action.regular:
            raise IrregularActionError("level groupoids need a regular action")
        G = action.group
        self.action = action
        self.H = H
        injections: dict[Subgroup, list[GroupHom]] = {}
        objects: list[LevelPoint] = []
        for x in action.points:
            S = isotropy(action, x)
            if S.order % H.order:
                continue
            if S not in injections:
                injections[S] = homs_into_subgroup(H, S, injective_only=True)
            objects.extend(LevelPoint(x, f) for f in injections[S])
        self.index = {(o.point, o.image): i for i, o in enumerate(objects)}
        act = []
        for g in G.elements():
            row = []
            for o in objects:
                y = action.act(g, o.point)
                row.append(self.index[(y, tuple(G.conj(g, v) for v in o.image))])
            act.append(row)
        adj = set()
        faces = action.complex.faces
        for i, o in enumerate(objects):
            for t in faces[o.point]:
                j = self.index[(t, o.image)]
                adj.add((i, j))
                adj.add((j, i))
        super().__init__(objects, G, act, adj)

    def find(self, point: Point, image: tuple[int, ...]) -> int:
        return self.index[(point, tuple(image))]

    @cached_property
    def component_ids(self) -> list[int]:
        return self.components()

    @cached_property
    def component_witness(self) -> list[int]:
        """Least object index of each component."""
        out: dict[int, int] = {}
        for i, c in enumerate(self.component_ids):
            out.setdefault(c, i)
        return [out[c] for c in range(len(out))]

    @property
    def n_components(self) -> int:
        return len(self.component_witness)


def level_groupoid(action: SimplicialAction, H: FiniteGroup) -> LevelGroupoid:
    return LevelGroupoid(action, H)


def groupoid_components(X: LevelGroupoid) -> list[list[int]]:
    blocks: list[list[int]] = [[] for _ in range(X.n_components)]
    for i, c in enumerate(X.component_ids):
        blocks[c].append(i)
    return blocks


# -- functoriality in H ---------------------------------------------------------


@dataclass
class LevelFunctor:
    """Restriction ``X(H1) -> X(H0)`` along an injective ``alpha: H0 -> H1``."""

    alpha: GroupHom
    source: LevelGroupoid
    target: LevelGroupoid
    object_map: list[int]

    def on_morphism(self, m: int) -> int:
        x, g = self.source.unpack(m)
        return self.target.morphism(self.object_map[x], g)

    def check(self) -> None:
        """Functor laws, exhaustively, plus preservation of adjacency."""
        S, T = self.source, self.target
        for x in range(S.n_objects):
            if self.on_morphism(S.identity(x)) != T.identity(self.object_map[x]):
                raise GroupError("identity not preserved")
        for m in range(S.n_morphisms):
            fm = self.on_morphism(m)
            if T.source(fm) != self.object_map[S.source(m)] or T.target(fm) != self.object_map[S.target(m)]:
                raise GroupError("restriction does not respect ends")
            for g2 in S.group.generator_witness:
                m2 = S.morphism(S.target(m), g2)
                if self.on_morphism(S.compose(m2, m)) != T.compose(self.on_morphism(m2), fm):
                    raise GroupError("composition not preserved")
        for a, b in S.adjacency:
            if (self.object_map[a], self.object_map[b]) not in T.adjacency:
                raise GroupError("restriction is not continuous")


def restrict_along(
    alpha: GroupHom,
    action: SimplicialAction,
    source: Optional[LevelGroupoid] = None,
    target: Optional[LevelGroupoid] = None,
) -> LevelFunctor:
    if not alpha.injective:
        raise GroupError("restriction needs an injective homomorphism")
    X1 = source if source is not None else level_groupoid(action, alpha.target)
    X0 = target if target is not None else level_groupoid(action, alpha.source)
    obj = [X0.find(o.point, tuple(o.image[a] for a in alpha.image)) for o in X1.objects]
    return LevelFunctor(alpha, X1, X0, obj)


def conjugation_automorphism(H: FiniteGroup, a: int) -> GroupHom:
    return GroupHom(H, H, tuple(H.conj(a, h) for h in H.elements()))


@dataclass
class NaturalIso:
    """Components ``eta[i]: F(i) -> i`` of ``F = restrict_along(conj_a) => 1``."""

    functor: LevelFunctor
    components: list[int]

    def check(self) -> int:
        """Verify every naturality square; return the number checked."""
        X = self.functor.source
        F = self.functor
        for i, eta in enumerate(self.components):
            if X.source(eta) != F.object_map[i] or X.target(eta) != i:
                raise GroupError(f"component {i} has wrong ends")
        count = 0
        for m in range(X.n_morphisms):
            i, j = X.source(m), X.target(m)
            left = X.compose(self.components[j], F.on_morphism(m))
            right = X.compose(m, self.components[i])
            if left != right:
                raise GroupError(f"naturality square fails at morphism {m}")
            count += 1
        return count


def inner_autoequivalence(action: SimplicialAction, H: FiniteGroup, a: int, X: Optional[LevelGroupoid] = None) -> NaturalIso:
    if not 0 <= a < H.order:
        raise GroupError("a must be an element of H")
    X = X if X is not None else level_groupoid(action, H)
    F = restrict_along(conjugation_automorphism(H, a), action, X, X)
    ainv = H.inv[a]
    comps = [X.morphism(F.object_map[i], o.image[ainv]) for i, o in enumerate(X.objects)]
    return NaturalIso(F, comps)


# -- the database category ---------------------------------------------------------


@dataclass(frozen=True)
class Phi0Object:
    h_key: tuple = field(repr=False)
    h_label: str
    component: int
    basepoint: LevelPoint = field(repr=False)


@dataclass
class LevelSlot:
    """Everything attached to one isomorphism class of ``H``."""

    key: tuple
    label: str
    rep: Subgroup
    H: FiniteGroup
    X: LevelGroupoid
    autos: list[GroupHom]
    orbit_rep: list[int]
    twist: list[GroupHom]

    def twisted(self, c: int, alpha: GroupHom) -> int:
        """Component of ``(x, phi . alpha)`` for the witness ``(x, phi)`` of ``c``."""
        o = self.X.objects[self.X.component_witness[c]]
        return self.X.component_ids[self.X.find(o.point, tuple(o.image[a] for a in alpha.image))]


class Phi0Category:
    """Objects ``(H, component of X(H))`` taken up to the twists by ``Aut(H)``.

    A morphism ``(H0, c0) -> (H1, c1)`` is a conjugacy class of injections
    ``alpha: H0 -> H1`` whose restriction functor carries ``c1`` into ``c0``.
    Each ``Aut(H)``-orbit of components is represented by its least member, so
    this is a skeleton of the full category.
    """

    def __init__(self, action: SimplicialAction) -> None:
        if not action.regular:
            raise IrregularActionError("Phi0 needs a regular action")
        self.action = action
        G = action.group
        reps: dict[tuple, Subgroup] = {}
        for S in G.subgroups:
            if not _has_fixed_point(action, S):
                continue
            reps.setdefault(subgroup_key(S), S)
        self.slots: dict[tuple, LevelSlot] = {}
        self.objects: list[Phi0Object] = []
        self.object_index: dict[tuple[tuple, int], int] = {}
        for key, S in reps.items():
            H = S.abstract
            X = level_groupoid(action, H)
            autos = enumerate_homs(H, H, injective_only=True)
            slot = LevelSlot(key, group_label(H), S, H, X, autos, [], [])
            orbit_rep = [-1] * X.n_components
            twist: list[Optional[GroupHom]] = [None] * X.n_components
            for c in range(X.n_components):
                if orbit_rep[c] >= 0:
                    continue
                images = [(slot.twisted(c, a), a) for a in autos]
                rho = min(d for d, _ in images)
                for d, _ in images:
                    orbit_rep[d] = rho
                for d in {d for d, _ in images}:
                    twist[d] = next(a for a in autos if slot.twisted(d, a) == rho)
            slot.orbit_rep = orbit_rep
            slot.twist = twist
            self.slots[key] = slot
            for c in sorted(set(orbit_rep)):
                base = X.objects[X.component_witness[c]]
                self.object_index[(key, c)] = len(self.objects)
                self.objects.append(Phi0Object(key, slot.label, c, base))
        self._homs: dict[tuple[int, int], list[HomClass]] = {}
        self._iso_cache: dict[int, GroupHom] = {}

    def __len__(self) -> int:
        return len(self.objects)

    def slot_of(self, i: int) -> LevelSlot:
        return self.slots[self.objects[i].h_key]

    def carries(self, alpha: GroupHom, i: int, j: int) -> bool:
        """Whether restriction along ``alpha`` sends object ``j`` into object ``i``."""
        s0, s1 = self.slot_of(i), self.slot_of(j)
        X1 = s1.X
        w = X1.objects[X1.component_witness[self.objects[j].component]]
        k = s0.X.find(w.point, tuple(w.image[a] for a in alpha.image))
        return s0.X.component_ids[k] == self.objects[i].component

    def hom(self, i: int, j: int) -> list[HomClass]:
        if (i, j) not in self._homs:
            s0, s1 = self.slot_of(i), self.slot_of(j)
            self._homs[(i, j)] = [
                cls
                for cls in pi0_hom_classes(s0.H, s1.H, injective_only=True)
                if self.carries(cls.representative, i, j)
            ]
        return self._homs[(i, j)]

    def identity(self, i: int) -> HomClass:
        return hom_class_of(identity_hom(self.slot_of(i).H))

    def compose(self, alpha: HomClass, beta: HomClass) -> HomClass:
        """``beta`` after ``alpha``."""
        return compose_hom_classes(alpha, beta)

    def check_axioms(self) -> None:
        n = len(self)
        for i in range(n):
            if self.identity(i) not in self.hom(i, i):
                raise GroupError(f"identity missing at object {i}")
        for i in range(n):
            for j in range(n):
                for alpha in self.hom(i, j):
                    for image in alpha.orbit:
                        f = GroupHom(alpha.source, alpha.target, image)
                        if not self.carries(f, i, j):
                            raise GroupError("membership depends on the representative")
                    if self.compose(self.identity(i), alpha) != alpha or self.compose(alpha, self.identity(j)) != alpha:
                        raise GroupError("identity law fails")
                    for k in range(n):
                        for beta in self.hom(j, k):
                            ba = self.compose(alpha, beta)
                            if ba not in self.hom(i, k):
                                raise GroupError("composition leaves the category")
                            for l in range(n):
                                for gamma in self.hom(k, l):
                                    if self.compose(ba, gamma) != self.compose(alpha, self.compose(beta, gamma)):
                                        raise GroupError("associativity fails")

    # -- identifications of isotropy groups ----------------------------------

    def stored_iso(self, S: Subgroup) -> GroupHom:
        """The fixed isomorphism ``H_rep -> S`` (as a map into ``G``) for ``S``."""
        G = self.action.group
        idx = G.subgroup_index[S]
        if idx not in self._iso_cache:
            slot = self.slots[subgroup_key(S)]
            iso = find_isomorphism(slot.H, S.abstract)
            if iso is None:
                raise GroupError("isomorphism class key disagrees with isomorphism search")
            self._iso_cache[idx] = iso.then(S.embedding)
        return self._iso_cache[idx]

    def locate(self, point: Point, level: GroupHom) -> tuple[int, GroupHom]:
        """Skeleton object of ``(point, level)`` and the twist into it."""
        S_key = subgroup_key(_image_subgroup(self.action.group, level))
        slot = self.slots[S_key]
        c = slot.X.component_ids[slot.X.find(point, level.image)]
        return self.object_index[(slot.key, slot.orbit_rep[c])], slot.twist[c]

    def isomorphic(self, i: int, j: int) -> bool:
        for alpha in self.hom(i, j):
            for beta in self.hom(j, i):
                if self.compose(alpha, beta) == self.identity(i) and self.compose(beta, alpha) == self.identity(j):
                    return True
        return False


def _image_subgroup(G: FiniteGroup, f: GroupHom) -> Subgroup:
    return Subgroup(G, tuple(sorted(set(f.image))))


def _has_fixed_point(action: SimplicialAction, S: Subgroup) -> bool:
    m = 0
    for h in S.elements:
        m |= 1 << h
    return any(action.iso_mask(x) & m == m for x in action.points)


def phi0_category(action: SimplicialAction) -> Phi0Category:
    return Phi0Category(action)


# -- the functor from the action groupoid ----------------------------------------------


@dataclass
class PointFunctor:
    """``[X/G] -> Phi0``: objects per point, morphisms per ``(point, g)``."""

    phi0: Phi0Category
    object_of: list[int]
    levels: list[GroupHom]
    twists: list[GroupHom]

    def on_morphism(self, x: Point, g: int) -> HomClass:
        phi = self.phi0
        G = phi.action.group
        y = phi.action.act(g, x)
        slot = phi.slot_of(self.object_of[x])
        psi_y = {v: h for h, v in enumerate(self.levels[y].image)}
        beta = tuple(psi_y[G.conj(g, v)] for v in self.levels[x].image)
        tau_x, tau_y = self.twists[x], self.twists[y]
        tau_y_inv = tau_y.inverse()
        image = tuple(tau_y_inv.image[beta[t]] for t in tau_x.image)
        return hom_class_of(GroupHom(slot.H, slot.H, image))

    def check(self, exhaustive: bool = True) -> int:
        """Functoriality; returns the number of composable pairs checked."""
        phi = self.phi0
        act = phi.action
        G = act.group
        cache: dict[tuple[int, int], HomClass] = {}

        def F(x: int, g: int) -> HomClass:
            if (x, g) not in cache:
                cache[(x, g)] = self.on_morphism(x, g)
            return cache[(x, g)]

        for x in act.points:
            if F(x, 0) != phi.identity(self.object_of[x]):
                raise GroupError("identity not preserved")
            for g in G.elements():
                y = act.act(g, x)
                if F(x, g) not in phi.hom(self.object_of[x], self.object_of[y]):
                    raise GroupError("image morphism is not in Phi0")
        count = 0
        seconds = G.elements() if exhaustive else G.generator_witness
        for x in act.points:
            for g1 in G.elements():
                y = act.act(g1, x)
                for g2 in seconds:
                    lhs = F(x, G.mul[g2][g1])
                    rhs = phi.compose(F(x, g1), F(y, g2))
                    if lhs != rhs:
                        raise GroupError("functor does not preserve composition")
                    count += 1
        return count


def functor_to_phi0(action: SimplicialAction, phi0: Optional[Phi0Category] = None) -> PointFunctor:
    phi = phi0 if phi0 is not None else Phi0Category(action)
    object_of, levels, twists = [], [], []
    for x in action.points:
        psi = phi.stored_iso(isotropy(action, x))
        obj, tau = phi.locate(x, psi)
        object_of.append(obj)
        levels.append(psi)
        twists.append(tau)
    return PointFunctor(phi, object_of, levels, twists)
