"""The orbit category of a finite group and the fixed-point database category.

A morphism ``H0 -> H1`` is an equivariant map ``G/H0 -> G/H1``.  It is stored
as the least element of the right coset ``H1 g`` where ``g H0 g^-1 <= H1``;
the map it names is ``a H0 -> a g^-1 H1``.  On fixed sets it induces
``x -> g^-1 . x`` from ``X^H1`` to ``X^H0``.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Optional

from .gcomplex import SimplicialAction, component_ids, fixed_subcomplex
from .group_core import FiniteGroup, GroupError, GroupHom, HomClass, Subgroup, hom_class_of, subgroup_key
from .level_structures import Phi0Category, phi0_category


class OrbitCategoryError(RuntimeError):
    pass


def _left_cosets(G: FiniteGroup, H: Subgroup) -> tuple[list[frozenset[int]], list[int]]:
    cosets: list[frozenset[int]] = []
    coset_of = [-1] * G.order
    for a in G.elements():
        if coset_of[a] >= 0:
            continue
        c = frozenset(G.mul[a][h] for h in H.elements)
        for b in c:
            coset_of[b] = len(cosets)
        cosets.append(c)
    return cosets, coset_of


class OrbitCategory:
    def __init__(self, G: FiniteGroup) -> None:
        self.group = G
        self.subgroups = G.subgroups
        self._cosets = [_left_cosets(G, H) for H in self.subgroups]
        self.mor: dict[tuple[int, int], list[int]] = {}
        self.counts: dict[tuple[int, int], tuple[int, int, int]] = {}
        n = len(self.subgroups)
        for i in range(n):
            for j in range(n):
                by_cosets = self._coset_classes(i, j)
                by_maps = self._equivariant_maps(i, j)
                fixed = self._fixed_cosets(i, j)
                # the map named by [g] sends the base coset to g^-1 H_j
                _, coset_of = self._cosets[j]
                named = sorted(coset_of[G.inv[g]] for g in by_cosets)
                if named != by_maps or len(by_maps) != fixed:
                    raise OrbitCategoryError(
                        f"constructions disagree for Mor({i}, {j}): "
                        f"{len(by_cosets)} coset classes, {len(by_maps)} maps, {fixed} fixed cosets"
                    )
                self.mor[(i, j)] = by_cosets
                self.counts[(i, j)] = (len(by_cosets), len(by_maps), fixed)

    def _coset_classes(self, i: int, j: int) -> list[int]:
        G = self.group
        H0, H1 = self.subgroups[i], self.subgroups[j]
        if H1.order % H0.order:
            return []
        reps = set()
        for g in G.elements():
            if all(G.conj(g, h) in H1 for h in H0.elements):
                reps.add(min(G.mul[h][g] for h in H1.elements))
        return sorted(reps)

    def _equivariant_maps(self, i: int, j: int) -> list[int]:
        """Images of the base coset over all well-defined equivariant maps."""
        G = self.group
        cos0, coset_of0 = self._cosets[i]
        cos1, coset_of1 = self._cosets[j]
        out = []
        for k, target in enumerate(cos1):
            b = min(target)
            image: dict[int, int] = {}
            ok = True
            for a in G.elements():
                c0 = coset_of0[a]
                c1 = coset_of1[G.mul[a][b]]
                if image.setdefault(c0, c1) != c1:
                    ok = False
                    break
            if ok:
                out.append(k)
        return out

    def _fixed_cosets(self, i: int, j: int) -> int:
        G = self.group
        H0 = self.subgroups[i]
        cos1, coset_of1 = self._cosets[j]
        return sum(
            1
            for c in cos1
            if all(coset_of1[G.mul[h][min(c)]] == coset_of1[min(c)] for h in H0.elements)
        )

    def canonical(self, j: int, g: int) -> int:
        G = self.group
        return min(G.mul[h][g] for h in self.subgroups[j].elements)

    def identity(self, i: int) -> int:
        return 0

    def compose(self, k: int, g2: int, g1: int) -> int:
        """``[g2] . [g1]`` landing in subgroup ``k``."""
        return self.canonical(k, self.group.mul[g2][g1])

    def check_axioms(self) -> None:
        n = len(self.subgroups)
        for i in range(n):
            if 0 not in self.mor[(i, i)]:
                raise OrbitCategoryError("identity missing")
        for i in range(n):
            for j in range(n):
                for g1 in self.mor[(i, j)]:
                    for k in range(n):
                        for g2 in self.mor[(j, k)]:
                            c = self.compose(k, g2, g1)
                            if c not in self.mor[(i, k)]:
                                raise OrbitCategoryError("composite is not a morphism")
                            for l in range(n):
                                for g3 in self.mor[(k, l)]:
                                    if self.compose(l, g3, c) != self.compose(l, self.compose(l, g3, g2), g1):
                                        raise OrbitCategoryError("associativity fails")


def orbit_category(G: FiniteGroup) -> OrbitCategory:
    return OrbitCategory(G)


# -- fixed point diagram -------------------------------------------------------------


@dataclass
class FixedPointDiagram:
    """``H -> pi0(X^H)`` with ``[g]: H0 -> H1`` inducing ``pi0 X^H1 -> pi0 X^H0``."""

    action: SimplicialAction
    orbit_cat: OrbitCategory
    fixed: list[tuple[int, ...]]
    comp: list[dict[int, int]]
    witness: list[list[int]]
    maps: dict[tuple[int, int, int], tuple[int, ...]] = field(default_factory=dict)

    def n_components(self, i: int) -> int:
        return len(self.witness[i])

    def induced(self, i: int, j: int, g: int) -> tuple[int, ...]:
        return self.maps[(i, j, g)]

    def check_functoriality(self) -> int:
        oc = self.orbit_cat
        n = len(oc.subgroups)
        count = 0
        for i in range(n):
            if self.maps[(i, i, 0)] != tuple(range(self.n_components(i))):
                raise OrbitCategoryError("identity does not induce the identity")
            for j in range(n):
                for g1 in oc.mor[(i, j)]:
                    f1 = self.maps[(i, j, g1)]
                    for k in range(n):
                        for g2 in oc.mor[(j, k)]:
                            f2 = self.maps[(j, k, g2)]
                            f21 = self.maps[(i, k, oc.compose(k, g2, g1))]
                            if f21 != tuple(f1[c] for c in f2):
                                raise OrbitCategoryError("fixed-point diagram is not functorial")
                            count += 1
        return count


def fixed_point_diagram(action: SimplicialAction, oc: Optional[OrbitCategory] = None) -> FixedPointDiagram:
    oc = oc if oc is not None else OrbitCategory(action.group)
    G = action.group
    fixed, comp, witness = [], [], []
    for H in oc.subgroups:
        pts = fixed_subcomplex(action, H)
        cid = component_ids(action.complex, pts)
        w: dict[int, int] = {}
        for p in pts:
            w.setdefault(cid[p], p)
        fixed.append(pts)
        comp.append(cid)
        witness.append([w[c] for c in range(len(w))])
    diagram = FixedPointDiagram(action, oc, fixed, comp, witness)
    for (i, j), gs in oc.mor.items():
        for g in gs:
            ginv = G.inv[g]
            image = []
            for c, members in enumerate(_blocks(comp[j], len(witness[j]))):
                targets = set()
                for x in members:
                    y = action.act(ginv, x)
                    if y not in comp[i]:
                        raise OrbitCategoryError("induced map leaves the fixed set")
                    targets.add(comp[i][y])
                if len(targets) != 1:
                    raise OrbitCategoryError("induced map splits a component")
                image.append(targets.pop())
            diagram.maps[(i, j, g)] = tuple(image)
    return diagram


def _blocks(cid: dict[int, int], n: int) -> list[list[int]]:
    out: list[list[int]] = [[] for _ in range(n)]
    for p, c in sorted(cid.items()):
        out[c].append(p)
    return out


# -- the fibre-product category ---------------------------------------------------------


@dataclass(frozen=True)
class BoldObject:
    subgroup: int
    component: int


class BoldPhi0Category:
    """Pairs ``(H, component of X^H)``; ``[g]: (H0,c0) -> (H1,c1)`` when ``g^-1 c1 <= c0``."""

    def __init__(self, diagram: FixedPointDiagram) -> None:
        self.diagram = diagram
        self.orbit_cat = diagram.orbit_cat
        self.objects = [
            BoldObject(i, c)
            for i in range(len(self.orbit_cat.subgroups))
            for c in range(diagram.n_components(i))
        ]
        self.index = {o: k for k, o in enumerate(self.objects)}

    def __len__(self) -> int:
        return len(self.objects)

    def hom(self, a: int, b: int) -> list[int]:
        A, B = self.objects[a], self.objects[b]
        i, j = A.subgroup, B.subgroup
        return [
            g for g in self.orbit_cat.mor[(i, j)] if self.diagram.maps[(i, j, g)][B.component] == A.component
        ]

    def compose(self, c: int, g2: int, g1: int) -> int:
        return self.orbit_cat.compose(self.objects[c].subgroup, g2, g1)

    def check_axioms(self) -> None:
        n = len(self)
        homs = {(a, b): self.hom(a, b) for a in range(n) for b in range(n)}
        for a in range(n):
            if 0 not in homs[(a, a)]:
                raise OrbitCategoryError("identity missing")
        G = self.orbit_cat.group
        for (a, b), gs in homs.items():
            j = self.objects[b].subgroup
            for g in gs:
                # membership is a property of the class, not of the representative
                i = self.objects[a].subgroup
                for h in self.orbit_cat.subgroups[j].elements:
                    alt = G.mul[h][g]
                    y = self.diagram.action.act(G.inv[alt], self.diagram.witness[j][self.objects[b].component])
                    if self.diagram.comp[i].get(y) != self.objects[a].component:
                        raise OrbitCategoryError("membership depends on the representative")
                for c in range(n):
                    for g2 in homs[(b, c)]:
                        if self.compose(c, g2, g) not in homs[(a, c)]:
                            raise OrbitCategoryError("composition leaves the category")


def bold_phi0(action: SimplicialAction, diagram: Optional[FixedPointDiagram] = None) -> BoldPhi0Category:
    return BoldPhi0Category(diagram if diagram is not None else fixed_point_diagram(action))


# -- comparison ---------------------------------------------------------------------


@dataclass
class Comparison:
    bold: BoldPhi0Category
    phi0: Phi0Category
    object_map: list[int]
    essentially_surjective: bool
    bijective_on_objects: bool
    collapse: list[dict] = field(default_factory=list)

    def on_morphism(self, a: int, b: int, g: int) -> HomClass:
        return _kappa_morphism(self, a, b, g)

    def check_functor(self) -> int:
        bold, phi = self.bold, self.phi0
        n = len(bold)
        homs = {(a, b): bold.hom(a, b) for a in range(n) for b in range(n)}
        count = 0
        for a in range(n):
            if self.on_morphism(a, a, 0) != phi.identity(self.object_map[a]):
                raise OrbitCategoryError("kappa does not preserve identities")
        for (a, b), gs in homs.items():
            for g in gs:
                f = self.on_morphism(a, b, g)
                if f not in phi.hom(self.object_map[a], self.object_map[b]):
                    raise OrbitCategoryError("kappa sends a morphism outside Phi0")
                for c in range(n):
                    for g2 in homs[(b, c)]:
                        lhs = self.on_morphism(a, c, bold.compose(c, g2, g))
                        rhs = phi.compose(f, self.on_morphism(b, c, g2))
                        if lhs != rhs:
                            raise OrbitCategoryError("kappa does not preserve composition")
                        count += 1
        return count


def _kappa_morphism(cmp: Comparison, a: int, b: int, g: int) -> HomClass:
    bold, phi = cmp.bold, cmp.phi0
    action = bold.diagram.action
    G = action.group
    A, B = bold.objects[a], bold.objects[b]
    S0 = bold.orbit_cat.subgroups[A.subgroup]
    S1 = bold.orbit_cat.subgroups[B.subgroup]
    psi0, psi1 = phi.stored_iso(S0), phi.stored_iso(S1)
    inv1 = {v: h for h, v in enumerate(psi1.image)}
    raw = tuple(inv1[G.conj(g, v)] for v in psi0.image)
    x0 = bold.diagram.witness[A.subgroup][A.component]
    x1 = bold.diagram.witness[B.subgroup][B.component]
    _, tau0 = phi.locate(x0, psi0)
    _, tau1 = phi.locate(x1, psi1)
    tau1_inv = tau1.inverse()
    image = tuple(tau1_inv.image[raw[t]] for t in tau0.image)
    return hom_class_of(GroupHom(tau0.source, tau1.source, image))


def compare_phi0(
    action: SimplicialAction,
    bold: Optional[BoldPhi0Category] = None,
    phi: Optional[Phi0Category] = None,
) -> Comparison:
    bold = bold if bold is not None else bold_phi0(action)
    phi = phi if phi is not None else phi0_category(action)
    object_map = []
    for o in bold.objects:
        S = bold.orbit_cat.subgroups[o.subgroup]
        psi = phi.stored_iso(S)
        pts = [x for x, c in bold.diagram.comp[o.subgroup].items() if c == o.component]
        targets = {phi.locate(x, psi)[0] for x in pts}
        if len(targets) != 1:
            raise OrbitCategoryError(f"kappa is not well defined on object {o}")
        object_map.append(targets.pop())
    hit = set(object_map)
    ess = all(any(phi.isomorphic(t, h) for h in hit) for t in range(len(phi)))
    bij = sorted(object_map) == list(range(len(phi)))
    cmp = Comparison(bold, phi, object_map, ess, bij)
    n = len(bold)
    for a in range(n):
        for b in range(n):
            gs = bold.hom(a, b)
            if not gs:
                continue
            down = phi.hom(object_map[a], object_map[b])
            images = {cmp.on_morphism(a, b, g).representative.image for g in gs}
            cmp.collapse.append(
                {
                    "source": a,
                    "target": b,
                    "upstream": len(gs),
                    "downstream": len(down),
                    "image": len(images),
                }
            )
    return cmp


def subgroup_label(S: Subgroup) -> str:
    from .group_core import group_label

    return group_label(S.abstract)


__all__ = [
    "BoldPhi0Category",
    "Comparison",
    "FixedPointDiagram",
    "OrbitCategory",
    "bold_phi0",
    "compare_phi0",
    "fixed_point_diagram",
    "orbit_category",
    "subgroup_key",
]
