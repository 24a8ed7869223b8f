"""Finite groupoids: action groupoids computed arithmetically, and explicit tables."""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Any, Iterable, Sequence

from scipy.cluster.hierarchy import DisjointSet

from .group_core import FiniteGroup


class GroupoidError(ValueError):
    pass


def numbered_components(n: int, pairs: Iterable[tuple[int, int]]) -> list[int]:
    """Component id per element, components numbered by their least element."""
    ds = DisjointSet(range(n))
    for a, b in pairs:
        ds.merge(a, b)
    comp = [-1] * n
    ids: dict[Any, int] = {}
    for i in range(n):
        root = ds[i]
        if root not in ids:
            ids[root] = len(ids)
        comp[i] = ids[root]
    return comp


def blocks_of(comp: Sequence[int]) -> list[list[int]]:
    out: list[list[int]] = [[] for _ in range(max(comp, default=-1) + 1)]
    for i, c in enumerate(comp):
        out[c].append(i)
    return out


class FiniteGroupoid:
    """Interface shared by the concrete groupoids below.

    Morphisms are integers; ``compose(m2, m1)`` is ``m2`` after ``m1`` and is
    defined only when ``target(m1) == source(m2)``.
    """

    objects: Sequence[Any]
    adjacency: frozenset[tuple[int, int]] = frozenset()

    @property
    def n_objects(self) -> int:
        return len(self.objects)

    def components(self) -> list[int]:
        return numbered_components(self.n_objects, self._generating_arrows())

    def _generating_arrows(self) -> Iterable[tuple[int, int]]:
        for m in range(self.n_morphisms):
            yield self.source(m), self.target(m)
        yield from self.adjacency

    def check_axioms(self) -> None:
        """Exhaustive check of identities, inverses and associativity."""
        n = self.n_objects
        out: list[list[int]] = [[] for _ in range(n)]
        for m in range(self.n_morphisms):
            out[self.source(m)].append(m)
        for x in range(n):
            e = self.identity(x)
            if self.source(e) != x or self.target(e) != x:
                raise GroupoidError(f"identity of object {x} has wrong ends")
        for m in range(self.n_morphisms):
            s, t = self.source(m), self.target(m)
            if self.compose(m, self.identity(s)) != m or self.compose(self.identity(t), m) != m:
                raise GroupoidError(f"identity law fails for morphism {m}")
            mi = self.inverse(m)
            if self.compose(mi, m) != self.identity(s) or self.compose(m, mi) != self.identity(t):
                raise GroupoidError(f"inverse law fails for morphism {m}")
            for m2 in out[t]:
                c = self.compose(m2, m)
                if self.source(c) != s or self.target(c) != self.target(m2):
                    raise GroupoidError("composite has wrong ends")
                for m3 in out[self.target(m2)]:
                    if self.compose(m3, c) != self.compose(self.compose(m3, m2), m):
                        raise GroupoidError("associativity fails")
        for a, b in self.adjacency:
            if (b, a) not in self.adjacency:
                raise GroupoidError("adjacency must be symmetric")

    def automorphism_count(self, x: int) -> int:
        return sum(
            1 for m in range(self.n_morphisms) if self.source(m) == x and self.target(m) == x
        )


class ActionGroupoid(FiniteGroupoid):
    """``[objects / group]`` with ``act[g][x]`` the object ``g.x``.

    The morphism ``(x, g): x -> g.x`` is encoded as ``x * |G| + g``.
    """

    def __init__(
        self,
        objects: Sequence[Any],
        group: FiniteGroup,
        act: Sequence[Sequence[int]],
        adjacency: Iterable[tuple[int, int]] = (),
    ) -> None:
        self.objects = list(objects)
        self.group = group
        self.act = [tuple(row) for row in act]
        self.adjacency = frozenset(adjacency)

    @property
    def n_morphisms(self) -> int:
        return self.n_objects * self.group.order

    def morphism(self, x: int, g: int) -> int:
        return x * self.group.order + g

    def unpack(self, m: int) -> tuple[int, int]:
        return divmod(m, self.group.order)

    def source(self, m: int) -> int:
        return m // self.group.order

    def target(self, m: int) -> int:
        x, g = divmod(m, self.group.order)
        return self.act[g][x]

    def identity(self, x: int) -> int:
        return self.morphism(x, 0)

    def inverse(self, m: int) -> int:
        x, g = divmod(m, self.group.order)
        return self.morphism(self.act[g][x], self.group.inv[g])

    def compose(self, m2: int, m1: int) -> int:
        x1, g1 = divmod(m1, self.group.order)
        x2, g2 = divmod(m2, self.group.order)
        if self.act[g1][x1] != x2:
            raise GroupoidError("morphisms are not composable")
        return self.morphism(x1, self.group.mul[g2][g1])

    def _generating_arrows(self) -> Iterable[tuple[int, int]]:
        for g in self.group.generator_witness:
            row = self.act[g]
            for x in range(self.n_objects):
                yield x, row[x]
        yield from self.adjacency

    def orbits(self) -> list[int]:
        """Components under morphisms alone."""
        return numbered_components(
            self.n_objects,
            ((x, self.act[g][x]) for g in self.group.generator_witness for x in range(self.n_objects)),
        )

    def check_action(self) -> None:
        G = self.group
        for x in range(self.n_objects):
            if self.act[0][x] != x:
                raise GroupoidError("identity does not act trivially")
        for a in G.elements():
            for b in G.elements():
                ab = G.mul[a][b]
                for x in range(self.n_objects):
                    if self.act[ab][x] != self.act[a][self.act[b][x]]:
                        raise GroupoidError("act is not a group action")


@dataclass
class TableGroupoid(FiniteGroupoid):
    """A groupoid given by explicit source/target/composition tables."""

    objects: list[Any]
    sources: list[int]
    targets: list[int]
    identities: list[int]
    inverses: list[int]
    table: dict[tuple[int, int], int]
    labels: list[Any] = field(default_factory=list)
    adjacency: frozenset[tuple[int, int]] = frozenset()

    @property
    def n_morphisms(self) -> int:
        return len(self.sources)

    def source(self, m: int) -> int:
        return self.sources[m]

    def target(self, m: int) -> int:
        return self.targets[m]

    def identity(self, x: int) -> int:
        return self.identities[x]

    def inverse(self, m: int) -> int:
        return self.inverses[m]

    def compose(self, m2: int, m1: int) -> int:
        try:
            return self.table[(m2, m1)]
        except KeyError:
            raise GroupoidError("morphisms are not composable") from None


def is_isomorphic(A: FiniteGroupoid, B: FiniteGroupoid, object_map: Sequence[int], morphism_map: Sequence[int]) -> bool:
    """Whether the given maps form an isomorphism of groupoids ``A -> B``."""
    if sorted(object_map) != list(range(B.n_objects)) or len(object_map) != A.n_objects:
        return False
    if sorted(morphism_map) != list(range(B.n_morphisms)) or len(morphism_map) != A.n_morphisms:
        return False
    for m in range(A.n_morphisms):
        fm = morphism_map[m]
        if B.source(fm) != object_map[A.source(m)] or B.target(fm) != object_map[A.target(m)]:
            return False
    out: list[list[int]] = [[] for _ in range(A.n_objects)]
    for m in range(A.n_morphisms):
        out[A.source(m)].append(m)
    for m1 in range(A.n_morphisms):
        for m2 in out[A.target(m1)]:
            if morphism_map[A.compose(m2, m1)] != B.compose(morphism_map[m2], morphism_map[m1]):
                return False
    return True


def restrict_objects(G: ActionGroupoid, keep: Sequence[int]) -> ActionGroupoid:
    """Full subgroupoid on a union of orbits."""
    pos = {x: i for i, x in enumerate(keep)}
    act = []
    for row in G.act:
        new = []
        for x in keep:
            y = row[x]
            if y not in pos:
                raise GroupoidError("kept objects are not closed under the action")
            new.append(pos[y])
        act.append(new)
    adj = {(pos[a], pos[b]) for a, b in G.adjacency if a in pos and b in pos}
    return ActionGroupoid([G.objects[x] for x in keep], G.group, act, adj)
