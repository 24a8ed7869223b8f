"""Finite groups carried as multiplication tables.

Elements are the integers ``0..order-1`` with ``0`` the identity.  Groups built
from permutations index their elements in breadth-first order from the
identity, so every derived object (subgroups, homomorphisms, canonical keys)
is reproducible.
"""

from __future__ import annotations

import hashlib
from collections import Counter, deque
from dataclasses import dataclass, field
from functools import cached_property
from itertools import product
from typing import Iterable, Optional, Sequence

MAX_ORDER = 64

Perm = tuple[int, ...]


class GroupError(ValueError):
    pass


class UnsupportedGroupError(GroupError):
    pass


class FiniteGroup:
    """A finite group given by its multiplication table.

    ``mul[a][b]`` is the product ``a*b``.  When the group came from
    permutations, ``perms[g]`` is the permutation of ``g`` and
    ``mul[a][b]`` acts as ``a`` after ``b``.
    """

    def __init__(
        self,
        mul: Sequence[Sequence[int]],
        generator_witness: Iterable[int] = (),
        perms: Optional[Sequence[Perm]] = None,
        component_elements: Optional[Iterable[int]] = None,
    ) -> None:
        self.mul: tuple[tuple[int, ...], ...] = tuple(tuple(row) for row in mul)
        self.order = len(self.mul)
        if self.order == 0:
            raise GroupError("a group needs at least the identity")
        inv = [0] * self.order
        for a in range(self.order):
            row = self.mul[a]
            for b in range(self.order):
                if row[b] == 0:
                    inv[a] = b
                    break
            else:
                raise GroupError(f"element {a} has no inverse")
        self.inv: tuple[int, ...] = tuple(inv)
        self.generator_witness: tuple[int, ...] = tuple(generator_witness)
        self.perms: Optional[tuple[Perm, ...]] = (
            tuple(tuple(p) for p in perms) if perms is not None else None
        )
        self.component_subgroup: Optional[Subgroup] = None
        # positions of the user-supplied generators, when built from permutations
        self.generator_images: Optional[tuple[int, ...]] = None
        if component_elements is not None:
            sub = self.subgroup(component_elements)
            if not sub.is_normal():
                raise GroupError("component subgroup must be normal")
            self.component_subgroup = sub

    @property
    def identity(self) -> int:
        return 0

    def __len__(self) -> int:
        return self.order

    def __repr__(self) -> str:
        return f"FiniteGroup(order={self.order}, gens={list(self.generator_witness)})"

    def elements(self) -> range:
        return range(self.order)

    def conj(self, g: int, h: int) -> int:
        """``g h g^-1``."""
        return self.mul[self.mul[g][h]][self.inv[g]]

    @cached_property
    def element_orders(self) -> tuple[int, ...]:
        orders = []
        for g in range(self.order):
            n, x = 1, g
            while x != 0:
                x = self.mul[x][g]
                n += 1
            orders.append(n)
        return tuple(orders)

    @cached_property
    def order_histogram(self) -> tuple[tuple[int, int], ...]:
        return tuple(sorted(Counter(self.element_orders).items()))

    @cached_property
    def is_abelian(self) -> bool:
        mul = self.mul
        return all(
            mul[a][b] == mul[b][a] for a in range(self.order) for b in range(a)
        )

    def generated(self, gens: Iterable[int]) -> frozenset[int]:
        gens = [g for g in gens if g != 0]
        seen = {0}
        queue = deque([0])
        while queue:
            a = queue.popleft()
            for s in gens:
                b = self.mul[a][s]
                if b not in seen:
                    seen.add(b)
                    queue.append(b)
        return frozenset(seen)

    def subgroup(self, elements: Iterable[int]) -> "Subgroup":
        elems = tuple(sorted(set(elements)))
        sub = Subgroup(self, elems)
        sub.validate()
        return sub

    def check_axioms(self) -> None:
        """Exhaustive associativity, identity, inverse and generation check."""
        mul, n = self.mul, self.order
        for row in mul:
            if sorted(row) != list(range(n)):
                raise GroupError("multiplication table rows must be permutations")
        for a in range(n):
            if mul[0][a] != a or mul[a][0] != a:
                raise GroupError("0 is not a two-sided identity")
            if mul[a][self.inv[a]] != 0 or mul[self.inv[a]][a] != 0:
                raise GroupError(f"bad inverse for {a}")
            for b in range(n):
                ab = mul[a][b]
                for c in range(n):
                    if mul[ab][c] != mul[a][mul[b][c]]:
                        raise GroupError(f"associativity fails at {(a, b, c)}")
        if len(self.generated(self.generator_witness)) != n:
            raise GroupError("generator witness does not generate the group")

    # -- subgroup lattice -------------------------------------------------

    @cached_property
    def subgroups(self) -> tuple["Subgroup", ...]:
        return tuple(Subgroup(self, elems) for elems in _all_subgroups(self))

    @cached_property
    def subgroup_index(self) -> dict["Subgroup", int]:
        return {s: i for i, s in enumerate(self.subgroups)}

    @cached_property
    def subgroup_inclusion(self) -> frozenset[tuple[int, int]]:
        """Pairs ``(i, j)`` with ``subgroups[i] <= subgroups[j]``."""
        sets = [frozenset(s.elements) for s in self.subgroups]
        return frozenset(
            (i, j)
            for i, a in enumerate(sets)
            for j, b in enumerate(sets)
            if len(a) <= len(b) and a <= b
        )

    @cached_property
    def trivial_subgroup(self) -> "Subgroup":
        return Subgroup(self, (0,))

    @cached_property
    def whole(self) -> "Subgroup":
        return Subgroup(self, tuple(range(self.order)))


@dataclass(frozen=True)
class Subgroup:
    parent: FiniteGroup = field(repr=False)
    elements: tuple[int, ...]

    def __len__(self) -> int:
        return len(self.elements)

    @property
    def order(self) -> int:
        return len(self.elements)

    def __contains__(self, g: int) -> bool:
        return g in self.element_set

    @cached_property
    def element_set(self) -> frozenset[int]:
        return frozenset(self.elements)

    def validate(self) -> None:
        G = self.parent
        if not self.elements or self.elements[0] != 0:
            raise GroupError("subgroup must contain the identity")
        if any(g < 0 or g >= G.order for g in self.elements):
            raise GroupError("subgroup element out of range")
        s = self.element_set
        for a in self.elements:
            if G.inv[a] not in s:
                raise GroupError(f"subgroup not closed under inverse at {a}")
            for b in self.elements:
                if G.mul[a][b] not in s:
                    raise GroupError(f"subgroup not closed under product {a}*{b}")
        if G.order % len(self.elements):
            raise GroupError("subgroup order does not divide group order")

    def conjugate(self, g: int) -> "Subgroup":
        G = self.parent
        return Subgroup(G, tuple(sorted(G.conj(g, h) for h in self.elements)))

    def is_normal(self) -> bool:
        return all(self.conjugate(g) == self for g in self.parent.generator_witness)

    def issubset(self, other: "Subgroup") -> bool:
        return self.element_set <= other.element_set

    @cached_property
    def as_group(self) -> tuple[FiniteGroup, "GroupHom"]:
        """The subgroup as an abstract group together with its embedding."""
        G = self.parent
        gens: list[int] = []
        span = frozenset({0})
        for g in self.elements:
            if g not in span:
                gens.append(g)
                span = G.generated(gens)
        order_in_g = _bfs_order(G, gens)
        relabel = {g: i for i, g in enumerate(order_in_g)}
        mul = [[relabel[G.mul[a][b]] for b in order_in_g] for a in order_in_g]
        perms = None
        if G.perms is not None:
            perms = [G.perms[g] for g in order_in_g]
        H = FiniteGroup(mul, [relabel[g] for g in gens], perms=perms)
        return H, GroupHom(H, G, tuple(order_in_g))

    @property
    def abstract(self) -> FiniteGroup:
        return self.as_group[0]

    @property
    def embedding(self) -> "GroupHom":
        return self.as_group[1]


def _bfs_order(G: FiniteGroup, gens: Sequence[int]) -> list[int]:
    order = [0]
    seen = {0}
    queue = deque([0])
    while queue:
        a = queue.popleft()
        for s in gens:
            b = G.mul[a][s]
            if b not in seen:
                seen.add(b)
                order.append(b)
                queue.append(b)
    return order


def _all_subgroups(G: FiniteGroup) -> list[tuple[int, ...]]:
    cyclic = {G.generated([g]) for g in G.elements()}
    found = set(cyclic)
    frontier = list(found)
    while frontier:
        nxt = []
        for a in frontier:
            for c in cyclic:
                if c <= a:
                    continue
                j = G.generated(a | c)
                if j not in found:
                    found.add(j)
                    nxt.append(j)
        frontier = nxt
    return sorted((tuple(sorted(s)) for s in found), key=lambda t: (len(t), t))


# -- construction -----------------------------------------------------------


def generate_group(
    degree: int,
    generators: Sequence[Sequence[int]],
    component_generators: Optional[Sequence[int]] = None,
) -> FiniteGroup:
    """Close a list of permutations of ``{0..degree-1}`` under composition.

    ``component_generators`` are indices into ``generators``; the subgroup they
    generate is recorded as the identity component.
    """
    if degree <= 0:
        raise GroupError("degree must be positive")
    gens: list[Perm] = []
    for k, p in enumerate(generators):
        p = tuple(int(v) for v in p)
        if len(p) != degree or sorted(p) != list(range(degree)):
            raise GroupError(f"generator {k} is not a permutation of 0..{degree - 1}")
        gens.append(p)
    ident = tuple(range(degree))
    elements: list[Perm] = [ident]
    index = {ident: 0}
    queue = deque([ident])
    while queue:
        a = queue.popleft()
        for s in gens:
            b = tuple(a[s[v]] for v in range(degree))
            if b not in index:
                if len(elements) >= MAX_ORDER:
                    raise UnsupportedGroupError(
                        f"group order exceeds the supported bound {MAX_ORDER}"
                    )
                index[b] = len(elements)
                elements.append(b)
                queue.append(b)
    n = len(elements)
    mul = [
        [index[tuple(a[b[v]] for v in range(degree))] for b in elements]
        for a in elements
    ]
    gen_idx = [index[s] for s in gens]
    witness: list[int] = []
    span = frozenset({0})
    for g in gen_idx:
        if g not in span:
            witness.append(g)
            span = _closure(mul, witness)
    comp = None
    if component_generators is not None:
        for k in component_generators:
            if not 0 <= k < len(gens):
                raise GroupError(f"component generator index {k} out of range")
        comp = _closure(mul, [gen_idx[k] for k in component_generators])
    G = FiniteGroup(mul, witness, perms=elements, component_elements=comp)
    G.generator_images = tuple(gen_idx)
    assert G.order == n
    return G


def _closure(mul, gens) -> frozenset[int]:
    seen = {0}
    queue = deque([0])
    while queue:
        a = queue.popleft()
        for s in gens:
            b = mul[a][s]
            if b not in seen:
                seen.add(b)
                queue.append(b)
    return frozenset(seen)


def cyclic_group(n: int) -> FiniteGroup:
    if n == 1:
        return generate_group(1, [])
    return generate_group(n, [[(i + 1) % n for i in range(n)]])


def dihedral_group(n: int) -> FiniteGroup:
    """Symmetries of a regular ``n``-gon, order ``2n``."""
    rot = [(i + 1) % n for i in range(n)]
    ref = [(-i) % n for i in range(n)]
    return generate_group(n, [rot, ref])


def symmetric_group(n: int) -> FiniteGroup:
    if n == 1:
        return generate_group(1, [])
    cyc = [(i + 1) % n for i in range(n)]
    swap = list(range(n))
    swap[0], swap[1] = 1, 0
    return generate_group(n, [cyc, swap] if n > 2 else [swap])


def direct_product(G0: FiniteGroup, G1: FiniteGroup) -> tuple[FiniteGroup, list[tuple[int, int]]]:
    """The direct product and the decoding of its elements as pairs."""
    if G0.perms is None or G1.perms is None:
        raise GroupError("direct_product needs permutation groups")
    d0, d1 = len(G0.perms[0]), len(G1.perms[0])
    gens = []
    for g in G0.generator_witness:
        p = G0.perms[g]
        gens.append([p[i] if i < d0 else i for i in range(d0 + d1)])
    for h in G1.generator_witness:
        p = G1.perms[h]
        gens.append([i if i < d0 else d0 + p[i - d0] for i in range(d0 + d1)])
    P = generate_group(d0 + d1, gens)
    idx0 = {p: i for i, p in enumerate(G0.perms)}
    idx1 = {p: i for i, p in enumerate(G1.perms)}
    pairs = [(idx0[p[:d0]], idx1[tuple(v - d0 for v in p[d0:])]) for p in P.perms]
    return P, pairs


# -- homomorphisms ----------------------------------------------------------


@dataclass(frozen=True)
class GroupHom:
    source: FiniteGroup = field(repr=False)
    target: FiniteGroup = field(repr=False)
    image: tuple[int, ...]

    @cached_property
    def injective(self) -> bool:
        return len(set(self.image)) == len(self.image)

    def __call__(self, g: int) -> int:
        return self.image[g]

    def check(self) -> None:
        S, T = self.source, self.target
        if len(self.image) != S.order:
            raise GroupError("image array has wrong length")
        if self.image[0] != 0:
            raise GroupError("identity must map to identity")
        for a in range(S.order):
            for b in range(S.order):
                if self.image[S.mul[a][b]] != T.mul[self.image[a]][self.image[b]]:
                    raise GroupError(f"not a homomorphism at {(a, b)}")

    def then(self, other: "GroupHom") -> "GroupHom":
        """``other`` after ``self``."""
        if other.source is not self.target:
            raise GroupError("cannot compose homomorphisms with mismatched groups")
        return GroupHom(self.source, other.target, tuple(other.image[i] for i in self.image))

    def conjugated(self, c: int) -> "GroupHom":
        T = self.target
        return GroupHom(self.source, T, tuple(T.conj(c, i) for i in self.image))

    def inverse(self) -> "GroupHom":
        if not self.injective or self.source.order != self.target.order:
            raise GroupError("only isomorphisms can be inverted")
        inv = [0] * self.target.order
        for a, b in enumerate(self.image):
            inv[b] = a
        return GroupHom(self.target, self.source, tuple(inv))


def identity_hom(G: FiniteGroup) -> GroupHom:
    return GroupHom(G, G, tuple(range(G.order)))


@dataclass(frozen=True)
class _WordTree:
    gens: tuple[int, ...]
    steps: tuple[tuple[int, int, int], ...]  # (element, parent, generator position)


def _word_tree(G: FiniteGroup) -> _WordTree:
    cached = G.__dict__.get("_word_tree")
    if cached is not None:
        return cached
    gens = G.generator_witness
    steps = []
    seen = {0}
    queue = deque([0])
    while queue:
        a = queue.popleft()
        for k, s in enumerate(gens):
            b = G.mul[a][s]
            if b not in seen:
                seen.add(b)
                steps.append((b, a, k))
                queue.append(b)
    tree = _WordTree(tuple(gens), tuple(steps))
    G.__dict__["_word_tree"] = tree
    return tree


def _extend(G0: FiniteGroup, G1: FiniteGroup, gen_images: Sequence[int]) -> Optional[tuple[int, ...]]:
    tree = _word_tree(G0)
    image = [0] * G0.order
    for b, a, k in tree.steps:
        image[b] = G1.mul[image[a]][gen_images[k]]
    mul0, mul1 = G0.mul, G1.mul
    for a in range(G0.order):
        ia = image[a]
        for k, s in enumerate(tree.gens):
            if image[mul0[a][s]] != mul1[ia][gen_images[k]]:
                return None
    return tuple(image)


def _hom_images(
    G0: FiniteGroup,
    G1: FiniteGroup,
    injective_only: bool,
    targets: Optional[Iterable[int]] = None,
):
    if injective_only and G0.order > G1.order:
        return
    pool = sorted(set(targets)) if targets is not None else list(range(G1.order))
    o0, o1 = G0.element_orders, G1.element_orders
    choices = []
    for s in G0.generator_witness:
        if injective_only:
            choices.append([t for t in pool if o1[t] == o0[s]])
        else:
            choices.append([t for t in pool if o0[s] % o1[t] == 0])
    for gen_images in product(*choices):
        image = _extend(G0, G1, gen_images)
        if image is None:
            continue
        if injective_only and len(set(image)) != len(image):
            continue
        yield image


def enumerate_homs(G0: FiniteGroup, G1: FiniteGroup, injective_only: bool = False) -> list[GroupHom]:
    images = sorted(_hom_images(G0, G1, injective_only))
    return [GroupHom(G0, G1, im) for im in images]


def homs_into_subgroup(H: FiniteGroup, K: Subgroup, injective_only: bool = True) -> list[GroupHom]:
    """Homomorphisms ``H -> K.parent`` whose image lies in ``K``."""
    images = sorted(_hom_images(H, K.parent, injective_only, targets=K.elements))
    return [GroupHom(H, K.parent, im) for im in images]


@dataclass(frozen=True)
class HomClass:
    representative: GroupHom
    orbit: frozenset[tuple[int, ...]] = field(repr=False)

    @property
    def source(self) -> FiniteGroup:
        return self.representative.source

    @property
    def target(self) -> FiniteGroup:
        return self.representative.target

    def __contains__(self, f: GroupHom) -> bool:
        return f.image in self.orbit


def conjugation_orbit(f: GroupHom) -> frozenset[tuple[int, ...]]:
    T = f.target
    return frozenset(tuple(T.conj(c, i) for i in f.image) for c in range(T.order))


def hom_class_of(f: GroupHom) -> HomClass:
    orbit = conjugation_orbit(f)
    return HomClass(GroupHom(f.source, f.target, min(orbit)), orbit)


def pi0_hom_classes(G0: FiniteGroup, G1: FiniteGroup, injective_only: bool = False) -> list[HomClass]:
    classes: list[HomClass] = []
    seen: set[tuple[int, ...]] = set()
    for f in enumerate_homs(G0, G1, injective_only):
        if f.image in seen:
            continue
        cls = hom_class_of(f)
        seen |= cls.orbit
        classes.append(cls)
    return classes


def compose_hom_classes(c01: HomClass, c12: HomClass) -> HomClass:
    if c01.target is not c12.source:
        raise GroupError("hom classes are not composable")
    return hom_class_of(c01.representative.then(c12.representative))


# -- Hom groupoids ------------------------------------------------------------


def hom_groupoid(G0: FiniteGroup, G1: FiniteGroup, injective_only: bool = False):
    """``[Hom(G0, G1) / G1^conj]`` as an action groupoid."""
    from .groupoid import ActionGroupoid

    homs = enumerate_homs(G0, G1, injective_only)
    index = {f.image: i for i, f in enumerate(homs)}
    act = [
        tuple(index[tuple(G1.conj(c, v) for v in f.image)] for f in homs)
        for c in range(G1.order)
    ]
    return ActionGroupoid(homs, G1, act)


# -- isomorphism ------------------------------------------------------------


def find_isomorphism(G0: FiniteGroup, G1: FiniteGroup) -> Optional[GroupHom]:
    if G0 is G1:
        return identity_hom(G0)
    if G0.order != G1.order or G0.order_histogram != G1.order_histogram:
        return None
    if G0.is_abelian != G1.is_abelian:
        return None
    if G0.mul == G1.mul:
        return GroupHom(G0, G1, tuple(range(G0.order)))
    for image in _hom_images(G0, G1, injective_only=True):
        return GroupHom(G0, G1, image)
    return None


def abelian_invariants(G: FiniteGroup) -> tuple[int, ...]:
    """Invariant factors ``d1 | d2 | ...`` of an abelian group."""
    if not G.is_abelian:
        raise GroupError("invariant factors need an abelian group")
    n = G.order
    primes = [p for p in range(2, n + 1) if n % p == 0 and all(p % q for q in range(2, p))]
    factors: list[int] = []
    for p in primes:
        # log_p #{g : g^(p^k) = 1} = sum_i min(k, e_i) over the p-primary factors
        logs = [0]
        while True:
            k = len(logs)
            count = sum(1 for o in G.element_orders if (p**k) % o == 0)
            logs.append(_ilog(count, p))
            if logs[-1] == logs[-2]:
                break
        at_least = [logs[k] - logs[k - 1] for k in range(1, len(logs))]
        exps: list[int] = []
        for k in range(1, len(at_least)):
            exps.extend([k] * (at_least[k - 1] - at_least[k]))
        exps.sort(reverse=True)
        for i, e in enumerate(exps):
            if i < len(factors):
                factors[i] *= p**e
            else:
                factors.append(p**e)
    return tuple(sorted(factors))


def _ilog(c: int, p: int) -> int:
    e = 0
    while c > 1:
        c //= p
        e += 1
    return e


def _canonical_table(G: FiniteGroup) -> tuple:
    """Lexicographically least (signature, table) over minimal generating tuples."""
    n = G.order
    if n == 1:
        return ((), ())
    orders = G.element_orders
    nonid = list(range(1, n))
    for d in range(1, n):
        best = None
        for tup in product(nonid, repeat=d):
            sig = tuple(orders[g] for g in tup)
            if best is not None and sig > best[0]:
                continue
            if len(G.generated(tup)) != n:
                continue
            seq = _bfs_order(G, tup)
            pos = {g: i for i, g in enumerate(seq)}
            table = tuple(pos[G.mul[a][b]] for a in seq for b in seq)
            cand = (sig, table)
            if best is None or cand < best:
                best = cand
        if best is not None:
            return best
    raise AssertionError("unreachable: the whole group generates itself")


def iso_class_key(G: FiniteGroup) -> tuple:
    """A canonical key equal for two groups iff they are isomorphic.

    Abelian groups are keyed by their element-order histogram, which already
    determines them; nonabelian groups additionally carry a canonical table.
    """
    cached = G.__dict__.get("_iso_key")
    if cached is not None:
        return cached
    if G.order > MAX_ORDER:
        raise UnsupportedGroupError(f"order {G.order} exceeds supported bound {MAX_ORDER}")
    table = () if G.is_abelian else _canonical_table(G)
    key = (G.order, G.order_histogram, G.is_abelian, table)
    G.__dict__["_iso_key"] = key
    return key


def group_label(G: FiniteGroup) -> str:
    """Short human-readable name for the isomorphism class of ``G``."""
    if G.is_abelian:
        inv = abelian_invariants(G)
        return "x".join(f"C{d}" for d in inv) if inv else "C1"
    n = G.order
    hist = dict(G.order_histogram)
    if n % 2 == 0 and hist.get(n // 2, 0) > 0 and n >= 6:
        half = n // 2
        rots = [g for g in G.elements() if G.element_orders[g] == half]
        r = rots[0]
        cyc = G.generated([r])
        if all(G.element_orders[g] == 2 for g in G.elements() if g not in cyc):
            return f"D{n}"
    if n == 8 and hist.get(4, 0) == 6:
        return "Q8"
    if n == 6:
        return "S3"
    digest = hashlib.sha1(repr(iso_class_key(G)).encode()).hexdigest()[:6]
    return f"G{n}_{digest}"


# -- components -------------------------------------------------------------


def group_pi0(G: FiniteGroup) -> tuple[FiniteGroup, GroupHom]:
    """``G / G_0`` where ``G_0`` is the designated identity component."""
    N = G.component_subgroup
    if N is None:
        raise GroupError("group has no component subgroup")
    if not N.is_normal():
        raise GroupError("component subgroup is not normal")
    rep_of = [0] * G.order
    for g in G.elements():
        rep_of[g] = min(G.mul[g][n] for n in N.elements)
    reps = sorted(set(rep_of))
    q = {r: i for i, r in enumerate(reps)}
    mul = [[q[rep_of[G.mul[a][b]]] for b in reps] for a in reps]
    witness: list[int] = []
    for g in G.generator_witness:
        c = q[rep_of[g]]
        if c != 0 and c not in witness:
            witness.append(c)
    Q = FiniteGroup(mul, witness)
    return Q, GroupHom(G, Q, tuple(q[rep_of[g]] for g in G.elements()))


def subgroup_conjugacy_classes(G: FiniteGroup) -> list[list[int]]:
    """Conjugacy classes of subgroups as lists of indices into ``G.subgroups``.

    Each class is sorted, so its first entry is the canonical representative.
    """
    cached = G.__dict__.get("_subgroup_classes")
    if cached is not None:
        return cached
    index = G.subgroup_index
    seen: set[int] = set()
    classes = []
    for i, S in enumerate(G.subgroups):
        if i in seen:
            continue
        cls = sorted({index[S.conjugate(g)] for g in G.elements()})
        seen.update(cls)
        classes.append(cls)
    G.__dict__["_subgroup_classes"] = classes
    return classes


def conjugacy_representative(S: Subgroup) -> int:
    """Index of the canonical representative of the conjugacy class of ``S``."""
    G = S.parent
    table = G.__dict__.get("_conj_rep")
    if table is None:
        table = {}
        for cls in subgroup_conjugacy_classes(G):
            for i in cls:
                table[i] = cls[0]
        G.__dict__["_conj_rep"] = table
    return table[G.subgroup_index[S]]


def subgroup_key(S: Subgroup) -> tuple:
    return iso_class_key(S.abstract)
