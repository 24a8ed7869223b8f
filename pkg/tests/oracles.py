"""Brute-force reference computations, independent of the package's algorithms.

Each oracle works from raw permutations or multiplication tables only.
"""

from __future__ import annotations

from itertools import combinations, permutations, product


def compose(p, q):
    """``p`` after ``q``."""
    return tuple(p[q[i]] for i in range(len(q)))


def closure(gens, degree):
    ident = tuple(range(degree))
    seen = {ident}
    frontier = [ident]
    while frontier:
        nxt = []
        for a in frontier:
            for s in gens:
                b = compose(a, tuple(s))
                if b not in seen:
                    seen.add(b)
                    nxt.append(b)
        frontier = nxt
    return seen


def subgroups_by_subsets(mul):
    """All subsets containing 0 closed under the table, as sorted tuples."""
    n = len(mul)
    out = []
    others = list(range(1, n))
    for r in range(n):
        for rest in combinations(others, r):
            s = (0,) + rest
            ss = set(s)
            if all(mul[a][b] in ss for a in s for b in s):
                out.append(s)
    return out


def all_homs(mul0, mul1):
    """Every map of element sets that respects the tables."""
    n0, n1 = len(mul0), len(mul1)
    out = []
    for image in product(range(n1), repeat=n0):
        if image[0] != 0:
            continue
        if all(image[mul0[a][b]] == mul1[image[a]][image[b]] for a in range(n0) for b in range(n0)):
            out.append(image)
    return out


def isomorphic_by_bijections(mul0, mul1):
    n = len(mul0)
    if n != len(mul1):
        return False
    for perm in permutations(range(1, n)):
        image = (0,) + perm
        if all(image[mul0[a][b]] == mul1[image[a]][image[b]] for a in range(n) for b in range(n)):
            return True
    return False


def inverse_table(mul):
    n = len(mul)
    return [next(b for b in range(n) if mul[a][b] == 0) for a in range(n)]


def conjugation_orbits(homs, mul1):
    inv = inverse_table(mul1)
    n1 = len(mul1)
    seen, orbits = set(), []
    for f in homs:
        if f in seen:
            continue
        orb = {tuple(mul1[mul1[c][v]][inv[c]] for v in f) for c in range(n1)}
        seen |= orb
        orbits.append(orb)
    return orbits


def setwise_stabilizer(perms, simplex):
    s = set(simplex)
    return [g for g, p in enumerate(perms) if {p[v] for v in s} == s]


def pointwise_stabilizer(perms, simplex):
    return [g for g, p in enumerate(perms) if all(p[v] == v for v in simplex)]


def components(nodes, edges):
    """Connected components by plain depth-first search."""
    adj = {v: set() for v in nodes}
    for a, b in edges:
        adj[a].add(b)
        adj[b].add(a)
    seen, out = set(), []
    for v in sorted(nodes):
        if v in seen:
            continue
        stack, comp = [v], []
        seen.add(v)
        while stack:
            u = stack.pop()
            comp.append(u)
            for w in adj[u]:
                if w not in seen:
                    seen.add(w)
                    stack.append(w)
        out.append(sorted(comp))
    return out


def simplices_of(facets):
    out = set()
    for f in facets:
        f = sorted(f)
        for r in range(1, len(f) + 1):
            out.update(combinations(f, r))
    return out


def face_adjacency(simplices):
    simplices = list(simplices)
    return [(s, t) for s in simplices for t in simplices if len(t) < len(s) and set(t) <= set(s)]


def coset_fixed_points(mul, H0, H1):
    """|(G/H1)^{H0}| for left cosets ``aH1``, straight from the table."""
    n = len(mul)
    cosets = {frozenset(mul[a][h] for h in H1) for a in range(n)}
    return sum(
        1 for c in cosets if all(frozenset(mul[h][x] for x in c) == c for h in H0)
    )


def conjugating_elements(mul, H0, H1):
    """|{g : g H0 g^-1 <= H1}|."""
    inv = inverse_table(mul)
    H1 = set(H1)
    return sum(1 for g in range(len(mul)) if all(mul[mul[g][h]][inv[g]] in H1 for h in H0))


def injections_into(mul_h, mul_g, target):
    """Injective homomorphisms from H into G landing in the subset ``target``."""
    n0 = len(mul_h)
    target = sorted(target)
    out = 0
    for image in permutations(target, n0):
        if image[0] != 0:
            continue
        if all(image[mul_h[a][b]] == mul_g[image[a]][image[b]] for a in range(n0) for b in range(n0)):
            out += 1
    return out
