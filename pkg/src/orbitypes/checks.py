"""The full invariant suite behind the ``check`` command."""

from __future__ import annotations

import time
from dataclasses import dataclass, field
from typing import Callable, Optional

from .gcomplex import (
    SimplicialAction,
    check_regular,
    component_ids,
    fixed_subcomplex,
    isotropy,
    pi0_transformation_groupoid,
    quotient,
)
from .group_core import conjugacy_representative, enumerate_homs, subgroup_key
from .level_structures import (
    functor_to_phi0,
    inner_autoequivalence,
    level_groupoid,
    phi0_category,
    restrict_along,
)
from .orbit_cat import bold_phi0, compare_phi0, fixed_point_diagram, orbit_category
from .scenario import example_action, toric_factors, _CALL, _split_args
from .strata import (
    check_counting,
    closure_decomposition,
    frontier_poset,
    normal_type_refinement,
    orbit_type_partition,
    posets_isomorphic,
    product_poset,
    refinement_between,
    refines,
    simplex_face_poset,
    subgroup_iso_classes,
)

# exhaustive groupoid axiom checks above this many morphisms fall back to the action law
AXIOM_BUDGET = 6000
RESTRICTION_ORDER_BOUND = 12


@dataclass
class CheckResult:
    name: str
    ok: bool
    detail: object = None

    def as_dict(self) -> dict:
        return {"name": self.name, "ok": self.ok, "detail": self.detail}


@dataclass
class Verdict:
    results: list[CheckResult] = field(default_factory=list)
    timings: dict[str, float] = field(default_factory=dict)

    @property
    def ok(self) -> bool:
        return all(r.ok for r in self.results)

    def as_dict(self) -> dict:
        return {
            "ok": self.ok,
            "passed": sum(r.ok for r in self.results),
            "failed": [r.name for r in self.results if not r.ok],
            "checks": [r.as_dict() for r in self.results],
        }


def _run(verdict: Verdict, name: str, fn: Callable[[], object]) -> None:
    t = time.perf_counter()
    try:
        detail = fn()
        ok = True
        if isinstance(detail, tuple) and len(detail) == 2 and isinstance(detail[0], bool):
            ok, detail = detail
    except Exception as exc:  # a failed invariant is reported, not raised
        ok, detail = False, f"{type(exc).__name__}: {exc}"
    verdict.results.append(CheckResult(name, ok, detail))
    verdict.timings[name] = time.perf_counter() - t


# -- individual checks -------------------------------------------------------------------


def _isotropy_equivariance(action: SimplicialAction):
    G = action.group
    for x in action.points:
        S = isotropy(action, x)
        for g in G.elements():
            T = isotropy(action, action.act(g, x))
            if T != S.conjugate(g):
                return False, f"iso(g.x) differs from g iso(x) g^-1 at x={x}, g={g}"
    return len(action.points) * G.order


def _fixed_sets(action: SimplicialAction):
    G = action.group
    fixed = {S: set(fixed_subcomplex(action, S)) for S in G.subgroups}
    for S, pts in fixed.items():
        direct = {x for x in action.points if S.issubset(isotropy(action, x))}
        if pts != direct:
            return False, f"fixed set of subgroup {S.elements} is not the set of points it fixes"
    for S in G.subgroups:
        for T in G.subgroups:
            if S.issubset(T) and not fixed[T] <= fixed[S]:
                return False, "fixed sets are not monotone"
    return len(G.subgroups)


def _quotient_well_defined(action: SimplicialAction):
    Q = quotient(action)
    for cls in Q.classes:
        keys = {subgroup_key(isotropy(action, x)) for x in cls}
        conj = {conjugacy_representative(isotropy(action, x)) for x in cls}
        if len(keys) != 1 or len(conj) != 1:
            return False, f"orbit class {cls[:4]} mixes isotropy types"
    return len(Q)


def _partitions(action: SimplicialAction):
    pi = orbit_type_partition(action, "iso")
    pc = orbit_type_partition(action, "conj")
    pi.check(action)
    pc.check(action)
    if not refines(pc, pi):
        return False, "conjugacy partition does not refine the isomorphism partition"
    return {"iso_blocks": len(pi.blocks), "conj_blocks": len(pc.blocks)}


def _frontier(action: SimplicialAction):
    out = {}
    for where in ("source", "quotient"):
        for mode in ("iso", "conj"):
            P = frontier_poset(action, mode, where)
            P.check_order_axioms()
            if not P.frontier_ok:
                return False, f"frontier condition fails ({mode}, {where}): {P.violations[:5]}"
            for key in {s.key for s in P.strata}:
                closure_decomposition(action, key, mode, where)
            out[f"{mode}/{where}"] = len(P)
    return out


def _strata_shadow(action: SimplicialAction):
    Q = quotient(action)
    P = frontier_poset(action, "iso", "quotient")
    for s in P.strata:
        for c in s.classes:
            if set(Q.classes[c]) - set(s.points):
                return False, "quotient stratum is not a union of orbits"
    return len(P)


def _refinement(action: SimplicialAction):
    ref = normal_type_refinement(action)
    coarser, finer = refinement_between(action, ref)
    if not (coarser and finer):
        return False, {"coarser_than_strata": coarser, "finer_than_iso": finer}
    return ref.n_blocks()


def _level_groupoids(action: SimplicialAction):
    out = {}
    for S in subgroup_iso_classes(action.group):
        H = S.abstract
        X = level_groupoid(action, H)
        X.check_action()
        if X.n_morphisms <= AXIOM_BUDGET:
            X.check_axioms()
        expected = 0
        for x in action.points:
            iso = isotropy(action, x)
            if iso.order % H.order == 0:
                expected += len(enumerate_homs(H, iso.abstract, injective_only=True))
        if X.n_objects != expected:
            return False, f"|X(H)_0| = {X.n_objects}, expected {expected}"
        out[str(S.order)] = out.get(str(S.order), 0) + X.n_objects
    return out


def _restrictions(action: SimplicialAction):
    reps = [S.abstract for S in subgroup_iso_classes(action.group) if S.order <= RESTRICTION_ORDER_BOUND]
    Xs = {id(H): level_groupoid(action, H) for H in reps}
    count = 0
    for H in reps:
        ident = next(f for f in enumerate_homs(H, H, injective_only=True) if f.image == tuple(H.elements()))
        F = restrict_along(ident, action, Xs[id(H)], Xs[id(H)])
        if F.object_map != list(range(Xs[id(H)].n_objects)):
            return False, "restriction along the identity is not the identity"
    homs = {
        (i, j): enumerate_homs(H0, H1, injective_only=True) if H1.order % H0.order == 0 else []
        for i, H0 in enumerate(reps)
        for j, H1 in enumerate(reps)
    }
    functors = {}
    for (i, j), fs in homs.items():
        for f in fs:
            F = restrict_along(f, action, Xs[id(reps[j])], Xs[id(reps[i])])
            F.check()
            functors[(i, j, f.image)] = F.object_map
    for (i, j), alphas in homs.items():
        for alpha in alphas:
            Fa = functors[(i, j, alpha.image)]
            for k in range(len(reps)):
                for beta in homs[(j, k)]:
                    Fb = functors[(j, k, beta.image)]
                    Fba = functors[(i, k, alpha.then(beta).image)]
                    if Fba != [Fa[x] for x in Fb]:
                        return False, "restriction is not contravariantly functorial"
                    count += 1
    return count


def _inner(action: SimplicialAction):
    count = 0
    for S in subgroup_iso_classes(action.group):
        H = S.abstract
        X = level_groupoid(action, H)
        for a in H.elements():
            count += inner_autoequivalence(action, H, a, X).check()
    return count


def _phi0(action: SimplicialAction, exhaustive: bool):
    phi = phi0_category(action)
    phi.check_axioms()
    F = functor_to_phi0(action, phi)
    pairs = F.check(exhaustive=exhaustive)
    Q = quotient(action)
    for cls in Q.classes:
        if len({F.object_of[x] for x in cls}) != 1:
            return False, "point functor is not constant on orbits"
    K = action.complex
    for a, b in K.face_pairs():
        if isotropy(action, a) == isotropy(action, b) and F.object_of[a] != F.object_of[b]:
            return False, "point functor separates adjacent points with equal isotropy"
    return {"objects": len(phi), "pairs": pairs}


def _orbit_side(action: SimplicialAction):
    oc = orbit_category(action.group)
    oc.check_axioms()
    D = fixed_point_diagram(action, oc)
    n = D.check_functoriality()
    B = bold_phi0(action, D)
    B.check_axioms()
    C = compare_phi0(action, B)
    m = C.check_functor()
    if not C.essentially_surjective:
        return False, "kappa is not essentially surjective"
    return {
        "subgroups": len(oc.subgroups),
        "bold_objects": len(B),
        "phi0_objects": len(C.phi0),
        "kappa_bijective_on_objects": C.bijective_on_objects,
        "diagram_pairs": n,
        "kappa_pairs": m,
    }


def _counting(action: SimplicialAction):
    reports = [check_counting(action, S.abstract) for S in subgroup_iso_classes(action.group)]
    ok = all(r.ok for r in reports)
    return ok, [r.as_dict() for r in reports]


def _pi0_quotient(action: SimplicialAction):
    P = pi0_transformation_groupoid(action)
    return {"objects": P.n_objects, "morphisms": P.n_morphisms}


def _product_law(name: str, action: SimplicialAction):
    m = _CALL.match(name)
    a, b = (example_action(s) for s in _split_args(m.group(2)))
    na = len(set(component_ids(a.complex).values()))
    nb = len(set(component_ids(b.complex).values()))
    n = len(set(component_ids(action.complex).values()))
    return n == na * nb, {"product": n, "factors": [na, nb]}


def _toric(action: SimplicialAction, k: int):
    P = frontier_poset(action, "iso", "quotient")
    target = simplex_face_poset(1)
    for _ in range(k - 1):
        target = product_poset(target, simplex_face_poset(1))
    return posets_isomorphic(P.graph(), target), {"strata": len(P), "target": target.number_of_nodes()}


def run_checks(action: SimplicialAction, name: Optional[str] = None, exhaustive: bool = True) -> Verdict:
    v = Verdict()
    G = action.group
    _run(v, "group_axioms", lambda: (G.check_axioms(), G.order)[1])
    _run(v, "regular", lambda: (check_regular(action), True))
    _run(v, "isotropy_equivariance", lambda: _isotropy_equivariance(action))
    _run(v, "fixed_sets", lambda: _fixed_sets(action))
    _run(v, "quotient_well_defined", lambda: _quotient_well_defined(action))
    _run(v, "orbit_type_partitions", lambda: _partitions(action))
    _run(v, "frontier_and_closure", lambda: _frontier(action))
    _run(v, "strata_orbit_invariant", lambda: _strata_shadow(action))
    _run(v, "normal_type_refinement", lambda: _refinement(action))
    _run(v, "level_groupoids", lambda: _level_groupoids(action))
    _run(v, "restriction_functoriality", lambda: _restrictions(action))
    _run(v, "inner_autoequivalence", lambda: _inner(action))
    _run(v, "phi0", lambda: _phi0(action, exhaustive))
    _run(v, "orbit_category_and_kappa", lambda: _orbit_side(action))
    _run(v, "counting_identities", lambda: _counting(action))
    if G.component_subgroup is not None:
        _run(v, "pi0_quotient_groupoid", lambda: _pi0_quotient(action))
    if name is not None:
        k = toric_factors(name)
        if k:
            _run(v, "toric_face_poset", lambda: _toric(action, k))
        if name.startswith("product("):
            _run(v, "pi0_product_law", lambda: _product_law(name, action))
    return v
