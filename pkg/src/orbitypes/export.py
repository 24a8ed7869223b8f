"""Report dictionaries for each command, and DOT rendering of posets and categories."""

from __future__ import annotations

import json
from datetime import datetime, timezone
from typing import Any

from . import __version__
from .gcomplex import SimplicialAction, isotropy, quotient
from .group_core import FiniteGroup, Subgroup, group_label
from .level_structures import groupoid_components, level_groupoid, phi0_category
from .orbit_cat import bold_phi0, compare_phi0, orbit_category
from .scenario import Scenario
from .strata import (
    StratumPoset,
    check_counting,
    frontier_poset,
    normal_type_refinement,
    orbit_type_partition,
)


def envelope(command: str, sc: Scenario, result: Any, *, timestamp: bool = True) -> dict:
    out = {
        "command": command,
        "tool_version": __version__,
        "scenario": {"name": sc.name, "sha256": sc.sha256},
        "warnings": list(sc.warnings),
        "result": result,
    }
    if timestamp:
        out["generated_at"] = datetime.now(timezone.utc).isoformat(timespec="seconds")
    return out


def dumps(report: dict) -> str:
    return json.dumps(report, sort_keys=True, indent=2)


def comparable(report: dict) -> dict:
    """The report without its timestamp."""
    return {k: v for k, v in report.items() if k != "generated_at"}


def _subgroup(S: Subgroup) -> dict:
    return {"elements": list(S.elements), "order": S.order, "label": group_label(S.abstract)}


def analyze_report(action: SimplicialAction) -> dict:
    G = action.group
    Q = quotient(action)
    part = orbit_type_partition(action, "iso")
    conj = orbit_type_partition(action, "conj")
    P = frontier_poset(action)
    phi = phi0_category(action)
    return {
        "group": {
            "order": G.order,
            "label": group_label(G),
            "subgroups": len(G.subgroups),
            "component_subgroup_order": G.component_subgroup.order if G.component_subgroup else None,
        },
        "complex": {
            "simplices": len(action.complex),
            "dimension": action.complex.dim,
            "subdivisions": action.subdivision_depth,
        },
        "orbit_classes": len(Q),
        "orbit_types": {part.labels[k]: len(v) for k, v in part.blocks.items()},
        "conjugacy_types": len(conj.blocks),
        "strata": len(P),
        "frontier_ok": P.frontier_ok,
        "phi0_objects": len(phi),
        "normal_type_blocks": normal_type_refinement(action).n_blocks(),
    }


def poset_report(P: StratumPoset) -> dict:
    return {
        "where": P.where,
        "frontier_ok": P.frontier_ok,
        "strata": [
            {
                "index": i,
                "name": s.name,
                "label": s.label,
                "component": s.component,
                "points": len(s.points),
                "orbit_classes": len(s.classes),
            }
            for i, s in enumerate(P.strata)
        ],
        "covers": [list(e) for e in P.covers],
        "maximal": P.maximal(),
        "minimal": P.minimal(),
    }


def strata_report(action: SimplicialAction, mode: str = "iso", where: str = "quotient") -> dict:
    P = frontier_poset(action, mode, where)
    out = poset_report(P)
    out["mode"] = mode
    return out


def poset_dot(P: StratumPoset, name: str = "strata") -> str:
    lines = [f'digraph "{name}" {{', "  rankdir=BT;"]
    for i, s in enumerate(P.strata):
        lines.append(f'  n{i} [label="{s.name}"];')
    for a, b in P.covers:
        # edges point from the smaller stratum up to the one whose closure contains it
        lines.append(f"  n{b} -> n{a};")
    lines.append("}")
    return "\n".join(lines) + "\n"


def phi0_report(action: SimplicialAction) -> dict:
    phi = phi0_category(action)
    n = len(phi)
    return {
        "objects": [
            {
                "index": i,
                "H": o.h_label,
                "component": o.component,
                "basepoint": o.basepoint.point,
                "level": list(o.basepoint.image),
            }
            for i, o in enumerate(phi.objects)
        ],
        "morphisms": [
            {"source": i, "target": j, "classes": [list(c.representative.image) for c in phi.hom(i, j)]}
            for i in range(n)
            for j in range(n)
            if phi.hom(i, j)
        ],
    }


def bold_report(action: SimplicialAction) -> dict:
    B = bold_phi0(action)
    C = compare_phi0(action, B)
    subs = B.orbit_cat.subgroups
    n = len(B)
    return {
        "objects": [
            {"index": k, "subgroup": _subgroup(subs[o.subgroup]), "component": o.component, "kappa": C.object_map[k]}
            for k, o in enumerate(B.objects)
        ],
        "morphisms": [
            {"source": a, "target": b, "representatives": B.hom(a, b)}
            for a in range(n)
            for b in range(n)
            if B.hom(a, b)
        ],
        "kappa": {
            "essentially_surjective": C.essentially_surjective,
            "bijective_on_objects": C.bijective_on_objects,
            "collapse": C.collapse,
        },
    }


def category_dot(report: dict, name: str) -> str:
    lines = [f'digraph "{name}" {{']
    for o in report["objects"]:
        label = o.get("H") or o["subgroup"]["label"]
        lines.append(f'  n{o["index"]} [label="{label}#{o["component"]}"];')
    for m in report["morphisms"]:
        if m["source"] != m["target"]:
            k = len(m.get("classes", m.get("representatives", [])))
            lines.append(f'  n{m["source"]} -> n{m["target"]} [label="{k}"];')
    lines.append("}")
    return "\n".join(lines) + "\n"


def orbit_category_report(G: FiniteGroup) -> dict:
    oc = orbit_category(G)
    n = len(oc.subgroups)
    return {
        "subgroups": [_subgroup(S) for S in oc.subgroups],
        "morphisms": [
            {"source": i, "target": j, "count": len(oc.mor[(i, j)]), "representatives": oc.mor[(i, j)]}
            for i in range(n)
            for j in range(n)
            if oc.mor[(i, j)]
        ],
    }


def xh_report(action: SimplicialAction, S: Subgroup) -> dict:
    H = S.abstract
    X = level_groupoid(action, H)
    comps = groupoid_components(X)
    return {
        "H": _subgroup(S),
        "objects": X.n_objects,
        "morphisms": X.n_morphisms,
        "orbit_classes": len(set(X.orbits())),
        "components": [
            {
                "index": c,
                "size": len(block),
                "points": sorted({X.objects[i].point for i in block}),
            }
            for c, block in enumerate(comps)
        ],
        "counting_identities": check_counting(action, H).as_dict(),
    }


def strata_rows(action: SimplicialAction, mode: str = "iso", where: str = "quotient") -> list[dict]:
    """Flat per-stratum rows for the CSV summary."""
    P = frontier_poset(action, mode, where)
    rank = _ranks(P)
    rows = []
    for i, s in enumerate(P.strata):
        iso = isotropy(action, s.points[0])
        rows.append(
            {
                "index": i,
                "name": s.name,
                "isotropy_order": iso.order,
                "points": len(s.points),
                "orbit_classes": len(s.classes),
                "rank": rank[i],
                "below": ";".join(str(b) for a, b in P.covers if a == i),
            }
        )
    return rows


def _ranks(P: StratumPoset) -> list[int]:
    """Length of the longest chain down to a minimal stratum."""
    below: dict[int, list[int]] = {i: [] for i in range(len(P))}
    for a, b in P.covers:
        below[a].append(b)
    memo: dict[int, int] = {}

    def rank(i: int) -> int:
        if i not in memo:
            memo[i] = 1 + max((rank(b) for b in below[i]), default=-1)
        return memo[i]

    return [rank(i) for i in range(len(P))]


__all__ = [
    "analyze_report",
    "bold_report",
    "category_dot",
    "comparable",
    "dumps",
    "envelope",
    "orbit_category_report",
    "phi0_report",
    "poset_dot",
    "poset_report",
    "strata_report",
    "strata_rows",
    "xh_report",
]
