"""Scenario files and the built-in example corpus."""

from __future__ import annotations

import hashlib
import json
import re
from dataclasses import dataclass, field
from pathlib import Path
from typing import Any, Optional

from .gcomplex import ComplexError, SimplicialAction, SimplicialComplex, product_action, regularize
from .group_core import GroupError, generate_group


class ScenarioError(ValueError):
    exit_code = 3


class ScenarioParseError(ScenarioError):
    exit_code = 2


class ScenarioValidationError(ScenarioError):
    exit_code = 3

    def __init__(self, path: str, message: str) -> None:
        super().__init__(f"{path}: {message}")
        self.path = path


@dataclass
class Scenario:
    name: str
    degree: int
    generators: list[list[int]]
    vertex_count: int
    facets: list[list[int]]
    component_subgroup: Optional[list[int]] = None
    warnings: list[str] = field(default_factory=list, compare=False)

    def to_dict(self) -> dict[str, Any]:
        group: dict[str, Any] = {"degree": self.degree, "generators": self.generators}
        if self.component_subgroup is not None:
            group["component_subgroup"] = self.component_subgroup
        return {
            "name": self.name,
            "group": group,
            "complex": {"vertex_count": self.vertex_count, "facets": self.facets},
        }

    def to_json(self) -> str:
        return json.dumps(self.to_dict(), sort_keys=True)

    @property
    def sha256(self) -> str:
        return hashlib.sha256(self.to_json().encode()).hexdigest()


# -- loading ---------------------------------------------------------------------------


def _int(value: Any, path: str) -> int:
    if isinstance(value, bool) or not isinstance(value, int):
        raise ScenarioValidationError(path, "expected an integer")
    return value


def _int_list(value: Any, path: str) -> list[int]:
    if not isinstance(value, list):
        raise ScenarioValidationError(path, "expected a list")
    return [_int(v, f"{path}[{i}]") for i, v in enumerate(value)]


def scenario_from_dict(data: Any) -> Scenario:
    if not isinstance(data, dict):
        raise ScenarioValidationError("$", "expected an object")
    for k in ("name", "group", "complex"):
        if k not in data:
            raise ScenarioValidationError(f"$.{k}", "missing")
    name = data["name"]
    if not isinstance(name, str):
        raise ScenarioValidationError("$.name", "expected a string")
    group, cx = data["group"], data["complex"]
    if not isinstance(group, dict):
        raise ScenarioValidationError("$.group", "expected an object")
    if not isinstance(cx, dict):
        raise ScenarioValidationError("$.complex", "expected an object")
    for k in ("degree", "generators"):
        if k not in group:
            raise ScenarioValidationError(f"$.group.{k}", "missing")
    for k in ("vertex_count", "facets"):
        if k not in cx:
            raise ScenarioValidationError(f"$.complex.{k}", "missing")
    degree = _int(group["degree"], "$.group.degree")
    if degree < 1:
        raise ScenarioValidationError("$.group.degree", "must be positive")
    if not isinstance(group["generators"], list):
        raise ScenarioValidationError("$.group.generators", "expected a list")
    gens = [_int_list(g, f"$.group.generators[{i}]") for i, g in enumerate(group["generators"])]
    for i, g in enumerate(gens):
        if sorted(g) != list(range(degree)):
            raise ScenarioValidationError(f"$.group.generators[{i}]", f"not a permutation of 0..{degree - 1}")
    comp = None
    if group.get("component_subgroup") is not None:
        comp = _int_list(group["component_subgroup"], "$.group.component_subgroup")
        for i, k in enumerate(comp):
            if not 0 <= k < len(gens):
                raise ScenarioValidationError(f"$.group.component_subgroup[{i}]", "generator index out of range")
    n = _int(cx["vertex_count"], "$.complex.vertex_count")
    if n < 1:
        raise ScenarioValidationError("$.complex.vertex_count", "must be positive")
    if not isinstance(cx["facets"], list) or not cx["facets"]:
        raise ScenarioValidationError("$.complex.facets", "expected a nonempty list")
    facets = [_int_list(f, f"$.complex.facets[{i}]") for i, f in enumerate(cx["facets"])]
    for i, f in enumerate(facets):
        if not f:
            raise ScenarioValidationError(f"$.complex.facets[{i}]", "empty facet")
        if len(set(f)) != len(f):
            raise ScenarioValidationError(f"$.complex.facets[{i}]", "repeated vertex")
        for j, v in enumerate(f):
            if not 0 <= v < n:
                raise ScenarioValidationError(f"$.complex.facets[{i}][{j}]", f"vertex {v} outside 0..{n - 1}")
    sc = Scenario(name, degree, gens, n, facets, comp)
    _restrict_to_vertices(sc)
    return sc


def _restrict_to_vertices(sc: Scenario) -> None:
    """Make the generators act on exactly the vertices, keeping a faithful image."""
    n = sc.vertex_count
    if sc.degree < n:
        raise ScenarioValidationError("$.group.degree", "smaller than vertex_count")
    if sc.degree == n:
        return
    for i, g in enumerate(sc.generators):
        if sorted(g[:n]) != list(range(n)):
            raise ScenarioValidationError(f"$.group.generators[{i}]", "does not preserve the vertex set")
    try:
        full = generate_group(sc.degree, sc.generators)
        image = generate_group(n, [g[:n] for g in sc.generators])
    except GroupError as exc:
        raise ScenarioValidationError("$.group", str(exc)) from None
    if image.order != full.order:
        sc.warnings.append(
            f"generators act non-faithfully on the vertices; using the faithful image "
            f"of order {image.order} instead of {full.order}"
        )
    sc.generators = [g[:n] for g in sc.generators]
    sc.degree = n


def load_scenario(path: str | Path) -> Scenario:
    try:
        text = Path(path).read_text()
    except OSError as exc:
        raise ScenarioParseError(f"cannot read {path}: {exc}") from None
    try:
        data = json.loads(text)
    except json.JSONDecodeError as exc:
        raise ScenarioParseError(f"{path}: invalid JSON: {exc}") from None
    sc = scenario_from_dict(data)
    build_action(sc)
    return sc


def build_action(sc: Scenario) -> SimplicialAction:
    try:
        G = generate_group(sc.degree, sc.generators, sc.component_subgroup)
        K = SimplicialComplex.from_facets(sc.vertex_count, sc.facets)
        return regularize(SimplicialAction.tautological(G, K))
    except (GroupError, ComplexError) as exc:
        raise ScenarioValidationError("$", str(exc)) from None


# -- examples --------------------------------------------------------------------------


def _rotation_sphere(m: int) -> SimplicialAction:
    n, north, south = m + 2, m, m + 1
    facets = [[c, i, (i + 1) % m] for c in (north, south) for i in range(m)]
    rot = [(i + 1) % m for i in range(m)] + [north, south]
    G = generate_group(n, [rot])
    K = SimplicialComplex.from_facets(n, facets)
    orient = frozenset(
        [(c, i) for c in (north, south) for i in range(m)] + [(i, (i + 1) % m) for i in range(m)]
    )
    return SimplicialAction.tautological(G, K, orient)


def _dihedral_polygon(m: int) -> SimplicialAction:
    rot = [(i + 1) % m for i in range(m)]
    ref = [(-i) % m for i in range(m)]
    K = SimplicialComplex.from_facets(m, [[i, (i + 1) % m] for i in range(m)])
    return regularize(SimplicialAction.tautological(generate_group(m, [rot, ref]), K))


def _symmetric_triangle() -> SimplicialAction:
    K = SimplicialComplex.from_facets(3, [[0, 1], [1, 2], [0, 2]])
    return regularize(SimplicialAction.tautological(generate_group(3, [[1, 2, 0], [1, 0, 2]]), K))


def _two_squares() -> SimplicialAction:
    r = [1, 2, 3, 0, 5, 6, 7, 4]
    s = [4, 7, 6, 5, 0, 3, 2, 1]
    facets = [[i, (i + 1) % 4] for i in range(4)] + [[4 + i, 4 + (i + 1) % 4] for i in range(4)]
    G = generate_group(8, [r, s], component_generators=[0])
    return SimplicialAction.tautological(G, SimplicialComplex.from_facets(8, facets))


def _point() -> SimplicialAction:
    return SimplicialAction.tautological(generate_group(1, []), SimplicialComplex.from_facets(1, [[0]]))


_CALL = re.compile(r"^\s*([a-z_]+)\s*(?:\((.*)\))?\s*$", re.S)


def _split_args(s: str) -> list[str]:
    out, depth, cur = [], 0, ""
    for ch in s:
        if ch == "," and depth == 0:
            out.append(cur)
            cur = ""
            continue
        depth += ch == "("
        depth -= ch == ")"
        cur += ch
    if cur.strip():
        out.append(cur)
    return [a.strip() for a in out]


def example_action(name: str) -> SimplicialAction:
    m = _CALL.match(name)
    if not m:
        raise ValueError(f"cannot parse example name {name!r}")
    head, args = m.group(1), _split_args(m.group(2) or "")
    if head in ("rotation_sphere", "dihedral_polygon"):
        if len(args) != 1 or not args[0].isdigit():
            raise ValueError(f"{head} takes one integer parameter")
        k = int(args[0])
        if k < 3:
            raise ValueError(f"{head} needs m >= 3")
        return _rotation_sphere(k) if head == "rotation_sphere" else _dihedral_polygon(k)
    if head == "product":
        if len(args) != 2:
            raise ValueError("product takes two examples")
        return product_action(example_action(args[0]), example_action(args[1]))
    fixed = {"symmetric_triangle": _symmetric_triangle, "two_squares": _two_squares, "point": _point}
    if head in fixed and not args:
        return fixed[head]()
    raise ValueError(f"unknown example {name!r}")


def scenario_of(action: SimplicialAction, name: str) -> Scenario:
    G = action.group
    gens = G.generator_images if G.generator_images is not None else G.generator_witness
    comp = None
    if G.component_subgroup is not None:
        N = G.component_subgroup.elements
        comp = [k for k, g in enumerate(gens) if g in N]
        if G.generated([gens[k] for k in comp]) != frozenset(N):
            raise ValueError("component subgroup is not generated by a subset of the generators")
    K = action.complex
    return Scenario(
        name=name,
        degree=K.vertex_count,
        generators=[list(action.vertex_map[g]) for g in gens],
        vertex_count=K.vertex_count,
        facets=[list(K.simplices[i]) for i in K.facet_indices],
        component_subgroup=comp,
    )


def example(name: str) -> Scenario:
    canonical = re.sub(r"\s+", "", name)
    return scenario_of(example_action(canonical), canonical)


BUILTIN_EXAMPLES = (
    "point",
    "rotation_sphere(3)",
    "rotation_sphere(5)",
    "rotation_sphere(8)",
    "dihedral_polygon(3)",
    "dihedral_polygon(4)",
    "dihedral_polygon(5)",
    "symmetric_triangle",
    "two_squares",
    "product(rotation_sphere(3),rotation_sphere(3))",
    "product(rotation_sphere(3),rotation_sphere(4))",
    "product(dihedral_polygon(3),rotation_sphere(3))",
)


def toric_factors(name: str) -> Optional[int]:
    """Number of rotation-sphere factors if ``name`` is a product of them, else None."""
    m = _CALL.match(name)
    if not m:
        return None
    head, args = m.group(1), _split_args(m.group(2) or "")
    if head == "rotation_sphere":
        return 1
    if head == "product" and len(args) == 2:
        a, b = toric_factors(args[0]), toric_factors(args[1])
        if a and b:
            return a + b
    return None
