"""JSON codecs for groups, homs, rings, modules, and morphisms.

The wire format keeps exact scalars exact: prime-field entries are plain
ints, rationals are strings like "3/2" (see the field classes).  Structure
constants and actions are stored sparsely as (index, value-vector) records
so group-algebra fixtures stay readable.  Round trips are bit-exact on the
mathematical content; labels ride along but never affect equality.

Rings and modules can also be declared through named builders
("group_algebra", "free", ...) instead of raw tables, which is what the
scenario fixtures use.  Builder forms parse to the same in-memory objects
as their raw expansions.
"""

from __future__ import annotations

from typing import Mapping, Sequence

from .abgroup import FgAbGroup, GroupElement, GroupHom
from .core import (
    BasisElement,
    GradedModule,
    GradedMorphism,
    GradedRing,
    base_field_ring,
    free_module,
    group_algebra,
    ring_as_module,
    shift_module,
    truncated_polynomial_ring,
    zero_module,
)
from .fields import ExactField, field_from_name
from .homfun import FiniteDegrees, IntensionalFreeModule, SubgroupIndexed


# ---------------------------------------------------------------------------
# groups and homs
# ---------------------------------------------------------------------------


def group_to_json(g: FgAbGroup) -> dict:
    return {"rank": g.rank, "invariants": list(g.invariants)}


def group_from_json(data: object) -> FgAbGroup:
    """Parse a group: {"rank", "invariants"} or shorthand "0", "Z", "Z^r", "Z/n"."""
    if isinstance(data, FgAbGroup):
        return data
    if isinstance(data, str):
        text = data.strip()
        if text in ("0", ""):
            return FgAbGroup(0, ())
        parts = [p.strip() for p in text.split("+")]
        rank = 0
        invariants: list[int] = []
        for p in parts:
            if p == "Z":
                rank += 1
            elif p.startswith("Z^"):
                rank += int(p[2:])
            elif p.startswith("Z/"):
                invariants.append(int(p[2:]))
            else:
                raise ValueError(f"cannot parse group shorthand {data!r}")
        return FgAbGroup(rank, tuple(invariants))
    if isinstance(data, Mapping):
        return FgAbGroup(int(data.get("rank", 0)), tuple(data.get("invariants", ())))
    raise ValueError(f"cannot parse group from {data!r}")


def element_to_json(g: GroupElement) -> list[int]:
    return list(g.coords)


def element_from_json(group: FgAbGroup, data: Sequence[int]) -> GroupElement:
    return group.element(tuple(int(c) for c in data))


def hom_to_json(h: GroupHom) -> dict:
    return {
        "domain": group_to_json(h.domain),
        "codomain": group_to_json(h.codomain),
        "matrix": [list(row) for row in h.matrix],
    }


def hom_from_json(data: Mapping) -> GroupHom:
    domain = group_from_json(data["domain"])
    codomain = group_from_json(data["codomain"])
    matrix = [list(int(x) for x in row) for row in data.get("matrix", [])]
    return GroupHom(domain, codomain, matrix)


# ---------------------------------------------------------------------------
# rings
# ---------------------------------------------------------------------------


def _basis_to_json(basis: Sequence[BasisElement]) -> list[dict]:
    return [{"name": b.name, "degree": element_to_json(b.degree)} for b in basis]


def _basis_from_json(group: FgAbGroup, data: Sequence[Mapping]) -> tuple[BasisElement, ...]:
    return tuple(
        BasisElement(str(b["name"]), element_from_json(group, b["degree"])) for b in data
    )


def _vector_to_json(field: ExactField, vec: Sequence) -> list:
    return [field.to_json(c) for c in vec]


def _vector_from_json(field: ExactField, data: Sequence) -> tuple:
    return tuple(field.from_json(c) for c in data)


def ring_to_json(r: GradedRing) -> dict:
    field = r.field
    mul = []
    for i in range(r.dim):
        for j in range(r.dim):
            vec = r.mul[i][j]
            if any(not field.is_zero(c) for c in vec):
                mul.append({"i": i, "j": j, "value": _vector_to_json(field, vec)})
    return {
        "field": field.name,
        "group": group_to_json(r.group),
        "basis": _basis_to_json(r.basis),
        "mul": mul,
        "one": _vector_to_json(field, r.one),
        "label": r.label,
    }


def ring_from_json(data: Mapping) -> GradedRing:
    """Parse a ring: raw tables, or a builder form.

    Builders: {"builder": "base_field", "field", "group"},
    {"builder": "group_algebra", "field", "group"},
    {"builder": "truncated_polynomial", "field", "group", "t_degree", "nilpotency"}.
    """
    if "builder" in data:
        kind = data["builder"]
        field = field_from_name(str(data["field"]))
        group = group_from_json(data["group"])
        if kind == "base_field":
            return base_field_ring(field, group, data.get("label"))
        if kind == "group_algebra":
            return group_algebra(field, group, data.get("label"))
        if kind == "truncated_polynomial":
            t_degree = element_from_json(group, data["t_degree"])
            return truncated_polynomial_ring(
                field, group, t_degree, int(data["nilpotency"]), data.get("label")
            )
        raise ValueError(f"unknown ring builder {kind!r}")
    field = field_from_name(str(data["field"]))
    group = group_from_json(data["group"])
    basis = _basis_from_json(group, data["basis"])
    n = len(basis)
    zero_vec = tuple(field.zero for _ in range(n))
    table = [[zero_vec for _ in range(n)] for _ in range(n)]
    for entry in data.get("mul", ()):
        table[int(entry["i"])][int(entry["j"])] = _vector_from_json(field, entry["value"])
    one = _vector_from_json(field, data["one"])
    return GradedRing(
        field, group, basis, tuple(tuple(row) for row in table), one, data.get("label", "")
    )


# ---------------------------------------------------------------------------
# modules
# ---------------------------------------------------------------------------


def module_to_json(m: GradedModule) -> dict:
    field = m.field
    action = []
    for i in range(m.ring.dim):
        for a in range(m.dim):
            vec = m.action[i][a]
            if any(not field.is_zero(c) for c in vec):
                action.append({"i": i, "a": a, "value": _vector_to_json(field, vec)})
    return {
        "ring": ring_to_json(m.ring),
        "basis": _basis_to_json(m.basis),
        "action": action,
        "label": m.label,
    }


def module_from_json(data: Mapping, ring: GradedRing | None = None) -> GradedModule:
    """Parse a module: raw tables, or a builder form over a given/embedded ring.

    Builders: {"builder": "ring", ...}, {"builder": "free", "shifts": [...]},
    {"builder": "zero"}, {"builder": "shift", "module": {...}, "by": [...]}.
    """
    if "builder" in data:
        kind = data["builder"]
        if kind == "shift":
            inner = data["module"]
            if not isinstance(inner, GradedModule):
                inner = module_from_json(inner, ring)
            by = element_from_json(inner.group, data["by"])
            return shift_module(inner, by, data.get("label"))
        if ring is None:
            ring = ring_from_json(data["ring"])
        if kind == "ring":
            return ring_as_module(ring, data.get("label"))
        if kind == "free":
            shifts = [element_from_json(ring.group, g) for g in data.get("shifts", ())]
            return free_module(ring, shifts, data.get("label"))
        if kind == "zero":
            return zero_module(ring, data.get("label", "0"))
        raise ValueError(f"unknown module builder {kind!r}")
    if ring is None:
        ring = ring_from_json(data["ring"])
    field = ring.field
    basis = _basis_from_json(ring.group, data["basis"])
    n = len(basis)
    zero_vec = tuple(field.zero for _ in range(n))
    table = [[zero_vec for _ in range(n)] for _ in range(ring.dim)]
    for entry in data.get("action", ()):
        table[int(entry["i"])][int(entry["a"])] = _vector_from_json(field, entry["value"])
    return GradedModule(ring, basis, tuple(tuple(row) for row in table), data.get("label", ""))


def morphism_to_json(f: GradedMorphism) -> dict:
    field = f.source.field
    return {
        "degree": element_to_json(f.degree),
        "matrix": [list(_vector_to_json(field, row)) for row in f.matrix],
    }


def morphism_from_json(
    data: Mapping, source: GradedModule, target: GradedModule
) -> GradedMorphism:
    field = source.field
    degree = element_from_json(source.group, data.get("degree", source.group.zero().coords))
    matrix = tuple(_vector_from_json(field, row) for row in data["matrix"])
    return GradedMorphism(source, target, matrix, degree)


# ---------------------------------------------------------------------------
# intensional free modules
# ---------------------------------------------------------------------------


def intensional_to_json(m: IntensionalFreeModule) -> dict:
    out: dict = {"ring": ring_to_json(m.ring)}
    scheme = m.scheme
    if isinstance(scheme, FiniteDegrees):
        out["free_at"] = [element_to_json(g) for g in scheme.degrees]
    else:
        out["free_over"] = group_to_json(scheme.index_group)
        out["degree_map"] = [list(row) for row in scheme.degree_map.matrix]
    return out


def intensional_from_json(
    data: Mapping, ring: GradedRing | None = None
) -> IntensionalFreeModule:
    """Parse {"free_over": group, "degree_map"?: matrix, "ring": ...} or
    {"free_at": [degree, ...], "ring": ...}.

    Without an explicit degree_map, free_over defaults to the identity on
    the grading group, i.e. one free generator in every degree.
    """
    if ring is None:
        ring = ring_from_json(data["ring"])
    if "free_at" in data:
        degrees = tuple(element_from_json(ring.group, g) for g in data["free_at"])
        return IntensionalFreeModule(ring, FiniteDegrees(degrees))
    index_group = group_from_json(data["free_over"])
    if "degree_map" in data:
        matrix = [list(int(x) for x in row) for row in data["degree_map"]]
    else:
        if index_group != ring.group:
            raise ValueError(
                "free_over without degree_map needs the index group to equal "
                "the grading group"
            )
        matrix = [
            [1 if i == j else 0 for j in range(index_group.ngens)]
            for i in range(index_group.ngens)
        ]
    degree_map = GroupHom(index_group, ring.group, matrix)
    return IntensionalFreeModule(ring, SubgroupIndexed(index_group, degree_map))
