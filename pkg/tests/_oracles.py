"""Independent brute-force oracles the tests compare library results against.

Everything here deliberately avoids the library's solvers: morphism spaces
are enumerated cell by cell and filtered by re-checking the defining
equations directly, so agreement with the fast paths is meaningful.
"""

from __future__ import annotations

import itertools

from regrade.abgroup import FgAbGroup, GroupHom
from regrade.core import GradedModule, GradedMorphism
from regrade.linalg import coordinates_in_span, solve


def allowed_cells(source: GradedModule, target: GradedModule, shift=None):
    """Matrix cells (b, a) a degree-preserving morphism may use.

    With a shift g, the morphism lands in target(g), so basis element a of
    degree d may hit target basis elements of degree d + g.
    """
    cells = []
    for a in range(source.dim):
        d = source.degree_of(a)
        want = d if shift is None else d + shift
        for b in range(target.dim):
            if target.degree_of(b) == want:
                cells.append((b, a))
    return cells


def brute_hom_matrices(source: GradedModule, target: GradedModule, shift=None):
    """All action-compatible degree-preserving matrices, by exhaustion.

    Enumerates every assignment of field elements to the degree-allowed
    cells and keeps the ones commuting with the action of every ring basis
    element.  Exponential in the number of cells; callers keep instances
    tiny.
    """
    field = source.field
    cells = allowed_cells(source, target, shift)
    if field.size is None:
        raise ValueError("brute enumeration needs a finite field")
    values = list(field.elements())
    found = []
    for combo in itertools.product(values, repeat=len(cells)):
        matrix = [[field.zero] * source.dim for _ in range(target.dim)]
        for (b, a), c in zip(cells, combo):
            matrix[b][a] = c

        def image(vec):
            out = [field.zero] * target.dim
            for a, c in enumerate(vec):
                if field.is_zero(c):
                    continue
                for b in range(target.dim):
                    out[b] = field.add(out[b], field.mul(matrix[b][a], c))
            return tuple(out)

        ok = True
        for i in range(source.ring.dim):
            for a in range(source.dim):
                lhs = image(source.act_basis(i, source.basis_vector(a)))
                rhs = tuple(target.act_basis(i, image(source.basis_vector(a))))
                if lhs != rhs:
                    ok = False
                    break
            if not ok:
                break
        if ok:
            found.append(tuple(tuple(row) for row in matrix))
    return found


def brute_hom_dimension(source: GradedModule, target: GradedModule, shift=None) -> int:
    """log_|F| of the number of brute-forced morphisms (the space is linear)."""
    count = len(brute_hom_matrices(source, target, shift))
    field = source.field
    dim = 0
    while field.size ** dim < count:
        dim += 1
    assert field.size ** dim == count, "morphism count is not a power of the field size"
    return dim


def all_morphisms(source: GradedModule, target: GradedModule):
    """Every degree-zero morphism as a GradedMorphism, via brute enumeration."""
    zero = source.group.zero()
    return [
        GradedMorphism(source, target, m, zero)
        for m in brute_hom_matrices(source, target)
    ]


def shifted_morphisms(source: GradedModule, target: GradedModule, shift):
    """Every degree-shift morphism as a GradedMorphism, via brute enumeration."""
    return [
        GradedMorphism(source, target, m, shift)
        for m in brute_hom_matrices(source, target, shift)
    ]


def _raw_matmul(field, x, y, rows, mid, cols):
    out = []
    for b in range(rows):
        row = []
        for a in range(cols):
            s = field.zero
            for k in range(mid):
                if not field.is_zero(x[b][k]) and not field.is_zero(y[k][a]):
                    s = field.add(s, field.mul(x[b][k], y[k][a]))
            row.append(s)
        out.append(tuple(row))
    return tuple(out)


def extension_injectivity_oracle(j: GradedModule, modules, cache=None) -> bool:
    """Direct injectivity test: extend along every mono within the corpus.

    For every mono f: A -> B between corpus modules, every group shift g,
    and every degree-g map u: A -> J, look for a degree-g map v: B -> J
    with v after f = u.  The shift loop matters: a module can absorb all
    degree-zero extension problems and still fail a shifted one.  The
    grading group must be finite so the shifts can be enumerated.

    The u with an extension form the span of the v after f, so membership is
    decided by linear algebra over the brute-forced spaces rather than by
    scanning candidate pairs.  A cache dict shared across calls keeps each
    morphism space enumerated once per (source, target, shift).
    """
    if cache is None:
        cache = {}

    def homs(src, tgt, shift):
        key = (id(src), id(tgt), None if shift is None else shift.coords)
        if key not in cache:
            cache[key] = brute_hom_matrices(src, tgt, shift)
        return cache[key]

    field = j.field
    shifts = list(j.group.elements())
    for a_mod in modules:
        for b_mod in modules:
            mono_key = ("monos", id(a_mod), id(b_mod))
            if mono_key not in cache:
                zero = a_mod.group.zero()
                cache[mono_key] = [
                    f
                    for f in (
                        GradedMorphism(a_mod, b_mod, m, zero)
                        for m in homs(a_mod, b_mod, None)
                    )
                    if f.is_mono
                ]
            monos = cache[mono_key]
            if not monos:
                continue
            for g in shifts:
                maps_to_j = homs(a_mod, j, g)
                if not maps_to_j:
                    continue
                candidates = homs(b_mod, j, g)
                for f in monos:
                    span_rows = [
                        [c for row in _raw_matmul(field, v, f.matrix, j.dim, b_mod.dim, a_mod.dim) for c in row]
                        for v in candidates
                    ]
                    for u in maps_to_j:
                        flat_u = [c for row in u for c in row]
                        if not flat_u:
                            continue
                        if coordinates_in_span(field, span_rows, flat_u) is None:
                            return False
    return True


def brute_fiber(psi: GroupHom, h, bound: int):
    """Domain elements with coordinates in [-bound, bound] mapping to h."""
    domain = psi.domain
    ranges = []
    for i in range(domain.ngens):
        if i < domain.rank:
            ranges.append(range(-bound, bound + 1))
        else:
            ranges.append(range(domain.invariants[i - domain.rank]))
    hits = []
    for coords in itertools.product(*ranges):
        g = domain.element(coords)
        if psi(g) == h:
            hits.append(g)
    return hits


def spans_same_space(field, vectors_a, vectors_b, length: int) -> bool:
    """Mutual containment of two spans, checked coordinate by coordinate."""
    for v in vectors_a:
        if coordinates_in_span(field, list(vectors_b), list(v)) is None:
            return False
    for v in vectors_b:
        if coordinates_in_span(field, list(vectors_a), list(v)) is None:
            return False
    return True


def solve_composition(field, candidates, f, u):
    """Coefficients c with sum c_k (candidates[k] after f) = u, or None."""
    if not candidates:
        return None if not u.is_zero() else []
    rows = []
    rhs = []
    flat = [v.compose(f) for v in candidates]
    for b in range(u.target.dim):
        for a in range(u.source.dim):
            rows.append([flat[k].matrix[b][a] for k in range(len(candidates))])
            rhs.append(u.matrix[b][a])
    return solve(field, rows, rhs, len(candidates))
