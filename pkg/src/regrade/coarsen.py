"""Regrading along a group surjection: coarsening, refinement, adjunctions.

Given a surjection psi: G -> H of finitely generated abelian groups, a
G-graded object is coarsened by pushing every degree through psi; the basis
and all structure constants stay as they are.  In the other direction an
H-graded module N is refined by placing a copy of N_{psi(g)} in degree g for
every g in G.  The refinement of a nonzero module is finite dimensional only
when the kernel of psi is finite, so refinement is represented lazily and
materialized over an explicit finite window of degrees on request.

The two constructions are adjoint in both orders.  Coarsening is left
adjoint to refinement for every psi, with unit the copy inclusion (each
element goes to its own copy) and counit the fiber codiagonal (sum the
copies over a fiber).  Refinement is left adjoint to coarsening exactly when
the kernel is finite, with unit the fiber diagonal and counit the copy
projection; the operations that need this direction raise
InfiniteKernelError otherwise.

At the ring level only two of the four canonical maps are ring morphisms:
the copy inclusion and the fiber codiagonal.  The copy projection is not
multiplicative and the fiber diagonal is not unital as soon as the kernel is
nontrivial, so ring-level maps are returned as RingTransformation records
whose flags state what was actually checked.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Sequence

from .abgroup import (
    EpimorphismAnalysis,
    FgAbGroup,
    GroupElement,
    GroupHom,
    analyze_epimorphism,
    fiber as group_fiber,
)
from .core import (
    BasisElement,
    GradedModule,
    GradedMorphism,
    GradedRing,
    Matrix,
    Vector,
    base_field_ring,
    direct_sum,
    finite_product,
    identity_morphism,
    ring_as_module,
    shift_module,
    solve_equivariant_matrices,
    zero_module,
)
from .errors import (
    DegreeMismatchError,
    GroupMismatchError,
    InfiniteKernelError,
    InfiniteSupportError,
    NonHomogeneousInputError,
    NotEpimorphismError,
    RingMismatchError,
    UnsupportedClassError,
    UnsupportedFamilyError,
)
from .linalg import matmul


class CoarseningContext:
    """A group surjection psi: G -> H together with its kernel analysis.

    Every regrading operation takes one of these as its first argument.  The
    kernel is computed once at construction; fibers are enumerated on demand
    and memoized, which is only possible when the kernel is finite.
    """

    def __init__(self, psi: GroupHom) -> None:
        analysis = analyze_epimorphism(psi)
        if not analysis.is_epi:
            raise NotEpimorphismError(f"{psi} is not surjective; regrading needs an epimorphism")
        self.psi = psi
        self.analysis: EpimorphismAnalysis = analysis
        self.kernel = analysis.kernel
        self._fibers: dict[tuple[int, ...], tuple[GroupElement, ...]] = {}

    @property
    def domain(self) -> FgAbGroup:
        return self.psi.domain

    @property
    def codomain(self) -> FgAbGroup:
        return self.psi.codomain

    @property
    def kernel_is_finite(self) -> bool:
        return self.kernel.is_finite

    @property
    def kernel_order(self) -> int | None:
        return self.kernel.order

    def map_degree(self, g: GroupElement) -> GroupElement:
        if g.group != self.domain:
            raise GroupMismatchError("degree lies outside the source grading group")
        return self.psi(g)

    def fiber(self, h: GroupElement) -> tuple[GroupElement, ...]:
        """All preimages of h, sorted by coordinates (finite kernel only)."""
        if h.group != self.codomain:
            raise GroupMismatchError("degree lies outside the target grading group")
        cached = self._fibers.get(h.coords)
        if cached is None:
            cached = tuple(group_fiber(self.psi, h, self.analysis))
            self._fibers[h.coords] = cached
        return cached

    def fiber_window(self, degrees) -> tuple[GroupElement, ...]:
        """Union of the fibers over the given degrees, sorted by coordinates."""
        seen: dict[tuple[int, ...], GroupElement] = {}
        for h in degrees:
            for g in self.fiber(h):
                seen[g.coords] = g
        return tuple(seen[c] for c in sorted(seen))

    def kernel_elements(self) -> tuple[GroupElement, ...]:
        """The kernel as a sorted tuple of degrees in the source group."""
        return self.fiber(self.codomain.zero())

    def __repr__(self) -> str:
        return f"CoarseningContext({self.psi})"


def _require_same_psi(ctx: CoarseningContext, other: CoarseningContext) -> None:
    if other is not ctx and other.psi != ctx.psi:
        raise GroupMismatchError("objects were built along a different surjection")


def _coarsen_ring(ctx: CoarseningContext, r: GradedRing) -> GradedRing:
    if r.group != ctx.domain:
        raise GroupMismatchError("ring is not graded by the source group")
    basis = tuple(BasisElement(b.name, ctx.psi(b.degree)) for b in r.basis)
    label = f"{r.label} coarsened" if r.label else ""
    return GradedRing(r.field, ctx.codomain, basis, r.mul, r.one, label)


def _coarsen_module(ctx: CoarseningContext, m: GradedModule) -> GradedModule:
    if m.group != ctx.domain:
        raise GroupMismatchError("module is not graded by the source group")
    ring = _coarsen_ring(ctx, m.ring)
    basis = tuple(BasisElement(b.name, ctx.psi(b.degree)) for b in m.basis)
    label = f"{m.label} coarsened" if m.label else ""
    return GradedModule(ring, basis, m.action, label)


def _coarsen_morphism(ctx: CoarseningContext, f: GradedMorphism) -> GradedMorphism:
    return GradedMorphism(
        _coarsen_module(ctx, f.source),
        _coarsen_module(ctx, f.target),
        f.matrix,
        ctx.psi(f.degree),
    )


def coarsen(ctx: CoarseningContext, obj):
    """Regrade a ring, module, or morphism along psi, keeping the basis.

    Degrees map through psi and nothing else changes: structure constants,
    action tables and matrices are reused as they are.
    """
    if isinstance(obj, GradedRing):
        return _coarsen_ring(ctx, obj)
    if isinstance(obj, GradedModule):
        return _coarsen_module(ctx, obj)
    if isinstance(obj, GradedMorphism):
        return _coarsen_morphism(ctx, obj)
    raise TypeError(f"cannot coarsen {type(obj).__name__}")


@dataclass(frozen=True)
class MaterializedRefinement:
    """A refined module realized over an explicit finite window of degrees.

    module is graded by the source group and lives over the supplied ring;
    base is the module it refines.  copies[i] = (g, a) records that basis
    element i of module is the copy of base basis element a placed in
    degree g.
    """

    module: GradedModule
    base: GradedModule
    window: tuple[GroupElement, ...]
    copies: tuple[tuple[GroupElement, int], ...]

    def copy_index(self, g: GroupElement, a: int) -> int:
        for i, (gg, aa) in enumerate(self.copies):
            if aa == a and gg == g:
                return i
        raise KeyError(f"no copy of basis element {a} in degree {g} inside the window")


class LazyRefinedModule:
    """Componentwise view of a refined module, defined for every psi.

    Keeps the base module and answers per-degree queries; ``materialize``
    builds an honest graded module over a chosen window of degrees.  The
    full refinement is finite dimensional only when the base is zero or the
    kernel is finite.
    """

    def __init__(self, ctx: CoarseningContext, base: GradedModule) -> None:
        if base.group != ctx.codomain:
            raise GroupMismatchError("refinement needs a module graded by the target group")
        self.ctx = ctx
        self.base = base

    def component_indices(self, g: GroupElement) -> tuple[int, ...]:
        """Base basis indices whose copies sit in degree g."""
        if g.group != self.ctx.domain:
            raise GroupMismatchError("degree lies outside the source grading group")
        return self.base.indices_of_degree(self.ctx.psi(g))

    def component_dimension(self, g: GroupElement) -> int:
        return len(self.component_indices(g))

    @property
    def is_finite_dimensional(self) -> bool:
        return self.base.is_zero or self.ctx.kernel_is_finite

    def default_window(self) -> tuple[GroupElement, ...]:
        """The full preimage of the base support, when that is finite."""
        if self.base.is_zero:
            return ()
        if not self.ctx.kernel_is_finite:
            raise InfiniteSupportError(
                "the refined module has infinitely many nonzero components because "
                "the kernel is infinite; materialize over an explicit window instead"
            )
        return self.ctx.fiber_window(self.base.support())

    def materialize(
        self,
        ring: GradedRing,
        window: Sequence[GroupElement] | None = None,
        label: str | None = None,
    ) -> MaterializedRefinement:
        """Realize the refinement over a finite window of source degrees.

        ring must be graded by the source group and coarsen to the base
        ring.  The default window is the full preimage of the base support,
        which is closed under the ring action automatically; explicit
        windows are deduplicated, sorted, and checked for closure.
        """
        ctx = self.ctx
        if ring.group != ctx.domain:
            raise GroupMismatchError("materialization ring is not graded by the source group")
        if _coarsen_ring(ctx, ring) != self.base.ring:
            raise RingMismatchError("ring does not coarsen to the ring of the base module")
        user_window = window is not None
        if window is None:
            win = self.default_window()
        else:
            seen: dict[tuple[int, ...], GroupElement] = {}
            for g in window:
                if g.group != ctx.domain:
                    raise GroupMismatchError("window degree lies outside the source group")
                seen[g.coords] = g
            win = tuple(seen[c] for c in sorted(seen))
        basis = []
        copies = []
        for g in win:
            for a in self.component_indices(g):
                basis.append(BasisElement(f"{self.base.basis[a].name}@{g}", g))
                copies.append((g, a))
        index = {(g.coords, a): i for i, (g, a) in enumerate(copies)}
        field = ring.field
        total = len(copies)
        action = []
        for i in range(ring.dim):
            d = ring.degree_of(i)
            row = []
            for g, a in copies:
                tgt = g + d
                vec = [field.zero] * total
                for b, c in enumerate(self.base.action[i][a]):
                    if field.is_zero(c):
                        continue
                    j = index.get((tgt.coords, b))
                    if j is None:
                        if user_window:
                            raise ValueError(
                                "window is not closed under the ring action: "
                                f"{ring.basis[i].name} sends degree {g} outside the window"
                            )
                        raise AssertionError("default refinement window must be action closed")
                    vec[j] = c
                row.append(tuple(vec))
            action.append(tuple(row))
        if label is None:
            label = f"{self.base.label} refined" if self.base.label else ""
        module = GradedModule(ring, tuple(basis), tuple(action), label)
        return MaterializedRefinement(module, self.base, win, tuple(copies))

    def __repr__(self) -> str:
        return f"LazyRefinedModule({self.base} along {self.ctx.psi})"


@dataclass(frozen=True)
class MaterializedRingRefinement:
    """A refined ring realized explicitly (finite source group only)."""

    ring: GradedRing
    base: GradedRing
    copies: tuple[tuple[GroupElement, int], ...]

    def copy_index(self, g: GroupElement, a: int) -> int:
        for i, (gg, aa) in enumerate(self.copies):
            if aa == a and gg == g:
                return i
        raise KeyError(f"no copy of basis element {a} in degree {g}")


class LazyRefinedRing:
    """Componentwise view of a refined ring.

    The refinement of a ring S graded by the target group has a copy of
    S_{psi(g)} in degree g, with the copy of x in degree g times the copy of
    y in degree g' equal to the copy of xy in degree g + g'.  It is finite
    dimensional exactly when the source group is finite.
    """

    def __init__(self, ctx: CoarseningContext, base: GradedRing) -> None:
        if base.group != ctx.codomain:
            raise GroupMismatchError("refinement needs a ring graded by the target group")
        self.ctx = ctx
        self.base = base

    def component_indices(self, g: GroupElement) -> tuple[int, ...]:
        if g.group != self.ctx.domain:
            raise GroupMismatchError("degree lies outside the source grading group")
        h = self.ctx.psi(g)
        return tuple(i for i in range(self.base.dim) if self.base.degree_of(i) == h)

    def component_dimension(self, g: GroupElement) -> int:
        return len(self.component_indices(g))

    def materialize(self, label: str | None = None) -> MaterializedRingRefinement:
        """Build the refined ring explicitly; the source group must be finite."""
        ctx = self.ctx
        try:
            elements = list(ctx.domain.elements())
        except InfiniteKernelError:
            raise InfiniteSupportError(
                "the refined ring is infinite dimensional over an infinite source group"
            ) from None
        elements.sort(key=lambda g: g.coords)
        base = self.base
        field = base.field
        basis = []
        copies = []
        for g in elements:
            for a in self.component_indices(g):
                basis.append(BasisElement(f"{base.basis[a].name}@{g}", g))
                copies.append((g, a))
        index = {(g.coords, a): i for i, (g, a) in enumerate(copies)}
        total = len(copies)
        mul = []
        for i, (g, a) in enumerate(copies):
            row = []
            for j, (gp, b) in enumerate(copies):
                tgt = g + gp
                vec = [field.zero] * total
                for c, coef in enumerate(base.mul[a][b]):
                    if not field.is_zero(coef):
                        vec[index[(tgt.coords, c)]] = coef
                row.append(tuple(vec))
            mul.append(tuple(row))
        one = [field.zero] * total
        zero_g = ctx.domain.zero()
        for c, coef in enumerate(base.one):
            if not field.is_zero(coef):
                one[index[(zero_g.coords, c)]] = coef
        if label is None:
            label = f"{base.label} refined" if base.label else ""
        ring = GradedRing(field, ctx.domain, tuple(basis), tuple(mul), tuple(one), label)
        return MaterializedRingRefinement(ring, base, tuple(copies))

    def __repr__(self) -> str:
        return f"LazyRefinedRing({self.base} along {self.ctx.psi})"


def refine(ctx: CoarseningContext, obj):
    """Lazy refinement of a ring or module graded by the target group."""
    if isinstance(obj, GradedRing):
        return LazyRefinedRing(ctx, obj)
    if isinstance(obj, GradedModule):
        return LazyRefinedModule(ctx, obj)
    raise TypeError(f"cannot refine {type(obj).__name__}")


def refine_module(
    ctx: CoarseningContext,
    base: GradedModule,
    ring: GradedRing,
    window: Sequence[GroupElement] | None = None,
) -> MaterializedRefinement:
    """Shorthand for a materialized module refinement."""
    return LazyRefinedModule(ctx, base).materialize(ring, window)


def refine_ring(ctx: CoarseningContext, base: GradedRing) -> MaterializedRingRefinement:
    """Shorthand for a materialized ring refinement (finite source group)."""
    return LazyRefinedRing(ctx, base).materialize()


class RefinedHom:
    """A degree-zero morphism from a graded module into a lazy refinement.

    Columns are indexed by the source basis and rows by the basis of the
    base module of the refinement: column a holds the coordinates of the
    image of source basis element a, which lives in the copy at the degree
    of a.  Entries are allowed only where the base degree is psi of the
    source degree.  This representation works for every psi, including ones
    whose refinement is infinite dimensional.
    """

    def __init__(
        self,
        ctx: CoarseningContext,
        source: GradedModule,
        target: LazyRefinedModule | GradedModule,
        matrix,
    ) -> None:
        if isinstance(target, GradedModule):
            target = LazyRefinedModule(ctx, target)
        _require_same_psi(ctx, target.ctx)
        if source.group != ctx.domain:
            raise GroupMismatchError("source module is not graded by the source group")
        base = target.base
        if _coarsen_ring(ctx, source.ring) != base.ring:
            raise RingMismatchError("base ring of the target is not the coarsening of the source ring")
        field = source.field
        rows = [tuple(field.coerce(c) for c in row) for row in matrix]
        if len(rows) != base.dim or any(len(r) != source.dim for r in rows):
            raise ValueError(f"matrix must be {base.dim} x {source.dim}")
        for b in range(base.dim):
            for a in range(source.dim):
                if field.is_zero(rows[b][a]):
                    continue
                if base.degree_of(b) != ctx.psi(source.degree_of(a)):
                    raise NonHomogeneousInputError(
                        f"entry ({b},{a}) puts a copy of degree {ctx.psi(source.degree_of(a))} "
                        f"into the component of degree {base.degree_of(b)}"
                    )
        self.ctx = ctx
        self.source = source
        self.target = target
        self.base = base
        self.matrix: Matrix = tuple(rows)
        for i in range(source.ring.dim):
            for a in range(source.dim):
                lhs = self.apply_coordinates(source.action[i][a])
                rhs = base.act_basis(i, self.column(a))
                if lhs != rhs:
                    raise ValueError(
                        f"matrix is not equivariant: ring basis {i} on source basis {a}"
                    )

    def column(self, a: int) -> Vector:
        return tuple(self.matrix[b][a] for b in range(self.base.dim))

    def apply_coordinates(self, vec: Sequence) -> Vector:
        """Base coordinates of the image; the copy is the degree of the input."""
        field = self.source.field
        out = [field.zero] * self.base.dim
        for a, c in enumerate(vec):
            if field.is_zero(c):
                continue
            for b in range(self.base.dim):
                x = self.matrix[b][a]
                if not field.is_zero(x):
                    out[b] = field.add(out[b], field.mul(c, x))
        return tuple(out)

    @property
    def is_zero(self) -> bool:
        field = self.source.field
        return all(field.is_zero(c) for row in self.matrix for c in row)

    def to_coarsened(self) -> GradedMorphism:
        """The same matrix read as a morphism from the coarsened source."""
        return GradedMorphism(
            _coarsen_module(self.ctx, self.source),
            self.base,
            self.matrix,
            self.ctx.codomain.zero(),
        )

    def precompose(self, f: GradedMorphism) -> RefinedHom:
        """Compose with a degree-zero morphism into the source."""
        if f.target != self.source:
            raise ValueError("composition needs the inner target to equal the outer source")
        if not f.degree.is_zero:
            raise DegreeMismatchError("precomposition here is for degree-zero morphisms")
        mat = matmul(self.source.field, self.matrix, f.matrix)
        return RefinedHom(self.ctx, f.source, self.target, mat)

    def postcompose_refined(self, t: GradedMorphism) -> RefinedHom:
        """Compose with the refinement of a degree-zero morphism of base modules."""
        if t.source != self.base:
            raise ValueError("composition needs a morphism out of the base module")
        if not t.degree.is_zero:
            raise DegreeMismatchError("only degree-zero morphisms refine to degree zero")
        mat = matmul(self.source.field, t.matrix, self.matrix)
        return RefinedHom(self.ctx, self.source, LazyRefinedModule(self.ctx, t.target), mat)

    def materialized(self, refinement: MaterializedRefinement) -> GradedMorphism:
        """The same morphism into an explicit materialization of the target."""
        if refinement.base != self.base:
            raise ValueError("materialization refines a different base module")
        field = self.source.field
        rows = [[field.zero] * self.source.dim for _ in range(refinement.module.dim)]
        placed = {(g.coords, a): i for i, (g, a) in enumerate(refinement.copies)}
        for a in range(self.source.dim):
            g = self.source.degree_of(a)
            for b in range(self.base.dim):
                c = self.matrix[b][a]
                if field.is_zero(c):
                    continue
                i = placed.get((g.coords, b))
                if i is None:
                    raise ValueError(f"window does not contain degree {g} needed by the image")
                rows[i][a] = c
        return GradedMorphism(
            self.source,
            refinement.module,
            tuple(tuple(r) for r in rows),
            self.ctx.domain.zero(),
        )

    def __eq__(self, other) -> bool:
        if not isinstance(other, RefinedHom):
            return NotImplemented
        return (
            self.ctx.psi == other.ctx.psi
            and self.source == other.source
            and self.base == other.base
            and self.matrix == other.matrix
        )

    def __repr__(self) -> str:
        return f"RefinedHom({self.source} -> refinement of {self.base})"


def refined_hom_space(
    ctx: CoarseningContext, source: GradedModule, base: GradedModule
) -> tuple[RefinedHom, ...]:
    """Basis of all degree-zero morphisms from source into the refinement of base."""
    if source.group != ctx.domain:
        raise GroupMismatchError("source module is not graded by the source group")
    if base.group != ctx.codomain:
        raise GroupMismatchError("base module is not graded by the target group")
    if _coarsen_ring(ctx, source.ring) != base.ring:
        raise RingMismatchError("base ring is not the coarsening of the source ring")
    psi = ctx.psi
    mats = solve_equivariant_matrices(
        source.field,
        source.ring.dim,
        source.action,
        base.action,
        source.dim,
        base.dim,
        lambda a, b: base.degree_of(b) == psi(source.degree_of(a)),
    )
    return tuple(RefinedHom(ctx, source, base, m) for m in mats)


def refine_morphism(
    ctx: CoarseningContext,
    t: GradedMorphism,
    source_ref: MaterializedRefinement,
    target_ref: MaterializedRefinement,
) -> GradedMorphism:
    """Refinement of a degree-zero morphism, between two materializations."""
    if not t.degree.is_zero:
        raise DegreeMismatchError("only degree-zero morphisms are refined here")
    if t.source != source_ref.base or t.target != target_ref.base:
        raise ValueError("materializations do not match the ends of the morphism")
    if source_ref.module.ring != target_ref.module.ring:
        raise RingMismatchError("materializations live over different rings")
    field = t.source.field
    rows = [[field.zero] * source_ref.module.dim for _ in range(target_ref.module.dim)]
    placed = {(g.coords, b): i for i, (g, b) in enumerate(target_ref.copies)}
    for j, (g, a) in enumerate(source_ref.copies):
        for b in range(t.target.dim):
            c = t.matrix[b][a]
            if field.is_zero(c):
                continue
            i = placed.get((g.coords, b))
            if i is None:
                raise ValueError(f"target window does not contain degree {g}")
            rows[i][j] = c
    return GradedMorphism(
        source_ref.module,
        target_ref.module,
        tuple(tuple(r) for r in rows),
        ctx.domain.zero(),
    )


def copy_inclusion(ctx: CoarseningContext, m: GradedModule) -> RefinedHom:
    """Send each homogeneous element to its own copy inside the refined coarsening.

    This is the unit of the adjunction in which coarsening is the left
    adjoint; it exists for every psi and is always injective.
    """
    if m.group != ctx.domain:
        raise GroupMismatchError("module is not graded by the source group")
    field = m.field
    ident = tuple(
        tuple(field.one if i == j else field.zero for j in range(m.dim)) for i in range(m.dim)
    )
    return RefinedHom(ctx, m, LazyRefinedModule(ctx, _coarsen_module(ctx, m)), ident)


def copy_inclusion_explicit(
    ctx: CoarseningContext,
    m: GradedModule,
    refinement: MaterializedRefinement | None = None,
) -> GradedMorphism:
    """The copy inclusion landing in an explicit materialization."""
    if refinement is None:
        if not ctx.kernel_is_finite and not m.is_zero:
            raise InfiniteKernelError(
                "materializing the refined coarsening needs a finite kernel; "
                "pass a materialization over an explicit window"
            )
        refinement = refine_module(ctx, _coarsen_module(ctx, m), m.ring)
    return copy_inclusion(ctx, m).materialized(refinement)


def copy_projection(
    ctx: CoarseningContext,
    m: GradedModule,
    refinement: MaterializedRefinement | None = None,
) -> GradedMorphism:
    """Keep the copy matching the original degree, kill the others.

    This is the counit of the adjunction in which refinement is the left
    adjoint, so it needs a finite kernel unless a materialization over an
    explicit window is supplied.  It is always surjective.
    """
    if m.group != ctx.domain:
        raise GroupMismatchError("module is not graded by the source group")
    if refinement is None:
        if not ctx.kernel_is_finite and not m.is_zero:
            raise InfiniteKernelError("the copy projection needs a finite kernel to materialize")
        refinement = refine_module(ctx, _coarsen_module(ctx, m), m.ring)
    elif refinement.base != _coarsen_module(ctx, m):
        raise ValueError("materialization does not refine the coarsening of the module")
    field = m.field
    rows = [[field.zero] * refinement.module.dim for _ in range(m.dim)]
    for i, (g, a) in enumerate(refinement.copies):
        if m.degree_of(a) == g:
            rows[a][i] = field.one
    return GradedMorphism(
        refinement.module, m, tuple(tuple(r) for r in rows), ctx.domain.zero()
    )


def copy_projection_after(
    ctx: CoarseningContext, phi: RefinedHom, m: GradedModule
) -> GradedMorphism:
    """The copy projection of m composed after phi: X -> refinement of coarsen(m).

    The composite is finite dimensional for every psi even though the middle
    module need not be, so it is computed directly: entry (b, a) survives
    exactly when the degree of b equals the degree of a.
    """
    if phi.base != _coarsen_module(ctx, m):
        raise ValueError("the refined morphism does not land in the refined coarsening of m")
    field = m.field
    rows = [
        [
            phi.matrix[b][a] if m.degree_of(b) == phi.source.degree_of(a) else field.zero
            for a in range(phi.source.dim)
        ]
        for b in range(m.dim)
    ]
    return GradedMorphism(phi.source, m, tuple(tuple(r) for r in rows), ctx.domain.zero())


def fiber_codiagonal(
    ctx: CoarseningContext,
    n: GradedModule,
    ring: GradedRing,
    refinement: MaterializedRefinement | None = None,
) -> GradedMorphism:
    """Sum the copies over each fiber: coarsen(refine(n)) -> n.

    This is the counit of the adjunction in which coarsening is the left
    adjoint.  The map is defined for every psi; building its source as an
    explicit module is what needs a finite kernel, so either the kernel is
    finite or a materialization over a window must be supplied.  It is
    always surjective.
    """
    if n.group != ctx.codomain:
        raise GroupMismatchError("module is not graded by the target group")
    if refinement is None:
        refinement = refine_module(ctx, n, ring)
    elif refinement.base != n:
        raise ValueError("materialization does not refine the given module")
    source = _coarsen_module(ctx, refinement.module)
    field = n.field
    rows = [[field.zero] * source.dim for _ in range(n.dim)]
    for i, (_, a) in enumerate(refinement.copies):
        rows[a][i] = field.one
    return GradedMorphism(source, n, tuple(tuple(r) for r in rows), ctx.codomain.zero())


def fiber_diagonal(
    ctx: CoarseningContext,
    n: GradedModule,
    ring: GradedRing,
    refinement: MaterializedRefinement | None = None,
) -> GradedMorphism:
    """Spread each element across all copies in its fiber: n -> coarsen(refine(n)).

    This is the unit of the adjunction in which refinement is the left
    adjoint; it only exists when the kernel is finite, since an element must
    be duplicated once per fiber member.  It is always injective.
    """
    if n.group != ctx.codomain:
        raise GroupMismatchError("module is not graded by the target group")
    if not ctx.kernel_is_finite:
        raise InfiniteKernelError("the fiber diagonal needs a finite kernel")
    if refinement is None:
        refinement = refine_module(ctx, n, ring)
    elif refinement.base != n:
        raise ValueError("materialization does not refine the given module")
    target = _coarsen_module(ctx, refinement.module)
    field = n.field
    rows = [[field.zero] * n.dim for _ in range(target.dim)]
    for i, (_, a) in enumerate(refinement.copies):
        rows[i][a] = field.one
    return GradedMorphism(n, target, tuple(tuple(r) for r in rows), ctx.codomain.zero())


def adjoint_transpose_forward(
    ctx: CoarseningContext, u: GradedMorphism, m: GradedModule
) -> RefinedHom:
    """Turn u: coarsen(m) -> n into the matching morphism m -> refine(n).

    Both sides share their matrix; only the bookkeeping changes.  Works for
    every psi.
    """
    if not u.degree.is_zero:
        raise DegreeMismatchError("the transpose is defined for degree-zero morphisms")
    if u.source != _coarsen_module(ctx, m):
        raise ValueError("the morphism does not start at the coarsening of m")
    return RefinedHom(ctx, m, LazyRefinedModule(ctx, u.target), u.matrix)


def adjoint_transpose_backward(ctx: CoarseningContext, phi: RefinedHom) -> GradedMorphism:
    """Turn phi: m -> refine(n) into the matching morphism coarsen(m) -> n."""
    _require_same_psi(ctx, phi.ctx)
    return phi.to_coarsened()


def left_adjoint_transpose_forward(
    ctx: CoarseningContext,
    w: GradedMorphism,
    refinement: MaterializedRefinement,
) -> GradedMorphism:
    """Turn w: refine(n) -> m into v: n -> coarsen(m) (finite kernel only).

    v sends x to w applied to the sum of all copies of x, i.e. v is w
    composed with the fiber diagonal.
    """
    if not ctx.kernel_is_finite:
        raise InfiniteKernelError("this adjunction direction needs a finite kernel")
    if not w.degree.is_zero:
        raise DegreeMismatchError("the transpose is defined for degree-zero morphisms")
    if w.source != refinement.module:
        raise ValueError("the morphism does not start at the given materialization")
    if refinement.window != ctx.fiber_window(refinement.base.support()):
        raise ValueError("the transpose needs the full default window, not a partial one")
    n = refinement.base
    m = w.target
    field = n.field
    rows = [[field.zero] * n.dim for _ in range(m.dim)]
    for i, (_, a) in enumerate(refinement.copies):
        for b in range(m.dim):
            c = w.matrix[b][i]
            if not field.is_zero(c):
                rows[b][a] = field.add(rows[b][a], c)
    return GradedMorphism(
        n, _coarsen_module(ctx, m), tuple(tuple(r) for r in rows), ctx.codomain.zero()
    )


def left_adjoint_transpose_backward(
    ctx: CoarseningContext,
    v: GradedMorphism,
    m: GradedModule,
    refinement: MaterializedRefinement | None = None,
) -> GradedMorphism:
    """Turn v: n -> coarsen(m) into w: refine(n) -> m (finite kernel only).

    On the copy of x in degree g, w picks out the degree-g component of
    v(x).
    """
    if not ctx.kernel_is_finite:
        raise InfiniteKernelError("this adjunction direction needs a finite kernel")
    if not v.degree.is_zero:
        raise DegreeMismatchError("the transpose is defined for degree-zero morphisms")
    if v.target != _coarsen_module(ctx, m):
        raise ValueError("the morphism does not end at the coarsening of m")
    if refinement is None:
        refinement = refine_module(ctx, v.source, m.ring)
    elif refinement.base != v.source:
        raise ValueError("materialization does not refine the source of the morphism")
    field = m.field
    rows = [[field.zero] * refinement.module.dim for _ in range(m.dim)]
    for i, (g, a) in enumerate(refinement.copies):
        for b in range(m.dim):
            if m.degree_of(b) == g:
                rows[b][i] = v.matrix[b][a]
    return GradedMorphism(
        refinement.module, m, tuple(tuple(r) for r in rows), ctx.domain.zero()
    )


@dataclass(frozen=True)
class RefineCoarsenDecomposition:
    """Coarsened refinement of a module identified with stacked copies of it."""

    coarsened: GradedModule
    copies: int
    sum_module: GradedModule
    iso: GradedMorphism


def refine_then_coarsen_decomposition(
    ctx: CoarseningContext, n: GradedModule, ring: GradedRing
) -> RefineCoarsenDecomposition:
    """Identify coarsen(refine(n)) with one copy of n per kernel element.

    The identification matches the copy of n placed in degree g with the
    summand numbered by the position of g in its sorted fiber.  For a
    nontrivial kernel this is only a morphism when the acting ring is
    concentrated in degree zero, so that the action cannot move between
    copies; with a trivial kernel any ring works.
    """
    if n.group != ctx.codomain:
        raise GroupMismatchError("module is not graded by the target group")
    if not ctx.kernel_is_finite:
        raise InfiniteKernelError("the decomposition needs a finite kernel")
    if n.ring != _coarsen_ring(ctx, ring):
        raise RingMismatchError("module ring is not the coarsening of the supplied ring")
    k = ctx.kernel_order
    if k > 1 and any(not b.degree.is_zero for b in ring.basis):
        raise UnsupportedClassError(
            "with a nontrivial kernel the identification needs a ring concentrated "
            "in degree zero; other rings can move elements between copies"
        )
    refinement = refine_module(ctx, n, ring)
    co = _coarsen_module(ctx, refinement.module)
    sum_module, _, _ = direct_sum([n] * k)
    field = n.field
    rows = [[field.zero] * co.dim for _ in range(sum_module.dim)]
    for i, (g, a) in enumerate(refinement.copies):
        fib = ctx.fiber(ctx.psi(g))
        p = next(p for p, gg in enumerate(fib) if gg == g)
        rows[p * n.dim + a][i] = field.one
    iso = GradedMorphism(co, sum_module, tuple(tuple(r) for r in rows), ctx.codomain.zero())
    if not iso.is_iso:
        raise AssertionError("copy matching failed to be invertible")
    return RefineCoarsenDecomposition(co, k, sum_module, iso)


@dataclass(frozen=True)
class KernelShiftFamily:
    """The family of shifted copies of a ring, one per kernel element.

    Stands for the (possibly infinite) family whose member at a kernel
    element g is the ring shifted so that its unit sits in degree g.
    """

    ring: GradedRing


@dataclass(frozen=True)
class ProperMonoWitness:
    """Certificate that the product comparison map is not surjective.

    The witness is the tuple whose component at a kernel element g is the
    unit of the ring placed in degree g.  Every component is homogeneous of
    coarsened degree zero, so the tuple is a degree-zero element of the
    product of the coarsenings; but its components occupy infinitely many
    distinct source degrees, so it is not the image of any homogeneous
    element of the product.
    """

    ring: GradedRing
    kernel_rank: int
    kernel_invariants: tuple[int, ...]
    description: str


@dataclass(frozen=True)
class ProductComparisonReport:
    """Outcome of comparing coarsen(product) with product(coarsenings)."""

    verdict: str
    comparison: GradedMorphism | None
    witness: ProperMonoWitness | None


def _member_at(ring: GradedRing, g: GroupElement) -> GradedModule:
    """The ring as a module, shifted so its unit sits in degree g."""
    return shift_module(ring_as_module(ring), g.scale(-1))


def verify_proper_mono_witness(
    ctx: CoarseningContext, witness: ProperMonoWitness, samples: int = 3
) -> bool:
    """Recheck a non-surjectivity certificate on a few kernel elements.

    Confirms the kernel is infinite, the ring is nonzero, and that sampled
    components are nonzero of pairwise distinct degrees mapping to zero.
    """
    if ctx.kernel_is_finite:
        return False
    if witness.ring.is_zero_ring:
        return False
    if witness.kernel_rank != ctx.kernel.group.rank or witness.kernel_rank < 1:
        return False
    if witness.kernel_invariants != ctx.kernel.group.invariants:
        return False
    emb = ctx.kernel.embedding
    gens = [ctx.kernel.group.generator(i) for i in range(ctx.kernel.group.ngens)]
    points = [ctx.kernel.group.zero()] + gens
    for i in range(2, samples + 1):
        points.append(gens[0].scale(i))
    seen = set()
    for p in points:
        g = emb(p)
        member = _member_at(witness.ring, g)
        degree = member.element_degree(witness.ring.one)
        if degree is None or degree != g:
            return False
        if not ctx.psi(degree).is_zero:
            return False
        seen.add(degree.coords)
    return len(seen) == len(points)


def product_coarsening_comparison(ctx: CoarseningContext, family) -> ProductComparisonReport:
    """Compare the coarsening of a product with the product of the coarsenings.

    A finite list of modules yields the canonical isomorphism.  The
    intensional family of ring shifts indexed by the kernel yields the same
    when the kernel is finite, and a certified proper monomorphism when it
    is infinite.  Other intensional shapes are not supported.
    """
    if isinstance(family, KernelShiftFamily):
        ring = family.ring
        if ring.group != ctx.domain:
            raise GroupMismatchError("family ring is not graded by the source group")
        if not ctx.kernel_is_finite:
            if ring.is_zero_ring:
                z = zero_module(_coarsen_ring(ctx, ring))
                return ProductComparisonReport("isomorphism", identity_morphism(z), None)
            witness = ProperMonoWitness(
                ring=ring,
                kernel_rank=ctx.kernel.group.rank,
                kernel_invariants=ctx.kernel.group.invariants,
                description=(
                    "tuple whose component at each kernel element g is the ring unit "
                    "placed in degree g; componentwise of coarsened degree zero, but "
                    "supported in infinitely many source degrees"
                ),
            )
            if not verify_proper_mono_witness(ctx, witness):
                raise AssertionError("constructed witness failed its own recheck")
            return ProductComparisonReport("proper-monomorphism", None, witness)
        family = [_member_at(ring, g) for g in ctx.kernel_elements()]
    if not isinstance(family, (list, tuple)) or not all(
        isinstance(m, GradedModule) for m in family
    ):
        raise UnsupportedFamilyError(
            "supported families: a finite list of modules, or the kernel-indexed "
            "family of ring shifts"
        )
    members = list(family)
    for m in members:
        if m.group != ctx.domain:
            raise GroupMismatchError("family member is not graded by the source group")
    prod, projs, _ = finite_product(members)
    co_prod = _coarsen_module(ctx, prod)
    co_members = [_coarsen_module(ctx, m) for m in members]
    q, q_projs, _ = finite_product(co_members)
    field = prod.field

    def slot(proj: GradedMorphism, a: int) -> int:
        row = proj.matrix[a]
        for j, c in enumerate(row):
            if not field.is_zero(c):
                return j
        raise AssertionError("projection row without a pivot")

    rows = [[field.zero] * co_prod.dim for _ in range(q.dim)]
    for k, m in enumerate(members):
        for a in range(m.dim):
            rows[slot(q_projs[k], a)][slot(projs[k], a)] = field.one
    comparison = GradedMorphism(
        co_prod, q, tuple(tuple(r) for r in rows), ctx.codomain.zero()
    )
    if not comparison.is_iso:
        raise AssertionError("finite comparison map failed to be invertible")
    return ProductComparisonReport("isomorphism", comparison, None)


@dataclass(frozen=True)
class RingTransformation:
    """A canonical map between a ring and one of its regradings.

    The underlying map is recorded as a degree-preserving linear morphism
    (over the grading field, viewed as a ring concentrated in degree zero),
    with flags stating which ring laws it was checked to preserve.
    """

    kind: str
    morphism: GradedMorphism
    preserves_products: bool
    preserves_unit: bool
    is_injective: bool
    is_surjective: bool

    @property
    def is_ring_morphism(self) -> bool:
        return self.preserves_products and self.preserves_unit


def _field_module(r: GradedRing, field_ring: GradedRing) -> GradedModule:
    ident = tuple(
        tuple(
            (r.field.one if a == b else r.field.zero) for b in range(r.dim)
        )
        for a in range(r.dim)
    )
    return GradedModule(field_ring, r.basis, (ident,), r.label)


def _ring_map_flags(
    src: GradedRing, dst: GradedRing, matrix: Matrix
) -> tuple[bool, bool]:
    field = src.field

    def apply(vec):
        return tuple(_dot(field, row, vec) for row in matrix)

    multiplicative = True
    for i in range(src.dim):
        for j in range(src.dim):
            lhs = apply(src.mul[i][j])
            rhs = dst.multiply(apply(src.basis_vector(i)), apply(src.basis_vector(j)))
            if lhs != rhs:
                multiplicative = False
                break
        if not multiplicative:
            break
    unital = apply(src.one) == dst.one
    return multiplicative, unital


def _dot(field, row, vec):
    out = field.zero
    for c, x in zip(row, vec):
        if not field.is_zero(c) and not field.is_zero(x):
            out = field.add(out, field.mul(c, x))
    return out


def _ring_transformation(
    kind: str, src: GradedRing, dst: GradedRing, group, matrix: Matrix
) -> RingTransformation:
    field_ring = base_field_ring(src.field, group)
    morphism = GradedMorphism(
        _field_module(src, field_ring),
        _field_module(dst, field_ring),
        matrix,
        group.zero(),
    )
    multiplicative, unital = _ring_map_flags(src, dst, matrix)
    return RingTransformation(
        kind, morphism, multiplicative, unital, morphism.is_mono, morphism.is_epi
    )


def ring_copy_inclusion(ctx: CoarseningContext, r: GradedRing) -> RingTransformation:
    """Ring-level copy inclusion r -> refine(coarsen(r)); a genuine ring morphism."""
    if r.group != ctx.domain:
        raise GroupMismatchError("ring is not graded by the source group")
    refined = refine_ring(ctx, _coarsen_ring(ctx, r))
    field = r.field
    rows = [[field.zero] * r.dim for _ in range(refined.ring.dim)]
    for b in range(r.dim):
        rows[refined.copy_index(r.degree_of(b), b)][b] = field.one
    return _ring_transformation(
        "copy-inclusion", r, refined.ring, ctx.domain, tuple(tuple(x) for x in rows)
    )


def ring_copy_projection(ctx: CoarseningContext, r: GradedRing) -> RingTransformation:
    """Ring-level copy projection refine(coarsen(r)) -> r.

    Additive and unital, but not multiplicative once the kernel is
    nontrivial: two copies away from their original degrees can multiply
    back into the surviving position.
    """
    if r.group != ctx.domain:
        raise GroupMismatchError("ring is not graded by the source group")
    refined = refine_ring(ctx, _coarsen_ring(ctx, r))
    field = r.field
    rows = [[field.zero] * refined.ring.dim for _ in range(r.dim)]
    for i, (g, a) in enumerate(refined.copies):
        if r.degree_of(a) == g:
            rows[a][i] = field.one
    return _ring_transformation(
        "copy-projection", refined.ring, r, ctx.domain, tuple(tuple(x) for x in rows)
    )


def ring_fiber_codiagonal(ctx: CoarseningContext, s: GradedRing) -> RingTransformation:
    """Ring-level fiber codiagonal coarsen(refine(s)) -> s; a genuine ring morphism."""
    if s.group != ctx.codomain:
        raise GroupMismatchError("ring is not graded by the target group")
    refined = refine_ring(ctx, s)
    coarse = _coarsen_ring(ctx, refined.ring)
    field = s.field
    rows = [[field.zero] * coarse.dim for _ in range(s.dim)]
    for i, (_, a) in enumerate(refined.copies):
        rows[a][i] = field.one
    return _ring_transformation(
        "fiber-codiagonal", coarse, s, ctx.codomain, tuple(tuple(x) for x in rows)
    )


def ring_fiber_diagonal(ctx: CoarseningContext, s: GradedRing) -> RingTransformation:
    """Ring-level fiber diagonal s -> coarsen(refine(s)).

    Multiplicative up to a factor of the kernel order, hence not unital
    (and not a ring morphism) once the kernel is nontrivial.
    """
    if s.group != ctx.codomain:
        raise GroupMismatchError("ring is not graded by the target group")
    if not ctx.kernel_is_finite:
        raise InfiniteKernelError("the fiber diagonal needs a finite kernel")
    refined = refine_ring(ctx, s)
    coarse = _coarsen_ring(ctx, refined.ring)
    field = s.field
    rows = [[field.zero] * s.dim for _ in range(coarse.dim)]
    for i, (_, a) in enumerate(refined.copies):
        rows[i][a] = field.one
    return _ring_transformation(
        "fiber-diagonal", s, coarse, ctx.codomain, tuple(tuple(x) for x in rows)
    )


def canonical_transformations(ctx: CoarseningContext, obj, primed: bool = True) -> dict:
    """All four canonical maps derived from a single source-graded object.

    For a module m (primed), the copy maps relate m to the refinement of its
    coarsening and the fiber maps relate the coarsening n = coarsen(m) to
    the coarsened refinement of n.  For a ring (primed False) the analogous
    four ring-level maps are returned as RingTransformation records.  All
    four need explicit refinements, so the kernel must be finite; the lazy
    copy inclusion stays available separately for every psi.
    """
    if not ctx.kernel_is_finite:
        raise InfiniteKernelError(
            "assembling all four canonical maps needs a finite kernel; "
            "use copy_inclusion for the direction that exists lazily"
        )
    if primed:
        if not isinstance(obj, GradedModule):
            raise TypeError("primed transformations are for modules")
        n = _coarsen_module(ctx, obj)
        return {
            "copy_inclusion": copy_inclusion_explicit(ctx, obj),
            "copy_projection": copy_projection(ctx, obj),
            "fiber_codiagonal": fiber_codiagonal(ctx, n, obj.ring),
            "fiber_diagonal": fiber_diagonal(ctx, n, obj.ring),
        }
    if not isinstance(obj, GradedRing):
        raise TypeError("unprimed transformations are for rings")
    s = _coarsen_ring(ctx, obj)
    return {
        "copy_inclusion": ring_copy_inclusion(ctx, obj),
        "copy_projection": ring_copy_projection(ctx, obj),
        "fiber_codiagonal": ring_fiber_codiagonal(ctx, s),
        "fiber_diagonal": ring_fiber_diagonal(ctx, s),
    }
