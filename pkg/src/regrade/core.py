"""Finite group-graded rings and modules presented by structure constants.

A ring or module is given by a finite homogeneous basis (each basis element
carries a degree in a finitely generated abelian group) together with exact
structure-constant tables over the coefficient field.  Morphisms are matrices
that respect degrees up to a declared shift and commute with the ring action;
the constructor verifies both, so a GradedMorphism that exists is a morphism.

Constructors of rings and modules only check shapes and coerce scalars; the
algebraic laws (homogeneity of the tables, associativity, unit laws) are
checked by validate(), which returns a list of Violation records instead of
raising, so that malformed tables can be inspected.
"""

from __future__ import annotations

from dataclasses import dataclass
from dataclasses import field as dc_field
from typing import Callable, Iterable, Sequence

from . import linalg
from .abgroup import FgAbGroup, GroupElement
from .errors import (
    DegreeMismatchError,
    GroupMismatchError,
    InfiniteSupportError,
    NonHomogeneousInputError,
    RingMismatchError,
)
from .fields import ExactField, Scalar

Vector = tuple[Scalar, ...]
Matrix = tuple[Vector, ...]


@dataclass(frozen=True)
class BasisElement:
    """A named homogeneous basis vector with its degree."""

    name: str
    degree: GroupElement


@dataclass(frozen=True)
class Violation:
    """One law failure found by validate()."""

    kind: str
    where: str
    message: str

    def __str__(self) -> str:
        return f"[{self.kind}] {self.where}: {self.message}"


def _sorted_degrees(degrees: Iterable[GroupElement]) -> tuple[GroupElement, ...]:
    return tuple(sorted(set(degrees), key=lambda d: d.coords))


def homogeneous_degree(degrees: Sequence[GroupElement], vec: Sequence[Scalar]) -> GroupElement | None:
    """Common degree of the nonzero coordinates, None for the zero vector.

    Raises NonHomogeneousInputError when coordinates of different degrees are
    both nonzero.
    """
    found: GroupElement | None = None
    for c, d in zip(vec, degrees):
        if c == 0:
            continue
        if found is None:
            found = d
        elif found != d:
            raise NonHomogeneousInputError(
                f"vector mixes degrees {found} and {d}"
            )
    return found


# ---------------------------------------------------------------------------
# rings
# ---------------------------------------------------------------------------


@dataclass(frozen=True)
class GradedRing:
    """Associative unital ring with a homogeneous basis over a grading group.

    mul[i][j] holds the coefficients of basis[i] * basis[j] in the basis; one
    holds the coefficients of the multiplicative identity.
    """

    field: ExactField
    group: FgAbGroup
    basis: tuple[BasisElement, ...]
    mul: tuple[tuple[Vector, ...], ...]
    one: Vector
    label: str = dc_field(default="", compare=False)

    def __post_init__(self) -> None:
        basis = tuple(self.basis)
        object.__setattr__(self, "basis", basis)
        for b in basis:
            if b.degree.group != self.group:
                raise GroupMismatchError(
                    f"basis element {b.name} is graded by {b.degree.group}, not {self.group}"
                )
        n = len(basis)
        if len(self.mul) != n or any(len(row) != n for row in self.mul):
            raise ValueError(f"mul table must be {n}x{n}")
        coerced = tuple(
            tuple(tuple(self.field.coerce(c) for c in _shape(vec, n)) for vec in row)
            for row in self.mul
        )
        object.__setattr__(self, "mul", coerced)
        object.__setattr__(self, "one", tuple(self.field.coerce(c) for c in _shape(self.one, n)))

    @property
    def dim(self) -> int:
        return len(self.basis)

    def degree_of(self, i: int) -> GroupElement:
        return self.basis[i].degree

    def support(self) -> tuple[GroupElement, ...]:
        return _sorted_degrees(b.degree for b in self.basis)

    def component_dimensions(self) -> dict[GroupElement, int]:
        out: dict[GroupElement, int] = {}
        for d in self.support():
            out[d] = sum(1 for b in self.basis if b.degree == d)
        return out

    def zero_vector(self) -> Vector:
        return tuple(self.field.zero for _ in range(self.dim))

    def basis_vector(self, i: int) -> Vector:
        return tuple(self.field.one if j == i else self.field.zero for j in range(self.dim))

    def multiply(self, u: Sequence[Scalar], v: Sequence[Scalar]) -> Vector:
        out = [self.field.zero] * self.dim
        for i, a in enumerate(u):
            if self.field.is_zero(a):
                continue
            for j, b in enumerate(v):
                if self.field.is_zero(b):
                    continue
                coef = self.field.mul(a, b)
                for k, c in enumerate(self.mul[i][j]):
                    if not self.field.is_zero(c):
                        out[k] = self.field.add(out[k], self.field.mul(coef, c))
        return tuple(out)

    @property
    def is_commutative(self) -> bool:
        return all(
            self.mul[i][j] == self.mul[j][i]
            for i in range(self.dim)
            for j in range(i + 1, self.dim)
        )

    @property
    def is_zero_ring(self) -> bool:
        return all(self.field.is_zero(c) for c in self.one)

    def __str__(self) -> str:
        return self.label or f"ring(dim {self.dim} over {self.field.name}, graded by {self.group})"


def _shape(vec: Sequence[Scalar], n: int) -> Sequence[Scalar]:
    if len(vec) != n:
        raise ValueError(f"expected a vector of length {n}, got {len(vec)}")
    return vec


# ---------------------------------------------------------------------------
# modules
# ---------------------------------------------------------------------------


@dataclass(frozen=True)
class GradedModule:
    """Left module over a GradedRing, presented by an action table.

    action[i][a] holds the coefficients of ring.basis[i] acting on basis[a].
    """

    ring: GradedRing
    basis: tuple[BasisElement, ...]
    action: tuple[tuple[Vector, ...], ...]
    label: str = dc_field(default="", compare=False)

    def __post_init__(self) -> None:
        basis = tuple(self.basis)
        object.__setattr__(self, "basis", basis)
        for b in basis:
            if b.degree.group != self.ring.group:
                raise GroupMismatchError(
                    f"basis element {b.name} is graded by {b.degree.group}, not {self.ring.group}"
                )
        n = len(basis)
        if len(self.action) != self.ring.dim or any(len(row) != n for row in self.action):
            raise ValueError(f"action table must be {self.ring.dim}x{n}")
        field = self.ring.field
        coerced = tuple(
            tuple(tuple(field.coerce(c) for c in _shape(vec, n)) for vec in row)
            for row in self.action
        )
        object.__setattr__(self, "action", coerced)

    @property
    def field(self) -> ExactField:
        return self.ring.field

    @property
    def group(self) -> FgAbGroup:
        return self.ring.group

    @property
    def dim(self) -> int:
        return len(self.basis)

    @property
    def is_zero(self) -> bool:
        return self.dim == 0

    def degree_of(self, a: int) -> GroupElement:
        return self.basis[a].degree

    def support(self) -> tuple[GroupElement, ...]:
        return _sorted_degrees(b.degree for b in self.basis)

    def component_dimensions(self) -> dict[GroupElement, int]:
        out: dict[GroupElement, int] = {}
        for d in self.support():
            out[d] = sum(1 for b in self.basis if b.degree == d)
        return out

    def indices_of_degree(self, d: GroupElement) -> tuple[int, ...]:
        return tuple(a for a in range(self.dim) if self.basis[a].degree == d)

    def zero_vector(self) -> Vector:
        return tuple(self.field.zero for _ in range(self.dim))

    def basis_vector(self, a: int) -> Vector:
        return tuple(self.field.one if j == a else self.field.zero for j in range(self.dim))

    def act_basis(self, i: int, vec: Sequence[Scalar]) -> Vector:
        """ring.basis[i] acting on a module vector."""
        field = self.field
        out = [field.zero] * self.dim
        for a, c in enumerate(vec):
            if field.is_zero(c):
                continue
            for b, x in enumerate(self.action[i][a]):
                if not field.is_zero(x):
                    out[b] = field.add(out[b], field.mul(c, x))
        return tuple(out)

    def act(self, ring_vec: Sequence[Scalar], vec: Sequence[Scalar]) -> Vector:
        """A general ring element acting on a module vector."""
        field = self.field
        out = [field.zero] * self.dim
        for i, r in enumerate(ring_vec):
            if field.is_zero(r):
                continue
            part = self.act_basis(i, vec)
            for b, x in enumerate(part):
                if not field.is_zero(x):
                    out[b] = field.add(out[b], field.mul(r, x))
        return tuple(out)

    def element_degree(self, vec: Sequence[Scalar]) -> GroupElement | None:
        return homogeneous_degree([b.degree for b in self.basis], vec)

    def __str__(self) -> str:
        return self.label or f"module(dim {self.dim} over {self.ring})"


def shift_module(m: GradedModule, g: GroupElement, label: str | None = None) -> GradedModule:
    """Shifted module: the component at degree d is the old component at g + d.

    A basis element of degree e therefore reappears with degree e - g.  The
    action table is unchanged.
    """
    if g.group != m.group:
        raise GroupMismatchError(f"shift degree lies in {g.group}, module is graded by {m.group}")
    basis = tuple(BasisElement(b.name, b.degree - g) for b in m.basis)
    if label is None:
        label = f"{m.label}({g})" if m.label else ""
    return GradedModule(m.ring, basis, m.action, label)


# ---------------------------------------------------------------------------
# morphisms
# ---------------------------------------------------------------------------


@dataclass(frozen=True)
class GradedMorphism:
    """Degree-shifting module morphism, verified at construction.

    matrix has target.dim rows and source.dim columns; entry (b, a) may be
    nonzero only when degree(target b) == degree(source a) + degree.  The
    matrix must commute with the action of every ring basis element.
    """

    source: GradedModule
    target: GradedModule
    matrix: Matrix
    degree: GroupElement

    def __post_init__(self) -> None:
        if self.source.ring != self.target.ring:
            raise RingMismatchError("source and target live over different rings")
        if self.degree.group != self.source.group:
            raise GroupMismatchError(
                f"morphism degree lies in {self.degree.group}, modules are graded by {self.source.group}"
            )
        field = self.source.field
        rows = tuple(
            tuple(field.coerce(c) for c in _shape(row, self.source.dim)) for row in self.matrix
        )
        if len(rows) != self.target.dim:
            raise ValueError(
                f"matrix must have {self.target.dim} rows, got {len(rows)}"
            )
        object.__setattr__(self, "matrix", rows)
        for b in range(self.target.dim):
            for a in range(self.source.dim):
                if field.is_zero(rows[b][a]):
                    continue
                want = self.source.degree_of(a) + self.degree
                if self.target.degree_of(b) != want:
                    raise NonHomogeneousInputError(
                        f"entry ({b},{a}) maps degree {self.source.degree_of(a)} into "
                        f"degree {self.target.degree_of(b)}, expected {want}"
                    )
        for i in range(self.source.ring.dim):
            for a in range(self.source.dim):
                lhs = self.apply(self.source.action[i][a])
                rhs = self.target.act_basis(i, self.apply_to_basis(a))
                if lhs != rhs:
                    raise ValueError(
                        f"matrix does not commute with ring.basis[{i}] on source basis {a}"
                    )

    @property
    def ring(self) -> GradedRing:
        return self.source.ring

    def apply_to_basis(self, a: int) -> Vector:
        return tuple(self.matrix[b][a] for b in range(self.target.dim))

    def apply(self, vec: Sequence[Scalar]) -> Vector:
        field = self.source.field
        out = [field.zero] * self.target.dim
        for a, c in enumerate(vec):
            if field.is_zero(c):
                continue
            for b in range(self.target.dim):
                x = self.matrix[b][a]
                if not field.is_zero(x):
                    out[b] = field.add(out[b], field.mul(c, x))
        return tuple(out)

    def compose(self, other: "GradedMorphism") -> "GradedMorphism":
        """self after other."""
        if other.target != self.source:
            raise ValueError("morphisms do not compose: inner target differs from outer source")
        mat = linalg.matmul(self.source.field, self.matrix, other.matrix)
        return GradedMorphism(other.source, self.target, mat, other.degree + self.degree)

    def __add__(self, other: "GradedMorphism") -> "GradedMorphism":
        if self.source != other.source or self.target != other.target:
            raise ValueError("morphism sum needs equal sources and targets")
        if self.degree != other.degree:
            raise DegreeMismatchError(
                f"cannot add morphisms of degrees {self.degree} and {other.degree}"
            )
        field = self.source.field
        mat = tuple(
            tuple(field.add(x, y) for x, y in zip(r1, r2))
            for r1, r2 in zip(self.matrix, other.matrix)
        )
        return GradedMorphism(self.source, self.target, mat, self.degree)

    def scale(self, c: Scalar) -> "GradedMorphism":
        field = self.source.field
        c = field.coerce(c)
        mat = tuple(tuple(field.mul(c, x) for x in row) for row in self.matrix)
        return GradedMorphism(self.source, self.target, mat, self.degree)

    @property
    def is_zero(self) -> bool:
        field = self.source.field
        return all(field.is_zero(x) for row in self.matrix for x in row)

    @property
    def rank(self) -> int:
        return linalg.rank(self.source.field, [list(r) for r in self.matrix])

    @property
    def is_mono(self) -> bool:
        return self.rank == self.source.dim

    @property
    def is_epi(self) -> bool:
        return self.rank == self.target.dim

    @property
    def is_iso(self) -> bool:
        return self.is_mono and self.is_epi

    def __str__(self) -> str:
        deg = "" if self.degree.is_zero else f" of degree {self.degree}"
        return f"morphism{deg}: {self.source} -> {self.target}"


def identity_morphism(m: GradedModule) -> GradedMorphism:
    field = m.field
    mat = tuple(
        tuple(field.one if i == j else field.zero for j in range(m.dim)) for i in range(m.dim)
    )
    return GradedMorphism(m, m, mat, m.group.zero())


def zero_morphism(source: GradedModule, target: GradedModule, degree: GroupElement | None = None) -> GradedMorphism:
    if degree is None:
        degree = source.group.zero()
    field = source.field
    mat = tuple(tuple(field.zero for _ in range(source.dim)) for _ in range(target.dim))
    return GradedMorphism(source, target, mat, degree)


def shift_morphism(f: GradedMorphism, g: GroupElement) -> GradedMorphism:
    """The same matrix viewed between the shifted source and target."""
    return GradedMorphism(shift_module(f.source, g), shift_module(f.target, g), f.matrix, f.degree)


# ---------------------------------------------------------------------------
# hom spaces
# ---------------------------------------------------------------------------


def solve_equivariant_matrices(
    field: ExactField,
    ring_dim: int,
    act_source,
    act_target,
    dim_source: int,
    dim_target: int,
    allowed: Callable[[int, int], bool],
) -> list[Matrix]:
    """Basis of the space of matrices commuting with two action tables.

    Unknowns are the matrix entries (b, a) for which allowed(a, b) is true;
    all other entries are forced to zero.  Both action tables must be indexed
    by the same ring basis.  Returns dim_target x dim_source matrices.
    """
    cells = [(b, a) for b in range(dim_target) for a in range(dim_source) if allowed(a, b)]
    if not cells:
        return []
    index = {cell: k for k, cell in enumerate(cells)}
    rows = []
    for i in range(ring_dim):
        for a in range(dim_source):
            for bp in range(dim_target):
                row = [field.zero] * len(cells)
                live = False
                for ap in range(dim_source):
                    c = act_source[i][a][ap]
                    if not field.is_zero(c) and (bp, ap) in index:
                        k = index[(bp, ap)]
                        row[k] = field.add(row[k], c)
                        live = True
                for b in range(dim_target):
                    c = act_target[i][b][bp]
                    if not field.is_zero(c) and (b, a) in index:
                        k = index[(b, a)]
                        row[k] = field.sub(row[k], c)
                        live = True
                if live:
                    rows.append(row)
    basis = linalg.nullspace(field, rows, len(cells))
    mats = []
    for vec in basis:
        m = [[field.zero] * dim_source for _ in range(dim_target)]
        for k, (b, a) in enumerate(cells):
            m[b][a] = vec[k]
        mats.append(tuple(tuple(r) for r in m))
    return mats


@dataclass(frozen=True)
class HomSpace:
    """Space of morphisms source -> target of a fixed degree, with a basis."""

    source: GradedModule
    target: GradedModule
    shift: GroupElement
    basis: tuple[GradedMorphism, ...]

    @property
    def dimension(self) -> int:
        return len(self.basis)


def hom_space(source: GradedModule, target: GradedModule, shift: GroupElement | None = None) -> HomSpace:
    """All morphisms source -> target raising degrees by the given shift.

    A degree-g morphism is the same thing as a plain morphism into the target
    shifted by g.
    """
    if source.ring != target.ring:
        raise RingMismatchError("hom spaces need both modules over the same ring")
    if shift is None:
        shift = source.group.zero()
    if shift.group != source.group:
        raise GroupMismatchError("shift lies in the wrong group")
    mats = solve_equivariant_matrices(
        source.field,
        source.ring.dim,
        source.action,
        target.action,
        source.dim,
        target.dim,
        lambda a, b: target.degree_of(b) == source.degree_of(a) + shift,
    )
    basis = tuple(GradedMorphism(source, target, m, shift) for m in mats)
    return HomSpace(source, target, shift, basis)


def hom_dimension(source: GradedModule, target: GradedModule, shift: GroupElement | None = None) -> int:
    return hom_space(source, target, shift).dimension


# ---------------------------------------------------------------------------
# sums, kernels, images, quotients
# ---------------------------------------------------------------------------


def direct_sum(
    summands: Sequence[GradedModule], label: str | None = None
) -> tuple[GradedModule, tuple[GradedMorphism, ...], tuple[GradedMorphism, ...]]:
    """Finite direct sum with its injections and projections.

    For finitely many graded modules the product and the coproduct agree, so
    this single construction serves as both.
    """
    if not summands:
        raise ValueError("direct_sum needs at least one summand; use zero_module for none")
    ring = summands[0].ring
    for m in summands:
        if m.ring != ring:
            raise RingMismatchError("direct sum needs all summands over the same ring")
    field = ring.field
    basis = []
    for k, m in enumerate(summands):
        for b in m.basis:
            basis.append(BasisElement(f"{k}.{b.name}", b.degree))
    offsets = []
    total = 0
    for m in summands:
        offsets.append(total)
        total += m.dim
    action = []
    for i in range(ring.dim):
        row = []
        for k, m in enumerate(summands):
            for a in range(m.dim):
                vec = [field.zero] * total
                for b, c in enumerate(m.action[i][a]):
                    vec[offsets[k] + b] = c
                row.append(tuple(vec))
        action.append(tuple(row))
    if label is None:
        label = " + ".join(str(m) for m in summands) if all(m.label for m in summands) else ""
    out = GradedModule(ring, tuple(basis), tuple(action), label)
    injections = []
    projections = []
    for k, m in enumerate(summands):
        inj = [[field.zero] * m.dim for _ in range(total)]
        proj = [[field.zero] * total for _ in range(m.dim)]
        for a in range(m.dim):
            inj[offsets[k] + a][a] = field.one
            proj[a][offsets[k] + a] = field.one
        injections.append(GradedMorphism(m, out, tuple(tuple(r) for r in inj), ring.group.zero()))
        projections.append(GradedMorphism(out, m, tuple(tuple(r) for r in proj), ring.group.zero()))
    return out, tuple(injections), tuple(projections)


def finite_product(
    summands: Sequence[GradedModule], label: str | None = None
) -> tuple[GradedModule, tuple[GradedMorphism, ...], GradedMorphism]:
    """Degreewise product of finitely many graded modules.

    The product is assembled degree by degree, so its basis is grouped by
    degree rather than by factor.  Returns the product, its projections, and
    the canonical isomorphism from ``direct_sum`` of the same family, which
    for finite families is just a permutation of the basis.
    """
    if not summands:
        raise ValueError("finite_product needs at least one factor; use zero_module for none")
    ring = summands[0].ring
    for m in summands:
        if m.ring != ring:
            raise RingMismatchError("finite product needs all factors over the same ring")
    field = ring.field
    sum_mod, injections, _ = direct_sum(summands)
    degrees = _sorted_degrees({b.degree for m in summands for b in m.basis})
    order = []
    offsets = []
    total = 0
    for m in summands:
        offsets.append(total)
        total += m.dim
    for d in degrees:
        for k, m in enumerate(summands):
            for a in m.indices_of_degree(d):
                order.append(offsets[k] + a)
    basis = []
    for pos, src in enumerate(order):
        k = max(i for i, off in enumerate(offsets) if off <= src)
        b = summands[k].basis[src - offsets[k]]
        basis.append(BasisElement(f"{k}.{b.name}", b.degree))
    back = {src: pos for pos, src in enumerate(order)}
    action = []
    for i in range(ring.dim):
        row = [None] * total
        for pos, src in enumerate(order):
            vec = [field.zero] * total
            for b, c in enumerate(sum_mod.action[i][src]):
                vec[back[b]] = c
            row[pos] = tuple(vec)
        action.append(tuple(row))
    if label is None:
        label = ""
    prod = GradedModule(ring, tuple(basis), tuple(action), label)
    iso_rows = [[field.zero] * total for _ in range(total)]
    for pos, src in enumerate(order):
        iso_rows[pos][src] = field.one
    iso = GradedMorphism(sum_mod, prod, tuple(tuple(r) for r in iso_rows), ring.group.zero())
    projections = []
    for k, m in enumerate(summands):
        proj = [[field.zero] * total for _ in range(m.dim)]
        for a in range(m.dim):
            proj[a][back[offsets[k] + a]] = field.one
        projections.append(GradedMorphism(prod, m, tuple(tuple(r) for r in proj), ring.group.zero()))
    return prod, tuple(projections), iso


def _check_homogeneous(parent: GradedModule, vectors) -> list[Vector]:
    field = parent.field
    out = []
    for vec in vectors:
        vec = tuple(field.coerce(c) for c in _shape(vec, parent.dim))
        parent.element_degree(vec)
        out.append(vec)
    return out


def submodule_from_vectors(
    parent: GradedModule, vectors, prefix: str = "s", label: str = ""
) -> tuple[GradedModule, GradedMorphism]:
    """Submodule spanned by action-closed homogeneous vectors, with inclusion.

    Raises ValueError when the span is not closed under the ring action; use
    submodule_generated_by to close it first.
    """
    field = parent.field
    vecs = linalg.echelon_basis(field, _check_homogeneous(parent, vectors))
    for i in range(parent.ring.dim):
        for v in vecs:
            moved = parent.act_basis(i, v)
            if linalg.coordinates_in_span(field, vecs, moved) is None:
                raise ValueError("span is not closed under the ring action")
    basis = tuple(
        BasisElement(f"{prefix}{k}", parent.element_degree(v)) for k, v in enumerate(vecs)
    )
    action = []
    for i in range(parent.ring.dim):
        row = []
        for v in vecs:
            coords = linalg.coordinates_in_span(field, vecs, parent.act_basis(i, v))
            row.append(tuple(coords))
        action.append(tuple(row))
    sub = GradedModule(parent.ring, basis, tuple(action), label)
    incl = GradedMorphism(
        sub,
        parent,
        tuple(tuple(v[b] for v in vecs) for b in range(parent.dim)),
        parent.group.zero(),
    )
    return sub, incl


def submodule_generated_by(
    parent: GradedModule, vectors, prefix: str = "s", label: str = ""
) -> tuple[GradedModule, GradedMorphism]:
    """Smallest action-closed graded subspace containing the given homogeneous vectors."""
    field = parent.field
    span = linalg.echelon_basis(field, _check_homogeneous(parent, vectors))
    while True:
        new = []
        for i in range(parent.ring.dim):
            for v in span:
                moved = parent.act_basis(i, v)
                if linalg.coordinates_in_span(field, span + new, moved) is None:
                    new.append(moved)
        if not new:
            break
        span = linalg.echelon_basis(field, span + new)
    return submodule_from_vectors(parent, span, prefix, label)


def kernel_of(f: GradedMorphism, label: str = "") -> tuple[GradedModule, GradedMorphism]:
    """Kernel with its inclusion; homogeneity of the matrix keeps it graded."""
    null = linalg.nullspace(f.source.field, [list(r) for r in f.matrix], f.source.dim)
    return submodule_from_vectors(f.source, null, "k", label)


def image_of(f: GradedMorphism, label: str = "") -> tuple[GradedModule, GradedMorphism]:
    """Image inside the target, with its inclusion."""
    cols = [f.apply_to_basis(a) for a in range(f.source.dim)]
    return submodule_from_vectors(f.target, cols, "i", label)


def quotient_by_submodule(
    parent: GradedModule, vectors, prefix: str = "q", label: str = ""
) -> tuple[GradedModule, GradedMorphism]:
    """Quotient of parent by an action-closed homogeneous span, with projection.

    The quotient basis consists of the parent basis vectors at the non-pivot
    coordinates of the reduced span, which keeps the projection canonical.
    """
    field = parent.field
    vecs = linalg.echelon_basis(field, _check_homogeneous(parent, vectors))
    for i in range(parent.ring.dim):
        for v in vecs:
            if linalg.coordinates_in_span(field, vecs, parent.act_basis(i, v)) is None:
                raise ValueError("span is not closed under the ring action")
    pivots = []
    for v in vecs:
        pivots.append(next(j for j, c in enumerate(v) if not field.is_zero(c)))
    free = [j for j in range(parent.dim) if j not in pivots]

    def reduce(vec):
        out = list(vec)
        for p, v in zip(pivots, vecs):
            c = out[p]
            if not field.is_zero(c):
                for j in range(parent.dim):
                    out[j] = field.sub(out[j], field.mul(c, v[j]))
        return [out[j] for j in free]

    basis = tuple(
        BasisElement(f"{prefix}.{parent.basis[j].name}", parent.basis[j].degree) for j in free
    )
    action = []
    for i in range(parent.ring.dim):
        row = []
        for j in free:
            row.append(tuple(reduce(parent.action[i][j])))
        action.append(tuple(row))
    quotient = GradedModule(parent.ring, basis, tuple(action), label)
    proj_cols = [reduce(parent.basis_vector(b)) for b in range(parent.dim)]
    proj = tuple(tuple(col[r] for col in proj_cols) for r in range(len(free)))
    return quotient, GradedMorphism(parent, quotient, proj, parent.group.zero())


def cokernel_of(f: GradedMorphism, label: str = "") -> tuple[GradedModule, GradedMorphism]:
    cols = [f.apply_to_basis(a) for a in range(f.source.dim)]
    return quotient_by_submodule(f.target, cols, "q", label)


# ---------------------------------------------------------------------------
# builders
# ---------------------------------------------------------------------------


def base_field_ring(field: ExactField, group: FgAbGroup, label: str | None = None) -> GradedRing:
    """The coefficient field concentrated in degree zero."""
    basis = (BasisElement("1", group.zero()),)
    if label is None:
        label = field.name
    return GradedRing(field, group, basis, (((field.one,),),), (field.one,), label)


def group_algebra(field: ExactField, group: FgAbGroup, label: str | None = None) -> GradedRing:
    """Group algebra of a finite group, graded by itself (basis element e_h in degree h)."""
    if not group.is_finite:
        raise InfiniteSupportError(f"group algebra of the infinite group {group} has no finite basis")
    elems = list(group.elements())
    index = {e: k for k, e in enumerate(elems)}
    basis = tuple(BasisElement(f"e{e}", e) for e in elems)
    n = len(elems)
    mul = tuple(
        tuple(
            tuple(field.one if k == index[elems[i] + elems[j]] else field.zero for k in range(n))
            for j in range(n)
        )
        for i in range(n)
    )
    one = tuple(field.one if k == index[group.zero()] else field.zero for k in range(n))
    if label is None:
        label = f"{field.name}[{group}]"
    return GradedRing(field, group, basis, mul, one, label)


def truncated_polynomial_ring(
    field: ExactField,
    group: FgAbGroup,
    t_degree: GroupElement,
    nilpotency: int,
    label: str | None = None,
) -> GradedRing:
    """field[t] / (t^nilpotency) with deg(t) the given group element."""
    if nilpotency < 1:
        raise ValueError("nilpotency must be at least 1")
    if t_degree.group != group:
        raise GroupMismatchError("degree of t must lie in the grading group")
    n = nilpotency
    names = ["1"] + (["t"] if n > 1 else []) + [f"t^{i}" for i in range(2, n)]
    basis = tuple(BasisElement(names[i], t_degree.scale(i)) for i in range(n))
    mul = tuple(
        tuple(
            tuple(field.one if (i + j < n and k == i + j) else field.zero for k in range(n))
            for j in range(n)
        )
        for i in range(n)
    )
    one = tuple(field.one if k == 0 else field.zero for k in range(n))
    if label is None:
        label = f"{field.name}[t]/(t^{n})"
    return GradedRing(field, group, basis, mul, one, label)


def ring_as_module(ring: GradedRing, label: str | None = None) -> GradedModule:
    """The ring as a left module over itself, on the same basis."""
    if label is None:
        label = str(ring)
    return GradedModule(ring, ring.basis, ring.mul, label)


def free_module(
    ring: GradedRing, shifts: Sequence[GroupElement], label: str | None = None
) -> GradedModule:
    """Free module with one generator per listed degree.

    The generator for degree g spans a copy of the ring shifted so that the
    generator itself sits in degree g; the ring basis element b contributes a
    module basis element in degree g + deg(b).
    """
    field = ring.field
    for g in shifts:
        if g.group != ring.group:
            raise GroupMismatchError("generator degree lies in the wrong group")
    basis = []
    for k, g in enumerate(shifts):
        for b in ring.basis:
            basis.append(BasisElement(f"x{k}*{b.name}", b.degree + g))
    total = len(shifts) * ring.dim
    action = []
    for i in range(ring.dim):
        row = []
        for k in range(len(shifts)):
            for b in range(ring.dim):
                vec = [field.zero] * total
                for c, coef in enumerate(ring.mul[i][b]):
                    vec[k * ring.dim + c] = coef
                row.append(tuple(vec))
        action.append(tuple(row))
    if label is None:
        degs = ",".join(str(g) for g in shifts)
        label = f"free({degs}) over {ring}"
    return GradedModule(ring, tuple(basis), tuple(action), label)


def zero_module(ring: GradedRing, label: str = "0") -> GradedModule:
    return GradedModule(ring, (), tuple(() for _ in range(ring.dim)), label)


# ---------------------------------------------------------------------------
# validation
# ---------------------------------------------------------------------------


def _validate_ring(r: GradedRing) -> list[Violation]:
    out = []
    field = r.field
    degs = [b.degree for b in r.basis]
    try:
        d = homogeneous_degree(degs, r.one)
        if d is not None and not d.is_zero:
            out.append(Violation("unit-degree", "one", f"identity has degree {d}, expected 0"))
    except NonHomogeneousInputError as exc:
        out.append(Violation("unit-degree", "one", str(exc)))
    for i in range(r.dim):
        for j in range(r.dim):
            want = degs[i] + degs[j]
            for k, c in enumerate(r.mul[i][j]):
                if not field.is_zero(c) and degs[k] != want:
                    out.append(
                        Violation(
                            "product-degree",
                            f"mul[{i}][{j}]",
                            f"coefficient on {r.basis[k].name} (degree {degs[k]}) in a "
                            f"degree-{want} product",
                        )
                    )
    for i in range(r.dim):
        ei = r.basis_vector(i)
        if r.multiply(r.one, ei) != ei or r.multiply(ei, r.one) != ei:
            out.append(Violation("unit-law", f"basis[{i}]", "one does not act as identity"))
    for i in range(r.dim):
        for j in range(i + 1, r.dim):
            if r.mul[i][j] != r.mul[j][i]:
                out.append(
                    Violation("commutativity", f"({i},{j})", "products in both orders differ")
                )
    for i in range(r.dim):
        for j in range(r.dim):
            ij = r.mul[i][j]
            for k in range(r.dim):
                left = r.multiply(ij, r.basis_vector(k))
                right = r.multiply(r.basis_vector(i), r.mul[j][k])
                if left != right:
                    out.append(
                        Violation(
                            "associativity",
                            f"({i},{j},{k})",
                            "products (ab)c and a(bc) differ",
                        )
                    )
    return out


def _validate_module(m: GradedModule) -> list[Violation]:
    out = []
    field = m.field
    rdegs = [b.degree for b in m.ring.basis]
    mdegs = [b.degree for b in m.basis]
    for i in range(m.ring.dim):
        for a in range(m.dim):
            want = rdegs[i] + mdegs[a]
            for b, c in enumerate(m.action[i][a]):
                if not field.is_zero(c) and mdegs[b] != want:
                    out.append(
                        Violation(
                            "action-degree",
                            f"action[{i}][{a}]",
                            f"coefficient on {m.basis[b].name} (degree {mdegs[b]}) in a "
                            f"degree-{want} product",
                        )
                    )
    for a in range(m.dim):
        ea = m.basis_vector(a)
        if m.act(m.ring.one, ea) != ea:
            out.append(Violation("unit-action", f"basis[{a}]", "one does not act as identity"))
    for i in range(m.ring.dim):
        for j in range(m.ring.dim):
            rirj = m.ring.mul[i][j]
            for a in range(m.dim):
                left = m.act(rirj, m.basis_vector(a))
                right = m.act_basis(i, m.action[j][a])
                if left != right:
                    out.append(
                        Violation(
                            "action-associativity",
                            f"({i},{j},{a})",
                            "(ab)m and a(bm) differ",
                        )
                    )
    return out


def _validate_morphism(f: GradedMorphism) -> list[Violation]:
    out = []
    field = f.source.field
    for b in range(f.target.dim):
        for a in range(f.source.dim):
            if field.is_zero(f.matrix[b][a]):
                continue
            if f.target.degree_of(b) != f.source.degree_of(a) + f.degree:
                out.append(
                    Violation("morphism-degree", f"({b},{a})", "entry violates the declared degree")
                )
    for i in range(f.ring.dim):
        for a in range(f.source.dim):
            if f.apply(f.source.action[i][a]) != f.target.act_basis(i, f.apply_to_basis(a)):
                out.append(
                    Violation(
                        "equivariance",
                        f"(ring {i}, basis {a})",
                        "matrix does not commute with the action",
                    )
                )
    return out


def validate(obj) -> list[Violation]:
    """All law violations of a ring, module, or morphism; empty when lawful."""
    if isinstance(obj, GradedRing):
        return _validate_ring(obj)
    if isinstance(obj, GradedModule):
        return _validate_ring(obj.ring) + _validate_module(obj)
    if isinstance(obj, GradedMorphism):
        return _validate_morphism(obj)
    raise TypeError(f"cannot validate {type(obj).__name__}")
