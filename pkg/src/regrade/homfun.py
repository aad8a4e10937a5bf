"""Graded Hom modules, smallness, and the hom comparison along a coarsening.

For modules M and N over a commutative graded ring, the morphisms of every
degree assemble into a graded module: the degree-g component is the space of
degree-g morphisms M -> N and ring elements act by post-composition.
Coarsening a morphism along a surjection psi gives, for each target degree h,
a comparison map from the sum of the degree-g hom spaces over the fiber of h
into the degree-h hom space of the coarsened modules.  This map is always
injective; whether it is surjective is governed by a dichotomy: it is an
isomorphism exactly when the source module is small or the kernel of psi is
finite.

Smallness is decided here for two honest classes: explicit modules (finite
bases, always small) and intensional free modules, finitely described direct
sums of ring shifts indexed by a subgroup, which are not small as soon as the
index subgroup is infinite and the ring is nonzero.  Everything else reports
Unknown rather than guessing.  The negative half of the dichotomy is made
executable by uniform rule morphisms: finitely described degree-zero
morphisms out of a coarsened intensional module whose decomposition into
source-degree components can be certified infinite, exhibiting an element
the comparison map misses.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass
from typing import Sequence, Union

from .abgroup import (
    FgAbGroup,
    GroupElement,
    GroupHom,
    quotient_map,
    solve_integer,
    subgroup,
)
from .coarsen import CoarseningContext, coarsen
from .core import (
    BasisElement,
    GradedModule,
    GradedMorphism,
    GradedRing,
    Matrix,
    Vector,
    direct_sum,
    free_module,
    hom_space,
    zero_module,
)
from .errors import (
    FiniteSubgroupError,
    GroupMismatchError,
    InfiniteSupportError,
    MalformedRuleError,
    RingMismatchError,
    SoundnessError,
    UnsupportedClassError,
)
from . import linalg


def _flatten(matrix: Matrix) -> tuple:
    return tuple(itertools.chain.from_iterable(matrix))


def _multiplication_morphism(n: GradedModule, i: int) -> GradedMorphism:
    """Multiplication by ring basis element i as a morphism of degree deg(i)."""
    field = n.field
    rows = tuple(
        tuple(n.action[i][a][b] for a in range(n.dim)) for b in range(n.dim)
    )
    return GradedMorphism(n, n, rows, n.ring.degree_of(i))


@dataclass(frozen=True)
class GradedHomModule:
    """All morphisms M -> N of every degree, bundled into one graded module.

    The degree-g component is the space of degree-g morphisms; the module
    basis consists of the listed basis morphisms in order, and ring elements
    act by post-composition with scalar multiplication.
    """

    source: GradedModule
    target: GradedModule
    module: GradedModule
    basis_morphisms: tuple[GradedMorphism, ...]

    def component_dimension(self, g: GroupElement) -> int:
        return len(self.module.indices_of_degree(g))

    def coordinates_of(self, u: GradedMorphism) -> Vector:
        """Coordinates of a morphism in the recorded basis (its degree block)."""
        if u.source != self.source or u.target != self.target:
            raise ValueError("morphism does not belong to this hom module")
        field = self.module.field
        out = [field.zero] * self.module.dim
        indices = [
            j for j in range(self.module.dim) if self.module.degree_of(j) == u.degree
        ]
        basis_rows = [_flatten(self.basis_morphisms[j].matrix) for j in indices]
        coords = linalg.coordinates_in_span(field, basis_rows, _flatten(u.matrix))
        if coords is None:
            raise AssertionError("hom basis failed to span one of its own morphisms")
        for j, c in zip(indices, coords):
            out[j] = c
        return tuple(out)

    def morphism_at(self, vec: Sequence) -> GradedMorphism:
        """The morphism encoded by a homogeneous coordinate vector."""
        field = self.module.field
        vec = tuple(field.coerce(c) for c in vec)
        degree = self.module.element_degree(vec)
        if degree is None:
            degree = self.module.group.zero()
        rows = [[field.zero] * self.source.dim for _ in range(self.target.dim)]
        for j, c in enumerate(vec):
            if field.is_zero(c):
                continue
            m = self.basis_morphisms[j].matrix
            for b in range(self.target.dim):
                for a in range(self.source.dim):
                    rows[b][a] = field.add(rows[b][a], field.mul(c, m[b][a]))
        return GradedMorphism(self.source, self.target, tuple(tuple(r) for r in rows), degree)


def graded_hom(m: GradedModule, n: GradedModule) -> GradedHomModule:
    """The graded module of all morphisms m -> n.

    Only degrees of the form (degree in n) - (degree in m) can carry nonzero
    morphisms, so the support is scanned over that finite difference set.
    The acting ring must be commutative, since post-composition with scalar
    multiplication is otherwise not a module action.
    """
    if m.ring != n.ring:
        raise RingMismatchError("graded hom needs both modules over the same ring")
    ring = m.ring
    if not ring.is_commutative:
        raise UnsupportedClassError("graded hom needs a commutative ring")
    field = m.field
    diffs: dict[tuple[int, ...], GroupElement] = {}
    for bn in n.basis:
        for bm in m.basis:
            d = bn.degree - bm.degree
            diffs[d.coords] = d
    candidates = [diffs[c] for c in sorted(diffs)]
    basis_morphisms: list[GradedMorphism] = []
    basis: list[BasisElement] = []
    for g in candidates:
        for u in hom_space(m, n, g).basis:
            basis.append(BasisElement(f"u{len(basis)}", g))
            basis_morphisms.append(u)
    per_degree: dict[tuple[int, ...], list[int]] = {}
    for j, b in enumerate(basis):
        per_degree.setdefault(b.degree.coords, []).append(j)
    flat = {j: _flatten(u.matrix) for j, u in enumerate(basis_morphisms)}
    action = []
    for i in range(ring.dim):
        mult = _multiplication_morphism(n, i)
        row = []
        for j, u in enumerate(basis_morphisms):
            composite = mult.compose(u)
            indices = per_degree.get(composite.degree.coords, [])
            vec = [field.zero] * len(basis)
            if indices:
                coords = linalg.coordinates_in_span(
                    field, [flat[k] for k in indices], _flatten(composite.matrix)
                )
                if coords is None:
                    raise AssertionError("post-composition left the computed hom basis")
                for k, c in zip(indices, coords):
                    vec[k] = c
            elif not composite.is_zero:
                raise AssertionError("nonzero composite in a degree reported empty")
            row.append(tuple(vec))
        action.append(tuple(row))
    label = ""
    if m.label and n.label:
        label = f"hom({m.label}, {n.label})"
    module = GradedModule(ring, tuple(basis), tuple(action), label)
    return GradedHomModule(m, n, module, tuple(basis_morphisms))


@dataclass(frozen=True)
class FiniteDegrees:
    """Index scheme listing shift degrees explicitly; repeats allowed."""

    degrees: tuple[GroupElement, ...]


@dataclass(frozen=True)
class SubgroupIndexed:
    """Index scheme running over a subgroup, with a degree map into the grading group.

    The degree map starts out as the subgroup embedding; coarsening composes
    it with the surjection, which is why it is kept separate from the index
    group itself.
    """

    index_group: FgAbGroup
    degree_map: GroupHom


IndexScheme = Union[FiniteDegrees, SubgroupIndexed]


@dataclass(frozen=True)
class IntensionalFreeModule:
    """A direct sum of ring shifts given by a finite description.

    Stands for the sum over the index scheme of copies of the ring shifted
    so that the generator at index k sits in degree given by the scheme.
    """

    ring: GradedRing
    scheme: IndexScheme

    def __post_init__(self) -> None:
        group = self.ring.group
        if isinstance(self.scheme, FiniteDegrees):
            for d in self.scheme.degrees:
                if d.group != group:
                    raise GroupMismatchError("shift degree lies outside the grading group")
        elif isinstance(self.scheme, SubgroupIndexed):
            if self.scheme.degree_map.domain != self.scheme.index_group:
                raise GroupMismatchError("degree map does not start at the index group")
            if self.scheme.degree_map.codomain != group:
                raise GroupMismatchError("degree map does not land in the grading group")
        else:
            raise TypeError("unknown index scheme")

    @property
    def group(self) -> FgAbGroup:
        return self.ring.group

    @property
    def has_finite_index(self) -> bool:
        if isinstance(self.scheme, FiniteDegrees):
            return True
        return self.scheme.index_group.is_finite

    @property
    def is_zero(self) -> bool:
        if self.ring.is_zero_ring:
            return True
        return isinstance(self.scheme, FiniteDegrees) and not self.scheme.degrees

    def generator_degree(self, k: GroupElement) -> GroupElement:
        if not isinstance(self.scheme, SubgroupIndexed):
            raise TypeError("generator lookup by index element needs a subgroup scheme")
        return self.scheme.degree_map(k)

    def shift_list(self) -> tuple[GroupElement, ...]:
        """All shift degrees, enumerated (finite index only)."""
        if isinstance(self.scheme, FiniteDegrees):
            return self.scheme.degrees
        if not self.scheme.index_group.is_finite:
            raise InfiniteSupportError("infinite index subgroup cannot be enumerated")
        return tuple(self.scheme.degree_map(k) for k in self.scheme.index_group.elements())

    def materialize(self) -> GradedModule:
        """The explicit direct sum (finite index only)."""
        shifts = self.shift_list()
        if not shifts:
            return zero_module(self.ring)
        return free_module(self.ring, shifts)

    def coarsened(self, ctx: CoarseningContext) -> IntensionalFreeModule:
        """The same index scheme over the coarsened ring, degrees pushed through psi."""
        if self.group != ctx.domain:
            raise GroupMismatchError("module is not graded by the source group")
        ring = coarsen(ctx, self.ring)
        if isinstance(self.scheme, FiniteDegrees):
            scheme: IndexScheme = FiniteDegrees(tuple(ctx.psi(d) for d in self.scheme.degrees))
        else:
            scheme = SubgroupIndexed(
                self.scheme.index_group, ctx.psi.compose(self.scheme.degree_map)
            )
        return IntensionalFreeModule(ring, scheme)

    def describe(self) -> str:
        if isinstance(self.scheme, FiniteDegrees):
            inner = ", ".join(str(d) for d in self.scheme.degrees)
            return f"sum of shifts at [{inner}]"
        return f"sum of shifts indexed by {self.scheme.index_group}"


def intensional_free_module(ring: GradedRing, generators: Sequence[GroupElement]) -> IntensionalFreeModule:
    """The sum of ring shifts indexed by the subgroup generated by the given degrees."""
    k, emb = subgroup(ring.group, list(generators))
    return IntensionalFreeModule(ring, SubgroupIndexed(k, emb))


@dataclass(frozen=True)
class NotSmallWitness:
    """Why a module fails to be small: the identity assembly morphism.

    The identity of the sum of shifts projects nonzero onto every summand, so
    it cannot factor through finitely many of them the way every morphism in
    the image of the comparison map does.
    """

    family: str
    sample_indices: tuple[GroupElement, ...]
    note: str


@dataclass(frozen=True)
class SmallnessReport:
    verdict: str
    subject: str
    certificate: str | None = None
    witness: NotSmallWitness | None = None


def verify_not_small_witness(m: IntensionalFreeModule, witness: NotSmallWitness) -> bool:
    """Recheck a non-smallness certificate.

    Confirms the index subgroup is infinite, the ring is nonzero, and each
    sampled summand receives a nonzero projection of the identity (the
    generator itself).
    """
    if not isinstance(m.scheme, SubgroupIndexed):
        return False
    if m.scheme.index_group.is_finite:
        return False
    if m.ring.is_zero_ring:
        return False
    for k in witness.sample_indices:
        if k.group != m.scheme.index_group:
            return False
        m.generator_degree(k)
    return len(set(witness.sample_indices)) >= 2


def smallness_report(m) -> SmallnessReport:
    """Decide smallness for explicit modules and intensional free modules.

    Explicit modules are finitely generated, hence small.  An intensional
    sum over an infinite subgroup with a nonzero ring is not small, witnessed
    by its identity morphism.  Anything else is Unknown; no guessing.
    """
    if isinstance(m, GradedModule):
        return SmallnessReport(
            "small",
            str(m) if m.label else f"explicit module of dimension {m.dim}",
            certificate=f"explicit module with finite basis of size {m.dim}",
        )
    if isinstance(m, IntensionalFreeModule):
        if m.ring.is_zero_ring:
            return SmallnessReport("small", m.describe(), certificate="zero ring, zero module")
        if m.has_finite_index:
            n = len(m.shift_list())
            return SmallnessReport(
                "small",
                m.describe(),
                certificate=f"finite index set of size {n}; materializes to finite type",
            )
        kgroup = m.scheme.index_group
        gens = [kgroup.generator(i) for i in range(kgroup.ngens)]
        samples = [kgroup.zero()] + gens + ([gens[0].scale(2)] if gens else [])
        witness = NotSmallWitness(
            family=m.describe(),
            sample_indices=tuple(samples),
            note=(
                "the identity morphism projects onto every one of the infinitely "
                "many summands; a preimage under the comparison map would be a "
                "finite sum"
            ),
        )
        report = SmallnessReport("not-small", m.describe(), witness=witness)
        if not verify_not_small_witness(m, witness):
            raise AssertionError("constructed non-smallness witness failed its recheck")
        return report
    return SmallnessReport("unknown", f"unsupported input {type(m).__name__}")


@dataclass(frozen=True)
class RelativeSmallnessRecord:
    """Both sides of the relative-smallness transfer for a chosen test module."""

    test_module: str
    original: str
    coarsened: str
    note: str


@dataclass(frozen=True)
class SmallnessTransferReport:
    original: SmallnessReport
    coarsened: SmallnessReport
    consistent: bool
    relative: RelativeSmallnessRecord | None = None


def smallness_coarsening_transfer(
    ctx: CoarseningContext, m, n: GradedModule | None = None
) -> SmallnessTransferReport:
    """Smallness is invariant under coarsening; check both sides and compare.

    For explicit modules both sides are small.  An intensional free module
    coarsens to an intensional free module over the coarsened ring with the
    degree map composed, so the verdict transfers by the same argument.  A
    disagreement would be a soundness failure and raises.  With a test
    module n supplied, the relative version is recorded: finite-type sources
    are small relative to every family, and an intensional source over an
    infinite index subgroup fails relative to the shifts of any nonzero n.
    """
    if isinstance(m, GradedModule):
        if m.group != ctx.domain:
            raise GroupMismatchError("module is not graded by the source group")
        original = smallness_report(m)
        coarse = smallness_report(coarsen(ctx, m))
    elif isinstance(m, IntensionalFreeModule):
        original = smallness_report(m)
        coarse = smallness_report(m.coarsened(ctx))
    else:
        raise UnsupportedClassError(
            "transfer is decided for explicit modules and intensional free modules"
        )
    consistent = original.verdict == coarse.verdict
    if not consistent:
        raise SoundnessError(
            f"smallness changed under coarsening: {original.verdict} vs {coarse.verdict}"
        )
    relative = None
    if n is not None:
        if n.group != ctx.codomain:
            raise GroupMismatchError("test module must be graded by the target group")
        if original.verdict == "small":
            relative = RelativeSmallnessRecord(
                test_module=str(n) if n.label else f"module of dimension {n.dim}",
                original="relatively-small",
                coarsened="relatively-small",
                note="finite-type sources are small relative to every family",
            )
        elif n.is_zero:
            relative = RelativeSmallnessRecord(
                test_module="zero module",
                original="relatively-small",
                coarsened="relatively-small",
                note="every module is small relative to the zero family",
            )
        else:
            relative = RelativeSmallnessRecord(
                test_module=str(n) if n.label else f"module of dimension {n.dim}",
                original="not-relatively-small",
                coarsened="not-relatively-small",
                note=(
                    "an assembly morphism places a nonzero element of a shift of "
                    "the test module under every one of the infinitely many "
                    "generators, mirroring the identity witness"
                ),
            )
    return SmallnessTransferReport(original, coarse, consistent, relative)


@dataclass(frozen=True)
class SupportCertificate:
    """Finitely many summands can receive a nonzero projection in each degree.

    candidate_degrees is the difference set bound; contributing_degrees are
    the members of the index subgroup within it (for the degree-zero
    component, the same bound shifts along with the degree); per_degree_bound
    bounds the count uniformly over all degrees.
    """

    candidate_degrees: tuple[GroupElement, ...]
    contributing_degrees: tuple[GroupElement, ...]
    per_degree_bound: int
    note: str


@dataclass(frozen=True)
class LambdaReport:
    """The canonical map from a sum of hom modules into the hom of the sum."""

    verdict: str
    morphism: GradedMorphism | None = None
    certificate: SupportCertificate | None = None
    note: str = ""


def _subgroup_member(scheme: SubgroupIndexed, g: GroupElement) -> bool:
    """Whether g is a degree of some index element (degree map image test)."""
    dm = scheme.degree_map
    cols = [
        [dm.matrix[i][j] for i in range(dm.codomain.ngens)]
        for j in range(dm.domain.ngens)
    ]
    aug = cols + dm.codomain.relation_columns()
    rows = [[col[i] for col in aug] for i in range(dm.codomain.ngens)]
    return solve_integer(rows, list(g.coords), len(aug)) is not None


def lambda_morphism(m: GradedModule, family) -> LambdaReport:
    """Compare the sum of graded homs out of m with the graded hom into the sum.

    Finite families produce the morphism explicitly and verify it is an
    isomorphism.  For the intensional family of ring shifts the map is an
    isomorphism whenever m is explicit, because morphisms out of a finitely
    generated module only reach finitely many summands in each degree; a
    support certificate records the bound.  Intensional sources are not
    analyzed here; use smallness_report.
    """
    if isinstance(m, IntensionalFreeModule):
        return LambdaReport(
            "deferred", note="intensional source; smallness_report carries the analysis"
        )
    if isinstance(family, IntensionalFreeModule):
        fam = family
        if fam.ring != m.ring:
            raise RingMismatchError("family must consist of shifts of the acting ring")
        if fam.has_finite_index:
            members = [free_module(fam.ring, [d]) for d in fam.shift_list()]
            return lambda_morphism(m, members)
        diffs: dict[tuple[int, ...], GroupElement] = {}
        for bm in m.basis:
            for br in fam.ring.basis:
                d = bm.degree - br.degree
                diffs[d.coords] = d
        candidates = [diffs[c] for c in sorted(diffs)]
        members = tuple(
            d for d in candidates if _subgroup_member(fam.scheme, d)
        )
        for d in members:
            hom_space(m, free_module(fam.ring, [d]))
        certificate = SupportCertificate(
            candidate_degrees=tuple(candidates),
            contributing_degrees=members,
            per_degree_bound=len(candidates),
            note=(
                "a degree-h morphism out of m reaches the summand at index g only "
                "if some basis degree of m lands in the shifted ring support; per "
                "degree that confines g to a translate of the finite difference "
                "set, so all but finitely many projections vanish"
            ),
        )
        return LambdaReport("isomorphism", certificate=certificate)
    members = list(family)
    for x in members:
        if not isinstance(x, GradedModule):
            raise TypeError("family members must be explicit modules")
        if x.ring != m.ring:
            raise RingMismatchError("family members must share the ring of m")
    if not members:
        z = zero_module(m.ring)
        iso = GradedMorphism(z, z, (), m.group.zero())
        return LambdaReport("isomorphism", morphism=iso, note="empty family, zero spaces")
    parts = [graded_hom(m, x) for x in members]
    total, injections, _ = direct_sum(members)
    target_hom = graded_hom(m, total)
    lhs, lhs_inj, _ = direct_sum([p.module for p in parts])
    field = m.field
    cols = []
    for k, part in enumerate(parts):
        for u in part.basis_morphisms:
            cols.append(target_hom.coordinates_of(injections[k].compose(u)))
    rows = tuple(
        tuple(cols[j][b] for j in range(len(cols))) for b in range(target_hom.module.dim)
    )
    morphism = GradedMorphism(lhs, target_hom.module, rows, m.group.zero())
    if not morphism.is_mono:
        raise SoundnessError("the comparison into the hom of a sum must be injective")
    if not morphism.is_iso:
        raise SoundnessError("finite-family comparison failed to be an isomorphism")
    return LambdaReport("isomorphism", morphism=morphism)


@dataclass(frozen=True)
class HPsiDegree:
    """One target degree of the hom comparison map."""

    degree: GroupElement
    matrix: Matrix
    source_dimension: int
    target_dimension: int
    cokernel_dimension: int
    source_degrees: tuple[GroupElement, ...]


@dataclass(frozen=True)
class HPsiReport:
    """The hom comparison along psi, degree by degree.

    For each coarsened degree h, morphisms of every degree in the fiber of h
    are coarsened and expressed in the basis of the degree-h hom space of
    the coarsened modules.  The map is injective by construction of the
    coarsening; the report records the per-degree cokernel dimensions and
    the overall isomorphism verdict.
    """

    per_degree: tuple[HPsiDegree, ...]
    is_mono: bool
    is_iso: bool

    def cokernel_total(self) -> int:
        return sum(d.cokernel_dimension for d in self.per_degree)


def h_psi(ctx: CoarseningContext, m: GradedModule, n: GradedModule) -> HPsiReport:
    """Compute the comparison map from graded homs into coarsened homs.

    The source at coarsened degree h is the sum of hom spaces m -> n of all
    degrees g with psi(g) = h and g in the difference of supports; the
    target is the degree-h hom space of the coarsened modules.  A rank drop
    would contradict injectivity of coarsening on morphisms and raises
    SoundnessError.
    """
    if m.ring != n.ring:
        raise RingMismatchError("comparison needs both modules over the same ring")
    if m.group != ctx.domain:
        raise GroupMismatchError("modules are not graded by the source group")
    cm = coarsen(ctx, m)
    cn = coarsen(ctx, n)
    field = m.field
    diffs: dict[tuple[int, ...], GroupElement] = {}
    for bn in n.basis:
        for bm in m.basis:
            d = bn.degree - bm.degree
            diffs[d.coords] = d
    by_target: dict[tuple[int, ...], list[GroupElement]] = {}
    images: dict[tuple[int, ...], GroupElement] = {}
    for c in sorted(diffs):
        g = diffs[c]
        h = ctx.psi(g)
        by_target.setdefault(h.coords, []).append(g)
        images[h.coords] = h
    per_degree = []
    mono = True
    for hc in sorted(by_target):
        h = images[hc]
        gs = by_target[hc]
        target = hom_space(cm, cn, h)
        target_flat = [_flatten(u.matrix) for u in target.basis]
        columns = []
        source_degrees = []
        for g in gs:
            for u in hom_space(m, n, g).basis:
                coords = linalg.coordinates_in_span(field, target_flat, _flatten(u.matrix))
                if coords is None:
                    raise SoundnessError(
                        "a coarsened morphism fell outside the coarsened hom space"
                    )
                columns.append(coords)
                source_degrees.append(g)
        src_dim = len(columns)
        tgt_dim = target.dimension
        matrix = tuple(
            tuple(columns[j][b] for j in range(src_dim)) for b in range(tgt_dim)
        )
        rank = linalg.rank(field, [list(r) for r in matrix])
        if rank != src_dim:
            raise SoundnessError(
                f"comparison map at degree {h} dropped rank: {rank} < {src_dim}"
            )
        per_degree.append(
            HPsiDegree(
                degree=h,
                matrix=matrix,
                source_dimension=src_dim,
                target_dimension=tgt_dim,
                cokernel_dimension=tgt_dim - src_dim,
                source_degrees=tuple(source_degrees),
            )
        )
    is_iso = all(d.cokernel_dimension == 0 for d in per_degree)
    return HPsiReport(tuple(per_degree), mono, is_iso)


@dataclass(frozen=True)
class DichotomyPrediction:
    holds: bool
    branch: str
    detail: str


def h_psi_prediction(ctx: CoarseningContext, m) -> DichotomyPrediction:
    """Predict the comparison verdict from smallness and the kernel alone.

    The comparison is an isomorphism exactly when the source is small or the
    kernel is finite.  When smallness is Unknown and the kernel is infinite
    there is nothing sound to say, so that input is refused.
    """
    report = smallness_report(m)
    if report.verdict == "small":
        return DichotomyPrediction(True, "small", report.certificate or "")
    if ctx.kernel_is_finite:
        return DichotomyPrediction(
            True, "finite-kernel", f"kernel order {ctx.kernel_order}"
        )
    if report.verdict == "not-small":
        return DichotomyPrediction(
            False,
            "neither",
            "source is not small and the kernel is infinite; the comparison "
            "map has a certified cokernel",
        )
    raise UnsupportedClassError(
        "smallness is unknown for this input and the kernel is infinite"
    )


@dataclass(frozen=True)
class ConstantRule:
    """Every generator maps to the same vector."""

    value: Vector


@dataclass(frozen=True)
class FinitelyManyExceptions:
    """A default vector with finitely many listed exceptions."""

    default: Vector
    exceptions: tuple[tuple[GroupElement, Vector], ...]


Rule = Union[ConstantRule, FinitelyManyExceptions]


class UniformRuleMorphism:
    """A finitely described degree-zero morphism out of a coarsened sum of shifts.

    The source is an intensional free module indexed by a subgroup, read
    after coarsening along the context; the target is an explicit module
    graded by the source group, also read after coarsening.  The rule sends
    the generator at index k to a vector of the target whose pieces must all
    live in the coarsened degree of the generator.
    """

    def __init__(
        self,
        ctx: CoarseningContext,
        source: IntensionalFreeModule,
        target: GradedModule,
        rule: Rule,
    ) -> None:
        if not isinstance(source, IntensionalFreeModule) or not isinstance(
            source.scheme, SubgroupIndexed
        ):
            raise MalformedRuleError("rule morphisms need a subgroup-indexed source")
        if source.group != ctx.domain or target.group != ctx.domain:
            raise GroupMismatchError("source and target must be graded by the source group")
        if source.ring != target.ring:
            raise RingMismatchError("rule morphisms need matching rings")
        field = target.field
        if isinstance(rule, ConstantRule):
            rule = ConstantRule(tuple(field.coerce(c) for c in rule.value))
            if len(rule.value) != target.dim:
                raise MalformedRuleError("rule value has the wrong length")
        elif isinstance(rule, FinitelyManyExceptions):
            default = tuple(field.coerce(c) for c in rule.default)
            if len(default) != target.dim:
                raise MalformedRuleError("default value has the wrong length")
            fixed = []
            seen = set()
            for k, v in rule.exceptions:
                if k.group != source.scheme.index_group:
                    raise MalformedRuleError("exception index lies outside the index group")
                if k.coords in seen:
                    raise MalformedRuleError(f"duplicate exception at {k}")
                seen.add(k.coords)
                v = tuple(field.coerce(c) for c in v)
                if len(v) != target.dim:
                    raise MalformedRuleError("exception value has the wrong length")
                fixed.append((k, v))
            rule = FinitelyManyExceptions(default, tuple(fixed))
        else:
            raise MalformedRuleError("unknown rule kind")
        self.ctx = ctx
        self.source = source
        self.target = target
        self.rule = rule
        self._check_degree_zero()

    def evaluate(self, k: GroupElement) -> Vector:
        if k.group != self.source.scheme.index_group:
            raise MalformedRuleError("index element lies outside the index group")
        if isinstance(self.rule, ConstantRule):
            return self.rule.value
        for kk, v in self.rule.exceptions:
            if kk == k:
                return v
        return self.rule.default

    def _pieces(self, vec: Vector) -> list[tuple[GroupElement, Vector]]:
        """Split a target vector into its homogeneous pieces by source degree."""
        field = self.target.field
        by_degree: dict[tuple[int, ...], list] = {}
        degrees: dict[tuple[int, ...], GroupElement] = {}
        for a, c in enumerate(vec):
            if field.is_zero(c):
                continue
            d = self.target.degree_of(a)
            by_degree.setdefault(d.coords, [field.zero] * self.target.dim)[a] = c
            degrees[d.coords] = d
        return [(degrees[c], tuple(v)) for c, v in sorted(by_degree.items())]

    def _check_degree_zero(self) -> None:
        """Every evaluated value must sit in the coarsened degree of its generator."""
        scheme = self.source.scheme
        samples = [scheme.index_group.zero()]
        samples += [scheme.index_group.generator(i) for i in range(scheme.index_group.ngens)]
        if isinstance(self.rule, FinitelyManyExceptions):
            samples += [k for k, _ in self.rule.exceptions]
        default = (
            self.rule.value if isinstance(self.rule, ConstantRule) else self.rule.default
        )
        field = self.target.field
        if any(not field.is_zero(c) for c in default):
            # The default applies to every index element, whose coarsened
            # degrees vary over psi of the degree-map image; the value is
            # fixed, so sample a spread of indices beyond the generators.
            gens = [
                scheme.index_group.generator(i) for i in range(scheme.index_group.ngens)
            ]
            samples += [g.scale(3) for g in gens[:1]]
        for k in samples:
            g = self.source.generator_degree(k)
            h = self.ctx.psi(g)
            for d, _ in self._pieces(self.evaluate(k)):
                if self.ctx.psi(d) != h:
                    raise MalformedRuleError(
                        f"value for the generator at {k} has a piece of coarsened "
                        f"degree {self.ctx.psi(d)}, expected {h}"
                    )


@dataclass(frozen=True)
class ComponentSupportReport:
    """Which source-degree components of a rule morphism are nonzero.

    kind is "finite" with the exact set, or "infinite" with the coset
    argument describing infinitely many nonzero components.
    """

    kind: str
    components: tuple[GroupElement, ...] = ()
    reason: str = ""


def component_decomposition(u: UniformRuleMorphism) -> ComponentSupportReport:
    """Decompose a rule morphism into components indexed by source degrees.

    The generator at index k, of degree g, contributes the component at
    c = (degree of value piece) - g, always an element of the kernel.  A
    nonzero default over an infinite index subgroup whose degree map has
    infinite image spreads across infinitely many components; otherwise the
    set is finite and re-verified by evaluation.
    """
    ctx = u.ctx
    scheme = u.source.scheme
    field = u.target.field
    default = u.rule.value if isinstance(u.rule, ConstantRule) else u.rule.default
    default_nonzero = any(not field.is_zero(c) for c in default)
    kgroup = scheme.index_group
    image = None
    if default_nonzero and not kgroup.is_finite:
        image_gens = [scheme.degree_map(kgroup.generator(i)) for i in range(kgroup.ngens)]
        image = subgroup(ctx.domain, image_gens)
        img = image[0]
        if not img.is_finite:
            pieces = u._pieces(default)
            d0 = pieces[0][0]
            return ComponentSupportReport(
                kind="infinite",
                reason=(
                    f"the default value has a piece of degree {d0}; as k runs over "
                    "the infinite index subgroup, the components "
                    f"{d0} - deg(e_k) form an infinite subset of a kernel coset, "
                    "so infinitely many components are nonzero"
                ),
            )
    components: dict[tuple[int, ...], GroupElement] = {}

    def record(k: GroupElement) -> None:
        g = u.source.generator_degree(k)
        for d, _ in u._pieces(u.evaluate(k)):
            c = d - g
            if not ctx.psi(c).is_zero:
                raise AssertionError("component index escaped the kernel")
            components[c.coords] = c

    if kgroup.is_finite:
        for k in kgroup.elements():
            record(k)
    else:
        if default_nonzero:
            # Finite image: each image degree is the degree of infinitely
            # many generators (the fibers are kernel cosets of an infinite
            # kernel), so the default contributes at every image degree no
            # matter which finitely many indices the exceptions replace.
            img, emb = image
            pieces = u._pieces(default)
            for kk in img.elements():
                g = emb(kk)
                for d, _ in pieces:
                    c = d - g
                    if not ctx.psi(c).is_zero:
                        raise AssertionError("component index escaped the kernel")
                    components[c.coords] = c
        if isinstance(u.rule, FinitelyManyExceptions):
            for k, _ in u.rule.exceptions:
                record(k)
    out = tuple(components[c] for c in sorted(components))
    samples = [kgroup.zero()] + [kgroup.generator(i) for i in range(kgroup.ngens)]
    if isinstance(u.rule, FinitelyManyExceptions):
        samples += [k for k, _ in u.rule.exceptions]
    for k in samples:
        g = u.source.generator_degree(k)
        for d, _ in u._pieces(u.evaluate(k)):
            if (d - g).coords not in components:
                raise AssertionError("re-evaluation found a component outside the report")
    return ComponentSupportReport(kind="finite", components=out)


@dataclass(frozen=True)
class ChainStep:
    surjection: str
    method: str
    holds: bool


@dataclass(frozen=True)
class HomChainReport:
    """Outcome of the smallness chain through a quotient by an infinite subgroup."""

    subgroup_rank: int
    subgroup_invariants: tuple[int, ...]
    projection: str
    premise_holds: bool
    premise_method: str
    smallness: str | None
    steps: tuple[ChainStep, ...]
    overall: bool
    note: str = ""


def hom_chain_demo(m, generators: Sequence[GroupElement], psi_list: Sequence[GroupHom]) -> HomChainReport:
    """Chain the dichotomy through the projection along an infinite subgroup.

    If the comparison map for the canonical projection modulo the given
    subgroup is an isomorphism, the infinite kernel forces the source to be
    small, and then the comparison is an isomorphism for every further
    surjection, each one checked computationally on explicit inputs and by
    prediction otherwise.  The subgroup must be infinite for the argument to
    start.
    """
    ring = m.ring
    group = ring.group
    gens = list(generators)
    for g in gens:
        if g.group != group:
            raise GroupMismatchError("subgroup generator lies outside the grading group")
    k, _ = subgroup(group, gens)
    if k.rank < 1:
        raise FiniteSubgroupError(
            f"the subgroup {k} is finite; the argument needs an infinite kernel"
        )
    quotient, pi = quotient_map(group, gens)
    ctx_pi = CoarseningContext(pi)
    explicit = isinstance(m, GradedModule)
    if explicit:
        report = h_psi(ctx_pi, m, m)
        premise = report.is_iso
        method = "computed"
        prediction = h_psi_prediction(ctx_pi, m)
        if prediction.holds != premise:
            raise SoundnessError("dichotomy prediction disagreed with the computation")
    else:
        prediction = h_psi_prediction(ctx_pi, m)
        premise = prediction.holds
        method = "predicted"
    projection = f"{group} -> {quotient}"
    if not premise:
        return HomChainReport(
            subgroup_rank=k.rank,
            subgroup_invariants=k.invariants,
            projection=projection,
            premise_holds=False,
            premise_method=method,
            smallness=None,
            steps=(),
            overall=False,
            note="premise not satisfied: the comparison along the projection is not an isomorphism",
        )
    steps = []
    for psi in psi_list:
        ctx = CoarseningContext(psi)
        if psi.domain != group:
            raise GroupMismatchError("listed surjection does not start at the grading group")
        if explicit:
            rep = h_psi(ctx, m, m)
            if not rep.is_iso:
                raise SoundnessError(
                    "a small source produced a non-isomorphism comparison map"
                )
            steps.append(ChainStep(f"{psi.domain} -> {psi.codomain}", "computed", True))
        else:
            pred = h_psi_prediction(ctx, m)
            steps.append(
                ChainStep(f"{psi.domain} -> {psi.codomain}", "predicted", pred.holds)
            )
    overall = premise and all(s.holds for s in steps)
    return HomChainReport(
        subgroup_rank=k.rank,
        subgroup_invariants=k.invariants,
        projection=projection,
        premise_holds=premise,
        premise_method=method,
        smallness="small",
        steps=tuple(steps),
        overall=overall,
    )
