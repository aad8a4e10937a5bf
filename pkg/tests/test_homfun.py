"""Graded hom modules, smallness, the hom comparison map, and rule morphisms."""

import pytest

from regrade import (
    CoarseningContext,
    ConstantRule,
    F2,
    FiniteDegrees,
    FinitelyManyExceptions,
    GradedRing,
    GroupHom,
    IntensionalFreeModule,
    NotSmallWitness,
    SubgroupIndexed,
    UniformRuleMorphism,
    base_field_ring,
    component_decomposition,
    free_module,
    graded_hom,
    group_algebra,
    h_psi,
    h_psi_prediction,
    hom_chain_demo,
    hom_dimension,
    hom_space,
    intensional_free_module,
    lambda_morphism,
    ring_as_module,
    smallness_coarsening_transfer,
    smallness_report,
    truncated_polynomial_ring,
    validate,
    verify_not_small_witness,
    zero_module,
)
from regrade.errors import (
    FiniteSubgroupError,
    InfiniteSupportError,
    MalformedRuleError,
    RingMismatchError,
    UnsupportedClassError,
)

from _laws import action_morphism
from conftest import PSI_TABLE, Z, Z2, Z4, ZERO, corpus_instances


def _small_instances(limit=None, max_dim=3):
    out = [inst for inst in corpus_instances() if inst.module.dim <= max_dim]
    return out if limit is None else out[:limit]


def test_graded_hom_components_match_the_hom_spaces():
    checked = 0
    for inst in _small_instances():
        m = inst.module
        gh = graded_hom(m, m)
        assert validate(gh.module) == []
        seen = {b.degree.coords for b in gh.module.basis}
        for a in range(m.dim):
            for b in range(m.dim):
                g = m.degree_of(b) - m.degree_of(a)
                assert gh.component_dimension(g) == hom_dimension(m, m, g)
                seen.discard(g.coords)
        assert not seen
        checked += 1
    assert checked >= 20


def test_graded_hom_coordinates_roundtrip():
    inst = _small_instances()[0]
    m = inst.module
    gh = graded_hom(m, m)
    for u in gh.basis_morphisms:
        assert gh.morphism_at(gh.coordinates_of(u)) == u


def test_graded_hom_action_is_post_composition():
    for inst in _small_instances(limit=6):
        m = inst.module
        gh = graded_hom(m, m)
        for i in range(m.ring.dim):
            mult = action_morphism(m, i)
            for u in gh.basis_morphisms:
                acted = gh.module.act_basis(i, gh.coordinates_of(u))
                composite = mult.compose(u)
                if all(m.field.is_zero(c) for c in acted):
                    assert composite.is_zero
                else:
                    assert gh.morphism_at(acted) == composite


def test_graded_hom_refuses_noncommutative_rings():
    from regrade import BasisElement

    f = F2
    basis = ("e11", "e12", "e22")
    degrees = (ZERO.zero(), ZERO.zero(), ZERO.zero())
    mul = (
        ((f.one, f.zero, f.zero), (f.zero, f.one, f.zero), (f.zero, f.zero, f.zero)),
        ((f.zero, f.zero, f.zero), (f.zero, f.zero, f.zero), (f.zero, f.one, f.zero)),
        ((f.zero, f.zero, f.zero), (f.zero, f.zero, f.zero), (f.zero, f.zero, f.one)),
    )
    ring = GradedRing(
        f,
        ZERO,
        tuple(BasisElement(n, d) for n, d in zip(basis, degrees)),
        mul,
        (f.one, f.zero, f.one),
        "upper triangular 2x2",
    )
    assert not ring.is_commutative
    with pytest.raises(UnsupportedClassError):
        graded_hom(ring_as_module(ring), ring_as_module(ring))


def test_intensional_schemes_materialize_and_coarsen():
    ring = base_field_ring(F2, Z)
    finite = IntensionalFreeModule(
        ring, FiniteDegrees((Z.element((0,)), Z.element((2,))))
    )
    assert finite.has_finite_index
    mat = finite.materialize()
    assert mat.dim == 2 * ring.dim
    assert sorted(g.coords for g in mat.support()) == [(0,), (2,)]

    whole = intensional_free_module(ring, [Z.element((1,))])
    assert isinstance(whole.scheme, SubgroupIndexed)
    assert not whole.has_finite_index
    with pytest.raises(InfiniteSupportError):
        whole.shift_list()

    ctx = CoarseningContext(PSI_TABLE["Z_to_0"])
    co = whole.coarsened(ctx)
    assert co.ring.group == ZERO
    k = co.scheme.index_group
    assert co.scheme.degree_map(k.generator(0)) == ZERO.zero()


def test_smallness_verdicts_and_witness_checks():
    ring = base_field_ring(F2, Z)
    explicit = free_module(ring, [Z.element((0,))])
    assert smallness_report(explicit).verdict == "small"

    finite = IntensionalFreeModule(ring, FiniteDegrees((Z.element((3,)),)))
    assert smallness_report(finite).verdict == "small"

    whole = intensional_free_module(ring, [Z.element((1,))])
    report = smallness_report(whole)
    assert report.verdict == "not-small"
    assert verify_not_small_witness(whole, report.witness)

    single = NotSmallWitness(
        family=report.witness.family,
        sample_indices=report.witness.sample_indices[:1],
        note=report.witness.note,
    )
    assert not verify_not_small_witness(whole, single)
    assert not verify_not_small_witness(finite, report.witness)
    foreign = NotSmallWitness(
        family=report.witness.family,
        sample_indices=(Z4.zero(), Z4.element((1,))),
        note=report.witness.note,
    )
    assert not verify_not_small_witness(whole, foreign)


def test_smallness_transfers_along_coarsening():
    ctx = CoarseningContext(PSI_TABLE["Z_to_0"])
    ring = base_field_ring(F2, Z)

    explicit = free_module(ring, [Z.element((0,)), Z.element((1,))])
    n = free_module(base_field_ring(F2, ZERO), [ZERO.zero()])
    transfer = smallness_coarsening_transfer(ctx, explicit, n)
    assert transfer.original.verdict == "small"
    assert transfer.coarsened.verdict == "small"
    assert transfer.consistent
    assert transfer.relative.original == "relatively-small"

    whole = intensional_free_module(ring, [Z.element((1,))])
    transfer = smallness_coarsening_transfer(ctx, whole, n)
    assert transfer.original.verdict == "not-small"
    assert transfer.coarsened.verdict == "not-small"
    assert transfer.consistent
    assert verify_not_small_witness(whole, transfer.original.witness)
    assert verify_not_small_witness(whole.coarsened(ctx), transfer.coarsened.witness)
    assert transfer.relative.original == "not-relatively-small"
    assert transfer.relative.coarsened == "not-relatively-small"

    zero_test = smallness_coarsening_transfer(ctx, whole, zero_module(n.ring))
    assert zero_test.relative.original == "relatively-small"

    with pytest.raises(UnsupportedClassError):
        smallness_coarsening_transfer(ctx, "not a module")


def test_lambda_morphism_for_finite_families():
    ring = truncated_polynomial_ring(F2, Z, Z.element((1,)), 2)
    m = free_module(ring, [Z.element((0,))])
    family = [ring_as_module(ring), free_module(ring, [Z.element((1,))])]
    report = lambda_morphism(m, family)
    assert report.verdict == "isomorphism"
    assert report.morphism.is_iso

    empty = lambda_morphism(m, [])
    assert empty.verdict == "isomorphism"

    with pytest.raises(RingMismatchError):
        lambda_morphism(m, [ring_as_module(base_field_ring(F2, Z))])
    with pytest.raises(TypeError):
        lambda_morphism(m, [object()])


def test_lambda_morphism_for_the_infinite_shift_family():
    ring = base_field_ring(F2, Z)
    m = free_module(ring, [Z.element((0,)), Z.element((2,))])
    family = intensional_free_module(ring, [Z.element((1,))])
    report = lambda_morphism(m, family)
    assert report.verdict == "isomorphism"
    cert = report.certificate
    assert cert is not None
    assert len(cert.contributing_degrees) <= cert.per_degree_bound
    assert set(d.coords for d in cert.contributing_degrees) <= set(
        d.coords for d in cert.candidate_degrees
    )

    deferred = lambda_morphism(family, family)
    assert deferred.verdict == "deferred"


def test_hom_comparison_is_an_isomorphism_on_explicit_modules():
    checked = 0
    for inst in _small_instances():
        ctx = inst.ctx
        m = inst.module
        report = h_psi(ctx, m, m)
        assert report.is_mono
        prediction = h_psi_prediction(ctx, m)
        assert prediction.holds == report.is_iso
        assert report.is_iso
        assert report.cokernel_total() == 0
        for block in report.per_degree:
            assert block.source_dimension == block.target_dimension
            for g in block.source_degrees:
                assert ctx.psi(g) == block.degree
        checked += 1
    assert checked >= 20


def test_hom_comparison_prediction_branches():
    ring = base_field_ring(F2, Z)
    m = free_module(ring, [Z.element((0,))])

    finite_ctx = CoarseningContext(PSI_TABLE["Z_to_Z2"])
    assert h_psi_prediction(finite_ctx, m).branch == "small"

    infinite_ctx = CoarseningContext(PSI_TABLE["Z_to_0"])
    whole = intensional_free_module(ring, [Z.element((1,))])
    prediction = h_psi_prediction(infinite_ctx, whole)
    assert not prediction.holds
    assert prediction.branch == "neither"

    # Z -> Z/2 has the infinite kernel 2Z, so only the identity gives a
    # finite kernel while keeping the grading group of the family
    trivial_ctx = CoarseningContext(PSI_TABLE["id"])
    shifted = h_psi_prediction(trivial_ctx, whole)
    assert shifted.holds and shifted.branch == "finite-kernel"

    not_small_infinite = h_psi_prediction(finite_ctx, whole)
    assert not not_small_infinite.holds and not_small_infinite.branch == "neither"


def test_uniform_rule_morphism_validation_errors():
    ctx = CoarseningContext(PSI_TABLE["Z_to_0"])
    ring = base_field_ring(F2, Z)
    whole = intensional_free_module(ring, [Z.element((1,))])
    target = free_module(ring, [Z.element((0,))])

    with pytest.raises(MalformedRuleError):
        UniformRuleMorphism(
            ctx,
            IntensionalFreeModule(ring, FiniteDegrees((Z.element((0,)),))),
            target,
            ConstantRule((F2.one,)),
        )
    with pytest.raises(MalformedRuleError):
        UniformRuleMorphism(ctx, whole, target, ConstantRule((F2.one, F2.one)))
    k = whole.scheme.index_group
    with pytest.raises(MalformedRuleError):
        UniformRuleMorphism(
            ctx,
            whole,
            target,
            FinitelyManyExceptions(
                (F2.zero,), ((k.zero(), (F2.one,)), (k.zero(), (F2.zero,)))
            ),
        )
    with pytest.raises(MalformedRuleError):
        UniformRuleMorphism(
            ctx,
            whole,
            target,
            FinitelyManyExceptions((F2.zero,), ((Z4.zero(), (F2.one,)),)),
        )

    ident_ctx = CoarseningContext(PSI_TABLE["id"])
    with pytest.raises(MalformedRuleError):
        # with a trivial kernel the value for the generator in degree 1 must
        # itself sit in degree 1, and the constant value sits in degree 0
        UniformRuleMorphism(ident_ctx, whole, target, ConstantRule((F2.one,)))


def test_component_decomposition_reports_finite_supports():
    ctx = CoarseningContext(PSI_TABLE["Z_to_0"])
    ring = base_field_ring(F2, Z)
    whole = intensional_free_module(ring, [Z.element((1,))])
    target = free_module(ring, [Z.element((0,)), Z.element((1,))])
    k = whole.scheme.index_group

    zero_rule = UniformRuleMorphism(
        ctx, whole, target, ConstantRule((F2.zero, F2.zero))
    )
    report = component_decomposition(zero_rule)
    assert report.kind == "finite" and report.components == ()

    exceptional = UniformRuleMorphism(
        ctx,
        whole,
        target,
        FinitelyManyExceptions(
            (F2.zero, F2.zero),
            (
                (k.element((2,)), (F2.one, F2.one)),
                (k.element((0,)), (F2.one, F2.zero)),
            ),
        ),
    )
    report = component_decomposition(exceptional)
    assert report.kind == "finite"
    got = {c.coords for c in report.components}
    emb = whole.scheme.degree_map
    shift = emb(k.element((2,)))
    expected = {
        (Z.element((0,)) - shift).coords,
        (Z.element((1,)) - shift).coords,
        (0,),
    }
    assert got == expected


def test_component_decomposition_spots_infinite_spread():
    ctx = CoarseningContext(PSI_TABLE["Z_to_0"])
    ring = base_field_ring(F2, Z)
    whole = intensional_free_module(ring, [Z.element((1,))])
    target = free_module(ring, [Z.element((0,))])
    constant = UniformRuleMorphism(ctx, whole, target, ConstantRule((F2.one,)))
    report = component_decomposition(constant)
    assert report.kind == "infinite"
    assert report.components == ()
    assert "infinite" in report.reason


def test_component_decomposition_with_a_finite_image_degree_map():
    ctx = CoarseningContext(PSI_TABLE["Z2_to_0"])
    ring = base_field_ring(F2, Z2)
    folded = IntensionalFreeModule(ring, SubgroupIndexed(Z, GroupHom(Z, Z2, [[1]])))
    target = free_module(ring, [Z2.element((0,)), Z2.element((1,))])
    rule = UniformRuleMorphism(ctx, folded, target, ConstantRule((F2.one, F2.one)))
    report = component_decomposition(rule)
    assert report.kind == "finite"
    assert {c.coords for c in report.components} == {(0,), (1,)}


def test_hom_chain_through_an_infinite_quotient():
    ring = truncated_polynomial_ring(F2, Z, Z.element((1,)), 2)
    m = ring_as_module(ring)
    psi_list = [PSI_TABLE["id"], PSI_TABLE["Z_to_Z2"], PSI_TABLE["Z_to_0"]]
    report = hom_chain_demo(m, [Z.element((1,))], psi_list)
    assert report.premise_holds and report.premise_method == "computed"
    assert report.smallness == "small"
    assert report.overall
    assert len(report.steps) == 3
    assert all(s.holds and s.method == "computed" for s in report.steps)
    assert report.subgroup_rank == 1

    with pytest.raises(FiniteSubgroupError):
        hom_chain_demo(m, [Z.zero()], psi_list)

    whole = intensional_free_module(base_field_ring(F2, Z), [Z.element((1,))])
    negative = hom_chain_demo(whole, [Z.element((1,))], psi_list)
    assert not negative.premise_holds
    assert not negative.overall
    assert negative.steps == ()
