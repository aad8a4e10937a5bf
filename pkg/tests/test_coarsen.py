"""Regrading functors: coarsening, refinement, and the canonical maps between them."""

from fractions import Fraction

import pytest

from regrade import (
    CoarseningContext,
    F2,
    FgAbGroup,
    GroupHom,
    KernelShiftFamily,
    ProperMonoWitness,
    QQ,
    adjoint_transpose_backward,
    adjoint_transpose_forward,
    base_field_ring,
    canonical_transformations,
    coarsen,
    copy_inclusion,
    copy_inclusion_explicit,
    copy_projection,
    copy_projection_after,
    fiber_codiagonal,
    fiber_diagonal,
    free_module,
    group_algebra,
    hom_space,
    identity_hom,
    identity_morphism,
    left_adjoint_transpose_backward,
    left_adjoint_transpose_forward,
    product_coarsening_comparison,
    refine,
    refine_module,
    refine_ring,
    refine_then_coarsen_decomposition,
    refined_hom_space,
    refine_morphism,
    ring_as_module,
    ring_copy_inclusion,
    ring_copy_projection,
    ring_fiber_codiagonal,
    ring_fiber_diagonal,
    truncated_polynomial_ring,
    validate,
    verify_proper_mono_witness,
    zero_module,
)
from regrade.errors import (
    GroupMismatchError,
    InfiniteKernelError,
    InfiniteSupportError,
    NotEpimorphismError,
    UnsupportedClassError,
)

from _laws import action_morphism, run_functor_law_suite
from conftest import PSI_TABLE, Z, Z2, Z4, ZERO, ZxZ2, corpus_instances


def _scaled_identity(field, morphism, c):
    """Does the morphism act as multiplication by the scalar c?"""
    m = morphism.source
    if morphism.target != m:
        return False
    for a in range(m.dim):
        for b in range(m.dim):
            want = c if a == b else field.zero
            if morphism.matrix[b][a] != want:
                return False
    return True


def test_context_requires_an_epimorphism():
    doubling = GroupHom(Z, Z, [[2]])
    with pytest.raises(NotEpimorphismError):
        CoarseningContext(doubling)


def test_coarsen_rejects_foreign_objects():
    ctx = CoarseningContext(PSI_TABLE["Z4_to_Z2"])
    wrong = ring_as_module(base_field_ring(F2, Z2))
    with pytest.raises(GroupMismatchError):
        coarsen(ctx, wrong)
    with pytest.raises(TypeError):
        coarsen(ctx, "not graded")


def test_functor_laws_across_the_corpus():
    instances = corpus_instances()
    assert run_functor_law_suite(instances) == len(instances) >= 50


def test_refining_a_trivially_graded_field_doubles_it_with_a_twist():
    """Refining the base field along Z/2 -> 0 gives pairs multiplying as
    (a, b)(c, d) = (ac + bd, ad + cb)."""
    psi = PSI_TABLE["Z2_to_0"]
    ctx = CoarseningContext(psi)
    for field in (F2, QQ):
        s = base_field_ring(field, ZERO)
        refined = refine_ring(ctx, s).ring
        assert refined.dim == 2
        assert [g.coords for g, _ in refine_ring(ctx, s).copies] == [(0,), (1,)]
        if field.size is not None:
            elements = list(field.elements())
        else:
            elements = [field.coerce(Fraction(n, d)) for n in (-2, 0, 1, 3) for d in (1, 2)]
        for a in elements:
            for b in elements:
                for c in elements:
                    for d in elements:
                        got = refined.multiply((a, b), (c, d))
                        want = (
                            field.add(field.mul(a, c), field.mul(b, d)),
                            field.add(field.mul(a, d), field.mul(c, b)),
                        )
                        assert got == want
    f2_refined = refine_ring(ctx, base_field_ring(F2, ZERO)).ring
    one_one = (F2.one, F2.one)
    assert f2_refined.multiply(one_one, one_one) == (F2.zero, F2.zero)


def test_refined_ring_of_an_infinite_source_group_cannot_materialize():
    ctx = CoarseningContext(PSI_TABLE["Z_to_0"])
    s = base_field_ring(F2, ZERO)
    lazy = refine(ctx, s)
    assert lazy.component_dimension(Z.element((5,))) == 1
    with pytest.raises(InfiniteSupportError):
        lazy.materialize()


def test_lazy_refined_module_over_an_infinite_kernel():
    ctx = CoarseningContext(PSI_TABLE["Z_to_0"])
    n = free_module(base_field_ring(F2, ZERO), [ZERO.zero(), ZERO.zero()])
    lazy = refine(ctx, n)
    assert not lazy.is_finite_dimensional
    for k in (-3, 0, 7):
        assert lazy.component_dimension(Z.element((k,))) == n.dim
    with pytest.raises(InfiniteSupportError):
        lazy.default_window()
    window = [Z.element((k,)) for k in (-1, 0, 1)]
    ring = base_field_ring(F2, Z)
    mat = lazy.materialize(ring, window)
    assert mat.module.dim == 3 * n.dim
    assert validate(mat.module) == []


def test_refine_then_coarsen_counts_kernel_copies():
    cases = [
        ("id", identity_hom(Z2), base_field_ring(F2, Z2), 1),
        ("Z4_to_Z2", PSI_TABLE["Z4_to_Z2"], base_field_ring(F2, Z4), 2),
    ]
    for _, psi, ring, expected_copies in cases:
        ctx = CoarseningContext(psi)
        n = free_module(
            coarsen(ctx, ring), [ctx.codomain.zero(), ctx.codomain.element((1,))]
        )
        dec = refine_then_coarsen_decomposition(ctx, n, ring)
        assert dec.copies == expected_copies == ctx.kernel_order
        assert dec.coarsened.dim == expected_copies * n.dim
        assert dec.sum_module.dim == dec.coarsened.dim
        assert dec.iso.is_iso
        assert dec.iso.source == dec.coarsened and dec.iso.target == dec.sum_module


def test_refine_then_coarsen_rejects_rings_that_mix_copies():
    ctx = CoarseningContext(PSI_TABLE["Z4_to_Z2"])
    ring = group_algebra(F2, Z4)
    n = ring_as_module(coarsen(ctx, ring))
    with pytest.raises(UnsupportedClassError):
        refine_then_coarsen_decomposition(ctx, n, ring)


def test_canonical_module_maps_and_their_composites():
    for psi_name, field, k in [
        ("id", F2, 1),
        ("Z4_to_Z2", F2, 2),
        ("Z4_to_Z2", QQ, 2),
        ("Z2_to_0", QQ, 2),
    ]:
        psi = PSI_TABLE[psi_name]
        ctx = CoarseningContext(psi)
        ring = base_field_ring(field, ctx.domain)
        gens = [ctx.domain.generator(i) for i in range(ctx.domain.ngens)]
        m = free_module(ring, [ctx.domain.zero()] + gens)
        maps = canonical_transformations(ctx, m)
        assert set(maps) == {
            "copy_inclusion",
            "copy_projection",
            "fiber_codiagonal",
            "fiber_diagonal",
        }
        alpha = maps["copy_inclusion"]
        delta = maps["copy_projection"]
        gamma = maps["fiber_diagonal"]
        beta = maps["fiber_codiagonal"]
        assert alpha.is_mono and delta.is_epi
        assert gamma.is_mono and beta.is_epi
        assert delta.compose(alpha) == identity_morphism(m)
        comp = beta.compose(gamma)
        assert _scaled_identity(field, comp, field.coerce(k))
        if field == F2 and k == 2:
            assert comp.is_zero


def test_copy_projection_after_reproduces_the_materialized_composite():
    ctx = CoarseningContext(PSI_TABLE["Z4_to_Z2"])
    ring = truncated_polynomial_ring(F2, Z4, Z4.element((1,)), 2)
    m = ring_as_module(ring)
    phi = copy_inclusion(ctx, m)
    direct = copy_projection_after(ctx, phi, m)
    assert direct == identity_morphism(m)
    refinement = refine_module(ctx, coarsen(ctx, m), ring)
    composite = copy_projection(ctx, m, refinement).compose(phi.materialized(refinement))
    assert composite == direct


def test_adjoint_transposes_are_mutually_inverse_on_the_corpus():
    checked = 0
    for inst in corpus_instances():
        if inst.module.dim > 3:
            continue
        ctx = inst.ctx
        m = inst.module
        n = coarsen(ctx, m)
        for phi in refined_hom_space(ctx, m, n):
            u = adjoint_transpose_backward(ctx, phi)
            assert adjoint_transpose_forward(ctx, u, m) == phi
            checked += 1
        for u in hom_space(coarsen(ctx, m), n).basis:
            phi = adjoint_transpose_forward(ctx, u, m)
            assert adjoint_transpose_backward(ctx, phi) == u
            checked += 1
    assert checked >= 40


def test_transposing_the_identity_gives_the_copy_inclusion():
    for inst in corpus_instances()[:12]:
        ctx = inst.ctx
        m = inst.module
        ident = identity_morphism(coarsen(ctx, m))
        assert adjoint_transpose_forward(ctx, ident, m) == copy_inclusion(ctx, m)


def test_adjoint_transpose_is_natural_in_both_slots():
    ctx = CoarseningContext(PSI_TABLE["Z4_to_Z2"])
    ring = truncated_polynomial_ring(F2, Z4, Z4.element((1,)), 2)
    m = ring_as_module(ring)
    m2 = free_module(ring, [Z4.element((1,))])
    n = coarsen(ctx, m)
    n2 = coarsen(ctx, m2)
    for u in hom_space(coarsen(ctx, m), n).basis:
        for f in hom_space(m2, m).basis:
            left = adjoint_transpose_forward(ctx, u.compose(coarsen(ctx, f)), m2)
            right = adjoint_transpose_forward(ctx, u, m).precompose(f)
            assert left == right
        for t in hom_space(n, n2).basis:
            left = adjoint_transpose_forward(ctx, t.compose(u), m)
            right = adjoint_transpose_forward(ctx, u, m).postcompose_refined(t)
            assert left == right


def test_left_adjoint_transposes_are_mutually_inverse():
    for psi_name in ("id", "Z4_to_Z2", "Z2_to_0"):
        ctx = CoarseningContext(PSI_TABLE[psi_name])
        ring = base_field_ring(F2, ctx.domain)
        cogens = [ctx.codomain.generator(i) for i in range(ctx.codomain.ngens)]
        n = free_module(coarsen(ctx, ring), [ctx.codomain.zero()] + cogens)
        m = free_module(ring, [ctx.domain.zero()])
        refinement = refine_module(ctx, n, ring)
        for w in hom_space(refinement.module, m).basis:
            v = left_adjoint_transpose_forward(ctx, w, refinement)
            assert left_adjoint_transpose_backward(ctx, v, m, refinement) == w
        for v in hom_space(n, coarsen(ctx, m)).basis:
            w = left_adjoint_transpose_backward(ctx, v, m, refinement)
            assert left_adjoint_transpose_forward(ctx, w, refinement) == v


def test_refined_hom_dimension_matches_the_coarsened_hom():
    checked = 0
    for inst in corpus_instances():
        if inst.module.dim > 3:
            continue
        ctx = inst.ctx
        m = inst.module
        n = coarsen(ctx, m)
        assert len(refined_hom_space(ctx, m, n)) == hom_space(coarsen(ctx, m), n).dimension
        checked += 1
    assert checked >= 20


def test_refine_morphism_commutes_with_copy_projection():
    ctx = CoarseningContext(PSI_TABLE["Z4_to_Z2"])
    ring = base_field_ring(F2, Z4)
    n = free_module(coarsen(ctx, ring), [Z2.element((0,)), Z2.element((1,))])
    n2 = free_module(coarsen(ctx, ring), [Z2.element((0,))])
    ref_n = refine_module(ctx, n, ring)
    ref_n2 = refine_module(ctx, n2, ring)
    for t in hom_space(n, n2).basis:
        lifted = refine_morphism(ctx, t, ref_n, ref_n2)
        assert lifted.degree.is_zero
        assert validate(lifted.source) == [] and validate(lifted.target) == []
        left = t.compose(fiber_codiagonal(ctx, n, ring, ref_n))
        right = fiber_codiagonal(ctx, n2, ring, ref_n2).compose(coarsen(ctx, lifted))
        assert left == right


def test_product_comparison_is_an_isomorphism_for_finite_families():
    ctx = CoarseningContext(PSI_TABLE["Z4_to_Z2"])
    ring = truncated_polynomial_ring(F2, Z4, Z4.element((1,)), 2)
    members = [ring_as_module(ring), free_module(ring, [Z4.element((2,))])]
    report = product_coarsening_comparison(ctx, members)
    assert report.verdict == "isomorphism"
    assert report.comparison.is_iso
    assert report.witness is None


def test_product_comparison_handles_the_kernel_indexed_family():
    finite_ctx = CoarseningContext(PSI_TABLE["Z4_to_Z2"])
    ring4 = base_field_ring(F2, Z4)
    finite_report = product_coarsening_comparison(finite_ctx, KernelShiftFamily(ring4))
    assert finite_report.verdict == "isomorphism"
    assert finite_report.comparison.is_iso

    ctx = CoarseningContext(PSI_TABLE["Z_to_0"])
    ring = base_field_ring(F2, Z)
    report = product_coarsening_comparison(ctx, KernelShiftFamily(ring))
    assert report.verdict == "proper-monomorphism"
    assert report.comparison is None
    assert verify_proper_mono_witness(ctx, report.witness)
    tampered = ProperMonoWitness(
        ring=report.witness.ring,
        kernel_rank=0,
        kernel_invariants=(2,),
        description=report.witness.description,
    )
    assert not verify_proper_mono_witness(ctx, tampered)
    assert not verify_proper_mono_witness(finite_ctx, report.witness)


def test_ring_level_transformations_report_their_flags():
    ctx = CoarseningContext(PSI_TABLE["Z2_to_0"])
    r = group_algebra(F2, Z2)
    s = coarsen(ctx, r)

    inc = ring_copy_inclusion(ctx, r)
    assert inc.is_ring_morphism and inc.is_injective and not inc.is_surjective

    proj = ring_copy_projection(ctx, r)
    assert proj.preserves_unit and not proj.preserves_products
    assert proj.is_surjective

    cod = ring_fiber_codiagonal(ctx, s)
    assert cod.is_ring_morphism and cod.is_surjective

    diag = ring_fiber_diagonal(ctx, s)
    assert not diag.preserves_unit and not diag.is_ring_morphism
    assert diag.is_injective

    ring_maps = canonical_transformations(ctx, r, primed=False)
    assert ring_maps["copy_inclusion"].is_ring_morphism
    assert not ring_maps["fiber_diagonal"].preserves_unit


def test_infinite_kernel_blocks_the_finite_only_directions():
    ctx = CoarseningContext(PSI_TABLE["Z_to_0"])
    ring = base_field_ring(F2, Z)
    m = ring_as_module(ring)
    n = coarsen(ctx, m)
    assert copy_inclusion(ctx, m).is_zero is False
    with pytest.raises(InfiniteKernelError):
        copy_inclusion_explicit(ctx, m)
    with pytest.raises(InfiniteKernelError):
        copy_projection(ctx, m)
    with pytest.raises(InfiniteKernelError):
        fiber_diagonal(ctx, n, ring)
    with pytest.raises(InfiniteKernelError):
        canonical_transformations(ctx, m)


def test_zero_module_refines_and_coarsens_trivially():
    ctx = CoarseningContext(PSI_TABLE["Z_to_0"])
    z = zero_module(base_field_ring(F2, ZERO))
    lazy = refine(ctx, z)
    assert lazy.is_finite_dimensional
    assert lazy.default_window() == ()
    mat = refine_module(ctx, z, base_field_ring(F2, Z))
    assert mat.module.is_zero


def test_action_morphism_helper_matches_module_action():
    inst = corpus_instances()[0]
    m = inst.module
    for i in range(m.ring.dim):
        f = action_morphism(m, i)
        for a in range(m.dim):
            assert f.apply(m.basis_vector(a)) == m.act_basis(i, m.basis_vector(a))
