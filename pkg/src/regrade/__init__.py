"""Graded rings and modules over finitely generated abelian groups, with
regrading along group surjections and the reports built on top of it.

The shift convention everywhere: M(g) has M(g)_d = M_{g + d}, so the
generator of R(-g) sits in degree g.
"""

from __future__ import annotations

from .abgroup import (
    EpimorphismAnalysis,
    FgAbGroup,
    GroupElement,
    GroupHom,
    analyze_epimorphism,
    fiber,
    identity_hom,
    quotient_map,
    subgroup,
    zero_hom,
)
from .coarsen import (
    CoarseningContext,
    KernelShiftFamily,
    LazyRefinedModule,
    ProperMonoWitness,
    RefinedHom,
    adjoint_transpose_backward,
    adjoint_transpose_forward,
    canonical_transformations,
    coarsen,
    copy_inclusion,
    copy_inclusion_explicit,
    copy_projection,
    copy_projection_after,
    fiber_codiagonal,
    fiber_diagonal,
    left_adjoint_transpose_backward,
    left_adjoint_transpose_forward,
    product_coarsening_comparison,
    refine,
    refine_module,
    refine_morphism,
    refine_ring,
    refined_hom_space,
    refine_then_coarsen_decomposition,
    ring_copy_inclusion,
    ring_copy_projection,
    ring_fiber_codiagonal,
    ring_fiber_diagonal,
    verify_proper_mono_witness,
)
from .core import (
    BasisElement,
    GradedModule,
    GradedMorphism,
    GradedRing,
    base_field_ring,
    cokernel_of,
    direct_sum,
    free_module,
    group_algebra,
    hom_dimension,
    hom_space,
    identity_morphism,
    image_of,
    kernel_of,
    quotient_by_submodule,
    ring_as_module,
    shift_module,
    submodule_from_vectors,
    submodule_generated_by,
    truncated_polynomial_ring,
    validate,
    zero_module,
)
from .errors import (
    GuardExceededError,
    InfiniteKernelError,
    InfiniteSupportError,
    RegradeError,
    ScenarioParseError,
    SoundnessError,
    UnsupportedFieldError,
)
from .fields import F2, F3, QQ, PrimeField, RationalField, field_from_name
from .homfun import (
    ComponentSupportReport,
    ConstantRule,
    DichotomyPrediction,
    FiniteDegrees,
    FinitelyManyExceptions,
    GradedHomModule,
    HomChainReport,
    HPsiReport,
    IntensionalFreeModule,
    LambdaReport,
    NotSmallWitness,
    SmallnessReport,
    SmallnessTransferReport,
    SubgroupIndexed,
    SupportCertificate,
    UniformRuleMorphism,
    component_decomposition,
    graded_hom,
    lambda_morphism,
    h_psi,
    h_psi_prediction,
    hom_chain_demo,
    intensional_free_module,
    smallness_coarsening_transfer,
    smallness_report,
    verify_not_small_witness,
)
from .injective import (
    BaerReport,
    BaerWitness,
    CogeneratorReport,
    InjectivityTransferReport,
    enumerate_graded_ideals,
    injectivity_transfer_check,
    is_cogenerator,
    is_graded_injective,
    shifted_simples,
    verify_baer_witness,
)
from .laurent import (
    CertificateReport,
    LaurentCertificate,
    LaurentPoly,
    annihilator_in_window,
    certificate_from_json,
    is_unit,
    laurent,
    laurent_counterexample,
    laurent_one,
    laurent_zero,
    solve_product_in_window,
    unit_inverse,
    verify_certificate,
)
from .scenario import Report, emit_report, parse_scenario, run_scenario

__version__ = "0.1.0"
