"""Functor-law checkers shared by the regrading tests and the acceptance suite.

Each checker raises AssertionError on the first violated law, so they can be
called directly from plain test functions.
"""

from regrade import (
    GradedMorphism,
    coarsen,
    cokernel_of,
    identity_morphism,
    image_of,
    kernel_of,
    validate,
)


def action_morphism(m, i):
    """Multiplication by ring basis element i, as a morphism from m to itself."""
    rows = tuple(tuple(m.action[i][a][b] for a in range(m.dim)) for b in range(m.dim))
    return GradedMorphism(m, m, rows, m.ring.degree_of(i))


def component_dimensions(m):
    """Map degree coordinates to the dimension of the component there."""
    out = {}
    for a in range(m.dim):
        c = m.degree_of(a).coords
        out[c] = out.get(c, 0) + 1
    return out


def check_identity_law(ctx, m):
    co = coarsen(ctx, m)
    assert coarsen(ctx, identity_morphism(m)) == identity_morphism(co)


def check_composition_law(ctx, m):
    for i in range(m.ring.dim):
        u = action_morphism(m, i)
        for j in range(m.ring.dim):
            v = action_morphism(m, j)
            left = coarsen(ctx, v.compose(u))
            right = coarsen(ctx, v).compose(coarsen(ctx, u))
            assert left == right


def check_dimension_law(ctx, m):
    co = coarsen(ctx, m)
    assert co.dim == m.dim
    folded = {}
    for coords, d in component_dimensions(m).items():
        h = ctx.psi(m.group.element(coords))
        folded[h.coords] = folded.get(h.coords, 0) + d
    assert folded == component_dimensions(co)


def check_exactness_law(ctx, m):
    """Kernels, images and cokernels commute with regrading dimensionally."""
    for i in range(m.ring.dim):
        f = action_morphism(m, i)
        ker, incl = kernel_of(f)
        img, _ = image_of(f)
        coker, proj = cokernel_of(f)
        cof = coarsen(ctx, f)
        assert cof.rank == f.rank
        assert kernel_of(cof)[0].dim == ker.dim
        assert image_of(cof)[0].dim == img.dim
        assert cokernel_of(cof)[0].dim == coker.dim
        assert cof.compose(coarsen(ctx, incl)).is_zero
        assert coarsen(ctx, proj).compose(cof).is_zero


def run_functor_law_suite(instances):
    """Run all four law families over the instances; returns the count checked."""
    checked = 0
    for inst in instances:
        ctx = inst.ctx
        m = inst.module
        assert validate(m) == []
        check_identity_law(ctx, m)
        check_composition_law(ctx, m)
        check_dimension_law(ctx, m)
        check_exactness_law(ctx, m)
        assert validate(coarsen(ctx, m)) == []
        checked += 1
    return checked
