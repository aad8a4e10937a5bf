"""Shared fixtures: the six regrading maps, a seeded instance corpus, and
the exhaustive micro-corpus of small modules used by the injectivity oracle.
"""

from __future__ import annotations

import itertools
import random
from dataclasses import dataclass

import pytest

from regrade import (
    F2,
    F3,
    CoarseningContext,
    FgAbGroup,
    GradedModule,
    GradedRing,
    GroupHom,
    base_field_ring,
    free_module,
    group_algebra,
    identity_hom,
    quotient_by_submodule,
    ring_as_module,
    submodule_generated_by,
    truncated_polynomial_ring,
    validate,
)
from regrade.core import BasisElement

Z = FgAbGroup(1, ())
Z2 = FgAbGroup(0, (2,))
Z4 = FgAbGroup(0, (4,))
ZxZ2 = FgAbGroup(1, (2,))
ZERO = FgAbGroup(0, ())

PSI_TABLE: dict[str, GroupHom] = {
    "id": identity_hom(Z),
    "Z_to_Z2": GroupHom(Z, Z2, [[1]]),
    "Z2_to_0": GroupHom(Z2, ZERO, []),
    "Z4_to_Z2": GroupHom(Z4, Z2, [[1]]),
    "ZxZ2_to_Z": GroupHom(ZxZ2, Z, [[1, 0]]),
    "Z_to_0": GroupHom(Z, ZERO, []),
}


@dataclass(frozen=True)
class CorpusInstance:
    name: str
    psi_name: str
    psi: GroupHom
    ring: GradedRing
    module: GradedModule

    @property
    def ctx(self) -> CoarseningContext:
        return CoarseningContext(self.psi)


def _random_rings(rng: random.Random, field, group: FgAbGroup) -> list[GradedRing]:
    rings = [base_field_ring(field, group)]
    if group.is_finite and group.order() <= 4:
        rings.append(group_algebra(field, group))
    gens = [group.generator(i) for i in range(group.ngens)]
    if gens:
        t_deg = rng.choice(gens)
        rings.append(truncated_polynomial_ring(field, group, t_deg, rng.choice((2, 3))))
    return rings


def _random_degree(rng: random.Random, group: FgAbGroup):
    coords = []
    for i in range(group.ngens):
        if i < group.rank:
            coords.append(rng.randint(-2, 2))
        else:
            coords.append(rng.randrange(group.invariants[i - group.rank]))
    return group.element(coords)


def _random_module(rng: random.Random, ring: GradedRing) -> GradedModule | None:
    group = ring.group
    if ring.dim > 6:
        return None
    n_gens = rng.choice((1, 1, 2))
    if n_gens * ring.dim > 6:
        n_gens = 1
    shifts = [_random_degree(rng, group) for _ in range(n_gens)]
    m = free_module(ring, shifts)
    if rng.random() < 0.5 and m.dim > 1:
        idx = rng.randrange(m.dim)
        sub, incl = submodule_generated_by(m, [m.basis_vector(idx)])
        if 0 < sub.dim < m.dim:
            vectors = [incl.apply_to_basis(a) for a in range(sub.dim)]
            m, _ = quotient_by_submodule(m, vectors)
    if m.dim == 0 or m.dim > 6 or len(m.support()) > 4:
        return None
    return m


def build_corpus(seed: int = 20260817, per_psi: int = 9) -> list[CorpusInstance]:
    rng = random.Random(seed)
    instances: list[CorpusInstance] = []
    for psi_name, psi in PSI_TABLE.items():
        made = 0
        attempts = 0
        while made < per_psi and attempts < 200:
            attempts += 1
            field = F2 if made % 2 == 0 else F3
            ring = rng.choice(_random_rings(rng, field, psi.domain))
            m = _random_module(rng, ring)
            if m is None:
                continue
            assert validate(m) == [], f"corpus generated an invalid module over {ring}"
            instances.append(
                CorpusInstance(f"{psi_name}#{made}", psi_name, psi, ring, m)
            )
            made += 1
        assert made == per_psi, f"could not fill the corpus for {psi_name}"
    return instances


_CORPUS: list[CorpusInstance] | None = None


def corpus_instances() -> list[CorpusInstance]:
    global _CORPUS
    if _CORPUS is None:
        _CORPUS = build_corpus()
    return _CORPUS


@pytest.fixture(scope="session")
def corpus() -> list[CorpusInstance]:
    return corpus_instances()


@pytest.fixture(scope="session")
def finite_kernel_corpus(corpus) -> list[CorpusInstance]:
    return [inst for inst in corpus if inst.ctx.kernel_is_finite]


# ---------------------------------------------------------------------------
# exhaustive micro-corpus for the injectivity oracle
# ---------------------------------------------------------------------------


def _f2_matrices(rows: int, cols: int):
    cells = rows * cols
    for bits in itertools.product((F2.zero, F2.one), repeat=cells):
        yield [list(bits[r * cols : (r + 1) * cols]) for r in range(rows)]


def _graded_module_from_action(ring: GradedRing, degrees, t_matrix) -> GradedModule:
    """Module over a 2-dimensional ring {1, t} with the given t-action matrix."""
    n = len(degrees)
    field = ring.field
    basis = tuple(BasisElement(f"m{a}", d) for a, d in zip(range(n), degrees))
    identity_action = tuple(
        tuple(field.one if b == a else field.zero for b in range(n)) for a in range(n)
    )
    t_action = tuple(
        tuple(t_matrix[b][a] for b in range(n)) for a in range(n)
    )
    return GradedModule(ring, basis, (identity_action, t_action))


def micro_corpus_truncated() -> tuple[GradedRing, list[GradedModule]]:
    """Every Z/2-graded module of dim <= 3 over F2[t]/(t^2), by raw action tables.

    The t-action maps degree d to degree d+1, so it is a pair of blocks
    V0 -> V1 and V1 -> V0 whose composites vanish.
    """
    ring = truncated_polynomial_ring(F2, Z2, Z2.element((1,)), 2)
    modules: list[GradedModule] = []
    for k0, k1 in itertools.product(range(4), repeat=2):
        if not 1 <= k0 + k1 <= 3:
            continue
        degrees = [Z2.element((0,))] * k0 + [Z2.element((1,))] * k1
        n = k0 + k1
        for b_block in _f2_matrices(k1, k0):
            for c_block in _f2_matrices(k0, k1):
                t_matrix = [[F2.zero] * n for _ in range(n)]
                for r in range(k1):
                    for c in range(k0):
                        t_matrix[k0 + r][c] = b_block[r][c]
                for r in range(k0):
                    for c in range(k1):
                        t_matrix[r][k0 + c] = c_block[r][c]
                candidate = _graded_module_from_action(ring, degrees, t_matrix)
                if validate(candidate) == []:
                    modules.append(candidate)
    return ring, modules


def micro_corpus_group_algebra() -> tuple[GradedRing, list[GradedModule]]:
    """Every Z/2-graded module of dim <= 3 over F2[Z/2], by raw action tables."""
    ring = group_algebra(F2, Z2)
    modules: list[GradedModule] = []
    for k0, k1 in itertools.product(range(4), repeat=2):
        if not 1 <= k0 + k1 <= 3:
            continue
        degrees = [Z2.element((0,))] * k0 + [Z2.element((1,))] * k1
        n = k0 + k1
        for b_block in _f2_matrices(k1, k0):
            for c_block in _f2_matrices(k0, k1):
                t_matrix = [[F2.zero] * n for _ in range(n)]
                for r in range(k1):
                    for c in range(k0):
                        t_matrix[k0 + r][c] = b_block[r][c]
                for r in range(k0):
                    for c in range(k1):
                        t_matrix[r][k0 + c] = c_block[r][c]
                candidate = _graded_module_from_action(ring, degrees, t_matrix)
                if validate(candidate) == []:
                    modules.append(candidate)
    return ring, modules


@pytest.fixture(scope="session")
def truncated_micro_corpus():
    return micro_corpus_truncated()


@pytest.fixture(scope="session")
def group_algebra_micro_corpus():
    return micro_corpus_group_algebra()
