"""Finitely generated abelian groups, homomorphisms, kernels and fibers.

Groups are kept in invariant-factor normal form: Z^rank + Z/d_1 + ... + Z/d_k
with 2 <= d_1 | d_2 | ... | d_k.  Elements are integer coordinate vectors of
length rank + k; torsion coordinate i is always reduced into [0, d_i).

The workhorse is an integer Smith normal form with full transform tracking
(U, S, V and their inverses with U*A*V = S), from which kernels, cokernels,
subgroup presentations and quotient maps are all derived.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass, field

from .errors import GroupMismatchError, InfiniteKernelError, NotEpimorphismError

IntMatrix = tuple[tuple[int, ...], ...]


# ---------------------------------------------------------------------------
# integer matrix utilities
# ---------------------------------------------------------------------------


def _int_identity(n: int) -> list[list[int]]:
    return [[1 if i == j else 0 for j in range(n)] for i in range(n)]


def int_mat_vec(a, v) -> list[int]:
    return [sum(c * x for c, x in zip(row, v)) for row in a]


def int_matmul(a, b) -> list[list[int]]:
    if not a:
        return []
    bcols = len(b[0]) if b else 0
    return [
        [sum(row[k] * b[k][j] for k in range(len(row))) for j in range(bcols)]
        for row in a
    ]


def det_int(a) -> int:
    """Exact determinant of a square integer matrix (fraction-free Bareiss)."""
    n = len(a)
    if n == 0:
        return 1
    m = [list(r) for r in a]
    sign = 1
    prev = 1
    for k in range(n - 1):
        if m[k][k] == 0:
            swap = next((i for i in range(k + 1, n) if m[i][k] != 0), None)
            if swap is None:
                return 0
            m[k], m[swap] = m[swap], m[k]
            sign = -sign
        for i in range(k + 1, n):
            for j in range(k + 1, n):
                m[i][j] = (m[i][j] * m[k][k] - m[i][k] * m[k][j]) // prev
        prev = m[k][k]
    return sign * m[n - 1][n - 1]


@dataclass(frozen=True)
class SmithNormalForm:
    """U * A * V = S with U, V unimodular and S diagonal, d_1 | d_2 | ...

    u_inv and v_inv are the exact integer inverses of u and v, tracked during
    the reduction so no rational arithmetic is ever needed.
    """

    u: IntMatrix
    s: IntMatrix
    v: IntMatrix
    u_inv: IntMatrix
    v_inv: IntMatrix

    def diagonal(self) -> list[int]:
        return [self.s[i][i] for i in range(min(len(self.s), len(self.s[0]) if self.s else 0))]


class _SnfWorker:
    def __init__(self, a, nrows: int, ncols: int):
        self.s = [list(r) for r in a]
        self.nr = nrows
        self.nc = ncols
        self.u = _int_identity(nrows)
        self.uinv = _int_identity(nrows)
        self.v = _int_identity(ncols)
        self.vinv = _int_identity(ncols)

    def swap_rows(self, i: int, j: int) -> None:
        self.s[i], self.s[j] = self.s[j], self.s[i]
        self.u[i], self.u[j] = self.u[j], self.u[i]
        for row in self.uinv:
            row[i], row[j] = row[j], row[i]

    def swap_cols(self, i: int, j: int) -> None:
        for row in self.s:
            row[i], row[j] = row[j], row[i]
        for row in self.v:
            row[i], row[j] = row[j], row[i]
        self.vinv[i], self.vinv[j] = self.vinv[j], self.vinv[i]

    def add_row(self, i: int, j: int, q: int) -> None:
        # row_i += q * row_j;  Uinv gets the inverse column operation.
        self.s[i] = [x + q * y for x, y in zip(self.s[i], self.s[j])]
        self.u[i] = [x + q * y for x, y in zip(self.u[i], self.u[j])]
        for row in self.uinv:
            row[j] -= q * row[i]

    def add_col(self, i: int, j: int, q: int) -> None:
        # col_i += q * col_j
        for row in self.s:
            row[i] += q * row[j]
        for row in self.v:
            row[i] += q * row[j]
        self.vinv[j] = [x - q * y for x, y in zip(self.vinv[j], self.vinv[i])]

    def negate_row(self, i: int) -> None:
        self.s[i] = [-x for x in self.s[i]]
        self.u[i] = [-x for x in self.u[i]]
        for row in self.uinv:
            row[i] = -row[i]

    def _find_pivot(self, t: int):
        best = None
        for i in range(t, self.nr):
            for j in range(t, self.nc):
                x = self.s[i][j]
                if x != 0 and (best is None or abs(x) < abs(self.s[best[0]][best[1]])):
                    best = (i, j)
        return best

    def _clear(self, t: int) -> None:
        while True:
            dirty = False
            for i in range(t + 1, self.nr):
                if self.s[i][t] != 0:
                    q = self.s[i][t] // self.s[t][t]
                    self.add_row(i, t, -q)
                    if self.s[i][t] != 0:
                        self.swap_rows(i, t)
                        dirty = True
            for j in range(t + 1, self.nc):
                if self.s[t][j] != 0:
                    q = self.s[t][j] // self.s[t][t]
                    self.add_col(j, t, -q)
                    if self.s[t][j] != 0:
                        self.swap_cols(j, t)
                        dirty = True
            if dirty:
                continue
            if all(self.s[i][t] == 0 for i in range(t + 1, self.nr)) and all(
                self.s[t][j] == 0 for j in range(t + 1, self.nc)
            ):
                return

    def run(self) -> None:
        t = 0
        while t < min(self.nr, self.nc):
            piv = self._find_pivot(t)
            if piv is None:
                break
            i, j = piv
            if i != t:
                self.swap_rows(i, t)
            if j != t:
                self.swap_cols(j, t)
            self._clear(t)
            # the pivot must divide every remaining entry; if not, fold the
            # offending row into row t and clear again
            offender = None
            for i in range(t + 1, self.nr):
                if any(self.s[i][j] % self.s[t][t] != 0 for j in range(t + 1, self.nc)):
                    offender = i
                    break
            if offender is not None:
                self.add_row(t, offender, 1)
                continue
            t += 1
        for i in range(min(self.nr, self.nc)):
            if self.s[i][i] < 0:
                self.negate_row(i)


def smith_normal_form(a, ncols: int | None = None) -> SmithNormalForm:
    """Smith normal form with transforms: returns (U, S, V) with U*A*V = S.

    ncols must be given when a has no rows.
    """
    nrows = len(a)
    if ncols is None:
        if nrows == 0:
            raise ValueError("ncols is required for a matrix with no rows")
        ncols = len(a[0])
    if any(len(r) != ncols for r in a):
        raise ValueError("ragged matrix")
    w = _SnfWorker(a, nrows, ncols)
    w.run()
    freeze = lambda m: tuple(tuple(r) for r in m)
    return SmithNormalForm(freeze(w.u), freeze(w.s), freeze(w.v), freeze(w.uinv), freeze(w.vinv))


def _snf_diag_at(snf: SmithNormalForm, i: int, nrows: int, ncols: int) -> int:
    return snf.s[i][i] if i < min(nrows, ncols) else 0


def solve_integer(a, b, ncols: int) -> list[int] | None:
    """One integer solution of A x = b, or None if none exists."""
    nrows = len(a)
    snf = smith_normal_form(a, ncols)
    ub = int_mat_vec(snf.u, b)
    y = [0] * ncols
    for i in range(nrows):
        si = _snf_diag_at(snf, i, nrows, ncols)
        if si != 0:
            if ub[i] % si != 0:
                return None
            y[i] = ub[i] // si
        elif ub[i] != 0:
            return None
    return int_mat_vec(snf.v, y)


def integer_kernel_basis(a, ncols: int) -> list[list[int]]:
    """Basis of the integer kernel lattice {x : A x = 0} (full, saturated)."""
    nrows = len(a)
    snf = smith_normal_form(a, ncols)
    basis = []
    for j in range(ncols):
        if _snf_diag_at(snf, j, nrows, ncols) == 0:
            basis.append([snf.v[i][j] for i in range(ncols)])
    return basis


def lattice_column_basis(cols, nrows: int) -> list[list[int]]:
    """Independent columns spanning the same lattice as the given columns."""
    if not cols:
        return []
    a = [[col[i] for col in cols] for i in range(nrows)]
    snf = smith_normal_form(a, len(cols))
    basis = []
    for j in range(min(nrows, len(cols))):
        sj = snf.s[j][j]
        if sj != 0:
            basis.append([snf.u_inv[i][j] * sj for i in range(nrows)])
    return basis


# ---------------------------------------------------------------------------
# groups, elements, homomorphisms
# ---------------------------------------------------------------------------


@dataclass(frozen=True)
class FgAbGroup:
    """Z^rank + Z/d_1 + ... + Z/d_k in invariant-factor normal form."""

    rank: int
    invariants: tuple[int, ...] = ()

    def __post_init__(self) -> None:
        if self.rank < 0:
            raise ValueError("rank must be nonnegative")
        object.__setattr__(self, "invariants", tuple(int(d) for d in self.invariants))
        for d in self.invariants:
            if d < 2:
                raise ValueError(f"invariant factor {d} must be at least 2")
        for a, b in zip(self.invariants, self.invariants[1:]):
            if b % a != 0:
                raise ValueError(f"invariant factors must form a divisor chain, got {a} before {b}")

    @property
    def ngens(self) -> int:
        return self.rank + len(self.invariants)

    @property
    def is_trivial(self) -> bool:
        return self.ngens == 0

    @property
    def is_finite(self) -> bool:
        return self.rank == 0

    def order(self) -> int | None:
        """Number of elements, or None when infinite."""
        if self.rank > 0:
            return None
        n = 1
        for d in self.invariants:
            n *= d
        return n

    def element(self, coords) -> "GroupElement":
        return GroupElement(self, tuple(int(c) for c in coords))

    def zero(self) -> "GroupElement":
        return self.element((0,) * self.ngens)

    def generator(self, i: int) -> "GroupElement":
        coords = [0] * self.ngens
        coords[i] = 1
        return self.element(coords)

    def elements(self):
        """All elements in lexicographic coordinate order (finite groups only)."""
        if not self.is_finite:
            raise InfiniteKernelError(f"{self} is infinite; cannot enumerate")
        for coords in itertools.product(*(range(d) for d in self.invariants)):
            yield self.element(coords)

    def relation_columns(self) -> list[list[int]]:
        """Columns generating the relation lattice of the presentation Z^n -> G."""
        n = self.ngens
        cols = []
        for i, d in enumerate(self.invariants):
            col = [0] * n
            col[self.rank + i] = d
            cols.append(col)
        return cols

    def __str__(self) -> str:
        parts = []
        if self.rank == 1:
            parts.append("Z")
        elif self.rank > 1:
            parts.append(f"Z^{self.rank}")
        parts.extend(f"Z/{d}" for d in self.invariants)
        return " + ".join(parts) if parts else "0"


@dataclass(frozen=True)
class GroupElement:
    group: FgAbGroup
    coords: tuple[int, ...]

    def __post_init__(self) -> None:
        if len(self.coords) != self.group.ngens:
            raise ValueError(
                f"expected {self.group.ngens} coordinates for {self.group}, got {len(self.coords)}"
            )
        reduced = list(self.coords)
        for i, d in enumerate(self.group.invariants):
            reduced[self.group.rank + i] %= d
        object.__setattr__(self, "coords", tuple(reduced))

    def _check(self, other: "GroupElement") -> None:
        if self.group != other.group:
            raise GroupMismatchError(f"elements of {self.group} and {other.group} cannot be combined")

    def __add__(self, other: "GroupElement") -> "GroupElement":
        self._check(other)
        return self.group.element(tuple(a + b for a, b in zip(self.coords, other.coords)))

    def __neg__(self) -> "GroupElement":
        return self.group.element(tuple(-a for a in self.coords))

    def __sub__(self, other: "GroupElement") -> "GroupElement":
        return self + (-other)

    def scale(self, n: int) -> "GroupElement":
        return self.group.element(tuple(n * a for a in self.coords))

    @property
    def is_zero(self) -> bool:
        return all(c == 0 for c in self.coords)

    def __str__(self) -> str:
        return "(" + ",".join(str(c) for c in self.coords) + ")"


@dataclass(frozen=True)
class GroupHom:
    """Homomorphism given by an integer matrix whose columns are generator images.

    Shape is codomain.ngens x domain.ngens.  Construction rejects matrices
    that do not define a homomorphism (a torsion generator of order d must be
    sent to an element killed by d).
    """

    domain: FgAbGroup
    codomain: FgAbGroup
    matrix: IntMatrix

    def __post_init__(self) -> None:
        mat = tuple(tuple(int(x) for x in row) for row in self.matrix)
        object.__setattr__(self, "matrix", mat)
        if len(mat) != self.codomain.ngens or any(len(r) != self.domain.ngens for r in mat):
            raise ValueError(
                f"matrix must be {self.codomain.ngens}x{self.domain.ngens} for "
                f"{self.domain} -> {self.codomain}"
            )
        for j in range(len(self.domain.invariants)):
            col = self.domain.rank + j
            d = self.domain.invariants[j]
            image = self.codomain.element(tuple(d * row[col] for row in mat))
            if not image.is_zero:
                raise ValueError(
                    f"column {col} does not define a homomorphism: order-{d} generator "
                    f"maps to an element not killed by {d}"
                )

    def __call__(self, x: GroupElement) -> GroupElement:
        if x.group != self.domain:
            raise GroupMismatchError(f"element of {x.group} given to a map from {self.domain}")
        return self.codomain.element(int_mat_vec(self.matrix, x.coords))

    def compose(self, other: "GroupHom") -> "GroupHom":
        """self after other."""
        if other.codomain != self.domain:
            raise GroupMismatchError("homomorphisms do not compose")
        return GroupHom(other.domain, self.codomain, int_matmul(self.matrix, other.matrix))

    @property
    def is_identity(self) -> bool:
        return self.domain == self.codomain and all(
            self.matrix[i][j] == (1 if i == j else 0)
            for i in range(self.codomain.ngens)
            for j in range(self.domain.ngens)
        )

    def __str__(self) -> str:
        return f"{self.domain} -> {self.codomain}"


def identity_hom(g: FgAbGroup) -> GroupHom:
    return GroupHom(g, g, tuple(tuple(1 if i == j else 0 for j in range(g.ngens)) for i in range(g.ngens)))


def zero_hom(domain: FgAbGroup, codomain: FgAbGroup) -> GroupHom:
    return GroupHom(domain, codomain, tuple((0,) * domain.ngens for _ in range(codomain.ngens)))


# ---------------------------------------------------------------------------
# kernels, images, quotients
# ---------------------------------------------------------------------------


@dataclass(frozen=True)
class KernelData:
    """Kernel of a homomorphism: normal form, embedding into the domain, order.

    order is the number of kernel elements, or None when the kernel is
    infinite.
    """

    group: FgAbGroup
    embedding: GroupHom
    order: int | None

    @property
    def is_finite(self) -> bool:
        return self.order is not None


@dataclass(frozen=True)
class EpimorphismAnalysis:
    hom: GroupHom
    is_epi: bool
    cokernel_rank: int
    cokernel_invariants: tuple[int, ...]
    kernel: KernelData


def _present_lattice_quotient(
    ambient: FgAbGroup, lattice_basis: list[list[int]], relation_cols: list[list[int]]
) -> tuple[FgAbGroup, GroupHom]:
    """Normal form of L/relations for a lattice L inside the presentation of ambient.

    lattice_basis: independent columns spanning L in Z^n (n = ambient.ngens);
    relation_cols: columns lying inside L (the relations to kill).  Returns the
    canonical group K and a homomorphism K -> ambient hitting exactly L's image.
    """
    n = ambient.ngens
    r = len(lattice_basis)
    basis_rows = [[lattice_basis[j][i] for j in range(r)] for i in range(n)]
    q_cols = []
    for rel in relation_cols:
        coords = solve_integer(basis_rows, rel, r)
        if coords is None:
            raise AssertionError("relation column is not inside the lattice")
        q_cols.append(coords)
    q_rows = [[col[i] for col in q_cols] for i in range(r)]
    snf = smith_normal_form(q_rows, len(q_cols)) if r else smith_normal_form([], 0)

    def diag(i: int) -> int:
        return _snf_diag_at(snf, i, r, len(q_cols))

    free_idx = [i for i in range(r) if diag(i) == 0]
    torsion_idx = [i for i in range(r) if diag(i) >= 2]
    group = FgAbGroup(len(free_idx), tuple(diag(i) for i in torsion_idx))
    image_cols = []
    for i in free_idx + torsion_idx:
        pre = [snf.u_inv[a][i] for a in range(r)]
        image_cols.append(int_mat_vec(basis_rows, pre))
    matrix = tuple(tuple(col[i] for col in image_cols) for i in range(n))
    return group, GroupHom(group, ambient, matrix)


def analyze_epimorphism(psi: GroupHom) -> EpimorphismAnalysis:
    """Surjectivity (via the cokernel) plus the kernel in normal form."""
    dom, cod = psi.domain, psi.codomain
    n, m = dom.ngens, cod.ngens
    a_g = dom.relation_columns()
    a_h = cod.relation_columns()

    coker_cols = [[psi.matrix[i][j] for i in range(m)] for j in range(n)] + a_h
    coker_rows = [[col[i] for col in coker_cols] for i in range(m)]
    snf = smith_normal_form(coker_rows, len(coker_cols)) if m else smith_normal_form([], 0)
    diag = [_snf_diag_at(snf, i, m, len(coker_cols)) for i in range(m)]
    coker_rank = sum(1 for d in diag if d == 0)
    coker_inv = tuple(d for d in diag if d >= 2)
    is_epi = coker_rank == 0 and not coker_inv

    # kernel: project ker[P | -A_H] onto the domain coordinates
    b_rows = [
        list(psi.matrix[i]) + [-col[i] for col in a_h] for i in range(m)
    ]
    kb = integer_kernel_basis(b_rows, n + len(a_h))
    proj = [v[:n] for v in kb]
    lattice = lattice_column_basis(proj, n)
    kgroup, embedding = _present_lattice_quotient(dom, lattice, a_g)
    kernel = KernelData(kgroup, embedding, kgroup.order())
    return EpimorphismAnalysis(psi, is_epi, coker_rank, coker_inv, kernel)


def subgroup(ambient: FgAbGroup, generators) -> tuple[FgAbGroup, GroupHom]:
    """Normal form of the subgroup generated by the given elements, with embedding."""
    for g in generators:
        if g.group != ambient:
            raise GroupMismatchError("generator lies in a different group")
    cols = [list(g.coords) for g in generators] + ambient.relation_columns()
    lattice = lattice_column_basis(cols, ambient.ngens)
    return _present_lattice_quotient(ambient, lattice, ambient.relation_columns())


def quotient_map(ambient: FgAbGroup, generators) -> tuple[FgAbGroup, GroupHom]:
    """Canonical projection ambient -> ambient/<generators> in normal form."""
    for g in generators:
        if g.group != ambient:
            raise GroupMismatchError("generator lies in a different group")
    n = ambient.ngens
    cols = [list(g.coords) for g in generators] + ambient.relation_columns()
    rows = [[col[i] for col in cols] for i in range(n)]
    snf = smith_normal_form(rows, len(cols)) if n else smith_normal_form([], 0)
    diag = [_snf_diag_at(snf, i, n, len(cols)) for i in range(n)]
    free_idx = [i for i in range(n) if diag[i] == 0]
    torsion_idx = [i for i in range(n) if diag[i] >= 2]
    group = FgAbGroup(len(free_idx), tuple(diag[i] for i in torsion_idx))
    matrix = tuple(tuple(snf.u[i]) for i in free_idx + torsion_idx)
    return group, GroupHom(ambient, group, matrix)


def fiber(psi: GroupHom, h: GroupElement, analysis: EpimorphismAnalysis | None = None):
    """All preimages of h under an epimorphism with finite kernel, sorted by coordinates."""
    if h.group != psi.codomain:
        raise GroupMismatchError("target element lies outside the codomain")
    if analysis is None:
        analysis = analyze_epimorphism(psi)
    if not analysis.is_epi:
        raise NotEpimorphismError(f"{psi} is not surjective")
    kernel = analysis.kernel
    if not kernel.is_finite:
        raise InfiniteKernelError(f"kernel of {psi} is infinite; fibers cannot be enumerated")
    m = psi.codomain.ngens
    a_h = psi.codomain.relation_columns()
    cols = [[psi.matrix[i][j] for i in range(m)] for j in range(psi.domain.ngens)] + a_h
    rows = [[col[i] for col in cols] for i in range(m)]
    sol = solve_integer(rows, list(h.coords), len(cols))
    if sol is None:
        raise NotEpimorphismError(f"{h} has no preimage under {psi}")
    base = psi.domain.element(sol[: psi.domain.ngens])
    out = {base + kernel.embedding(k) for k in kernel.group.elements()}
    result = tuple(sorted(out, key=lambda e: e.coords))
    assert len(result) == kernel.order, "fiber size must equal the kernel order"
    return result
