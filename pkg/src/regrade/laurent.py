"""Laurent polynomials and the graded-versus-ungraded self-injectivity gap.

The ring of Laurent polynomials K[t, 1/t] over a field K, graded by the
integers with t in degree 1, separates graded injectivity from plain
injectivity.  Every homogeneous element is a monomial c*t^n, and every
nonzero monomial is invertible, so the only graded ideals are 0 and the
whole ring; the graded Baer test then passes vacuously and the ring is
graded-injective over itself.  After forgetting the grading the element
x = 1 + t is no longer invertible, and the ideal it generates carries a
morphism back to the ring (x maps to 1) that cannot extend: an extension
f would satisfy 1 = f(x) = x * f(1), exhibiting an inverse of x.

This module keeps Laurent polynomials as sparse exponent-to-coefficient
maps rather than forcing them through the finite-dimensional graded ring
machinery, which cannot hold an infinite-dimensional object.  The
counterexample is packaged as a certificate of small mechanically
checkable steps plus the two one-line arguments quoted above, and
`verify_certificate` replays every mechanical step from scratch.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Mapping, Sequence

from .errors import SoundnessError, UnsupportedFieldError
from .fields import ExactField, PrimeField, RationalField, field_from_name
from .linalg import nullspace, solve

Scalar = object


def _require_exact_field(field: object) -> ExactField:
    if isinstance(field, (PrimeField, RationalField)):
        return field
    raise UnsupportedFieldError(
        f"Laurent counterexample needs a prime field or the rationals, got {field!r}"
    )


@dataclass(frozen=True)
class LaurentPoly:
    """Sparse Laurent polynomial: sorted (exponent, nonzero coefficient) pairs."""

    field: ExactField
    terms: tuple[tuple[int, Scalar], ...]

    def __post_init__(self) -> None:
        exps = [e for e, _ in self.terms]
        if exps != sorted(exps) or len(set(exps)) != len(exps):
            raise ValueError("terms must be sorted by exponent without repeats")
        for _, c in self.terms:
            if self.field.is_zero(c):
                raise ValueError("terms must have nonzero coefficients")

    @property
    def is_zero(self) -> bool:
        return not self.terms

    @property
    def is_monomial(self) -> bool:
        return len(self.terms) == 1

    def coefficient(self, exponent: int) -> Scalar:
        for e, c in self.terms:
            if e == exponent:
                return c
        return self.field.zero

    def support(self) -> tuple[int, ...]:
        return tuple(e for e, _ in self.terms)

    def __add__(self, other: "LaurentPoly") -> "LaurentPoly":
        acc: dict[int, Scalar] = dict(self.terms)
        for e, c in other.terms:
            acc[e] = self.field.add(acc.get(e, self.field.zero), c)
        return laurent(self.field, acc)

    def __mul__(self, other: "LaurentPoly") -> "LaurentPoly":
        acc: dict[int, Scalar] = {}
        for e1, c1 in self.terms:
            for e2, c2 in other.terms:
                e = e1 + e2
                acc[e] = self.field.add(acc.get(e, self.field.zero), self.field.mul(c1, c2))
        return laurent(self.field, acc)

    def scale(self, c: Scalar) -> "LaurentPoly":
        c = self.field.coerce(c)
        return laurent(self.field, {e: self.field.mul(c, v) for e, v in self.terms})

    def __str__(self) -> str:
        if not self.terms:
            return "0"
        parts = []
        for e, c in self.terms:
            if e == 0:
                parts.append(f"{c}")
            elif e == 1:
                parts.append("t" if c == self.field.one else f"{c}*t")
            else:
                parts.append(f"t^{e}" if c == self.field.one else f"{c}*t^{e}")
        return " + ".join(parts)


def laurent(field: ExactField, coeffs: Mapping[int, object]) -> LaurentPoly:
    """Build a Laurent polynomial from an exponent-to-coefficient mapping."""
    field = _require_exact_field(field)
    cleaned: list[tuple[int, Scalar]] = []
    for e in sorted(coeffs):
        c = field.coerce(coeffs[e])
        if not field.is_zero(c):
            cleaned.append((int(e), c))
    return LaurentPoly(field, tuple(cleaned))


def laurent_zero(field: ExactField) -> LaurentPoly:
    return laurent(field, {})


def laurent_one(field: ExactField) -> LaurentPoly:
    return laurent(field, {0: 1})


def is_unit(p: LaurentPoly) -> bool:
    """Units of K[t, 1/t] are exactly the nonzero monomials c*t^n."""
    return p.is_monomial


def unit_inverse(p: LaurentPoly) -> LaurentPoly:
    """Invert a nonzero monomial; raises ValueError on non-units."""
    if not is_unit(p):
        raise ValueError(f"{p} is not a unit")
    (e, c), = p.terms
    return laurent(p.field, {-e: p.field.inv(c)})


def solve_product_in_window(
    x: LaurentPoly, rhs: LaurentPoly, window: int
) -> LaurentPoly | None:
    """Find y with support in [-window, window] and x*y = rhs, if one exists.

    The product constraint is linear in the coefficients of y, one equation
    per exponent that x*y could touch, so this is a finite exact solve.
    """
    field = x.field
    if x.is_zero:
        return laurent_zero(field) if rhs.is_zero else None
    unknowns = list(range(-window, window + 1))
    col_of = {e: i for i, e in enumerate(unknowns)}
    x_min = x.terms[0][0]
    x_max = x.terms[-1][0]
    out_exps = sorted(
        set(range(x_min - window, x_max + window + 1)) | set(rhs.support())
    )
    rows: list[list[Scalar]] = []
    b: list[Scalar] = []
    for d in out_exps:
        row = [field.zero] * len(unknowns)
        for e, c in x.terms:
            src = d - e
            if src in col_of:
                row[col_of[src]] = field.add(row[col_of[src]], c)
        rows.append(row)
        b.append(rhs.coefficient(d))
    sol = solve(field, rows, b, len(unknowns))
    if sol is None:
        return None
    return laurent(field, {e: sol[i] for i, e in enumerate(unknowns)})


def annihilator_in_window(x: LaurentPoly, window: int) -> LaurentPoly | None:
    """Find a nonzero y with support in [-window, window] and x*y = 0."""
    field = x.field
    if x.is_zero:
        return laurent_one(field)
    unknowns = list(range(-window, window + 1))
    col_of = {e: i for i, e in enumerate(unknowns)}
    x_min = x.terms[0][0]
    x_max = x.terms[-1][0]
    rows: list[list[Scalar]] = []
    for d in range(x_min - window, x_max + window + 1):
        row = [field.zero] * len(unknowns)
        for e, c in x.terms:
            src = d - e
            if src in col_of:
                row[col_of[src]] = field.add(row[col_of[src]], c)
        rows.append(row)
    basis = nullspace(field, rows, len(unknowns))
    if not basis:
        return None
    vec = basis[0]
    return laurent(field, {e: vec[i] for i, e in enumerate(unknowns)})


def _poly_to_json(p: LaurentPoly) -> tuple[tuple[object, ...], ...]:
    return tuple((e, p.field.to_json(c)) for e, c in p.terms)


def _poly_from_json(field: ExactField, data: Sequence[Sequence[object]]) -> LaurentPoly:
    return laurent(field, {int(e): field.from_json(c) for e, c in data})


@dataclass(frozen=True)
class LaurentCertificate:
    """Re-checkable record that K[t, 1/t] is graded-injective over itself
    while the same ring with its grading forgotten fails the Baer test.

    Mechanical fields hold sample data the verifier replays; the two
    `*_argument` strings carry the finite-support arguments that lift the
    window checks to all of K[t, 1/t].
    """

    field_name: str
    # step (i): units are exactly the nonzero monomials
    unit_samples: tuple[tuple[tuple[tuple[object, ...], ...], bool], ...]
    # step (ii): nonzero graded ideals contain a unit, hence equal the ring
    homogeneous_samples: tuple[tuple[tuple[object, ...], ...], ...]
    graded_ideal_statement: str
    # step (iii): x = 1 + t is a non-unit non-zerodivisor
    witness: tuple[tuple[object, ...], ...]
    windows: tuple[int, ...]
    inverse_argument: str
    zerodivisor_argument: str
    # step (iv): on <x> -> R sending x to 1, extension forces x*y = 1
    extension_statement: str

    def to_json(self) -> dict:
        return {
            "kind": "laurent-certificate",
            "version": 1,
            "field": self.field_name,
            "unit_samples": [[[list(term) for term in p], ok] for p, ok in self.unit_samples],
            "homogeneous_samples": [[list(term) for term in p] for p in self.homogeneous_samples],
            "graded_ideal_statement": self.graded_ideal_statement,
            "witness": [list(term) for term in self.witness],
            "windows": list(self.windows),
            "inverse_argument": self.inverse_argument,
            "zerodivisor_argument": self.zerodivisor_argument,
            "extension_statement": self.extension_statement,
        }


def _terms_from_json(data: Sequence[Sequence[object]]) -> tuple[tuple[object, ...], ...]:
    return tuple((int(e), c) for e, c in data)


def certificate_from_json(data: Mapping[str, object]) -> LaurentCertificate:
    if data.get("kind") != "laurent-certificate" or data.get("version") != 1:
        raise ValueError("not a version-1 laurent-certificate document")
    return LaurentCertificate(
        field_name=str(data["field"]),
        unit_samples=tuple((_terms_from_json(p), bool(ok)) for p, ok in data["unit_samples"]),
        homogeneous_samples=tuple(_terms_from_json(p) for p in data["homogeneous_samples"]),
        graded_ideal_statement=str(data["graded_ideal_statement"]),
        witness=_terms_from_json(data["witness"]),
        windows=tuple(int(w) for w in data["windows"]),
        inverse_argument=str(data["inverse_argument"]),
        zerodivisor_argument=str(data["zerodivisor_argument"]),
        extension_statement=str(data["extension_statement"]),
    )


_GRADED_IDEAL_STATEMENT = (
    "A nonzero graded ideal contains a nonzero homogeneous element, which is "
    "a monomial and hence a unit, so the ideal is the whole ring. The graded "
    "Baer test over the ideals {0, R} is vacuous and R is graded-injective "
    "over itself."
)

_INVERSE_ARGUMENT = (
    "Exponent spans add under multiplication because the extreme coefficients "
    "multiply to something nonzero over a field: span(x*y) = span(x) + span(y). "
    "With span(1 + t) = 1 any product x*y has span at least 1, never 0 = span(1), "
    "so no inverse exists in any window."
)

_ZERODIVISOR_ARGUMENT = (
    "If x*y = 0 with y nonzero, the lowest coefficient of x*y is the product "
    "of the lowest coefficients of x and y, nonzero over a field. So x has no "
    "annihilator in any window."
)

_EXTENSION_STATEMENT = (
    "x = 1 + t is not a zerodivisor, so the ideal it generates is free on x "
    "and sending x to 1 is a well-defined morphism into the ungraded ring. An "
    "extension f to the whole ring would give 1 = f(x * 1) = x * f(1), an "
    "inverse of x, which step (iii) rules out. The ungraded Baer test fails and "
    "the ring with its grading forgotten is not self-injective."
)


def laurent_counterexample(field: ExactField) -> LaurentCertificate:
    """Assemble the certificate for the given exact field.

    Raises UnsupportedFieldError away from prime fields and the rationals,
    and SoundnessError if any mechanical step fails during assembly (which
    would indicate a broken build rather than interesting mathematics).
    """
    field = _require_exact_field(field)
    one = laurent_one(field)
    t = laurent(field, {1: 1})
    x = one + t

    unit_samples = (
        (one, True),
        (t, True),
        (laurent(field, {-3: 1}), True),
        (laurent(field, {2: field.coerce(1)}), True),
        (x, False),
        (laurent(field, {-1: 1, 2: 1}), False),
        (laurent_zero(field), False),
    )
    homogeneous_samples = (t, laurent(field, {-2: 1}), laurent(field, {5: 1}))
    windows = (1, 2, 3, 4, 5)

    cert = LaurentCertificate(
        field_name=field.name,
        unit_samples=tuple((_poly_to_json(p), ok) for p, ok in unit_samples),
        homogeneous_samples=tuple(_poly_to_json(p) for p in homogeneous_samples),
        graded_ideal_statement=_GRADED_IDEAL_STATEMENT,
        witness=_poly_to_json(x),
        windows=windows,
        inverse_argument=_INVERSE_ARGUMENT,
        zerodivisor_argument=_ZERODIVISOR_ARGUMENT,
        extension_statement=_EXTENSION_STATEMENT,
    )
    report = verify_certificate(cert)
    if not report.ok:
        raise SoundnessError(f"freshly built certificate failed: {report.failures}")
    return cert


@dataclass(frozen=True)
class CertificateReport:
    """Outcome of replaying a certificate: per-step verdicts and failures."""

    units_ok: bool
    graded_ideals_ok: bool
    witness_ok: bool
    extension_ok: bool
    failures: tuple[str, ...]

    @property
    def ok(self) -> bool:
        return self.units_ok and self.graded_ideals_ok and self.witness_ok and self.extension_ok


def verify_certificate(cert: LaurentCertificate) -> CertificateReport:
    """Replay every mechanical step of a certificate from scratch."""
    field = field_from_name(cert.field_name)
    failures: list[str] = []

    # (i) the monomial unit test agrees with actual invertibility on samples
    units_ok = True
    for data, expected in cert.unit_samples:
        p = _poly_from_json(field, data)
        if is_unit(p) != expected:
            units_ok = False
            failures.append(f"unit verdict for {p} is not {expected}")
            continue
        if expected:
            q = unit_inverse(p)
            if (p * q).terms != laurent_one(field).terms:
                units_ok = False
                failures.append(f"claimed inverse of {p} fails to multiply to 1")
        else:
            # corroborate within each window: no inverse with small support
            for w in cert.windows:
                if not p.is_zero and solve_product_in_window(p, laurent_one(field), w):
                    units_ok = False
                    failures.append(f"non-unit {p} acquired an inverse in window {w}")

    # (ii) sampled homogeneous elements are units, so the ideal they generate
    # is everything; combined with the recorded statement this pins the graded
    # ideal lattice to {0, R}
    graded_ideals_ok = True
    for data in cert.homogeneous_samples:
        p = _poly_from_json(field, data)
        if not p.is_monomial:
            graded_ideals_ok = False
            failures.append(f"homogeneous sample {p} is not homogeneous")
            continue
        q = unit_inverse(p)
        if (p * q).terms != laurent_one(field).terms:
            graded_ideals_ok = False
            failures.append(f"homogeneous sample {p} is not invertible")
    if "unit" not in cert.graded_ideal_statement:
        graded_ideals_ok = False
        failures.append("graded ideal statement does not mention the unit argument")

    # (iii) the witness is a binomial, span additivity holds on samples, and
    # neither an inverse nor an annihilator exists in any recorded window
    x = _poly_from_json(field, cert.witness)
    witness_ok = True
    if is_unit(x) or x.is_zero:
        witness_ok = False
        failures.append("witness is a unit or zero")
    span_samples = [
        laurent(field, {0: 1, 1: 1}),
        laurent(field, {-1: 1, 3: 1}),
        laurent(field, {2: 1}),
    ]
    for a in span_samples:
        prod = x * a
        span_expected = (x.terms[-1][0] - x.terms[0][0]) + (a.terms[-1][0] - a.terms[0][0])
        if prod.is_zero or (prod.terms[-1][0] - prod.terms[0][0]) != span_expected:
            witness_ok = False
            failures.append(f"span additivity fails on {x} times {a}")
    for w in cert.windows:
        if solve_product_in_window(x, laurent_one(field), w) is not None:
            witness_ok = False
            failures.append(f"witness has an inverse in window {w}")
        ann = annihilator_in_window(x, w)
        if ann is not None:
            witness_ok = False
            failures.append(f"witness has annihilator {ann} in window {w}")

    # (iv) the extension argument needs exactly the inverse equation x*y = 1
    # that step (iii) refuted; check the recorded statements carry both halves
    extension_ok = witness_ok
    if "f(1)" not in cert.extension_statement:
        extension_ok = False
        failures.append("extension statement lost the forced-inverse equation")
    if "span" not in cert.inverse_argument:
        extension_ok = False
        failures.append("inverse argument lost the span additivity step")

    return CertificateReport(
        units_ok=units_ok,
        graded_ideals_ok=graded_ideals_ok,
        witness_ok=witness_ok,
        extension_ok=extension_ok,
        failures=tuple(failures),
    )
