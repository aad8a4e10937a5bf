"""Laurent polynomials and the self-injectivity certificate they support."""

import json

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from regrade import (
    F2,
    F3,
    QQ,
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
from regrade.errors import UnsupportedFieldError


def coeff_maps(field_size):
    return st.dictionaries(
        st.integers(min_value=-5, max_value=5),
        st.integers(min_value=0, max_value=field_size - 1),
        max_size=4,
    )


@settings(max_examples=120, deadline=None)
@given(coeff_maps(3), coeff_maps(3), coeff_maps(3))
def test_laurent_arithmetic_laws(a_map, b_map, c_map):
    a = laurent(F3, a_map)
    b = laurent(F3, b_map)
    c = laurent(F3, c_map)
    assert a * b == b * a
    assert (a * b) * c == a * (b * c)
    assert a * (b + c) == a * b + a * c
    assert a * laurent_one(F3) == a
    assert (a * laurent_zero(F3)).is_zero


@settings(max_examples=60, deadline=None)
@given(st.integers(min_value=-6, max_value=6), st.integers(min_value=1, max_value=2))
def test_units_are_exactly_the_monomials(exponent, coefficient):
    mono = laurent(F3, {exponent: coefficient})
    assert is_unit(mono)
    inv = unit_inverse(mono)
    assert mono * inv == laurent_one(F3)
    binomial = laurent(F3, {exponent: coefficient, exponent + 2: 1})
    assert not is_unit(binomial)
    with pytest.raises(ValueError):
        unit_inverse(binomial)
    assert not is_unit(laurent_zero(F3))


@settings(max_examples=60, deadline=None)
@given(coeff_maps(3))
def test_window_solver_recovers_known_products(y_map):
    x = laurent(F3, {0: 1, 1: 1})
    y = laurent(F3, y_map)
    rhs = x * y
    sol = solve_product_in_window(x, rhs, 6)
    assert sol is not None
    assert x * sol == rhs


def test_window_solver_refuses_impossible_products():
    x = laurent(F2, {0: 1, 1: 1})
    for w in (1, 2, 3, 4):
        assert solve_product_in_window(x, laurent_one(F2), w) is None
    assert solve_product_in_window(laurent_zero(F2), laurent_one(F2), 3) is None
    assert solve_product_in_window(
        laurent_zero(F2), laurent_zero(F2), 3
    ) == laurent_zero(F2)


def test_no_annihilators_in_a_domain():
    for field in (F2, F3, QQ):
        x = laurent(field, {0: 1, 1: 1})
        for w in (1, 2, 3):
            assert annihilator_in_window(x, w) is None
        assert annihilator_in_window(laurent(field, {-2: 1, 3: 1}), 2) is None
    assert annihilator_in_window(laurent_zero(F2), 2) == laurent_one(F2)


def test_rendering_of_polynomials():
    p = laurent(F3, {0: 1, 1: 1, -2: 2})
    assert str(p) == "2*t^-2 + 1 + t"
    assert str(laurent_zero(F3)) == "0"


def test_certificates_generate_and_verify_over_all_three_fields():
    for field in (F2, F3, QQ):
        cert = laurent_counterexample(field)
        assert cert.field_name == field.name
        report = verify_certificate(cert)
        assert report.ok
        assert report.failures == ()


def test_certificate_json_roundtrip_preserves_verification():
    cert = laurent_counterexample(F3)
    text = json.dumps(cert.to_json(), sort_keys=True)
    back = certificate_from_json(json.loads(text))
    assert back == cert
    assert verify_certificate(back).ok


def test_tampered_certificates_are_rejected():
    cert = laurent_counterexample(F2)
    data = cert.to_json()

    unit_witness = json.loads(json.dumps(data))
    unit_witness["witness"] = [[1, 1]]
    report = verify_certificate(certificate_from_json(unit_witness))
    assert not report.witness_ok and not report.ok

    flipped = json.loads(json.dumps(data))
    flipped["unit_samples"][0][1] = False
    report = verify_certificate(certificate_from_json(flipped))
    assert not report.units_ok and not report.ok

    off_message = json.loads(json.dumps(data))
    off_message["graded_ideal_statement"] = "trust me"
    report = verify_certificate(certificate_from_json(off_message))
    assert not report.graded_ideals_ok and not report.ok

    dropped = json.loads(json.dumps(data))
    dropped["extension_statement"] = "left as an exercise"
    report = verify_certificate(certificate_from_json(dropped))
    assert not report.extension_ok and not report.ok

    not_homogeneous = json.loads(json.dumps(data))
    not_homogeneous["homogeneous_samples"][0] = [[0, 1], [1, 1]]
    report = verify_certificate(certificate_from_json(not_homogeneous))
    assert not report.graded_ideals_ok and not report.ok


def test_certificate_parser_rejects_other_documents():
    with pytest.raises(ValueError):
        certificate_from_json({"kind": "laurent-certificate", "version": 2})
    with pytest.raises(ValueError):
        certificate_from_json({"kind": "something-else", "version": 1})


def test_unsupported_coefficient_domains_are_refused():
    with pytest.raises(UnsupportedFieldError):
        laurent(object(), {0: 1})
    with pytest.raises(UnsupportedFieldError):
        laurent_counterexample("F2")
