"""Curve group-law, scalar multiplication and ECDH tests."""

import pytest

from uavsim.chain.curve import (
    INFINITY,
    P256,
    TOY_CURVE,
    CurveParams,
    curve_to_text,
    ecdh,
    is_on_curve,
    keygen,
    mul_base,
    parse_curve_text,
    point_add,
    point_neg,
    scalar_mul,
)
from uavsim.errors import CurveError, KeyAgreementError, ValidationError


def toy_points(limit=None):
    pts = [p for p in TOY_CURVE.enumerate_points() if p is not INFINITY]
    return pts[:limit] if limit else pts


def test_identity_element():
    for p in toy_points(12):
        assert point_add(p, INFINITY, TOY_CURVE) == p
        assert point_add(INFINITY, p, TOY_CURVE) == p


def test_inverse_element():
    for p in toy_points(12):
        assert point_add(p, point_neg(p, TOY_CURVE), TOY_CURVE) is INFINITY


def test_commutativity_and_associativity_samples():
    pts = toy_points()
    for a, b, c in [(pts[0], pts[5], pts[9]), (pts[3], pts[3], pts[7]), (pts[20], pts[40], pts[60])]:
        assert point_add(a, b, TOY_CURVE) == point_add(b, a, TOY_CURVE)
        left = point_add(point_add(a, b, TOY_CURVE), c, TOY_CURVE)
        right = point_add(a, point_add(b, c, TOY_CURVE), TOY_CURVE)
        assert left == right


def test_results_stay_on_curve():
    pts = toy_points()
    for i in range(0, len(pts) - 1, 7):
        out = point_add(pts[i], pts[i + 1], TOY_CURVE)
        assert is_on_curve(out, TOY_CURVE)


def test_off_curve_inputs_rejected():
    with pytest.raises(CurveError):
        point_add((1, 1), TOY_CURVE.g, TOY_CURVE)
    with pytest.raises(CurveError):
        scalar_mul(3, (2, 2), TOY_CURVE)


def test_scalar_mul_matches_repeated_addition_on_toy_curve():
    acc = None
    for k in range(1, TOY_CURVE.n):
        acc = TOY_CURVE.g if acc is None else point_add(acc, TOY_CURVE.g, TOY_CURVE)
        assert scalar_mul(k, TOY_CURVE.g, TOY_CURVE) == acc
    assert scalar_mul(TOY_CURVE.n, TOY_CURVE.g, TOY_CURVE) is INFINITY
    assert scalar_mul(0, TOY_CURVE.g, TOY_CURVE) is INFINITY


def test_mul_base_agrees_with_scalar_mul():
    for k in (1, 2, 3, 50, 106):
        assert mul_base(k, TOY_CURVE) == scalar_mul(k, TOY_CURVE.g, TOY_CURVE)
    for k in (1, 2, 2**64 + 3, P256.n - 1):
        assert mul_base(k, P256) == scalar_mul(k, P256.g, P256)


def test_toy_cofactor_by_enumeration():
    assert TOY_CURVE.verify_cofactor()
    assert len(TOY_CURVE.enumerate_points()) == TOY_CURVE.h * TOY_CURVE.n


def test_keygen_valid_and_deterministic():
    for curve in (TOY_CURVE, P256):
        for seed in range(20):
            kp = keygen(curve, seed)
            assert 1 <= kp.private < curve.n
            assert is_on_curve(kp.public, curve)
            assert kp.public is not INFINITY
        assert keygen(curve, 7) == keygen(curve, 7)


def test_private_key_one_gives_base_point():
    for curve in (TOY_CURVE, P256):
        assert mul_base(1, curve) == curve.g


def test_ecdh_symmetry_quick():
    for curve, count in ((TOY_CURVE, 50), (P256, 10)):
        for seed in range(count):
            a = keygen(curve, 2 * seed)
            b = keygen(curve, 2 * seed + 1)
            assert ecdh(a.private, b.public, curve) == ecdh(b.private, a.public, curve)


def test_ecdh_matches_bruteforce_product_on_toy_curve():
    a = keygen(TOY_CURVE, 31)
    b = keygen(TOY_CURVE, 32)
    product = (a.private * b.private) % TOY_CURVE.n
    acc = None
    for _ in range(product):
        acc = TOY_CURVE.g if acc is None else point_add(acc, TOY_CURVE.g, TOY_CURVE)
    assert ecdh(a.private, b.public, TOY_CURVE) == acc[0]


def test_ecdh_rejects_bad_public_keys():
    kp = keygen(TOY_CURVE, 1)
    with pytest.raises(KeyAgreementError):
        ecdh(kp.private, INFINITY, TOY_CURVE)
    with pytest.raises(KeyAgreementError):
        ecdh(kp.private, (1, 1), TOY_CURVE)
    with pytest.raises(KeyAgreementError):
        ecdh(0, kp.public, TOY_CURVE)


def test_curve_params_validation():
    with pytest.raises(CurveError):
        CurveParams(p=97, a=5, b=6, gx=0, gy=43, n=107, h=1)  # a != -3
    with pytest.raises(CurveError):
        CurveParams(p=97, a=94, b=6, gx=1, gy=1, n=107, h=1)  # G off curve
    with pytest.raises(CurveError):
        CurveParams(p=97, a=94, b=6, gx=0, gy=43, n=106, h=1)  # wrong order


def test_p256_sanity():
    assert P256.p.bit_length() == 256
    assert (P256.a - (P256.p - 3)) % P256.p == 0
    assert is_on_curve(P256.g, P256)


def test_curve_file_roundtrip():
    for curve in (TOY_CURVE, P256):
        text = curve_to_text(curve)
        parsed = parse_curve_text(text)
        assert (parsed.p, parsed.a, parsed.b) == (curve.p, curve.a, curve.b)
        assert parsed.g == curve.g and parsed.n == curve.n and parsed.h == curve.h


def test_curve_file_errors_carry_line_numbers():
    with pytest.raises(ValidationError):
        parse_curve_text("")
    with pytest.raises(ValidationError) as err:
        parse_curve_text("# comment\n1,2,3\n")
    assert err.value.line == 2
    with pytest.raises(ValidationError):
        parse_curve_text("61,5,6,0,2b,6b,1\n")  # a != -3 mod p
