import json

import gmpy2
import mpmath
import pytest
from gmpy2 import mpfr

from kbonacci import (
    ConvergenceError,
    InvalidOrderError,
    PrecisionInsufficientError,
    RootSet,
    auxiliary_poly,
    build_char_poly,
    discriminant_certificate,
    find_roots,
    root_separation,
)
from kbonacci.charpoly import _poly_derivative, _poly_mul


# --------------------------------------------------------------------------
# exact layer
# --------------------------------------------------------------------------

def test_char_poly_patterns():
    assert build_char_poly(2).coeffs == (-1, -1, 1)
    assert build_char_poly(3).coeffs == (-1, -1, -1, 1)
    assert build_char_poly(4).coeffs == (-1, -1, -1, -1, 1)


def test_char_poly_invalid_order():
    with pytest.raises(InvalidOrderError):
        build_char_poly(1)


def test_auxiliary_poly_hand_expanded():
    # (x - 1)(x^2 - x - 1) = x^3 - 2x^2 + 1
    assert auxiliary_poly(2) == (1, 0, -2, 1)
    # (x - 1)(x^3 - x^2 - x - 1) = x^4 - 2x^3 + 1
    assert auxiliary_poly(3) == (1, 0, 0, -2, 1)


@pytest.mark.parametrize("k", range(2, 21))
def test_auxiliary_poly_defining_identity(k):
    assert _poly_mul((-1, 1), build_char_poly(k).coeffs) == auxiliary_poly(k)


def naive_int_det(rows):
    """First-row cofactor expansion over exact ints; factorial cost."""
    n = len(rows)
    if n == 1:
        return rows[0][0]
    total = 0
    for j in range(n):
        if rows[0][j] == 0:
            continue
        minor = [row[:j] + row[j + 1 :] for row in rows[1:]]
        total += (-1) ** j * rows[0][j] * naive_int_det(minor)
    return total


def sylvester(p, q):
    """Independent Sylvester construction (ascending coefficients)."""
    m, n = len(p) - 1, len(q) - 1
    pd, qd = list(reversed(p)), list(reversed(q))
    rows = [[0] * i + pd + [0] * (m + n - m - 1 - i) for i in range(n)]
    rows += [[0] * i + qd + [0] * (m + n - n - 1 - i) for i in range(m)]
    return rows


def test_discriminant_k2_is_five():
    cert = discriminant_certificate(2)
    assert cert.discriminant == 5  # b^2 - 4ac for x^2 - x - 1
    assert cert.nonzero


def test_discriminant_k3_against_cofactor_oracle():
    p = build_char_poly(3).coeffs
    res_oracle = naive_int_det(sylvester(list(p), list(_poly_derivative(p))))
    cert = discriminant_certificate(3)
    assert cert.discriminant == (-1) ** 3 * res_oracle
    # cubic discriminant 18abcd - 4b^3 d + b^2 c^2 - 4ac^3 - 27a^2 d^2
    a, b, c, d = 1, -1, -1, -1
    formula = (
        18 * a * b * c * d
        - 4 * b**3 * d
        + b**2 * c**2
        - 4 * a * c**3
        - 27 * a**2 * d**2
    )
    assert cert.discriminant == formula == -44


@pytest.mark.parametrize("k", range(2, 21))
def test_discriminant_nonzero(k):
    assert discriminant_certificate(k).nonzero


# --------------------------------------------------------------------------
# root finding
# --------------------------------------------------------------------------

def test_golden_ratio_roots_to_thirty_digits():
    rs = find_roots(2, 128)
    with gmpy2.context(precision=192):
        sqrt5 = gmpy2.sqrt(mpfr(5))
        phi1 = (1 + sqrt5) / 2
        phi2 = (1 - sqrt5) / 2
        assert abs(rs.roots[0].real - phi1) < mpfr(10) ** -30
        assert abs(rs.roots[1].real - phi2) < mpfr(10) ** -30
        assert rs.roots[0].imag == 0 and rs.roots[1].imag == 0


def test_tribonacci_dominant_root():
    rs = find_roots(3, 128)
    dom = rs.roots[0]
    assert abs(float(dom.real) - 1.839286755214161) < 1e-14
    # independent Newton iteration on x^3 - x^2 - x - 1 from x0 = 2
    mpmath.mp.dps = 45
    oracle = mpmath.findroot(lambda x: x**3 - x**2 - x - 1, mpmath.mpf(2))
    assert abs(mpmath.mpf(format(dom.real, ".40g")) - oracle) < mpmath.mpf(10) ** -35
    # one real root plus one conjugate pair (conjugation is exact when the
    # ambient precision covers the stored value)
    assert dom.imag == 0
    with gmpy2.context(precision=256, allow_complex=True):
        assert rs.roots[1] == rs.roots[2].conjugate()


@pytest.mark.parametrize("k", range(2, 9))
def test_roots_against_mpmath_polyroots(k):
    rs = find_roots(k, 128)
    mpmath.mp.dps = 50
    coeffs_desc = [1] + [-1] * k
    oracle = mpmath.polyroots(coeffs_desc, maxsteps=200, extraprec=120)
    for z in rs.roots:
        zm = mpmath.mpc(
            mpmath.mpf(format(z.real, ".40g")), mpmath.mpf(format(z.imag, ".40g"))
        )
        assert min(abs(zm - w) for w in oracle) < mpmath.mpf(10) ** -30


@pytest.mark.parametrize("k", range(2, 21))
@pytest.mark.parametrize("prec", [128, 256])
def test_vieta_checks(k, prec):
    rs = find_roots(k, prec)
    with gmpy2.context(precision=prec, allow_complex=True):
        tol = mpfr(2) ** -(prec - 16)
        total = gmpy2.mpc(0)
        prod = gmpy2.mpc(1)
        for z in rs.roots:
            total += z
            prod *= z
        assert abs(total - 1) <= tol
        assert abs(prod - (-1) ** (k + 1)) <= tol


def horner(coeffs_ascending, z):
    acc = z - z
    for c in reversed(coeffs_ascending):
        acc = acc * z + c
    return acc


@pytest.mark.parametrize("k", [2, 3, 5, 8, 13, 20, 32, 64])
def test_rootset_invariants(k):
    prec = 128
    rs = find_roots(k, prec)
    assert len(rs.roots) == k
    assert rs.min_separation > 0
    coeffs = build_char_poly(k).coeffs
    with gmpy2.context(precision=prec, allow_complex=True):
        # every root's Horner residual at prec_bits sits under the stored bound
        for z in rs.roots:
            assert abs(horner(coeffs, z)) <= rs.max_residual
    with gmpy2.context(precision=prec + 64, allow_complex=True):
        # residual contract
        assert rs.max_residual <= (k + 1) * mpfr(2) ** -(prec // 2)
        # exactly one root outside the unit circle, and it is the dominant one
        outside = [z for z in rs.roots if abs(z) > 1]
        assert len(outside) == 1
        assert outside[0] == rs.roots[0]
        assert rs.roots[0].real > 1
        # conjugate closure is exact by construction
        mirror = sorted(
            (z.conjugate() for z in rs.roots), key=lambda z: (-z.real, z.imag)
        )
        assert list(rs.roots) == mirror
        # canonical order: descending real part, ties by ascending imaginary
        keys = [(-z.real, z.imag) for z in rs.roots]
        assert keys == sorted(keys)


def test_roots_deterministic():
    a = find_roots(7, 128)
    b = find_roots(7, 128)
    assert [repr(z) for z in a.roots] == [repr(z) for z in b.roots]
    assert repr(a.max_residual) == repr(b.max_residual)


@pytest.mark.parametrize("k", range(2, 11))
def test_doubling_precision_is_stable(k):
    lo = find_roots(k, 128)
    hi = find_roots(k, 256)
    with gmpy2.context(precision=256, allow_complex=True):
        tol = mpfr(2) ** -64
        for a, b in zip(lo.roots, hi.roots):
            assert abs(a - b) <= tol


def test_separation_k2_is_sqrt5():
    rs = find_roots(2, 128)
    sep = root_separation(rs)
    with gmpy2.context(precision=160):
        assert abs(sep - gmpy2.sqrt(mpfr(5))) < mpfr(10) ** -30


def test_separation_consistent_across_precision():
    s1 = root_separation(find_roots(3, 128))
    s2 = root_separation(find_roots(3, 256))
    with gmpy2.context(precision=256):
        assert abs(s1 - s2) < mpfr(10) ** -30 * s2


def test_duplicated_root_rejected():
    rs = find_roots(3, 128)
    fake = RootSet(
        k=3,
        roots=(rs.roots[0], rs.roots[0], rs.roots[1]),
        max_residual=rs.max_residual,
        min_separation=rs.min_separation,
        prec_bits=rs.prec_bits,
    )
    with pytest.raises(PrecisionInsufficientError):
        root_separation(fake)


def test_find_roots_argument_validation():
    with pytest.raises(InvalidOrderError):
        find_roots(1, 128)
    with pytest.raises(ValueError):
        find_roots(3, 32)


def test_rootset_json_shape():
    rs = find_roots(3, 128)
    payload = rs.to_json()
    assert list(payload) == ["k", "prec_bits", "roots", "max_residual", "min_separation"]
    assert payload["k"] == 3 and payload["prec_bits"] == 128
    assert [list(r) for r in payload["roots"]] == [["re", "im"]] * 3
    # everything numeric crosses as decimal strings; round-trips losslessly
    text = json.dumps(payload)
    assert json.dumps(json.loads(text)) == text
    assert float(payload["roots"][0]["re"]) == pytest.approx(1.8392867552141612)
