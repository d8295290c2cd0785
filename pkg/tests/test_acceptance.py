"""Acceptance gate: every criterion at its stated tolerance.

Run with `pytest -s tests/test_acceptance.py` to see one PASS/FAIL line
per criterion.  Each test is self-contained; the heavy matrices rely on
the root cache, so the whole module finishes in well under a minute.
"""

import contextlib
import time

import gmpy2
import pytest
from gmpy2 import mpfr

from kbonacci import (
    binet_eval,
    discriminant_certificate,
    find_roots,
    kbonacci_matrix,
    kbonacci_recursive,
    kbonacci_window,
    root_separation,
    run_lemma_suite,
)

SEED = 1729


@contextlib.contextmanager
def criterion(num, label):
    try:
        yield
    except BaseException:
        print(f"\nACCEPTANCE {num} ({label}): FAIL", flush=True)
        raise
    print(f"\nACCEPTANCE {num} ({label}): PASS", flush=True)


def test_criterion_1_closed_form_matches_recursion():
    # closed form equals the exact recursion, integer equality, zero
    # tolerance after certified rounding, k in [2,10] x n in [0,500]
    with criterion(1, "closed form == exact recursion on the full grid"):
        start = time.perf_counter()
        for k in range(2, 11):
            seq = kbonacci_window(k, 0, 501)
            for n in range(501):
                assert binet_eval(k, n).value == seq[n], (k, n)
        assert time.perf_counter() - start < 300


def test_criterion_2_base_cases():
    with criterion(2, "k-1 leading zeros then a one, exactly"):
        for k in range(2, 11):
            for n in range(0, k - 1):
                assert binet_eval(k, n).value == 0, (k, n)
            assert binet_eval(k, k - 1).value == 1, k


def test_criterion_3_fibonacci_special_case():
    with criterion(3, "k=2 equals Fibonacci; roots match (1±√5)/2 to 30 digits"):
        seq = kbonacci_window(2, 0, 101)
        for n in range(101):
            assert binet_eval(2, n).value == seq[n], n
        rs = find_roots(2, 128)
        with gmpy2.context(precision=192):
            sqrt5 = gmpy2.sqrt(mpfr(5))
            tol = mpfr(10) ** -30
            assert abs(rs.roots[0] - (1 + sqrt5) / 2) < tol
            assert abs(rs.roots[1] - (1 - sqrt5) / 2) < tol


def test_criterion_4_lemma_identity_matrix():
    # >= 1000 exact-rational instances per k in [2,8]; all three identity
    # families must hold bit-exactly on every instance
    with criterion(4, "partial-fraction identity suite, 1000 instances per k"):
        start = time.perf_counter()
        count = 0
        for record in run_lemma_suite(range(2, 9), 1000, seed=SEED):
            assert record["lemma_ok"], record
            assert record["sign_ok"], record
            assert record["cofactor_ok"], record
            count += 1
        assert count == 7 * 1000
        assert time.perf_counter() - start < 120


def test_criterion_5_distinctness_certificate():
    with criterion(5, "exact nonzero discriminant and separated roots"):
        for k in range(2, 21):
            assert discriminant_certificate(k).nonzero, k
            # root_separation raises unless the gap clears the
            # residual-derived perturbation bound with margin
            sep = root_separation(find_roots(k, 256))
            assert sep > 0, k


def test_criterion_6_vieta_sanity():
    with criterion(6, "root sum and product match the coefficients"):
        for prec in (128, 256):
            with gmpy2.context(precision=prec, allow_complex=True):
                tol = mpfr(2) ** -(prec - 16)
                for k in range(2, 21):
                    rs = find_roots(k, prec)
                    total = gmpy2.mpc(0)
                    prod = gmpy2.mpc(1)
                    for z in rs.roots:
                        total += z
                        prod *= z
                    assert abs(total - 1) <= tol, (k, prec)
                    assert abs(prod - (-1) ** (k + 1)) <= tol, (k, prec)


def test_criterion_7_backend_equivalence_at_scale():
    with criterion(7, "matrix == recursive digit-for-digit at n = 10^5"):
        start = time.perf_counter()
        for k in (2, 3, 5):
            a = kbonacci_recursive(k, 10**5)
            b = kbonacci_matrix(k, 10**5)
            assert str(a) == str(b), k
        assert time.perf_counter() - start < 60


def test_criterion_8_certification_soundness():
    # across the full verify matrix: radius < 1/2 on every emitted result,
    # and a doubled-precision re-run never changes the emitted integer
    with criterion(8, "certified radius < 1/2 and stability under doubling"):
        for k in range(2, 11):
            for n in range(501):
                result = binet_eval(k, n)
                assert result.error_radius < mpfr(1) / 2, (k, n)
                doubled = binet_eval(k, n, start_prec_bits=2 * result.prec_bits_used)
                assert doubled.value == result.value, (k, n)
