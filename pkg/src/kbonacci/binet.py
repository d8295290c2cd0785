"""Closed-form k-bonacci evaluation with certified correct rounding.

Each value is the sum over all k characteristic roots of
root^n / prod_{j != i}(root_i - root_j), evaluated in arbitrary-precision
complex arithmetic.  A first-order forward error account runs alongside
the evaluation; the integer is emitted only when the certified interval
around the real part contains exactly one integer and the imaginary
part sits inside the radius.  Otherwise the working precision doubles
and the evaluation repeats, up to a hard escalation cap.

Nothing here is trusted for correctness on its own: the exact backends
in `recurrence` are the oracle, and the test suite compares against
them end to end.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import gmpy2
from gmpy2 import mpc, mpfr

from .charpoly import RootSet, decimal_str, find_roots
from .errors import PrecisionExhaustedError, TailBoundError, require_order

_ESCALATION_CAP = 20
_PREC_BUCKET = 128
_MIN_PREC_BITS = 64

# Roots depend only on (k, precision); memoizing them is transparent
# because find_roots is deterministic.  clear_root_cache() exists so
# tests can prove bitwise equality with and without the cache.
_root_cache: dict[tuple[int, int], RootSet] = {}


def cached_roots(k: int, prec_bits: int) -> RootSet:
    key = (k, prec_bits)
    rs = _root_cache.get(key)
    if rs is None:
        rs = find_roots(k, prec_bits)
        _root_cache[key] = rs
    return rs


def clear_root_cache() -> None:
    _root_cache.clear()


@dataclass(frozen=True)
class BinetResult:
    """Correctly rounded closed-form value with its certificate."""

    k: int
    n: int
    value: int
    error_radius: object
    prec_bits_used: int
    escalations: int

    def to_json(self) -> dict:
        return {
            "k": self.k,
            "n": self.n,
            "value": str(self.value),
            "error_radius": decimal_str(self.error_radius, 64),
            "prec_bits_used": self.prec_bits_used,
            "escalations": self.escalations,
        }


@dataclass(frozen=True)
class BinetTermBreakdown:
    """Per-root terms of the closed form, unrounded, for diagnostics."""

    k: int
    n: int
    terms: tuple
    sum: object
    error_radius: object


def _dominant_root_estimate(k: int) -> float:
    """Double-precision dominant root via the fixed point x = 2 - x^{-k}.

    Stays clear of overflow for any k (x^{-k} shrinks, never grows), and
    converges from x = 2 because the dominant root lies in (1, 2).
    """
    x = 2.0
    for _ in range(200):
        nxt = 2.0 - x ** (-k)
        if abs(nxt - x) < 1e-14:
            x = nxt
            break
        x = nxt
    return x


def required_precision_estimate(k: int, n: int) -> int:
    """Starting precision for the adaptive loop: value bits plus guard.

    ceil(n * log2(dominant root)) covers the magnitude of the answer;
    32*k + 64 guard bits cover the k-term summation and the root error
    amplification.  This is a budget, not a guarantee; the escalation
    loop owns correctness.
    """
    require_order(k)
    if n < 0:
        raise ValueError(f"sequence index n must be >= 0, got {n}")
    return math.ceil(n * math.log2(_dominant_root_estimate(k))) + 32 * k + 64


def _bucketed(prec: int) -> int:
    prec = max(prec, _MIN_PREC_BITS)
    return _PREC_BUCKET * math.ceil(prec / _PREC_BUCKET)


def _cpow(z, n: int):
    """z^n by binary powering: O(log n) multiplications, O(log n) error growth."""
    result = mpc(1)
    base = z
    e = n
    while e:
        if e & 1:
            result = result * base
        e >>= 1
        if e:
            base = base * base
    return result


def _evaluate_terms(k: int, n: int, prec_bits: int):
    """One fixed-precision pass: terms, their sum, and the error radius.

    The radius comes from first-order forward accounting: the residual
    of each polished root is converted into a root uncertainty through
    the derivative (which for a monic squarefree polynomial equals the
    denominator product), that uncertainty is amplified n-fold by the
    powering, and every AP operation contributes one unit roundoff at
    the working precision.  A factor of two on top absorbs the dropped
    second-order terms.
    """
    rs = cached_roots(k, prec_bits)
    roots = rs.roots
    with gmpy2.context(precision=prec_bits, allow_complex=True):
        u = mpfr(2) ** (1 - prec_bits)
        denoms = []
        for i, z in enumerate(roots):
            d = mpc(1)
            for j, w in enumerate(roots):
                if j != i:
                    d *= z - w
            denoms.append(d)
        # |p'(root)| == |denominator| for a monic squarefree polynomial,
        # so the residual-to-root-error conversion reuses the denominators.
        root_err = [2 * rs.max_residual / abs(d) for d in denoms]
        mul_steps = 2 * max(n, 1).bit_length()
        terms = []
        total_mag = mpfr(0)
        total_err = mpfr(0)
        for i, z in enumerate(roots):
            term = _cpow(z, n) / denoms[i]
            mag = abs(term)
            rel = n * root_err[i] / abs(z) + mul_steps * u
            for j, w in enumerate(roots):
                if j != i:
                    rel += (root_err[i] + root_err[j]) / abs(z - w) + u
            rel += 2 * u  # final division and the summation slot
            terms.append(term)
            total_mag += mag
            total_err += mag * rel
        total = mpc(0)
        for term in terms:
            total += term
        radius = 2 * (total_err + k * u * total_mag)
    return tuple(terms), total, radius


def binet_eval(k: int, n: int, start_prec_bits: int | None = None) -> BinetResult:
    """Closed-form F(k, n), certified to round to a unique integer.

    Evaluates at the estimated precision, doubles on any certification
    failure (radius >= 1/2, imaginary part outside the radius, or more
    than one integer in the interval), and gives up with
    PrecisionExhaustedError after 20 doublings -- which the acceptance
    matrix never triggers; hitting it signals a bug, not bad luck.
    """
    require_order(k)
    if n < 0:
        raise ValueError(f"sequence index n must be >= 0, got {n}")
    if start_prec_bits is None:
        start_prec_bits = required_precision_estimate(k, n)
    prec = _bucketed(start_prec_bits)
    for escalations in range(_ESCALATION_CAP + 1):
        _, total, radius = _evaluate_terms(k, n, prec)
        with gmpy2.context(precision=prec, allow_complex=True):
            if radius < mpfr(1) / 2 and abs(total.imag) <= radius:
                lo = gmpy2.ceil(total.real - radius)
                hi = gmpy2.floor(total.real + radius)
                if lo == hi:
                    return BinetResult(
                        k=k,
                        n=n,
                        value=int(lo),
                        error_radius=radius,
                        prec_bits_used=prec,
                        escalations=escalations,
                    )
        prec *= 2
    raise PrecisionExhaustedError(
        f"no certified rounding for k={k}, n={n} after {_ESCALATION_CAP} escalations"
    )


def binet_breakdown(k: int, n: int, prec_bits: int) -> BinetTermBreakdown:
    """All k closed-form terms at a fixed precision, no rounding.

    Root-finder failures propagate unchanged.
    """
    require_order(k)
    if n < 0:
        raise ValueError(f"sequence index n must be >= 0, got {n}")
    if prec_bits < _MIN_PREC_BITS:
        raise ValueError(f"prec_bits must be >= {_MIN_PREC_BITS}, got {prec_bits}")
    terms, total, radius = _evaluate_terms(k, n, prec_bits)
    return BinetTermBreakdown(k=k, n=n, terms=terms, sum=total, error_radius=radius)


def dominant_term_round(k: int, n: int) -> int:
    """F(k, n) from the dominant term alone, by nearest-integer rounding.

    Valid only once the non-dominant tail is certifiably below 1/2;
    the certificate is a conservative bound (computed tail magnitudes
    doubled to absorb first-order numeric error).  Below that index the
    call refuses with TailBoundError rather than guessing.
    """
    require_order(k)
    if n < 0:
        raise ValueError(f"sequence index n must be >= 0, got {n}")
    prec = _bucketed(required_precision_estimate(k, n))
    rs = cached_roots(k, prec)
    roots = rs.roots
    with gmpy2.context(precision=prec, allow_complex=True):
        dominant = roots[0]
        if not dominant.real > 1:
            raise ArithmeticError("canonical root order lost the dominant root")
        tail = mpfr(0)
        for i in range(1, k):
            d = mpc(1)
            for j, w in enumerate(roots):
                if j != i:
                    d *= roots[i] - w
            tail += abs(roots[i]) ** n / abs(d)
        if not 2 * tail < mpfr(1) / 2:
            raise TailBoundError(
                f"non-dominant tail bound {2 * tail} not below 1/2 for k={k}, n={n}"
            )
        denom = mpc(1)
        for j in range(1, k):
            denom *= dominant - roots[j]
        term = _cpow(dominant, n) / denom
        return int(gmpy2.floor(term.real + mpfr(1) / 2))
