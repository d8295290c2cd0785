"""The characteristic polynomial x^k - x^{k-1} - ... - x - 1 and its roots.

Three layers live here:

* exact integer construction of the polynomial and of the auxiliary form
  x^{k+1} - 2 x^k + 1 = (x - 1) * p(x);
* an exact integer certificate that the k roots are distinct (the
  resultant of p and p', computed fraction-free on the Sylvester
  matrix, is nonzero exactly when p is squarefree);
* an arbitrary-precision complex root finder (Aberth-Ehrlich with a
  Durand-Kerner fallback) that returns all k roots together with
  residual and separation metadata.

All floating work runs under explicit gmpy2 precision contexts, which
are thread-local; nothing here touches shared mutable state.
"""

from __future__ import annotations

import math
import random
from dataclasses import dataclass

import gmpy2
from gmpy2 import mpc, mpfr

from .errors import (
    ConvergenceError,
    PrecisionInsufficientError,
    require_order,
)

_GUARD_BITS = 32
_MIN_PREC_BITS = 64
_NEWTON_POLISH_STEPS = 3


# ---------------------------------------------------------------------------
# exact integer layer
# ---------------------------------------------------------------------------

@dataclass(frozen=True)
class CharPoly:
    """Coefficients of x^k - x^{k-1} - ... - x - 1, degree-ascending."""

    k: int
    coeffs: tuple[int, ...]


@dataclass(frozen=True)
class DiscriminantCertificate:
    """Exact integer witness that the order-k polynomial is squarefree."""

    k: int
    discriminant: int
    nonzero: bool

    def to_json(self) -> dict:
        return {
            "k": self.k,
            "discriminant": str(self.discriminant),
            "nonzero": self.nonzero,
        }


def build_char_poly(k: int) -> CharPoly:
    """Exact coefficient list: constant through degree k-1 are -1, leading +1."""
    require_order(k)
    return CharPoly(k=k, coeffs=(-1,) * k + (1,))


def _poly_mul(a: tuple[int, ...], b: tuple[int, ...]) -> tuple[int, ...]:
    out = [0] * (len(a) + len(b) - 1)
    for i, ai in enumerate(a):
        for j, bj in enumerate(b):
            out[i + j] += ai * bj
    return tuple(out)


def _poly_derivative(coeffs: tuple[int, ...]) -> tuple[int, ...]:
    return tuple(i * c for i, c in enumerate(coeffs))[1:]


def auxiliary_poly(k: int) -> tuple[int, ...]:
    """x^{k+1} - 2 x^k + 1, degree-ascending.

    Re-derived on every call from (x - 1) * p(x) by exact polynomial
    multiplication, so the returned pattern is verified rather than
    assumed.
    """
    pattern = (1,) + (0,) * (k - 1) + (-2, 1)
    product = _poly_mul((-1, 1), build_char_poly(k).coeffs)
    if product != pattern:
        raise ArithmeticError(f"auxiliary polynomial identity failed for k={k}")
    return pattern


def _sylvester_matrix(p: tuple[int, ...], q: tuple[int, ...]) -> list[list[int]]:
    """Sylvester matrix of p and q (ascending coefficients, exact ints)."""
    m = len(p) - 1
    n = len(q) - 1
    size = m + n
    pd = list(reversed(p))
    qd = list(reversed(q))
    rows = []
    for i in range(n):
        rows.append([0] * i + pd + [0] * (size - m - 1 - i))
    for i in range(m):
        rows.append([0] * i + qd + [0] * (size - n - 1 - i))
    return rows


def _det_bareiss_int(matrix: list[list[int]]) -> int:
    """Exact determinant of an integer matrix, fraction-free elimination.

    Every interior division is exact (checked), so the result is an
    exact integer end to end.
    """
    a = [list(row) for row in matrix]
    n = len(a)
    sign = 1
    prev = 1
    for col in range(n - 1):
        if a[col][col] == 0:
            for r in range(col + 1, n):
                if a[r][col]:
                    a[col], a[r] = a[r], a[col]
                    sign = -sign
                    break
            else:
                return 0
        pivot = a[col][col]
        for i in range(col + 1, n):
            for j in range(col + 1, n):
                num = a[i][j] * pivot - a[i][col] * a[col][j]
                quot, rem = divmod(num, prev)
                if rem:
                    raise ArithmeticError("inexact division in fraction-free elimination")
                a[i][j] = quot
            a[i][col] = 0
        prev = pivot
    return sign * a[n - 1][n - 1]


def discriminant_certificate(k: int) -> DiscriminantCertificate:
    """Distinct-roots certificate: resultant(p, p') computed exactly.

    The polynomial is monic, so the discriminant is the resultant up to
    the sign (-1)^{k(k-1)/2}.  A nonzero value proves all k roots are
    simple, independently of any floating-point computation.
    """
    p = build_char_poly(k).coeffs
    resultant = _det_bareiss_int(_sylvester_matrix(p, _poly_derivative(p)))
    disc = (-1) ** (k * (k - 1) // 2) * resultant
    return DiscriminantCertificate(k=k, discriminant=disc, nonzero=disc != 0)


# ---------------------------------------------------------------------------
# arbitrary-precision complex layer
# ---------------------------------------------------------------------------

def digits_for_bits(bits: int) -> int:
    """Decimal digits carrying the same information as `bits` binary digits."""
    return max(2, math.ceil(bits * math.log10(2)))


def decimal_str(x, bits: int) -> str:
    """Deterministic decimal rendering of an mpfr at bits-equivalent digits."""
    return format(x, f".{digits_for_bits(bits)}g")


@dataclass(frozen=True)
class RootSet:
    """All k roots in canonical order plus accuracy metadata.

    Canonical order is descending real part with ties broken by
    ascending imaginary part, which puts the dominant real root first
    and keeps conjugate partners adjacent.  Immutable; safe to share.
    """

    k: int
    roots: tuple
    max_residual: object
    min_separation: object
    prec_bits: int

    def to_json(self) -> dict:
        return {
            "k": self.k,
            "prec_bits": self.prec_bits,
            "roots": [
                {
                    "re": decimal_str(z.real, self.prec_bits),
                    "im": decimal_str(z.imag, self.prec_bits),
                }
                for z in self.roots
            ],
            "max_residual": decimal_str(self.max_residual, self.prec_bits),
            "min_separation": decimal_str(self.min_separation, self.prec_bits),
        }


def _horner(coeffs, z):
    acc = z - z  # zero of the matching type (mpfr or mpc)
    for c in reversed(coeffs):
        acc = acc * z + c
    return acc


def _initial_points(k: int, count: int) -> list:
    """Perturbed points on the circle of radius 1.5, seeded by k.

    The deterministic jitter keeps runs reproducible while breaking the
    symmetries (real axis, regular k-gon) that can stall simultaneous
    iteration.
    """
    rng = random.Random(k)
    pts = []
    for i in range(count):
        ang = 2.0 * math.pi * (i + 0.25 + 0.2 * (rng.random() - 0.5)) / count
        rad = 1.5 * (1.0 + 0.04 * (rng.random() - 0.5))
        pts.append(mpc(mpfr(rad * math.cos(ang)), mpfr(rad * math.sin(ang))))
    return pts


def _aberth_pass(coeffs, deriv, pts, max_iter, eps):
    """In-place Aberth-Ehrlich sweep; returns True once all corrections
    fall below eps relative to the point magnitude."""
    n = len(pts)
    one = mpfr(1)
    for _ in range(max_iter):
        worst = mpfr(0)
        for i in range(n):
            z = pts[i]
            pv = _horner(coeffs, z)
            if pv == 0:
                continue
            dv = _horner(deriv, z)
            s = mpc(0)
            for j in range(n):
                if j != i:
                    s += 1 / (z - pts[j])
            denom = dv - pv * s
            if denom == 0:
                continue
            w = pv / denom
            pts[i] = z - w
            rel = abs(w) / max(abs(z), one)
            if rel > worst:
                worst = rel
        if worst <= eps:
            return True
    return False


def _durand_kerner_pass(coeffs, pts, max_iter, eps):
    """Weierstrass simultaneous iteration, used as the fallback."""
    n = len(pts)
    one = mpfr(1)
    for _ in range(max_iter):
        worst = mpfr(0)
        for i in range(n):
            z = pts[i]
            denom = mpc(1)
            for j in range(n):
                if j != i:
                    denom *= z - pts[j]
            if denom == 0:
                continue
            w = _horner(coeffs, z) / denom
            pts[i] = z - w
            rel = abs(w) / max(abs(z), one)
            if rel > worst:
                worst = rel
        if worst <= eps:
            return True
    return False


def _newton_polish(coeffs, deriv, z, steps=_NEWTON_POLISH_STEPS):
    for _ in range(steps):
        dv = _horner(deriv, z)
        if dv == 0:
            break
        z = z - _horner(coeffs, z) / dv
    return z


def _canonicalize(coeffs, deriv, pts, work_prec):
    """Snap near-real roots onto the axis, force exact conjugate pairs,
    and sort into canonical order.

    Exact pairing makes the conjugate-symmetry invariant hold by
    construction and keeps the canonical order stable across precision
    changes (paired roots share a bit-identical real part).
    """
    snap_tol = mpfr(2) ** (-(work_prec // 2))
    reals = []
    upper = []
    lower = []
    for z in pts:
        if abs(z.imag) <= snap_tol * max(abs(z.real), mpfr(1)):
            x = z.real
            for _ in range(_NEWTON_POLISH_STEPS):
                dv = _horner(deriv, x)
                if dv == 0:
                    break
                x = x - _horner(coeffs, x) / dv
            reals.append(mpc(x, 0))
        elif z.imag > 0:
            upper.append(z)
        else:
            lower.append(z)
    if len(upper) != len(lower):
        raise ConvergenceError(
            f"root set is not conjugate-symmetric ({len(upper)} upper vs {len(lower)} lower)"
        )
    upper.sort(key=lambda z: (z.real, z.imag))
    mirrored = sorted((z.conjugate() for z in lower), key=lambda z: (z.real, z.imag))
    paired = []
    for a, b in zip(upper, mirrored):
        if abs(a - b) > snap_tol * max(abs(a), mpfr(1)):
            raise ConvergenceError("conjugate partners disagree beyond tolerance")
        avg = (a + b) / 2
        avg = _newton_polish(coeffs, deriv, avg, steps=1)
        if avg.imag < 0:
            avg = avg.conjugate()
        paired.append(avg.conjugate())
        paired.append(avg)
    ordered = sorted(reals + paired, key=lambda z: (-z.real, z.imag))
    return ordered


def find_roots(k: int, prec_bits: int) -> RootSet:
    """All k roots of x^k - x^{k-1} - ... - 1 at the requested precision.

    Aberth-Ehrlich simultaneous iteration from deterministic starting
    points, Durand-Kerner as fallback, Newton polish at full working
    precision, then canonical ordering.  Residual and separation are
    evaluated at prec_bits and stored on the returned RootSet.

    Raises ConvergenceError (carrying the best residual) if neither
    iteration converges within 200*k sweeps.
    """
    require_order(k)
    if prec_bits < _MIN_PREC_BITS:
        raise ValueError(f"prec_bits must be >= {_MIN_PREC_BITS}, got {prec_bits}")
    coeffs = build_char_poly(k).coeffs
    deriv = _poly_derivative(coeffs)
    work_prec = prec_bits + _GUARD_BITS
    cap = 200 * k
    with gmpy2.context(precision=work_prec, allow_complex=True):
        eps = mpfr(2) ** (-(work_prec - 8))
        pts = _initial_points(k, k)
        converged = _aberth_pass(coeffs, deriv, pts, cap, eps)
        if not converged:
            pts = _initial_points(k, k)
            converged = _durand_kerner_pass(coeffs, pts, cap, eps)
        if not converged:
            best = max(abs(_horner(coeffs, z)) for z in pts)
            raise ConvergenceError(
                f"root iteration for k={k} did not converge at {prec_bits} bits",
                best_residual=best,
            )
        pts = [_newton_polish(coeffs, deriv, z) for z in pts]
        roots = tuple(_canonicalize(coeffs, deriv, pts, work_prec))

    with gmpy2.context(precision=prec_bits, allow_complex=True):
        max_residual = max(abs(_horner(coeffs, z)) for z in roots)
        min_separation = min(
            abs(roots[i] - roots[j])
            for i in range(k)
            for j in range(i + 1, k)
        )
        residual_cap = (k + 1) * mpfr(2) ** (-(prec_bits // 2))
        if not max_residual <= residual_cap:
            raise ConvergenceError(
                f"residual {max_residual} exceeds contract bound at {prec_bits} bits",
                best_residual=max_residual,
            )
        dominant = [z for z in roots if z.real > 1]
        if len(dominant) != 1:
            raise ConvergenceError(
                f"expected exactly one root with real part > 1, found {len(dominant)}"
            )
    return RootSet(
        k=k,
        roots=roots,
        max_residual=max_residual,
        min_separation=min_separation,
        prec_bits=prec_bits,
    )


def root_separation(root_set: RootSet):
    """Minimum pairwise root distance, gated by the perturbation bound.

    The set is usable downstream only when the gap clears four times
    the first-order root perturbation max_residual / min |p'(root)|;
    otherwise the roots cannot be told apart at this precision and a
    PrecisionInsufficientError is raised.
    """
    k = root_set.k
    coeffs = build_char_poly(k).coeffs
    deriv = _poly_derivative(coeffs)
    with gmpy2.context(precision=root_set.prec_bits, allow_complex=True):
        sep = min(
            abs(root_set.roots[i] - root_set.roots[j])
            for i in range(k)
            for j in range(i + 1, k)
        )
        dmin = min(abs(_horner(deriv, z)) for z in root_set.roots)
        if dmin == 0:
            raise PrecisionInsufficientError(
                "derivative vanishes at a computed root; separation not certifiable"
            )
        bound = 4 * root_set.max_residual / dmin
        if not sep > bound:
            raise PrecisionInsufficientError(
                f"root separation {sep} does not clear perturbation bound {bound}"
            )
    return sep
