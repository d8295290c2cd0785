"""Exact-rational laboratory for the partial-fraction determinant identity.

Everything in this module runs over `fractions.Fraction`, so every check
is a bit-exact equality of reduced rationals: the identity

    sum_i f_i / prod_{j != i}(x_i - x_j)
        ==  det[1, x_i, ..., x_i^{k-2}, f_i] / prod_{m < n}(x_n - x_m)

its cofactor expansion along the last column, and the sign identity
linking the full node product to the product with one node removed.
Node indices are 1-based throughout, matching the (-1)^{k-i} cofactor
signs.
"""

from __future__ import annotations

import random
from fractions import Fraction
from typing import Iterable, Iterator, Sequence

_DEFAULT_NUMDEN_BOUND = 10**6


def _as_fractions(values: Iterable) -> tuple[Fraction, ...]:
    return tuple(Fraction(v) for v in values)


def vdm_product(xs: Sequence) -> Fraction:
    """prod_{m < n}(x_n - x_m); zero exactly when two nodes coincide."""
    xs = _as_fractions(xs)
    out = Fraction(1)
    for m in range(len(xs)):
        for n in range(m + 1, len(xs)):
            out *= xs[n] - xs[m]
    return out


def vdm_minor_product(xs: Sequence, i: int) -> Fraction:
    """Node product with node i (1-based) removed, order preserved."""
    xs = _as_fractions(xs)
    if not 1 <= i <= len(xs):
        raise IndexError(f"node index {i} out of range 1..{len(xs)}")
    return vdm_product(xs[: i - 1] + xs[i:])


def det_exact(matrix: Sequence[Sequence]) -> Fraction:
    """Exact determinant by Bareiss fraction-free elimination.

    Interior divisions are exact by construction, so the value is an
    exact rational for any rational input.
    """
    rows = [list(map(Fraction, row)) for row in matrix]
    n = len(rows)
    if any(len(row) != n for row in rows):
        raise ValueError("determinant requires a square matrix")
    if n == 0:
        return Fraction(1)
    sign = 1
    prev = Fraction(1)
    for col in range(n - 1):
        if rows[col][col] == 0:
            for r in range(col + 1, n):
                if rows[r][col]:
                    rows[col], rows[r] = rows[r], rows[col]
                    sign = -sign
                    break
            else:
                return Fraction(0)
        pivot = rows[col][col]
        for i in range(col + 1, n):
            for j in range(col + 1, n):
                rows[i][j] = (rows[i][j] * pivot - rows[i][col] * rows[col][j]) / prev
            rows[i][col] = Fraction(0)
        prev = pivot
    return sign * rows[n - 1][n - 1]


def det_cofactor(matrix: Sequence[Sequence]) -> Fraction:
    """Naive first-row cofactor expansion; factorial cost.

    Independent oracle for det_exact on small matrices (tests keep it
    at dimension <= 4 for the full expansion).
    """
    rows = [list(map(Fraction, row)) for row in matrix]
    n = len(rows)
    if any(len(row) != n for row in rows):
        raise ValueError("determinant requires a square matrix")
    if n == 0:
        return Fraction(1)
    if n == 1:
        return rows[0][0]
    total = Fraction(0)
    for j in range(n):
        if rows[0][j] == 0:
            continue
        minor = [row[:j] + row[j + 1 :] for row in rows[1:]]
        total += (-1) ** j * rows[0][j] * det_cofactor(minor)
    return total


def bordered_matrix(xs: Sequence, fs: Sequence) -> list[list[Fraction]]:
    """Row i is (1, x_i, ..., x_i^{k-2}, f_i)."""
    xs = _as_fractions(xs)
    fs = _as_fractions(fs)
    if len(xs) != len(fs):
        raise ValueError("node and value vectors must have equal length")
    k = len(xs)
    return [[x**p for p in range(k - 1)] + [f] for x, f in zip(xs, fs)]


def lemma_lhs(xs: Sequence, fs: Sequence) -> Fraction:
    """The partial-fraction sum sum_i f_i / prod_{j != i}(x_i - x_j).

    Coincident nodes raise ZeroDivisionError: the denominator product
    vanishes and the sum is undefined.
    """
    xs = _as_fractions(xs)
    fs = _as_fractions(fs)
    if len(xs) != len(fs):
        raise ValueError("node and value vectors must have equal length")
    total = Fraction(0)
    for i, (x, f) in enumerate(zip(xs, fs)):
        den = Fraction(1)
        for j, y in enumerate(xs):
            if j != i:
                den *= x - y
        total += f / den
    return total


def lemma_rhs(xs: Sequence, fs: Sequence) -> Fraction:
    """Bordered determinant divided by the full node product."""
    return det_exact(bordered_matrix(xs, fs)) / vdm_product(xs)


def sign_identity_check(xs: Sequence, i: int) -> bool:
    """Full product == (-1)^{k-i} * minor product * prod_{j != i}(x_i - x_j)."""
    xs = _as_fractions(xs)
    k = len(xs)
    if not 1 <= i <= k:
        raise IndexError(f"node index {i} out of range 1..{k}")
    x = xs[i - 1]
    prod_i = Fraction(1)
    for j, y in enumerate(xs):
        if j != i - 1:
            prod_i *= x - y
    rhs = (-1) ** (k - i) * vdm_minor_product(xs, i) * prod_i
    return vdm_product(xs) == rhs


def cofactor_expansion_check(xs: Sequence, fs: Sequence) -> bool:
    """det(bordered) == sum_i (-1)^{k-i} f_i * minor_i, exactly.

    The two sides travel independent code paths: Bareiss elimination on
    the left, minor products on the right.
    """
    xs = _as_fractions(xs)
    fs = _as_fractions(fs)
    if len(xs) != len(fs):
        raise ValueError("node and value vectors must have equal length")
    k = len(xs)
    det = det_exact(bordered_matrix(xs, fs))
    expansion = sum(
        (-1) ** (k - i) * fs[i - 1] * vdm_minor_product(xs, i)
        for i in range(1, k + 1)
    )
    return det == expansion


# ---------------------------------------------------------------------------
# sampled verification suite
# ---------------------------------------------------------------------------

def random_rational(rng: random.Random, bound: int = _DEFAULT_NUMDEN_BOUND) -> Fraction:
    return Fraction(rng.randint(-bound, bound), rng.randint(1, bound))


def sample_nodes(
    rng: random.Random, k: int, bound: int = _DEFAULT_NUMDEN_BOUND
) -> tuple[Fraction, ...]:
    """k pairwise-distinct random rationals; duplicates are re-drawn."""
    seen: set[Fraction] = set()
    out: list[Fraction] = []
    while len(out) < k:
        q = random_rational(rng, bound)
        if q not in seen:
            seen.add(q)
            out.append(q)
    return tuple(out)


def lemma_trial(xs: Sequence, fs: Sequence) -> dict:
    """Run all three identities on one instance; bools, no tolerance."""
    return {
        "lemma_ok": lemma_lhs(xs, fs) == lemma_rhs(xs, fs),
        "sign_ok": all(sign_identity_check(xs, i) for i in range(1, len(xs) + 1)),
        "cofactor_ok": cofactor_expansion_check(xs, fs),
    }


def run_lemma_suite(
    ks: Iterable[int], trials: int, seed: int
) -> Iterator[dict]:
    """Yield one machine-readable record per sampled instance.

    Sampling is deterministic given (seed, k), and the seed rides along
    in every record so any instance can be reproduced in isolation.
    """
    for k in ks:
        rng = random.Random(seed * 1_000_003 + k)
        for index in range(trials):
            xs = sample_nodes(rng, k)
            fs = tuple(random_rational(rng) for _ in range(k))
            checks = lemma_trial(xs, fs)
            record = {
                "check": "lemma_identities",
                "seed": seed,
                "k": k,
                "instance": index,
                "nodes": [str(x) for x in xs],
                "values": [str(f) for f in fs],
            }
            record.update(checks)
            record["ok"] = all(checks.values())
            yield record
