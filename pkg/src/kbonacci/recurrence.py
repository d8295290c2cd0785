"""Exact big-integer k-bonacci backends.

The order-k sequence starts with k-1 zeros followed by a single one
(F_0 = ... = F_{k-2} = 0, F_{k-1} = 1); every later term is the sum of
its k predecessors.  All values are plain Python ints, so nothing in
this module ever rounds.  These backends are the ground truth that the
floating-point closed-form engine is checked against.
"""

from __future__ import annotations

from collections import deque
from itertools import islice
from typing import Iterator

from .errors import require_order


def _check_index(n: int) -> None:
    if n < 0:
        raise ValueError(f"sequence index n must be >= 0, got {n}")


def kbonacci_iter(k: int) -> Iterator[int]:
    """Yield F_0, F_1, F_2, ... for the order-k recurrence.

    Keeps only the last k terms plus their running sum, so memory stays
    O(k) big-int words no matter how far the iteration runs.
    """
    require_order(k)
    window = deque([0] * (k - 1) + [1], maxlen=k)
    yield from window
    total = 1  # sum(window)
    while True:
        nxt = total
        total += nxt - window[0]  # window.append drops window[0]
        window.append(nxt)
        yield nxt


def kbonacci_recursive(k: int, n: int) -> int:
    """F(k, n) by running the sum recursion forward; linear in n."""
    _check_index(n)
    return next(islice(kbonacci_iter(k), n, None))


def kbonacci_window(k: int, start: int, count: int) -> list[int]:
    """The slice [F_start, ..., F_{start+count-1}], in order."""
    _check_index(start)
    if count < 0:
        raise ValueError(f"count must be >= 0, got {count}")
    if count == 0:
        require_order(k)
        return []
    return list(islice(kbonacci_iter(k), start, start + count))


def companion_matrix(k: int) -> list[list[int]]:
    """k x k integer matrix advancing the recurrence state vector.

    First row all ones, ones on the subdiagonal, zero elsewhere: one
    application maps (F_{n+k-1}, ..., F_n) to (F_{n+k}, ..., F_{n+1}).
    """
    require_order(k)
    mat = [[0] * k for _ in range(k)]
    mat[0] = [1] * k
    for i in range(1, k):
        mat[i][i - 1] = 1
    return mat


def _mat_mul(a: list[list[int]], b: list[list[int]]) -> list[list[int]]:
    cols = list(zip(*b))
    return [[sum(x * y for x, y in zip(row, col)) for col in cols] for row in a]


def _mat_pow(m: list[list[int]], e: int) -> list[list[int]]:
    k = len(m)
    result = [[int(i == j) for j in range(k)] for i in range(k)]
    while e:
        if e & 1:
            result = _mat_mul(result, m)
        e >>= 1
        if e:
            m = _mat_mul(m, m)
    return result


def kbonacci_matrix(k: int, n: int) -> int:
    """F(k, n) by binary powering of the companion matrix.

    O(k^3 log n) big-int multiplications; agrees with
    kbonacci_recursive everywhere.  The initial state vector is
    (F_{k-1}, ..., F_0) = (1, 0, ..., 0), so F_n is the bottom-left
    entry of the n-th matrix power.
    """
    _check_index(n)
    power = _mat_pow(companion_matrix(k), n)
    return power[k - 1][0]
