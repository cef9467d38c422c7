"""Exact rational arithmetic: Bernoulli numbers and power sums.

All values are :class:`fractions.Fraction`, which keeps every result in
lowest terms with a positive denominator and represents zero as ``0/1``.
"""

from __future__ import annotations

import threading
from fractions import Fraction
from math import comb

__all__ = [
    "Rational",
    "BERNOULLI_KMAX",
    "bernoulli",
    "bernoulli_table",
    "faulhaber_sum",
    "brute_force_power_sum",
]

Rational = Fraction

BERNOULLI_KMAX = 64

_table: list[Fraction] = [Fraction(1)]
_lock = threading.Lock()


def _extend(k: int) -> None:
    # sum_{j=0}^{i} C(i+1, j) B_j = 0  for i >= 1
    while len(_table) <= k:
        i = len(_table)
        s =sum((comb(i + 1, j) * b for j, b in enumerate(_table)), Fraction(0))
        _table.append(-s / (i + 1))


def bernoulli(k: int) -> Fraction:
    """Return the Bernoulli number B_k with the convention B_1 = -1/2.

    >>> bernoulli(6)
    Fraction(1, 42)
    """
    if k < 0:
        raise ValueError(f"Bernoulli index must be >= 0, got {k}")
    if k >= len(_table):
        with _lock:
            _extend(max(k, BERNOULLI_KMAX))
    return _table[k]


def bernoulli_table(kmax: int = BERNOULLI_KMAX) -> list[Fraction]:
    """B_0..B_kmax as a fresh list."""
    bernoulli(kmax)
    return list(_table[: kmax + 1])


def faulhaber_sum(m: int, n: int) -> Fraction:
    """Exact ``sum_{k=1}^{n} k**m`` from the Bernoulli closed form.

    The identity ``sum_{k=0}^{N-1} k^m = 1/(m+1) sum_j C(m+1, j) B_j N^(m+1-j)``
    is evaluated at ``N = n + 1``. It counts the ``k = 0`` term as ``0**0 = 1``
    when ``m == 0``, which is removed.
    """
    if m < 0 or n < 0:
        raise ValueError(f"need m >= 0 and n >= 0, got m={m}, n={n}")
    big_n = n + 1
    total = sum(
        (comb(m + 1, j) * bernoulli(j) * big_n ** (m + 1 - j) for j in range(m + 1)),
        Fraction(0),
    )
    total /= m + 1
    if m == 0:
        total -= 1
    return total


def brute_force_power_sum(m: int, n: int) -> Fraction:
    """Literal loop over ``k = 1..n``; reference for :func:`faulhaber_sum`."""
    if m < 0 or n < 0:
        raise ValueError(f"need m >= 0 and n >= 0, got m={m}, n={n}")
    total = 0
    for k in range(1, n + 1):
        total += k**m
    return Fraction(total)
