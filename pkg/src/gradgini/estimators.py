"""Empirical inequality estimators.

Gini values use the sample convention throughout: the mean difference is
averaged over the ``n(n-1)`` ordered pairs of distinct units and
``G = Δ / (2μ)``. Under that convention ``(0, ..., 0, T)`` has Gini exactly 1.
Pass ``convention="population"`` to get the ``n**2`` variant, which is
smaller by the factor ``(n-1)/n``.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction
from typing import Sequence

import numpy as np
from numpy.typing import ArrayLike

from .errors import DomainError, GiniUndefinedError

__all__ = [
    "CONVENTIONS",
    "LorenzCurve",
    "GroupedData",
    "as_sample",
    "mean_difference_pairwise",
    "mean_difference_exact",
    "gini_pairwise",
    "gini_pairwise_exact",
    "gini_sorted",
    "lorenz_curve",
    "gini_from_lorenz",
    "grouped_lorenz",
    "grouped_gini_bounds",
    "dissipation_point",
]

CONVENTIONS = ("sample", "population")

# rows of the pairwise kernel processed per block; bounds memory at ~_BLOCK * n
_BLOCK = 1024


def as_sample(values: ArrayLike) -> np.ndarray:
    """Validate income microdata and return it as a 1-D float array."""
    x = np.asarray(values, dtype=np.float64)
    if x.ndim != 1:
        raise DomainError(f"income sample must be 1-D, got shape {x.shape}")
    if x.size < 2:
        raise DomainError(f"income sample needs at least 2 values, got {x.size}")
    if not np.all(np.isfinite(x)):
        raise DomainError("income sample contains non-finite values")
    if np.any(x < 0):
        raise DomainError("negative incomes are not supported")
    return x


def _positive_total(x: np.ndarray) -> float:
    total = float(np.sum(x))
    if total <= 0.0:
        raise GiniUndefinedError("all incomes are zero; Gini is undefined")
    return total


def _rescale(g: float, n: int, convention: str) -> float:
    if convention == "sample":
        return g
    if convention == "population":
        return g * (n - 1) / n
    raise ValueError(f"unknown convention {convention!r}; expected one of {CONVENTIONS}")


def mean_difference_pairwise(sample: ArrayLike) -> float:
    """Gini mean difference by the direct double sum over all pairs.

    ``Δ = 1/(n(n-1)) * sum_{i != j} |x_i - x_j|``. This is the O(n**2)
    reference path. Rows are processed in input order in blocks of
    ``_BLOCK``; each block's absolute differences are reduced by numpy and
    the block totals are combined with :func:`math.fsum`, so the result
    does not depend on how the row range is split.
    """
    x = as_sample(sample)
    n = x.size
    partial = []
    for start in range(0, n, _BLOCK):
        rows = x[start : start + _BLOCK, None]
        partial.append(float(np.abs(rows - x[None, :]).sum()))
    return math.fsum(partial) / (n * (n - 1))


def mean_difference_exact(values: Sequence[int | Fraction]) -> Fraction:
    """Mean difference in exact arithmetic by a literal pair loop."""
    vals = [Fraction(v) for v in values]
    n = len(vals)
    if n < 2:
        raise DomainError(f"need at least 2 values, got {n}")
    # scale to integers by the common denominator; the loop then runs on ints
    den = math.lcm(*(v.denominator for v in vals))
    ints = [v.numerator * (den // v.denominator) for v in vals]
    total = 0
    for i in range(n - 1):
        xi = ints[i]
        total += sum(abs(xi - xj) for xj in ints[i + 1 :])
    # each unordered pair appears twice among the ordered pairs i != j
    return Fraction(2 * total, n * (n - 1) * den)


def gini_pairwise(sample: ArrayLike) -> float:
    """``Δ / (2μ)`` with Δ from :func:`mean_difference_pairwise`."""
    x = as_sample(sample)
    mean = _positive_total(x) / x.size
    return mean_difference_pairwise(x) / (2.0 * mean)


def gini_pairwise_exact(values: Sequence[int | Fraction]) -> Fraction:
    """Exact ``Δ / (2μ)`` for integer or rational incomes."""
    vals = [Fraction(v) for v in values]
    total = sum(vals, Fraction(0))
    if total <= 0:
        raise GiniUndefinedError("all incomes are zero; Gini is undefined")
    mean = total / len(vals)
    return mean_difference_exact(vals) / (2 * mean)


def gini_sorted(sample: ArrayLike, convention: str = "sample") -> float:
    """Gini index from order statistics in O(n log n).

    ``G = sum_i (2i - n - 1) x_(i) / ((n - 1) sum_i x_(i))`` over the values
    sorted ascending, with ranks ``i = 1..n``.
    """
    x = np.sort(as_sample(sample), kind="stable")
    n = x.size
    total = _positive_total(x)
    weights = 2.0 * np.arange(1, n + 1, dtype=np.float64) - (n + 1)
    # rounding can push perfectly equal samples a few ulps below zero
    g = max(float(np.dot(weights, x)) / ((n - 1) * total), 0.0)
    return _rescale(g, n, convention)


@dataclass(frozen=True)
class LorenzCurve:
    """Piecewise-linear Lorenz curve through the vertices ``(p[k], share[k])``."""

    p: np.ndarray
    share: np.ndarray

    def __post_init__(self):
        p = np.asarray(self.p, dtype=np.float64)
        s = np.asarray(self.share, dtype=np.float64)
        object.__setattr__(self, "p", p)
        object.__setattr__(self, "share", s)
        if p.shape != s.shape or p.ndim != 1 or p.size < 2:
            raise DomainError("Lorenz curve needs matching 1-D vertex arrays")

    def points(self) -> list[tuple[float, float]]:
        return list(zip(self.p.tolist(), self.share.tolist()))

    def is_valid(self, tol: float = 1e-12) -> bool:
        """Endpoints, monotonicity, ``L(p) <= p`` and convexity."""
        p, s = self.p, self.share
        if abs(p[0]) > tol or abs(s[0]) > tol:
            return False
        if abs(p[-1] - 1) > tol or abs(s[-1] - 1) > tol:
            return False
        dp, ds = np.diff(p), np.diff(s)
        if np.any(dp < -tol) or np.any(ds < -tol):
            return False
        if np.any(s > p + tol):
            return False
        keep = dp > tol
        slopes = ds[keep] / dp[keep]
        return bool(np.all(np.diff(slopes) >= -1e-9 * max(1.0, float(slopes.max(initial=0)))))


def lorenz_curve(sample: ArrayLike) -> LorenzCurve:
    """Vertices ``(k/n, sum_{i<=k} x_(i) / sum x)`` for ``k = 0..n``."""
    x = np.sort(as_sample(sample), kind="stable")
    n = x.size
    total = _positive_total(x)
    share = np.concatenate(([0.0], np.cumsum(x) / total))
    share[-1] = 1.0
    p = np.arange(n + 1, dtype=np.float64) / n
    return LorenzCurve(p, share)


def gini_from_lorenz(curve: LorenzCurve, n: int, convention: str = "sample") -> float:
    """Twice the area between the diagonal and the curve, by trapezoids.

    The area gives the population-convention Gini; it is multiplied by
    ``n/(n-1)`` for the sample convention.
    """
    if n < 2:
        raise DomainError(f"n must be >= 2, got {n}")
    dp = np.diff(curve.p)
    mids = curve.share[1:] + curve.share[:-1]
    under = math.fsum((dp * mids).tolist()) / 2.0
    g_pop = 1.0 - 2.0 * under
    if convention == "population":
        return g_pop
    return _rescale(g_pop * n / (n - 1), n, convention)


@dataclass(frozen=True)
class GroupedData:
    """Binned incomes: unit counts and mean income per bin, means ascending."""

    counts: tuple[int, ...]
    means: tuple[float, ...]

    def __post_init__(self):
        counts = tuple(int(c) for c in self.counts)
        means = tuple(float(m) for m in self.means)
        object.__setattr__(self, "counts", counts)
        object.__setattr__(self, "means", means)
        if len(counts) != len(means) or not counts:
            raise DomainError("grouped data needs one mean per count and at least one bin")
        if any(c < 0 for c in counts):
            raise DomainError("bin counts must be >= 0")
        if any(not math.isfinite(m) or m < 0 for m in means):
            raise DomainError("bin means must be finite and >= 0")
        for k in range(1, len(means)):
            if means[k] < means[k - 1]:
                raise DomainError(f"bin means must be ascending; bin {k} breaks the order")
        if sum(counts) < 2:
            raise DomainError("grouped data needs at least 2 units in total")

    @property
    def total_count(self) -> int:
        return sum(self.counts)

    @property
    def total_income(self) -> float:
        return math.fsum(c * m for c, m in zip(self.counts, self.means))


def grouped_lorenz(data: GroupedData) -> LorenzCurve:
    """Lorenz polygon through the bin boundaries, equal incomes within bins."""
    total = data.total_income
    if total <= 0:
        raise GiniUndefinedError("grouped data has zero total income")
    big_n = data.total_count
    p, s = [0.0], [0.0]
    cum_n, cum_y = 0, 0.0
    for c, m in zip(data.counts, data.means):
        if c == 0:
            continue
        cum_n += c
        cum_y += c * m
        p.append(cum_n / big_n)
        s.append(cum_y / total)
    s[-1] = 1.0
    return LorenzCurve(np.array(p), np.array(s))


def _gini_weighted(values: Sequence[float], counts: Sequence[int]) -> float:
    # sample-convention Gini of a vector given as distinct values with multiplicities
    order = np.argsort(np.asarray(values, dtype=np.float64), kind="stable")
    v = np.asarray(values, dtype=np.float64)[order]
    c = np.asarray(counts, dtype=np.float64)[order]
    big_n = c.sum()
    total = float(np.dot(c, v))
    before = np.cumsum(c) - c
    after = big_n - before - c
    pair_sum = 2.0 * float(np.dot(c * v, before - after))
    return pair_sum / (2.0 * (big_n - 1) * total)


def _extremal_spread(count: int, mean: float, lo: float, hi: float) -> list[tuple[float, int]]:
    # most unequal split of `count` units with fixed mean and support [lo, hi]
    if count == 1 or hi <= lo or mean <= lo or mean >= hi:
        return [(mean, count)]
    if math.isinf(hi):
        return [(lo, count - 1), (count * mean - (count - 1) * lo, 1)]
    k = min(count - 1, math.floor(count * (mean - lo) / (hi - lo)))
    rest = count * mean - k * hi - (count - k - 1) * lo
    rest = min(max(rest, lo), hi)
    out = [(hi, k), (rest, 1), (lo, count - k - 1)]
    return [(v, c) for v, c in out if c > 0]


def grouped_gini_bounds(data: GroupedData) -> tuple[float, float]:
    """Lower and upper Gini bounds for grouped data.

    The lower bound assumes equal incomes within each bin. The upper bound
    spreads each bin as unequally as possible while keeping its mean, with
    incomes confined between the neighbouring bins' means; the lowest bin
    is floored at zero and the top bin is open above. Both bounds use the
    sample convention with ``n`` equal to the total unit count.
    """
    occupied = [(c, m) for c, m in zip(data.counts, data.means) if c > 0]
    if len(occupied) == 1:
        return 0.0, 0.0
    big_n = data.total_count
    lower = gini_from_lorenz(grouped_lorenz(data), big_n)
    values: list[float] = []
    counts: list[int] = []
    for k, (c, m) in enumerate(occupied):
        lo = occupied[k - 1][1] if k > 0 else 0.0
        hi = occupied[k + 1][1] if k + 1 < len(occupied) else math.inf
        for v, w in _extremal_spread(c, m, lo, hi):
            values.append(v)
            counts.append(w)
    upper = _gini_weighted(values, counts)
    lower = max(lower, 0.0)
    return lower, max(upper, lower)


def dissipation_point(sample: ArrayLike, x: float) -> float:
    """Share of total income held by units with income ``<= x``."""
    s = as_sample(sample)
    total = _positive_total(s)
    return float(s[s <= x].sum()) / total
