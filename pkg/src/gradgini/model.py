"""The graduation model: incomes that grow as a power of hierarchy rank.

A group of ``n`` ranks pays ``C * i**m`` at rank ``i = 1..n``. The degree
``m`` fixes the Gini index: exactly through power sums for finite ``n``,
and ``m / (m + 2)`` in the limit. Conversely a Gini value ``g`` maps to the
degree ``2g / (1 - g)``.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction

import numpy as np

from .errors import DomainError, IncomeRangeError
from .estimators import gini_sorted
from .rational import faulhaber_sum

__all__ = [
    "DEGREE_NAMES",
    "PowerModel",
    "GraduationResult",
    "generate_incomes",
    "exact_gini",
    "gini_numeric",
    "asymptotic_gini",
    "asymptotic_gini_exact",
    "degree_for_gini",
    "graduate",
    "classify",
    "bracket",
]

DEGREE_NAMES = {
    1: "linear",
    2: "quadratic",
    3: "cubic",
    4: "tetradic",
    5: "pentagonal-power",
    6: "hexal",
}


@dataclass(frozen=True)
class PowerModel:
    m: float
    n: int
    scale: float = 1.0

    def __post_init__(self):
        if not self.m > 0:
            raise DomainError(f"degree m must be > 0, got {self.m}")
        if int(self.n) != self.n or self.n < 2:
            raise DomainError(f"population n must be an integer >= 2, got {self.n}")
        if not self.scale > 0:
            raise DomainError(f"scale must be > 0, got {self.scale}")


@dataclass(frozen=True)
class GraduationResult:
    gini: float
    m: float
    classification: str
    exact: Fraction | None = None


def generate_incomes(model: PowerModel) -> np.ndarray:
    """Incomes ``C * i**m`` for ``i = 1..n``, ascending."""
    ranks = np.arange(1, model.n + 1, dtype=np.float64)
    with np.errstate(over="ignore"):
        x = model.scale * ranks**model.m
    if not np.all(np.isfinite(x)):
        raise IncomeRangeError(
            f"incomes overflow double precision for m={model.m}, n={model.n}, C={model.scale}"
        )
    return x


def exact_gini(m: int, n: int) -> Fraction:
    """Exact Gini of the integer-degree model as a fraction.

    ``G = 2/(n-1) * (S_{m+1}(n) / S_m(n) - (n+1)/2)`` with
    ``S_m(n) = sum_{k=1}^{n} k**m`` from the Bernoulli closed form.
    """
    if int(m) != m or m < 0:
        raise DomainError(f"exact Gini needs an integer degree m >= 0, got {m}")
    if int(n) != n or n < 2:
        raise DomainError(f"n must be an integer >= 2, got {n}")
    m, n = int(m), int(n)
    ratio = faulhaber_sum(m + 1, n) / faulhaber_sum(m, n)
    return Fraction(2, n - 1) * (ratio - Fraction(n + 1, 2))


def gini_numeric(m: float, n: int, scale: float = 1.0) -> float:
    """Gini of the generated model incomes, for any real ``m > 0``."""
    return gini_sorted(generate_incomes(PowerModel(m, n, scale)))


def asymptotic_gini(m: float) -> float:
    """Limit of the model Gini as ``n`` grows: ``m / (m + 2)``."""
    if not m > 0:
        raise DomainError(f"degree m must be > 0, got {m}")
    return m / (m + 2)


def asymptotic_gini_exact(m: int | Fraction) -> Fraction:
    """``m / (m + 2)`` as a fraction, for integer or rational degrees."""
    m = Fraction(m)
    if m <= 0:
        raise DomainError(f"degree m must be > 0, got {m}")
    return m / (m + 2)


def degree_for_gini(g: float) -> float:
    """Inverse of the asymptote: ``m = 2g / (1 - g)``."""
    if not 0 <= g < 1:
        raise DomainError(f"Gini must lie in [0, 1), got {g}")
    return 2 * g / (1 - g)


def classify(m: float) -> str:
    """Name the nearest integer degree; halves round up.

    >>> classify(2.74)
    'cubic'
    """
    if m < 0:
        raise DomainError(f"degree m must be >= 0, got {m}")
    if m < 0.5:
        return "sub-linear"
    k = math.floor(m + 0.5)
    return DEGREE_NAMES.get(k, f"degree-{k}")


def bracket(m: float, tol: float = 1e-9) -> str:
    """Describe where ``m`` falls between consecutive integer degrees."""
    if m < 0:
        raise DomainError(f"degree m must be >= 0, got {m}")
    k = round(m)
    if abs(m - k) <= tol:
        if k == 0:
            return "equality (m = 0)"
        return f"{DEGREE_NAMES.get(k, f'degree-{k}')} (m = {k})"
    lo, hi = math.floor(m), math.ceil(m)
    if lo == 0:
        return "below linear (0 < m < 1)"
    lo_name = DEGREE_NAMES.get(lo, f"degree-{lo}")
    hi_name = DEGREE_NAMES.get(hi, f"degree-{hi}")
    return f"between {lo_name} and {hi_name} ({lo} < m < {hi})"


def graduate(g_star: float) -> GraduationResult:
    """Map a normalised Gini value to its model degree and label."""
    m = degree_for_gini(g_star)
    label = "equality" if m == 0 else classify(m)
    return GraduationResult(gini=g_star, m=m, classification=label)
