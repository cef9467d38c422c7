"""Pareto, log-logistic and log-normal laws matched to a target Gini.

Each law has a one-parameter closed form for its Gini index, so a Gini
value fixes the shape parameter and, through ``m = 2g / (1 - g)``, an
equivalent graduation degree. The scale parameter never affects Gini.

Closed forms (shape parameter in brackets):

=============  =================  ============================  =============
law            Gini               inverse                       finite var.
=============  =================  ============================  =============
Pareto (a)     1 / (2a - 1)       a = (1/g + 1) / 2             a > 2
log-logistic   1 / b              b = 1 / g                     b > 2
log-normal     2 Phi(s/sqrt2)-1   s = sqrt2 Phi^-1((g + 1)/2)   always
=============  =================  ============================  =============
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction

import numpy as np
from scipy import special

from .errors import DomainError
from .model import degree_for_gini

__all__ = [
    "KINDS",
    "DistributionSpec",
    "MatchResult",
    "normal_cdf",
    "normal_ppf",
    "gini_of",
    "variance_of",
    "variance_threshold_in_m",
    "variance_finite",
    "match_to_gini",
    "sample",
]

KINDS = ("pareto", "loglogistic", "lognormal")


@dataclass(frozen=True)
class DistributionSpec:
    """A parameterised income law.

    ``shape`` is the Pareto index, the log-logistic shape or the log-normal
    sigma. ``scale`` is the Pareto minimum, the log-logistic median or the
    log-normal median ``exp(mu)``.
    """

    kind: str
    shape: float
    scale: float = 1.0

    def __post_init__(self):
        if self.kind not in KINDS:
            raise DomainError(f"unknown distribution kind {self.kind!r}; expected one of {KINDS}")
        if not self.scale > 0:
            raise DomainError(f"scale must be > 0, got {self.scale}")
        if self.kind in ("pareto", "loglogistic") and not self.shape > 1:
            raise DomainError(f"{self.kind} needs shape > 1 for a finite mean, got {self.shape}")
        if self.kind == "lognormal" and not self.shape > 0:
            raise DomainError(f"lognormal needs sigma > 0, got {self.shape}")


@dataclass(frozen=True)
class MatchResult:
    spec: DistributionSpec
    gini: float
    m_equivalent: float
    variance_finite: bool


def normal_cdf(z: float) -> float:
    """Standard normal distribution function."""
    return float(special.ndtr(z))


def normal_ppf(p: float) -> float:
    """Inverse of :func:`normal_cdf` on the open interval (0, 1)."""
    if not 0 < p < 1:
        raise DomainError(f"probability must lie in (0, 1), got {p}")
    return float(special.ndtri(p))


def gini_of(spec: DistributionSpec) -> float:
    if spec.kind == "pareto":
        return 1.0 / (2.0 * spec.shape - 1.0)
    if spec.kind == "loglogistic":
        return 1.0 / spec.shape
    return 2.0 * normal_cdf(spec.shape / math.sqrt(2.0)) - 1.0


def variance_of(spec: DistributionSpec) -> float:
    """Variance of the law, ``inf`` where it diverges."""
    a, s = spec.shape, spec.scale
    if spec.kind == "pareto":
        if a <= 2:
            return math.inf
        return s * s * a / ((a - 1) ** 2 * (a - 2))
    if spec.kind == "loglogistic":
        if a <= 2:
            return math.inf
        b = math.pi / a
        return s * s * (2 * b / math.sin(2 * b) - b * b / math.sin(b) ** 2)
    return s * s * math.expm1(a * a) * math.exp(a * a)


def variance_threshold_in_m(kind: str) -> float:
    """Supremum of the equivalent degree at which the matched law keeps a finite variance."""
    thresholds = {"pareto": 1.0, "loglogistic": 2.0, "lognormal": math.inf}
    try:
        return thresholds[kind]
    except KeyError:
        raise DomainError(f"unknown distribution kind {kind!r}") from None


def variance_finite(kind: str, g: float | Fraction) -> bool:
    """Whether the law matched to Gini ``g`` has finite variance.

    Decided in exact arithmetic on ``g``: the degree threshold ``t`` maps to
    the Gini threshold ``t / (t + 2)``, so a float ``g`` just below ``1/3``
    is correctly treated as finite for Pareto.
    """
    t = variance_threshold_in_m(kind)
    if math.isinf(t):
        return True
    return Fraction(g) < Fraction(t) / (Fraction(t) + 2)


def match_to_gini(kind: str, g: float | Fraction, scale: float = 1.0) -> MatchResult:
    """Shape parameter of ``kind`` whose Gini equals ``g``."""
    if kind not in KINDS:
        raise DomainError(f"unknown distribution kind {kind!r}; expected one of {KINDS}")
    if not 0 < g < 1:
        raise DomainError(f"Gini must lie in (0, 1), got {g}")
    gf = float(g)
    if kind == "pareto":
        shape = (1.0 / gf + 1.0) / 2.0
    elif kind == "loglogistic":
        shape = 1.0 / gf
    else:
        shape = math.sqrt(2.0) * normal_ppf((gf + 1.0) / 2.0)
    return MatchResult(
        spec=DistributionSpec(kind, shape, scale),
        gini=gf,
        m_equivalent=degree_for_gini(gf),
        variance_finite=variance_finite(kind, g),
    )


def sample(spec: DistributionSpec, count: int, seed: int) -> np.ndarray:
    """Draw ``count`` incomes by inverse-CDF transform of seeded uniforms.

    Uniforms come from ``numpy.random.default_rng(seed).random``, which lies
    in ``[0, 1)``; the transforms below stay finite on that range.
    """
    if count < 2:
        raise DomainError(f"count must be >= 2, got {count}")
    u = np.random.default_rng(seed).random(count)
    a, s = spec.shape, spec.scale
    if spec.kind == "pareto":
        return s * (1.0 - u) ** (-1.0 / a)
    if spec.kind == "loglogistic":
        return s * (u / (1.0 - u)) ** (1.0 / a)
    return s * np.exp(a * special.ndtri(u))
