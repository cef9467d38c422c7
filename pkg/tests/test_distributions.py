import math
from fractions import Fraction

import numpy as np
import pytest

from gradgini.errors import DomainError
from gradgini.estimators import gini_sorted
from gradgini.distributions import (
    KINDS,
    DistributionSpec,
    gini_of,
    match_to_gini,
    normal_cdf,
    normal_ppf,
    sample,
    variance_finite,
    variance_of,
    variance_threshold_in_m,
)

GRID = np.linspace(0.01, 0.95, 20)


def series_normal_cdf(z: float) -> float:
    """Phi(z) = 1/2 + phi(z) * sum_k z^(2k+1) / (1*3*...*(2k+1))."""
    term, total, k = z, z, 0
    while abs(term) > 1e-18 * abs(total):
        k += 1
        term *= z * z / (2 * k + 1)
        total += term
    return 0.5 + math.exp(-z * z / 2) / math.sqrt(2 * math.pi) * total


@pytest.mark.parametrize("z", [-4.0, -1.3, -0.2, 0.0, 0.7, 1.96, 3.5])
def test_normal_cdf_against_series(z):
    assert abs(normal_cdf(z) - series_normal_cdf(z)) <= 1e-10


def test_normal_cdf_examples():
    assert normal_cdf(0.0) == 0.5
    assert normal_cdf(1.96) == pytest.approx(0.9750021, abs=1e-6)
    assert normal_ppf(0.5) == 0.0


@pytest.mark.parametrize("p", [1e-9, 0.01, 0.3, 0.5, 0.7115, 0.99, 1 - 1e-9])
def test_normal_ppf_inverts(p):
    assert abs(normal_cdf(normal_ppf(p)) - p) <= 1e-8


@pytest.mark.parametrize("p", [0.0, 1.0, -0.2, 1.5])
def test_normal_ppf_domain(p):
    with pytest.raises(DomainError):
        normal_ppf(p)


@pytest.mark.parametrize(
    "kind,shape",
    [("pareto", 1.0), ("pareto", 0.5), ("loglogistic", 1.0), ("lognormal", 0.0), ("weibull", 2.0)],
)
def test_spec_invariants(kind, shape):
    with pytest.raises(DomainError):
        DistributionSpec(kind, shape)


def test_gini_closed_forms():
    assert gini_of(DistributionSpec("pareto", 2.0)) == pytest.approx(1 / 3)
    assert gini_of(DistributionSpec("loglogistic", 2.0)) == 0.5
    assert gini_of(DistributionSpec("lognormal", 1e-9)) == pytest.approx(0.0, abs=1e-9)
    # 2 Phi(s / sqrt 2) - 1 == erf(s / 2)
    for s in (0.3, 1.0, 2.5):
        assert gini_of(DistributionSpec("lognormal", s)) == pytest.approx(math.erf(s / 2), abs=1e-14)


@pytest.mark.parametrize("kind", KINDS)
def test_scale_does_not_change_gini(kind):
    a = gini_of(DistributionSpec(kind, 2.5, 1.0))
    b = gini_of(DistributionSpec(kind, 2.5, 37.0))
    assert abs(a - b) <= 1e-12


def test_match_examples():
    r = match_to_gini("pareto", Fraction(1, 3))
    assert r.spec.shape == pytest.approx(2.0, abs=1e-15)
    assert r.variance_finite is False
    r = match_to_gini("loglogistic", 0.5)
    assert r.spec.shape == 2.0
    assert r.variance_finite is False
    r = match_to_gini("lognormal", 0.423)
    assert r.spec.shape == pytest.approx(math.sqrt(2) * normal_ppf(0.7115), abs=1e-12)
    assert r.variance_finite is True
    assert r.m_equivalent == pytest.approx(2 * 0.423 / 0.577)


@pytest.mark.parametrize("g", [0.0, 1.0, -0.5, 1.2])
def test_match_domain(g):
    with pytest.raises(DomainError):
        match_to_gini("pareto", g)
    with pytest.raises(DomainError):
        match_to_gini("cauchy", 0.5)


@pytest.mark.parametrize("kind", KINDS)
def test_match_round_trip(kind):
    for g in GRID:
        r = match_to_gini(kind, g)
        assert abs(gini_of(r.spec) - g) <= 1e-9
        assert r.m_equivalent == pytest.approx(2 * g / (1 - g), rel=1e-15)


def test_thresholds():
    assert variance_threshold_in_m("pareto") == 1
    assert variance_threshold_in_m("loglogistic") == 2
    assert variance_threshold_in_m("lognormal") == math.inf
    with pytest.raises(DomainError):
        variance_threshold_in_m("gamma")


@pytest.mark.parametrize("kind", KINDS)
def test_threshold_consistency(kind):
    grid = [Fraction(k, 100) for k in range(1, 100)] + list(GRID)
    for g in grid:
        r = match_to_gini(kind, g)
        m_exact = 2 * Fraction(g) / (1 - Fraction(g))
        assert r.variance_finite == (m_exact < variance_threshold_in_m(kind))
        # the flag also agrees with the variance formula away from the boundary
        if abs(float(m_exact) - variance_threshold_in_m(kind)) > 1e-9:
            assert r.variance_finite == math.isfinite(variance_of(r.spec))


def test_variance_finite_near_boundary_in_floats():
    assert variance_finite("pareto", 1 / 3) is True  # float 1/3 sits just below 1/3
    assert variance_finite("pareto", Fraction(1, 3)) is False


def test_variance_formulas_against_samples():
    # second-moment check on finite-variance laws
    for spec in (DistributionSpec("pareto", 5.0), DistributionSpec("loglogistic", 6.0), DistributionSpec("lognormal", 0.5)):
        x = sample(spec, 400_000, 11)
        assert np.var(x) == pytest.approx(variance_of(spec), rel=0.05)


def test_lognormal_variance_increases_with_degree():
    v = [variance_of(match_to_gini("lognormal", g).spec) for g in GRID]
    assert all(b > a for a, b in zip(v, v[1:]))


def test_sample_reproducible():
    spec = DistributionSpec("lognormal", 0.8, 3.0)
    np.testing.assert_array_equal(sample(spec, 1000, 5), sample(spec, 1000, 5))
    assert not np.array_equal(sample(spec, 1000, 5), sample(spec, 1000, 6))
    with pytest.raises(DomainError):
        sample(spec, 1, 5)


@pytest.mark.parametrize("kind", KINDS)
def test_sample_scale_and_support(kind):
    x = sample(DistributionSpec(kind, 2.5, 4.0), 10_000, 3)
    assert np.all(np.isfinite(x)) and np.all(x >= 0)
    if kind == "pareto":
        assert x.min() >= 4.0
    else:
        assert np.median(x) == pytest.approx(4.0, rel=0.05)


@pytest.mark.slow
@pytest.mark.parametrize(
    "spec,count,seed,tol",
    [
        (DistributionSpec("pareto", 2.0), 10**6, 42, 0.01),
        (DistributionSpec("lognormal", 1.0), 10**6, 7, 0.01),
        (DistributionSpec("loglogistic", 4.0), 10**5, 1, 0.02),
    ],
)
def test_monte_carlo_examples(spec, count, seed, tol):
    assert abs(gini_sorted(sample(spec, count, seed)) - gini_of(spec)) <= tol


FINITE_VARIANCE = {
    "pareto": [2.2 + 0.3 * k for k in range(10)],
    "loglogistic": [2.2 + 0.4 * k for k in range(10)],
    "lognormal": [0.2 + 0.2 * k for k in range(10)],
}


@pytest.mark.slow
@pytest.mark.parametrize("kind", KINDS)
def test_monte_carlo_finite_variance(kind):
    for k, shape in enumerate(FINITE_VARIANCE[kind]):
        spec = DistributionSpec(kind, shape)
        assert abs(gini_sorted(sample(spec, 10**6, 100 + k)) - gini_of(spec)) <= 0.01


@pytest.mark.slow
def test_monte_carlo_infinite_variance_pareto():
    for k in range(1, 11):
        spec = DistributionSpec("pareto", 1.2 + 0.08 * k)
        assert abs(gini_sorted(sample(spec, 10**6, 200 + k)) - gini_of(spec)) <= 0.03
