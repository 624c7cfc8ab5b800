import math

import numpy as np
import pytest
from scipy.integrate import quad

from hanner.errors import AccuracyError, DomainError, SingularityError
from hanner.integrate import split_moments
from hanner.specfun import PExponent, beta_pd, g_q, gen_binom, h_q, h_q_prime, log_gamma


def test_pexponent_derives_q():
    e = PExponent(p=3.5)
    assert e.q == 1.5
    with pytest.raises(DomainError):
        PExponent(p=0.9)


def test_log_gamma_golden():
    assert log_gamma(1.0) == 0.0
    assert abs(log_gamma(0.5) - math.log(math.sqrt(math.pi))) < 1e-12
    assert abs(log_gamma(6.0) - math.log(120.0)) < 1e-12


def test_log_gamma_accuracy_grid():
    # 12 significant digits against scipy's independent implementation
    from scipy.special import gammaln

    for x in np.linspace(0.5, 50.0, 67):
        want = float(gammaln(x))
        assert abs(log_gamma(float(x)) - want) <= 1e-12 * max(1.0, abs(want))


def test_log_gamma_domain():
    with pytest.raises(DomainError):
        log_gamma(0.0)
    with pytest.raises(DomainError):
        log_gamma(-2.5)


def test_beta_p2_is_d():
    for d in range(1, 11):
        assert abs(beta_pd(2.0, d) - d) <= 1e-12 * d


def test_beta_d1_is_one():
    for p in (-0.5, 0.0, 1.0, 2.5, 4.0, 10.0):
        assert abs(beta_pd(p, 1) - 1.0) <= 1e-12


def test_beta_4_2_oracle():
    # oracle: reciprocal angular average of |cos|^4
    moment = quad(lambda t: math.cos(t) ** 4 / (2 * math.pi), 0, 2 * math.pi)[0]
    assert abs(1.0 / moment - 8.0 / 3.0) < 1e-10
    assert abs(beta_pd(4.0, 2) - 8.0 / 3.0) < 1e-12


def test_beta_domain():
    with pytest.raises(DomainError):
        beta_pd(-1.0, 3)
    with pytest.raises(DomainError):
        beta_pd(2.0, 0)


def test_gen_binom_golden():
    assert gen_binom(-2.7, 0) == 1.0
    assert gen_binom(1.0, 1) == 1.0
    assert gen_binom(0.5, 2) == -0.125


def test_gen_binom_integer_cases():
    # terminates exactly for integer alpha
    assert gen_binom(3.0, 2) == 3.0
    assert gen_binom(3.0, 4) == 0.0
    assert abs(gen_binom(-1.0, 3) - (-1.0)) < 1e-15


def test_g_q_golden():
    assert g_q(0.0, 0.7) == 1.0
    assert abs(g_q(0.5, 2.0) - 1.25) < 1e-13
    assert abs(g_q(1.0, 1.0, tol=1e-11) - 4.0 / math.pi) < 1e-9


def test_g_q_series_matches_quadrature():
    # series and direct angular quadrature agree inside the unit disk
    for q in (-0.5, 0.5, 1.0, 3.0):
        for x in (0.1, 0.5, 0.9):
            series = g_q(x, q, tol=1e-13) if x <= 0.85 else None
            direct = quad(
                lambda t: (x * x + 2 * x * math.cos(t) + 1.0) ** (q / 2.0) / math.pi,
                0.0,
                math.pi,
                epsabs=1e-13,
                limit=300,
            )[0]
            got = g_q(x, q, tol=1e-13)
            assert abs(got - direct) < 1e-10
            if series is not None:
                assert abs(series - direct) < 1e-10


def test_g_q_increasing_lemma():
    # strictly increasing for q > 0 on a grid avoiding x = 1 by 1e-3
    for q in (0.5, 1.0, 3.0):
        grid = [x for x in np.linspace(0.0, 3.0, 61) if abs(x - 1.0) > 1e-3]
        vals = [g_q(float(x), q, tol=1e-12) for x in grid]
        diffs = np.diff(vals)
        assert np.all(diffs > -1e-11), f"q={q}: min diff {diffs.min()}"


def test_g_q_negative_power_unimodal_in_reverse():
    # q in (-1, 0): increasing on (0, 1), decreasing on (1, inf)
    q = -0.5
    lo = [g_q(float(x), q, tol=1e-12) for x in np.linspace(0.0, 0.999, 40)]
    hi = [g_q(float(x), q, tol=1e-12) for x in np.linspace(1.001, 3.0, 40)]
    assert np.all(np.diff(lo) > -1e-11)
    assert np.all(np.diff(hi) < 1e-11)


def test_g_q_domain():
    with pytest.raises(DomainError):
        g_q(0.5, -1.0)
    with pytest.raises(DomainError):
        g_q(-0.1, 1.0)


def test_g_q_series_budget_error_carries_estimate():
    import hanner.specfun as sf

    old = sf._SERIES_MAX_TERMS
    sf._SERIES_MAX_TERMS = 3
    try:
        with pytest.raises(AccuracyError) as err:
            g_q(0.85, 0.3, tol=1e-15)
        assert err.value.estimate > 0.0
    finally:
        sf._SERIES_MAX_TERMS = old


def test_h_q_golden():
    q = 1.3
    assert abs(h_q(0.0, q) - 1.0 / (q + 1.0)) < 1e-15
    assert abs(h_q(1.0, 2.0) - 4.0 / 3.0) < 1e-15
    oracle = quad(lambda u: 0.5 * abs(2.0 + u) ** -0.5, -1.0, 1.0)[0]
    assert abs(oracle - (math.sqrt(3.0) - 1.0)) < 1e-10
    assert abs(h_q(2.0, -0.5) - (math.sqrt(3.0) - 1.0)) < 1e-13


def test_h_q_even_and_monotone():
    xs = np.linspace(0.0, 4.0, 81)
    for q in (-0.7, -0.3, 0.5, 2.0):
        vals = h_q(xs, q)
        assert np.array_equal(vals, h_q(-xs, q))
        diffs = np.diff(vals)
        if q < 0:
            assert np.all(diffs <= 1e-14)
        else:
            assert np.all(diffs >= -1e-14)


def test_h_q_prime_golden():
    assert h_q_prime(2.0, 1.0) == 1.0
    assert h_q_prime(0.5, 0.0) == 0.0
    want = (1.5**-0.5 - 0.5**-0.5) / 2.0
    assert abs(h_q_prime(0.5, -0.5) - want) < 1e-14
    fd = (h_q(0.5 + 1e-6, -0.5) - h_q(0.5 - 1e-6, -0.5)) / 2e-6
    assert abs(fd - want) < 1e-7


def test_h_q_prime_signs():
    for x in (0.3, 0.9, 1.5, 2.5):
        assert h_q_prime(x, -0.5) < 0.0
        assert h_q_prime(x, 1.7) > 0.0


def test_h_q_prime_singularity():
    with pytest.raises(SingularityError):
        h_q_prime(1.0, -0.5)
    assert h_q_prime(1.0, 2.0) == (2.0**2.0 - 0.0) / 2.0


def test_embedding_identity(rule_for, rng):
    # beta_{p,d} E|<x, eta>|^p = |x|^p, via quadrature of |t|^p against the
    # projection density (split rule: the integrand has a kink at 0)
    for p in (1.0, 2.5, 4.0):
        for d in (2, 3, 5):
            rule = rule_for(32, d)
            moment, _, _, _, _ = split_moments(np.array([1.0]), p, rule, nmom=1)
            for _ in range(4):
                x = rng.standard_normal(d) * rng.uniform(0.5, 2.0)
                r = float(np.linalg.norm(x))
                got = beta_pd(p, d) * (r**p) * moment
                assert abs(got - r**p) <= 1e-8 * r**p
