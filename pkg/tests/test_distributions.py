import math

import numpy as np
import pytest
from scipy.integrate import quad
from scipy.special import roots_jacobi

from hanner.distributions import (
    ProjectionDist,
    RandomStream,
    SphereDist,
    projection_density_constant,
    projection_pdf,
    sample_projection,
    sample_sphere,
)
from hanner.errors import DomainError
from hanner.specfun import beta_pd


def test_stream_reproducible():
    a = sample_sphere(SphereDist(3), 100, RandomStream(42, 7))
    b = sample_sphere(SphereDist(3), 100, RandomStream(42, 7))
    c = sample_sphere(SphereDist(3), 100, RandomStream(42, 8))
    assert np.array_equal(a, b)
    assert not np.array_equal(a, c)


def test_substreams_differ():
    s = RandomStream(5, 1)
    a = s.substream(0).generator().standard_normal(8)
    b = s.substream(1).generator().standard_normal(8)
    assert not np.array_equal(a, b)


def test_sphere_d1_rademacher():
    v = sample_sphere(SphereDist(1), 128, RandomStream(0, 0))
    assert set(np.unique(v)) <= {-1.0, 1.0}
    assert v.shape == (128, 1)


def test_sphere_unit_norms():
    v = sample_sphere(SphereDist(3), 2000, RandomStream(1, 0))
    assert np.abs(np.linalg.norm(v, axis=1) - 1.0).max() <= 1e-12


def test_sphere_d2_clt_mean():
    count = 100_000
    v = sample_sphere(SphereDist(2), count, RandomStream(2, 0))
    assert abs(v[:, 0].mean()) <= 4.0 / math.sqrt(count)


def test_sphere_domain():
    with pytest.raises(DomainError):
        SphereDist(0)
    with pytest.raises(DomainError):
        sample_sphere(SphereDist(2), -1, RandomStream(0, 0))


def test_projection_pdf_values():
    assert projection_pdf(0.3, 3) == 0.5
    assert projection_pdf(1.5, 5) == 0.0
    assert abs(projection_pdf(0.0, 2) - 1.0 / math.pi) < 1e-15
    assert projection_pdf(1.0, 2) == math.inf
    assert projection_pdf(-1.0, 2) == math.inf


def test_projection_pdf_even_vectorized():
    t = np.linspace(-0.99, 0.99, 41)
    for d in (2, 3, 4, 7):
        vals = projection_pdf(t, d)
        assert np.array_equal(vals, projection_pdf(-t, d))
        assert np.all(vals >= 0.0)


def test_projection_pdf_normalization():
    # oracle: the raw Jacobi weights integrate (1-t^2)^{(d-3)/2}; scaled by the
    # density constant this must be 1
    for d in range(2, 9):
        a = (d - 3) / 2.0
        _, w = roots_jacobi(40, a, a)
        total = projection_density_constant(d) * w.sum()
        assert abs(total - 1.0) <= 1e-10
    # independent adaptive-integration oracle for the smooth cases
    for d in range(3, 9):
        val = quad(lambda t: projection_pdf(t, d), -1.0, 1.0, limit=200)[0]
        assert abs(val - 1.0) <= 1e-10


def test_projection_sampling_moments():
    count = 100_000
    t = sample_projection(3, count, RandomStream(3, 0))
    se = np.std(t * t, ddof=1) / math.sqrt(count)
    assert abs((t * t).mean() - 1.0 / 3.0) <= 4 * se

    t = sample_projection(5, count, RandomStream(4, 0))
    se = np.std(t**4, ddof=1) / math.sqrt(count)
    assert abs((t**4).mean() - 3.0 / 35.0) <= 4 * se


def test_projection_support_and_symmetry():
    count = 50_000
    for d in (2, 3, 5):
        t = sample_projection(d, count, RandomStream(5, d))
        assert np.abs(t).max() <= 1.0
        # sign-flip check: odd-power means stay within 4 sigma of 0
        for power in (1, 3):
            vals = t**power
            se = np.std(vals, ddof=1) / math.sqrt(count)
            assert abs(vals.mean()) <= 4 * se


def test_d1_moments_match_beta():
    # |theta| = 1 identically when d = 1, consistent with beta_pd(p, 1) = 1
    v = sample_sphere(SphereDist(1), 1000, RandomStream(6, 0))
    for p in (1.0, 2.5, 4.0):
        assert abs(np.mean(np.abs(v[:, 0]) ** p) - 1.0) == 0.0
        assert abs(beta_pd(p, 1) - 1.0) <= 1e-12


def test_projection_dist_domain():
    with pytest.raises(DomainError):
        ProjectionDist(1)
    with pytest.raises(DomainError):
        sample_projection(1, 10, RandomStream(0, 0))
