"""Samplers and densities: uniform sphere vectors, their first-coordinate
projection, and the degenerate d=1 Rademacher case.

Streams are counter-keyed (Philox): a (seed, stream_id) pair fully determines
every draw, independently of thread count or call interleaving, as long as a
single stream is not shared across threads.
"""

import math
from dataclasses import dataclass

import numpy as np

from .errors import DomainError
from .specfun import log_gamma

_MASK64 = (1 << 64) - 1


@dataclass(frozen=True)
class RandomStream:
    seed: int
    stream_id: int = 0

    def generator(self):
        key = np.array(
            [int(self.seed) & _MASK64, int(self.stream_id) & _MASK64], dtype=np.uint64
        )
        return np.random.Generator(np.random.Philox(key=key))

    def substream(self, k):
        """Derived stream k < 2^20; distinct k give independent streams."""
        return RandomStream(self.seed, ((int(self.stream_id) << 20) | int(k)) & _MASK64)


@dataclass(frozen=True)
class SphereDist:
    """Uniform distribution on the unit sphere of R^d; d = 1 is Rademacher."""

    d: int

    def __post_init__(self):
        if int(self.d) < 1:
            raise DomainError(f"sphere dimension must be >= 1, got {self.d}")


@dataclass(frozen=True)
class ProjectionDist:
    """Law of one coordinate of a uniform unit vector in R^d, d >= 2."""

    d: int

    def __post_init__(self):
        if int(self.d) < 2:
            raise DomainError(f"projection requires d >= 2, got {self.d}")


def sample_sphere(dist, count, stream):
    """i.i.d. uniform draws on S^{d-1}, returned as a (count, d) array.

    Gaussian normalization: exactly rotationally invariant, works in any d.
    """
    if count < 0:
        raise DomainError(f"count must be >= 0, got {count}")
    d = int(dist.d)
    rng = stream.generator()
    g = rng.standard_normal((count, d))
    norms = np.linalg.norm(g, axis=1)
    # zero-norm rows have probability 0 but would poison the division
    while np.any(norms == 0.0):
        bad = norms == 0.0
        g[bad] = rng.standard_normal((int(bad.sum()), d))
        norms = np.linalg.norm(g, axis=1)
    return g / norms[:, None]


def projection_density_constant(d):
    """Normalizing constant Gamma(d/2) / (sqrt(pi) Gamma((d-1)/2)) of the projection density."""
    d = int(d)
    if d < 2:
        raise DomainError(f"projection density requires d >= 2, got {d}")
    return math.exp(log_gamma(d / 2.0) - log_gamma((d - 1) / 2.0)) / math.sqrt(math.pi)


def projection_pdf(t, d):
    """Density c_d (1 - t^2)^{(d-3)/2} of the projection on |t| <= 1, zero outside.

    For d = 2 the density has poles at t = +-1; those points return +inf and
    must only ever be integrated with pole-aware (Gauss-Jacobi) weights.
    """
    c = projection_density_constant(d)
    t_arr = np.asarray(t, dtype=float)
    expo = (int(d) - 3) / 2.0
    inside = np.abs(t_arr) <= 1.0
    with np.errstate(divide="ignore"):
        body = np.where(inside, 1.0 - t_arr * t_arr, 1.0) ** expo
    val = np.where(inside, c * body, 0.0)
    if np.ndim(t) == 0:
        return float(val)
    return val


def sample_projection(d, count, stream):
    """i.i.d. draws of the projection law: coordinate one of a sphere sample."""
    if int(d) < 2:
        raise DomainError(f"sample_projection requires d >= 2, got {d}")
    return sample_sphere(SphereDist(int(d)), count, stream)[:, 0]
