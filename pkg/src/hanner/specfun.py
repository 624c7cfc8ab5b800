"""Special functions: log-gamma, generalized binomials, the sphere moment
constant beta_{p,d}, the circle average g_q and the uniform-kernel average h_q.

All functions are pure and safe to call from multiple threads.
"""

import math
from dataclasses import dataclass

import numpy as np
from scipy.integrate import quad as _adaptive_quad

from .errors import AccuracyError, DomainError, SingularityError

_LOG_SQRT_PI = 0.5 * math.log(math.pi)

# branch switches for g_q; the series converges too slowly near x = 1
_SERIES_CUTOFF = 0.85
_QUADRATURE_CUTOFF = 1.15
_SERIES_MAX_TERMS = 200_000


@dataclass(frozen=True)
class PExponent:
    """Norm exponent p >= 1; the shift q = p - 2 is always derived, never stored."""

    p: float

    def __post_init__(self):
        if not self.p >= 1.0:
            raise DomainError(f"exponent p must satisfy p >= 1, got {self.p}")

    @property
    def q(self):
        return self.p - 2.0


def log_gamma(x):
    """ln Gamma(x) for x > 0."""
    if not x > 0:
        raise DomainError(f"log_gamma requires x > 0, got {x}")
    return math.lgamma(x)


def beta_pd(p, d):
    """Reciprocal of E|<xi, e1>|^p for xi uniform on the unit sphere of R^d.

    Equals sqrt(pi) Gamma((d+p)/2) / (Gamma(d/2) Gamma((p+1)/2)).
    Defined for p > -1 (the moment diverges at p = -1) and integer d >= 1.
    """
    if not p > -1.0:
        raise DomainError(f"beta_pd requires p > -1, got p={p}")
    d = int(d)
    if d < 1:
        raise DomainError(f"beta_pd requires d >= 1, got d={d}")
    return math.exp(
        _LOG_SQRT_PI
        + math.lgamma((d + p) / 2.0)
        - math.lgamma(d / 2.0)
        - math.lgamma((p + 1.0) / 2.0)
    )


def gen_binom(alpha, k):
    """Generalized binomial coefficient binom(alpha, k) = alpha(alpha-1)...(alpha-k+1)/k!.

    Direct falling-factorial product; gamma-ratio forms misbehave at the
    non-positive half-integers that alpha = q/2 routinely hits.
    """
    k = int(k)
    if k < 0:
        raise DomainError(f"gen_binom requires k >= 0, got k={k}")
    out = 1.0
    for j in range(k):
        out *= (alpha - j) / (j + 1.0)
    return out


def _g_q_series(x, q, tol):
    # g_q(x) = sum_n binom(q/2, n)^2 x^{2n} for 0 <= x < 1
    x2 = x * x
    term = 1.0
    total = 1.0
    coef = 1.0  # binom(q/2, n)
    tail_scale = 1.0 / (1.0 - x2)
    for n in range(_SERIES_MAX_TERMS):
        coef *= (q / 2.0 - n) / (n + 1.0)
        term = coef * coef * x2 ** (n + 1)
        if term == 0.0:
            return total
        if abs(term) * tail_scale < tol:
            return total + term
        total += term
    raise AccuracyError(
        f"g_q series did not reach tol={tol} within {_SERIES_MAX_TERMS} terms",
        estimate=total,
    )


def _g_q_angular(x, q, tol):
    # (1/pi) * integral_0^pi (x^2 + 2x cos t + 1)^{q/2} dt; the integrand has an
    # integrable algebraic singularity at t = pi when x = 1 and q < 0
    def integrand(t):
        return (x * x + 2.0 * x * math.cos(t) + 1.0) ** (q / 2.0)

    value, err = _adaptive_quad(
        integrand, 0.0, math.pi, epsabs=tol * math.pi / 4.0, epsrel=1e-13, limit=500
    )
    if err > tol * math.pi:
        raise AccuracyError(
            f"g_q angular quadrature error estimate {err / math.pi:.3e} exceeds tol={tol}",
            estimate=value / math.pi,
        )
    return value / math.pi


def g_q(x, q, tol=1e-12):
    """Average of |x + xi|^q over xi uniform on the unit circle, for x >= 0.

    Series evaluation below x = 0.85, angular quadrature above; g_q(0) = 1.
    """
    if not q > -1.0:
        raise DomainError(f"g_q requires q > -1, got q={q}")
    if not x >= 0.0:
        raise DomainError(f"g_q requires x >= 0, got x={x}")
    if not tol > 0.0:
        raise DomainError(f"g_q requires tol > 0, got tol={tol}")
    if x == 0.0:
        return 1.0
    if x <= _SERIES_CUTOFF:
        return _g_q_series(x, q, tol)
    # both the smooth far branch and the near-1 region go through the adaptive
    # integrator; past x = 1.15 it converges in a handful of panels
    return _g_q_angular(x, q, tol)


def h_q(x, q):
    """Average of |x + U|^q over U uniform on [-1, 1]; even in x.

    Closed form ((x+1)^{q+1} - sgn(x-1)|x-1|^{q+1}) / (2(q+1)) for x >= 0.
    """
    if not q > -1.0:
        raise DomainError(f"h_q requires q > -1, got q={q}")
    ax = np.abs(np.asarray(x, dtype=float))
    e = q + 1.0
    val = ((ax + 1.0) ** e - np.sign(ax - 1.0) * np.abs(ax - 1.0) ** e) / (2.0 * e)
    if np.ndim(x) == 0:
        return float(val)
    return val


def h_q_prime(x, q):
    """Derivative of h_q on (0, infinity): ((x+1)^q - |x-1|^q) / 2."""
    if not q > -1.0:
        raise DomainError(f"h_q_prime requires q > -1, got q={q}")
    if not x > 0.0:
        raise DomainError(f"h_q_prime requires x > 0, got x={x}")
    if x == 1.0 and q < 0.0:
        raise SingularityError("h_q' has a singularity at x = 1 for q < 0")
    if q == 0.0:
        return 0.0
    return ((x + 1.0) ** q - abs(x - 1.0) ** q) / 2.0
