"""The Hanner functional phi(x) = E|sum_k x_k^{1/p} xi_k|^p on positive weights.

Its concavity (p >= 2) or convexity (p <= 2) over (0, inf)^n is equivalent to
the corresponding many-function inequality, so everything downstream reduces
to evaluating phi and its Hessian accurately.
"""

from dataclasses import dataclass

import numpy as np

from .distributions import RandomStream, SphereDist
from .errors import ContractError, DomainError, ResourceError
from .integrate import (
    DEFAULT_TENSOR_BUDGET,
    mc_expectation,
    split_moments,
    tensor_expectation,
)
from .specfun import beta_pd

_ENUM_MAX_N = 24
_ENUM_CHUNK = 1 << 18


@dataclass(frozen=True)
class HannerPoint:
    """Argument of the functional: exponent p >= 1, sphere dimension d >= 1,
    and strictly positive weights x."""

    p: float
    d: int
    x: tuple

    def __post_init__(self):
        if not float(self.p) >= 1.0:
            raise DomainError(f"p must be >= 1, got {self.p}")
        if int(self.d) < 1:
            raise DomainError(f"d must be >= 1, got {self.d}")
        x = tuple(float(v) for v in self.x)
        if len(x) < 1:
            raise DomainError("x must contain at least one weight")
        if any(not v > 0.0 for v in x):
            raise DomainError(f"weights must be strictly positive, got {x}")
        object.__setattr__(self, "p", float(self.p))
        object.__setattr__(self, "d", int(self.d))
        object.__setattr__(self, "x", x)

    @property
    def n(self):
        return len(self.x)

    def coeffs(self):
        """The scaled coefficients x_k^{1/p}."""
        return np.asarray(self.x, dtype=float) ** (1.0 / self.p)


def _is_even_integer(p):
    return p == int(p) and int(p) % 2 == 0


def phi_projected(pt, rule, method="auto", budget=DEFAULT_TENSOR_BUDGET):
    """phi via the one-dimensional projection: beta_{p,d} E|sum x_k^{1/p} theta_k|^p.

    method "plain" uses the tensor rule directly (exact for even integer p),
    "split" integrates the largest-coefficient variable with a rule split at
    the root of the sum, which restores spectral accuracy for non-smooth
    |.|^p.  "auto" picks "plain" for even integer p and "split" otherwise.
    """
    if pt.d < 2:
        raise ContractError("phi_projected requires d >= 2; use phi_rademacher_exact or phi_mc for d = 1")
    if rule.d != pt.d:
        raise ContractError(f"rule dimension {rule.d} does not match point dimension {pt.d}")
    if method == "auto":
        method = "plain" if _is_even_integer(pt.p) else "split"
    c = pt.coeffs()
    b = beta_pd(pt.p, pt.d)
    if method == "plain":
        val = tensor_expectation(
            lambda th: np.abs(th @ c) ** pt.p, rule, pt.n, budget=budget
        )
    elif method == "split":
        val, _, _, _, _ = split_moments(c, pt.p, rule, nmom=1, budget=budget)
    else:
        raise ContractError(f"unknown method {method!r}")
    return b * val


def phi_mc(pt, count, stream):
    """Unbiased Monte Carlo estimate of phi by direct sphere sampling."""
    c = pt.coeffs()
    if pt.d == 1:

        def f(eps):  # eps: (batch, n, 1)
            return np.abs(eps[:, :, 0] @ c) ** pt.p

    else:

        def f(xi):  # xi: (batch, n, d)
            return np.linalg.norm(np.einsum("k,bkd->bd", c, xi), axis=1) ** pt.p

    return mc_expectation(f, SphereDist(pt.d), pt.n, count, stream)


def phi_rademacher_exact(pt):
    """Exact phi for d = 1 by enumeration of all 2^n sign patterns."""
    if pt.d != 1:
        raise ContractError(f"phi_rademacher_exact requires d = 1, got d={pt.d}")
    if pt.n > _ENUM_MAX_N:
        raise ResourceError(f"enumeration over 2^{pt.n} patterns exceeds the n <= {_ENUM_MAX_N} budget")
    c = pt.coeffs()
    n = pt.n
    total = 1 << n
    acc = 0.0
    for start in range(0, total, _ENUM_CHUNK):
        ids = np.arange(start, min(start + _ENUM_CHUNK, total), dtype=np.uint32)
        signs = (((ids[:, None] >> np.arange(n)) & 1) * 2.0 - 1.0)
        acc += float(np.sum(np.abs(signs @ c) ** pt.p))
    return acc / total


def rademacher_sign_patterns(n):
    """All 2^n sign vectors as a (2^n, n) array of +-1; n is capped at the
    enumeration budget."""
    if n > _ENUM_MAX_N:
        raise ResourceError(f"enumeration over 2^{n} patterns exceeds the n <= {_ENUM_MAX_N} budget")
    ids = np.arange(1 << n, dtype=np.uint32)
    return ((ids[:, None] >> np.arange(n)) & 1) * 2.0 - 1.0
