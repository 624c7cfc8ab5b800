"""Expectation engine: Gauss-Jacobi rules matched to the projection density,
tensor-product quadrature, singularity-split quadrature for negative powers,
and Monte Carlo estimation with standard errors.

Vectorization contract used throughout the package: integrand callables accept
an ndarray whose last axis indexes the n variables, shape (..., n), and return
values of shape (...).
"""

import math
from dataclasses import dataclass
from functools import lru_cache

import numpy as np
from scipy.special import roots_jacobi

from .distributions import ProjectionDist, SphereDist, projection_density_constant
from .errors import ContractError, DomainError, NumericError, ResourceError

DEFAULT_TENSOR_BUDGET = 10**7
_CHUNK_ROWS = 1 << 14


@dataclass(frozen=True)
class QuadratureRule:
    """Probability quadrature rule for the projection density of dimension d.

    Weights sum to one; expectations are taken directly as weighted sums.
    """

    nodes: np.ndarray
    weights: np.ndarray
    d: int

    def __post_init__(self):
        nodes = np.asarray(self.nodes, dtype=float)
        weights = np.asarray(self.weights, dtype=float)
        if nodes.shape != weights.shape or nodes.ndim != 1:
            raise ContractError("nodes and weights must be 1-d arrays of equal length")
        if not np.all(np.diff(nodes) > 0.0):
            raise ContractError("nodes must be strictly increasing")
        if not np.all(weights > 0.0):
            raise ContractError("weights must be positive")
        if abs(weights.sum() - 1.0) > 1e-12:
            raise ContractError("weights must sum to 1 within 1e-12")
        object.__setattr__(self, "nodes", nodes)
        object.__setattr__(self, "weights", weights)

    @property
    def m(self):
        return len(self.nodes)


@dataclass(frozen=True)
class EstimateWithError:
    """Monte Carlo estimate: value, standard error of the mean, sample count."""

    value: float
    std_error: float
    samples: int


@lru_cache(maxsize=512)
def _jacobi_nodes(m, alpha, beta):
    # raw rule for weight (1-u)^alpha (1+u)^beta on [-1, 1]
    try:
        x, w = roots_jacobi(m, alpha, beta)
    except Exception as exc:  # pragma: no cover - scipy solver failure
        raise NumericError(f"Jacobi node solver failed for m={m}, a={alpha}, b={beta}: {exc}")
    if not np.all(np.isfinite(x)) or not np.all(np.isfinite(w)):
        raise NumericError(f"Jacobi node solver returned non-finite output for m={m}")
    return x, w


def gauss_jacobi_rule(m, d):
    """m-node probability rule exact for polynomial moments of degree <= 2m-1
    against the projection density (Jacobi exponents (d-3)/2 on both ends)."""
    m = int(m)
    if m < 1:
        raise DomainError(f"gauss_jacobi_rule requires m >= 1, got {m}")
    d = int(d)
    if d < 2:
        raise DomainError(f"gauss_jacobi_rule requires d >= 2, got {d}")
    a = (d - 3) / 2.0
    x, w = _jacobi_nodes(m, a, a)
    # enforce the exact symmetry of the density; the solver is symmetric only
    # to rounding
    x = 0.5 * (x - x[::-1])
    w = 0.5 * (w + w[::-1])
    w = w / w.sum()
    return QuadratureRule(nodes=x, weights=w, d=d)


def _check_budget(total, budget, label):
    if total > budget:
        raise ResourceError(f"{label} = {total} quadrature points exceeds budget {budget}")


def tensor_expectation(f, rule, n, budget=DEFAULT_TENSOR_BUDGET):
    """E f(theta_1, ..., theta_n) for i.i.d. theta with the rule's law.

    Full tensor product, evaluated in fixed-order chunks so results do not
    depend on thread count.
    """
    n = int(n)
    if n < 1:
        raise DomainError(f"tensor_expectation requires n >= 1, got {n}")
    m = rule.m
    total = m**n
    _check_budget(total, budget, f"{m}^{n}")
    shape = (m,) * n
    acc = 0.0
    for start in range(0, total, _CHUNK_ROWS):
        idx = np.arange(start, min(start + _CHUNK_ROWS, total))
        multi = np.unravel_index(idx, shape)
        pts = np.stack([rule.nodes[ix] for ix in multi], axis=-1)
        w = np.ones(len(idx))
        for ix in multi:
            w *= rule.weights[ix]
        acc += float(np.sum(w * np.asarray(f(pts), dtype=float)))
    return acc


def _outer_chunks(rule, k, budget):
    """Iterate the k-fold tensor grid as (points, weights) chunks; k may be 0."""
    if k == 0:
        yield np.zeros((1, 0)), np.ones(1)
        return
    m = rule.m
    total = m**k
    _check_budget(total, budget, f"{m}^{k}")
    shape = (m,) * k
    for start in range(0, total, _CHUNK_ROWS):
        idx = np.arange(start, min(start + _CHUNK_ROWS, total))
        multi = np.unravel_index(idx, shape)
        pts = np.stack([rule.nodes[ix] for ix in multi], axis=-1)
        w = np.ones(len(idx))
        for ix in multi:
            w *= rule.weights[ix]
        yield pts, w


def _split_inner_rows(coeffs, expo, rule, outer_pts, shift=0.0):
    """Inner nodes/weights for one chunk of outer points.

    For each outer row with sum s, returns nodes T and weights V of a rule such
    that sum_k V[r,k] g(T[r,k]) ~= E_theta[|c_in theta + s_r + shift|^expo g(theta)],
    theta following the rule's projection law.  Rows whose singular root
    -(s+shift)/c_in lies inside (-1,1) get a two-piece power-weighted rule that
    absorbs the |.|^expo factor exactly; other rows fall back to the plain rule.
    Arrays are 2m wide; fallback rows are zero-padded.
    """
    c = np.asarray(coeffs, dtype=float)
    inner = int(np.argmax(c))
    outer_ix = [k for k in range(len(c)) if k != inner]
    cin = c[inner]
    d = rule.d
    a = (d - 3) / 2.0
    cd = projection_density_constant(d)
    m = rule.m

    s = (outer_pts @ c[outer_ix] if outer_ix else np.zeros(len(outer_pts))) + shift
    tstar = -s / cin
    rows = len(s)
    T = np.zeros((rows, 2 * m))
    V = np.zeros((rows, 2 * m))

    inside = np.abs(tstar) < 1.0
    idx = np.nonzero(inside)[0]
    if idx.size:
        ts = tstar[idx][:, None]
        uR, vR = _jacobi_nodes(m, a, expo)
        uL, vL = _jacobi_nodes(m, expo, a)
        # right piece [t*, 1]: weight (1-u)^a (1+u)^expo after the affine map
        h = 1.0 - ts
        t = ts + 0.5 * h * (1.0 + uR[None, :])
        T[idx, :m] = t
        V[idx, :m] = (cin**expo) * cd * (0.5 * h) ** (expo + a + 1.0) * vR[None, :] * (1.0 + t) ** a
        # left piece [-1, t*]: weight (1-u)^expo (1+u)^a
        h = ts + 1.0
        t = -1.0 + 0.5 * h * (1.0 + uL[None, :])
        T[idx, m:] = t
        V[idx, m:] = (cin**expo) * cd * (0.5 * h) ** (expo + a + 1.0) * vL[None, :] * (1.0 - t) ** a
    idx = np.nonzero(~inside)[0]
    if idx.size:
        t = np.broadcast_to(rule.nodes, (idx.size, m))
        T[idx, :m] = t
        V[idx, :m] = rule.weights[None, :] * np.abs(cin * t + s[idx][:, None]) ** expo
    return T, V, inner, outer_ix


def split_moments(coeffs, expo, rule, nmom=3, shift=0.0, budget=DEFAULT_TENSOR_BUDGET):
    """Reductions of E[|sum_j c_j theta_j + shift|^expo * (inner moments)].

    Returns (M0, M1, M2c, inner, outer_ix) where, writing t for the inner
    variable and o for the outer vector,

      M0          = E[|.|^expo]
      M1[j]       = E[|.|^expo o_j],            M1[-1]      = E[|.|^expo t]
      M2c[j,k]    = E[|.|^expo o_j o_k],        M2c[j,-1]   = E[|.|^expo o_j t],
      M2c[-1,-1]  = E[|.|^expo t^2]

    with outer indices in the order of outer_ix.  nmom limits how much is
    accumulated: 1 gives only M0 (M1, M2c are None).
    """
    c = np.asarray(coeffs, dtype=float)
    n = len(c)
    if np.any(c <= 0.0):
        raise DomainError("coefficients must be strictly positive")
    k_out = n - 1
    m = rule.m
    _check_budget((m**k_out) * 2 * m, budget, f"{m}^{k_out} * {2 * m}")
    M0 = 0.0
    M1 = np.zeros(k_out + 1) if nmom >= 2 else None
    M2 = np.zeros((k_out + 1, k_out + 1)) if nmom >= 3 else None
    inner = outer_ix = None
    for O, W in _outer_chunks(rule, k_out, budget):
        T, V, inner, outer_ix = _split_inner_rows(c, expo, rule, O, shift=shift)
        s0 = V.sum(axis=1)
        M0 += float(np.sum(W * s0))
        if nmom >= 2:
            s1 = np.sum(V * T, axis=1)
            M1[:k_out] += np.einsum("r,r,ri->i", W, s0, O)
            M1[k_out] += float(np.sum(W * s1))
        if nmom >= 3:
            s2 = np.sum(V * T * T, axis=1)
            M2[:k_out, :k_out] += np.einsum("r,r,ri,rj->ij", W, s0, O, O)
            M2[:k_out, k_out] += np.einsum("r,r,ri->i", W, s1, O)
            M2[k_out, k_out] += float(np.sum(W * s2))
    if nmom >= 3:
        M2[k_out, :k_out] = M2[:k_out, k_out]
    return M0, M1, M2, inner, outer_ix


def singular_expectation(prefactor, coeffs, q, rule, shift=0.0, budget=DEFAULT_TENSOR_BUDGET):
    """E[|sum_j c_j theta_j + shift|^q * prefactor(theta)] for q in (-1, 0).

    The variable with the largest coefficient is integrated with a rule split
    at the root of the sum, restoring spectral accuracy despite the negative
    power; the remaining variables are tensored.  prefactor follows the module
    vectorization contract ((..., n) -> (...)); pass None for prefactor == 1.
    """
    if not (-1.0 < q < 0.0):
        raise ContractError(f"singular_expectation requires q in (-1, 0), got q={q}")
    c = np.asarray(coeffs, dtype=float)
    if c.ndim != 1 or len(c) < 1:
        raise DomainError("coeffs must be a non-empty 1-d sequence")
    if np.any(c <= 0.0):
        raise DomainError("coefficients must be strictly positive")
    n = len(c)
    if prefactor is None:
        M0, _, _, _, _ = split_moments(c, q, rule, nmom=1, shift=shift, budget=budget)
        return M0
    m = rule.m
    _check_budget((m ** (n - 1)) * 2 * m, budget, f"{m}^{n - 1} * {2 * m}")
    acc = 0.0
    for O, W in _outer_chunks(rule, n - 1, budget):
        T, V, inner, outer_ix = _split_inner_rows(c, q, rule, O, shift=shift)
        rows, width = T.shape
        theta = np.empty((rows, width, n))
        for col, g in enumerate(outer_ix):
            theta[:, :, g] = O[:, col][:, None]
        theta[:, :, inner] = T
        vals = np.asarray(prefactor(theta), dtype=float)
        acc += float(np.sum(W * np.sum(V * vals, axis=1)))
    return acc


_MC_CHUNK = 1 << 18


def mc_expectation(f, dist, n, count, stream):
    """Monte Carlo mean and standard error of f over count i.i.d. n-tuples.

    For a SphereDist, f receives an array of shape (batch, n, d); for a
    ProjectionDist, shape (batch, n).
    """
    n = int(n)
    count = int(count)
    if count < 2:
        raise DomainError(f"mc_expectation requires count >= 2, got {count}")
    if isinstance(dist, SphereDist):
        d = int(dist.d)
        sphere = True
    elif isinstance(dist, ProjectionDist):
        d = int(dist.d)
        sphere = False
    else:
        raise ContractError(f"unsupported distribution {dist!r}")
    values = np.empty(count)
    rng = stream.generator()
    pos = 0
    while pos < count:
        batch = min(_MC_CHUNK, count - pos)
        g = rng.standard_normal((batch * n, d))
        norms = np.linalg.norm(g, axis=1)
        while np.any(norms == 0.0):
            bad = norms == 0.0
            g[bad] = rng.standard_normal((int(bad.sum()), d))
            norms = np.linalg.norm(g, axis=1)
        pts = (g / norms[:, None]).reshape(batch, n, d)
        if not sphere:
            pts = pts[:, :, 0]
        values[pos : pos + batch] = np.asarray(f(pts), dtype=float)
        pos += batch
    mean = float(np.mean(values))
    std_err = float(np.std(values, ddof=1) / math.sqrt(count))
    return EstimateWithError(value=mean, std_error=std_err, samples=count)
