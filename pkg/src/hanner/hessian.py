"""Analytic Hessian of the Hanner functional: cross expectations, quadratic
forms, the full matrix, a finite-difference oracle, and semidefiniteness
verdicts via cyclic Jacobi rotations.

The cross expectations are the raw moments

    E_{k,l} = gamma_{k,l} = E[|sum_j x_j^{1/p} theta_j|^{p-2} theta_k theta_l];

the Hessian assembly multiplies in beta_{p,d} so that the matrix is the
Hessian of phi_projected (and of phi itself), which is what the
finite-difference oracle sees.
"""

from dataclasses import dataclass

import numpy as np

from .distributions import RandomStream
from .errors import ContractError, DomainError, ResourceError
from .functional import HannerPoint, rademacher_sign_patterns
from .integrate import DEFAULT_TENSOR_BUDGET, split_moments
from .specfun import beta_pd

_JACOBI_MAX_N = 16
# below this p the negative power p-2 is so close to -1 that quadrature and
# Monte Carlo both lose control; verdicts are demoted to INCONCLUSIVE
MIN_TRUSTED_P = 1.05

VERDICT_NSD = "NSD"
VERDICT_PSD = "PSD"
VERDICT_INDEFINITE = "INDEFINITE"
VERDICT_ZERO = "ZERO"
VERDICT_INCONCLUSIVE = "INCONCLUSIVE"


@dataclass(frozen=True)
class HessianReport:
    """Hessian of phi at one point together with its semidefiniteness verdict."""

    matrix: np.ndarray
    quad_form_min: float
    quad_form_max: float
    min_eigenvalue: float
    max_eigenvalue: float
    verdict: str
    tolerance: float


def _check_p(pt):
    if not pt.p > 1.0:
        raise DomainError(f"Hessian machinery requires p > 1 (q > -1), got p={pt.p}")


def _gamma_auto_method(q):
    if q == int(q) and int(q) % 2 == 0 and q >= 0.0:
        return "plain"
    return "split"


def _gamma_matrix_rademacher(pt):
    # d = 1: exact enumeration; the sum has atoms at 0, so the negative power
    # regime p < 2 has no finite gamma and is rejected
    if pt.p < 2.0:
        raise DomainError("d = 1 cross expectations are only exposed for p >= 2 (atoms at zero otherwise)")
    n = pt.n
    if pt.p == 2.0:
        return np.eye(n)
    c = pt.coeffs()
    signs = rademacher_sign_patterns(n)
    u = np.abs(signs @ c) ** (pt.p - 2.0)
    return np.einsum("r,ri,rj->ij", u, signs, signs) / len(signs)


def gamma_matrix(pt, rule=None, method="auto", budget=DEFAULT_TENSOR_BUDGET):
    """Full symmetric matrix of cross expectations gamma_{i,j}."""
    _check_p(pt)
    n = pt.n
    if pt.d == 1:
        return _gamma_matrix_rademacher(pt)
    if rule is None or rule.d != pt.d:
        raise ContractError("a quadrature rule matching the point dimension is required for d >= 2")
    q = pt.p - 2.0
    if pt.p == 2.0:
        # q = 0: theta_i theta_j integrates to delta_ij / d exactly
        return np.eye(n) / pt.d
    if method == "auto":
        method = _gamma_auto_method(q)
    c = pt.coeffs()
    if method == "plain":
        m = rule.m
        total = m**n
        if total > budget:
            raise ResourceError(f"{m}^{n} = {total} quadrature points exceeds budget {budget}")
        G = np.zeros((n, n))
        shape = (m,) * n
        chunk = 1 << 14
        for start in range(0, total, chunk):
            idx = np.arange(start, min(start + chunk, total))
            multi = np.unravel_index(idx, shape)
            th = np.stack([rule.nodes[ix] for ix in multi], axis=-1)
            w = np.ones(len(idx))
            for ix in multi:
                w *= rule.weights[ix]
            u = np.abs(th @ c) ** q
            G += np.einsum("r,r,ri,rj->ij", w, u, th, th)
        return G
    if method == "split":
        _, _, M2, inner, outer_ix = split_moments(c, q, rule, nmom=3, budget=budget)
        order = outer_ix + [inner]
        G = np.zeros((n, n))
        for a, ga in enumerate(order):
            for b, gb in enumerate(order):
                G[ga, gb] = M2[a, b]
        return 0.5 * (G + G.T)
    raise ContractError(f"unknown method {method!r}")


def gamma_ij(pt, i, j, rule=None, method="auto", budget=DEFAULT_TENSOR_BUDGET):
    """Cross expectation gamma_{i,j} = E[|sum x^{1/p} theta|^{p-2} theta_i theta_j]."""
    n = pt.n
    if not (0 <= i < n and 0 <= j < n):
        raise ContractError(f"indices ({i}, {j}) out of range for n={n}")
    return float(gamma_matrix(pt, rule, method=method, budget=budget)[i, j])


def ekl(pt, k, l, rule=None, method="auto", budget=DEFAULT_TENSOR_BUDGET):
    """Off-diagonal cross expectation E_{k,l}, k != l, whose sign drives the
    semidefiniteness of the Hessian."""
    if k == l:
        raise ContractError("ekl requires two distinct indices")
    return gamma_ij(pt, min(k, l), max(k, l), rule, method=method, budget=budget)


def hessian_from_gamma(pt, G):
    """Assemble the Hessian of phi from a precomputed gamma matrix."""
    x = np.asarray(pt.x, dtype=float)
    p = pt.p
    n = pt.n
    if p == 2.0:
        # phi is exactly linear; assembling would leave pure rounding noise
        return np.zeros((n, n))
    b = beta_pd(p, pt.d)
    f = b * (p - 1.0) / p
    xp = x ** ((1.0 - p) / p)
    H = np.empty((n, n))
    for i in range(n):
        for j in range(n):
            if i != j:
                H[i, j] = f * G[i, j] * xp[i] * xp[j]
        H[i, i] = f * G[i, i] * xp[i] ** 2 - f * x[i] ** ((1.0 - 2.0 * p) / p) * float(
            np.sum(x ** (1.0 / p) * G[i, :])
        )
    return H


def hessian_matrix(pt, rule=None, method="auto", budget=DEFAULT_TENSOR_BUDGET):
    """Analytic Hessian of phi at pt; satisfies H x = 0 by 1-homogeneity."""
    _check_p(pt)
    G = gamma_matrix(pt, rule, method=method, budget=budget)
    return hessian_from_gamma(pt, G)


def hessian_quadratic_form(pt, a, rule=None, method="auto", budget=DEFAULT_TENSOR_BUDGET):
    """a^T H a through the pair expansion

        -beta (p-1)/p sum_{k<l} (a_k/x_k - a_l/x_l)^2 (x_k x_l)^{1/p} E_{k,l},

    which vanishes identically along a = x."""
    _check_p(pt)
    a = np.asarray(a, dtype=float)
    if a.shape != (pt.n,):
        raise ContractError(f"direction must have shape ({pt.n},), got {a.shape}")
    if not np.any(a != 0.0):
        raise ContractError("direction must not be the zero vector")
    if pt.n == 1:
        return 0.0
    x = np.asarray(pt.x, dtype=float)
    G = gamma_matrix(pt, rule, method=method, budget=budget)
    p = pt.p
    f = beta_pd(p, pt.d) * (p - 1.0) / p
    total = 0.0
    for k in range(pt.n):
        for l in range(k + 1, pt.n):
            total -= (
                f
                * (a[k] / x[k] - a[l] / x[l]) ** 2
                * (x[k] * x[l]) ** (1.0 / p)
                * G[k, l]
            )
    return total


def fd_hessian(pt, rel_step, evaluator):
    """Central finite-difference Hessian of an injected phi evaluator.

    evaluator maps a weight vector (ndarray of length n) to a float; steps are
    relative, h_i = rel_step * x_i.
    """
    if not 1e-6 <= rel_step <= 1e-2:
        raise ContractError(f"rel_step must lie in [1e-6, 1e-2], got {rel_step}")
    x = np.asarray(pt.x, dtype=float)
    n = pt.n
    h = rel_step * x
    H = np.empty((n, n))
    f0 = evaluator(x)
    for i in range(n):
        ei = np.zeros(n)
        ei[i] = h[i]
        H[i, i] = (evaluator(x + ei) - 2.0 * f0 + evaluator(x - ei)) / h[i] ** 2
        for j in range(i + 1, n):
            ej = np.zeros(n)
            ej[j] = h[j]
            val = (
                evaluator(x + ei + ej)
                - evaluator(x + ei - ej)
                - evaluator(x - ei + ej)
                + evaluator(x - ei - ej)
            ) / (4.0 * h[i] * h[j])
            H[i, j] = H[j, i] = val
    return H


def jacobi_eigenvalues(matrix, max_sweeps=64):
    """Eigenvalues of a small symmetric matrix by cyclic Jacobi rotations."""
    a = np.array(matrix, dtype=float, copy=True)
    n = a.shape[0]
    scale = float(np.abs(a).max())
    if scale == 0.0:
        return np.zeros(n)
    for _ in range(max_sweeps):
        off = 0.0
        for i in range(n - 1):
            for j in range(i + 1, n):
                off = max(off, abs(a[i, j]))
        if off <= 1e-15 * scale:
            break
        for i in range(n - 1):
            for j in range(i + 1, n):
                apq = a[i, j]
                if abs(apq) <= 1e-18 * scale:
                    continue
                theta = (a[j, j] - a[i, i]) / (2.0 * apq)
                t = np.sign(theta) / (abs(theta) + np.sqrt(1.0 + theta * theta))
                if theta == 0.0:
                    t = 1.0
                c = 1.0 / np.sqrt(1.0 + t * t)
                s = t * c
                ri = a[i, :].copy()
                rj = a[j, :].copy()
                a[i, :] = c * ri - s * rj
                a[j, :] = s * ri + c * rj
                ci = a[:, i].copy()
                cj = a[:, j].copy()
                a[:, i] = c * ci - s * cj
                a[:, j] = s * ci + c * cj
    return np.sort(np.diag(a))


def definiteness(matrix, tol=1e-8):
    """Semidefiniteness verdict with tolerance scaled by the largest entry.

    NSD / PSD / INDEFINITE, or ZERO when both semidefiniteness tests pass
    (the matrix vanishes within tolerance, as on the p = 2 slice).
    """
    a = np.asarray(matrix, dtype=float)
    if a.ndim != 2 or a.shape[0] != a.shape[1]:
        raise ContractError("definiteness requires a square matrix")
    n = a.shape[0]
    if n > _JACOBI_MAX_N:
        raise ContractError(f"definiteness supports n <= {_JACOBI_MAX_N}, got n={n}")
    scale = float(np.abs(a).max())
    if scale > 0.0 and float(np.abs(a - a.T).max()) > 1e-8 * scale:
        raise ContractError("matrix is asymmetric beyond 1e-8 relative")
    eigs = jacobi_eigenvalues(0.5 * (a + a.T))
    lo, hi = float(eigs[0]), float(eigs[-1])
    nsd_ok = hi <= tol * scale
    psd_ok = lo >= -tol * scale
    if nsd_ok and psd_ok:
        return VERDICT_ZERO
    if nsd_ok:
        return VERDICT_NSD
    if psd_ok:
        return VERDICT_PSD
    return VERDICT_INDEFINITE


def hessian_report(pt, rule=None, tol=1e-8, method="auto", n_directions=16, stream=None,
                   budget=DEFAULT_TENSOR_BUDGET):
    """Hessian, eigenvalue range, sampled quadratic forms, and the verdict."""
    H = hessian_matrix(pt, rule, method=method, budget=budget)
    eigs = jacobi_eigenvalues(H)
    if stream is None:
        stream = RandomStream(0, 0)
    rng = stream.generator()
    qmin = np.inf
    qmax = -np.inf
    for _ in range(max(int(n_directions), 1)):
        a = rng.standard_normal(pt.n)
        a /= np.linalg.norm(a)
        v = float(np.einsum("i,ij,j->", a, H, a))
        qmin = min(qmin, v)
        qmax = max(qmax, v)
    if pt.p < MIN_TRUSTED_P:
        verdict = VERDICT_INCONCLUSIVE
    else:
        verdict = definiteness(H, tol)
    return HessianReport(
        matrix=H,
        quad_form_min=float(qmin),
        quad_form_max=float(qmax),
        min_eigenvalue=float(eigs[0]),
        max_eigenvalue=float(eigs[-1]),
        verdict=verdict,
        tolerance=float(tol),
    )
