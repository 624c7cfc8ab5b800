"""Golden-value suite: small exact and oracle-backed checks for every module,
runnable from the CLI (`hanner selftest`) and from the acceptance tests.

Each check recomputes its expected value from an independent oracle where one
exists (closed forms, dense one-dimensional quadrature, exhaustive
enumeration, Monte Carlo with fixed seeds) rather than trusting the code path
under test.
"""

import math

import numpy as np
from scipy.integrate import quad as _quad

from . import explorer, functional, hessian, inequalities, integrate, specfun
from .distributions import (
    ProjectionDist,
    RandomStream,
    SphereDist,
    projection_pdf,
    sample_projection,
    sample_sphere,
)
from .functional import HannerPoint

# test hook: when set, beta-dependent golden checks consult this instead of
# specfun.beta_pd, so a corrupted table must turn the suite red
_BETA_OVERRIDE = None


def _beta(p, d):
    if _BETA_OVERRIDE is not None:
        return _BETA_OVERRIDE(p, d)
    return specfun.beta_pd(p, d)


def _close(got, want, tol):
    ok = abs(got - want) <= tol
    return ok, f"got={got!r} want={want!r} tol={tol:g}"


def _within_sigma(got, want, sigma, k):
    ok = abs(got - want) <= k * sigma
    return ok, f"got={got!r} want={want!r} {k}sigma={k * sigma:g}"


# ----------------------------------------------------------------- specfun


def check_log_gamma_at_1():
    return _close(specfun.log_gamma(1.0), 0.0, 1e-15)


def check_log_gamma_at_half():
    return _close(specfun.log_gamma(0.5), math.log(math.sqrt(math.pi)), 1e-12)


def check_log_gamma_at_6():
    return _close(specfun.log_gamma(6.0), math.log(120.0), 1e-12)


def check_beta_p2_equals_d():
    worst = max(abs(_beta(2.0, d) - d) for d in range(1, 11))
    return worst <= 1e-11, f"max |beta(2,d) - d| = {worst:.3e}"


def check_beta_d1_equals_1():
    worst = max(abs(_beta(p, 1) - 1.0) for p in (-0.5, 1.0, 2.5, 7.0))
    return worst <= 1e-12, f"max |beta(p,1) - 1| = {worst:.3e}"


def check_beta_4_2():
    # oracle: angular average of |cos t|^4 over the circle, reciprocal
    moment = _quad(lambda t: math.cos(t) ** 4 / (2.0 * math.pi), 0.0, 2.0 * math.pi)[0]
    want = 1.0 / moment
    ok1, _ = _close(want, 8.0 / 3.0, 1e-10)
    ok2, msg = _close(_beta(4.0, 2), 8.0 / 3.0, 1e-12)
    return ok1 and ok2, msg


def check_gen_binom_k0():
    return _close(specfun.gen_binom(-1.37, 0), 1.0, 0.0)


def check_gen_binom_1_1():
    return _close(specfun.gen_binom(1.0, 1), 1.0, 0.0)


def check_gen_binom_half_2():
    # direct product (0.5)(-0.5)/2
    return _close(specfun.gen_binom(0.5, 2), -0.125, 1e-16)


def check_g_q_at_zero():
    return _close(specfun.g_q(0.0, 1.7), 1.0, 0.0)


def check_g_q_squared():
    # E|x + xi|^2 = x^2 + 1
    return _close(specfun.g_q(0.5, 2.0), 1.25, 1e-13)


def check_g_q_at_one():
    # oracle: (1/2pi) integral of 2|cos(t/2)| dt = 4/pi
    oracle = _quad(lambda t: 2.0 * abs(math.cos(t / 2.0)) / (2.0 * math.pi), 0.0, 2.0 * math.pi)[0]
    got = specfun.g_q(1.0, 1.0, tol=1e-11)
    ok1, _ = _close(oracle, 4.0 / math.pi, 1e-9)
    ok2, msg = _close(got, 4.0 / math.pi, 1e-9)
    return ok1 and ok2, msg


def check_h_q_at_zero():
    q = 1.3
    return _close(specfun.h_q(0.0, q), 1.0 / (q + 1.0), 1e-15)


def check_h_q_quadratic():
    # h_2(x) = x^2 + 1/3
    return _close(specfun.h_q(1.0, 2.0), 4.0 / 3.0, 1e-15)


def check_h_q_negative_power():
    # oracle: (1/2) integral_{-1}^{1} |2+u|^{-1/2} du = sqrt(3) - 1
    oracle = _quad(lambda u: 0.5 * abs(2.0 + u) ** -0.5, -1.0, 1.0)[0]
    got = specfun.h_q(2.0, -0.5)
    ok1, _ = _close(oracle, math.sqrt(3.0) - 1.0, 1e-10)
    ok2, msg = _close(got, math.sqrt(3.0) - 1.0, 1e-13)
    return ok1 and ok2, msg


def check_h_q_prime_simple():
    return _close(specfun.h_q_prime(2.0, 1.0), 1.0, 1e-15)


def check_h_q_prime_q0():
    return _close(specfun.h_q_prime(0.5, 0.0), 0.0, 0.0)


def check_h_q_prime_negative():
    want = (1.5**-0.5 - 0.5**-0.5) / 2.0
    got = specfun.h_q_prime(0.5, -0.5)
    fd = (specfun.h_q(0.5 + 1e-6, -0.5) - specfun.h_q(0.5 - 1e-6, -0.5)) / 2e-6
    ok1, msg = _close(got, want, 1e-14)
    ok2, _ = _close(fd, want, 1e-7)
    return ok1 and ok2, msg


# ----------------------------------------------------- distributions


def check_sphere_d1_signs():
    v = sample_sphere(SphereDist(1), 64, RandomStream(11, 0))
    ok = bool(np.all(np.isin(v, (-1.0, 1.0))))
    return ok, f"values {np.unique(v)}"


def check_sphere_unit_norm():
    v = sample_sphere(SphereDist(3), 1000, RandomStream(12, 0))
    worst = float(np.abs(np.linalg.norm(v, axis=1) - 1.0).max())
    return worst <= 1e-12, f"max norm deviation {worst:.2e}"


def check_sphere_d2_mean():
    count = 100_000
    v = sample_sphere(SphereDist(2), count, RandomStream(13, 0))
    mean = float(v[:, 0].mean())
    bound = 4.0 / math.sqrt(count)
    return abs(mean) <= bound, f"|mean|={abs(mean):.2e} bound={bound:.2e}"


def check_projection_pdf_d3():
    return _close(projection_pdf(0.3, 3), 0.5, 1e-14)


def check_projection_pdf_outside():
    return _close(projection_pdf(1.5, 5), 0.0, 0.0)


def check_projection_pdf_d2():
    # oracle: arcsine density 1/(pi sqrt(1-t^2)) at 0
    return _close(projection_pdf(0.0, 2), 1.0 / math.pi, 1e-14)


def check_projection_second_moment():
    count = 100_000
    t = sample_projection(3, count, RandomStream(14, 0))
    sigma = float(np.std(t * t, ddof=1) / math.sqrt(count))
    return _within_sigma(float((t * t).mean()), 1.0 / 3.0, sigma, 4)


def check_projection_support():
    t = sample_projection(2, 10_000, RandomStream(15, 0))
    ok = bool(np.all(np.abs(t) <= 1.0))
    return ok, f"max |t| = {np.abs(t).max()!r}"


def check_projection_fourth_moment():
    # oracle: quadrature of t^4 against the d=5 projection density
    rule = integrate.gauss_jacobi_rule(12, 5)
    oracle = float(np.sum(rule.weights * rule.nodes**4))
    count = 100_000
    t = sample_projection(5, count, RandomStream(16, 0))
    sigma = float(np.std(t**4, ddof=1) / math.sqrt(count))
    ok1, _ = _close(oracle, 3.0 / 35.0, 1e-12)
    ok2, msg = _within_sigma(float((t**4).mean()), oracle, sigma, 4)
    return ok1 and ok2, msg


# --------------------------------------------------------- integrate


def check_rule_second_moment_d3():
    rule = integrate.gauss_jacobi_rule(2, 3)
    return _close(float(np.sum(rule.weights * rule.nodes**2)), 1.0 / 3.0, 1e-12)


def check_rule_single_node():
    ok = True
    msg = []
    for d in (2, 3, 5):
        rule = integrate.gauss_jacobi_rule(1, d)
        ok = ok and abs(rule.nodes[0]) <= 1e-15 and abs(rule.weights[0] - 1.0) <= 1e-15
        msg.append(f"d={d}: node={rule.nodes[0]!r} w={rule.weights[0]!r}")
    return ok, "; ".join(msg)


def check_rule_second_moment_d2():
    # oracle: (1/2pi) integral cos^2 t dt = 1/2
    rule = integrate.gauss_jacobi_rule(8, 2)
    return _close(float(np.sum(rule.weights * rule.nodes**2)), 0.5, 1e-12)


def check_tensor_constant():
    rule = integrate.gauss_jacobi_rule(5, 3)
    got = integrate.tensor_expectation(lambda th: np.ones(th.shape[:-1]), rule, 3)
    return _close(got, 1.0, 1e-12)


def check_tensor_sum_of_squares():
    rule = integrate.gauss_jacobi_rule(6, 5)
    got = integrate.tensor_expectation(lambda th: np.sum(th * th, axis=-1), rule, 4)
    return _close(got, 4.0 / 5.0, 1e-10)


def check_tensor_vs_mc_abs_sum():
    rule = integrate.gauss_jacobi_rule(64, 3)
    quad_val = integrate.tensor_expectation(
        lambda th: np.abs(th[..., 0] + th[..., 1]), rule, 2
    )
    est = integrate.mc_expectation(
        lambda th: np.abs(th[:, 0] + th[:, 1]),
        ProjectionDist(3),
        2,
        1_000_000,
        RandomStream(17, 0),
    )
    return _within_sigma(quad_val, est.value, est.std_error, 3)


def check_singular_single_variable():
    # closed form: integral_{-1}^1 |t|^{-1/2} / 2 dt = 2
    rule = integrate.gauss_jacobi_rule(16, 3)
    got = integrate.singular_expectation(None, [1.0], -0.5, rule)
    return _close(got, 2.0, 1e-12)


def check_singular_zero_prefactor():
    rule = integrate.gauss_jacobi_rule(8, 3)
    got = integrate.singular_expectation(
        lambda th: np.zeros(th.shape[:-1]), [1.0, 2.0], -0.5, rule
    )
    return _close(got, 0.0, 0.0)


def check_singular_vs_mc():
    rule = integrate.gauss_jacobi_rule(48, 3)
    got = integrate.singular_expectation(None, [1.0, 1.0], -0.5, rule)
    est = integrate.mc_expectation(
        lambda th: np.abs(th[:, 0] + th[:, 1]) ** -0.5,
        ProjectionDist(3),
        2,
        10_000_000,
        RandomStream(18, 0),
    )
    return _within_sigma(got, est.value, est.std_error, 3)


def check_mc_constant():
    est = integrate.mc_expectation(
        lambda th: np.full(th.shape[0], 2.5), ProjectionDist(3), 1, 1000, RandomStream(19, 0)
    )
    ok = est.value == 2.5 and est.std_error == 0.0
    return ok, f"value={est.value} std_error={est.std_error}"


def check_mc_second_moment():
    est = integrate.mc_expectation(
        lambda th: th[:, 0] ** 2, ProjectionDist(4), 1, 200_000, RandomStream(20, 0)
    )
    return _within_sigma(est.value, 0.25, est.std_error, 4)


def check_mc_vs_tensor_cube():
    rule = integrate.gauss_jacobi_rule(48, 2)
    quad_val = integrate.tensor_expectation(
        lambda th: np.abs(th[..., 0] + th[..., 1]) ** 3, rule, 2
    )
    est = integrate.mc_expectation(
        lambda th: np.abs(th[:, 0] + th[:, 1]) ** 3,
        ProjectionDist(2),
        2,
        500_000,
        RandomStream(21, 0),
    )
    return _within_sigma(quad_val, est.value, est.std_error, 3)


# --------------------------------------------------------- functional


def check_phi_single_weight():
    rule = integrate.gauss_jacobi_rule(32, 3)
    got = functional.phi_projected(HannerPoint(p=2.7, d=3, x=(2.4,)), rule)
    return _close(got, 2.4, 1e-10)


def check_phi_p2_linear():
    rule = integrate.gauss_jacobi_rule(16, 4)
    got = functional.phi_projected(HannerPoint(p=2.0, d=4, x=(0.3, 1.1, 2.2)), rule)
    return _close(got, 3.6, 1e-10)


def check_phi_p4_exact():
    # oracle: E|xi_1 + xi_2|^4 on the circle = (1/2pi) integral (2 + 2 cos t)^2 dt = 6
    oracle = _quad(lambda t: (2.0 + 2.0 * math.cos(t)) ** 2 / (2.0 * math.pi), 0.0, 2.0 * math.pi)[0]
    rule = integrate.gauss_jacobi_rule(24, 2)
    got = functional.phi_projected(HannerPoint(p=4.0, d=2, x=(1.0, 1.0)), rule)
    est = functional.phi_mc(HannerPoint(p=4.0, d=2, x=(1.0, 1.0)), 400_000, RandomStream(22, 0))
    ok1, _ = _close(oracle, 6.0, 1e-10)
    ok2, msg = _close(got, 6.0, 1e-10)
    ok3, _ = _within_sigma(est.value, got, est.std_error, 3)
    return ok1 and ok2 and ok3, msg


def check_phi_mc_single_weight():
    est = functional.phi_mc(HannerPoint(p=3.0, d=4, x=(1.7,)), 1000, RandomStream(23, 0))
    ok = abs(est.value - 1.7) <= 1e-12 and est.std_error <= 1e-12
    return ok, f"value={est.value!r} std_error={est.std_error!r}"


def check_phi_mc_p2():
    pt = HannerPoint(p=2.0, d=3, x=(0.5, 1.5, 2.0))
    est = functional.phi_mc(pt, 200_000, RandomStream(24, 0))
    return _within_sigma(est.value, 4.0, est.std_error, 4)


def check_phi_mc_vs_projected():
    pt = HannerPoint(p=3.0, d=3, x=(1.0, 2.0, 3.0))
    rule = integrate.gauss_jacobi_rule(32, 3)
    quad_val = functional.phi_projected(pt, rule)
    est = functional.phi_mc(pt, 500_000, RandomStream(25, 0))
    return _within_sigma(quad_val, est.value, est.std_error, 3)


def check_rademacher_two_classes():
    s, t, p = 1.2, 0.7, 2.5
    got = functional.phi_rademacher_exact(HannerPoint(p=p, d=1, x=(s**p, t**p)))
    want = ((s + t) ** p + abs(s - t) ** p) / 2.0
    return _close(got, want, 1e-13)


def check_rademacher_single():
    got = functional.phi_rademacher_exact(HannerPoint(p=3.3, d=1, x=(0.8,)))
    return _close(got, 0.8, 1e-14)


def check_rademacher_three_ones():
    # oracle: (2 * 3^4 + 6 * 1^4) / 8 = 21
    got = functional.phi_rademacher_exact(HannerPoint(p=4.0, d=1, x=(1.0, 1.0, 1.0)))
    return _close(got, 21.0, 1e-12)


# ------------------------------------------------------------ hessian


def check_gamma_p2():
    rule = integrate.gauss_jacobi_rule(12, 3)
    pt = HannerPoint(p=2.0, d=3, x=(1.0, 2.0))
    off = hessian.gamma_ij(pt, 0, 1, rule)
    diag = hessian.gamma_ij(pt, 0, 0, rule)
    ok1, _ = _close(off, 0.0, 1e-14)
    ok2, msg = _close(diag, 1.0 / 3.0, 1e-14)
    return ok1 and ok2, msg


def check_gamma_vs_mc():
    pt = HannerPoint(p=4.0, d=3, x=(1.0, 1.0))
    rule = integrate.gauss_jacobi_rule(24, 3)
    got = hessian.gamma_ij(pt, 0, 1, rule)
    c = pt.coeffs()
    est = integrate.mc_expectation(
        lambda th: np.abs(th @ c) ** 2 * th[:, 0] * th[:, 1],
        ProjectionDist(3),
        2,
        500_000,
        RandomStream(26, 0),
    )
    return _within_sigma(got, est.value, est.std_error, 3)


def check_ekl_p2():
    rule = integrate.gauss_jacobi_rule(12, 5)
    got = hessian.ekl(HannerPoint(p=2.0, d=5, x=(1.0, 2.0, 3.0)), 0, 2, rule)
    return _close(got, 0.0, 1e-12)


def check_ekl_rademacher():
    # enumeration over 4 sign patterns of |e1 + e2|^2 e1 e2: (4 + 0 + 0 + 4)/4
    got = hessian.ekl(HannerPoint(p=4.0, d=1, x=(1.0, 1.0)), 0, 1)
    return _close(got, 2.0, 1e-14)


def check_ekl_negative_regime():
    rule = integrate.gauss_jacobi_rule(32, 3)
    got = hessian.ekl(HannerPoint(p=1.5, d=3, x=(1.0, 1.0, 1.0)), 0, 1, rule)
    return got <= 1e-10, f"E_kl = {got!r} (should be <= 0)"


def check_quad_form_along_x():
    rule = integrate.gauss_jacobi_rule(24, 3)
    pt = HannerPoint(p=3.3, d=3, x=(0.5, 1.0, 2.0))
    got = hessian.hessian_quadratic_form(pt, np.asarray(pt.x), rule)
    return _close(got, 0.0, 1e-12)


def check_quad_form_single():
    rule = integrate.gauss_jacobi_rule(8, 3)
    got = hessian.hessian_quadratic_form(HannerPoint(p=4.0, d=3, x=(1.0,)), np.array([1.0]), rule)
    return _close(got, 0.0, 0.0)


def check_quad_form_vs_fd():
    pt = HannerPoint(p=4.0, d=2, x=(1.0, 2.0))
    rule = integrate.gauss_jacobi_rule(32, 2)
    a = np.array([1.0, -1.0])
    got = hessian.hessian_quadratic_form(pt, a, rule)
    H = hessian.fd_hessian(pt, 1e-4, lambda y: functional.phi_projected(HannerPoint(p=4.0, d=2, x=tuple(y)), rule))
    want = float(a @ H @ a)
    ok = abs(got - want) <= 1e-5 * max(abs(want), 1e-30)
    return ok, f"analytic={got!r} fd={want!r}"


def check_hessian_p2_zero():
    rule = integrate.gauss_jacobi_rule(16, 3)
    H = hessian.hessian_matrix(HannerPoint(p=2.0, d=3, x=(1.0, 2.0, 3.0)), rule)
    worst = float(np.abs(H).max())
    return worst <= 1e-10, f"max |entry| = {worst:.2e}"


def check_hessian_single():
    rule = integrate.gauss_jacobi_rule(8, 3)
    H = hessian.hessian_matrix(HannerPoint(p=3.0, d=3, x=(1.5,)), rule)
    return _close(float(H[0, 0]), 0.0, 1e-14)


def check_hessian_vs_fd():
    pt = HannerPoint(p=3.0, d=3, x=(1.0, 2.0, 3.0))
    rule = integrate.gauss_jacobi_rule(32, 3)
    Ha = hessian.hessian_matrix(pt, rule)
    Hf = hessian.fd_hessian(pt, 1e-4, lambda y: functional.phi_projected(HannerPoint(p=3.0, d=3, x=tuple(y)), rule))
    rel = float(np.abs(Ha - Hf).max() / np.abs(Ha).max())
    return rel <= 1e-5, f"entrywise rel err = {rel:.2e}"


def check_fd_on_linear():
    pt = HannerPoint(p=2.0, d=3, x=(1.0, 1.0))
    H = hessian.fd_hessian(pt, 1e-4, lambda y: float(np.sum(y)))
    worst = float(np.abs(H).max())
    return worst <= 1e-7, f"max |entry| = {worst:.2e}"


def check_fd_on_harmonic_mean():
    # f = x1 x2 / (x1 + x2); hand-differentiated Hessian
    pt = HannerPoint(p=2.0, d=3, x=(1.0, 2.0))
    H = hessian.fd_hessian(pt, 1e-3, lambda y: float(y[0] * y[1] / (y[0] + y[1])))
    x1, x2 = 1.0, 2.0
    s = x1 + x2
    want = np.array(
        [[-2.0 * x2**2 / s**3, 2.0 * x1 * x2 / s**3], [2.0 * x1 * x2 / s**3, -2.0 * x1**2 / s**3]]
    )
    worst = float(np.abs(H - want).max())
    return worst <= 1e-6, f"max abs err = {worst:.2e}"


def check_fd_symmetry():
    rule = integrate.gauss_jacobi_rule(24, 2)
    pt = HannerPoint(p=4.0, d=2, x=(1.0, 1.0))
    H = hessian.fd_hessian(pt, 1e-4, lambda y: functional.phi_projected(HannerPoint(p=4.0, d=2, x=tuple(y)), rule))
    worst = float(np.abs(H - H.T).max())
    return worst <= 1e-8, f"max asymmetry = {worst:.2e}"


def check_definiteness_identity():
    v = hessian.definiteness(np.eye(2), 1e-8)
    return v == hessian.VERDICT_PSD, f"verdict {v}"


def check_definiteness_indefinite():
    v = hessian.definiteness(np.diag([1.0, -1.0]), 1e-8)
    return v == hessian.VERDICT_INDEFINITE, f"verdict {v}"


def check_hessian_nsd_random():
    rng = RandomStream(27, 0).generator()
    rule = integrate.gauss_jacobi_rule(24, 2)
    x = tuple(np.exp(rng.uniform(np.log(0.3), np.log(3.0), 3)))
    H = hessian.hessian_matrix(HannerPoint(p=4.0, d=2, x=x), rule)
    v = hessian.definiteness(H, 1e-8)
    return v == hessian.VERDICT_NSD, f"verdict {v} at x={x}"


# ------------------------------------------------------- inequalities


def check_lp_norm_constant():
    return _close(inequalities.lp_norm(inequalities.StepFunction.constant(1.0), 3.0), 1.0, 1e-15)


def check_lp_norm_two_pieces():
    f = inequalities.StepFunction(pieces=((0.5, 2.0), (0.5, 0.0)))
    return _close(inequalities.lp_norm(f, 2.0), math.sqrt(2.0), 1e-15)


def check_lp_norm_signed():
    f = inequalities.StepFunction(pieces=((0.3, 1.0), (0.7, -2.0)))
    return _close(inequalities.lp_norm(f, 3.0), 5.9 ** (1.0 / 3.0), 1e-14)


def check_theorem_single_function():
    f = inequalities.StepFunction(pieces=((0.25, 2.0), (0.75, -1.0)))
    p = 2.6
    rule = integrate.gauss_jacobi_rule(16, 3)
    lhs = inequalities.theorem_lhs([f], p, 3, rule)
    rhs = inequalities.theorem_rhs([f], p, 3, rule)
    want = inequalities.lp_norm(f, p) ** p
    ok1, msg = _close(lhs, want, 1e-12)
    ok2, _ = _close(rhs, want, 1e-12)
    return ok1 and ok2, msg


def check_theorem_p2_orthogonality():
    fs = [
        inequalities.StepFunction(pieces=((0.5, 1.0), (0.5, -1.0))),
        inequalities.StepFunction(pieces=((0.25, 2.0), (0.75, 0.5))),
    ]
    rule = integrate.gauss_jacobi_rule(16, 2)
    want = sum(inequalities.lp_norm(f, 2.0) ** 2 for f in fs)
    lhs = inequalities.theorem_lhs(fs, 2.0, 2, rule)
    rhs = inequalities.theorem_rhs(fs, 2.0, 2, rule)
    ok1, msg = _close(lhs, want, 1e-10)
    ok2, _ = _close(rhs, want, 1e-10)
    return ok1 and ok2, msg


def check_theorem_rademacher_constants():
    fs = [inequalities.StepFunction.constant(1.0), inequalities.StepFunction.constant(1.0)]
    lhs = inequalities.theorem_lhs(fs, 3.0, 1)
    rhs = inequalities.theorem_rhs(fs, 3.0, 1)
    ok1, msg = _close(lhs, 4.0, 1e-13)
    ok2, _ = _close(rhs, 4.0, 1e-13)
    return ok1 and ok2, msg


def check_theorem_equal_functions():
    f = inequalities.StepFunction(pieces=((0.4, 1.5), (0.6, -0.5)))
    rule = integrate.gauss_jacobi_rule(24, 3)
    res = inequalities.theorem_check([f, f, f], 2.5, 3, rule)
    scale = max(abs(res.rhs), 1e-30)
    return abs(res.margin) <= 1e-10 * scale, f"margin={res.margin!r}"


def check_theorem_p2_equality():
    fs = [
        inequalities.StepFunction(pieces=((0.5, 1.0), (0.5, 2.0))),
        inequalities.StepFunction.constant(-1.2),
        inequalities.StepFunction(pieces=((0.2, 3.0), (0.8, 0.0))),
    ]
    rule = integrate.gauss_jacobi_rule(16, 3)
    res = inequalities.theorem_check(fs, 2.0, 3, rule)
    return abs(res.margin) <= 1e-10 * max(abs(res.rhs), 1.0), f"margin={res.margin!r}"


def check_theorem_random_p4():
    rng = RandomStream(28, 0).generator()
    fs = []
    for _ in range(3):
        lens = rng.uniform(0.2, 1.0, 4)
        lens = lens / lens.sum()
        vals = rng.uniform(-2.0, 2.0, 4)
        fs.append(inequalities.StepFunction(pieces=tuple(zip(lens, vals))))
    rule = integrate.gauss_jacobi_rule(24, 2)
    res = inequalities.theorem_check(fs, 4.0, 2, rule)
    return res.status == inequalities.STATUS_PASS, f"status={res.status} margin={res.margin:.3e}"


def check_two_function_rhs():
    vals = (
        inequalities.hanner_two_rhs(1.0, 1.0, 2.5),
        inequalities.hanner_two_rhs(1.0, 0.0, 7.0),
        inequalities.hanner_two_rhs(2.0, 1.0, 3.0),
    )
    want = (2.0**2.5, 2.0, 28.0)
    worst = max(abs(a - b) for a, b in zip(vals, want))
    return worst <= 1e-12, f"max err {worst:.2e}"


def check_schechtman_reduces_to_two_function():
    f1 = inequalities.StepFunction(pieces=((0.5, 1.0), (0.5, -0.5)))
    f2 = inequalities.StepFunction(pieces=((0.25, 0.5), (0.75, 2.0)))
    p = 3.5
    res = inequalities.schechtman_check([f1, f2], p)
    s, t = inequalities.lp_norm(f1, p), inequalities.lp_norm(f2, p)
    want_rhs = inequalities.hanner_two_rhs(s, t, p) / 2.0
    ok1, msg = _close(res.rhs, want_rhs, 1e-12)
    ok2 = res.satisfied
    return ok1 and ok2, msg


def check_schechtman_equality():
    f = inequalities.StepFunction(pieces=((0.3, 2.0), (0.7, -1.0)))
    res = inequalities.schechtman_check([f, f, f], 3.0)
    return abs(res.margin) <= 1e-12 * max(abs(res.rhs), 1.0), f"margin={res.margin!r}"


def check_schechtman_random():
    rng = RandomStream(29, 0).generator()
    fs = []
    for _ in range(4):
        lens = rng.uniform(0.2, 1.0, 5)
        lens = lens / lens.sum()
        vals = rng.uniform(-2.0, 2.0, 5)
        fs.append(inequalities.StepFunction(pieces=tuple(zip(lens, vals))))
    res = inequalities.schechtman_check(fs, 3.5)
    return res.margin >= -1e-10, f"margin={res.margin:.3e}"


# ----------------------------------------------------------- explorer


def check_certify_p2_slice():
    cfg = explorer.SweepConfig(
        p_values=(2.0,), d_values=(3,), n_values=(2,), trials=4, quad_m=8, seed=5
    )
    rep = explorer.certify_regime(cfg)
    ok = not rep.summary["violations"] and rep.summary["verdict_counts"] == {"ZERO": 4}
    return ok, f"verdicts {rep.summary['verdict_counts']}"


def check_certify_nsd_small():
    cfg = explorer.SweepConfig(
        p_values=(4.0,), d_values=(2,), n_values=(3,), trials=8, quad_m=16, seed=6
    )
    rep = explorer.certify_regime(cfg)
    ok = rep.summary["verdict_counts"] == {"NSD": 8} and not rep.summary["violations"]
    return ok, f"verdicts {rep.summary['verdict_counts']}"


def check_certify_psd_small():
    cfg = explorer.SweepConfig(
        p_values=(1.5,), d_values=(3,), n_values=(3,), trials=8, quad_m=16, seed=7
    )
    rep = explorer.certify_regime(cfg)
    ok = rep.summary["verdict_counts"] == {"PSD": 8} and not rep.summary["violations"]
    return ok, f"verdicts {rep.summary['verdict_counts']}"


def check_signmap_p2_zero():
    cfg = explorer.SweepConfig(
        p_values=(2.0,), d_values=(3,), n_values=(3,), x_mode="simplex", grid_step=0.25, quad_m=8, seed=8
    )
    smap = explorer.sign_map(cfg)
    lo, hi = smap.summary["min_ekl"], smap.summary["max_ekl"]
    ok = abs(lo) <= 1e-12 and abs(hi) <= 1e-12
    return ok, f"min={lo!r} max={hi!r}"


def check_open_range_witness_point():
    # the corner of the step-0.05 simplex grid carries a confirmed wrong sign
    rule = integrate.gauss_jacobi_rule(24, 2)
    rule2 = integrate.gauss_jacobi_rule(48, 2)
    pt = HannerPoint(p=1.5, d=2, x=(0.05, 0.05, 0.90))
    v1 = hessian.ekl(pt, 0, 1, rule)
    v2 = hessian.ekl(pt, 0, 1, rule2)
    ok = v1 > 0.0 and v2 > 0.0 and abs(v2) > 10.0 * abs(v2 - v1)
    return ok, f"E_01 = {v2!r} (refinement delta {abs(v2 - v1):.2e})"


_REGISTRY = [
    ("specfun", "log_gamma_at_1", check_log_gamma_at_1),
    ("specfun", "log_gamma_at_half", check_log_gamma_at_half),
    ("specfun", "log_gamma_at_6", check_log_gamma_at_6),
    ("specfun", "beta_p2_equals_d", check_beta_p2_equals_d),
    ("specfun", "beta_d1_equals_1", check_beta_d1_equals_1),
    ("specfun", "beta_4_2", check_beta_4_2),
    ("specfun", "gen_binom_k0", check_gen_binom_k0),
    ("specfun", "gen_binom_1_1", check_gen_binom_1_1),
    ("specfun", "gen_binom_half_2", check_gen_binom_half_2),
    ("specfun", "g_q_at_zero", check_g_q_at_zero),
    ("specfun", "g_q_squared", check_g_q_squared),
    ("specfun", "g_q_at_one", check_g_q_at_one),
    ("specfun", "h_q_at_zero", check_h_q_at_zero),
    ("specfun", "h_q_quadratic", check_h_q_quadratic),
    ("specfun", "h_q_negative_power", check_h_q_negative_power),
    ("specfun", "h_q_prime_simple", check_h_q_prime_simple),
    ("specfun", "h_q_prime_q0", check_h_q_prime_q0),
    ("specfun", "h_q_prime_negative", check_h_q_prime_negative),
    ("distributions", "sphere_d1_signs", check_sphere_d1_signs),
    ("distributions", "sphere_unit_norm", check_sphere_unit_norm),
    ("distributions", "sphere_d2_mean", check_sphere_d2_mean),
    ("distributions", "projection_pdf_d3", check_projection_pdf_d3),
    ("distributions", "projection_pdf_outside", check_projection_pdf_outside),
    ("distributions", "projection_pdf_d2", check_projection_pdf_d2),
    ("distributions", "projection_second_moment", check_projection_second_moment),
    ("distributions", "projection_support", check_projection_support),
    ("distributions", "projection_fourth_moment", check_projection_fourth_moment),
    ("integrate", "rule_second_moment_d3", check_rule_second_moment_d3),
    ("integrate", "rule_single_node", check_rule_single_node),
    ("integrate", "rule_second_moment_d2", check_rule_second_moment_d2),
    ("integrate", "tensor_constant", check_tensor_constant),
    ("integrate", "tensor_sum_of_squares", check_tensor_sum_of_squares),
    ("integrate", "tensor_vs_mc_abs_sum", check_tensor_vs_mc_abs_sum),
    ("integrate", "singular_single_variable", check_singular_single_variable),
    ("integrate", "singular_zero_prefactor", check_singular_zero_prefactor),
    ("integrate", "singular_vs_mc", check_singular_vs_mc),
    ("integrate", "mc_constant", check_mc_constant),
    ("integrate", "mc_second_moment", check_mc_second_moment),
    ("integrate", "mc_vs_tensor_cube", check_mc_vs_tensor_cube),
    ("functional", "phi_single_weight", check_phi_single_weight),
    ("functional", "phi_p2_linear", check_phi_p2_linear),
    ("functional", "phi_p4_exact", check_phi_p4_exact),
    ("functional", "phi_mc_single_weight", check_phi_mc_single_weight),
    ("functional", "phi_mc_p2", check_phi_mc_p2),
    ("functional", "phi_mc_vs_projected", check_phi_mc_vs_projected),
    ("functional", "rademacher_two_classes", check_rademacher_two_classes),
    ("functional", "rademacher_single", check_rademacher_single),
    ("functional", "rademacher_three_ones", check_rademacher_three_ones),
    ("hessian", "gamma_p2", check_gamma_p2),
    ("hessian", "gamma_vs_mc", check_gamma_vs_mc),
    ("hessian", "ekl_p2", check_ekl_p2),
    ("hessian", "ekl_rademacher", check_ekl_rademacher),
    ("hessian", "ekl_negative_regime", check_ekl_negative_regime),
    ("hessian", "quad_form_along_x", check_quad_form_along_x),
    ("hessian", "quad_form_single", check_quad_form_single),
    ("hessian", "quad_form_vs_fd", check_quad_form_vs_fd),
    ("hessian", "hessian_p2_zero", check_hessian_p2_zero),
    ("hessian", "hessian_single", check_hessian_single),
    ("hessian", "hessian_vs_fd", check_hessian_vs_fd),
    ("hessian", "fd_on_linear", check_fd_on_linear),
    ("hessian", "fd_on_harmonic_mean", check_fd_on_harmonic_mean),
    ("hessian", "fd_symmetry", check_fd_symmetry),
    ("hessian", "definiteness_identity", check_definiteness_identity),
    ("hessian", "definiteness_indefinite", check_definiteness_indefinite),
    ("hessian", "hessian_nsd_random", check_hessian_nsd_random),
    ("inequalities", "lp_norm_constant", check_lp_norm_constant),
    ("inequalities", "lp_norm_two_pieces", check_lp_norm_two_pieces),
    ("inequalities", "lp_norm_signed", check_lp_norm_signed),
    ("inequalities", "theorem_single_function", check_theorem_single_function),
    ("inequalities", "theorem_p2_orthogonality", check_theorem_p2_orthogonality),
    ("inequalities", "theorem_rademacher_constants", check_theorem_rademacher_constants),
    ("inequalities", "theorem_equal_functions", check_theorem_equal_functions),
    ("inequalities", "theorem_p2_equality", check_theorem_p2_equality),
    ("inequalities", "theorem_random_p4", check_theorem_random_p4),
    ("inequalities", "two_function_rhs", check_two_function_rhs),
    ("inequalities", "schechtman_reduces_to_two_function", check_schechtman_reduces_to_two_function),
    ("inequalities", "schechtman_equality", check_schechtman_equality),
    ("inequalities", "schechtman_random", check_schechtman_random),
    ("explorer", "certify_p2_slice", check_certify_p2_slice),
    ("explorer", "certify_nsd_small", check_certify_nsd_small),
    ("explorer", "certify_psd_small", check_certify_psd_small),
    ("explorer", "signmap_p2_zero", check_signmap_p2_zero),
    ("explorer", "open_range_witness_point", check_open_range_witness_point),
]


def run_selftest(suite_filter=None, inject_bad_beta=False, printer=print):
    """Run the golden suite; returns (passed, failed).  suite_filter restricts
    to one suite name; inject_bad_beta is a negative-control hook that
    corrupts the beta table and must make the run fail."""
    global _BETA_OVERRIDE
    checks = [c for c in _REGISTRY if suite_filter is None or c[0] == suite_filter]
    if inject_bad_beta:
        _BETA_OVERRIDE = lambda p, d: specfun.beta_pd(p, d) * 1.001
    passed = failed = 0
    per_suite = {}
    try:
        for suite, name, fn in checks:
            try:
                ok, msg = fn()
            except Exception as exc:
                ok, msg = False, f"error: {exc}"
            status = "PASS" if ok else "FAIL"
            if ok:
                passed += 1
            else:
                failed += 1
            a, b = per_suite.get(suite, (0, 0))
            per_suite[suite] = (a + (1 if ok else 0), b + (0 if ok else 1))
            printer(f"{status} {suite}.{name}: {msg}")
    finally:
        _BETA_OVERRIDE = None
    for suite in sorted(per_suite):
        a, b = per_suite[suite]
        printer(f"suite {suite}: {a} passed, {b} failed")
    printer(f"total: {passed} passed, {failed} failed")
    return passed, failed
