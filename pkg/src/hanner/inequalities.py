"""Direct checks of the Hanner-type inequalities on piecewise-constant
representatives of L_p[0, 1] functions.

Step functions make every norm and expectation a finite sum: the left side of
the many-function inequality decomposes piecewise into values of the Hanner
functional at the tuples (|f_1(t)|^p, ..., |f_n(t)|^p), since the symmetric
coefficients absorb all signs.
"""

import json
from dataclasses import dataclass

import numpy as np

from .errors import DomainError
from .functional import HannerPoint, phi_projected, phi_rademacher_exact

STATUS_PASS = "PASS"
STATUS_FAIL = "FAIL"
STATUS_CONJECTURAL = "CONJECTURAL"
STATUS_OPEN = "OPEN"

_LEN_TOL = 1e-12


@dataclass(frozen=True)
class StepFunction:
    """Piecewise-constant function on [0, 1]: pieces of (length, value) with
    lengths summing to one."""

    pieces: tuple

    def __post_init__(self):
        pieces = tuple((float(l), float(v)) for l, v in self.pieces)
        if not pieces:
            raise DomainError("a step function needs at least one piece")
        if any(l <= 0.0 for l, _ in pieces):
            raise DomainError("piece lengths must be positive")
        total = sum(l for l, _ in pieces)
        if abs(total - 1.0) > _LEN_TOL:
            raise DomainError(f"piece lengths must sum to 1 within {_LEN_TOL}, got {total!r}")
        object.__setattr__(self, "pieces", pieces)

    @classmethod
    def constant(cls, value):
        return cls(pieces=((1.0, float(value)),))

    def to_json_obj(self):
        return [[l, v] for l, v in self.pieces]

    @classmethod
    def from_json_obj(cls, obj):
        return cls(pieces=tuple((l, v) for l, v in obj))


def load_step_functions(text):
    """Parse a JSON array of step functions, each an array of [length, value]."""
    data = json.loads(text)
    return [StepFunction.from_json_obj(entry) for entry in data]


def lp_norm(f, p):
    """L_p norm (sum of length * |value|^p)^{1/p}."""
    if not p >= 1.0:
        raise DomainError(f"lp_norm requires p >= 1, got {p}")
    return float(sum(l * abs(v) ** p for l, v in f.pieces)) ** (1.0 / p)


def common_refinement(fs):
    """Shared piece lengths and the value of every function on each piece.

    Returns (lengths, values) with values of shape (n_pieces, n_functions).
    """
    cuts = [0.0, 1.0]
    for f in fs:
        acc = 0.0
        for l, _ in f.pieces[:-1]:
            acc += l
            cuts.append(acc)
    cuts = sorted(set(cuts))
    merged = [cuts[0]]
    for c in cuts[1:]:
        if c - merged[-1] > _LEN_TOL:
            merged.append(c)
    merged[-1] = 1.0
    lengths = np.diff(np.asarray(merged))
    mids = np.asarray(merged[:-1]) + lengths / 2.0
    values = np.empty((len(lengths), len(fs)))
    for j, f in enumerate(fs):
        ends = np.cumsum([l for l, _ in f.pieces])
        vals = np.asarray([v for _, v in f.pieces])
        values[:, j] = vals[np.minimum(np.searchsorted(ends, mids), len(vals) - 1)]
    return lengths, values


def _phi_kernel(abs_vals, p, d, rule):
    """phi at the p-th powers of the nonzero entries of abs_vals; zero entries
    shrink the tuple (phi extends continuously but its domain is positive)."""
    nz = abs_vals[abs_vals > 0.0]
    if len(nz) == 0:
        return 0.0
    pt = HannerPoint(p=p, d=d, x=tuple(nz**p))
    if d == 1:
        return phi_rademacher_exact(pt)
    return phi_projected(pt, rule)


def theorem_lhs(fs, p, d, rule=None):
    """E || sum_k xi_k f_k ||_p^p, computed piecewise through the functional."""
    lengths, values = common_refinement(fs)
    total = 0.0
    for l, row in zip(lengths, values):
        total += l * _phi_kernel(np.abs(row), p, d, rule)
    return total


def theorem_rhs(fs, p, d, rule=None):
    """E | sum_k xi_k ||f_k||_p |^p = phi at the p-th powers of the norms."""
    norms = np.asarray([lp_norm(f, p) for f in fs])
    return _phi_kernel(norms, p, d, rule)


@dataclass(frozen=True)
class InequalityCheck:
    lhs: float
    rhs: float
    margin: float
    satisfied: bool
    status: str
    direction: str


def _regime(p, d):
    """Claimed direction and status label for (p, d).

    direction "upper" claims lhs <= rhs, "lower" claims lhs >= rhs.
    """
    if d >= 2:
        if p >= 2.0:
            return "upper", None
        if d >= 3:
            return "lower", None
        return "lower", STATUS_CONJECTURAL  # d = 2, p < 2: conjectured only
    # d = 1 (Rademacher)
    if p >= 3.0 or p == 2.0:
        return "upper", None
    if p > 2.0:
        return "upper", STATUS_OPEN  # 2 < p < 3 open
    return "lower", STATUS_OPEN  # 1 <= p < 2 open


def theorem_check(fs, p, d, rule=None, tol=1e-9):
    """Compare both sides and report {lhs, rhs, margin, satisfied, status}.

    In proven regimes the status is PASS or FAIL; in the open ranges the
    comparison is still reported but labeled CONJECTURAL (d=2, p<2) or OPEN
    (d=1, p<2 or 2<p<3), never FAIL.
    """
    if not p >= 1.0:
        raise DomainError(f"theorem_check requires p >= 1, got {p}")
    lhs = theorem_lhs(fs, p, d, rule)
    rhs = theorem_rhs(fs, p, d, rule)
    direction, label = _regime(p, d)
    margin = (rhs - lhs) if direction == "upper" else (lhs - rhs)
    satisfied = margin >= -tol
    if label is None:
        status = STATUS_PASS if satisfied else STATUS_FAIL
    else:
        status = label
    return InequalityCheck(
        lhs=float(lhs),
        rhs=float(rhs),
        margin=float(margin),
        satisfied=bool(satisfied),
        status=status,
        direction=direction,
    )


def hanner_two_rhs(s, t, p):
    """Classical two-function right side |s+t|^p + |s-t|^p for norms s, t >= 0."""
    if s < 0.0 or t < 0.0:
        raise DomainError("norms must be nonnegative")
    return abs(s + t) ** p + abs(s - t) ** p


def schechtman_check(fs, p, tol=1e-10):
    """Rademacher many-function inequality for p >= 3 via exact enumeration."""
    if not p >= 3.0:
        raise DomainError(f"schechtman_check requires p >= 3, got {p}")
    lhs = theorem_lhs(fs, p, 1)
    rhs = theorem_rhs(fs, p, 1)
    margin = rhs - lhs
    satisfied = margin >= -tol
    return InequalityCheck(
        lhs=float(lhs),
        rhs=float(rhs),
        margin=float(margin),
        satisfied=bool(satisfied),
        status=STATUS_PASS if satisfied else STATUS_FAIL,
        direction="upper",
    )
