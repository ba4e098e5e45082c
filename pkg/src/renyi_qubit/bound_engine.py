"""Tight lower bound on ``H_alpha(A) + H_beta(B)`` for qubit observables.

The bound depends on the pair of observables only through their overlap
``c = max |<b_l|a_k>|`` and equals the minimum over ``theta in [0, gamma]``
(``gamma = arccos c``) of :func:`renyi_qubit.entropy_core.objective`.
:func:`tight_bound` dispatches to a closed form where one exists and falls
back to a guarded one-dimensional minimization otherwise.
"""

from __future__ import annotations

import enum
import functools
import math
import os
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass
from typing import NamedTuple, Sequence

import numpy as np
from scipy.optimize import brentq

from .entropy_core import (
    LOG2,
    QUARTER_PI,
    _profile,
    _profile_slope,
    check_index,
    renyi_pair,
)

SQRT1_2 = math.sqrt(0.5)

# Inputs this far below 1/sqrt(2) (or above 1) are clamped instead of
# rejected; 8-decimal command-line values of 1/sqrt(2) need it.
OVERLAP_TOL = 1e-8
COMPLEMENTARY_TOL = 1e-12

N_SEEDS = 129
THETA_XTOL = 1e-12
VALUE_TIE = 1e-9
DEDUP_TOL = 1e-8
# two stationary points inside one basin count as distinct minimizers
ROOT_TIE = 1e-12
# F(gamma/2) - min F below this means gamma/2 is the global minimizer.
HALF_GAMMA_GAP = 1e-13
ALPHA_STAR_TOL = 1e-11


class Regime(str, enum.Enum):
    TRIVIAL_C1 = "trivial-c1"
    CLOSED_FORM_SQUARE = "closed-form-square"
    DIAGONAL_FIRST = "diagonal-first"
    DIAGONAL_INTERIOR = "diagonal-interior"
    DIAGONAL_HALF_GAMMA = "diagonal-half-gamma"
    NUMERIC_GENERAL = "numeric-general"


@dataclass(frozen=True)
class Overlap:
    """Overlap ``c`` between two qubit eigenbases and ``gamma = arccos c``."""

    c: float
    gamma: float

    def __post_init__(self):
        if not SQRT1_2 <= self.c <= 1:
            raise ValueError(f"overlap must lie in [1/sqrt(2), 1], got {self.c!r}")
        if not 0 <= self.gamma <= QUARTER_PI:
            raise ValueError(f"gamma must lie in [0, pi/4], got {self.gamma!r}")
        if abs(math.cos(self.gamma) - self.c) > 1e-12:
            raise ValueError("inconsistent overlap: cos(gamma) != c")

    @classmethod
    def from_c(cls, c, tol=OVERLAP_TOL):
        c = float(c)
        if not math.isfinite(c) or c < SQRT1_2 - tol or c > 1 + tol:
            raise ValueError(f"overlap must lie in [1/sqrt(2), 1], got {c!r}")
        c = min(max(c, SQRT1_2), 1.0)
        gamma = QUARTER_PI if c == SQRT1_2 else math.acos(c)
        return cls(c, gamma)

    @classmethod
    def from_gamma(cls, gamma):
        gamma = float(gamma)
        if not 0 <= gamma <= QUARTER_PI:
            raise ValueError(f"gamma must lie in [0, pi/4], got {gamma!r}")
        return cls(SQRT1_2 if gamma == QUARTER_PI else math.cos(gamma), gamma)

    @classmethod
    def from_gamma_t(cls, gamma_t):
        """Overlap of ``V(gamma_t)``, the rotation factor of a unitary."""
        gamma_t = float(gamma_t)
        if not 0 <= gamma_t <= math.pi / 2:
            raise ValueError(f"gamma_t must lie in [0, pi/2], got {gamma_t!r}")
        return cls.from_gamma(min(gamma_t, math.pi / 2 - gamma_t))

    @property
    def complementary(self):
        return abs(self.gamma - QUARTER_PI) <= COMPLEMENTARY_TOL

    @property
    def trivial(self):
        return self.gamma == 0.0


@dataclass(frozen=True)
class BoundResult:
    value: float
    theta_opt: tuple
    regime: Regime
    alpha: float
    beta: float
    overlap: Overlap


def _as_overlap(ov):
    return ov if isinstance(ov, Overlap) else Overlap.from_c(ov)


def _golden_min(f, a, b, tol=THETA_XTOL, max_iter=200):
    invphi = (math.sqrt(5) - 1) / 2
    x1 = b - invphi * (b - a)
    x2 = a + invphi * (b - a)
    f1, f2 = f(x1), f(x2)
    for _ in range(max_iter):
        if b - a <= tol:
            break
        if f1 <= f2:
            b, x2, f2 = x2, x1, f1
            x1 = b - invphi * (b - a)
            f1 = f(x1)
        else:
            a, x1, f1 = x1, x2, f2
            x2 = a + invphi * (b - a)
            f2 = f(x2)
    return (x1, f1) if f1 <= f2 else (x2, f2)


def _interior_root(slope, a, b):
    """Zero of ``slope`` in ``(a, b)`` where it crosses from negative to
    positive, or None. Bracket ends are pulled inside to dodge endpoint
    singularities of the slope."""
    nudge = (b - a) * 1e-9
    lo, hi = a + nudge, b - nudge
    s_lo, s_hi = slope(lo), slope(hi)
    if not (np.isfinite(s_lo) and np.isfinite(s_hi)):
        return None
    if s_lo < 0 < s_hi:
        return brentq(slope, lo, hi, xtol=1e-15, rtol=4 * np.finfo(float).eps, maxiter=200)
    return None


def scan_minimize(f, slope, lo, hi, n_seeds=N_SEEDS):
    """Global minimizers of a one-dimensional function on ``[lo, hi]``.

    ``f`` must accept arrays. Every discrete local minimum of an evenly spaced
    scan is refined inside its neighbouring cells, by a root of ``slope``
    when it brackets one and by golden section otherwise. Returns the minimum
    and the sorted minimizers within ``VALUE_TIE`` of it, merged at
    ``DEDUP_TOL``.
    """
    if hi <= lo:
        return float(f(np.array([lo]))[0]), (float(lo),)
    ts = np.linspace(lo, hi, n_seeds)
    vs = np.asarray(f(ts), dtype=float)
    scalar = lambda t: float(f(np.array([t]))[0])
    scalar_slope = lambda t: float(slope(np.array([t]))[0])

    cands = []
    last = n_seeds - 1
    for i in range(n_seeds):
        left = vs[i - 1] if i > 0 else math.inf
        right = vs[i + 1] if i < last else math.inf
        if not (vs[i] <= left and vs[i] <= right):
            continue
        local = [(float(ts[i]), float(vs[i]))]
        roots = []
        a, b = ts[max(i - 1, 0)], ts[min(i + 1, last)]
        for cell in ((a, ts[i]), (ts[i], b)):
            if cell[1] <= cell[0]:
                continue
            root = _interior_root(scalar_slope, *cell)
            if root is not None:
                roots.append((float(root), scalar(root)))
        if 0 < i < last:
            t, v = _golden_min(scalar, a, b)
            local.append((float(t), v))
        if not roots:
            # the grid sample and the golden estimate of one flat minimum tie
            # in value without being distinct minimizers
            cands.append(min(local, key=lambda tv: tv[1]))
            continue
        # slope roots are exact to rounding while golden section is only good
        # to about sqrt(eps) in theta; the latter counts only if clearly lower
        low = min(v for _, v in roots)
        cands.extend(r for r in roots if r[1] <= low + ROOT_TIE)
        cands.extend(tv for tv in local if tv[1] < low - VALUE_TIE)

    best = min(v for _, v in cands)
    keep = sorted((t, v) for t, v in cands if v <= best + VALUE_TIE)
    merged = []
    for t, v in keep:
        if merged and t - merged[-1][0] <= DEDUP_TOL:
            if v < merged[-1][1]:
                merged[-1] = (t, v)
            continue
        merged.append((t, v))
    return best, tuple(float(t) for t, _ in merged)


def _dedup(thetas):
    out = []
    for t in sorted(thetas):
        if not out or t - out[-1] > DEDUP_TOL:
            out.append(t)
    return tuple(out)


def _square_value(lam, ov):
    # (c^2, 1 - c^2) taken from gamma to keep 1 - c^2 accurate near c = 1
    return float(renyi_pair(math.cos(ov.gamma) ** 2, math.sin(ov.gamma) ** 2, lam))


def _half_gamma_value(alpha, ov):
    # ((1 + c)/2, (1 - c)/2) = (cos^2, sin^2) of gamma/2
    half = ov.gamma / 2
    return 2 * float(renyi_pair(math.cos(half) ** 2, math.sin(half) ** 2, alpha))


def diagonal_branches(alpha, ov):
    """Values of the two closed-form diagonal candidates at ``alpha``: the
    endpoint value ``H_alpha(c^2, 1 - c^2)`` and the half-angle value
    ``2 H_alpha((1 + c)/2, (1 - c)/2)``."""
    alpha = check_index(alpha, "alpha")
    ov = _as_overlap(ov)
    return _square_value(alpha, ov), _half_gamma_value(alpha, ov)


def closed_form_square(alpha, beta, ov):
    """Bound for indices in ``[0, 1/2]^2``: ``H_lam(c^2, 1 - c^2)`` with
    ``lam = max(alpha, beta)``."""
    alpha = check_index(alpha, "alpha")
    beta = check_index(beta, "beta")
    if alpha > 0.5 or beta > 0.5:
        raise ValueError("closed_form_square needs alpha, beta <= 1/2")
    ov = _as_overlap(ov)
    value = _square_value(max(alpha, beta), ov)
    if ov.trivial:
        thetas = (0.0,)
    elif alpha < beta:
        thetas = (0.0,)
    elif alpha > beta:
        thetas = (ov.gamma,)
    else:
        thetas = (0.0, ov.gamma)
    return BoundResult(value, thetas, Regime.CLOSED_FORM_SQUARE, alpha, beta, ov)


def _trivial(alpha, beta, ov):
    return BoundResult(0.0, (0.0,), Regime.TRIVIAL_C1, alpha, beta, ov)


def _diagonal_interior(alpha, gamma):
    """Minimize ``F_alpha`` over ``[0, gamma/2]``; returns (value, minimizers)."""
    f = lambda t: _profile(alpha, alpha, gamma, t)
    s = lambda t: _profile_slope(alpha, alpha, gamma, t)
    return scan_minimize(f, s, 0.0, gamma / 2)


@functools.lru_cache(maxsize=1)
def alpha_dagger():
    """Index where the complementary-case diagonal bound leaves ``log 2``.

    Root on ``(1, 2)`` of ``2 H_alpha((2 + sqrt 2)/4) = log 2``, i.e. where
    the half-angle branch value crosses ``log 2``.
    """
    p = (2 + math.sqrt(2)) / 4

    def residual(a):
        return 2 * float(renyi_pair(p, 1 - p, a)) - LOG2

    return brentq(residual, 1.0, 2.0, xtol=1e-14, rtol=4 * np.finfo(float).eps)


def _half_gamma_is_global(alpha, gamma):
    best, _ = _diagonal_interior(alpha, gamma)
    at_half = float(_profile(alpha, alpha, gamma, np.array([gamma / 2]))[0])
    return at_half - best <= HALF_GAMMA_GAP


@functools.lru_cache(maxsize=256)
def _alpha_star_cached(c, gamma, tol):
    lo, hi = 0.5, alpha_dagger()
    while hi - lo > tol:
        mid = 0.5 * (lo + hi)
        if _half_gamma_is_global(mid, gamma):
            hi = mid
        else:
            lo = mid
    return hi


def alpha_star(ov, tol=ALPHA_STAR_TOL):
    """Smallest index for which ``theta = gamma/2`` minimizes the diagonal
    objective. Bisection on ``(1/2, alpha_dagger())`` down to a bracket of
    width ``tol``; at ``c = 1/sqrt 2`` this is ``alpha_dagger()`` and at
    ``c = 1`` it is undefined."""
    ov = _as_overlap(ov)
    tol = float(tol)
    if not 0 < tol < 0.1:
        raise ValueError(f"tol must lie in (0, 0.1), got {tol!r}")
    if ov.trivial:
        raise ValueError("alpha_star is undefined at c = 1")
    if ov.complementary:
        return alpha_dagger()
    return _alpha_star_cached(ov.c, ov.gamma, tol)


def diagonal_bound(alpha, ov):
    """Bound on the line ``beta = alpha`` (three regimes)."""
    alpha = check_index(alpha, "alpha")
    ov = _as_overlap(ov)
    if ov.trivial:
        return _trivial(alpha, alpha, ov)
    gamma = ov.gamma
    if ov.complementary:
        a_dag = alpha_dagger()
        if alpha <= a_dag:
            thetas = (0.0, gamma / 2, gamma) if abs(alpha - a_dag) < 1e-12 else (0.0, gamma)
            return BoundResult(LOG2, thetas, Regime.DIAGONAL_FIRST, alpha, alpha, ov)
        return BoundResult(_half_gamma_value(alpha, ov), (gamma / 2,),
                           Regime.DIAGONAL_HALF_GAMMA, alpha, alpha, ov)
    if alpha <= 0.5:
        return BoundResult(_square_value(alpha, ov), (0.0, gamma),
                           Regime.DIAGONAL_FIRST, alpha, alpha, ov)
    if alpha >= alpha_star(ov):
        return BoundResult(_half_gamma_value(alpha, ov), (gamma / 2,),
                           Regime.DIAGONAL_HALF_GAMMA, alpha, alpha, ov)
    value, thetas = _diagonal_interior(alpha, gamma)
    theta_star = thetas[0]
    return BoundResult(value, _dedup((theta_star, gamma - theta_star)),
                       Regime.DIAGONAL_INTERIOR, alpha, alpha, ov)


def _numeric(alpha, beta, ov):
    gamma = ov.gamma
    f = lambda t: _profile(alpha, beta, gamma, t)
    s = lambda t: _profile_slope(alpha, beta, gamma, t)
    value, thetas = scan_minimize(f, s, 0.0, gamma)
    return BoundResult(value, thetas, Regime.NUMERIC_GENERAL, alpha, beta, ov)


def tight_bound(alpha, beta, ov):
    """Minimum of ``H_alpha(|psi|^2) + H_beta(|T psi|^2)`` over pure qubit
    states, for any unitary ``T`` with overlap ``ov``."""
    alpha = check_index(alpha, "alpha")
    beta = check_index(beta, "beta")
    ov = _as_overlap(ov)
    if ov.trivial:
        return _trivial(alpha, beta, ov)
    if alpha <= 0.5 and beta <= 0.5:
        return closed_form_square(alpha, beta, ov)
    if alpha == beta:
        return diagonal_bound(alpha, ov)
    return _numeric(alpha, beta, ov)


def suboptimal_bound(alpha, beta, ov):
    """Diagonal bound at ``max(alpha, beta)``; valid for every index pair."""
    alpha = check_index(alpha, "alpha")
    beta = check_index(beta, "beta")
    return diagonal_bound(max(alpha, beta), ov).value


class ReferenceBound(NamedTuple):
    value: float
    holds: bool


def _below_conjugacy(alpha, beta):
    # On or below the curve 1/(2 alpha) + 1/(2 beta) = 1.
    return alpha <= 0.5 or beta <= 0.5 or (2 * alpha - 1) * (2 * beta - 1) <= 1


def reference_bounds(alpha, beta, ov):
    """Previously published qubit bounds, each flagged with whether its
    hypotheses on ``(alpha, beta, c)`` are met."""
    alpha = check_index(alpha, "alpha")
    beta = check_index(beta, "beta")
    ov = _as_overlap(ov)
    c = ov.c
    return {
        "deutsch": ReferenceBound(-2 * math.log((1 + c) / 2), True),
        "maassen_uffink_shannon": ReferenceBound(-2 * math.log(c), _below_conjugacy(alpha, beta)),
        "maassen_uffink_conjugate": ReferenceBound(
            2 * math.log(2 * math.sqrt(2) / (1 + math.sqrt(2))), ov.complementary),
        "rastegin_half": ReferenceBound(
            math.log1p(math.sqrt(4 * c**2 * (1 - c**2))), alpha <= 0.5 and beta <= 0.5),
        "collision": ReferenceBound(-2 * math.log((1 + c**2) / 2), alpha <= 2 and beta <= 2),
    }


SWEEP_VARIABLES = ("alpha", "beta", "c", "diagonal")


@dataclass(frozen=True)
class SweepSpec:
    """One-parameter family of bound evaluations.

    ``variable`` is ``"alpha"``, ``"beta"``, ``"c"`` or ``"diagonal"`` (the
    last sets ``alpha = beta`` to the swept value). The fixed values of the
    other parameters come from the remaining fields.
    """

    variable: str
    grid: Sequence[float]
    alpha: float = 1.0
    beta: float = 1.0
    c: float = SQRT1_2
    workers: int | None = None


class SweepRow(NamedTuple):
    x: float
    value: float
    theta_opt: tuple
    regime: Regime


def _thread_cap():
    raw = os.environ.get("RENYI_QUBIT_THREADS")
    if not raw:
        return 1
    try:
        return max(1, int(raw))
    except ValueError:
        raise ValueError(f"RENYI_QUBIT_THREADS must be an integer, got {raw!r}") from None


def bound_sweep(spec):
    """Evaluate :func:`tight_bound` along ``spec.grid``; rows in grid order."""
    if spec.variable not in SWEEP_VARIABLES:
        raise ValueError(f"unknown sweep variable {spec.variable!r}")
    grid = [float(x) for x in spec.grid]
    if not grid:
        raise ValueError("sweep grid is empty")
    if any(b <= a for a, b in zip(grid, grid[1:])):
        raise ValueError("sweep grid must be strictly increasing")

    def point(x):
        alpha, beta, c = spec.alpha, spec.beta, spec.c
        if spec.variable == "alpha":
            alpha = x
        elif spec.variable == "beta":
            beta = x
        elif spec.variable == "c":
            c = x
        else:
            alpha = beta = x
        res = tight_bound(alpha, beta, Overlap.from_c(c))
        return SweepRow(x, res.value, res.theta_opt, res.regime)

    workers = spec.workers or _thread_cap()
    if workers > 1:
        with ThreadPoolExecutor(max_workers=workers) as pool:
            return list(pool.map(point, grid))
    return [point(x) for x in grid]
