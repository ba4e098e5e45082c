"""Brute-force ground truth for the bound.

The search runs over pure states ``Phi(-phi2, phi2) s(theta)`` with
``theta in [0, pi/4]`` and ``phi2 in [0, pi/2]``, pushing each state through
the rotation by matrix arithmetic. Nothing here restricts ``theta`` to
``[0, gamma]``, fixes the phase, or uses any closed-form bound, and the Renyi
entropy is re-implemented locally, so agreement with
:mod:`renyi_qubit.bound_engine` is evidence rather than a tautology.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import NamedTuple

import numpy as np

from .qubit_algebra import factorize

QUARTER_PI = math.pi / 4
GRID_NEAR = 1e-6
KEEP_NEAR = 1e-7
ZERO_AMPLITUDE = 1e-14


@dataclass(frozen=True)
class OracleConfig:
    theta_grid: int = 2048
    phase_grid: int = 512
    refine_iters: int = 60
    seed: int = 0

    def __post_init__(self):
        if self.theta_grid < 64 or self.phase_grid < 64:
            raise ValueError("oracle grids need at least 64 points")
        if self.refine_iters < 1:
            raise ValueError("refine_iters must be positive")


class OracleResult(NamedTuple):
    value: float
    states: tuple
    points: tuple


def _renyi(p, q, lam):
    if lam == 0:
        return np.log(np.count_nonzero(np.stack([p, q]), axis=0).astype(float))
    if lam == 1:
        with np.errstate(divide="ignore", invalid="ignore"):
            h = -np.where(p > 0, p * np.log(p), 0.0) - np.where(q > 0, q * np.log(q), 0.0)
        return h
    return np.log(p**lam + q**lam) / (1.0 - lam)


def _rotated(gamma, theta, phi2):
    """Amplitudes of ``V(gamma) Phi(-phi2, phi2) s(theta)``; broadcasts."""
    e = np.exp(1j * phi2)
    a1 = np.cos(theta) * np.conj(e)
    a2 = np.sin(theta) * e
    cg, sg = math.cos(gamma), math.sin(gamma)
    b1 = cg * a1 + sg * a2
    b2 = -sg * a1 + cg * a2
    return b1, b2


def _prob(amp):
    p = np.abs(amp) ** 2
    # rounding residue of an exact zero must not count as support
    return np.where(np.abs(amp) < ZERO_AMPLITUDE, 0.0, p)


def _second_entropy(beta, gamma, theta, phi2):
    b1, b2 = _rotated(gamma, theta, phi2)
    return _renyi(_prob(b1), _prob(b2), beta)


def _entropy_sum(alpha, beta, gamma, theta, phi2):
    theta = np.asarray(theta, dtype=float)
    pa = _prob(np.cos(theta)), _prob(np.sin(theta))
    return _renyi(*pa, alpha) + _second_entropy(beta, gamma, theta, phi2)


def _mixing_angle(t):
    # the smallest modulus of a 2x2 unitary is sin(gamma)
    return min(math.asin(min(1.0, float(np.abs(t).min()))), QUARTER_PI)


def _golden(f, a, b, tol=1e-14):
    """Minimum of ``f`` on ``[a, b]``, endpoints included."""
    invphi = (math.sqrt(5) - 1) / 2
    best = min(((a, f(a)), (b, f(b))), key=lambda tv: tv[1])
    x1, x2 = b - invphi * (b - a), a + invphi * (b - a)
    f1, f2 = f(x1), f(x2)
    while b - a > tol:
        if f1 <= f2:
            b, x2, f2 = x2, x1, f1
            x1 = b - invphi * (b - a)
            f1 = f(x1)
        else:
            a, x1, f1 = x1, x2, f2
            x2 = a + invphi * (b - a)
            f2 = f(x2)
    inner = (x1, f1) if f1 <= f2 else (x2, f2)
    return inner if inner[1] < best[1] else best


def _refine(f, f_phis, theta, phi, h_theta, phis, rounds):
    """Coordinate descent: a local golden search in ``theta`` alternating
    with a full scan of the phase axis refined inside the best cell."""
    h_phi = phis[1] - phis[0]
    value = f(theta, phi)
    for _ in range(rounds):
        start = value
        theta, value = _golden(lambda x: f(x, phi),
                               max(0.0, theta - h_theta), min(QUARTER_PI, theta + h_theta))
        j = int(np.argmin(f_phis(theta)))
        cell = _golden(lambda y: f(theta, y),
                       max(0.0, phis[j] - h_phi), min(math.pi / 2, phis[j] + h_phi))
        if cell[1] < value:
            phi, value = cell
        if start - value <= 0.0:
            break
    return theta, phi, value


def _to_state(theta, phi, fac):
    psi = np.array([math.cos(theta) * np.exp(-1j * phi), math.sin(theta) * np.exp(1j * phi)])
    if fac.gamma_t > QUARTER_PI:
        # V(pi/2 - g) = J V(g) diag(-1, 1)
        psi = psi * np.array([-1.0, 1.0])
    return np.exp(-1j * np.asarray(fac.v)) * psi


def fubini_study(psi, chi):
    """Angle between two rays (global phase ignored)."""
    overlap = abs(np.vdot(psi, chi))
    residual = np.linalg.norm(np.asarray(chi) - np.vdot(psi, chi) * np.asarray(psi))
    return math.atan2(residual, overlap)


def brute_force_min(alpha, beta, t, cfg=OracleConfig()):
    """Grid-then-refine minimum of the entropy sum for the unitary ``t``.

    Returns the refined minimum, the refined minimizers as states in the
    eigenbasis of ``A`` (one per global-phase class) and their ``(theta,
    phi2)`` coordinates. Candidates are the discrete local minima of the
    phase-minimized grid profile lying within ``GRID_NEAR`` of the grid
    minimum; refined points more than ``KEEP_NEAR`` above the best are dropped.
    """
    alpha, beta = float(alpha), float(beta)
    t = np.asarray(t, dtype=complex)
    gamma = _mixing_angle(t)
    # eigenstates of B sit at theta = gamma, phi2 = 0; keep them on the grid
    thetas = np.union1d(np.linspace(0.0, QUARTER_PI, cfg.theta_grid), [gamma])
    phis = np.linspace(0.0, math.pi / 2, cfg.phase_grid)
    values = _entropy_sum(alpha, beta, gamma, thetas[:, None], phis[None, :])
    profile = values.min(axis=1)
    best_phi = values.argmin(axis=1)
    grid_min = profile.min()

    def f(theta, phi):
        return float(_entropy_sum(alpha, beta, gamma, theta, phi))

    def f_phis(theta):
        return _entropy_sum(alpha, beta, gamma, theta, phis)

    h_theta = QUARTER_PI / (cfg.theta_grid - 1)
    refined = []
    n = len(thetas)
    for i in range(n):
        if profile[i] > grid_min + GRID_NEAR:
            continue
        if (i > 0 and profile[i - 1] < profile[i]) or (i < n - 1 and profile[i + 1] < profile[i]):
            continue
        refined.append(_refine(f, f_phis, float(thetas[i]), float(phis[best_phi[i]]),
                               h_theta, phis, cfg.refine_iters))

    value = min(v for _, _, v in refined)
    fac = factorize(t, tol=1e-9)
    states, points = [], []
    for theta, phi, v in sorted(refined, key=lambda r: r[2]):
        if v > value + KEEP_NEAR:
            continue
        psi = _to_state(theta, phi, fac)
        if any(fubini_study(psi, other) < 1e-7 for other in states):
            continue
        states.append(psi)
        points.append((theta, phi))
    return OracleResult(value, tuple(states), tuple(points))


def phase_scan(beta, gamma, theta, cfg=OracleConfig()):
    """``H_beta`` of ``V(gamma) Phi(-phi2, phi2) s(theta)`` over the ``phi2`` grid."""
    phis = np.linspace(0.0, math.pi / 2, cfg.phase_grid)
    return phis, _second_entropy(float(beta), float(gamma), float(theta), phis)


def verify_phase_optimality(beta, gamma, theta, cfg=OracleConfig()):
    """Grid minimum over ``phi2`` of the second entropy minus its value at
    ``phi2 = 0``. Never positive; ``>= -1e-9`` means ``phi2 = 0`` is optimal."""
    gamma, theta = float(gamma), float(theta)
    if not 0 < gamma <= QUARTER_PI:
        raise ValueError("gamma must lie in (0, pi/4]")
    if not 0 <= theta <= gamma:
        raise ValueError("theta must lie in [0, gamma]")
    _, values = phase_scan(beta, gamma, theta, cfg)
    return float(values.min() - values[0])
