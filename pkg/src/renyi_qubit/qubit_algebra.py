"""Two-level unitary algebra and the states that saturate the bound.

States are length-2 complex numpy arrays holding the components in the
eigenbasis of the first observable ``A``; a unitary ``T`` maps them to the
eigenbasis of ``B`` (``T[l, k] = <b_l|a_k>``).
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from .bound_engine import BoundResult, Overlap, SQRT1_2
from .entropy_core import check_index, renyi_pair

UNITARY_TOL = 1e-12
NORM_TOL = 1e-12
# Amplitudes below this are rounding residue of exact zeros. Entropies of
# small index are discontinuous at zero probability, so residue must not
# count as support.
AMPLITUDE_FLOOR = 1e-14


def check_unitary(t, tol=UNITARY_TOL):
    t = np.asarray(t, dtype=complex)
    if t.shape != (2, 2) or not np.all(np.isfinite(t)):
        raise ValueError("expected a finite 2x2 matrix")
    if np.max(np.abs(t.conj().T @ t - np.eye(2))) > tol:
        raise ValueError("matrix is not unitary")
    return t


def check_state(psi):
    psi = np.asarray(psi, dtype=complex)
    if psi.shape[-1] != 2:
        raise ValueError("qubit states have two components")
    norms = np.sum(np.abs(psi) ** 2, axis=-1)
    if np.any(np.abs(norms - 1) > NORM_TOL):
        raise ValueError("state is not normalized")
    return psi


def phase_diag(x):
    """``Phi(x) = exp(i diag(x))``."""
    return np.diag(np.exp(1j * np.asarray(x, dtype=float)))


def rotation(gamma_t):
    """``V(gamma_t) = [[cos, sin], [-sin, cos]]``."""
    c, s = math.cos(gamma_t), math.sin(gamma_t)
    return np.array([[c, s], [-s, c]], dtype=complex)


def overlap_of(t, tol=UNITARY_TOL):
    """Overlap ``max |T_lk|`` of a unitary.

    ``gamma`` is taken as ``atan2`` of the first-row moduli, which stays
    accurate near ``c = 1``; ``cos(gamma)`` then equals ``max |T_lk|`` up to
    the unitarity tolerance. Entries below ``AMPLITUDE_FLOOR`` count as zero.
    """
    t = check_unitary(t, tol)
    mags = np.abs(t)
    if mags.max() < SQRT1_2 - 1e-9:
        raise ValueError("overlap below 1/sqrt(2); matrix cannot be unitary")
    small, big = sorted(mags[0])
    if small < AMPLITUDE_FLOOR:
        # same floor as the state amplitudes, so both sides agree on support
        return Overlap.from_gamma(0.0)
    return Overlap.from_gamma(math.atan2(small, big))


@dataclass(frozen=True)
class UnitaryFactorization:
    """``T = Phi(u) V(gamma_t) Phi(v)`` with the gauge ``v[0] = 0``."""

    u: tuple
    gamma_t: float
    v: tuple

    def matrix(self):
        return phase_diag(self.u) @ rotation(self.gamma_t) @ phase_diag(self.v)


def factorize(t, tol=UNITARY_TOL):
    """Split a 2x2 unitary into phases and a real rotation.

    ``gamma_t = arccos |T11|`` (computed as an ``atan2`` of the first-row
    moduli). A vanishing rotation entry leaves one phase free; it is set to 0.
    """
    t = check_unitary(t, tol)
    gamma_t = math.atan2(abs(t[0, 1]), abs(t[0, 0]))
    c, s = math.cos(gamma_t), math.sin(gamma_t)
    # entries: T11 = e^{i u1} c, T12 = e^{i(u1+v2)} s, T21 = -e^{i u2} s, T22 = e^{i(u2+v2)} c
    if s <= 1e-15:
        u1 = float(np.angle(t[0, 0]))
        v2 = 0.0
        u2 = float(np.angle(t[1, 1]))
    elif c <= 1e-15:
        u1 = 0.0
        v2 = float(np.angle(t[0, 1]))
        u2 = float(np.angle(-t[1, 0]))
    else:
        u1 = float(np.angle(t[0, 0]))
        v2 = float(np.angle(t[0, 1])) - u1
        u2 = float(np.angle(-t[1, 0]))
    return UnitaryFactorization((u1, u2), gamma_t, (0.0, v2))


def epsilon_t(gamma_t):
    """``sign(pi/4 - gamma_t)``, taking ``+1`` at ``gamma_t = pi/4`` where
    either sign yields states with the same entropy sums."""
    return 1 if gamma_t <= math.pi / 4 else -1


def _quarter_turn_state(angle, n):
    # [cos(x + n pi/2), sin(x + n pi/2)] without rounding an exact zero away
    c, s = math.cos(angle), math.sin(angle)
    return np.array([c, s] if n == 0 else [-s, c], dtype=complex)


@dataclass(frozen=True)
class MinimizerState:
    theta: float
    n: int
    psi: np.ndarray


@dataclass(frozen=True)
class MinimizerFamily:
    """States achieving the bound, one per ``(theta_opt, n)`` at zero global
    phase. Multiplying any of them by ``e^{i phi}`` gives another minimizer."""

    theta_opts: tuple
    epsilon_t: int
    v: tuple
    factorization: UnitaryFactorization
    states: tuple


def minimizer_states(t, bound: BoundResult, tol=UNITARY_TOL):
    """Enumerate ``Phi(-v) [cos(eps theta + n pi/2), sin(eps theta + n pi/2)]``
    over the bound's minimizing angles and ``n in {0, 1}``."""
    t = check_unitary(t, tol)
    ov = overlap_of(t, tol)
    if abs(ov.c - bound.overlap.c) > 1e-9:
        raise ValueError(
            f"bound was computed for c={bound.overlap.c!r} but the unitary has c={ov.c!r}")
    fac = factorize(t, tol)
    eps = epsilon_t(fac.gamma_t)
    back = phase_diag(-np.asarray(fac.v))
    states = []
    for theta in bound.theta_opt:
        for n in (0, 1):
            psi = back @ _quarter_turn_state(eps * theta, n)
            states.append(MinimizerState(float(theta), n, psi))
    return MinimizerFamily(tuple(bound.theta_opt), eps, fac.v, fac, tuple(states))


def _clean(amps):
    amps = np.asarray(amps, dtype=complex)
    return np.where(np.abs(amps) < AMPLITUDE_FLOOR, 0.0, amps)


def probabilities(psi, t=None):
    """Outcome probabilities of ``A`` (or of ``B`` when ``t`` is given)."""
    psi = np.asarray(psi, dtype=complex)
    amps = psi if t is None else psi @ np.asarray(t, dtype=complex).T
    return np.abs(_clean(amps)) ** 2


def entropy_sum_of_state(psi, t, alpha, beta):
    """``H_alpha(|psi|^2) + H_beta(|T psi|^2)``.

    ``psi`` may also be an ``(n, 2)`` array of states; the result is then an
    array of ``n`` sums.
    """
    alpha = check_index(alpha, "alpha")
    beta = check_index(beta, "beta")
    psi = check_state(psi)
    t = check_unitary(t)
    pa = probabilities(psi)
    pb = probabilities(psi, t)
    total = renyi_pair(pa[..., 0], pa[..., 1], alpha) + renyi_pair(pb[..., 0], pb[..., 1], beta)
    return float(total) if np.ndim(total) == 0 else total


def _max_angle(amps):
    # arccos sqrt(max p) written as atan2(min |a|, max |a|): no loss near p = 1
    mags = np.sort(np.abs(amps), axis=-1)
    return np.arctan2(mags[..., 0], mags[..., 1])


def landau_pollak_residual(psi, t):
    """``arccos sqrt(max_k |psi_k|^2) + arccos sqrt(max_l |(T psi)_l|^2) - arccos c``.

    Nonnegative for every state; zero exactly on the saturating states.
    """
    psi = check_state(psi)
    t = check_unitary(t)
    gamma = overlap_of(t).gamma
    res = _max_angle(_clean(psi)) + _max_angle(_clean(psi @ t.T)) - gamma
    return float(res) if np.ndim(res) == 0 else res


def random_states(rng, size):
    """Pure states uniform on the Bloch sphere, shape ``(size, 2)``."""
    cos_colat = rng.uniform(-1.0, 1.0, size)
    phase = rng.uniform(0.0, 2 * math.pi, size)
    half = np.arccos(cos_colat) / 2
    return np.stack([np.cos(half), np.exp(1j * phase) * np.sin(half)], axis=-1)


def haar_unitary(rng):
    """Haar-distributed 2x2 unitary (QR of a complex Gaussian, phase-fixed)."""
    z = (rng.standard_normal((2, 2)) + 1j * rng.standard_normal((2, 2))) / math.sqrt(2)
    q, r = np.linalg.qr(z)
    d = np.diagonal(r)
    return q * (d / np.abs(d))
