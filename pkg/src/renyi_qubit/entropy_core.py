"""Scalar entropy primitives for two-outcome distributions.

Everything here works in nats. Functions accept floats or numpy arrays for the
probability / angle argument; the entropic index is always a plain scalar.

Conventions at the special indices:

* ``lam == 1`` is evaluated through an explicit Shannon branch with
  ``0 log 0 = 0`` (never by perturbing ``lam``).
* ``lam == 0`` measures the support: ``H_0 = log(#nonzero outcomes)`` and
  ``big_d(0, theta)`` counts the nonzero entries of ``(cos^2, sin^2)``.
  A probability counts as nonzero only when it is exactly nonzero.
"""

from __future__ import annotations

import math

import numpy as np
from scipy.special import entr

LOG2 = math.log(2.0)
QUARTER_PI = math.pi / 4
HALF_PI = math.pi / 2


def check_index(lam, name="lam"):
    """Validate an entropic index and return it as a float."""
    lam = float(lam)
    if not math.isfinite(lam) or lam < 0:
        raise ValueError(f"{name} must be a finite nonnegative number, got {lam!r}")
    return lam


def check_probability(p):
    arr = np.asarray(p, dtype=float)
    if np.any(~np.isfinite(arr)) or np.any(arr < 0) or np.any(arr > 1):
        raise ValueError(f"probability outside [0, 1]: {p!r}")
    return arr


def _check_angle(theta, name="theta"):
    arr = np.asarray(theta, dtype=float)
    if np.any(~np.isfinite(arr)):
        raise ValueError(f"{name} must be finite")
    return arr


def _out(x):
    return float(x) if np.ndim(x) == 0 else x


def renyi_pair(p, q, lam):
    """Renyi entropy of the distribution ``(p, q)`` with ``p + q = 1``.

    Taking both weights separately avoids the cancellation in ``1 - p`` when
    the caller already has them (e.g. ``cos^2`` and ``sin^2`` of an angle).
    No validation; see :func:`renyi_entropy` for the checked entry point.
    """
    p = np.asarray(p, dtype=float)
    q = np.asarray(q, dtype=float)
    if lam == 0:
        h = np.log((p > 0).astype(float) + (q > 0))
    elif lam == 1:
        h = entr(p) + entr(q)
    else:
        # p**lam + q**lam - 1 = p expm1(d log p) + q expm1(d log q), d = lam - 1.
        # Both terms share the sign of -d, so this has no cancellation as lam
        # approaches 1 or the distribution approaches a deterministic one;
        # log of the larger weight comes from the smaller, which 1 - p keeps exact.
        d = lam - 1.0
        big, small = np.maximum(p, q), np.minimum(p, q)
        with np.errstate(divide="ignore", invalid="ignore", over="ignore"):
            tail = np.where(small > 0, small * np.expm1(d * np.log(small)), 0.0)
            excess = big * np.expm1(d * np.log1p(-small)) + tail
            near = np.log1p(excess)
        direct = np.log(p**lam + q**lam)
        h = np.where(np.abs(excess) < 0.5, near, direct) / -d
    return np.clip(h, 0.0, LOG2)


def renyi_entropy(p, lam):
    """Renyi entropy ``H_lam`` of the two-outcome distribution ``(p, 1 - p)``."""
    lam = check_index(lam)
    p = check_probability(p)
    return _out(renyi_pair(p, 1.0 - p, lam))


def min_entropy(p):
    """``-log max(p, 1 - p)``, the large-index limit of :func:`renyi_entropy`."""
    p = check_probability(p)
    return _out(-np.log(np.maximum(p, 1.0 - p)))


def angle_weights(theta):
    """``(cos^2 theta, sin^2 theta)`` computed independently of each other."""
    theta = np.asarray(theta, dtype=float)
    return np.cos(theta) ** 2, np.sin(theta) ** 2


def big_d(lam, theta):
    """``(cos^2 theta)^lam + (sin^2 theta)^lam``.

    At ``lam == 0`` this is the number of nonzero weights (1 or 2), so that
    ``log big_d(0, theta)`` is the support entropy ``H_0``.
    """
    lam = check_index(lam)
    c2, s2 = angle_weights(_check_angle(theta))
    if lam == 0:
        return _out((c2 > 0).astype(float) + (s2 > 0))
    return _out(c2**lam + s2**lam)


def big_d_prime(lam, theta):
    """Derivative of :func:`big_d` in ``theta``.

    Where a weight vanishes exactly and ``lam < 1`` the closed form is
    ``0 * inf``; the one-sided limit is returned instead. Approaching a zero
    of ``sin^2`` from inside ``(0, pi/2)`` that limit is ``0`` for
    ``lam > 1/2``, ``1`` for ``lam == 1/2`` and ``+inf`` for ``lam < 1/2``
    (a zero of ``cos^2`` gives the negated values).
    """
    lam = check_index(lam)
    if lam == 0:
        raise ValueError("big_d_prime is undefined at lam = 0")
    theta = _check_angle(theta)
    c2, s2 = angle_weights(theta)
    with np.errstate(divide="ignore", invalid="ignore"):
        val = lam * np.sin(2 * theta) * (s2 ** (lam - 1) - c2 ** (lam - 1))
    if lam < 1:
        if lam > 0.5:
            edge = 0.0
        elif lam == 0.5:
            edge = 1.0
        else:
            edge = math.inf
        val = np.where(s2 == 0, edge, val)
        val = np.where(c2 == 0, -edge, val)
    return _out(val)


def curvature_k(lam, theta):
    """``K_lam(theta)``, with ``K / big_d**2`` the second derivative of
    ``log big_d(lam, theta) / (1 - lam)``.

    Requires ``lam > 0``, ``lam != 1`` and ``theta`` strictly inside
    ``(0, pi/2)``. At ``lam == 1`` use :func:`shannon_curvature`.
    """
    lam = check_index(lam)
    if lam == 0 or lam == 1:
        raise ValueError("curvature_k needs lam > 0 and lam != 1")
    theta = _check_angle(theta)
    if np.any(theta <= 0) or np.any(theta >= HALF_PI):
        raise ValueError("curvature_k needs theta in (0, pi/2)")
    c2, s2 = angle_weights(theta)
    quarter_sin2 = np.sin(2 * theta) ** 2 / 4
    k = (2 * lam / (1 - lam)) * (
        (2 * lam - 1) * quarter_sin2 ** (lam - 1) - c2 ** (2 * lam - 1) - s2 ** (2 * lam - 1)
    )
    return _out(k)


def shannon_curvature(theta):
    """Second derivative in ``theta`` of the Shannon entropy of ``(cos^2, sin^2)``."""
    theta = _check_angle(theta)
    if np.any(theta <= 0) or np.any(theta >= HALF_PI):
        raise ValueError("shannon_curvature needs theta in (0, pi/2)")
    c2, s2 = angle_weights(theta)
    return _out(2 * np.cos(2 * theta) * np.log(c2 / s2) - 4)


def entropy_slope(lam, theta):
    """Derivative in ``theta`` of ``H_lam(cos^2 theta, sin^2 theta)``.

    Evaluated on the open quarter-period; at exact zeros of a weight the
    :func:`big_d_prime` limits carry through (signed infinity for small
    indices).
    """
    theta = np.asarray(theta, dtype=float)
    c2, s2 = angle_weights(theta)
    if lam == 0:
        return _out(np.zeros_like(theta))
    if lam == 1:
        with np.errstate(divide="ignore", invalid="ignore"):
            val = np.sin(2 * theta) * (np.log(c2) - np.log(s2))
        val = np.where((c2 == 0) | (s2 == 0), 0.0, val)
        return _out(val)
    return _out(big_d_prime(lam, theta) / ((1 - lam) * (c2**lam + s2**lam)))


def _check_reduced(gamma, theta, upper):
    gamma = float(gamma)
    if not 0 <= gamma <= QUARTER_PI:
        raise ValueError(f"gamma must lie in [0, pi/4], got {gamma!r}")
    theta = _check_angle(theta)
    if np.any(theta < 0) or np.any(theta > upper(gamma)):
        raise ValueError("theta outside its admissible interval")
    return gamma, theta


def entropy_sum_profile(alpha, beta, gamma, theta):
    """``H_alpha(cos^2 theta, .) + H_beta(cos^2(gamma - theta), .)`` for
    ``theta`` anywhere in ``[0, pi/4]``.

    This is the phase-optimized entropy sum before the angle is restricted to
    ``[0, gamma]``; :func:`objective` is the restricted, checked version.
    """
    alpha = check_index(alpha, "alpha")
    beta = check_index(beta, "beta")
    gamma, theta = _check_reduced(gamma, theta, lambda g: QUARTER_PI)
    return _out(_profile(alpha, beta, gamma, theta))


def _profile(alpha, beta, gamma, theta):
    ca, sa = angle_weights(theta)
    cb, sb = angle_weights(gamma - np.asarray(theta, dtype=float))
    return renyi_pair(ca, sa, alpha) + renyi_pair(cb, sb, beta)


def _profile_slope(alpha, beta, gamma, theta):
    theta = np.asarray(theta, dtype=float)
    return np.asarray(entropy_slope(alpha, theta)) - np.asarray(entropy_slope(beta, gamma - theta))


def objective(alpha, beta, gamma, theta):
    """Entropy sum minimized by the tight bound, for ``theta`` in ``[0, gamma]``."""
    alpha = check_index(alpha, "alpha")
    beta = check_index(beta, "beta")
    gamma, theta = _check_reduced(gamma, theta, lambda g: g)
    return _out(_profile(alpha, beta, gamma, theta))


def delta_gap(beta, theta, gamma):
    """``[D_beta(gamma - theta) - D_beta(gamma + theta)] / (beta - 1)``.

    Nonnegative on ``[0, pi/4]^2``, which is why the phase ``phi_2 = 0``
    minimizes the second entropy.
    """
    beta = check_index(beta, "beta")
    if beta == 0 or beta == 1:
        raise ValueError("delta_gap needs beta > 0 and beta != 1")
    theta = _check_angle(theta)
    gamma = _check_angle(gamma, "gamma")
    for arr in (theta, gamma):
        if np.any(arr < 0) or np.any(arr > QUARTER_PI):
            raise ValueError("delta_gap arguments must lie in [0, pi/4]")
    c_minus, s_minus = angle_weights(gamma - theta)
    c_plus, s_plus = angle_weights(gamma + theta)
    diff = (c_minus**beta + s_minus**beta) - (c_plus**beta + s_plus**beta)
    return _out(diff / (beta - 1))
