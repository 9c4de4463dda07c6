"""Closed-form ergodic capacities for JT-CoMP VP-NOMA.

Every per-user ergodic rate is a difference of two terms of the form
E[log2(X + shift)] with X a sum of independent exponentials (distinct rates).
That expectation reduces to a weighted sum of ln(shift) + exp(z)E1(z) values,
which this module evaluates without ever forming exp(z) on its own: the
continued fraction computes the scaled product exp(z)E1(z) directly, so large
arguments neither overflow nor cancel. Closed forms exist only for the CoMP
scheme; baselines are Monte-Carlo only.
"""

import math

import numpy as np

from .channel import LinkStatistics
from .geometry import user_index
from .schemes import SystemParams

_LN2 = math.log(2.0)
_EULER_GAMMA = 0.5772156649015328606

# Rates closer than _DEGENERACY_GAP (relative) are spread symmetrically
# within their cluster with step _CLUSTER_SPREAD. Centering the spread cancels
# the first-order bias, and the step keeps the partial-fraction weights small
# enough that the identity retains ~8 digits in the fully degenerate case.
_DEGENERACY_GAP = 1e-7
_CLUSTER_SPREAD = 1e-4


class DegenerateRatesError(ValueError):
    """Raised when rates still coincide exactly after perturbation."""


def _ei_series(x: float) -> float:
    # Ei(x) = gamma + ln|x| + sum x^n/(n n!), converges fast for |x| <= 1
    acc = _EULER_GAMMA + math.log(-x)
    term = 1.0
    for n in range(1, 60):
        term *= x / n
        delta = term / n
        acc += delta
        if abs(delta) < 1e-17 * max(abs(acc), 1e-300):
            break
    return acc


def _e1_scaled_cf(z: float) -> float:
    # exp(z)*E1(z) via the Lentz continued fraction, reliable for z >= 1
    tiny = 1e-300
    b = z + 1.0
    c = 1.0 / tiny
    d = 1.0 / b
    h = d
    for i in range(1, 300):
        a = -float(i) * float(i)
        b += 2.0
        d = 1.0 / (a * d + b)
        c = b + a / c
        delta = c * d
        h *= delta
        if abs(delta - 1.0) < 1e-16:
            return h
    raise ArithmeticError(f"continued fraction failed to converge at z={z}")


def exp_integral_ei(x: float) -> float:
    """Exponential integral Ei(x) on the negative axis, |error| <= 1e-12."""
    x = float(x)
    if not x < 0:
        raise ValueError(f"Ei is only evaluated for x < 0, got {x}")
    if x >= -1.0:
        return _ei_series(x)
    return -math.exp(x) * _e1_scaled_cf(-x)


def _e1_scaled(z: float) -> float:
    """exp(z)*E1(z) for z > 0, equal to -exp(z)*Ei(-z); never overflows."""
    if z <= 1.0:
        return -math.exp(z) * _ei_series(-z)
    return _e1_scaled_cf(z)


def _ensure_distinct(rates: np.ndarray) -> np.ndarray:
    n = len(rates)
    if n == 1:
        return rates
    order = np.argsort(rates, kind="stable")
    ranked = rates[order]
    adjusted = rates.astype(float).copy()
    changed = False
    start = 0
    while start < n:
        end = start
        while end + 1 < n and \
                ranked[end + 1] - ranked[end] < _DEGENERACY_GAP * ranked[end + 1]:
            end += 1
        size = end - start + 1
        if size > 1:
            changed = True
            for member in range(size):
                factor = 1.0 + _CLUSTER_SPREAD * (member - (size - 1) / 2.0)
                adjusted[order[start + member]] = ranked[start + member] * factor
        start = end + 1
    if not changed:
        return rates
    if len(np.unique(adjusted)) != n:
        raise DegenerateRatesError(
            f"rates remain exactly duplicated after perturbation: "
            f"{adjusted.tolist()}")
    return adjusted


def hypoexp_log2_mean(rates, shift: float) -> float:
    """E[log2(X + shift)] for X a sum of independent exponentials.

    rates are the exponential rates (reciprocal means); shift must be >= 1.
    Nearly-equal rates are separated by a deterministic, centered relative
    spread before the distinct-rate identity is applied.
    """
    rates = np.atleast_1d(np.asarray(rates, dtype=float))
    if rates.ndim != 1 or len(rates) == 0:
        raise ValueError("rates must be a non-empty 1-d sequence")
    if np.any(rates <= 0) or not np.all(np.isfinite(rates)):
        raise ValueError(f"rates must be positive finite reals, got {rates.tolist()}")
    shift = float(shift)
    if not shift >= 1.0:
        raise ValueError(f"shift must be >= 1, got {shift}")
    rates = _ensure_distinct(rates)

    ln_shift = math.log(shift)
    acc = 0.0
    for i, k_i in enumerate(rates):
        weight = 1.0
        for h, k_h in enumerate(rates):
            if h != i:
                weight *= k_h / (k_h - k_i)
        acc += (ln_shift + _e1_scaled(shift * k_i)) * weight
    return acc / _LN2


def _near_shift(stats: LinkStatistics, params: SystemParams, col: int) -> float:
    return params.rho * float(stats.sigma_eps[:, col].sum()) \
        + params.rho * params.upsilon + 1.0


def near_esc_closed(stats: LinkStatistics, params: SystemParams,
                    cell: int, subband: int) -> float:
    """Exact ergodic rate of near user `cell` on sub-band `subband`."""
    j = user_index(cell)
    if j >= 3:
        raise ValueError(f"{cell!r} is not a near user (expected 1, 2 or 3)")
    if not 1 <= subband <= 3:
        raise ValueError(f"sub-band index must be 1..3, got {subband}")
    shift = _near_shift(stats, params, j)
    k = _ensure_distinct(1.0 / (params.alpha * params.rho * stats.sigma_hat[:, j]))
    value = hypoexp_log2_mean(k, shift) - hypoexp_log2_mean(np.delete(k, j), shift)
    return max(params.band_fractions[subband - 1] * value, 0.0)


def far_esc_closed(stats: LinkStatistics, params: SystemParams, far_user) -> float:
    """Exact ergodic rate of a jointly-served far user on its sub-band."""
    u = user_index(far_user)
    if u < 3:
        raise ValueError(f"{far_user!r} is not a far user (expected A, B or C)")
    shift = params.rho * float(stats.sigma_eps[:, u].sum()) + 1.0
    sigma = stats.sigma_hat[:, u]
    signal_rates = _ensure_distinct(
        1.0 / ((params.alpha + params.beta) * params.rho * sigma))
    interference_rates = _ensure_distinct(1.0 / (params.alpha * params.rho * sigma))
    value = hypoexp_log2_mean(signal_rates, shift) \
        - hypoexp_log2_mean(interference_rates, shift)
    return max(params.band_fractions[u - 3] * value, 0.0)


def total_esc_closed(stats: LinkStatistics, params: SystemParams) -> float:
    """Exact ergodic sum capacity of JT-CoMP VP-NOMA over all six users."""
    total = 0.0
    for subband, far_user in enumerate("ABC", start=1):
        for cell in (1, 2, 3):
            total += near_esc_closed(stats, params, cell, subband)
        total += far_esc_closed(stats, params, far_user)
    return total
