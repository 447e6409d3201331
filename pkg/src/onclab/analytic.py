"""
Closed-form outage probabilities in the interference-limited regime.

The basic primitive is the tail of the ratio of one exponential variable to
a sum of independent exponentials,

    P[X / sum_k Y_k > t] = prod_k lambda_k / (lambda_k + t),

with ``lambda_k = E[X] / E[Y_k]``. Conditioning on the interferers gives
``E[exp(-t * sum_k Y_k / E[X])]``, a product of exponential Laplace
transforms, so the product form holds whether or not the ``lambda_k`` are
distinct. Complements are evaluated through ``log1p``/``expm1`` so that
outage values far below machine epsilon relative to 1 keep full precision.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction

import numpy as np

from .capacity import ONC_PREFACTOR, RelayState
from .errors import ConfigurationError, NumericalError, ParameterError


def as_sirs(sirs) -> np.ndarray:
    """Validate an SIR vector (K >= 1, all entries positive)."""
    arr = np.asarray(sirs, dtype=float).reshape(-1)
    if arr.size == 0:
        raise ParameterError("SIR vector must hold at least one interferer")
    if np.any(~(arr > 0)):
        raise ParameterError("SIR values must be > 0")
    return arr


def outage_threshold(rate: float, prefactor: float = ONC_PREFACTOR) -> float:
    """SINR threshold ``2**(rate / prefactor) - 1``."""
    if not rate >= 0:
        raise ParameterError(f"rate must be >= 0, got {rate}")
    return float(np.expm1(rate / prefactor * np.log(2.0)))


def _log_tail(t: float, sirs: np.ndarray) -> float:
    if not t >= 0:
        raise ParameterError(f"threshold must be >= 0, got {t}")
    return float(-np.sum(np.log1p(t / sirs)))


def ratio_tail(t: float, sirs) -> float:
    """``P[X / sum Y > t]`` in product form."""
    return float(np.exp(_log_tail(t, as_sirs(sirs))))


def ratio_cdf(t: float, sirs) -> float:
    """``P[X / sum Y <= t]``, accurate when the tail is close to 1."""
    return float(-np.expm1(_log_tail(t, as_sirs(sirs))))


def ratio_tail_paper_form(t: float, sirs, rtol: float = 1e-6) -> float:
    """Case-split evaluation of the same tail, used only as a cross-check.

    Pairwise-distinct SIRs go through the partial-fraction expansion of the
    hypoexponential interference sum; all-equal SIRs use ``(lambda / (lambda
    + t))**K``. The expansion's weights grow like the inverse product of the
    SIR gaps, so it is summed in exact rational arithmetic and rounded once.
    Ties among some but not all values, or values closer than ``rtol``,
    raise ``NumericalError``.
    """
    sirs = as_sirs(sirs)
    if not t >= 0:
        raise ParameterError(f"threshold must be >= 0, got {t}")
    if np.all(sirs == sirs[0]):
        lam = sirs[0]
        return float((lam / (lam + t)) ** sirs.size)
    s = np.sort(sirs)
    if np.any(np.diff(s) < rtol * s[1:]):
        raise NumericalError("SIR values too close for the partial-fraction form")
    lams = [Fraction(float(x)) for x in sirs]
    inv = [1 / x for x in lams]
    tf = Fraction(float(t))
    total = Fraction(0)
    for k, lam in enumerate(lams):
        weight = Fraction(1)
        for j in range(len(lams)):
            if j != k:
                weight *= inv[k] / (inv[k] - inv[j])
        total += lam / (lam + tf) * weight
    return float(total)


def pr_theta(rate_R: float, sirs_rs) -> np.ndarray:
    """Probabilities of relay states 1..4 (index 0..3)."""
    t = outage_threshold(rate_R)
    q = ratio_tail(t, sirs_rs)
    p = ratio_cdf(t, sirs_rs)
    return np.array([q * q, q * p, p * q, p * p])


def pr_outage_given_theta(theta, rate_R: float, sirs_b1, sirs_r1) -> float:
    """U1 outage probability conditioned on the relay state."""
    theta = RelayState(int(theta))
    t = outage_threshold(rate_R)
    sirs_b1, sirs_r1 = as_sirs(sirs_b1), as_sirs(sirs_r1)
    direct_fail = ratio_cdf(t, sirs_b1)
    if theta is RelayState.BOTH:
        # direct fails and not (slot n+1 and relay slot both succeed)
        log_both = _log_tail(t, sirs_b1) + _log_tail(t, sirs_r1)
        return float(direct_fail * -np.expm1(log_both))
    if theta is RelayState.FIRST_ONLY:
        return direct_fail * ratio_cdf(t, sirs_r1)
    return direct_fail


@dataclass(frozen=True)
class OutageBreakdown:
    p_theta: np.ndarray
    p_out_given_theta: np.ndarray
    p_total: float


def _check_same_k(*vectors):
    ks = {v.size for v in vectors}
    if len(ks) != 1:
        raise ConfigurationError(f"SIR vectors disagree on K: {sorted(ks)}")


def outage_onc(rate_R: float, sirs_rs, sirs_b1, sirs_r1) -> OutageBreakdown:
    """Total U1 outage of the opportunistic scheme with its breakdown."""
    sirs_rs, sirs_b1, sirs_r1 = as_sirs(sirs_rs), as_sirs(sirs_b1), as_sirs(sirs_r1)
    _check_same_k(sirs_rs, sirs_b1, sirs_r1)
    p_theta = pr_theta(rate_R, sirs_rs)
    p_cond = np.array([pr_outage_given_theta(th, rate_R, sirs_b1, sirs_r1) for th in RelayState])
    return OutageBreakdown(p_theta, p_cond, float(np.dot(p_theta, p_cond)))


def outage_noncoop(rate_R: float, sirs_b1) -> float:
    return ratio_cdf(outage_threshold(rate_R, 1.0), sirs_b1)
