"""
Per-slot mutual information, relay-state classification and the
conditional mutual information seen by each user.

The array functions (``mi_from_gains``, ``classify_states``,
``conditional_mi``) broadcast over numpy arrays and back both the scalar
API and the vectorized Monte Carlo path.

Boundary convention: a mutual information exactly equal to the rate counts
as a decoding failure.
"""

from __future__ import annotations

import enum
import math
from dataclasses import dataclass, replace

import numpy as np

from .errors import ParameterError
from .fading import (RS_N, RS_N1, U1_N, U1_N1, U1_N2, U2_N, U2_N1, U2_N2,
                     SlotRealization, TrialDraw)

ONC_PREFACTOR = 2.0 / 3.0


class NoiseMode(enum.Enum):
    FINITE_SNR = "finite-snr"
    INTERFERENCE_LIMITED = "interference-limited"


class RelayState(enum.IntEnum):
    """Which messages the relay decoded: both, b1 only, b2 only, neither."""

    BOTH = 1
    FIRST_ONLY = 2
    SECOND_ONLY = 3
    NEITHER = 4


@dataclass(frozen=True)
class RateParams:
    rate: float
    prefactor: float = ONC_PREFACTOR
    gamma: float | None = None
    noise_mode: NoiseMode = NoiseMode.INTERFERENCE_LIMITED

    def __post_init__(self):
        if not self.rate >= 0:
            raise ParameterError(f"rate must be >= 0, got {self.rate}")
        if not 0 < self.prefactor <= 1:
            raise ParameterError(f"prefactor must lie in (0, 1], got {self.prefactor}")
        if self.noise_mode is NoiseMode.FINITE_SNR and not (self.gamma is not None and self.gamma > 0):
            raise ParameterError("finite-SNR mode needs gamma > 0")

    def with_prefactor(self, prefactor: float) -> "RateParams":
        return replace(self, prefactor=prefactor)

    @property
    def sinr_threshold(self) -> float:
        """SINR below or at which the rate is not supported."""
        return 2.0 ** (self.rate / self.prefactor) - 1.0


def sinr(g_desired, interference, params: RateParams):
    """SINR from the desired gain and the summed interferer gains.

    Interference-limited mode with zero interference yields ``inf`` (or 0
    when the desired gain is also 0).
    """
    g_desired = np.asarray(g_desired, dtype=float)
    interference = np.asarray(interference, dtype=float)
    if params.noise_mode is NoiseMode.FINITE_SNR:
        return g_desired * params.gamma / (interference * params.gamma + 1.0)
    with np.errstate(divide="ignore", invalid="ignore"):
        out = g_desired / interference
    return np.where(g_desired == 0, 0.0, out)


def mi_from_gains(g_desired, interference, params: RateParams):
    return params.prefactor * np.log2(1.0 + sinr(g_desired, interference, params))


def mutual_information(slot: SlotRealization, params: RateParams) -> float:
    """``prefactor * log2(1 + SINR)`` for one slot, in bit/s/Hz."""
    g = slot.g_desired
    interference = slot.interference
    if g < 0 or (slot.g_int.size and slot.g_int.min() < 0):
        raise ParameterError("slot gains must be nonnegative")
    if params.noise_mode is NoiseMode.FINITE_SNR:
        ratio = g * params.gamma / (interference * params.gamma + 1.0)
    elif g == 0:
        ratio = 0.0
    elif interference == 0:
        return math.inf
    else:
        ratio = g / interference
    return params.prefactor * math.log2(1.0 + ratio)


def classify_states(i_br_n, i_br_n1, rate):
    """Vectorized relay state (integer array with values 1..4)."""
    ok_n = np.asarray(i_br_n) > rate
    ok_n1 = np.asarray(i_br_n1) > rate
    return np.where(ok_n, np.where(ok_n1, 1, 2), np.where(ok_n1, 3, 4))


def classify_relay_state(i_br_n: float, i_br_n1: float, rate_R: float) -> RelayState:
    ok_n, ok_n1 = i_br_n > rate_R, i_br_n1 > rate_R
    if ok_n:
        return RelayState.BOTH if ok_n1 else RelayState.FIRST_ONLY
    return RelayState.SECOND_ONLY if ok_n1 else RelayState.NEITHER


def conditional_mi(theta, i_own, i_other, i_relay, own_only_state):
    """Conditional MI at a user, vectorized over trials.

    ``i_own`` is the direct slot carrying the user's own message, ``i_other``
    the slot carrying the partner's message and ``i_relay`` the relay slot.
    ``own_only_state`` is the relay state in which only the user's own
    message was forwarded (2 for U1, 3 for U2).
    """
    theta = np.asarray(theta)
    i_own = np.asarray(i_own, dtype=float)
    via_xor = np.maximum(i_own, np.minimum(i_other, i_relay))
    via_forward = np.maximum(i_own, i_relay)
    return np.where(theta == 1, via_xor,
                    np.where(theta == own_only_state, via_forward, i_own))


def _conditional_mi_scalar(theta, i_own, i_other, i_relay, own_only_state):
    if theta == RelayState.BOTH:
        return max(i_own, min(i_other, i_relay))
    if theta == own_only_state:
        return max(i_own, i_relay)
    return i_own


def conditional_mi_u1(theta, i_b1_n: float, i_b1_n1: float, i_r1_n2: float) -> float:
    return _conditional_mi_scalar(theta, i_b1_n, i_b1_n1, i_r1_n2, RelayState.FIRST_ONLY)


def conditional_mi_u2(theta, i_b2_n: float, i_b2_n1: float, i_r2_n2: float) -> float:
    """U2 counterpart: own message in slot n+1, partner's in slot n."""
    return _conditional_mi_scalar(theta, i_b2_n1, i_b2_n, i_r2_n2, RelayState.SECOND_ONLY)


# --- vectorized evaluation over gain blocks -------------------------------

def block_mi(gains: np.ndarray, params: RateParams) -> np.ndarray:
    """MI per realization for a ``(n, 8, K + 1)`` gain block -> ``(n, 8)``."""
    return mi_from_gains(gains[..., 0], gains[..., 1:].sum(axis=-1), params)


def block_states(mi: np.ndarray, rate: float) -> np.ndarray:
    return classify_states(mi[:, RS_N], mi[:, RS_N1], rate)


def block_conditional_mi(mi: np.ndarray, rate: float, user: int = 1) -> np.ndarray:
    theta = block_states(mi, rate)
    if user == 1:
        return conditional_mi(theta, mi[:, U1_N], mi[:, U1_N1], mi[:, U1_N2], 2)
    if user == 2:
        return conditional_mi(theta, mi[:, U2_N1], mi[:, U2_N], mi[:, U2_N2], 3)
    raise ParameterError(f"user must be 1 or 2, got {user}")


def block_outage_onc(gains: np.ndarray, params: RateParams, user: int = 1) -> np.ndarray:
    return block_conditional_mi(block_mi(gains, params), params.rate, user) <= params.rate


def block_outage_noncoop(gains: np.ndarray, params: RateParams, user: int = 1) -> np.ndarray:
    slot = U1_N if user == 1 else U2_N1
    g = gains[:, slot]
    return mi_from_gains(g[:, 0], g[:, 1:].sum(axis=-1), params) <= params.rate


# --- scalar per-trial predicates ------------------------------------------

def _trial_mis(trial: TrialDraw, params: RateParams):
    return [mutual_information(s, params) for s in trial.rs_slots + trial.u1_slots + trial.u2_slots]


def trial_relay_state(trial: TrialDraw, params: RateParams) -> RelayState:
    mi = _trial_mis(trial, params)
    return classify_relay_state(mi[RS_N], mi[RS_N1], params.rate)


def trial_conditional_mi(trial: TrialDraw, params: RateParams, user: int = 1) -> float:
    mi = _trial_mis(trial, params)
    theta = classify_relay_state(mi[RS_N], mi[RS_N1], params.rate)
    if user == 1:
        return conditional_mi_u1(theta, mi[U1_N], mi[U1_N1], mi[U1_N2])
    if user == 2:
        return conditional_mi_u2(theta, mi[U2_N], mi[U2_N1], mi[U2_N2])
    raise ParameterError(f"user must be 1 or 2, got {user}")


def trial_outage_onc(trial: TrialDraw, params: RateParams, user: int = 1) -> bool:
    """Outage indicator of the opportunistic scheme for one trial."""
    return trial_conditional_mi(trial, params, user) <= params.rate


def trial_outage_noncoop(slot: SlotRealization, params: RateParams) -> bool:
    """Direct link only, one slot per message; ``params.prefactor`` must be 1."""
    if params.prefactor != 1:
        raise ParameterError("non-cooperative transmission uses prefactor 1")
    return mutual_information(slot, params) <= params.rate
