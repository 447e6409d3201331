import math

import numpy as np
import pytest
from hypothesis import given, strategies as st

from onclab.capacity import (NoiseMode, RateParams, RelayState, classify_relay_state,
                             conditional_mi_u1, conditional_mi_u2, mutual_information,
                             trial_conditional_mi, trial_outage_noncoop, trial_outage_onc,
                             trial_relay_state)
from onclab.errors import ParameterError
from onclab.fading import SlotRealization, TrialDraw

IL = NoiseMode.INTERFERENCE_LIMITED


def slot(g, ints):
    return SlotRealization(g, np.asarray(ints, dtype=float))


def make_trial(rs, u1, u2=None):
    """Gains as (desired, [interferers]) pairs."""
    u2 = u2 or u1
    return TrialDraw(tuple(slot(*x) for x in rs), tuple(slot(*x) for x in u1),
                     tuple(slot(*x) for x in u2))


def test_zero_desired_gives_zero():
    assert mutual_information(slot(0.0, [1.0, 2.0]), RateParams(1.0)) == 0.0


def test_interference_limited_unit_sinr():
    assert mutual_information(slot(3.0, [1.0, 2.0]), RateParams(1.0)) == pytest.approx(2 / 3)


def test_finite_snr_substitution():
    p = RateParams(1.0, gamma=1.0, noise_mode=NoiseMode.FINITE_SNR)
    assert mutual_information(slot(3.0, [1.0, 2.0]), p) == pytest.approx(2 / 3 * math.log2(1.75))


def test_no_interference_interference_limited_is_infinite():
    assert mutual_information(slot(1.0, []), RateParams(1.0)) == math.inf


def test_finite_snr_needs_gamma():
    with pytest.raises(ParameterError):
        RateParams(1.0, noise_mode=NoiseMode.FINITE_SNR)


@pytest.mark.parametrize("a, b, theta", [(0.9, 0.9, 1), (0.9, 0.1, 2), (0.1, 0.9, 3), (0.1, 0.1, 4)])
def test_classify(a, b, theta):
    assert classify_relay_state(a, b, 0.5) == RelayState(theta)


def test_classify_equality_is_failure():
    assert classify_relay_state(0.5, 0.5, 0.5) == RelayState.NEITHER


@pytest.mark.parametrize("theta, expected", [(1, 0.7), (2, 0.7), (3, 0.4), (4, 0.4)])
def test_conditional_mi_u1(theta, expected):
    assert conditional_mi_u1(theta, 0.4, 0.9, 0.7) == expected


def test_conditional_mi_u1_xor_needs_both_hops():
    assert conditional_mi_u1(1, 0.1, 0.2, 0.9) == 0.2


def test_conditional_mi_u2_mirrors_u1():
    # U2's own slot is n+1; the forward-only state that helps it is 3
    assert conditional_mi_u2(3, 0.9, 0.4, 0.7) == 0.7
    assert conditional_mi_u2(2, 0.9, 0.4, 0.7) == 0.4
    assert conditional_mi_u2(1, 0.9, 0.4, 0.7) == 0.7


def test_trial_outage_zero_rate():
    t = make_trial([(1, [1])] * 2, [(0.5, [1])] * 3)
    assert not trial_outage_onc(t, RateParams(0.0))


def test_trial_outage_all_zero_desired():
    t = make_trial([(0, [1])] * 2, [(0, [1])] * 3)
    assert trial_outage_onc(t, RateParams(0.5))


def test_trial_theta2_relay_saves_u1():
    # R = 0.5 -> SINR threshold 2**0.75 - 1 ~ 0.68
    rs = [(2.0, [1.0]), (0.1, [1.0])]           # theta = 2
    u1 = [(0.1, [1.0]), (5.0, [1.0]), (3.0, [1.0])]  # direct fails, relay hop clean
    t = make_trial(rs, u1)
    p = RateParams(0.5)
    assert trial_relay_state(t, p) == RelayState.FIRST_ONLY
    expected = max(2 / 3 * math.log2(1.1), 2 / 3 * math.log2(4.0))
    assert trial_conditional_mi(t, p) == pytest.approx(expected)
    assert not trial_outage_onc(t, p)


def test_trial_theta3_relay_cannot_help_u1_but_helps_u2():
    rs = [(0.1, [1.0]), (2.0, [1.0])]
    u = [(0.1, [1.0]), (0.1, [1.0]), (3.0, [1.0])]
    t = make_trial(rs, u)
    assert trial_outage_onc(t, RateParams(0.5), user=1)
    assert not trial_outage_onc(t, RateParams(0.5), user=2)


def test_noncoop_cases():
    p = RateParams(1.0, prefactor=1.0)
    assert not trial_outage_noncoop(slot(1.0, [1.0]), RateParams(0.0, prefactor=1.0))
    assert trial_outage_noncoop(slot(3.0, [3.0]), p)  # SINR = 2**1 - 1 exactly
    assert not trial_outage_noncoop(slot(3.0, [1.0]), p)
    with pytest.raises(ParameterError):
        trial_outage_noncoop(slot(3.0, [1.0]), RateParams(1.0))


pos = st.floats(1e-6, 1e6)


@given(pos, st.lists(pos, min_size=1, max_size=7), st.floats(1.0, 10.0), st.integers(0, 6))
def test_mi_monotone(g, ints, scale, idx):
    p = RateParams(1.0)
    base = mutual_information(slot(g, ints), p)
    assert mutual_information(slot(g * scale, ints), p) >= base
    bumped = list(ints)
    bumped[idx % len(ints)] *= scale
    assert mutual_information(slot(g, bumped), p) <= base


@given(pos, st.lists(pos, min_size=1, max_size=7), st.floats(0.0, 4.0))
def test_threshold_equivalence(g, ints, rate):
    p = RateParams(rate)
    sinr = g / sum(ints)
    mi = mutual_information(slot(g, ints), p)
    thr = 2 ** (1.5 * rate) - 1
    if abs(sinr - thr) > 1e-9 * max(1.0, thr):
        assert (mi < rate) == (sinr < thr)


@given(st.floats(0, 5), st.floats(0, 5), st.floats(0, 5))
def test_relay_help_never_hurts(a, b, c):
    assert conditional_mi_u1(1, a, b, c) >= conditional_mi_u1(3, a, b, c)
    assert conditional_mi_u1(2, a, b, c) >= conditional_mi_u1(4, a, b, c)


@given(st.floats(0, 5), st.floats(0, 5), st.floats(0, 5))
def test_theta_partition(a, b, rate):
    theta = classify_relay_state(a, b, rate)
    events = [a > rate and b > rate, a > rate and not b > rate,
              not a > rate and b > rate, not a > rate and not b > rate]
    assert sum(events) == 1 and events[theta - 1]
