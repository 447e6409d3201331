"""Opportunistic network coding for two-user cellular relay downlinks.

Closed-form and Monte Carlo outage analysis under cochannel interference,
diversity-multiplexing tradeoff curves, and a bit-exact CRC-driven packet
protocol.
"""

__version__ = "0.1.0"

from .analytic import (OutageBreakdown, outage_noncoop, outage_onc, pr_outage_given_theta,
                       pr_theta, ratio_tail, ratio_tail_paper_form)
from .capacity import NoiseMode, RateParams, RelayState
from .config import ScenarioConfig, load_config
from .fading import LinkGainProfile, LinkProfiles, TrialDraw, draw_trial, draw_trial_at
from .montecarlo import McConfig, OutageEstimate, Scheme, estimate_outage, sweep
