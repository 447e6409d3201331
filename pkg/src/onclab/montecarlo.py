"""
Monte Carlo outage estimation over the fading and capacity models.

Trials are cut into fixed-size chunks by trial index. Each chunk draws its
gains straight from the counter-based stream, so the per-chunk counts and
their integer sum do not depend on how many worker threads run.
"""

from __future__ import annotations

import enum
import math
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass

import numpy as np

from . import analytic
from .capacity import ONC_PREFACTOR, RateParams, block_mi, block_outage_noncoop, block_states
from .capacity import block_outage_onc
from .config import ScenarioConfig
from .errors import ParameterError
from .fading import LinkProfiles, draw_gain_block

CHUNK_TRIALS = 1 << 15


class Scheme(enum.Enum):
    ONC = "onc"
    NONCOOP = "noncoop"

    @property
    def prefactor(self) -> float:
        return ONC_PREFACTOR if self is Scheme.ONC else 1.0


@dataclass(frozen=True)
class McConfig:
    trials: int
    master_seed: int = 0
    scheme: Scheme = Scheme.ONC
    workers: int = 1

    def __post_init__(self):
        if self.trials < 1:
            raise ParameterError("trials must be >= 1")
        if self.workers < 1:
            raise ParameterError("workers must be >= 1")
        if not 0 <= self.master_seed < 2**64:
            raise ParameterError("master_seed must fit in 64 unsigned bits")


@dataclass(frozen=True)
class OutageEstimate:
    p_hat: float
    trials: int
    stderr: float
    ci95: tuple[float, float]

    @classmethod
    def from_count(cls, count: int, trials: int) -> "OutageEstimate":
        p = count / trials
        se = math.sqrt(p * (1.0 - p) / trials)
        return cls(p, trials, se, (max(0.0, p - 1.96 * se), min(1.0, p + 1.96 * se)))


def _chunks(trials: int):
    return [(s, min(s + CHUNK_TRIALS, trials)) for s in range(0, trials, CHUNK_TRIALS)]


def run_chunked(trials, master_seed, workers, profiles: LinkProfiles, evaluate):
    """Sum ``evaluate(gain_block)`` (an integer vector) over all chunks."""

    def one(bounds):
        return np.asarray(evaluate(draw_gain_block(profiles, master_seed, *bounds)), dtype=np.int64)

    bounds = _chunks(trials)
    if workers == 1:
        parts = [one(b) for b in bounds]
    else:
        with ThreadPoolExecutor(max_workers=workers) as pool:
            parts = list(pool.map(one, bounds))
    return np.sum(parts, axis=0)


def _scheme_params(params: RateParams, scheme: Scheme) -> RateParams:
    # the scheme fixes the time-sharing prefactor
    return params.with_prefactor(scheme.prefactor)


def _indicator(scheme: Scheme):
    return block_outage_onc if scheme is Scheme.ONC else block_outage_noncoop


def estimate_outage(config: McConfig, profiles: LinkProfiles, params: RateParams) -> OutageEstimate:
    """Fraction of trials in outage at U1 for ``config.scheme``."""
    p = _scheme_params(params, config.scheme)
    indicator = _indicator(config.scheme)
    count = run_chunked(config.trials, config.master_seed, config.workers, profiles,
                        lambda g: [np.count_nonzero(indicator(g, p))])
    return OutageEstimate.from_count(int(count[0]), config.trials)


def estimate_theta_frequencies(config: McConfig, profiles: LinkProfiles, params: RateParams) -> np.ndarray:
    """Empirical frequencies of relay states 1..4."""
    p = _scheme_params(params, Scheme.ONC)
    counts = run_chunked(config.trials, config.master_seed, config.workers, profiles,
                         lambda g: np.bincount(block_states(block_mi(g, p), p.rate) - 1, minlength=4))
    return counts / config.trials


@dataclass(frozen=True)
class SweepRow:
    sir_db: float
    rate: float
    scheme: Scheme
    p_analytic: float
    p_mc: float
    stderr: float
    mc_trials: int
    ci_low: float
    ci_high: float


def analytic_outage(scheme: Scheme, rate: float, scenario: ScenarioConfig) -> float:
    sirs_rs, sirs_b1, sirs_r1 = scenario.sir_vectors()
    if scheme is Scheme.ONC:
        return analytic.outage_onc(rate, sirs_rs, sirs_b1, sirs_r1).p_total
    return analytic.outage_noncoop(rate, sirs_b1)


def sweep(grid, config: McConfig, scenario: ScenarioConfig,
          schemes=(Scheme.ONC, Scheme.NONCOOP)) -> list[SweepRow]:
    """One row per grid point ``(sir_db, rate)`` per scheme, in grid order.

    Both schemes at one grid point are evaluated on the same trials.
    ``config.scheme`` is ignored in favour of ``schemes``.
    """
    grid = list(grid)
    if not grid:
        raise ParameterError("sweep grid is empty")
    rows = []
    for sir_db, rate in grid:
        point = scenario.with_sir(sir_db)
        base = RateParams(rate, ONC_PREFACTOR, point.rate_params().gamma, point.mode)
        evals = [(_indicator(s), _scheme_params(base, s)) for s in schemes]
        counts = run_chunked(
            config.trials, config.master_seed, config.workers, point.profiles(),
            lambda g: [np.count_nonzero(fn(g, p)) for fn, p in evals])
        for scheme, count in zip(schemes, counts):
            est = OutageEstimate.from_count(int(count), config.trials)
            rows.append(SweepRow(float(sir_db), float(rate), scheme,
                                 analytic_outage(scheme, rate, point), est.p_hat, est.stderr,
                                 config.trials, est.ci95[0], est.ci95[1]))
    return rows
