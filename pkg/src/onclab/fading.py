"""
Rayleigh block fading at the power-gain level.

Every channel power gain is exponentially distributed, constant over one
slot and independent across slots, receivers and links. Draws come from a
counter-based Philox stream keyed by the master seed; trial ``i`` owns a
fixed block of uniforms inside that stream, so a trial's gains depend only
on ``(master_seed, trial_index)`` and never on how trials are split among
workers.

Layout of one trial's block (``K + 1`` uniforms per realization, desired
link first, then interferers ``1..K``)::

    0  RS  slot n     BS->RS
    1  RS  slot n+1   BS->RS
    2  U1  slot n     BS->U1
    3  U1  slot n+1   BS->U1
    4  U1  slot n+2   RS->U1
    5  U2  slot n     BS->U2
    6  U2  slot n+1   BS->U2
    7  U2  slot n+2   RS->U2
"""

from __future__ import annotations

from dataclasses import dataclass
import numpy as np

from .errors import ConfigurationError, ParameterError

N_REALIZATIONS = 8

RS_N, RS_N1, U1_N, U1_N1, U1_N2, U2_N, U2_N1, U2_N2 = range(N_REALIZATIONS)

# Philox emits four 64-bit words per counter increment.
_WORDS_PER_COUNTER = 4


def db_to_linear(x_db):
    return 10.0 ** (np.asarray(x_db, dtype=float) / 10.0)


@dataclass(frozen=True)
class LinkGainProfile:
    """Mean power gains seen by one receiver for one desired link.

    Attributes
    ----------
    sigma2_desired : float
        Mean gain of the desired link.
    sigma2_int : ndarray, shape (K,)
        Mean gain of each cochannel interferer at the same receiver.
    """

    sigma2_desired: float
    sigma2_int: np.ndarray

    def __post_init__(self):
        sigma2_int = np.array(self.sigma2_int, dtype=float).reshape(-1)
        sigma2_int.setflags(write=False)
        object.__setattr__(self, "sigma2_int", sigma2_int)
        if not self.sigma2_desired > 0:
            raise ParameterError(f"sigma2_desired must be > 0, got {self.sigma2_desired}")
        if np.any(~(sigma2_int > 0)):
            raise ParameterError("every interferer mean gain must be > 0")

    @property
    def k(self) -> int:
        return self.sigma2_int.size

    @property
    def lambdas(self) -> np.ndarray:
        """Per-interferer SIR, ``sigma2_desired / sigma2_int``."""
        return self.sigma2_desired / self.sigma2_int

    @classmethod
    def from_sirs(cls, lambdas) -> "LinkGainProfile":
        """Profile with unit desired gain and interferer gains ``1 / lambda``."""
        lambdas = np.asarray(lambdas, dtype=float).reshape(-1)
        if np.any(~(lambdas > 0)):
            raise ParameterError("SIR values must be > 0")
        return cls(1.0, 1.0 / lambdas)

    @classmethod
    def from_sir_db(cls, sir_db: float, k: int) -> "LinkGainProfile":
        return cls.from_sirs(np.full(k, float(db_to_linear(sir_db))))


@dataclass(frozen=True)
class LinkProfiles:
    """Gain profiles for every (receiver, desired link) pair of the downlink."""

    bs_rs: LinkGainProfile
    bs_u1: LinkGainProfile
    rs_u1: LinkGainProfile
    bs_u2: LinkGainProfile
    rs_u2: LinkGainProfile

    def __post_init__(self):
        ks = {p.k for p in self._all()}
        if len(ks) != 1:
            raise ConfigurationError(f"profiles disagree on K: {sorted(ks)}")

    def _all(self):
        return (self.bs_rs, self.bs_u1, self.rs_u1, self.bs_u2, self.rs_u2)

    @property
    def k(self) -> int:
        return self.bs_rs.k

    @classmethod
    def symmetric(cls, bs_rs, bs_u1, rs_u1) -> "LinkProfiles":
        """U2 mirrors U1."""
        return cls(bs_rs, bs_u1, rs_u1, bs_u1, rs_u1)

    @classmethod
    def equal_sir(cls, sir_db: float, k: int) -> "LinkProfiles":
        p = LinkGainProfile.from_sir_db(sir_db, k)
        return cls.symmetric(p, p, p)

    def realization_profiles(self) -> tuple[LinkGainProfile, ...]:
        """Profiles in block-layout order (see module docstring)."""
        return (self.bs_rs, self.bs_rs, self.bs_u1, self.bs_u1, self.rs_u1,
                self.bs_u2, self.bs_u2, self.rs_u2)

    def mean_matrix(self) -> np.ndarray:
        """Means laid out as ``(N_REALIZATIONS, K + 1)``."""
        return np.array([np.concatenate(([p.sigma2_desired], p.sigma2_int))
                         for p in self.realization_profiles()])


@dataclass(frozen=True)
class SlotRealization:
    g_desired: float
    g_int: np.ndarray

    @property
    def interference(self) -> float:
        return float(np.sum(self.g_int))


@dataclass(frozen=True)
class TrialDraw:
    """Sampled gains of one three-slot exchange.

    ``rs_slots`` holds slots n and n+1 at the relay; ``u1_slots`` and
    ``u2_slots`` hold slots n, n+1 (from BS) and n+2 (from RS).
    """

    rs_slots: tuple[SlotRealization, SlotRealization]
    u1_slots: tuple[SlotRealization, SlotRealization, SlotRealization]
    u2_slots: tuple[SlotRealization, SlotRealization, SlotRealization]

    @classmethod
    def from_gains(cls, gains: np.ndarray) -> "TrialDraw":
        """Build from a ``(N_REALIZATIONS, K + 1)`` gain matrix."""
        s = [SlotRealization(float(row[0]), row[1:].copy()) for row in gains]
        return cls((s[RS_N], s[RS_N1]), (s[U1_N], s[U1_N1], s[U1_N2]),
                   (s[U2_N], s[U2_N1], s[U2_N2]))


def block_size(k: int) -> int:
    """Uniforms consumed by one trial; always a multiple of four."""
    return N_REALIZATIONS * (k + 1)


def trial_stream(master_seed: int, trial_index: int, k: int) -> np.random.Generator:
    """Generator positioned at the first uniform of ``trial_index``'s block."""
    if trial_index < 0:
        raise ParameterError("trial_index must be >= 0")
    counter = trial_index * block_size(k) // _WORDS_PER_COUNTER
    return np.random.Generator(np.random.Philox(key=master_seed, counter=counter))


def _exponential_from_uniform(u, mean):
    # inverse CDF; 1 - u lies in (0, 1] so the log is finite
    return -np.asarray(mean) * np.log1p(-u)


def sample_exponential(mean: float, stream: np.random.Generator) -> float:
    """One Exp draw with the given mean, consuming exactly one uniform."""
    if not mean > 0:
        raise ParameterError(f"mean must be > 0, got {mean}")
    return float(_exponential_from_uniform(stream.random(), mean))


def draw_trial(profiles: LinkProfiles, stream: np.random.Generator) -> TrialDraw:
    """Draw every gain of one trial from ``stream`` in block-layout order."""
    means = profiles.mean_matrix()
    u = stream.random(means.size).reshape(means.shape)
    return TrialDraw.from_gains(_exponential_from_uniform(u, means))


def draw_trial_at(profiles: LinkProfiles, master_seed: int, trial_index: int) -> TrialDraw:
    return draw_trial(profiles, trial_stream(master_seed, trial_index, profiles.k))


def draw_gain_block(profiles: LinkProfiles, master_seed: int, start: int, stop: int) -> np.ndarray:
    """Gains of trials ``start..stop-1`` as an array ``(n, N_REALIZATIONS, K + 1)``.

    Row ``i`` equals the gain matrix of ``draw_trial_at(profiles, master_seed,
    start + i)`` bit for bit.
    """
    if not 0 <= start <= stop:
        raise ParameterError(f"bad trial range [{start}, {stop})")
    means = profiles.mean_matrix()
    u = trial_stream(master_seed, start, profiles.k).random((stop - start,) + means.shape)
    return _exponential_from_uniform(u, means)

