"""
Scenario configuration and its TOML loader.

The file is a flat key/value table::

    k_interferers = 7          # K, number of cochannel interferers
    rate_bits = 0.5            # target rate R in bit/s/Hz
    sir_db = 10                # equal SIR on every link, in dB
    mode = "interference-limited"   # or "finite-snr"
    snr_db = 20                # gamma in dB, finite-snr only
    mc.trials = 1000000
    mc.seed = 20110601

Instead of a scalar, ``sir_db`` may be a table of per-link vectors, each of
length K::

    sir_db = { bs_rs = [...], bs_u1 = [...], rs_u1 = [...] }
"""

from __future__ import annotations

import sys
from dataclasses import dataclass, field, replace
from pathlib import Path

import numpy as np

from .capacity import ONC_PREFACTOR, NoiseMode, RateParams
from .errors import ConfigurationError
from .fading import LinkGainProfile, LinkProfiles, db_to_linear

if sys.version_info >= (3, 11):
    import tomllib
else:
    import tomli as tomllib

DEFAULT_TRIALS = 1_000_000
DEFAULT_SEED = 20110601
LINKS = ("bs_rs", "bs_u1", "rs_u1")

_KNOWN_KEYS = {"k_interferers", "rate_bits", "sir_db", "mode", "snr_db", "mc"}
_KNOWN_MC_KEYS = {"trials", "seed"}


@dataclass(frozen=True)
class ScenarioConfig:
    """Downlink scenario. ``sir_db`` is a float (equal SIR) or a dict of
    per-link dB vectors keyed by ``bs_rs``, ``bs_u1``, ``rs_u1``."""

    k_interferers: int
    rate_bits: float
    sir_db: float | dict = 10.0
    mode: NoiseMode = NoiseMode.INTERFERENCE_LIMITED
    snr_db: float | None = None
    trials: int = DEFAULT_TRIALS
    seed: int = DEFAULT_SEED
    seed_defaulted: bool = field(default=False, compare=False)

    def __post_init__(self):
        if not isinstance(self.k_interferers, int) or self.k_interferers < 1:
            raise ConfigurationError("k_interferers: must be an integer >= 1")
        if not self.rate_bits >= 0:
            raise ConfigurationError("rate_bits: must be >= 0")
        if self.trials < 1:
            raise ConfigurationError("mc.trials: must be >= 1")
        if self.mode is NoiseMode.FINITE_SNR and self.snr_db is None:
            raise ConfigurationError("snr_db: required in finite-snr mode")
        if isinstance(self.sir_db, dict):
            for name in LINKS:
                if name not in self.sir_db:
                    raise ConfigurationError(f"sir_db.{name}: missing")
                if len(self.sir_db[name]) != self.k_interferers:
                    raise ConfigurationError(
                        f"sir_db.{name}: length {len(self.sir_db[name])} != "
                        f"k_interferers {self.k_interferers}")

    def with_sir(self, sir_db: float) -> "ScenarioConfig":
        return replace(self, sir_db=float(sir_db))

    def sir_vectors(self) -> tuple[np.ndarray, np.ndarray, np.ndarray]:
        """Linear SIR vectors for (BS->RS, BS->U1, RS->U1)."""
        if isinstance(self.sir_db, dict):
            return tuple(db_to_linear(np.asarray(self.sir_db[n], dtype=float)) for n in LINKS)
        v = np.full(self.k_interferers, float(db_to_linear(self.sir_db)))
        return v, v.copy(), v.copy()

    def profiles(self) -> LinkProfiles:
        return LinkProfiles.symmetric(*(LinkGainProfile.from_sirs(v) for v in self.sir_vectors()))

    def rate_params(self, prefactor: float = ONC_PREFACTOR) -> RateParams:
        gamma = None if self.snr_db is None else float(db_to_linear(self.snr_db))
        return RateParams(self.rate_bits, prefactor, gamma, self.mode)


def _number(table, key, kind=float):
    value = table[key]
    if isinstance(value, bool) or not isinstance(value, (int, float)):
        raise ConfigurationError(f"{key}: expected a number, got {value!r}")
    if kind is int and not isinstance(value, int):
        raise ConfigurationError(f"{key}: expected an integer, got {value!r}")
    return kind(value)


def parse_config(table: dict) -> ScenarioConfig:
    unknown = set(table) - _KNOWN_KEYS
    if unknown:
        raise ConfigurationError(f"{sorted(unknown)[0]}: unknown key")
    for key in ("k_interferers", "rate_bits", "sir_db"):
        if key not in table:
            raise ConfigurationError(f"{key}: missing")
    k = _number(table, "k_interferers", int)
    rate = _number(table, "rate_bits")

    raw_sir = table["sir_db"]
    if isinstance(raw_sir, dict):
        extra = set(raw_sir) - set(LINKS)
        if extra:
            raise ConfigurationError(f"sir_db.{sorted(extra)[0]}: unknown link")
        sir = {}
        for name in LINKS:
            vec = raw_sir.get(name)
            if not isinstance(vec, list):
                raise ConfigurationError(f"sir_db.{name}: expected a list of numbers")
            sir[name] = [_number({f"sir_db.{name}": x}, f"sir_db.{name}") for x in vec]
    else:
        sir = _number(table, "sir_db")

    try:
        mode = NoiseMode(table.get("mode", NoiseMode.INTERFERENCE_LIMITED.value))
    except ValueError:
        raise ConfigurationError(f"mode: unknown value {table['mode']!r}") from None
    snr_db = _number(table, "snr_db") if "snr_db" in table else None

    mc = table.get("mc", {})
    if not isinstance(mc, dict):
        raise ConfigurationError("mc: expected a table")
    unknown = set(mc) - _KNOWN_MC_KEYS
    if unknown:
        raise ConfigurationError(f"mc.{sorted(unknown)[0]}: unknown key")
    trials = _number({"mc.trials": mc["trials"]}, "mc.trials", int) if "trials" in mc else DEFAULT_TRIALS
    if "seed" in mc:
        seed = _number({"mc.seed": mc["seed"]}, "mc.seed", int)
        if seed < 0:
            raise ConfigurationError("mc.seed: must be >= 0")
    else:
        seed = DEFAULT_SEED
    return ScenarioConfig(k, rate, sir, mode, snr_db, trials, seed,
                          seed_defaulted="seed" not in mc)


def load_config(path) -> ScenarioConfig:
    path = Path(path)
    try:
        with path.open("rb") as fh:
            table = tomllib.load(fh)
    except FileNotFoundError:
        raise ConfigurationError(f"{path}: no such file") from None
    except tomllib.TOMLDecodeError as exc:
        raise ConfigurationError(f"{path}: {exc}") from None
    return parse_config(table)
