"""
Diversity-multiplexing tradeoff curves and a finite-SIR estimator of the
generalized (SIR-based) diversity gain.
"""

from __future__ import annotations

import enum
from dataclasses import dataclass

import numpy as np

from . import analytic
from .errors import NumericalError, ParameterError


class DmtScheme(enum.Enum):
    ONC = "onc"
    NONCOOP = "noncoop"
    CONVENTIONAL = "conventional"


@dataclass(frozen=True)
class DmtPoint:
    r: float
    d: float


# (max multiplexing gain, diversity at r = 0)
_LINES = {
    DmtScheme.ONC: (2.0 / 3.0, 2.0),
    DmtScheme.NONCOOP: (1.0, 1.0),
    DmtScheme.CONVENTIONAL: (0.5, 2.0),
}


def r_max(scheme: DmtScheme) -> float:
    return _LINES[DmtScheme(scheme)][0]


def _line(scheme, r):
    rmax, d0 = _LINES[scheme]
    if not 0 <= r <= rmax:
        raise ParameterError(f"r={r} outside [0, {rmax:.6g}] for {scheme.value}")
    return d0 * (1.0 - r / rmax)


def dmt_onc(r: float) -> float:
    """``d = 2 - 3r`` on ``[0, 2/3]``."""
    if not 0 <= r <= 2.0 / 3.0:
        raise ParameterError(f"r={r} outside [0, 2/3]")
    return max(2.0 - 3.0 * r, 0.0)


def dmt_noncoop(r: float) -> float:
    return _line(DmtScheme.NONCOOP, r)


def dmt_conventional(r: float) -> float:
    """Repetition decode-and-forward line ``2(1 - 2r)`` on ``[0, 1/2]``."""
    return _line(DmtScheme.CONVENTIONAL, r)


_CLOSED_FORM = {
    DmtScheme.ONC: dmt_onc,
    DmtScheme.NONCOOP: dmt_noncoop,
    DmtScheme.CONVENTIONAL: dmt_conventional,
}


def dmt_closed_form(scheme, r: float) -> float:
    return _CLOSED_FORM[DmtScheme(scheme)](r)


def dmt_curve(scheme, n_points: int) -> list[DmtPoint]:
    """``n_points`` equally spaced points over the scheme's full r-range."""
    scheme = DmtScheme(scheme)
    if n_points < 2:
        raise ParameterError("n_points must be >= 2")
    rmax = r_max(scheme)
    rs = [i * rmax / (n_points - 1) for i in range(n_points)]
    rs[-1] = rmax
    return [DmtPoint(r, dmt_closed_form(scheme, r)) for r in rs]


def estimate_diversity(r: float, lambda_grid, k: int, min_rate: float = 0.5) -> float:
    """Negated least-squares slope of log outage against log SIR.

    All links share one SIR ``lambda`` and the rate grows as ``r *
    log2(lambda)``, floored at ``min_rate`` so that ``r = 0`` means a fixed
    rate rather than a zero rate (which has zero outage).

    Parameters
    ----------
    r : float
        Multiplexing gain, ``0 <= r < 2/3``.
    lambda_grid : sequence of float
        Ascending linear SIR values, at least two, all well above 1.
    k : int
        Number of interferers per receiver.
    min_rate : float
        Rate floor in bit/s/Hz.
    """
    if not 0 <= r < 2.0 / 3.0:
        raise ParameterError(f"r={r} outside [0, 2/3)")
    lams = np.asarray(lambda_grid, dtype=float)
    if lams.size < 2 or np.any(np.diff(lams) <= 0) or np.any(lams <= 1):
        raise ParameterError("lambda_grid must be ascending, >= 2 points, all > 1")
    if k < 1:
        raise ParameterError("k must be >= 1")
    pout = np.empty(lams.size)
    for i, lam in enumerate(lams):
        rate = max(r * np.log2(lam), min_rate)
        sirs = np.full(k, lam)
        pout[i] = analytic.outage_onc(rate, sirs, sirs, sirs).p_total
    if np.any(pout <= 0):
        raise NumericalError("outage underflowed to 0; shrink the SIR grid")
    slope = np.polyfit(np.log(lams), np.log(pout), 1)[0]
    return float(-slope)
