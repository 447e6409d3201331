import pytest

from onclab.dmt import (DmtPoint, DmtScheme, dmt_conventional, dmt_curve, dmt_noncoop, dmt_onc,
                        estimate_diversity)
from onclab.errors import NumericalError, ParameterError

GRID = (1e8, 1e9, 1e10)


@pytest.mark.parametrize("fn, r, d", [
    (dmt_onc, 0.0, 2.0), (dmt_onc, 2 / 3, 0.0), (dmt_onc, 1 / 3, 1.0),
    (dmt_noncoop, 0.0, 1.0), (dmt_noncoop, 1.0, 0.0), (dmt_noncoop, 0.5, 0.5),
    (dmt_conventional, 0.0, 2.0), (dmt_conventional, 0.5, 0.0), (dmt_conventional, 0.25, 1.0),
])
def test_closed_forms(fn, r, d):
    assert fn(r) == pytest.approx(d, abs=1e-15)


@pytest.mark.parametrize("fn, r", [(dmt_onc, 0.7), (dmt_onc, -0.1), (dmt_noncoop, 1.01),
                                   (dmt_conventional, 0.51)])
def test_domain_errors(fn, r):
    with pytest.raises(ParameterError):
        fn(r)


def test_curves():
    assert dmt_curve(DmtScheme.ONC, 3) == [DmtPoint(0.0, 2.0), DmtPoint(1 / 3, 1.0), DmtPoint(2 / 3, 0.0)]
    assert dmt_curve("noncoop", 2) == [DmtPoint(0.0, 1.0), DmtPoint(1.0, 0.0)]
    assert dmt_curve(DmtScheme.CONVENTIONAL, 2) == [DmtPoint(0.0, 2.0), DmtPoint(0.5, 0.0)]
    with pytest.raises(ParameterError):
        dmt_curve(DmtScheme.ONC, 1)


def test_onc_dominates_conventional_and_crosses_noncoop():
    for i in range(1, 51):
        r = 0.5 * i / 50
        assert dmt_onc(r) > dmt_conventional(r)
    assert dmt_onc(0.4) > dmt_noncoop(0.4)
    assert dmt_onc(0.6) < dmt_noncoop(0.6)
    assert dmt_onc(0.5) == pytest.approx(dmt_noncoop(0.5))


def test_estimate_low_multiplexing():
    assert estimate_diversity(0.0, GRID, 7) == pytest.approx(2.0, abs=0.05)
    assert estimate_diversity(1 / 3, GRID, 7) == pytest.approx(1.0, abs=0.1)


@pytest.mark.parametrize("r", [0.2, 0.45, 0.6])
def test_estimate_converges_upward(r):
    low = estimate_diversity(r, GRID, 7)
    high = estimate_diversity(r, (1e30, 1e31, 1e32), 7)
    assert abs(high - (2 - 3 * r)) < abs(low - (2 - 3 * r))
    assert high == pytest.approx(2 - 3 * r, abs=0.05)


def test_estimate_input_checks():
    with pytest.raises(ParameterError):
        estimate_diversity(2 / 3, GRID, 7)
    with pytest.raises(ParameterError):
        estimate_diversity(0.3, (1e9, 1e8), 7)
    with pytest.raises(ParameterError):
        estimate_diversity(0.3, (1e9,), 7)


def test_estimate_underflow():
    with pytest.raises(NumericalError):
        estimate_diversity(0.0, (1e200, 1e250), 7)
