"""Brute-force Monte Carlo oracles, independent of the onclab code paths.

Run as a script to regenerate the frozen constants used in the tests.
"""

import numpy as np


def mc_ratio_tail(t, lambdas, n, seed, chunk=1_000_000):
    """Count X / sum(Y) > t with X ~ Exp(1), Y_k ~ Exp(1 / lambda_k)."""
    rng = np.random.default_rng(seed)
    lambdas = np.asarray(lambdas, dtype=float)
    hits = 0
    done = 0
    while done < n:
        m = min(chunk, n - done)
        x = rng.standard_exponential(m)
        y = rng.standard_exponential((m, lambdas.size)) / lambdas
        hits += np.count_nonzero(x > t * y.sum(axis=1))
        done += m
    return hits / n


def _success(rng, m, lam, k, t):
    x = rng.standard_exponential(m)
    y = rng.standard_exponential((m, k)) / lam
    return x > t * y.sum(axis=1)


def mc_equal_sir_system(lam, k, rate, n, seed, chunk=1_000_000):
    """Relay-state frequencies, ONC outage and direct-link outage at U1.

    Simulates the three-slot exchange directly from link success events
    (all links share SIR ``lam`` per interferer).
    """
    rng = np.random.default_rng(seed)
    t_onc = 2.0 ** (1.5 * rate) - 1.0
    t_direct = 2.0 ** rate - 1.0
    theta_counts = np.zeros(4, dtype=np.int64)
    onc_out = noncoop_out = 0
    done = 0
    while done < n:
        m = min(chunk, n - done)
        r1 = _success(rng, m, lam, k, t_onc)
        r2 = _success(rng, m, lam, k, t_onc)
        d1 = _success(rng, m, lam, k, t_onc)
        d2 = _success(rng, m, lam, k, t_onc)
        rel = _success(rng, m, lam, k, t_onc)
        theta_counts += [np.count_nonzero(r1 & r2), np.count_nonzero(r1 & ~r2),
                         np.count_nonzero(~r1 & r2), np.count_nonzero(~r1 & ~r2)]
        ok = d1 | (r1 & r2 & d2 & rel) | (r1 & ~r2 & rel)
        onc_out += np.count_nonzero(~ok)
        noncoop_out += np.count_nonzero(~_success(rng, m, lam, k, t_direct))
        done += m
    return theta_counts / n, onc_out / n, noncoop_out / n


if __name__ == "__main__":
    n = 10_000_000
    print("tail K=2 [1,2] t=1:", mc_ratio_tail(1.0, [1.0, 2.0], n, 1))
    print("tail K=7 eq 10 t=2^.75-1:", mc_ratio_tail(2 ** 0.75 - 1, [10.0] * 7, n, 2))
    th, onc, nc = mc_equal_sir_system(10.0, 7, 0.5, n, 3)
    print("10 dB R=0.5 theta:", th.tolist(), "onc:", onc, "noncoop:", nc)
    th, onc, nc = mc_equal_sir_system(100.0, 7, 1.0, n, 4)
    print("20 dB R=1 theta:", th.tolist(), "onc:", onc, "noncoop:", nc)
