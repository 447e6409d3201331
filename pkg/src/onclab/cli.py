"""
Command-line entry point: outage sweeps, DMT tables, validation runs and a
packet-level protocol walk-through.

Exit codes: 0 success, 1 validation failure, 2 configuration or I/O error.
"""

from __future__ import annotations

import argparse
import csv
import io
import math
import sys
from dataclasses import dataclass, replace
from pathlib import Path

import numpy as np

from . import __version__, analytic
from .capacity import NoiseMode, RateParams, trial_conditional_mi, trial_relay_state
from .config import ScenarioConfig, load_config
from .dmt import DmtScheme, dmt_closed_form, dmt_curve, estimate_diversity, r_max
from .errors import OncError
from .fading import LinkProfiles, draw_trial_at
from .montecarlo import McConfig, Scheme, estimate_outage, estimate_theta_frequencies, sweep
from .packetsim import HOPS, CrcCode, Exchange, crc_verify, hop_outcomes, run_exchange

EXIT_OK, EXIT_FAILED, EXIT_CONFIG = 0, 1, 2

SWEEP_COLUMNS = ("sir_db", "rate", "scheme", "p_analytic", "p_mc", "mc_trials", "ci_low", "ci_high")
DMT_COLUMNS = ("scheme", "r", "d_closed_form", "d_estimated")

DEFAULT_SIR_GRID = (0, 5, 10, 15, 20, 25, 30)
DEFAULT_RATES = (0.5, 1.0)
DEFAULT_DMT_GRID = (1e8, 1e9, 1e10)


def _fmt(x) -> str:
    if isinstance(x, float):
        return repr(x)
    return str(x)


def _write_csv(out, meta: dict, columns, rows) -> None:
    buf = io.StringIO()
    for key, value in meta.items():
        buf.write(f"# {key}={value}\n")
    writer = csv.writer(buf, lineterminator="\n")
    writer.writerow(columns)
    for row in rows:
        writer.writerow([_fmt(v) for v in row])
    Path(out).write_text(buf.getvalue(), encoding="utf-8")


def cmd_outage_sweep(config: ScenarioConfig, sir_grid_db=DEFAULT_SIR_GRID, rates=DEFAULT_RATES,
                     out="outage.csv", workers: int = 1) -> list:
    """Write the outage-vs-SIR table; returns the sweep rows."""
    grid = [(float(s), float(r)) for r in rates for s in sir_grid_db]
    mc = McConfig(config.trials, config.seed, workers=workers)
    rows = sweep(grid, mc, config)
    meta = {"seed": config.seed, "trials": config.trials, "mode": config.mode.value,
            "k_interferers": config.k_interferers, "version": __version__}
    if config.mode is NoiseMode.FINITE_SNR:
        meta["snr_db"] = config.snr_db
    _write_csv(out, meta, SWEEP_COLUMNS,
               [(r.sir_db, r.rate, r.scheme.value, r.p_analytic, r.p_mc, r.mc_trials,
                 r.ci_low, r.ci_high) for r in rows])
    return rows


def cmd_dmt(out="dmt.csv", n_points: int = 11, estimate=(), k: int = 7,
            lambda_grid=DEFAULT_DMT_GRID) -> None:
    """Closed-form DMT curves for all schemes plus optional ONC estimates."""
    rows = []
    for scheme in DmtScheme:
        for pt in dmt_curve(scheme, n_points):
            rows.append((scheme.value, pt.r, pt.d, ""))
    for r in estimate:
        r = float(r)
        rows.append((DmtScheme.ONC.value, r, dmt_closed_form(DmtScheme.ONC, r),
                     estimate_diversity(r, lambda_grid, k)))
    meta = {"k_interferers": k, "lambda_grid": " ".join(repr(float(x)) for x in lambda_grid),
            "version": __version__}
    _write_csv(out, meta, DMT_COLUMNS, rows)


@dataclass(frozen=True)
class Check:
    name: str
    passed: bool
    detail: str

    def line(self) -> str:
        return f"[{'PASS' if self.passed else 'FAIL'}] {self.name}: {self.detail}"


def _agreement(name, p_mc, p_ref, n, floor=5e-4) -> Check:
    tol = max(3.0 * math.sqrt(p_ref * (1.0 - p_ref) / n), floor)
    err = abs(p_mc - p_ref)
    return Check(name, err <= tol,
                 f"mc={p_mc:.6g} analytic={p_ref:.6g} |diff|={err:.3g} tol={tol:.3g}")


def run_validation(config: ScenarioConfig, workers: int = 1, packet_trials: int = 10_000) -> list[Check]:
    """Analytic-vs-MC and protocol-vs-capacity checks at the config's point.

    Agreement checks always run interference-limited, the regime of the
    closed forms.
    """
    checks = []
    sirs_rs, sirs_b1, sirs_r1 = config.sir_vectors()
    rate = config.rate_bits
    breakdown = analytic.outage_onc(rate, sirs_rs, sirs_b1, sirs_r1)
    total = float(np.sum(breakdown.p_theta))
    checks.append(Check("sum of Pr(theta) equals 1", abs(total - 1.0) <= 1e-12,
                        f"sum={total!r}"))

    profiles = config.profiles()
    params = RateParams(rate)
    n = config.trials
    for scheme in Scheme:
        est = estimate_outage(McConfig(n, config.seed, scheme, workers), profiles, params)
        ref = breakdown.p_total if scheme is Scheme.ONC else analytic.outage_noncoop(rate, sirs_b1)
        checks.append(_agreement(f"{scheme.value} outage analytic vs MC", est.p_hat, ref, n))

    freqs = estimate_theta_frequencies(McConfig(n, config.seed, workers=workers), profiles, params)
    for i, (f, p) in enumerate(zip(freqs, breakdown.p_theta), start=1):
        sigma = math.sqrt(p * (1.0 - p) / n)
        checks.append(Check(f"Pr(theta={i}) analytic vs MC", abs(f - p) <= 3.0 * sigma,
                            f"mc={f:.6g} analytic={p:.6g} 3sigma={3 * sigma:.3g}"))

    decode_mismatch, state_mismatch = packet_equivalence(profiles, params, config.seed, packet_trials)
    checks.append(Check("packet decode vs capacity predicate", decode_mismatch <= 1,
                        f"{decode_mismatch} mismatches in {packet_trials} trials"))
    checks.append(Check("relay action vs relay state", state_mismatch == 0,
                        f"{state_mismatch} mismatches in {packet_trials} trials"))
    return checks


def packet_equivalence(profiles: LinkProfiles, params: RateParams, seed: int, trials: int,
                       payload_len: int = 16) -> tuple[int, int]:
    """Count disagreements between the packet protocol and the MI predicates."""
    rng = np.random.default_rng(seed)
    payloads = (rng.bytes(payload_len), rng.bytes(payload_len))
    decode_mismatch = state_mismatch = 0
    for i in range(trials):
        trial = draw_trial_at(profiles, seed, i)
        ex = run_exchange(payloads, hop_outcomes(trial, params), rng)
        predicted = trial_conditional_mi(trial, params) > params.rate
        decode_mismatch += (ex.u1.success and ex.u1.recovered == payloads[0]) != predicted
        state_mismatch += ex.action.state != trial_relay_state(trial, params)
    return decode_mismatch, state_mismatch


def cmd_validate(config: ScenarioConfig, workers: int = 1, packet_trials: int = 10_000,
                 stream=None) -> int:
    stream = stream or sys.stdout
    checks = run_validation(config, workers, packet_trials)
    for c in checks:
        print(c.line(), file=stream)
    failed = sum(not c.passed for c in checks)
    print(f"{len(checks) - failed}/{len(checks)} checks passed", file=stream)
    return EXIT_OK if failed == 0 else EXIT_FAILED


def format_exchange(ex: Exchange) -> list[str]:
    f1, f2 = ex.frames
    ok = ex.hop_ok
    st = lambda hop: "clean" if ok[hop] else "CORRUPTED"
    lines = [
        f"b1 = {f1.payload.hex()}  frame {f1.to_bytes().hex()} ({f1.code.value.name})",
        f"b2 = {f2.payload.hex()}  frame {f2.to_bytes().hex()} ({f2.code.value.name})",
        f"slot n    BS sends b1   RS:{st('rs_n')}  U1:{st('u1_n')}  U2:{st('u2_n')}",
        f"slot n+1  BS sends b2   RS:{st('rs_n1')}  U1:{st('u1_n1')}  U2:{st('u2_n1')}",
    ]
    c1 = crc_verify(ex.rs_rx[0].data, CrcCode.CRC_1)
    c2 = crc_verify(ex.rs_rx[1].data, CrcCode.CRC_2)
    lines.append(f"RS        CRC_1 {'pass' if c1 else 'fail'}, CRC_2 {'pass' if c2 else 'fail'}"
                 f" -> theta={int(ex.action.state)}, action {ex.action.kind.value}")
    word = ex.action.transmitted(len(f1.to_bytes()))
    lines.append(f"slot n+2  RS sends {word.hex()}   U1:{st('u1_n2')}  U2:{st('u2_n2')}")
    for user, res, want in (("U1", ex.u1, f1.payload), ("U2", ex.u2, f2.payload)):
        passed = ", ".join(f"branch {b} {'pass' if b in res.branches_passed else 'fail'}"
                           for b in (1, 2, 3))
        if res.success:
            tag = "" if res.recovered == want else " (WRONG PAYLOAD)"
            lines.append(f"{user}        {passed} -> recovered {res.recovered.hex()} "
                         f"via branch {res.branch}{tag}")
        else:
            lines.append(f"{user}        {passed} -> outage")
    return lines


def cmd_packet_demo(b1_hex: str, b2_hex: str, seed: int = 0, sir_db: float = 10.0,
                    rate: float = 0.5, k: int = 7, clean: bool = False, fail=(),
                    stream=None) -> Exchange:
    """Print a slot-by-slot trace of one exchange.

    Hop outcomes come from one fading draw at ``sir_db`` unless ``clean``
    is set, in which case every hop succeeds. Hops named in ``fail`` are
    forced to be corrupted either way.
    """
    stream = stream or sys.stdout
    try:
        b1, b2 = bytes.fromhex(b1_hex), bytes.fromhex(b2_hex)
    except ValueError as exc:
        raise OncError(f"payload is not valid hex: {exc}") from None
    if len(b1) != len(b2):
        raise OncError(f"payload lengths differ: {len(b1)} vs {len(b2)} bytes")
    unknown = set(fail) - set(HOPS)
    if unknown:
        raise OncError(f"unknown hop {sorted(unknown)[0]!r}; choose from {', '.join(HOPS)}")
    if clean:
        hop_ok = {h: True for h in HOPS}
    else:
        trial = draw_trial_at(LinkProfiles.equal_sir(sir_db, k), seed, 0)
        hop_ok = hop_outcomes(trial, RateParams(rate))
    for h in fail:
        hop_ok[h] = False
    ex = run_exchange((b1, b2), hop_ok, np.random.default_rng(seed))
    for line in format_exchange(ex):
        print(line, file=stream)
    return ex


def _floats(text: str) -> list[float]:
    return [float(x) for x in text.split(",") if x.strip()]


def build_parser() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(prog="onclab", description=__doc__.strip().splitlines()[0])
    p.add_argument("--version", action="version", version=__version__)
    sub = p.add_subparsers(dest="command", required=True)

    s = sub.add_parser("outage-sweep", help="outage probability vs SIR (CSV)")
    s.add_argument("config")
    s.add_argument("--sir-grid", type=_floats, default=list(DEFAULT_SIR_GRID),
                   help="comma-separated SIR values in dB")
    s.add_argument("--rates", type=_floats, default=list(DEFAULT_RATES))
    s.add_argument("--trials", type=int, help="override mc.trials")
    s.add_argument("--workers", type=int, default=1)
    s.add_argument("--out", required=True)

    d = sub.add_parser("dmt", help="diversity-multiplexing tradeoff table (CSV)")
    d.add_argument("--out", required=True)
    d.add_argument("--n-points", type=int, default=11)
    d.add_argument("--estimate", type=_floats, default=[],
                   help="comma-separated r values to estimate numerically")
    d.add_argument("--k", type=int, default=7)
    d.add_argument("--lambda-grid", type=_floats, default=list(DEFAULT_DMT_GRID))

    v = sub.add_parser("validate", help="analytic/MC/protocol consistency checks")
    v.add_argument("config")
    v.add_argument("--trials", type=int, help="override mc.trials")
    v.add_argument("--packet-trials", type=int, default=10_000)
    v.add_argument("--workers", type=int, default=1)

    pd = sub.add_parser("packet-demo", help="trace one protocol exchange")
    pd.add_argument("b1_hex")
    pd.add_argument("b2_hex")
    pd.add_argument("--seed", type=int, default=0)
    pd.add_argument("--sir-db", type=float, default=10.0)
    pd.add_argument("--rate", type=float, default=0.5)
    pd.add_argument("--k", type=int, default=7)
    pd.add_argument("--clean", action="store_true", help="all hops succeed unless forced to fail")
    pd.add_argument("--fail", action="append", default=[], choices=HOPS, help="force a hop to fail")
    return p


def _load(args) -> ScenarioConfig:
    config = load_config(args.config)
    if getattr(args, "trials", None):
        config = replace(config, trials=args.trials)
    return config


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    try:
        if args.command == "outage-sweep":
            config = _load(args)
            if config.seed_defaulted:
                print(f"mc.seed not set; using default seed {config.seed}", file=sys.stderr)
            cmd_outage_sweep(config, args.sir_grid, args.rates, args.out, args.workers)
        elif args.command == "dmt":
            cmd_dmt(args.out, args.n_points, args.estimate, args.k, args.lambda_grid)
        elif args.command == "validate":
            return cmd_validate(_load(args), args.workers, args.packet_trials)
        else:
            cmd_packet_demo(args.b1_hex, args.b2_hex, args.seed, args.sir_db, args.rate,
                            args.k, args.clean, args.fail)
    except (OncError, OSError) as exc:
        print(f"onclab: error: {exc}", file=sys.stderr)
        return EXIT_CONFIG
    return EXIT_OK


if __name__ == "__main__":
    sys.exit(main())
