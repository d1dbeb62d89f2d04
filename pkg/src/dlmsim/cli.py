"""Command-line entry point.

Subcommands expose each capability for scripted runs: polarizer event
counts, stationary-pattern extraction, the fixed-point/variance table
report, Wigner ground states with their brute-force check, interferometer
runs, the processor benchmark, and the live simulation server.  Angles are
given in degrees on the command line and converted to radians internally.
Machine-readable output is CSV with a header row on stdout (or --out);
human summaries go to stderr.  Flag errors exit 2, domain errors exit 1.
"""
from __future__ import annotations

import argparse
import csv
import io
import math
import os
import sys

from . import bench as bench_mod
from . import table as table_mod
from .interferometer import build_two_mzi, quantum_amplitudes, run_network
from .polarizer import run_polarizer
from .stationary import extract_stationary_sequence, orbit_fixed_points, orbit_variance
from .wigner import brute_force_min_variance, wigner_ground_state

SEED_ENV_VAR = "DLMSIM_SEED"


def _default_seed() -> int:
    return int(os.environ.get(SEED_ENV_VAR, "0"))


def _emit(text: str, out_path: str | None) -> None:
    if out_path:
        with open(out_path, "w") as fh:
            fh.write(text)
    else:
        sys.stdout.write(text)


def _cmd_polarizer(args) -> int:
    theta = math.radians(args.theta_deg)
    run = run_polarizer(
        args.kind, theta, args.n, alpha=args.alpha, warmup=args.warmup, seed=args.seed
    )
    buf = io.StringIO()
    writer = csv.writer(buf)
    writer.writerow(
        ["kind", "theta_deg", "alpha", "n", "warmup", "seed",
         "count_c", "count_s", "estimate_deg"]
    )
    writer.writerow(
        [args.kind, args.theta_deg, args.alpha, args.n, args.warmup, args.seed,
         run.n_c, run.n_s, repr(math.degrees(run.theta_estimate))]
    )
    _emit(buf.getvalue(), args.out)
    print(
        f"{args.kind}: {run.n_s}/{args.n} channel-S events, "
        f"estimate {math.degrees(run.theta_estimate):.4f} deg",
        file=sys.stderr,
    )
    return 0


def _cmd_stationary(args) -> int:
    theta = math.radians(args.theta_deg)
    seq = extract_stationary_sequence(
        theta, args.alpha, warmup=args.warmup, max_period=args.max_period,
        seed=args.seed,
    )
    buf = io.StringIO()
    writer = csv.writer(buf)
    writer.writerow(
        ["theta_deg", "alpha", "sequence", "period", "ones", "mean", "variance"]
    )
    if seq is None:
        writer.writerow([args.theta_deg, args.alpha, "non-periodic", "", "", "", ""])
        _emit(buf.getvalue(), args.out)
        print("no period found within budget", file=sys.stderr)
        return 0
    orbit = orbit_fixed_points(seq, args.alpha)
    writer.writerow(
        [args.theta_deg, args.alpha, str(seq), seq.q, seq.ones,
         repr(orbit.mean), repr(orbit_variance(seq, args.alpha))]
    )
    _emit(buf.getvalue(), args.out)
    print(f"stationary pattern {seq} (period {seq.q})", file=sys.stderr)
    return 0


def _cmd_table1(args) -> int:
    text = table_mod.table_report_csv(args.alpha, check_minimum=not args.no_minimum)
    _emit(text, args.out)
    checks = table_mod.verify_table(args.alpha, check_minimum=False)
    worst = max(
        max(abs(c.xhat_formula - c.xhat_numeric),
            abs(c.variance_formula - c.variance_numeric))
        for c in checks
    )
    print(f"{len(checks)} rows verified, worst deviation {worst:.2e}", file=sys.stderr)
    return 0


def _cmd_wigner(args) -> int:
    config = wigner_ground_state(args.p, args.q)
    best = brute_force_min_variance(args.p, args.q, args.alpha)
    agree = config.sequence().same_necklace(best)
    buf = io.StringIO()
    writer = csv.writer(buf)
    writer.writerow(["p", "q", "ground_state", "brute_force_minimum", "agree"])
    writer.writerow([args.p, args.q, str(config), str(best), int(agree)])
    _emit(buf.getvalue(), args.out)
    print(str(config), file=sys.stderr)
    if not agree:
        print("brute-force minimum disagrees with construction", file=sys.stderr)
        return 1
    return 0


def _cmd_mzi(args) -> int:
    degrees = [float(x) for x in args.phi.split(",")]
    if len(degrees) != 4:
        raise ValueError("--phi needs four comma-separated angles in degrees")
    phases = tuple(math.radians(d) for d in degrees)
    net = build_two_mzi(phases, gamma=args.gamma, eta=args.eta)
    net.set_mode(args.mode)
    net.reset_all(args.seed)
    qm = quantum_amplitudes(*phases).probs
    buf = io.StringIO()
    writer = csv.writer(buf)
    writer.writerow(
        ["event_index"]
        + [f"N{j}" for j in range(6)]
        + [f"p{j}_qm" for j in range(6)]
    )
    done = 0
    while done < args.n:
        step = min(args.sample_every, args.n - done)
        net.run(step)
        done += step
        writer.writerow(
            [done] + list(net.counters.counts) + [repr(p) for p in qm]
        )
    _emit(buf.getvalue(), args.out)
    ratios = net.counters.ratios()
    print(
        "ratios " + " ".join(f"{r:.4f}" for r in ratios)
        + " | qm " + " ".join(f"{p:.4f}" for p in qm),
        file=sys.stderr,
    )
    return 0


def _cmd_bench(args) -> int:
    n_list = tuple(int(x) for x in args.n_list.split(","))
    config = bench_mod.BenchConfig(
        processor_kind=args.kind,
        m_grid=args.m,
        n_list=n_list,
        grid=args.grid,
        alpha=args.alpha,
        warmup=args.warmup,
        seed=args.seed,
    )
    result = bench_mod.run_benchmark(config)
    _emit(bench_mod.bench_csv(result), args.out)
    if args.per_m:
        with open(args.per_m, "w") as fh:
            fh.write(bench_mod.bench_per_point_csv(result))
    for n, e in result.errors:
        print(f"N={n}: e={e:.6g}", file=sys.stderr)
    return 0


def _cmd_serve(args) -> int:
    from .server import serve

    serve(port=args.port, seed=args.seed, rate=args.rate, ws_port=args.ws_port)
    return 0


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="dlmsim",
        description="Event-by-event polarizer and interferometer simulations",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("polarizer", help="run one polarizer processor")
    p.add_argument("--kind", choices=("bernoulli", "dlm", "modified"), default="dlm")
    p.add_argument("--theta-deg", type=float, required=True)
    p.add_argument("--alpha", type=float, default=0.99)
    p.add_argument("--n", type=int, default=1000)
    p.add_argument("--warmup", type=int, default=0)
    p.add_argument("--seed", type=int, default=_default_seed())
    p.add_argument("--out", default=None)
    p.set_defaults(func=_cmd_polarizer)

    p = sub.add_parser("stationary", help="extract the stationary output pattern")
    p.add_argument("--theta-deg", type=float, required=True)
    p.add_argument("--alpha", type=float, default=0.99)
    p.add_argument("--warmup", type=int, default=None)
    p.add_argument("--max-period", type=int, default=50)
    p.add_argument("--seed", type=int, default=_default_seed())
    p.add_argument("--out", default=None)
    p.set_defaults(func=_cmd_stationary)

    p = sub.add_parser("table1", help="verification report for the reference table")
    p.add_argument("--alpha", type=float, default=0.99)
    p.add_argument("--no-minimum", action="store_true",
                   help="skip the brute-force minimum check")
    p.add_argument("--out", default=None)
    p.set_defaults(func=_cmd_table1)

    p = sub.add_parser("wigner", help="lattice ground state plus brute-force check")
    p.add_argument("--p", type=int, required=True)
    p.add_argument("--q", type=int, required=True)
    p.add_argument("--alpha", type=float, default=0.99)
    p.add_argument("--out", default=None)
    p.set_defaults(func=_cmd_wigner)

    p = sub.add_parser("mzi", help="run the two-interferometer network")
    p.add_argument("--phi", default="0,0,0,0",
                   help="four phase angles in degrees, comma separated")
    p.add_argument("--n", type=int, default=10000)
    p.add_argument("--mode", choices=("deterministic", "probabilistic"),
                   default="deterministic")
    p.add_argument("--gamma", type=float, default=0.99995)
    p.add_argument("--eta", type=float, default=0.25)
    p.add_argument("--sample-every", type=int, default=1000)
    p.add_argument("--seed", type=int, default=_default_seed())
    p.add_argument("--out", default=None)
    p.set_defaults(func=_cmd_mzi)

    p = sub.add_parser("bench", help="processor benchmark over an angle grid")
    p.add_argument("--kind", choices=("bernoulli", "dlm", "modified"), default="dlm")
    p.add_argument("--grid", choices=("rational", "uniform"), default="rational")
    p.add_argument("--m", type=int, default=100)
    p.add_argument("--n-list", default="100,1000,10000,100000,1000000")
    p.add_argument("--alpha", type=float, default=0.9995)
    p.add_argument("--warmup", type=int, default=10000)
    p.add_argument("--seed", type=int, default=_default_seed())
    p.add_argument("--out", default=None)
    p.add_argument("--per-m", default=None, help="write per-angle detail CSV here")
    p.set_defaults(func=_cmd_bench)

    p = sub.add_parser("serve", help="live interferometer server")
    p.add_argument("--port", type=int, default=8765)
    p.add_argument("--ws-port", type=int, default=None,
                   help="also serve the protocol over WebSocket on this port")
    p.add_argument("--seed", type=int, default=_default_seed())
    p.add_argument("--rate", type=float, default=500.0,
                   help="events per second (0 pauses until commands arrive)")
    p.set_defaults(func=_cmd_serve)

    return parser


def main(argv: list[str] | None = None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        return args.func(args)
    except (ValueError, IndexError, ArithmeticError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 1


if __name__ == "__main__":
    sys.exit(main())
