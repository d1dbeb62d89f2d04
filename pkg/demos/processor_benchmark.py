#!/usr/bin/env python3
"""Angle-recovery error of the three processors over an event budget.

For each grid angle theta_m, a fresh processor runs N events; the
channel-S count K yields the estimate arcsin(sqrt(K/N)) and the grid RMS
error e(N).  On the rational grid (sin^2 theta_m = m/M) the learning
machine is exact once stationary, the Bernoulli processor improves only
like 1/sqrt(N), and the always-rotate-toward-input variant plateaus.

This is a reduced-scale run (M = 40, N up to 1e5) so it finishes in a few
seconds; the full-scale configuration lives in the benchmark module's
defaults and in the acceptance suite.
"""
import pathlib

from dlmsim import BenchConfig, run_benchmark
from dlmsim.bench import bench_csv, loglog_slope

N_LIST = (1000, 10_000, 100_000)

results = {}
for kind in ("bernoulli", "dlm", "modified"):
    config = BenchConfig(
        processor_kind=kind, m_grid=40, n_list=N_LIST, alpha=0.9995,
        warmup=8000, seed=11,
    )
    results[kind] = run_benchmark(config)

print("=== RMS angle error e(N), rational grid ===")
print(f"{'N':>9} {'bernoulli':>12} {'machine':>12} {'modified':>12}")
for i, n in enumerate(N_LIST):
    row = [results[k].errors[i][1] for k in ("bernoulli", "dlm", "modified")]
    print(f"{n:>9,} {row[0]:>12.6f} {row[1]:>12.6f} {row[2]:>12.6f}")

print()
print(f"Bernoulli log-log slope: {loglog_slope(results['bernoulli']):.3f} "
      "(the 1/sqrt(N) signature)")
print("The machine's column is exactly zero: every grid density m/40 is")
print("rational with period dividing N, so the stationary pattern counts out")
print("the angle without error.")

print()
print("=== Uniform grid: where the machine loses accuracy ===")
config = BenchConfig(
    processor_kind="dlm", grid="uniform", m_grid=40, n_list=(100_000,),
    alpha=0.9995, warmup=8000, seed=11,
)
errs = run_benchmark(config).per_point[100_000]
worst = sorted(range(len(errs)), key=lambda m: -errs[m])[:4]
print(f"largest per-angle errors sit at grid indices {sorted(worst)} of 0..40,")
print("i.e. next to 0 and 90 degrees where sin^2 changes slowest.")

out = pathlib.Path("bench_demo.csv")
out.write_text(bench_csv(results["bernoulli"]))
print(f"\nSummary CSV for the Bernoulli run written to {out}")
