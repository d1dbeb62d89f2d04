"""Benchmark harness comparing the three polarizer processors.

For a grid of input angles, each processor runs N events per angle; the
channel-S count K gives the angle estimate arcsin(sqrt(K/N)) and the grid
RMS error

    e(N) = sqrt( (1/(M+1)) * sum_m (theta_m - theta_m')^2 ).

Two grids are supported: the rational grid theta_m = arcsin(sqrt(m/M)),
on which every sin^2(theta_m) is rational and the learning machine can be
exact, and the uniform grid theta_m = m*pi/(2M), which exposes its loss of
accuracy near the grid edges.  Every (angle, N) cell owns a fresh processor
re-seeded from the master seed and the grid index, so the grid is
embarrassingly parallel and the run is reproducible bit for bit.
"""
from __future__ import annotations

import csv
import io
import math
from dataclasses import dataclass, field

import numpy as np

from .vectorized import polarizer_counts_lanes

DEFAULT_N_LIST = (100, 1000, 10_000, 100_000, 1_000_000)


@dataclass(frozen=True)
class BenchConfig:
    processor_kind: str = "dlm"
    m_grid: int = 100
    n_list: tuple[int, ...] = DEFAULT_N_LIST
    grid: str = "rational"
    alpha: float = 0.9995
    warmup: int = 10_000
    seed: int = 0

    def __post_init__(self):
        if self.processor_kind not in ("bernoulli", "dlm", "modified"):
            raise ValueError(f"unknown processor kind: {self.processor_kind!r}")
        if self.grid not in ("rational", "uniform"):
            raise ValueError(f"unknown grid: {self.grid!r}")
        if self.m_grid < 1:
            raise ValueError("m_grid must be >= 1")
        if not self.n_list or list(self.n_list) != sorted(self.n_list):
            raise ValueError("n_list must be nonempty and ascending")
        if not 0.0 < self.alpha < 1.0:
            raise ValueError(f"alpha must lie in (0, 1), got {self.alpha}")


@dataclass
class BenchResult:
    config: BenchConfig
    errors: list[tuple[int, float]] = field(default_factory=list)
    per_point: dict[int, np.ndarray] = field(default_factory=dict)

    def error_at(self, n: int) -> float:
        for nn, e in self.errors:
            if nn == n:
                return e
        raise KeyError(n)


def angle_grid(grid: str, m_grid: int) -> np.ndarray:
    """The M+1 grid angles; endpoints are always 0 and pi/2."""
    if m_grid < 1:
        raise ValueError("m_grid must be >= 1")
    m = np.arange(m_grid + 1)
    if grid == "rational":
        return np.arcsin(np.sqrt(m / m_grid))
    if grid == "uniform":
        return m * math.pi / (2.0 * m_grid)
    raise ValueError(f"unknown grid: {grid!r}")


def cell_seed(config: BenchConfig, m: int) -> tuple[int, int]:
    """Seed of the fresh processor at grid index m (same for every N)."""
    return (config.seed, m)


def run_benchmark(config: BenchConfig) -> BenchResult:
    """Execute the full grid procedure for every N in the config.

    Warmup events are discarded for the learning kinds only; the Bernoulli
    processor is stateless.  per_point[N] holds the per-angle absolute
    errors |theta_m - theta_m'| behind the summary e(N).
    """
    thetas = angle_grid(config.grid, config.m_grid)
    seeds = [cell_seed(config, m) for m in range(config.m_grid + 1)]
    warmup = 0 if config.processor_kind == "bernoulli" else config.warmup
    result = BenchResult(config=config)
    for n in config.n_list:
        k_s = polarizer_counts_lanes(
            config.processor_kind, thetas, n, config.alpha, warmup, seeds
        )
        estimates = np.arcsin(np.sqrt(k_s / n))
        errs = np.abs(thetas - estimates)
        result.per_point[n] = errs
        e_n = float(np.sqrt(np.mean(errs * errs)))
        result.errors.append((n, e_n))
    return result


def uniform_grid_degradation(config: BenchConfig) -> dict[int, np.ndarray]:
    """Per-angle error table on the uniform grid, one row per N."""
    if config.grid != "uniform":
        raise ValueError("config.grid must be 'uniform'")
    return run_benchmark(config).per_point


def loglog_slope(result: BenchResult, n_min: int = 0) -> float:
    """Least-squares slope of log e(N) against log N over N >= n_min."""
    pts = [(n, e) for n, e in result.errors if n >= n_min and e > 0.0]
    if len(pts) < 2:
        raise ValueError("need at least two positive errors to fit a slope")
    x = np.log([n for n, _ in pts])
    y = np.log([e for _, e in pts])
    return float(np.polyfit(x, y, 1)[0])


def bench_csv(result: BenchResult) -> str:
    """Summary CSV: one line per N."""
    cfg = result.config
    buf = io.StringIO()
    writer = csv.writer(buf)
    writer.writerow(["kind", "grid", "alpha", "M", "N", "e_of_N"])
    for n, e in result.errors:
        writer.writerow(
            [cfg.processor_kind, cfg.grid, cfg.alpha, cfg.m_grid, n, repr(e)]
        )
    return buf.getvalue()


def bench_per_point_csv(result: BenchResult) -> str:
    """Detail CSV: one line per (N, grid index)."""
    cfg = result.config
    thetas = angle_grid(cfg.grid, cfg.m_grid)
    buf = io.StringIO()
    writer = csv.writer(buf)
    writer.writerow(["kind", "grid", "alpha", "M", "N", "m", "theta_m", "e_m"])
    for n, errs in result.per_point.items():
        for m, e in enumerate(errs):
            writer.writerow(
                [
                    cfg.processor_kind, cfg.grid, cfg.alpha, cfg.m_grid,
                    n, m, repr(float(thetas[m])), repr(float(e)),
                ]
            )
    return buf.getvalue()
