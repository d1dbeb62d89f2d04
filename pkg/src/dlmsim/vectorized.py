"""Lane-vectorized runners for large simulation sweeps.

Many independent simulations ("lanes") advance in lockstep, one numpy
operation per arithmetic step across all lanes.  The arithmetic mirrors the
scalar implementations expression by expression, so a lane reproduces the
scalar run with the same seed bit for bit; the test suite checks this
equivalence directly.  Used by the benchmark harness (one lane per grid
angle) and by the interferometer sweeps (one lane per phase setting).
"""
from __future__ import annotations

import math

import numpy as np

from .rng import RandomStream

_INV_SQRT2 = 1.0 / math.sqrt(2.0)
_DEGENERATE_AMPLITUDE = 1e-15
_BURN_IN_EVENTS = 500
_BURN_IN_GAMMA = 0.99


def dlm_step_arrays(
    x1: np.ndarray,
    x2: np.ndarray,
    y1: np.ndarray,
    y2: np.ndarray,
    alpha: float,
) -> tuple[np.ndarray, np.ndarray, np.ndarray]:
    """One learning-machine event per lane; returns (x1, x2, bit).

    Same four candidate rules, cost comparison, first-wins tie-break and
    renormalization as the scalar step.
    """
    a = alpha
    a2 = a * a
    s1 = np.sqrt(1.0 + a2 * (x1 * x1 - 1.0))
    s2 = np.sqrt(1.0 + a2 * (x2 * x2 - 1.0))
    ax1 = a * x1
    ax2 = a * x2
    costs = np.stack(
        (
            -(s1 * y1 + ax2 * y2),
            -(-s1 * y1 + ax2 * y2),
            -(ax1 * y1 + s2 * y2),
            -(ax1 * y1 - s2 * y2),
        )
    )
    k = np.argmin(costs, axis=0)
    bit = k >= 2
    nx1 = np.where(k == 0, s1, np.where(k == 1, -s1, ax1))
    nx2 = np.where(bit, np.where(k == 2, s2, -s2), ax2)
    nrm = np.sqrt(nx1 * nx1 + nx2 * nx2)
    return nx1 / nrm, nx2 / nrm, bit


def modified_dlm_step_arrays(
    x1: np.ndarray,
    x2: np.ndarray,
    y2sq: np.ndarray,
    alpha: float,
) -> tuple[np.ndarray, np.ndarray, np.ndarray]:
    """One modified-machine event per lane; returns (x1, x2, bit)."""
    a2 = alpha * alpha
    x2sq = x2 * x2
    bit = (x2sq - y2sq) < 0.0
    new_x2sq = a2 * x2sq + (1.0 - a2) * bit
    ns = np.sqrt(new_x2sq)
    nc = np.sqrt(1.0 - new_x2sq)
    ns = np.where(x2 < 0.0, -ns, ns)
    nc = np.where(x1 < 0.0, -nc, nc)
    return nc, ns, bit


def _initial_vectors(
    thetas: np.ndarray, seeds: list
) -> tuple[np.ndarray, np.ndarray, np.ndarray, np.ndarray]:
    y1 = np.array([math.cos(t) for t in thetas])
    y2 = np.array([math.sin(t) for t in thetas])
    angles = [RandomStream(s).angle() for s in seeds]
    x1 = np.array([math.cos(t) for t in angles])
    x2 = np.array([math.sin(t) for t in angles])
    return y1, y2, x1, x2


def polarizer_counts_lanes(
    kind: str,
    thetas: np.ndarray,
    n_counted: int,
    alpha: float,
    warmup: int,
    seeds: list,
) -> np.ndarray:
    """Channel-S counts for one polarizer per lane at fixed input angles.

    Lane i reproduces run_polarizer(kind, thetas[i], n_counted, alpha,
    warmup, seeds[i]) exactly.
    """
    thetas = np.asarray(thetas, dtype=float)
    n_lanes = thetas.shape[0]
    if len(seeds) != n_lanes:
        raise ValueError("one seed per lane required")
    if kind == "bernoulli":
        k_s = np.empty(n_lanes, dtype=np.int64)
        for i in range(n_lanes):
            s = math.sin(thetas[i])
            p_s = s * s
            draws = RandomStream(seeds[i]).uniforms(warmup + n_counted)
            k_s[i] = int(np.count_nonzero(draws[warmup:] < p_s))
        return k_s
    if kind not in ("dlm", "modified"):
        raise ValueError(f"unknown processor kind: {kind!r}")
    y1, y2, x1, x2 = _initial_vectors(thetas, seeds)
    k_s = np.zeros(n_lanes, dtype=np.int64)
    if kind == "dlm":
        for step in range(warmup + n_counted):
            x1, x2, bit = dlm_step_arrays(x1, x2, y1, y2, alpha)
            if step >= warmup:
                k_s += bit
    else:
        y2sq = y2 * y2
        for step in range(warmup + n_counted):
            x1, x2, bit = modified_dlm_step_arrays(x1, x2, y2sq, alpha)
            if step >= warmup:
                k_s += bit
    return k_s


class _BeamSplitterLanes:
    """Per-lane state of one beam splitter across all lanes."""

    def __init__(self, n_lanes: int, rng_list: list[RandomStream]):
        self.w0 = np.full(n_lanes, 0.5)
        self.w1 = np.full(n_lanes, 0.5)
        self.st0_re = np.ones(n_lanes)
        self.st0_im = np.zeros(n_lanes)
        self.st1_re = np.ones(n_lanes)
        self.st1_im = np.zeros(n_lanes)
        self.n_seen = 0
        self.acc = np.array([rng.uniform() for rng in rng_list])


def run_two_mzi_lanes(
    phases: np.ndarray,
    mode: str,
    seeds: list,
    n_events: int,
    window_from: int = 0,
    gamma: float = 0.99995,
    eta: float = 0.25,
    chunk: int = 4096,
) -> tuple[np.ndarray, np.ndarray]:
    """Interferometer sweep: lane i runs the network at phases[i] with seeds[i].

    Returns (counts, window_counts), both (n_lanes, 6) arrays; window_counts
    only accumulates events with index >= window_from.  Lane i reproduces
    run_network(build_two_mzi(phases[i]), n_events, mode, seeds[i]) exactly.
    """
    phases = np.asarray(phases, dtype=float)
    if phases.ndim != 2 or phases.shape[1] != 4:
        raise ValueError("phases must have shape (n_lanes, 4)")
    n_lanes = phases.shape[0]
    if len(seeds) != n_lanes:
        raise ValueError("one seed per lane required")
    if mode not in ("deterministic", "probabilistic"):
        raise ValueError(f"unknown mode: {mode!r}")

    # Reduce each phase the way the scalar phase shifter stores it, then
    # freeze its rotation coefficients.
    reduced = np.vectorize(lambda p: p % (2.0 * math.pi))(phases)
    cp = np.vectorize(math.cos)(reduced)
    sp = np.vectorize(math.sin)(reduced)

    rng_list = [RandomStream(s) for s in seeds]
    splitters = [_BeamSplitterLanes(n_lanes, rng_list) for _ in range(3)]
    gens = [rng.generator() for rng in rng_list]

    counts = np.zeros((n_lanes, 6), dtype=np.int64)
    window_counts = np.zeros((n_lanes, 6), dtype=np.int64)
    g = gamma

    event = 0
    while event < n_events:
        batch = min(chunk, n_events - event)
        if mode == "probabilistic":
            draws = np.stack([gen.random((batch, 3)) for gen in gens])
        for j in range(batch):
            clock_re = np.ones(n_lanes)
            clock_im = np.zeros(n_lanes)
            port = np.zeros(n_lanes, dtype=bool)
            for k, bs in enumerate(splitters):
                if bs.n_seen < _BURN_IN_EVENTS:
                    g_eff = _BURN_IN_GAMMA
                else:
                    since = bs.n_seen - _BURN_IN_EVENTS
                    g_eff = min(g, (since + 1) / (since + 2))
                bs.n_seen += 1
                on0 = np.where(port, 0.0, 1.0)
                bs.w0 = g_eff * bs.w0 + (1.0 - g_eff) * on0
                bs.w1 = g_eff * bs.w1 + (1.0 - g_eff) * (1.0 - on0)
                align0 = bs.st0_re * clock_re + bs.st0_im * clock_im
                blend0_re = (1.0 - eta) * bs.st0_re + eta * clock_re
                blend0_im = (1.0 - eta) * bs.st0_im + eta * clock_im
                n0 = np.maximum(
                    np.sqrt(blend0_re * blend0_re + blend0_im * blend0_im), 1e-12
                )
                new0_re = np.where(align0 < 0.5, clock_re, blend0_re / n0)
                new0_im = np.where(align0 < 0.5, clock_im, blend0_im / n0)
                bs.st0_re = np.where(port, bs.st0_re, new0_re)
                bs.st0_im = np.where(port, bs.st0_im, new0_im)
                align1 = bs.st1_re * clock_re + bs.st1_im * clock_im
                blend1_re = (1.0 - eta) * bs.st1_re + eta * clock_re
                blend1_im = (1.0 - eta) * bs.st1_im + eta * clock_im
                n1 = np.maximum(
                    np.sqrt(blend1_re * blend1_re + blend1_im * blend1_im), 1e-12
                )
                new1_re = np.where(align1 < 0.5, clock_re, blend1_re / n1)
                new1_im = np.where(align1 < 0.5, clock_im, blend1_im / n1)
                bs.st1_re = np.where(port, new1_re, bs.st1_re)
                bs.st1_im = np.where(port, new1_im, bs.st1_im)

                r0 = np.sqrt(bs.w0)
                r1 = np.sqrt(bs.w1)
                a0_re = r0 * bs.st0_re
                a0_im = r0 * bs.st0_im
                a1_re = r1 * bs.st1_re
                a1_im = r1 * bs.st1_im
                b0_re = (a0_re - a1_im) * _INV_SQRT2
                b0_im = (a0_im + a1_re) * _INV_SQRT2
                b1_re = (-a0_im + a1_re) * _INV_SQRT2
                b1_im = (a0_re + a1_im) * _INV_SQRT2
                p0 = b0_re * b0_re + b0_im * b0_im
                p1 = b1_re * b1_re + b1_im * b1_im
                tot = p0 + p1

                if mode == "deterministic":
                    acc = bs.acc + p1 / tot
                    bit = acc >= 1.0
                    bs.acc = acc - bit
                else:
                    bit = draws[:, j, k] < p1 / tot

                port = bit
                b_re = np.where(bit, b1_re, b0_re)
                b_im = np.where(bit, b1_im, b0_im)
                r = np.sqrt(b_re * b_re + b_im * b_im)
                degenerate = r < _DEGENERATE_AMPLITUDE
                safe_r = np.where(degenerate, 1.0, r)
                new_re = b_re / safe_r
                new_im = b_im / safe_r
                clock_re = np.where(degenerate, clock_re, new_re)
                clock_im = np.where(degenerate, clock_im, new_im)

                lane_counts = np.where(bit, 1, 0)
                counts[:, 2 * k] += 1 - lane_counts
                counts[:, 2 * k + 1] += lane_counts
                if event + j >= window_from:
                    window_counts[:, 2 * k] += 1 - lane_counts
                    window_counts[:, 2 * k + 1] += lane_counts

                if k < 2:
                    line = 2 * k
                    f_re = np.where(bit, cp[:, line + 1], cp[:, line])
                    f_im = np.where(bit, sp[:, line + 1], sp[:, line])
                    rot_re = clock_re * f_re - clock_im * f_im
                    rot_im = clock_re * f_im + clock_im * f_re
                    clock_re = rot_re
                    clock_im = rot_im
        event += batch
    return counts, window_counts
