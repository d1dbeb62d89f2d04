"""Lane runners must reproduce the scalar implementations bit for bit."""
import math

import numpy as np
import pytest

from dlmsim.interferometer import build_two_mzi, run_network
from dlmsim.polarizer import run_polarizer
from dlmsim.vectorized import polarizer_counts_lanes, run_two_mzi_lanes

QUADS = [
    (152.0, 302.0, 0.0, 342.0),
    (10.0, 200.0, 77.0, 310.0),
    (0.0, 0.0, 0.0, 0.0),
    (359.0, 1.0, 180.0, 90.0),
]


@pytest.mark.parametrize("kind,warmup", [("dlm", 300), ("modified", 300), ("bernoulli", 0)])
def test_polarizer_lanes_match_scalar(kind, warmup):
    thetas = np.array([math.radians(d) for d in (7.3, 30.0, 45.0, 61.8, 88.0)])
    seeds = [(31, i) for i in range(len(thetas))]
    lanes = polarizer_counts_lanes(kind, thetas, 1200, 0.99, warmup, seeds)
    for i, theta in enumerate(thetas):
        scalar = run_polarizer(kind, float(theta), 1200, 0.99, warmup, seeds[i])
        assert scalar.n_s == int(lanes[i])


@pytest.mark.parametrize("mode", ["deterministic", "probabilistic"])
def test_network_lanes_match_scalar(mode):
    phases = np.array([[math.radians(d) for d in quad] for quad in QUADS])
    seeds = [(77, i) for i in range(len(QUADS))]
    counts, window = run_two_mzi_lanes(
        phases, mode, seeds, 2000, window_from=500, chunk=700
    )
    for i in range(len(QUADS)):
        net = build_two_mzi(tuple(phases[i]))
        head = run_network(net, 500, mode=mode, seed=seeds[i])
        tail = net.run(1500)
        assert list(counts[i]) == tail.counts
        assert list(window[i]) == [t - h for t, h in zip(tail.counts, head.counts)]


def test_lane_counts_are_rerun_identical():
    phases = np.array([[math.radians(d) for d in QUADS[0]]])
    a, _ = run_two_mzi_lanes(phases, "probabilistic", [(5, 0)], 1500)
    b, _ = run_two_mzi_lanes(phases, "probabilistic", [(5, 0)], 1500)
    assert np.array_equal(a, b)


def test_lane_shape_validation():
    with pytest.raises(ValueError):
        run_two_mzi_lanes(np.zeros((3, 2)), "deterministic", [0, 1, 2], 10)
    with pytest.raises(ValueError):
        run_two_mzi_lanes(np.zeros((2, 4)), "deterministic", [0], 10)
    with pytest.raises(ValueError):
        polarizer_counts_lanes("nope", np.array([0.3]), 10, 0.99, 0, [0])
