"""Event-by-event polarizer processors.

Three processors turn a relative angle theta = psi - phi into a stream of
binary output events whose channel frequencies follow Malus' law:

* a memoryless Bernoulli processor that draws one uniform number per event,
* a deterministic learning machine (DLM) that keeps a unit vector as
  internal state and picks, per event, the one of four update rules that
  minimizes the distance to the input vector,
* a modified DLM that always rotates its internal vector toward the input,
  used as a contrast case in the benchmark harness.

Output events are labeled by a bit: bit 1 is "channel S" (frequency
sin^2 theta), bit 0 is "channel C" (frequency cos^2 theta).  The same
labeling is used everywhere in this package.
"""
from __future__ import annotations

import math
from dataclasses import dataclass

from .rng import RandomStream

CHANNEL_C = "C"
CHANNEL_S = "S"

_NORM_TOL = 1e-9


@dataclass(frozen=True)
class UnitVector2:
    """Point on the unit circle, stored as (cos, sin) components."""

    c: float
    s: float

    def __post_init__(self):
        if abs(self.c * self.c + self.s * self.s - 1.0) > _NORM_TOL:
            raise ValueError(f"not a unit vector: ({self.c}, {self.s})")

    @classmethod
    def from_angle(cls, theta: float) -> "UnitVector2":
        return cls(math.cos(theta), math.sin(theta))

    def angle(self) -> float:
        return math.atan2(self.s, self.c)

    def dot(self, other: "UnitVector2") -> float:
        return self.c * other.c + self.s * other.s

    def rotated(self, phi: float) -> "UnitVector2":
        cp, sp = math.cos(phi), math.sin(phi)
        return UnitVector2(self.c * cp - self.s * sp, self.c * sp + self.s * cp)

    def renormalized(self) -> "UnitVector2":
        r = math.sqrt(self.c * self.c + self.s * self.s)
        return UnitVector2(self.c / r, self.s / r)


@dataclass(frozen=True)
class DlmState:
    """Internal state of a learning machine: unit vector plus learning rate."""

    x: UnitVector2
    alpha: float

    def __post_init__(self):
        if not 0.0 < self.alpha < 1.0:
            raise ValueError(f"alpha must lie in (0, 1), got {self.alpha}")

    @classmethod
    def random_start(cls, alpha: float, rng: RandomStream) -> "DlmState":
        """State with a uniformly random direction, one angle draw from rng."""
        return cls(UnitVector2.from_angle(rng.angle()), alpha)


@dataclass(frozen=True)
class OutputEvent:
    """One binary output event; the channel label is a fixed bijection of the bit."""

    theta_bit: int

    def __post_init__(self):
        if self.theta_bit not in (0, 1):
            raise ValueError(f"theta_bit must be 0 or 1, got {self.theta_bit}")

    @property
    def channel(self) -> str:
        return CHANNEL_S if self.theta_bit else CHANNEL_C


def bernoulli_step(theta: float, rng: RandomStream) -> OutputEvent:
    """One event of the Bernoulli processor.

    Emits channel S with probability sin^2(theta) and channel C with
    probability cos^2(theta), consuming exactly one uniform number.  The
    angle enters only through sin^2, so it is effectively reduced mod pi.
    """
    s = math.sin(theta)
    return OutputEvent(1 if rng.uniform() < s * s else 0)


def dlm_candidates(state: DlmState) -> list[tuple[UnitVector2, int]]:
    """The four candidate next states of the learning machine.

    Rules 1 and 2 (bit 0) shrink the second component by a factor alpha and
    stretch the first to keep unit norm, with either sign of the first
    component; rules 3 and 4 (bit 1) do the same with the roles swapped.
    Candidates are listed in this fixed order, which is also the tie-break
    order of :func:`dlm_step`.
    """
    a = state.alpha
    a2 = a * a
    x1, x2 = state.x.c, state.x.s
    s1 = math.sqrt(1.0 + a2 * (x1 * x1 - 1.0))
    s2 = math.sqrt(1.0 + a2 * (x2 * x2 - 1.0))
    ax1 = a * x1
    ax2 = a * x2
    return [
        (UnitVector2(s1, ax2), 0),
        (UnitVector2(-s1, ax2), 0),
        (UnitVector2(ax1, s2), 1),
        (UnitVector2(ax1, -s2), 1),
    ]


def dlm_step(state: DlmState, y: UnitVector2) -> tuple[DlmState, OutputEvent]:
    """One event of the learning machine for input vector y.

    Selects the candidate that minimizes the cost -x.y (first candidate wins
    ties) and renormalizes the result to counter floating-point drift.
    """
    a = state.alpha
    a2 = a * a
    x1, x2 = state.x.c, state.x.s
    y1, y2 = y.c, y.s
    s1 = math.sqrt(1.0 + a2 * (x1 * x1 - 1.0))
    s2 = math.sqrt(1.0 + a2 * (x2 * x2 - 1.0))
    ax1 = a * x1
    ax2 = a * x2
    costs = (
        -(s1 * y1 + ax2 * y2),
        -(-s1 * y1 + ax2 * y2),
        -(ax1 * y1 + s2 * y2),
        -(ax1 * y1 - s2 * y2),
    )
    k = 0
    for i in (1, 2, 3):
        if costs[i] < costs[k]:
            k = i
    if k == 0:
        nx1, nx2 = s1, ax2
    elif k == 1:
        nx1, nx2 = -s1, ax2
    elif k == 2:
        nx1, nx2 = ax1, s2
    else:
        nx1, nx2 = ax1, -s2
    nrm = math.sqrt(nx1 * nx1 + nx2 * nx2)
    new_state = DlmState(UnitVector2(nx1 / nrm, nx2 / nrm), a)
    return new_state, OutputEvent(1 if k >= 2 else 0)


def modified_dlm_step(state: DlmState, y: UnitVector2) -> tuple[DlmState, OutputEvent]:
    """One event of the modified (always rotate toward the input) machine.

    The squared second component moves toward the input's squared second
    component: bit 1 if it is currently smaller, bit 0 otherwise (equality
    counts as bit 0).  The first component is recomputed to keep unit norm,
    and both components keep their current signs.
    """
    a = state.alpha
    a2 = a * a
    x2sq = state.x.s * state.x.s
    y2sq = y.s * y.s
    bit = 1 if x2sq - y2sq < 0.0 else 0
    new_x2sq = a2 * x2sq + (1.0 - a2) * bit
    ns = math.sqrt(new_x2sq)
    nc = math.sqrt(1.0 - new_x2sq)
    if state.x.s < 0.0:
        ns = -ns
    if state.x.c < 0.0:
        nc = -nc
    return DlmState(UnitVector2(nc, ns), a), OutputEvent(bit)


@dataclass(frozen=True)
class PolarizerRun:
    """Counts per channel and the angle estimate arcsin(sqrt(K/N))."""

    n_c: int
    n_s: int
    theta_estimate: float


def run_polarizer(
    kind: str,
    theta: float,
    n: int,
    alpha: float = 0.99,
    warmup: int = 0,
    seed: int | tuple[int, ...] = 0,
) -> PolarizerRun:
    """Run a polarizer processor for n counted events at fixed input angle.

    Warmup events are processed but not counted (learning kinds only need
    them; they are processed for every kind for uniformity of the stream).
    For the learning kinds the initial internal direction is drawn from the
    seed.  The estimate is arcsin(sqrt(K/N)) with K the channel-S count.
    """
    if n < 1:
        raise ValueError("n must be >= 1")
    if warmup < 0:
        raise ValueError("warmup must be >= 0")
    if kind not in ("bernoulli", "dlm", "modified"):
        raise ValueError(f"unknown processor kind: {kind!r}")
    rng = RandomStream(seed)
    k_s = 0
    if kind == "bernoulli":
        s = math.sin(theta)
        p_s = s * s
        for i in range(warmup + n):
            bit = 1 if rng.uniform() < p_s else 0
            if i >= warmup:
                k_s += bit
    else:
        if not 0.0 < alpha < 1.0:
            raise ValueError(f"alpha must lie in (0, 1), got {alpha}")
        step = dlm_step if kind == "dlm" else modified_dlm_step
        y = UnitVector2.from_angle(theta)
        state = DlmState.random_start(alpha, rng)
        for i in range(warmup + n):
            state, event = step(state, y)
            if i >= warmup:
                k_s += event.theta_bit
    return PolarizerRun(
        n_c=n - k_s,
        n_s=k_s,
        theta_estimate=math.asin(math.sqrt(k_s / n)),
    )
