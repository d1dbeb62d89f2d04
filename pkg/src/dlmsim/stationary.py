"""Stationary-state analysis of the learning machine.

In the stationary regime the squared second component of the machine's
internal vector obeys the contraction

    x2 <- alpha^2 * x2 + (1 - alpha^2) * bit,

a circle map whose periodic orbits encode the machine's output patterns.
This module computes the orbit fixed points and variances of arbitrary
periodic bit sequences, the minimum representable angle, the decision
criterion that sustains a periodic continuation, the alpha threshold above
which a run of K zeros and one one repeats exactly, and the detection of
the stationary pattern of a running machine.
"""
from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction

import numpy as np

from .polarizer import DlmState, UnitVector2, dlm_step
from .rng import RandomStream

_CLOSURE_TOL = 1e-12
_VAR_AGREEMENT_TOL = 1e-12
_RECURRENCE_TOL = 1e-10


def _canonical_rotation(bits: tuple[int, ...]) -> tuple[int, ...]:
    """Lexicographically smallest rotation that starts with a 1.

    All-zero sequences are their own canonical form.  Sequences are compared
    as necklaces (cyclic-rotation equivalence classes) throughout.
    """
    if not any(bits):
        return bits
    q = len(bits)
    best = None
    for r in range(q):
        if bits[r] != 1:
            continue
        rot = bits[r:] + bits[:r]
        if best is None or rot < best:
            best = rot
    return best


@dataclass(frozen=True)
class BitSequence:
    """One period of a binary output pattern."""

    bits: tuple[int, ...]

    def __post_init__(self):
        if len(self.bits) < 1:
            raise ValueError("empty sequence")
        if any(b not in (0, 1) for b in self.bits):
            raise ValueError("bits must be 0 or 1")

    @classmethod
    def from_string(cls, s: str) -> "BitSequence":
        return cls(tuple(int(ch) for ch in s))

    @property
    def q(self) -> int:
        return len(self.bits)

    @property
    def ones(self) -> int:
        return sum(self.bits)

    @property
    def density(self) -> Fraction:
        return Fraction(self.ones, self.q)

    def canonical(self) -> "BitSequence":
        return BitSequence(_canonical_rotation(self.bits))

    def same_necklace(self, other: "BitSequence") -> bool:
        return _canonical_rotation(self.bits) == _canonical_rotation(other.bits)

    def __str__(self) -> str:
        return "".join(str(b) for b in self.bits)


@dataclass(frozen=True)
class StationaryOrbit:
    """Periodic orbit of the circle map for one bit sequence.

    fixed_points[r] is the orbit value just before bit r of the sequence is
    consumed; the orbit mean equals the sequence density exactly.
    """

    sequence: BitSequence
    alpha: float
    fixed_points: tuple[float, ...]
    mean: float
    variance: float


def circle_map_step(x_sq: float, theta_bit: int, alpha: float) -> float:
    """One application of the squared-component contraction.

    The result is clamped to [0, 1]; inputs may exceed the interval by
    rounding only.
    """
    if not -1e-12 <= x_sq <= 1.0 + 1e-12:
        raise ValueError(f"x_sq must lie in [0, 1], got {x_sq}")
    if not 0.0 < alpha < 1.0:
        raise ValueError(f"alpha must lie in (0, 1), got {alpha}")
    if theta_bit not in (0, 1):
        raise ValueError(f"theta_bit must be 0 or 1, got {theta_bit}")
    a2 = alpha * alpha
    return min(max(a2 * x_sq + (1.0 - a2) * theta_bit, 0.0), 1.0)


def k_sequence_fixed_point(k: int, alpha: float) -> float:
    """Peak orbit value of the repeating pattern of K zeros followed by one 1.

    Returns the value taken right after the 1 event, i.e. before the run of
    zeros starts; iterating the map through K zeros and one 1 returns to it.
    """
    if k < 0:
        raise ValueError("k must be >= 0")
    if not 0.0 < alpha < 1.0:
        raise ValueError(f"alpha must lie in (0, 1), got {alpha}")
    a2 = alpha * alpha
    return (1.0 - a2) / (1.0 - a2 ** (k + 1))


def _orbit_values(bits: tuple[int, ...], alpha: float) -> np.ndarray:
    """Fixed points at every cyclic offset, s[r] = value before consuming bits[r]."""
    q = len(bits)
    a2 = alpha * alpha
    # s[0] from the closed-form geometric sum over one period, then propagate.
    acc = 0.0
    for b in bits:
        acc = a2 * acc + (1.0 - a2) * b
    s0 = acc / (1.0 - a2**q)
    values = np.empty(q)
    values[0] = s0
    for r in range(1, q):
        values[r] = a2 * values[r - 1] + (1.0 - a2) * bits[r - 1]
    return values


def orbit_fixed_points(seq: BitSequence, alpha: float) -> StationaryOrbit:
    """Unique periodic orbit of the circle map driven by the sequence.

    Verifies closure (one full trip around the cycle returns to the start
    within 1e-12) and that the orbit mean equals the bit density.
    """
    if not 0.0 < alpha < 1.0:
        raise ValueError(f"alpha must lie in (0, 1), got {alpha}")
    bits = seq.bits
    values = _orbit_values(bits, alpha)
    x = values[0]
    for b in bits:
        x = circle_map_step(x, b, alpha)
    if abs(x - values[0]) > _CLOSURE_TOL:
        raise ArithmeticError(f"orbit failed to close: {x} vs {values[0]}")
    mean = float(values.mean())
    density = seq.ones / seq.q
    if abs(mean - density) > 1e-9:
        raise ArithmeticError(f"orbit mean {mean} does not match density {density}")
    var = float(np.mean(values * values) - mean * mean)
    return StationaryOrbit(
        sequence=seq,
        alpha=alpha,
        fixed_points=tuple(float(v) for v in values),
        mean=mean,
        variance=var,
    )


def _variance_double_sum(bits: tuple[int, ...], alpha: float) -> float:
    """Orbit variance from the closed-form double sum over bit pairs."""
    q = len(bits)
    a2 = alpha * alpha
    theta_bar = sum(bits) / q
    arr = np.asarray(bits, dtype=float)
    pair = 0.0
    for i in range(q - 1):
        shifted = np.roll(arr, -(i + 1))
        pair += a2**i * float(np.dot(shifted, arr))
    pair /= q
    fourth = ((1.0 - a2) / (1.0 + a2)) * (
        (1.0 + a2**q) / (1.0 - a2**q) * theta_bar
        + 2.0 * a2 / (1.0 - a2**q) * pair
    )
    return fourth - theta_bar * theta_bar


def orbit_variance(seq: BitSequence, alpha: float) -> float:
    """Variance of the periodic orbit, computed by two independent routes.

    The direct route averages the squared fixed points; the second route
    uses the closed-form double sum over bit pairs.  Both must agree within
    1e-12, which catches any index-convention error.
    """
    direct = orbit_fixed_points(seq, alpha).variance
    summed = _variance_double_sum(seq.bits, alpha)
    if abs(direct - summed) > _VAR_AGREEMENT_TOL:
        raise ArithmeticError(
            f"variance routes disagree: direct {direct} vs double sum {summed}"
        )
    return direct


def theta_min(alpha: float) -> float:
    """Smallest representable input angle, arctan(sqrt((1-alpha)/(1+alpha)))."""
    if not 0.0 < alpha < 1.0:
        raise ValueError(f"alpha must lie in (0, 1), got {alpha}")
    return math.atan(math.sqrt((1.0 - alpha) / (1.0 + alpha)))


def continuation_criterion(z: float, alpha: float, theta: float) -> bool:
    """Whether the machine emits bit 1 from internal state x2 = z.

    Equivalent to comparing the costs of the two first-quadrant update rules
    for input angle theta; valid for 0 <= z <= 1.
    """
    if not 0.0 <= z <= 1.0:
        raise ValueError(f"z must lie in [0, 1], got {z}")
    if not 0.0 < alpha < 1.0:
        raise ValueError(f"alpha must lie in (0, 1), got {alpha}")
    a2 = alpha * alpha
    z2 = z * z
    rhs = (alpha * z + math.sqrt(1.0 - a2 + a2 * z2)) / (
        math.sqrt(1.0 - a2 * z2) + alpha * math.sqrt(1.0 - z2)
    )
    return math.tan(theta) > rhs


def repetition_profile(alpha: float, k: int) -> float:
    """Margin by which the K-zeros-one-1 pattern continues exactly.

    Positive means the machine, having emitted K zeros from the pattern's
    peak, emits the 1 that closes the cycle; negative means it emits an
    extra zero and the exact representation of 1/K is lost.
    """
    a2 = alpha * alpha
    z2 = a2**k * (1.0 - a2) / (1.0 - a2 ** (k + 1))
    z = math.sqrt(z2)
    rhs = (alpha * z + math.sqrt(1.0 - a2 + a2 * z2)) / (
        math.sqrt(1.0 - a2 * z2) + alpha * math.sqrt(1.0 - z2)
    )
    return 1.0 / math.sqrt(k) - rhs


def repetition_threshold(k: int, tol: float = 1e-6) -> float:
    """Smallest alpha above which the K-zeros-one-1 pattern repeats exactly.

    Bisection on the sign change of :func:`repetition_profile`; the bracket
    starts at (0.9, 1) and is widened downward for small K where the
    threshold lies below 0.9.
    """
    if k < 2:
        raise ValueError("k must be >= 2")
    hi = 1.0 - 1e-12
    lo = 0.9
    while repetition_profile(lo, k) > 0.0:
        lo /= 2.0
        if lo < 1e-9:
            return 0.0
    if repetition_profile(hi, k) < 0.0:
        raise ArithmeticError(f"no repetition threshold below 1 for k={k}")
    while hi - lo > tol:
        mid = 0.5 * (lo + hi)
        if repetition_profile(mid, k) > 0.0:
            hi = mid
        else:
            lo = mid
    return 0.5 * (lo + hi)


def delta_steps(theta: float, alpha: float) -> tuple[float, float]:
    """Leading-order angle increments of the two rule families.

    A bit-0 event rotates the internal vector by delta0 < 0, a bit-1 event
    by delta1 > 0; balancing N0*delta0 + N1*delta1 = 0 reproduces the
    stationary ratio N1/N0 = tan^2(theta).
    """
    if not 0.0 < theta < math.pi / 2.0:
        raise ValueError(f"theta must lie in (0, pi/2), got {theta}")
    if not 0.0 < alpha < 1.0:
        raise ValueError(f"alpha must lie in (0, 1), got {alpha}")
    half = (1.0 - alpha * alpha) / 2.0
    delta0 = -half * math.sin(theta) / math.cos(theta)
    delta1 = half * math.cos(theta) / math.sin(theta)
    return delta0, delta1


def extract_stationary_sequence(
    theta: float,
    alpha: float,
    warmup: int | None = None,
    max_period: int = 50,
    seed: int | tuple[int, ...] = 0,
) -> BitSequence | None:
    """Detect the repeating output pattern of a machine at fixed input angle.

    Runs the machine from a seed-random start, discards the warmup, then
    looks for the smallest period (up to max_period) under which both the
    emitted bits and the squared second component recur, the latter at
    1e-10 resolution.  Returns the canonical form of one period, or None if
    no period fits within the budget.

    The default warmup scales with the contraction rate so that the orbit
    has converged well below the recurrence resolution.
    """
    if max_period < 1:
        raise ValueError("max_period must be >= 1")
    if warmup is None:
        warmup = max(1000, int(16.0 / (1.0 - alpha)))
    y = UnitVector2.from_angle(theta)
    state = DlmState.random_start(alpha, RandomStream(seed))
    for _ in range(warmup):
        state, _ = dlm_step(state, y)
    span = 4 * max_period
    bits: list[int] = []
    xsq: list[float] = []
    for _ in range(span):
        state, event = dlm_step(state, y)
        bits.append(event.theta_bit)
        xsq.append(state.x.s * state.x.s)
    for period in range(1, max_period + 1):
        if all(bits[t] == bits[t + period] for t in range(span - period)) and all(
            abs(xsq[t] - xsq[t + period]) < _RECURRENCE_TOL
            for t in range(span - period)
        ):
            return BitSequence(tuple(bits[:period])).canonical()
    return None
