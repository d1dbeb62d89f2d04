"""Event-by-event simulation of two chained Mach-Zehnder interferometers.

Particles leave a source one at a time, each carrying a phase clock (a unit
vector).  Three identical beam splitters route them through two chained
interferometer loops; phase shifters on the four internal lines rotate the
clock.  Six detectors count: N0/N1 tap the lines after the first beam
splitter, N2/N3 tap the lines after the second, and N4/N5 terminate the
network.  Every particle passes all three beam splitters, so N0+N1 and
N2+N3 both equal the number of completed events.

A beam splitter holds two adaptive stages: an input stage that learns the
relative intensity of its two input lines (parameter gamma) and keeps an
averaged clock per line, and an output stage that routes each particle so
that the port frequencies reproduce the splitting probabilities of the
learned amplitudes, by error diffusion in deterministic mode or by one
uniform draw in probabilistic mode.  The quantum reference for the whole
network is the product of 2x2 beam-splitter and phase matrices, computed
in :func:`quantum_amplitudes`, and the event counts converge to its
probabilities for any phase setting.
"""
from __future__ import annotations

import cmath
import math
from dataclasses import dataclass, field

from .polarizer import UnitVector2
from .rng import RandomStream

_INV_SQRT2 = 1.0 / math.sqrt(2.0)
_DEGENERATE_AMPLITUDE = 1e-15


@dataclass(frozen=True)
class QuantumReference:
    """Amplitudes b0..b5 and their probabilities, one pair per stage."""

    b: tuple[complex, complex, complex, complex, complex, complex]
    probs: tuple[float, float, float, float, float, float]


def quantum_amplitudes(
    phi0: float, phi1: float, phi2: float, phi3: float
) -> QuantumReference:
    """Quantum amplitudes for the six detector lines, source on mode 0.

    Each beam splitter applies (1/sqrt(2)) [[1, i], [i, 1]]; each pair of
    phase shifters applies diag(e^(i phi_even), e^(i phi_odd)) before the
    next splitter.  Every stage is unitary, so |b_2k|^2 + |b_2k+1|^2 = 1.
    """
    def split(a0: complex, a1: complex) -> tuple[complex, complex]:
        return (
            (a0 + 1j * a1) * _INV_SQRT2,
            (1j * a0 + a1) * _INV_SQRT2,
        )

    b0, b1 = split(1.0 + 0.0j, 0.0j)
    b2, b3 = split(b0 * cmath.exp(1j * phi0), b1 * cmath.exp(1j * phi1))
    b4, b5 = split(b2 * cmath.exp(1j * phi2), b3 * cmath.exp(1j * phi3))
    amps = (b0, b1, b2, b3, b4, b5)
    return QuantumReference(
        b=amps,
        probs=tuple(z.real * z.real + z.imag * z.imag for z in amps),
    )


@dataclass
class Messenger:
    """The single in-flight particle: clock phase, current line, event index."""

    clock: UnitVector2
    port: int
    id: int = 0


@dataclass
class PhaseShifterNode:
    """Rotates the messenger clock by a fixed phase."""

    phi: float

    def __post_init__(self):
        self.phi = self.phi % (2.0 * math.pi)

    def process(self, msg: Messenger) -> Messenger:
        return Messenger(clock=msg.clock.rotated(self.phi), port=msg.port, id=msg.id)


def phase_shift(msg: Messenger, node: PhaseShifterNode) -> Messenger:
    return node.process(msg)


class BeamSplitterNode:
    """Adaptive beam splitter: intensity learner, transformation, output stage.

    Three stages per event.  (i) The input stage learns the relative
    intensity of its two lines through w = gamma_eff*w +
    (1-gamma_eff)*indicator with a scheduled gamma_eff: a fast-forgetting
    burn-in for the first 500 events (the network's own phases are not
    learnable yet, so that flow must not linger in the statistics), then a
    running mean restarted after the burn-in (unbiased even for lines fed a
    handful of events per run), capped by the configured gamma so mid-run
    changes still age out.  The stage also keeps one remembered clock per
    line, averaged with inertia eta and renormalized, which suppresses the
    phase noise a rarely fed line would inherit from single samples.
    (ii) The transformation builds amplitudes a_k = sqrt(w_k) * stored_k
    and applies the splitter matrix (1/sqrt(2)) [[1, i], [i, 1]].  (iii)
    The output stage routes the particle: deterministically by an
    error-diffusion accumulator on the target frequency
    |b1|^2 / (|b0|^2 + |b1|^2), whose emitted density matches any target
    within 1/N, or probabilistically by one uniform draw.  The
    accumulator's initial phase comes from the seed.
    """

    BURN_IN_EVENTS = 500
    BURN_IN_GAMMA = 0.99

    def __init__(
        self,
        gamma: float = 0.99995,
        eta: float = 0.25,
        mode: str = "deterministic",
        rng: RandomStream | None = None,
    ):
        if not 0.0 < gamma < 1.0:
            raise ValueError(f"gamma must lie in (0, 1), got {gamma}")
        if not 0.0 < eta <= 1.0:
            raise ValueError(f"eta must lie in (0, 1], got {eta}")
        if mode not in ("deterministic", "probabilistic"):
            raise ValueError(f"unknown mode: {mode!r}")
        self.gamma = gamma
        self.eta = eta
        self.mode = mode
        self.w = [0.5, 0.5]
        self.stored = [complex(1.0, 0.0), complex(1.0, 0.0)]
        self.n_seen = 0
        self.acc = rng.uniform() if rng is not None else 0.5

    def reinit(self, rng: RandomStream) -> None:
        """Back to the fresh state with a new seed-random accumulator phase."""
        self.w = [0.5, 0.5]
        self.stored = [complex(1.0, 0.0), complex(1.0, 0.0)]
        self.n_seen = 0
        self.acc = rng.uniform()

    def process(self, msg: Messenger, rng: RandomStream) -> Messenger:
        if self.n_seen < self.BURN_IN_EVENTS:
            g = self.BURN_IN_GAMMA
        else:
            since = self.n_seen - self.BURN_IN_EVENTS
            g = min(self.gamma, (since + 1) / (since + 2))
        self.n_seen += 1
        port = msg.port
        on0 = 1.0 if port == 0 else 0.0
        self.w[0] = g * self.w[0] + (1.0 - g) * on0
        self.w[1] = g * self.w[1] + (1.0 - g) * (1.0 - on0)
        clock = complex(msg.clock.c, msg.clock.s)
        old = self.stored[port]
        align = old.real * clock.real + old.imag * clock.imag
        if align < 0.5:
            # More than 60 degrees away: a regime change (settling transient
            # or a live control change), not noise; averaging would stall
            # near opposite phases, so adopt the new clock outright.
            self.stored[port] = clock
        else:
            blended = (1.0 - self.eta) * old + self.eta * clock
            norm = math.sqrt(
                blended.real * blended.real + blended.imag * blended.imag
            )
            self.stored[port] = complex(blended.real / norm, blended.imag / norm)

        a0 = math.sqrt(self.w[0]) * self.stored[0]
        a1 = math.sqrt(self.w[1]) * self.stored[1]
        b0 = (a0 + 1j * a1) * _INV_SQRT2
        b1 = (1j * a0 + a1) * _INV_SQRT2
        p0 = b0.real * b0.real + b0.imag * b0.imag
        p1 = b1.real * b1.real + b1.imag * b1.imag
        tot = p0 + p1

        if self.mode == "deterministic":
            self.acc = self.acc + p1 / tot
            out_port = 1 if self.acc >= 1.0 else 0
            self.acc = self.acc - out_port
        else:
            out_port = 1 if rng.uniform() < p1 / tot else 0

        b_out = b1 if out_port else b0
        r = math.sqrt(b_out.real * b_out.real + b_out.imag * b_out.imag)
        if r < _DEGENERATE_AMPLITUDE:
            out_clock = msg.clock
        else:
            out_clock = UnitVector2(b_out.real / r, b_out.imag / r)
        return Messenger(clock=out_clock, port=out_port, id=msg.id)


def beam_splitter_process(
    node: BeamSplitterNode, msg: Messenger, rng: RandomStream
) -> tuple[BeamSplitterNode, Messenger]:
    """Functional wrapper: updates the node in place and returns it with the output."""
    return node, node.process(msg, rng)


@dataclass
class NetworkCounters:
    """Event tallies: emitted total and the six detector counts."""

    emitted: int = 0
    counts: list[int] = field(default_factory=lambda: [0, 0, 0, 0, 0, 0])

    def copy(self) -> "NetworkCounters":
        return NetworkCounters(emitted=self.emitted, counts=list(self.counts))

    def ratios(self) -> list[float]:
        if self.emitted == 0:
            return [0.0] * 6
        return [c / self.emitted for c in self.counts]


class TwoMziNetwork:
    """The full network: source, three beam splitters, four phase lines."""

    def __init__(
        self,
        phases: tuple[float, float, float, float] = (0.0, 0.0, 0.0, 0.0),
        gamma: float = 0.99995,
        eta: float = 0.25,
        mode: str = "deterministic",
        seed: int | tuple[int, ...] = 0,
    ):
        self.gamma = gamma
        self.eta = eta
        self.mode = mode
        self.phase_shifters = [PhaseShifterNode(p) for p in phases]
        self.counters = NetworkCounters()
        self._seed = seed
        self._rng = RandomStream(seed)
        self.beam_splitters = [
            BeamSplitterNode(gamma=gamma, eta=eta, mode=mode, rng=self._rng)
            for _ in range(3)
        ]

    @property
    def n_beam_splitters(self) -> int:
        return len(self.beam_splitters)

    @property
    def n_phase_shifters(self) -> int:
        return len(self.phase_shifters)

    @property
    def n_detectors(self) -> int:
        return 6

    def quantum_probabilities(self) -> tuple[float, ...]:
        return quantum_amplitudes(*(ps.phi for ps in self.phase_shifters)).probs

    def set_mode(self, mode: str) -> None:
        if mode not in ("deterministic", "probabilistic"):
            raise ValueError(f"unknown mode: {mode!r}")
        self.mode = mode
        for bs in self.beam_splitters:
            bs.mode = mode

    def set_phase(self, index: int, phi: float) -> None:
        if not 0 <= index <= 3:
            raise IndexError(f"phase index must lie in 0..3, got {index}")
        self.phase_shifters[index].phi = phi % (2.0 * math.pi)

    def reset_counters(self) -> None:
        self.counters = NetworkCounters()

    def reset_all(self, seed: int | tuple[int, ...] | None = None) -> None:
        """Counters to zero and every adaptive stage back to its fresh state."""
        if seed is not None:
            self._seed = seed
        self._rng = RandomStream(self._seed)
        for bs in self.beam_splitters:
            bs.reinit(self._rng)
        self.reset_counters()

    def run_event(self) -> int:
        """Send one particle through the network; returns its final detector (4 or 5)."""
        msg = Messenger(clock=UnitVector2(1.0, 0.0), port=0, id=self.counters.emitted)
        bs = self.beam_splitters
        ps = self.phase_shifters
        msg = bs[0].process(msg, self._rng)
        self.counters.counts[msg.port] += 1
        msg = ps[msg.port].process(msg)
        msg = bs[1].process(msg, self._rng)
        self.counters.counts[2 + msg.port] += 1
        msg = ps[2 + msg.port].process(msg)
        msg = bs[2].process(msg, self._rng)
        self.counters.counts[4 + msg.port] += 1
        self.counters.emitted += 1
        return 4 + msg.port

    def run(self, n_events: int) -> NetworkCounters:
        for _ in range(n_events):
            self.run_event()
        return self.counters.copy()


class SingleMziNetwork:
    """One interferometer loop: two beam splitters, two phase lines, four counters."""

    def __init__(
        self,
        phases: tuple[float, float] = (0.0, 0.0),
        gamma: float = 0.99995,
        eta: float = 0.25,
        mode: str = "deterministic",
        seed: int | tuple[int, ...] = 0,
    ):
        self.phase_shifters = [PhaseShifterNode(p) for p in phases]
        self.counters = NetworkCounters()
        self._rng = RandomStream(seed)
        self.beam_splitters = [
            BeamSplitterNode(gamma=gamma, eta=eta, mode=mode, rng=self._rng)
            for _ in range(2)
        ]

    def quantum_probabilities(self) -> tuple[float, ...]:
        probs = quantum_amplitudes(
            self.phase_shifters[0].phi, self.phase_shifters[1].phi, 0.0, 0.0
        ).probs
        return probs[:4]

    def run_event(self) -> int:
        msg = Messenger(clock=UnitVector2(1.0, 0.0), port=0, id=self.counters.emitted)
        msg = self.beam_splitters[0].process(msg, self._rng)
        self.counters.counts[msg.port] += 1
        msg = self.phase_shifters[msg.port].process(msg)
        msg = self.beam_splitters[1].process(msg, self._rng)
        self.counters.counts[2 + msg.port] += 1
        self.counters.emitted += 1
        return 2 + msg.port

    def run(self, n_events: int) -> NetworkCounters:
        for _ in range(n_events):
            self.run_event()
        return self.counters.copy()


def build_two_mzi(
    phases: tuple[float, float, float, float],
    gamma: float = 0.99995,
    eta: float = 0.25,
) -> TwoMziNetwork:
    """Network for the four given phase-line settings (radians)."""
    return TwoMziNetwork(phases=tuple(phases), gamma=gamma, eta=eta)


def run_network(
    topology: TwoMziNetwork,
    n_events: int,
    mode: str = "deterministic",
    seed: int | tuple[int, ...] = 0,
) -> NetworkCounters:
    """Re-seed the network, process n_events particles, return the counters."""
    if n_events < 1:
        raise ValueError("n_events must be >= 1")
    topology.set_mode(mode)
    topology.reset_all(seed)
    return topology.run(n_events)


def set_phase_live(topology: TwoMziNetwork, index: int, phi: float) -> TwoMziNetwork:
    """Change one phase without touching adaptive states or counters."""
    topology.set_phase(index, phi)
    return topology
