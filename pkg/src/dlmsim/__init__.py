"""Event-by-event simulation of quantum-like behavior from data processors.

A Bernoulli processor and a deterministic learning machine reproduce
Malus' law event by event; networks of the same machines reproduce the
interference pattern of two chained Mach-Zehnder interferometers.  The
package also carries the analytical toolkit for the machine's stationary
states (circle-map orbits, minimum representable angle, variance formulas,
Wigner-lattice ground states) and a benchmark harness comparing the
processors' encoding efficiency.
"""
from .polarizer import (
    CHANNEL_C,
    CHANNEL_S,
    DlmState,
    OutputEvent,
    PolarizerRun,
    UnitVector2,
    bernoulli_step,
    dlm_candidates,
    dlm_step,
    modified_dlm_step,
    run_polarizer,
)
from .rng import RandomStream
from .stationary import (
    BitSequence,
    StationaryOrbit,
    circle_map_step,
    continuation_criterion,
    delta_steps,
    extract_stationary_sequence,
    k_sequence_fixed_point,
    orbit_fixed_points,
    orbit_variance,
    repetition_threshold,
    theta_min,
)
from .stats import (
    BinomialModel,
    EncodingCapacity,
    cramer_rao_identity,
    distinguishable_messages,
    dlm_message_capacity,
    fisher_information,
    likelihood_ratio_expansion,
    likelihood_ratio_quadratic,
    log_binomial_pmf,
)
from .wigner import (
    LatticeConfig,
    brute_force_min_variance,
    lattice_energy,
    necklaces,
    wigner_ground_state,
)
from .interferometer import (
    BeamSplitterNode,
    Messenger,
    NetworkCounters,
    PhaseShifterNode,
    QuantumReference,
    SingleMziNetwork,
    TwoMziNetwork,
    beam_splitter_process,
    build_two_mzi,
    phase_shift,
    quantum_amplitudes,
    run_network,
    set_phase_live,
)
from .bench import (
    BenchConfig,
    BenchResult,
    angle_grid,
    run_benchmark,
    uniform_grid_degradation,
)
from .server import LiveSimulation

__all__ = [name for name in dir() if not name.startswith("_")]
__version__ = "0.1.0"
