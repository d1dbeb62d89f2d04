"""Ground states of the one-dimensional lattice gas with convex repulsion.

Occupied sites repel with the exponentially decaying convex potential
V_k = alpha^(2k).  For a rational density p/q the ground state is periodic
with p particles per q sites (a generalized Wigner lattice) and, up to
rotation, coincides with the minimum-variance periodic output pattern of
the learning machine at the matching input angle.  This module provides
the direct construction, the lattice energy, and a brute-force necklace
enumeration that serves as an independent oracle for both.
"""
from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction
from itertools import combinations
from typing import Iterator

from .stationary import BitSequence, _canonical_rotation, orbit_variance


@dataclass(frozen=True)
class LatticeConfig:
    """Cyclic occupation pattern of the lattice, one period long."""

    occupation: tuple[int, ...]
    density: Fraction

    def __post_init__(self):
        if sum(self.occupation) != self.density.numerator * (
            len(self.occupation) // self.density.denominator
        ):
            raise ValueError("occupation does not match density")

    def sequence(self) -> BitSequence:
        return BitSequence(self.occupation)

    def canonical(self) -> tuple[int, ...]:
        return _canonical_rotation(self.occupation)

    def __str__(self) -> str:
        return "".join(str(n) for n in self.occupation)


def wigner_ground_state(p: int, q: int) -> LatticeConfig:
    """Ground-state configuration for p particles on q sites.

    Particle i sits at site floor(i * q / p); a common factor of (p, q) is
    reduced away first and the reduced pattern is tiled back to length q.
    The result is reported in canonical rotation (smallest starting with 1).
    """
    if not 1 <= p < q:
        raise ValueError(f"need 1 <= p < q, got p={p}, q={q}")
    g = math.gcd(p, q)
    pr, qr = p // g, q // g
    occ = [0] * qr
    for i in range(pr):
        occ[(i * qr) // pr] = 1
    pattern = _canonical_rotation(tuple(occ)) * g
    return LatticeConfig(occupation=pattern, density=Fraction(p, q))


def lattice_energy(config: LatticeConfig, alpha: float) -> float:
    """Energy of one period with cyclic distances.

    H = sum_j sum_k V_k n_j n_(j+k) with V_k = alpha^(2k), the offset k
    running over 0..q-1 so that each unordered pair contributes both of its
    directed separations and each particle carries the self term V_0 = 1.
    Minimizing H over fixed-density necklaces is equivalent to minimizing
    the orbit variance.
    """
    if not 0.0 < alpha < 1.0:
        raise ValueError(f"alpha must lie in (0, 1), got {alpha}")
    occ = config.occupation
    q = len(occ)
    a2 = alpha * alpha
    total = 0.0
    for j in range(q):
        if not occ[j]:
            continue
        for k in range(q):
            if occ[(j + k) % q]:
                total += a2**k
    return total


def necklaces(q: int, p: int) -> Iterator[BitSequence]:
    """All necklaces of length q with exactly p ones, in canonical form."""
    if not 0 <= p <= q:
        raise ValueError(f"need 0 <= p <= q, got p={p}, q={q}")
    seen: set[tuple[int, ...]] = set()
    for positions in combinations(range(q), p):
        bits = [0] * q
        for pos in positions:
            bits[pos] = 1
        canon = _canonical_rotation(tuple(bits))
        if canon not in seen:
            seen.add(canon)
            yield BitSequence(canon)


def brute_force_min_variance(p: int, q: int, alpha: float) -> BitSequence:
    """Necklace of length q with p ones minimizing the orbit variance.

    Exhaustive enumeration; ties (which do not occur for the densities
    tabulated here) would be broken by canonical order.  Practical for
    q <= 22.
    """
    if not 1 <= p < q:
        raise ValueError(f"need 1 <= p < q, got p={p}, q={q}")
    if q > 22:
        raise ValueError(f"q={q} too large for exhaustive enumeration")
    best: tuple[float, tuple[int, ...]] | None = None
    for seq in necklaces(q, p):
        var = orbit_variance(seq, alpha)
        key = (var, seq.bits)
        if best is None or key < best:
            best = key
    assert best is not None
    return BitSequence(best[1])
