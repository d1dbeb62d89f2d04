import math

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from dlmsim.polarizer import DlmState, UnitVector2, dlm_step
from dlmsim.stationary import (
    BitSequence,
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

ALPHA = 0.99

bit_sequences = st.lists(st.integers(0, 1), min_size=1, max_size=12).map(
    lambda bits: BitSequence(tuple(bits))
)


class TestCircleMap:
    def test_shrink_step(self):
        assert circle_map_step(0.5, 0, ALPHA) == pytest.approx(0.49005, abs=1e-15)

    def test_grow_step(self):
        assert circle_map_step(0.5, 1, ALPHA) == pytest.approx(0.50995, abs=1e-15)

    def test_upper_fixed_point(self):
        assert circle_map_step(1.0, 1, ALPHA) == pytest.approx(1.0)

    def test_domain_errors(self):
        with pytest.raises(ValueError):
            circle_map_step(1.5, 0, ALPHA)
        with pytest.raises(ValueError):
            circle_map_step(0.5, 2, ALPHA)
        with pytest.raises(ValueError):
            circle_map_step(0.5, 0, 1.0)

    @given(
        x=st.floats(0.0, 1.0),
        bit=st.integers(0, 1),
        alpha=st.floats(0.01, 0.999),
    )
    def test_stays_in_unit_interval(self, x, bit, alpha):
        assert 0.0 <= circle_map_step(x, bit, alpha) <= 1.0


class TestKSequenceFixedPoint:
    def test_zero_run_length(self):
        assert k_sequence_fixed_point(0, ALPHA) == pytest.approx(1.0)

    def test_single_zero(self):
        assert k_sequence_fixed_point(1, ALPHA) == pytest.approx(
            0.5050249987374376, abs=1e-15
        )
        assert k_sequence_fixed_point(1, ALPHA) == pytest.approx(
            1.0 / (1.0 + ALPHA**2), abs=1e-15
        )

    def test_long_run_limit(self):
        assert k_sequence_fixed_point(200, 0.9) == pytest.approx(
            1.0 - 0.81, rel=1e-12
        )

    @pytest.mark.parametrize("k", [0, 1, 3, 10, 57])
    def test_closure(self, k):
        x = k_sequence_fixed_point(k, ALPHA)
        for _ in range(k):
            x = circle_map_step(x, 0, ALPHA)
        x = circle_map_step(x, 1, ALPHA)
        assert x == pytest.approx(k_sequence_fixed_point(k, ALPHA), abs=1e-12)


class TestOrbits:
    def test_alternating_pattern(self):
        for alpha in (0.9, 0.99, 0.999):
            orbit = orbit_fixed_points(BitSequence.from_string("10"), alpha)
            assert orbit.fixed_points[0] == pytest.approx(
                alpha**2 / (1 + alpha**2), abs=1e-14
            )

    def test_one_in_three_pattern(self):
        for alpha in (0.9, 0.99, 0.999):
            orbit = orbit_fixed_points(BitSequence.from_string("100"), alpha)
            assert orbit.fixed_points[0] == pytest.approx(
                alpha**4 / (1 + alpha**2 + alpha**4), abs=1e-14
            )

    def test_two_in_five_pattern(self):
        for alpha in (0.9, 0.99, 0.999):
            orbit = orbit_fixed_points(BitSequence.from_string("10100"), alpha)
            expected = (
                alpha**4 * (1 + alpha**4) * (1 - alpha**2) / (1 - alpha**10)
            )
            assert orbit.fixed_points[0] == pytest.approx(expected, abs=1e-14)

    @given(seq=bit_sequences, alpha=st.floats(0.3, 0.999))
    @settings(max_examples=60)
    def test_mean_equals_density(self, seq, alpha):
        orbit = orbit_fixed_points(seq, alpha)
        assert orbit.mean == pytest.approx(seq.ones / seq.q, abs=1e-12)

    @given(seq=bit_sequences, alpha=st.floats(0.3, 0.999))
    @settings(max_examples=60)
    def test_closure_property(self, seq, alpha):
        orbit = orbit_fixed_points(seq, alpha)
        x = orbit.fixed_points[0]
        for b in seq.bits:
            x = circle_map_step(x, b, alpha)
        assert abs(x - orbit.fixed_points[0]) < 1e-12

    def test_exponential_convergence(self):
        # Starting eps above the orbit, the deviation after p full periods
        # is alpha^(2 p q) * eps.
        eps = 0.1
        for bits in ("10", "100", "1101000100"):
            seq = BitSequence.from_string(bits)
            orbit = orbit_fixed_points(seq, ALPHA)
            x = orbit.fixed_points[0] + eps
            for p in range(1, 21):
                for b in seq.bits:
                    x = circle_map_step(x, b, ALPHA)
                expected = ALPHA ** (2 * p * seq.q) * eps
                assert x - orbit.fixed_points[0] == pytest.approx(
                    expected, rel=1e-9
                )


class TestOrbitVariance:
    def test_alternating_formula(self):
        for alpha in (0.9, 0.99, 0.999):
            var = orbit_variance(BitSequence.from_string("10"), alpha)
            expected = (1 - alpha**2) ** 2 / (4 * (1 + alpha**2) ** 2)
            assert var == pytest.approx(expected, abs=1e-15)

    def test_spread_beats_block(self):
        spread = orbit_variance(BitSequence.from_string("10100"), ALPHA)
        block = orbit_variance(BitSequence.from_string("11000"), ALPHA)
        assert spread < block

    def test_tiled_pattern_matches_reduced(self):
        tiled = orbit_variance(BitSequence.from_string("10001000"), ALPHA)
        reduced = orbit_variance(BitSequence.from_string("1000"), ALPHA)
        assert tiled == pytest.approx(reduced, abs=1e-15)

    @given(seq=bit_sequences, alpha=st.floats(0.3, 0.999))
    @settings(max_examples=60)
    def test_route_agreement_is_enforced(self, seq, alpha):
        # orbit_variance raises if its two routes disagree beyond 1e-12.
        var = orbit_variance(seq, alpha)
        assert var >= -1e-15


class TestThetaMin:
    def test_reference_values(self):
        assert math.degrees(theta_min(0.99)) == pytest.approx(4.05, abs=0.01)
        assert math.degrees(theta_min(0.999)) == pytest.approx(1.28, abs=0.01)

    def test_vanishes_as_alpha_approaches_one(self):
        assert theta_min(1 - 1e-12) < 1e-5


class TestContinuationCriterion:
    def test_reduces_to_trap_threshold_at_zero(self):
        # At z = 0 the criterion boundary is tan^2(theta) = (1-a)/(1+a).
        boundary = math.atan(math.sqrt((1 - ALPHA) / (1 + ALPHA)))
        assert continuation_criterion(0.0, ALPHA, boundary * 1.001)
        assert not continuation_criterion(0.0, ALPHA, boundary * 0.999)

    def test_matches_direct_cost_comparison(self):
        # Oracle: build the state (sqrt(1-z^2), z) and compare the two
        # first-quadrant candidate costs directly.
        for z in (0.0, 0.3, 1 / math.sqrt(2), 0.9):
            for theta_deg in (10, 30, 44, 45, 46, 60, 80):
                theta = math.radians(theta_deg)
                state = DlmState(UnitVector2(math.sqrt(1 - z * z), z), ALPHA)
                _, event = dlm_step(state, UnitVector2.from_angle(theta))
                assert continuation_criterion(z, ALPHA, theta) == (
                    event.theta_bit == 1
                )

    def test_saturated_state_blocks_small_angles(self):
        for theta_deg in (10, 30, 44):
            assert not continuation_criterion(1.0, ALPHA, math.radians(theta_deg))


class TestRepetitionThreshold:
    def test_fifty_seven(self):
        assert repetition_threshold(57) == pytest.approx(0.9967, abs=2e-4)

    def test_eighty(self):
        assert repetition_threshold(80) == pytest.approx(0.9983, abs=2e-4)

    def test_increasing_in_run_length(self):
        ks = [10, 25, 57, 80, 120, 200]
        values = [repetition_threshold(k) for k in ks]
        assert all(a < b for a, b in zip(values, values[1:]))


class TestDeltaSteps:
    def test_symmetric_at_forty_five(self):
        d0, d1 = delta_steps(math.pi / 4, ALPHA)
        assert d0 == pytest.approx(-(1 - ALPHA**2) / 2)
        assert d1 == pytest.approx(-d0)

    def test_ratio_is_cotangent_squared(self):
        for theta in (0.3, 0.7, 1.2):
            d0, d1 = delta_steps(theta, ALPHA)
            assert d1 / abs(d0) == pytest.approx(1 / math.tan(theta) ** 2)

    def test_against_one_step_oracle(self):
        # Apply each rule once from the exact input angle and measure the
        # actual rotation; the formulas hold to the quadratic remainder.
        theta = math.radians(60)
        a2 = ALPHA * ALPHA
        x1, x2 = math.cos(theta), math.sin(theta)
        down = math.atan2(ALPHA * x2, math.sqrt(1 + a2 * (x1 * x1 - 1))) - theta
        up = math.atan2(math.sqrt(1 + a2 * (x2 * x2 - 1)), ALPHA * x1) - theta
        d0, d1 = delta_steps(theta, ALPHA)
        assert abs(down - d0) < 5e-4
        assert abs(up - d1) < 5e-4
        assert d0 < 0 < d1


class TestExtraction:
    def test_half_density(self):
        seq = extract_stationary_sequence(math.asin(math.sqrt(0.5)), ALPHA, seed=2)
        assert str(seq) == "10"

    def test_thirty_degrees_period_four(self):
        seq = extract_stationary_sequence(math.radians(30), ALPHA, seed=2)
        assert str(seq) == "1000"

    def test_matches_lattice_ground_state(self):
        from dlmsim.wigner import wigner_ground_state

        seq = extract_stationary_sequence(math.asin(math.sqrt(3 / 8)), ALPHA, seed=2)
        assert seq is not None
        assert seq.same_necklace(wigner_ground_state(3, 8).sequence())

    def test_non_periodic_budget(self):
        # Density 1/60 needs period 60; with max_period 10 there is no fit.
        theta = math.asin(math.sqrt(1 / 60))
        seq = extract_stationary_sequence(theta, 0.9995, max_period=10, seed=2)
        assert seq is None

    def test_determinism(self):
        theta = math.radians(30)
        a = extract_stationary_sequence(theta, ALPHA, seed=17)
        b = extract_stationary_sequence(theta, ALPHA, seed=17)
        assert str(a) == str(b)


class TestBitSequence:
    def test_canonical_form(self):
        assert str(BitSequence.from_string("0010").canonical()) == "1000"

    def test_necklace_comparison(self):
        a = BitSequence.from_string("10010100")
        b = BitSequence.from_string("10100100")
        assert a.same_necklace(b)
        assert not a.same_necklace(BitSequence.from_string("10011000"))

    def test_rejects_bad_bits(self):
        with pytest.raises(ValueError):
            BitSequence((0, 2))
        with pytest.raises(ValueError):
            BitSequence(())

    @given(seq=bit_sequences)
    def test_canonical_is_rotation_invariant(self, seq):
        bits = seq.bits
        for r in range(len(bits)):
            rotated = BitSequence(bits[r:] + bits[:r])
            assert rotated.canonical().bits == seq.canonical().bits
