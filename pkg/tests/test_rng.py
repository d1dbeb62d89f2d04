import numpy as np

from dlmsim.rng import RandomStream


def test_same_seed_same_stream():
    a = RandomStream(123)
    b = RandomStream(123)
    assert [a.uniform() for _ in range(50)] == [b.uniform() for _ in range(50)]


def test_scalar_and_block_draws_agree():
    a = RandomStream(7)
    b = RandomStream(7)
    assert np.array_equal(np.array([a.uniform() for _ in range(32)]), b.uniforms(32))


def test_tuple_seed_and_spawn():
    child = RandomStream(5).spawn(2, 9)
    direct = RandomStream((5, 2, 9))
    assert child.uniform() == direct.uniform()
    assert RandomStream(5).spawn(2).uniform() != RandomStream(5).spawn(3).uniform()


def test_draws_in_open_unit_interval():
    rng = RandomStream(0)
    draws = rng.uniforms(10_000)
    assert draws.min() >= 0.0 and draws.max() < 1.0


def test_angle_range():
    rng = RandomStream(1)
    angles = [rng.angle() for _ in range(100)]
    assert all(0.0 <= t < 2.0 * np.pi for t in angles)
