import pytest
from core.prng import MASK64, SplitMix64


def test_reference_sequence_seed_zero():
    rng = SplitMix64(0)
    assert [rng.next() for _ in range(3)] == [0xE220A8397B1DCDAF, 0x6E789E6AA1B965F4, 0x06C45D188009454F]


def test_reference_sequence():
    rng = SplitMix64(1234567)
    assert [rng.next() for _ in range(5)] == [
        6457827717110365317,
        3203168211198807973,
        9817491932198370423,
        4593380528125082431,
        16408922859458223821,
    ]


def test_seed_is_truncated_to_64_bits():
    assert SplitMix64(MASK64 + 2).next() == SplitMix64(1).next()


def test_bounded_draws_stay_in_range():
    rng = SplitMix64(7)
    draws = [rng.randint(3, 9) for _ in range(2000)]
    assert min(draws) == 3
    assert max(draws) == 9


def test_degenerate_range():
    rng = SplitMix64(1)
    assert {rng.randint(4, 4) for _ in range(10)} == {4}


def test_below_is_roughly_uniform():
    rng = SplitMix64(99)
    counts = [0] * 6
    for _ in range(6000):
        counts[rng.below(6)] += 1
    assert all(800 < count < 1200 for count in counts)


@pytest.mark.parametrize("low, high", [(5, 4)])
def test_empty_range(low, high):
    with pytest.raises(ValueError):
        SplitMix64().randint(low, high)
