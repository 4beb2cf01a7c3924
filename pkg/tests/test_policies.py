from fractions import Fraction
import pytest
from conftest import make_random_instance
from core.engine import simulate
from core.model import Item, ZERO
from core.policies import OpenBin, OpenBinList, PolicyKind, make_policy, on_departure, select_bin
from core.prng import SplitMix64


def _bin(bin_id: int, *load, opened_at=0) -> OpenBin:
    open_bin = OpenBin(bin_id, Fraction(opened_at), [Fraction(c) for c in load])
    open_bin.active = 1
    return open_bin


def _item(*size) -> Item:
    return Item(99, ZERO, Fraction(1), tuple(Fraction(c) for c in size))


@pytest.fixture
def three_bins() -> OpenBinList:
    # list order 1, 2, 3; loads 1/2, 3/4, 1/4
    return OpenBinList([
        _bin(1, Fraction(1, 2), opened_at=0),
        _bin(2, Fraction(3, 4), opened_at=1),
        _bin(3, Fraction(1, 4), opened_at=2),
    ])


@pytest.mark.parametrize("kind, expected", [
    (PolicyKind.MoveToFront, 1),
    (PolicyKind.FirstFit, 1),
    (PolicyKind.NextFit, 1),
    (PolicyKind.BestFitMax, 2),
    (PolicyKind.BestFitSum, 2),
    (PolicyKind.WorstFit, 3),
    (PolicyKind.LastFit, 3),
])
def test_choice_among_fitting_bins(three_bins, kind, expected):
    chosen = select_bin(kind, three_bins, _item(Fraction(1, 4)))
    assert chosen.bin_id == expected


@pytest.mark.parametrize("kind", list(PolicyKind))
def test_no_fitting_bin_means_new_bin(three_bins, kind):
    assert select_bin(kind, three_bins, _item(Fraction(4, 5)), SplitMix64(1)) is None


@pytest.mark.parametrize("kind", list(PolicyKind))
def test_selection_does_not_modify_list(three_bins, kind):
    before = three_bins.order()
    select_bin(kind, three_bins, _item(Fraction(1, 8)), SplitMix64(3))
    assert three_bins.order() == before


def test_only_fitting_bins_are_candidates(three_bins):
    # only bin 3 fits 3/4
    for kind in PolicyKind:
        assert select_bin(kind, three_bins, _item(Fraction(3, 4)), SplitMix64(5)).bin_id == 3


def test_best_fit_ties_break_to_lowest_id():
    bins = OpenBinList([_bin(2, Fraction(1, 2)), _bin(1, Fraction(1, 2))])
    assert select_bin(PolicyKind.BestFitMax, bins, _item(Fraction(1, 4))).bin_id == 1
    assert select_bin(PolicyKind.WorstFit, bins, _item(Fraction(1, 4))).bin_id == 1


def test_best_fit_max_and_sum_disagree():
    # bin 1 has the larger L-infinity load, bin 2 the larger sum
    bins = OpenBinList([
        _bin(1, Fraction(1, 2), ZERO),
        _bin(2, Fraction(2, 5), Fraction(2, 5)),
    ])
    item = _item(Fraction(1, 10), Fraction(1, 10))
    assert select_bin(PolicyKind.BestFitMax, bins, item).bin_id == 1
    assert select_bin(PolicyKind.BestFitSum, bins, item).bin_id == 2


def test_random_fit_is_seeded(three_bins):
    item = _item(Fraction(1, 8))
    first = [select_bin(PolicyKind.RandomFit, three_bins, item, SplitMix64(11)).bin_id for _ in range(5)]
    again = [select_bin(PolicyKind.RandomFit, three_bins, item, SplitMix64(11)).bin_id for _ in range(5)]
    assert first == again
    policy = make_policy(PolicyKind.RandomFit, (Fraction(1),), SplitMix64(11))
    assert {policy.select(three_bins, item).bin_id for _ in range(200)} == {1, 2, 3}


def test_move_to_front_reorders_on_place_and_admit(three_bins):
    policy = make_policy(PolicyKind.MoveToFront, (Fraction(1),))
    chosen = three_bins.bins[2]
    policy.on_place(three_bins, chosen)
    assert three_bins.order() == (3, 1, 2)
    policy.admit(three_bins, _bin(4, ZERO))
    assert three_bins.order() == (4, 3, 1, 2)


def test_first_fit_appends(three_bins):
    policy = make_policy(PolicyKind.FirstFit, (Fraction(1),))
    policy.admit(three_bins, _bin(4, ZERO))
    policy.on_place(three_bins, three_bins.bins[2])
    assert three_bins.order() == (1, 2, 3, 4)


def test_next_fit_releases_current_bin():
    bins = OpenBinList([_bin(1, Fraction(1, 2))])
    policy = make_policy(PolicyKind.NextFit, (Fraction(1),))
    released = policy.release(bins)
    assert [b.bin_id for b in released] == [1]
    assert len(bins) == 0


@pytest.mark.parametrize("kind", list(PolicyKind))
def test_departure_removes_only_that_bin(three_bins, kind):
    closing = three_bins.bins[1]
    result = on_departure(kind, three_bins, closing)
    assert result.order() == (1, 3)
    assert closing not in result


def test_random_fit_frequencies(three_bins):
    trials = 10_000
    policy = make_policy(PolicyKind.RandomFit, (Fraction(1),), SplitMix64(7))
    item = _item(Fraction(1, 8))
    counts = {1: 0, 2: 0, 3: 0}
    for _ in range(trials):
        counts[policy.select(three_bins, item).bin_id] += 1
    sigma = (trials * (1 / 3) * (2 / 3)) ** 0.5
    assert all(abs(count - trials / 3) <= 3 * sigma for count in counts.values()), counts


def test_next_fit_keeps_one_bin_in_its_list(rng):
    for _ in range(50):
        instance = make_random_instance(rng, rng.randint(1, 20), rng.randint(1, 3), rng.randint(1, 5))
        trace = simulate(instance, PolicyKind.NextFit)
        assert all(len(snapshot.order) <= 1 for snapshot in trace.list_history)


def test_move_to_front_list_is_in_recency_order(rng):
    for _ in range(50):
        instance = make_random_instance(rng, rng.randint(1, 20), rng.randint(1, 2), rng.randint(1, 5))
        trace = simulate(instance, PolicyKind.MoveToFront)
        last_used: dict[int, int] = {}
        for step, snapshot in enumerate(trace.list_history):
            if snapshot.item_id is not None:
                last_used[trace.assignment[snapshot.item_id]] = step
            assert list(snapshot.order) == sorted(snapshot.order, key=lambda bin_id: -last_used[bin_id])
