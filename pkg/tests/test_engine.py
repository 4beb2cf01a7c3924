from fractions import Fraction
import pytest
from conftest import make_random_instance
from core.adversarial import gen_mtf_lb, make_spec, generate
from core.engine import (
    BinRecord, PackingTrace, ViolationKind, audit, cost_of, event_points, leader_intervals, simulate
)
from core.model import Instance, span_of
from core.policies import PolicyKind
from core.utils.formats import render_trace


def test_event_points_group_departures_before_arrivals():
    instance = Instance.from_tuples([(0, 1, ["1/2"]), (1, 2, ["1/2"]), (1, 3, ["1/4"])])
    points = event_points(instance)
    assert [p.time for p in points] == [0, 1, 2, 3]
    assert [i.id for i in points[1].departures] == [1]
    assert [i.id for i in points[1].arrivals] == [2, 3]


def test_two_large_items_need_two_bins():
    instance = Instance.from_tuples([(0, 1, ["6/10"]), (0, 1, ["6/10"])])
    trace = simulate(instance, PolicyKind.FirstFit)
    assert trace.bin_count == 2
    assert cost_of(trace) == 2


def test_departure_frees_room_for_same_time_arrival():
    instance = Instance.from_tuples([(0, 1, ["1/2"]), (0, 3, ["1/2"]), (1, 2, ["1/2"])])
    trace = simulate(instance, PolicyKind.FirstFit)
    assert trace.bin_count == 1
    assert cost_of(trace) == 3


def test_closed_bin_is_never_reopened():
    instance = Instance.from_tuples([(0, 1, ["1/2"]), (1, 2, ["1/2"])])
    trace = simulate(instance, PolicyKind.FirstFit)
    assert trace.bin_count == 2
    assert [(b.opened_at, b.closed_at) for b in trace.bins] == [(0, 1), (1, 2)]
    assert cost_of(trace) == 2


def test_costs_add_over_overlapping_bins():
    instance = Instance.from_tuples([(0, 2, ["3/4"]), (1, 4, ["3/4"])])
    assert cost_of(simulate(instance, PolicyKind.FirstFit)) == 5


def test_move_to_front_on_its_lower_bound_instance():
    trace = simulate(gen_mtf_lb(1, 2), PolicyKind.MoveToFront)
    assert trace.bin_count == 2
    assert cost_of(trace) == 4


def test_first_fit_on_anyfit_lower_bound_instance():
    trace = simulate(generate(make_spec("anyfit", 1, 2, 2)), PolicyKind.FirstFit)
    assert trace.bin_count >= 2
    assert cost_of(trace) >= 6
    assert all(record.opened_at == 0 and record.closed_at == 3 for record in trace.bins)


def test_next_fit_on_its_lower_bound_instance():
    trace = simulate(generate(make_spec("nextfit", 1, 4, 2)), PolicyKind.NextFit)
    assert trace.bin_count == 4
    assert cost_of(trace) == 8


def test_next_fit_records_released_bins():
    instance = Instance.from_tuples([(0, 5, ["1/2"]), (0, 5, ["7/10"]), (1, 2, ["2/5"])])
    trace = simulate(instance, PolicyKind.NextFit)
    assert trace.bin_count == 3
    assert trace.bin(1).released_at == 0
    assert trace.bin(2).released_at == 1
    assert trace.bin(3).released_at is None
    # First Fit would have used the released bin
    assert simulate(instance, PolicyKind.FirstFit).bin_count == 2


@pytest.mark.parametrize("policy", list(PolicyKind))
def test_simulations_are_deterministic_and_clean(rng, policy):
    for _ in range(40):
        instance = make_random_instance(rng, rng.randint(1, 15), rng.randint(1, 3), rng.randint(1, 5))
        trace = simulate(instance, policy, seed=17)
        assert render_trace(trace) == render_trace(simulate(instance, policy, seed=17))
        report = audit(trace)
        assert report.ok, report.render()
        assert sorted(trace.assignment) == sorted(item.id for item in instance.items)
        assert cost_of(trace) >= span_of(instance.items)


def test_move_to_front_leaders_cover_the_span(rng):
    for _ in range(50):
        instance = make_random_instance(rng, rng.randint(1, 12), rng.randint(1, 2), rng.randint(1, 5))
        trace = simulate(instance, PolicyKind.MoveToFront)
        leaders = leader_intervals(trace)
        assert sum((interval.length for _, interval in leaders), Fraction(0)) == span_of(instance.items)
        for (_, first), (_, second) in zip(leaders, leaders[1:]):
            assert first.end <= second.start
        for bin_id, interval in leaders:
            usage = trace.bin(bin_id).usage
            assert usage.start <= interval.start and interval.end <= usage.end


class TestAudit:
    @pytest.fixture
    def pair(self) -> Instance:
        return Instance.from_tuples([(0, 1, ["6/10"]), (0, 1, ["6/10"])])

    def test_capacity_violation(self, pair):
        trace = PackingTrace(
            pair,
            PolicyKind.FirstFit,
            [BinRecord(1, Fraction(0), Fraction(1), [(1, Fraction(0)), (2, Fraction(0))])],
            {1: 1, 2: 1}
        )
        report = audit(trace)
        assert [v.item_id for v in report.of_kind(ViolationKind.Capacity)] == [2]

    def test_any_fit_violation(self):
        instance = Instance.from_tuples([(0, 1, ["1/4"]), (0, 1, ["1/4"])])
        trace = PackingTrace(
            instance,
            PolicyKind.FirstFit,
            [
                BinRecord(1, Fraction(0), Fraction(1), [(1, Fraction(0))]),
                BinRecord(2, Fraction(0), Fraction(1), [(2, Fraction(0))]),
            ],
            {1: 1, 2: 2}
        )
        violations = audit(trace).of_kind(ViolationKind.AnyFit)
        assert len(violations) == 1
        assert violations[0].bin_id == 2

    def test_next_fit_rule_only_checks_current_bin(self):
        instance = Instance.from_tuples([(0, 5, ["1/2"]), (0, 5, ["7/10"]), (1, 2, ["2/5"])])
        trace = simulate(instance, PolicyKind.NextFit)
        assert audit(trace).ok
        trace.policy = PolicyKind.FirstFit
        assert audit(trace).of_kind(ViolationKind.AnyFit)

    def test_structural_violations(self, pair):
        trace = PackingTrace(
            pair,
            PolicyKind.FirstFit,
            [BinRecord(2, Fraction(1), Fraction(3), [(1, Fraction(0))])],
            {1: 2}
        )
        report = audit(trace)
        assert report.of_kind(ViolationKind.Unassigned)
        assert report.of_kind(ViolationKind.BinOrder)
        assert report.of_kind(ViolationKind.OpenTime)
        assert report.of_kind(ViolationKind.CloseTime)
        assert "unassigned" in report.render()

    def test_reopened_bin(self):
        instance = Instance.from_tuples([(0, 1, ["1/2"]), (2, 3, ["1/2"])])
        trace = PackingTrace(
            instance,
            PolicyKind.FirstFit,
            [BinRecord(1, Fraction(0), Fraction(3), [(1, Fraction(0)), (2, Fraction(2))])],
            {1: 1, 2: 1}
        )
        assert audit(trace).of_kind(ViolationKind.Reopened)

    def test_departure_column_must_match_instance(self):
        instance = Instance.from_tuples([(0, 1, ["1/2"])])
        record = BinRecord(1, Fraction(0), Fraction(1), [(1, Fraction(0))])
        assert audit(PackingTrace(instance, PolicyKind.FirstFit, [record], {1: 1}, departures={1: Fraction(1)})).ok
        report = audit(PackingTrace(instance, PolicyKind.FirstFit, [record], {1: 1}, departures={1: Fraction(5)}))
        violations = report.of_kind(ViolationKind.Placement)
        assert [(v.item_id, v.bin_id) for v in violations] == [(1, 1)]
        assert "departure 5" in report.render()
