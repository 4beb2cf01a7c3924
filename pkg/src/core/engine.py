"""Event-driven replay of an instance through an Any Fit policy.

Time advances over the distinct arrival and departure times. At each time
point every departure is processed before any arrival, and simultaneous
arrivals are offered bins in instance order. A bin closes at its last
departure and is dropped from the policy's list before same-time arrivals are
placed; a closed bin id is never reused.
"""
import logging
from collections import defaultdict
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Optional
import settings
from core.model import Instance, Interval, Item, ZERO, fits
from core.policies import OpenBin, OpenBinList, PolicyKind, make_policy
from core.prng import SplitMix64
from core.utils.utilities import NamedEnum


@dataclass(frozen=True)
class EventPoint:
    time: Fraction
    departures: tuple[Item, ...]
    arrivals: tuple[Item, ...]


@dataclass
class BinRecord:
    bin_id: int
    opened_at: Fraction
    closed_at: Optional[Fraction] = None
    placements: list[tuple[int, Fraction]] = field(default_factory=list)
    released_at: Optional[Fraction] = None

    @property
    def usage(self) -> Interval:
        return Interval(self.opened_at, self.closed_at)


@dataclass(frozen=True)
class ListSnapshot:
    """Order of the policy's open-bin list right after an arrival (item_id set) or a closing."""
    time: Fraction
    item_id: Optional[int]
    order: tuple[int, ...]


@dataclass
class PackingTrace:
    instance: Instance
    policy: Optional[PolicyKind]
    bins: list[BinRecord]
    assignment: dict[int, int]
    seed: int = settings.DEFAULT_SEED
    list_history: list[ListSnapshot] = field(default_factory=list)
    # Departure column of a parsed trace, keyed by item id; empty for simulated packings.
    departures: dict[int, Fraction] = field(default_factory=dict)

    @property
    def bin_count(self) -> int:
        return len(self.bins)

    def bin(self, bin_id: int) -> BinRecord:
        return self.bins[bin_id - 1]


def event_points(instance: Instance) -> list[EventPoint]:
    departures: dict[Fraction, list[Item]] = defaultdict(list)
    arrivals: dict[Fraction, list[Item]] = defaultdict(list)
    for item in instance.items:
        arrivals[item.arrival].append(item)
        departures[item.departure].append(item)
    return [
        EventPoint(time, tuple(departures.get(time, ())), tuple(arrivals.get(time, ())))
        for time in sorted(set(arrivals) | set(departures))
    ]


def simulate(instance: Instance, policy: PolicyKind, seed: int = settings.DEFAULT_SEED) -> PackingTrace:
    """Pack every item online with the given policy. The seed only drives Random Fit."""
    policy = PolicyKind(policy)
    strategy = make_policy(policy, instance.capacity, SplitMix64(seed))
    open_list = OpenBinList()
    records: list[BinRecord] = []
    assignment: dict[int, int] = {}
    history: list[ListSnapshot] = []
    holding: dict[int, OpenBin] = {}

    for point in event_points(instance):
        closed_any = False
        for item in point.departures:
            open_bin = holding.pop(item.id)
            open_bin.remove(item.size)
            if open_bin.is_empty:
                records[open_bin.bin_id - 1].closed_at = point.time
                strategy.on_departure(open_list, open_bin)
                closed_any = True
        if closed_any:
            history.append(ListSnapshot(point.time, None, open_list.order()))

        for item in point.arrivals:
            chosen = strategy.select(open_list, item)
            if chosen is None:
                for released in strategy.release(open_list):
                    records[released.bin_id - 1].released_at = point.time
                chosen = OpenBin.empty(len(records) + 1, point.time, instance.dimension)
                records.append(BinRecord(chosen.bin_id, point.time))
                strategy.admit(open_list, chosen)
            chosen.add(item.size)
            strategy.on_place(open_list, chosen)
            holding[item.id] = chosen
            assignment[item.id] = chosen.bin_id
            records[chosen.bin_id - 1].placements.append((item.id, item.arrival))
            history.append(ListSnapshot(point.time, item.id, open_list.order()))

    if settings.DEBUG:
        logging.debug(f"{policy} packed {len(instance)} items into {len(records)} bins")
    return PackingTrace(instance, policy, records, assignment, seed, history)


def cost_of(trace: PackingTrace) -> Fraction:
    """Total usage time: each bin is charged from its opening to its closing."""
    return sum((record.closed_at - record.opened_at for record in trace.bins), ZERO)


def leader_intervals(trace: PackingTrace) -> list[tuple[int, Interval]]:
    """Maximal intervals during which one bin sits at the front of the policy's list."""
    fronts: dict[Fraction, Optional[int]] = {}
    for snapshot in trace.list_history:
        fronts[snapshot.time] = snapshot.order[0] if snapshot.order else None
    times = sorted(fronts)
    leaders: list[tuple[int, Interval]] = []
    for start, end in zip(times, times[1:]):
        leader = fronts[start]
        if leader is None:
            continue
        if leaders and leaders[-1][0] == leader and leaders[-1][1].end == start:
            leaders[-1] = (leader, Interval(leaders[-1][1].start, end))
        else:
            leaders.append((leader, Interval(start, end)))
    return leaders


class ViolationKind(NamedEnum):
    Unassigned = "unassigned"
    UnknownBin = "unknown-bin"
    Placement = "placement"
    BinOrder = "bin-order"
    OpenTime = "open-time"
    CloseTime = "close-time"
    Capacity = "capacity"
    Reopened = "reopened"
    AnyFit = "any-fit"


@dataclass(frozen=True)
class Violation:
    kind: ViolationKind
    message: str
    time: Optional[Fraction] = None
    item_id: Optional[int] = None
    bin_id: Optional[int] = None

    def __str__(self):
        where = []
        if self.time is not None:
            where.append(f"t={self.time}")
        if self.item_id is not None:
            where.append(f"item={self.item_id}")
        if self.bin_id is not None:
            where.append(f"bin={self.bin_id}")
        return f"{self.kind}: {' '.join(where)}: {self.message}" if where else f"{self.kind}: {self.message}"


@dataclass
class AuditReport:
    violations: list[Violation] = field(default_factory=list)

    @property
    def ok(self) -> bool:
        return not self.violations

    def of_kind(self, kind: ViolationKind) -> list[Violation]:
        return [v for v in self.violations if v.kind == kind]

    def add(self, kind: ViolationKind, message: str, **where):
        self.violations.append(Violation(kind, message, **where))

    def render(self) -> str:
        return "\n".join(str(violation) for violation in self.violations)


def audit(trace: PackingTrace) -> AuditReport:
    """Re-derive every trace invariant from scratch; violations are collected, not raised."""
    report = AuditReport()
    instance = trace.instance
    items = {item.id: item for item in instance.items}
    known_bins = {record.bin_id: record for record in trace.bins}

    _audit_structure(trace, items, known_bins, report)
    _audit_replay(trace, known_bins, report)
    return report


def _audit_structure(trace: PackingTrace, items: dict[int, Item], known_bins: dict[int, BinRecord], report: AuditReport):
    for item_id in items:
        if item_id not in trace.assignment:
            report.add(ViolationKind.Unassigned, "item is not assigned to any bin", item_id=item_id)
    for item_id, bin_id in trace.assignment.items():
        if item_id not in items:
            report.add(ViolationKind.Placement, "assigned item is not part of the instance", item_id=item_id)
        if bin_id not in known_bins:
            report.add(ViolationKind.UnknownBin, "item assigned to a bin with no record", item_id=item_id, bin_id=bin_id)

    ids = [record.bin_id for record in trace.bins]
    if ids != list(range(1, len(ids) + 1)):
        report.add(ViolationKind.BinOrder, f"bin ids are not dense from 1: {ids}")
    openings = [record.opened_at for record in trace.bins]
    if openings != sorted(openings):
        report.add(ViolationKind.BinOrder, "bins are not sorted by opening time")

    placed: dict[int, int] = {}
    for record in trace.bins:
        for item_id, arrival in record.placements:
            if item_id in placed:
                report.add(
                    ViolationKind.Placement,
                    f"item already placed in bin {placed[item_id]}",
                    item_id=item_id,
                    bin_id=record.bin_id
                )
                continue
            placed[item_id] = record.bin_id
            if trace.assignment.get(item_id) != record.bin_id:
                report.add(ViolationKind.Placement, "placement disagrees with the assignment", item_id=item_id, bin_id=record.bin_id)
            item = items.get(item_id)
            if item is not None and item.arrival != arrival:
                report.add(
                    ViolationKind.Placement,
                    f"placement time {arrival} differs from arrival {item.arrival}",
                    item_id=item_id,
                    bin_id=record.bin_id
                )
            departure = trace.departures.get(item_id)
            if item is not None and departure is not None and item.departure != departure:
                report.add(
                    ViolationKind.Placement,
                    f"trace departure {departure} differs from departure {item.departure}",
                    item_id=item_id,
                    bin_id=record.bin_id
                )
        members = [items[item_id] for item_id, _ in record.placements if item_id in items]
        if not members:
            report.add(ViolationKind.Placement, "bin holds no items", bin_id=record.bin_id)
            continue
        first_arrival = min(item.arrival for item in members)
        last_departure = max(item.departure for item in members)
        if record.opened_at != first_arrival:
            report.add(
                ViolationKind.OpenTime,
                f"opened at {record.opened_at}, first placement at {first_arrival}",
                bin_id=record.bin_id
            )
        if record.closed_at != last_departure:
            report.add(
                ViolationKind.CloseTime,
                f"closed at {record.closed_at}, last departure at {last_departure}",
                bin_id=record.bin_id
            )


def _audit_replay(trace: PackingTrace, known_bins: dict[int, BinRecord], report: AuditReport):
    instance = trace.instance
    capacity = instance.capacity
    loads: dict[int, list[Fraction]] = {}
    active: dict[int, int] = {}
    open_order: list[int] = []
    last_opened: Optional[int] = None

    for point in event_points(instance):
        for item in point.departures:
            bin_id = trace.assignment.get(item.id)
            if bin_id not in loads:
                continue
            for j, component in enumerate(item.size):
                loads[bin_id][j] -= component
            active[bin_id] -= 1
            if active[bin_id] == 0:
                open_order.remove(bin_id)

        for item in point.arrivals:
            bin_id = trace.assignment.get(item.id)
            if bin_id is None or bin_id not in known_bins:
                continue
            if bin_id in active and active[bin_id] == 0:
                report.add(ViolationKind.Reopened, "bin receives an item after it closed", time=point.time, item_id=item.id, bin_id=bin_id)
                open_order.append(bin_id)
            elif bin_id not in active:
                if trace.policy == PolicyKind.NextFit:
                    # only the current bin is ever offered items
                    candidates = [last_opened] if last_opened in open_order else []
                else:
                    candidates = list(open_order)
                _check_any_fit(trace.instance, item, bin_id, candidates, loads, point.time, report)
                loads[bin_id] = [ZERO] * instance.dimension
                active[bin_id] = 0
                open_order.append(bin_id)
                last_opened = bin_id
            for j, component in enumerate(item.size):
                loads[bin_id][j] += component
            active[bin_id] += 1
            for j, (load, cap) in enumerate(zip(loads[bin_id], capacity)):
                if load > cap:
                    report.add(
                        ViolationKind.Capacity,
                        f"load {load} exceeds capacity {cap} in dimension {j + 1}",
                        time=point.time,
                        item_id=item.id,
                        bin_id=bin_id
                    )


def _check_any_fit(
        instance: Instance,
        item: Item,
        bin_id: int,
        candidates: list[int],
        loads: dict[int, list[Fraction]],
        time: Fraction,
        report: AuditReport
):
    for candidate in candidates:
        if fits(loads[candidate], item.size, instance.capacity):
            report.add(
                ViolationKind.AnyFit,
                f"opened bin {bin_id} although open bin {candidate} fits the item",
                time=time,
                item_id=item.id,
                bin_id=bin_id
            )
            return
