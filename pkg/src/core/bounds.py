"""Lower bounds on the optimal usage time and an exact optimum for small instances.

The optimum may repack at any instant, so it equals the integral over time of
the per-instant vector bin packing optimum. The total load is constant between
consecutive event times, which turns the integral into a finite sum over
segments of the load profile.
"""
import logging
import math
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Optional, Sequence
import settings
from core.engine import event_points
from core.errors import OracleLimitError
from core.model import Instance, Interval, SizeVec, ZERO, ceil_scalar, relative_linf, render_scalar, span_of
from core.utils.utilities import ceil_div

BOUNDS_CSV_HEADER = "instance_id,lb_span,lb_util,lb_height,opt_exact"


@dataclass(frozen=True)
class Segment:
    start: Fraction
    end: Fraction
    items: tuple[int, ...]
    load: SizeVec

    @property
    def interval(self) -> Interval:
        return Interval(self.start, self.end)

    @property
    def length(self) -> Fraction:
        return self.end - self.start


@dataclass(frozen=True)
class LoadProfile:
    times: tuple[Fraction, ...]
    segments: tuple[Segment, ...]


@dataclass
class BoundsReport:
    lb_span: Fraction
    lb_util: Fraction
    lb_height: Fraction
    opt_exact: Optional[Fraction] = None
    opt_segments: Optional[list[tuple[Interval, int]]] = field(default=None, repr=False)

    def render_block(self) -> str:
        lines = [
            f"lb_span={render_scalar(self.lb_span)}",
            f"lb_util={render_scalar(self.lb_util)}",
            f"lb_height={render_scalar(self.lb_height)}",
        ]
        if self.opt_exact is not None:
            lines.append(f"opt_exact={render_scalar(self.opt_exact)}")
        return "\n".join(lines)

    def csv_row(self, instance_id: str) -> str:
        opt = render_scalar(self.opt_exact) if self.opt_exact is not None else ""
        return ",".join([
            instance_id,
            render_scalar(self.lb_span),
            render_scalar(self.lb_util),
            render_scalar(self.lb_height),
            opt
        ])


def load_profile(instance: Instance) -> LoadProfile:
    points = event_points(instance)
    active: dict[int, SizeVec] = {}
    load = [ZERO] * instance.dimension
    segments = []
    for point, following in zip(points, points[1:]):
        for item in point.departures:
            del active[item.id]
            for j, component in enumerate(item.size):
                load[j] -= component
        for item in point.arrivals:
            active[item.id] = item.size
            for j, component in enumerate(item.size):
                load[j] += component
        segments.append(Segment(point.time, following.time, tuple(active), tuple(load)))
    return LoadProfile(tuple(point.time for point in points), tuple(segments))


def lb_span(instance: Instance) -> Fraction:
    return span_of(instance.items)


def lb_util(instance: Instance) -> Fraction:
    """Space-time utilization of all items divided by the dimension."""
    total = sum(
        (relative_linf(item.size, instance.capacity) * item.duration for item in instance.items),
        ZERO
    )
    return total / instance.dimension


def lb_height(instance: Instance, profile: Optional[LoadProfile] = None) -> Fraction:
    """Integral over time of the ceiling of the L-infinity load; any active item needs at least one bin."""
    profile = profile or load_profile(instance)
    return sum(
        (segment.length * max(1, ceil_scalar(relative_linf(segment.load, instance.capacity)))
         for segment in profile.segments if segment.items),
        ZERO
    )


def min_bins_exact(
        sizes: Sequence[SizeVec],
        capacity: SizeVec,
        limit: int = settings.DEFAULT_ORACLE_LIMIT
) -> int:
    """Fewest capacity-respecting bins holding all the vectors, by branch and bound."""
    if len(sizes) > limit:
        raise OracleLimitError(len(sizes), limit)
    if not sizes:
        return 0
    vectors, bound = _to_integers(sizes, capacity)
    return _BranchAndBound(vectors, bound).solve()


def _to_integers(sizes: Sequence[SizeVec], capacity: SizeVec) -> tuple[list[tuple[int, ...]], tuple[int, ...]]:
    """Scale every dimension by the lcm of its denominators so all comparisons are on ints."""
    scales = [
        math.lcm(capacity[j].denominator, *(size[j].denominator for size in sizes))
        for j in range(len(capacity))
    ]
    vectors = [tuple(int(size[j] * scales[j]) for j in range(len(scales))) for size in sizes]
    bound = tuple(int(capacity[j] * scales[j]) for j in range(len(scales)))
    return vectors, bound


class _BranchAndBound:
    def __init__(self, vectors: list[tuple[int, ...]], capacity: tuple[int, ...]):
        self.capacity = capacity
        self.dims = range(len(capacity))
        # decreasing relative L-infinity size
        self.items = sorted(
            vectors,
            key=lambda v: max(Fraction(v[j], capacity[j]) for j in self.dims),
            reverse=True
        )
        totals = [sum(v[j] for v in self.items) for j in self.dims]
        self.lower = max(1, max(ceil_div(totals[j], capacity[j]) for j in self.dims))
        self.best = self._first_fit_decreasing()

    def _fits(self, load: list[int], item: tuple[int, ...]) -> bool:
        return all(load[j] + item[j] <= self.capacity[j] for j in self.dims)

    def _first_fit_decreasing(self) -> int:
        loads: list[list[int]] = []
        for item in self.items:
            for load in loads:
                if self._fits(load, item):
                    for j in self.dims:
                        load[j] += item[j]
                    break
            else:
                loads.append(list(item))
        return len(loads)

    def solve(self) -> int:
        if self.best > self.lower:
            self._branch(0, [])
        return self.best

    def _branch(self, index: int, loads: list[list[int]]) -> bool:
        """Depth-first search; returns True once the lower bound is met and search can stop."""
        if index == len(self.items):
            self.best = min(self.best, len(loads))
            return self.best == self.lower
        if max(len(loads), self.lower) >= self.best:
            return False
        item = self.items[index]
        tried = set()
        for load in loads:
            key = tuple(load)
            if key in tried or not self._fits(load, item):
                continue
            tried.add(key)
            for j in self.dims:
                load[j] += item[j]
            done = self._branch(index + 1, loads)
            for j in self.dims:
                load[j] -= item[j]
            if done:
                return True
        if len(loads) + 1 < self.best:
            loads.append(list(item))
            done = self._branch(index + 1, loads)
            loads.pop()
            return done
        return False


def opt_exact(
        instance: Instance,
        limit: int = settings.DEFAULT_ORACLE_LIMIT,
        profile: Optional[LoadProfile] = None
) -> tuple[Fraction, list[tuple[Interval, int]]]:
    """Exact optimum with its per-segment bin counts; refuses if any segment exceeds the limit."""
    profile = profile or load_profile(instance)
    sizes = {item.id: item.size for item in instance.items}
    for segment in profile.segments:
        if len(segment.items) > limit:
            raise OracleLimitError(len(segment.items), limit, (segment.start, segment.end))

    solved: dict[tuple[SizeVec, ...], int] = {}
    total = ZERO
    per_segment = []
    for segment in profile.segments:
        if not segment.items:
            continue
        key = tuple(sorted(sizes[item_id] for item_id in segment.items))
        if key not in solved:
            solved[key] = min_bins_exact(key, instance.capacity, limit)
        per_segment.append((segment.interval, solved[key]))
        total += segment.length * solved[key]
    if settings.DEBUG:
        logging.debug(f"Exact optimum over {len(per_segment)} segments used {len(solved)} distinct packings")
    return total, per_segment


def compute_bounds(
        instance: Instance,
        exact: bool = False,
        limit: int = settings.DEFAULT_ORACLE_LIMIT
) -> BoundsReport:
    profile = load_profile(instance)
    report = BoundsReport(
        lb_span=lb_span(instance),
        lb_util=lb_util(instance),
        lb_height=lb_height(instance, profile)
    )
    if exact:
        report.opt_exact, report.opt_segments = opt_exact(instance, limit, profile)
    return report
