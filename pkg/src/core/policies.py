"""The Any Fit family: how each policy picks a bin and orders its open-bin list.

Every policy sees the same :class:`OpenBinList` and differs only in

* which fitting bin it selects (:meth:`AnyFitPolicy.choose`),
* where a freshly opened bin enters the list (:meth:`AnyFitPolicy.admit`),
* how the list is reordered after a placement (:meth:`AnyFitPolicy.on_place`).

A new bin is opened only when :meth:`AnyFitPolicy.select` finds no fitting bin
in the list. Next Fit keeps at most one (current) bin in its list.
"""
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Iterator, Optional, Sequence
from core.model import Item, SizeVec, ZERO, component_sum, fits, relative_linf
from core.prng import SplitMix64
from core.utils.utilities import NamedEnum


class PolicyKind(NamedEnum):
    MoveToFront = "mtf"
    FirstFit = "ff"
    NextFit = "nf"
    BestFitMax = "bf-max"
    BestFitSum = "bf-sum"
    WorstFit = "wf"
    LastFit = "lf"
    RandomFit = "rf"


@dataclass(eq=False)
class OpenBin:
    bin_id: int
    opened_at: Fraction
    load: list[Fraction]
    active: int = 0

    @classmethod
    def empty(cls, bin_id: int, opened_at: Fraction, dimension: int) -> 'OpenBin':
        return cls(bin_id, opened_at, [ZERO] * dimension)

    def add(self, size: SizeVec):
        for j, component in enumerate(size):
            self.load[j] += component
        self.active += 1

    def remove(self, size: SizeVec):
        for j, component in enumerate(size):
            self.load[j] -= component
        self.active -= 1

    @property
    def is_empty(self) -> bool:
        return self.active == 0


@dataclass
class OpenBinList:
    bins: list[OpenBin] = field(default_factory=list)

    def __iter__(self) -> Iterator[OpenBin]:
        return iter(self.bins)

    def __len__(self):
        return len(self.bins)

    def __contains__(self, open_bin: OpenBin) -> bool:
        return any(b is open_bin for b in self.bins)

    @property
    def front(self) -> Optional[OpenBin]:
        return self.bins[0] if self.bins else None

    def order(self) -> tuple[int, ...]:
        return tuple(b.bin_id for b in self.bins)

    def push_front(self, open_bin: OpenBin):
        self.bins.insert(0, open_bin)

    def append(self, open_bin: OpenBin):
        self.bins.append(open_bin)

    def move_to_front(self, open_bin: OpenBin):
        self.remove(open_bin)
        self.push_front(open_bin)

    def remove(self, open_bin: OpenBin) -> bool:
        for index, b in enumerate(self.bins):
            if b is open_bin:
                del self.bins[index]
                return True
        return False


class AnyFitPolicy:
    kind: PolicyKind = None

    def __init__(self, capacity: SizeVec, rng: Optional[SplitMix64] = None):
        self.capacity = capacity
        self.rng = rng if rng is not None else SplitMix64()

    def fitting(self, bins: OpenBinList, item: Item) -> list[OpenBin]:
        return [b for b in bins if fits(b.load, item.size, self.capacity)]

    def select(self, bins: OpenBinList, item: Item) -> Optional[OpenBin]:
        """Existing bin for the item, or None when a new bin must be opened."""
        candidates = self.fitting(bins, item)
        if not candidates:
            return None
        return self.choose(candidates)

    def choose(self, candidates: Sequence[OpenBin]) -> OpenBin:
        return candidates[0]

    def release(self, bins: OpenBinList) -> list[OpenBin]:
        """Bins that leave the list (but stay open) because a new bin is about to open."""
        return []

    def admit(self, bins: OpenBinList, open_bin: OpenBin):
        bins.append(open_bin)

    def on_place(self, bins: OpenBinList, open_bin: OpenBin):
        pass

    def on_departure(self, bins: OpenBinList, open_bin: OpenBin):
        bins.remove(open_bin)


class MoveToFront(AnyFitPolicy):
    kind = PolicyKind.MoveToFront

    def admit(self, bins: OpenBinList, open_bin: OpenBin):
        bins.push_front(open_bin)

    def on_place(self, bins: OpenBinList, open_bin: OpenBin):
        if bins.front is not open_bin:
            bins.move_to_front(open_bin)


class FirstFit(AnyFitPolicy):
    kind = PolicyKind.FirstFit


class NextFit(AnyFitPolicy):
    kind = PolicyKind.NextFit

    def release(self, bins: OpenBinList) -> list[OpenBin]:
        released = list(bins)
        bins.bins.clear()
        return released


class BestFitMax(AnyFitPolicy):
    kind = PolicyKind.BestFitMax

    def choose(self, candidates: Sequence[OpenBin]) -> OpenBin:
        return max(candidates, key=lambda b: (relative_linf(b.load, self.capacity), -b.bin_id))


class BestFitSum(AnyFitPolicy):
    kind = PolicyKind.BestFitSum

    def choose(self, candidates: Sequence[OpenBin]) -> OpenBin:
        return max(candidates, key=lambda b: (component_sum(b.load), -b.bin_id))


class WorstFit(AnyFitPolicy):
    kind = PolicyKind.WorstFit

    def choose(self, candidates: Sequence[OpenBin]) -> OpenBin:
        return min(candidates, key=lambda b: (relative_linf(b.load, self.capacity), b.bin_id))


class LastFit(AnyFitPolicy):
    kind = PolicyKind.LastFit

    def choose(self, candidates: Sequence[OpenBin]) -> OpenBin:
        return max(candidates, key=lambda b: (b.opened_at, -b.bin_id))


class RandomFit(AnyFitPolicy):
    kind = PolicyKind.RandomFit

    def choose(self, candidates: Sequence[OpenBin]) -> OpenBin:
        return candidates[self.rng.below(len(candidates))]


POLICIES: dict[PolicyKind, type[AnyFitPolicy]] = {
    policy.kind: policy
    for policy in (MoveToFront, FirstFit, NextFit, BestFitMax, BestFitSum, WorstFit, LastFit, RandomFit)
}


def make_policy(kind: PolicyKind, capacity: SizeVec, rng: Optional[SplitMix64] = None) -> AnyFitPolicy:
    return POLICIES[PolicyKind(kind)](capacity, rng)


def select_bin(
        kind: PolicyKind,
        bins: OpenBinList,
        item: Item,
        rng: Optional[SplitMix64] = None,
        capacity: Optional[SizeVec] = None
) -> Optional[OpenBin]:
    """Bin the policy would place the item in; None means a new bin. The list is not modified."""
    capacity = capacity if capacity is not None else (Fraction(1),) * len(item.size)
    return make_policy(kind, capacity, rng).select(bins, item)


def on_departure(kind: PolicyKind, bins: OpenBinList, open_bin: OpenBin) -> OpenBinList:
    make_policy(kind, (Fraction(1),) * len(open_bin.load)).on_departure(bins, open_bin)
    return bins
