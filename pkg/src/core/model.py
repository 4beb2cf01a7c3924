"""Items, instances and the exact arithmetic they are built on.

All sizes, loads and times are :class:`fractions.Fraction` values so that every
capacity comparison is exact. Vectors are plain tuples of fractions.
"""
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Iterable, Optional, Sequence, Union
from core.errors import ItemTooLargeError, UsageError

Scalar = Fraction
SizeVec = tuple[Fraction, ...]
ScalarLike = Union[int, str, Fraction]

ZERO = Fraction(0)
ONE = Fraction(1)


def parse_scalar(text: ScalarLike) -> Fraction:
    """Parse an integer, an exact decimal ("0.25") or a ratio ("p/q")."""
    if isinstance(text, Fraction):
        return text
    if isinstance(text, bool) or not isinstance(text, (int, str)):
        raise UsageError(f"Cannot read {text!r} as an exact number")
    if isinstance(text, int):
        return Fraction(text)
    try:
        return Fraction(text.strip())
    except (ValueError, ZeroDivisionError):
        raise UsageError(f"Invalid number '{text}': expected an integer, a decimal or p/q") from None


def render_scalar(value: Fraction) -> str:
    return str(Fraction(value))


def ceil_scalar(value: Fraction) -> int:
    # (p + q - 1) div q for p >= 0; floor division keeps it exact for p < 0 too
    return -((-value.numerator) // value.denominator)


def as_vector(values: Iterable[ScalarLike]) -> SizeVec:
    return tuple(parse_scalar(value) for value in values)


def linf_norm(v: Sequence[Fraction]) -> Fraction:
    if not v:
        raise UsageError("The L-infinity norm of an empty vector is undefined")
    return max(v)


def component_sum(v: Sequence[Fraction]) -> Fraction:
    return sum(v, ZERO)


def scale(c: Fraction, v: Sequence[Fraction]) -> SizeVec:
    return tuple(c * component for component in v)


def vec_sum(vs: Iterable[Sequence[Fraction]], dimension: Optional[int] = None) -> SizeVec:
    """Componentwise sum. The result is a load and may exceed the capacity."""
    total: Optional[list[Fraction]] = None
    for v in vs:
        if total is None:
            total = list(v)
            if dimension is not None and len(total) != dimension:
                raise UsageError(f"Vector of length {len(total)} in a sum over dimension {dimension}")
            continue
        if len(v) != len(total):
            raise UsageError(f"Cannot add vectors of lengths {len(total)} and {len(v)}")
        for j, component in enumerate(v):
            total[j] += component
    if total is None:
        if dimension is None:
            raise UsageError("The dimension of an empty sum must be given")
        return (ZERO,) * dimension
    return tuple(total)


def fits(load: Sequence[Fraction], item_size: Sequence[Fraction], capacity: Sequence[Fraction]) -> bool:
    if not len(load) == len(item_size) == len(capacity):
        raise UsageError(
            f"Mismatched vector lengths: load {len(load)}, size {len(item_size)}, capacity {len(capacity)}"
        )
    return all(l + s <= c for l, s, c in zip(load, item_size, capacity))


def relative_linf(load: Sequence[Fraction], capacity: Sequence[Fraction]) -> Fraction:
    """L-infinity norm of a load measured in units of the bin capacity."""
    return max(component / cap for component, cap in zip(load, capacity))


@dataclass(frozen=True)
class Interval:
    start: Fraction
    end: Fraction

    def __post_init__(self):
        if self.start > self.end:
            raise UsageError(f"Interval [{self.start}, {self.end}) ends before it starts")

    @property
    def length(self) -> Fraction:
        return self.end - self.start

    def __contains__(self, t: Fraction) -> bool:
        return self.start <= t < self.end

    def __str__(self):
        return f"[{render_scalar(self.start)}, {render_scalar(self.end)})"


@dataclass(frozen=True)
class Item:
    id: int
    arrival: Fraction
    departure: Fraction
    size: SizeVec

    def __post_init__(self):
        if self.arrival >= self.departure:
            raise UsageError(
                f"Item {self.id} must depart after it arrives (arrival {self.arrival}, departure {self.departure})"
            )
        if any(component < 0 for component in self.size):
            raise UsageError(f"Item {self.id} has a negative size component")

    @property
    def interval(self) -> Interval:
        return Interval(self.arrival, self.departure)

    @property
    def duration(self) -> Fraction:
        return self.departure - self.arrival


@dataclass(frozen=True)
class Instance:
    dimension: int
    items: tuple[Item, ...]
    capacity: Optional[SizeVec] = None
    metadata: dict = field(default_factory=dict, compare=False, hash=False)

    def __post_init__(self):
        if self.dimension < 1:
            raise UsageError(f"Dimension must be positive, got {self.dimension}")
        object.__setattr__(self, 'items', tuple(self.items))
        capacity = self.capacity if self.capacity is not None else (ONE,) * self.dimension
        object.__setattr__(self, 'capacity', tuple(capacity))
        if len(self.capacity) != self.dimension or any(c <= 0 for c in self.capacity):
            raise UsageError(f"Capacity must be {self.dimension} positive numbers, got {self.capacity}")
        seen = set()
        for item in self.items:
            if item.id in seen:
                raise UsageError(f"Duplicate item id {item.id}")
            seen.add(item.id)
            if len(item.size) != self.dimension:
                raise UsageError(f"Item {item.id} has {len(item.size)} size components, expected {self.dimension}")
            for j, (component, cap) in enumerate(zip(item.size, self.capacity)):
                if component > cap:
                    raise ItemTooLargeError(item.id, j + 1, component, cap)

    @classmethod
    def from_tuples(
            cls,
            rows: Iterable[tuple[ScalarLike, ScalarLike, Sequence[ScalarLike]]],
            dimension: Optional[int] = None,
            capacity: Optional[Sequence[ScalarLike]] = None,
            metadata: Optional[dict] = None
    ) -> 'Instance':
        """Build an instance from (arrival, departure, size) rows; ids count from 1."""
        items = [
            Item(index, parse_scalar(arrival), parse_scalar(departure), as_vector(size))
            for index, (arrival, departure, size) in enumerate(rows, start=1)
        ]
        if dimension is None:
            if not items:
                raise UsageError("The dimension of an empty instance must be given")
            dimension = len(items[0].size)
        return cls(
            dimension=dimension,
            items=tuple(items),
            capacity=as_vector(capacity) if capacity is not None else None,
            metadata=dict(metadata or {})
        )

    def __len__(self):
        return len(self.items)

    def item(self, item_id: int) -> Item:
        for item in self.items:
            if item.id == item_id:
                return item
        raise KeyError(item_id)


def mu_of(instance: Instance) -> Fraction:
    """Max duration over min duration, i.e. mu of the instance after normalization."""
    if not instance.items:
        raise UsageError("mu is undefined for an empty instance")
    durations = [item.duration for item in instance.items]
    return max(durations) / min(durations)


def span_of(items: Iterable[Item]) -> Fraction:
    """Measure of the union of the items' half-open active intervals."""
    total = ZERO
    current_start = current_end = None
    for start, end in sorted((item.arrival, item.departure) for item in items):
        if current_end is None or start > current_end:
            if current_end is not None:
                total += current_end - current_start
            current_start, current_end = start, end
        elif end > current_end:
            current_end = end
    if current_end is not None:
        total += current_end - current_start
    return total
