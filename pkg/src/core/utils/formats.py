"""Text formats for instances and packing traces.

Instance CSV::

    # capacity=1,1          (optional, defaults to all ones)
    # family=anyfit         (optional metadata, any key=value)
    id,arrival,departure,s1,s2
    1,0,1,1/2,1/4

Trace text, one line per bin followed by its placements::

    policy,mtf,0            (optional; lets the audit apply the Next Fit rule)
    bin,1,0,2
    1,1,0,2
"""
import logging
from fractions import Fraction
from pathlib import Path
from typing import Optional, Union
from core.engine import BinRecord, PackingTrace
from core.errors import OutputError, ParseError, UsageError
from core.model import Instance, Item, as_vector, render_scalar
from core.policies import PolicyKind

PathLike = Union[str, Path]


def read_text(path: PathLike) -> str:
    try:
        with open(path) as stream:
            return stream.read()
    except FileNotFoundError:
        raise UsageError(f"The file '{path}' could not be found. Does it exist?") from None
    except OSError:
        raise UsageError(f"The file '{path}' could not be read. Do you have read permissions?") from None


def write_text(path: PathLike, text: str):
    try:
        Path(path).parent.mkdir(parents=True, exist_ok=True)
        with open(path, 'w', newline='') as stream:
            stream.write(text)
    except OSError as e:
        raise OutputError(f"Failed to write ({e.strerror})", str(path)) from None
    logging.info(f"Wrote {path}")


def render_instance(instance: Instance) -> str:
    lines = []
    if any(c != 1 for c in instance.capacity):
        lines.append(f"# capacity={','.join(render_scalar(c) for c in instance.capacity)}")
    for key, value in instance.metadata.items():
        lines.append(f"# {key}={value}")
    lines.append(",".join(["id", "arrival", "departure", *(f"s{j}" for j in range(1, instance.dimension + 1))]))
    for item in instance.items:
        lines.append(",".join([
            str(item.id),
            render_scalar(item.arrival),
            render_scalar(item.departure),
            *(render_scalar(component) for component in item.size)
        ]))
    return "\n".join(lines) + "\n"


def parse_instance(text: str, path: Optional[str] = None) -> Instance:
    capacity = None
    metadata = {}
    header: Optional[list[str]] = None
    items: list[Item] = []
    for number, raw in enumerate(text.splitlines(), start=1):
        line = raw.strip()
        if not line:
            continue
        if line.startswith('#'):
            key, sep, value = line[1:].strip().partition('=')
            if not sep:
                continue
            if key.strip() == 'capacity':
                capacity = _parse_fields(value.split(','), number, path)
            else:
                metadata[key.strip()] = value.strip()
            continue
        fields = [f.strip() for f in line.split(',')]
        if header is None:
            if fields[:3] != ["id", "arrival", "departure"] or len(fields) < 4:
                raise ParseError(f"expected header 'id,arrival,departure,s1,...', got '{line}'", number, path)
            header = fields
            continue
        if len(fields) != len(header):
            raise ParseError(f"expected {len(header)} fields, got {len(fields)}", number, path)
        try:
            item_id = int(fields[0])
        except ValueError:
            raise ParseError(f"item id '{fields[0]}' is not an integer", number, path) from None
        arrival, departure, *size = _parse_fields(fields[1:], number, path)
        try:
            items.append(Item(item_id, arrival, departure, tuple(size)))
        except UsageError as e:
            raise ParseError(str(e), number, path) from None
    if header is None:
        raise ParseError("empty instance: no header line", None, path)
    if not items:
        raise ParseError("empty instance: no items", None, path)
    return Instance(len(header) - 3, tuple(items), capacity, metadata)


def _parse_fields(fields: list[str], line: int, path: Optional[str]) -> tuple:
    try:
        return as_vector(fields)
    except UsageError as e:
        raise ParseError(str(e), line, path) from None


def read_instance(path: PathLike) -> Instance:
    return parse_instance(read_text(path), str(path))


def write_instance(instance: Instance, path: PathLike):
    write_text(path, render_instance(instance))


def render_trace(trace: PackingTrace) -> str:
    lines = []
    if trace.policy is not None:
        lines.append(f"policy,{trace.policy},{trace.seed}")
    items = {item.id: item for item in trace.instance.items}
    for record in trace.bins:
        lines.append(f"bin,{record.bin_id},{render_scalar(record.opened_at)},{render_scalar(record.closed_at)}")
        for item_id, arrival in record.placements:
            departure = items[item_id].departure
            lines.append(f"{item_id},{record.bin_id},{render_scalar(arrival)},{render_scalar(departure)}")
    return "\n".join(lines) + "\n"


def parse_trace(text: str, instance: Instance, path: Optional[str] = None) -> PackingTrace:
    policy = None
    seed = 0
    bins: dict[int, BinRecord] = {}
    assignment: dict[int, int] = {}
    departures: dict[int, Fraction] = {}
    pending: list[tuple[int, int, object, int]] = []
    for number, raw in enumerate(text.splitlines(), start=1):
        line = raw.strip()
        if not line or line.startswith('#'):
            continue
        fields = [f.strip() for f in line.split(',')]
        if fields[0] == 'policy':
            if len(fields) not in (2, 3) or fields[1] not in PolicyKind:
                raise ParseError(f"expected 'policy,<name>[,<seed>]', got '{line}'", number, path)
            policy = PolicyKind(fields[1])
            seed = _parse_int(fields[2], number, path) if len(fields) == 3 else 0
            continue
        if len(fields) != 4:
            raise ParseError(f"expected 4 fields, got {len(fields)}", number, path)
        if fields[0] == 'bin':
            bin_id = _parse_int(fields[1], number, path)
            opened_at, closed_at = _parse_fields(fields[2:], number, path)
            if bin_id in bins:
                raise ParseError(f"bin {bin_id} is listed twice", number, path)
            bins[bin_id] = BinRecord(bin_id, opened_at, closed_at)
            continue
        item_id = _parse_int(fields[0], number, path)
        bin_id = _parse_int(fields[1], number, path)
        arrival, departures[item_id] = _parse_fields(fields[2:], number, path)
        if item_id in assignment:
            raise ParseError(f"item {item_id} is placed twice", number, path)
        assignment[item_id] = bin_id
        pending.append((item_id, bin_id, arrival, number))
    for item_id, bin_id, arrival, number in pending:
        if bin_id in bins:
            bins[bin_id].placements.append((item_id, arrival))
    records = sorted(bins.values(), key=lambda record: record.bin_id)
    return PackingTrace(instance, policy, records, assignment, seed, departures=departures)


def _parse_int(text: str, line: int, path: Optional[str]) -> int:
    try:
        return int(text)
    except ValueError:
        raise ParseError(f"'{text}' is not an integer", line, path) from None


def read_trace(path: PathLike, instance: Instance) -> PackingTrace:
    return parse_trace(read_text(path), instance, str(path))


def write_trace(trace: PackingTrace, path: PathLike):
    write_text(path, render_trace(trace))
