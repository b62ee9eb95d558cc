"""Plain-text formats for event streams, mappings and ground truth.

Event lines are ``op,src,dst[,weight[,timestamp]]`` with ``op`` one of
``+`` (add) or ``-`` (remove). A missing weight means 1 and a missing
timestamp means the line's index among event lines. Blank lines and lines
starting with ``#`` are skipped.
"""

from __future__ import annotations

import csv
from pathlib import Path
from typing import Dict, Iterable, List, Mapping, Tuple

from .exceptions import OutOfOrderError, ParseError
from .temporal import Action, EdgeEvent


def _vertex(text: str, lineno: int) -> int:
    try:
        v = int(text)
    except ValueError:
        raise ParseError(lineno, f"vertex id {text!r} is not an integer") from None
    if v < 0:
        raise ParseError(lineno, f"vertex id {v} is negative")
    return v


def parse_line(line: str, lineno: int, index: int) -> EdgeEvent:
    fields = [f.strip() for f in line.split(",")]
    if len(fields) < 3 or len(fields) > 5:
        raise ParseError(lineno, f"expected 3 to 5 fields, got {len(fields)}")
    op = fields[0]
    if op not in ("+", "-"):
        raise ParseError(lineno, f"unknown operation {op!r}")
    u = _vertex(fields[1], lineno)
    v = _vertex(fields[2], lineno)
    weight = 1.0
    if len(fields) > 3 and fields[3]:
        try:
            weight = float(fields[3])
        except ValueError:
            raise ParseError(lineno, f"bad weight {fields[3]!r}") from None
        if not weight > 0:
            raise ParseError(lineno, f"weight must be positive, got {fields[3]!r}")
    t = index
    if len(fields) > 4 and fields[4]:
        try:
            t = int(fields[4])
        except ValueError:
            raise ParseError(lineno, f"bad timestamp {fields[4]!r}") from None
        if t < 0:
            raise ParseError(lineno, "timestamp is negative")
    return EdgeEvent(Action(op), u, v, weight, t)


def parse_stream(path) -> List[EdgeEvent]:
    """Read an event file; raises :class:`ParseError` or :class:`OutOfOrderError`."""
    events: List[EdgeEvent] = []
    with open(path) as fh:
        for lineno, raw in enumerate(fh, start=1):
            line = raw.strip()
            if not line or line.startswith("#"):
                continue
            e = parse_line(line, lineno, len(events))
            if events and e.t < events[-1].t:
                raise OutOfOrderError(f"line {lineno}: timestamp {e.t} after {events[-1].t}")
            events.append(e)
    return events


def format_weight(w: float) -> str:
    return str(int(w)) if float(w).is_integer() else repr(float(w))


def format_event(e: EdgeEvent) -> str:
    if e.action is Action.ADD:
        return f"+,{e.u},{e.v},{format_weight(e.weight)},{e.t}"
    return f"-,{e.u},{e.v},,{e.t}"


def write_stream(path, events: Iterable[EdgeEvent]) -> None:
    with open(path, "w") as fh:
        fh.write("# op,src,dst,weight,timestamp\n")
        for e in events:
            fh.write(format_event(e) + "\n")


def write_mapping(path, mapping: Mapping) -> None:
    with open(path, "w", newline="") as fh:
        w = csv.writer(fh, lineterminator="\n")
        w.writerow(["vertex", "community"])
        for v in sorted(mapping):
            w.writerow([v, mapping[v]])


def read_mapping(path) -> Dict[int, int]:
    with open(path, newline="") as fh:
        rows = csv.DictReader(fh)
        return {int(r["vertex"]): int(r["community"]) for r in rows}


def write_ground_truth(path, stable_points: Iterable[Tuple[int, Mapping]]) -> None:
    with open(path, "w", newline="") as fh:
        w = csv.writer(fh, lineterminator="\n")
        w.writerow(["iteration", "vertex", "community"])
        for it, mapping in stable_points:
            for v in sorted(mapping):
                w.writerow([it, v, mapping[v]])


def read_ground_truth(path) -> List[Tuple[int, Dict[int, int]]]:
    out: Dict[int, Dict[int, int]] = {}
    with open(path, newline="") as fh:
        for r in csv.DictReader(fh):
            out.setdefault(int(r["iteration"]), {})[int(r["vertex"])] = int(r["community"])
    return sorted(out.items())


def ensure_dir(path) -> Path:
    p = Path(path)
    p.mkdir(parents=True, exist_ok=True)
    return p
