"""Discrete-time flee simulation: detection, move planning, execution.

Movement semantics: a hole travels any lattice distance along an open
channel in a fixed time of d cycles. A vertical move of a horizontal
qubit shifts both holes simultaneously (one batch, d cycles); a
horizontal move shifts them sequentially because one hole blocks the
other (two batches, 2d cycles total).

During simulation a qubit is evaluated at the target of the last move
batch that has started. Survival is judged by string consumption: a
qubit is lost once every one of its d - 1 string data qubits lies
strictly inside a phonon disc. The stricter predicate that also counts
a fully swallowed hole is available as ``predicate="strict"``.
"""

from __future__ import annotations

import csv
import io
import math
from dataclasses import dataclass
from typing import Dict, List, Optional, Sequence, Tuple

from .mapping import Mapping
from .model import (HORIZONTAL, CreEvent, LogicalQubit, PhononFront,
                    PhysicalParams, phonon_radius)

STRING_PREDICATE = "string"
STRICT_PREDICATE = "strict"


class UnescapableError(Exception):
    """No safe escape target exists within the mapping bounds."""

    def __init__(self, qubit_id: int):
        super().__init__(f"qubit {qubit_id} has no safe escape target in bounds")
        self.qubit_id = qubit_id


@dataclass(frozen=True)
class MoveStep:
    qubit_id: int
    hole_index: int
    axis: str                  # "x" | "y"
    target: Tuple[int, int]    # hole center after the step, lattice units
    start_cycle: float
    duration_cycles: int


@dataclass(frozen=True)
class MovePlan:
    steps: Tuple[MoveStep, ...] = ()

    def steps_for(self, qubit_id: int) -> Tuple[MoveStep, ...]:
        return tuple(s for s in self.steps if s.qubit_id == qubit_id)

    def batch_count(self, qubit_id: int) -> int:
        """Sequential move batches; simultaneous hole moves count once."""
        return len({s.start_cycle for s in self.steps_for(qubit_id)})

    def qubit_ids(self) -> Tuple[int, ...]:
        return tuple(sorted({s.qubit_id for s in self.steps}))


@dataclass(frozen=True)
class SimOutcome:
    survived: Dict[int, bool]
    destroyed_at: Dict[int, float]
    timeline: Tuple[Tuple[float, str, Optional[int], str], ...]

    def event_log_csv(self) -> str:
        buf = io.StringIO()
        w = csv.writer(buf, lineterminator="\n")
        w.writerow(["cycle", "event_kind", "qubit_id", "detail"])
        for cycle, kind, qid, detail in self.timeline:
            w.writerow([f"{cycle:g}", kind, "" if qid is None else qid, detail])
        return buf.getvalue()


def detect(event: CreEvent, p: PhysicalParams) -> float:
    """Cycle at which the strike is unambiguously detected."""
    return event.t0_cycles + p.delta_cycles


def _events_list(event) -> Tuple[CreEvent, ...]:
    if isinstance(event, CreEvent):
        return (event,)
    return tuple(event)


def _min_event_distance(point_mm: Tuple[float, float],
                        events: Sequence[CreEvent]) -> float:
    px, py = point_mm
    return min(math.hypot(px - e.x_mm, py - e.y_mm) for e in events)


def _string_escape_metric(q: LogicalQubit, events: Sequence[CreEvent],
                          l_mm: float) -> float:
    """Largest epicenter clearance over the string; the string can only be

    fully consumed once the front radius exceeds this value.
    """
    return max(_min_event_distance(pt.physical(l_mm), events)
               for pt in q.string_points())


def _hole_swallow_metric(q: LogicalQubit, events: Sequence[CreEvent],
                         l_mm: float) -> float:
    """Radius at which some hole footprint is fully inside some disc."""
    out = math.inf
    for hole in q.holes:
        for e in events:
            out = min(out, hole.farthest_corner_distance_mm(e.epicenter_mm, l_mm))
    return out


def is_safe_position(q: LogicalQubit, events: Sequence[CreEvent],
                     p: PhysicalParams) -> bool:
    """True iff the string cannot be fully consumed even at radius r_max."""
    return _string_escape_metric(q, events, p.l_mm) >= p.r_max_mm


def _blocked_vertical(cx: int, y_from: int, y_to: int, obstacles, d: int) -> bool:
    lo, hi = min(y_from, y_to), max(y_from, y_to)
    s = d / 4.0
    for (hx, hy) in obstacles:
        if abs(hx - cx) < s and lo - s < hy < hi + s:
            return True
    return False


def _blocked_horizontal(cy: int, x_from: int, x_to: int, obstacles, d: int) -> bool:
    lo, hi = min(x_from, x_to), max(x_from, x_to)
    s = d / 4.0
    for (hx, hy) in obstacles:
        if abs(hy - cy) < s and lo - s < hx < hi + s:
            return True
    return False


def _collides(holes_a, holes_b, d: int) -> bool:
    s = d / 4.0
    for (ax, ay) in holes_a:
        for (bx, by) in holes_b:
            if abs(ax - bx) < s and abs(ay - by) < s:
                return True
    return False


def plan_flight(m: Mapping, event, p: PhysicalParams) -> MovePlan:
    """Plan escapes for every qubit whose string could be fully consumed.

    Qubits nearest an epicenter get first pick of targets. Each plan is
    a vertical batch into an adjacent channel, optionally followed by a
    horizontal run along it: at most three sequential batches. Raises
    UnescapableError when a threatened qubit has no safe in-bounds target.
    """
    events = _events_list(event)
    d = p.d
    t_move = detect(events[0], p) + 1.0

    threatened = [(qid, q) for qid, q in enumerate(m.qubits)
                  if not is_safe_position(q, events, p)]
    threatened.sort(key=lambda item: (
        min(_min_event_distance(pt.physical(p.l_mm), events)
            for pt in item[1].all_points()),
        item[0]))

    # Current hole centers; updated with chosen targets as planning proceeds.
    occupancy: Dict[int, Tuple[Tuple[int, int], Tuple[int, int]]] = {
        qid: tuple((h.center.x, h.center.y) for h in q.holes)
        for qid, q in enumerate(m.qubits)
    }

    steps: List[MoveStep] = []
    for qid, q in threatened:
        x, y = q.holes[0].center.x, q.holes[0].center.y
        candidates = []
        for y2 in (y - d, y + d):
            if not (0 <= y2 <= m.height_units):
                continue
            for x2 in range(0, m.width_units - d + 1):
                dist = math.hypot(x2 - x, y2 - y)
                candidates.append((dist, y2, x2))
        candidates.sort()

        obstacles = [h for other, hs in occupancy.items() if other != qid
                     for h in hs]
        chosen = None
        fallback = None
        for _, y2, x2 in candidates:
            moved = q.translated(x2 - x, y2 - y)
            if not is_safe_position(moved, events, p):
                continue
            target_holes = ((x2, y2), (x2 + d, y2))
            if _collides(target_holes, obstacles, d):
                continue
            mid_holes = ((x, y2), (x + d, y2))
            if (_blocked_vertical(x, y, y2, obstacles, d)
                    or _blocked_vertical(x + d, y, y2, obstacles, d)):
                continue
            if x2 != x:
                if _collides(mid_holes, obstacles, d):
                    continue
                if (_blocked_horizontal(y2, x, x2, obstacles, d)
                        or _blocked_horizontal(y2, x + d, x2 + d, obstacles, d)):
                    continue
            if fallback is None:
                fallback = (x2, y2)
            # Prefer targets the qubit reaches before the front overruns its
            # stopover in the channel; fall back to the nearest safe target.
            if x2 != x:
                mid = q.translated(0, y2 - y)
                mid_thr = _string_escape_metric(mid, events, p.l_mm)
                radius_at_leave = min(p.mm_per_cycle * (t_move + d), p.r_max_mm)
                if mid_thr < radius_at_leave:
                    continue
            chosen = (x2, y2)
            break
        if chosen is None:
            chosen = fallback
        if chosen is None:
            raise UnescapableError(qid)

        x2, y2 = chosen
        steps.append(MoveStep(qid, 0, "y", (x, y2), t_move, d))
        steps.append(MoveStep(qid, 1, "y", (x + d, y2), t_move, d))
        if x2 != x:
            # Leading hole moves first so it never blocks the trailing one.
            order = (1, 0) if x2 > x else (0, 1)
            for k, hole_index in enumerate(order):
                hx = x2 + d if hole_index == 1 else x2
                steps.append(MoveStep(qid, hole_index, "x", (hx, y2),
                                      t_move + d * (k + 1), d))
        occupancy[qid] = ((x2, y2), (x2 + d, y2))

    return MovePlan(tuple(steps))


def displacement_plan(qubit_id: int, q: LogicalQubit, dx_units: int,
                      dy_units: int, start_cycle: float,
                      duration_cycles: int) -> MovePlan:
    """Single-batch plan translating a whole qubit by (dx, dy) lattice units."""
    steps = []
    for idx, hole in enumerate(q.holes):
        target = (hole.center.x + dx_units, hole.center.y + dy_units)
        axis = "x" if dx_units != 0 else "y"
        steps.append(MoveStep(qubit_id, idx, axis, target, start_cycle,
                              duration_cycles))
    return MovePlan(tuple(steps))


def _positions_over_time(q: LogicalQubit, plan_steps: Sequence[MoveStep]):
    """(start_cycle, qubit-at-target) checkpoints, first entry the origin.

    A qubit is anchored at a batch's target from the batch's start cycle;
    a two-batch horizontal run counts as translated from its first batch.
    """
    d = q.code_distance
    cur_x, cur_y = q.holes[0].center.x, q.holes[0].center.y
    out = [(-math.inf, q)]
    batches: Dict[float, List[MoveStep]] = {}
    for s in plan_steps:
        batches.setdefault(s.start_cycle, []).append(s)
    off = (d, 0) if q.orientation == HORIZONTAL else (0, d)
    for start in sorted(batches):
        step = batches[start][0]
        tx, ty = step.target
        if step.hole_index == 1:
            tx, ty = tx - off[0], ty - off[1]
        if step.axis == "y":
            new_x, new_y = cur_x, ty
        else:
            new_x, new_y = tx, cur_y
        if (new_x, new_y) != (cur_x, cur_y):
            cur_x, cur_y = new_x, new_y
            out.append((start, q.translated(cur_x - q.holes[0].center.x,
                                            cur_y - q.holes[0].center.y)))
    return out


def simulate(m: Mapping, event, p: PhysicalParams, plan: MovePlan,
             predicate: str = STRING_PREDICATE) -> SimOutcome:
    """Advance cycle by cycle and record per-qubit survival."""
    if predicate not in (STRING_PREDICATE, STRICT_PREDICATE):
        raise ValueError(f"unknown predicate {predicate!r}")
    events = _events_list(event)
    if len({e.t0_cycles for e in events}) != 1:
        raise ValueError("multiple strikes must be concurrent (equal t0)")
    t0 = events[0].t0_cycles
    fronts = [PhononFront(e, p) for e in events]
    timeline: List[Tuple[float, str, Optional[int], str]] = []
    timeline.append((t0, "strike", None,
                     ";".join(f"({e.x_mm:g},{e.y_mm:g})" for e in events)))
    t_detect = detect(events[0], p)
    timeline.append((t_detect, "detected", None, f"delta={p.delta_cycles:g}"))

    for s in plan.steps:
        timeline.append((s.start_cycle, "move_start", s.qubit_id,
                         f"hole{s.hole_index}->{s.target[0]},{s.target[1]}"))
        timeline.append((s.start_cycle + s.duration_cycles, "move_complete",
                         s.qubit_id, f"hole{s.hole_index}"))

    # Pre-compute, per qubit and position interval, the radius threshold at
    # which the destruction predicate fires; per-cycle checks are then O(1).
    # Thresholds are against the union of discs evaluated at a common
    # radius, which is exact for concurrent strikes.
    thresholds = {}
    for qid, q in enumerate(m.qubits):
        spans = _positions_over_time(q, plan.steps_for(qid))
        entries = []
        for k, (start, moved) in enumerate(spans):
            end = spans[k + 1][0] if k + 1 < len(spans) else math.inf
            string_thr = _string_escape_metric(moved, events, p.l_mm)
            hole_thr = (_hole_swallow_metric(moved, events, p.l_mm)
                        if predicate == STRICT_PREDICATE else math.inf)
            entries.append((start, end, min(string_thr, hole_thr)))
        thresholds[qid] = entries

    td = fronts[0].t_dissipate_cycles
    destroyed_at: Dict[int, float] = {}
    if math.isfinite(td) and td >= 0:
        check_times = [float(c) for c in range(0, math.floor(td) + 1)]
        if td != math.floor(td):
            check_times.append(td)
        for t in check_times:
            radius = max(phonon_radius(f, t0 + t) for f in fronts)
            for qid, entries in thresholds.items():
                if qid in destroyed_at:
                    continue
                for start, end, thr in entries:
                    if start <= t0 + t < end:
                        if radius > thr:
                            destroyed_at[qid] = t0 + t
                            timeline.append((t0 + t, "destroyed", qid,
                                             f"radius={radius:g}mm"))
                        break
        timeline.append((t0 + td, "dissipated", None, f"r_max={p.r_max_mm:g}mm"))

    survived = {qid: qid not in destroyed_at for qid in range(len(m.qubits))}
    for qid, ok in survived.items():
        if ok:
            timeline.append((t0 + (td if math.isfinite(td) else 0.0),
                             "survived", qid, ""))
    timeline.sort(key=lambda rec: (rec[0], rec[1], -1 if rec[2] is None else rec[2]))
    return SimOutcome(survived, destroyed_at, tuple(timeline))
