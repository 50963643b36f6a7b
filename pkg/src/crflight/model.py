"""Lattice geometry and phonon-front model.

Coordinates come in two flavors: lattice units (integer grid indices,
spacing ``l_mm`` apart) for holes and data qubits, and millimetres for
strike epicenters and phonon radii. A lattice point (x, y) sits at
physical position (x * l_mm, y * l_mm).
"""

from __future__ import annotations

import math
from dataclasses import dataclass, replace
from typing import Tuple

# A hole's footprint is an axis-aligned square of side d/4 lattice units.
HOLE_SIDE_FRACTION = 0.25

HORIZONTAL = "horizontal"
VERTICAL = "vertical"


@dataclass(frozen=True)
class PhysicalParams:
    """Hardware and model constants shared by the solver and simulator."""

    l_mm: float                      # physical qubit lattice spacing
    d: int                           # code distance (lattice units between holes)
    v_p_mm_per_us: float             # phonon propagation speed
    delta_cycles: float              # detection latency, in lattice cycles
    t_c_us: float                    # lattice cycle time
    r_max_mm: float                  # maximum phonon radius
    move_displacement_mm: float = 1.0  # distance a fleeing qubit travels

    def __post_init__(self) -> None:
        if self.l_mm <= 0:
            raise ValueError(f"l_mm must be > 0, got {self.l_mm}")
        if not isinstance(self.d, int) or self.d < 2:
            raise ValueError(f"d must be an integer >= 2, got {self.d!r}")
        if self.v_p_mm_per_us < 0:
            raise ValueError(f"v_p_mm_per_us must be >= 0, got {self.v_p_mm_per_us}")
        if self.delta_cycles < 0:
            raise ValueError(f"delta_cycles must be >= 0, got {self.delta_cycles}")
        if self.t_c_us <= 0:
            raise ValueError(f"t_c_us must be > 0, got {self.t_c_us}")
        if self.r_max_mm < 0:
            raise ValueError(f"r_max_mm must be >= 0, got {self.r_max_mm}")
        if self.move_displacement_mm < 0:
            raise ValueError(
                f"move_displacement_mm must be >= 0, got {self.move_displacement_mm}"
            )

    @property
    def mm_per_cycle(self) -> float:
        """Phonon front advance per lattice cycle."""
        return self.v_p_mm_per_us * self.t_c_us

    def with_d(self, d: int) -> "PhysicalParams":
        return replace(self, d=d)


@dataclass(frozen=True)
class LatticePoint:
    x: int
    y: int

    def physical(self, l_mm: float) -> Tuple[float, float]:
        return (self.x * l_mm, self.y * l_mm)

    def translated(self, dx: int, dy: int) -> "LatticePoint":
        return LatticePoint(self.x + dx, self.y + dy)


@dataclass(frozen=True)
class Hole:
    """A defect in the code surface. Footprint is a square of side

    2 * half_width lattice units centered on ``center``.
    """

    center: LatticePoint
    half_width: float  # lattice units

    def __post_init__(self) -> None:
        if self.half_width < 0:
            raise ValueError(f"half_width must be >= 0, got {self.half_width}")

    @staticmethod
    def default_half_width(d: int) -> float:
        return d * HOLE_SIDE_FRACTION / 2.0

    def farthest_corner_distance_mm(self, epicenter_mm: Tuple[float, float],
                                    l_mm: float) -> float:
        """Distance from an epicenter to the footprint corner farthest from it."""
        cx, cy = self.center.physical(l_mm)
        hw = self.half_width * l_mm
        ex, ey = epicenter_mm
        dx = max(abs(ex - (cx - hw)), abs(ex - (cx + hw)))
        dy = max(abs(ey - (cy - hw)), abs(ey - (cy + hw)))
        return math.hypot(dx, dy)

    def translated(self, dx: int, dy: int) -> "Hole":
        return Hole(self.center.translated(dx, dy), self.half_width)


@dataclass(frozen=True)
class LogicalQubit:
    """An ordered pair of holes d lattice units apart, plus the operator

    string of d - 1 data qubits running between them.
    """

    holes: Tuple[Hole, Hole]
    orientation: str
    code_distance: int

    def __post_init__(self) -> None:
        if self.orientation not in (HORIZONTAL, VERTICAL):
            raise ValueError(f"bad orientation {self.orientation!r}")
        if self.code_distance < 2:
            raise ValueError(f"code_distance must be >= 2, got {self.code_distance}")
        a, b = self.holes[0].center, self.holes[1].center
        if self.orientation == HORIZONTAL:
            ok = (b.x - a.x == self.code_distance) and (a.y == b.y)
        else:
            ok = (b.y - a.y == self.code_distance) and (a.x == b.x)
        if not ok:
            raise ValueError(
                f"hole centers {a} -> {b} are not {self.code_distance} lattice "
                f"units apart along the {self.orientation} axis"
            )

    @classmethod
    def place(cls, near: LatticePoint, orientation: str, d: int,
              half_width: float | None = None) -> "LogicalQubit":
        """Place a qubit with its first hole at ``near``."""
        hw = Hole.default_half_width(d) if half_width is None else half_width
        if orientation == HORIZONTAL:
            far = near.translated(d, 0)
        else:
            far = near.translated(0, d)
        return cls((Hole(near, hw), Hole(far, hw)), orientation, d)

    def string_points(self) -> Tuple[LatticePoint, ...]:
        """The d - 1 data qubits of the inter-hole operator string."""
        a = self.holes[0].center
        if self.orientation == HORIZONTAL:
            return tuple(LatticePoint(a.x + k, a.y)
                         for k in range(1, self.code_distance))
        return tuple(LatticePoint(a.x, a.y + k)
                     for k in range(1, self.code_distance))

    def all_points(self) -> Tuple[LatticePoint, ...]:
        return (self.holes[0].center,) + self.string_points() + (self.holes[1].center,)

    def translated(self, dx: int, dy: int) -> "LogicalQubit":
        return LogicalQubit(
            (self.holes[0].translated(dx, dy), self.holes[1].translated(dx, dy)),
            self.orientation, self.code_distance)


@dataclass(frozen=True)
class CreEvent:
    """A cosmic-ray strike at a continuous physical position."""

    x_mm: float
    y_mm: float
    t0_cycles: float = 0.0

    @property
    def epicenter_mm(self) -> Tuple[float, float]:
        return (self.x_mm, self.y_mm)


@dataclass(frozen=True)
class PhononFront:
    """The growing disc of compromised area emanating from a strike."""

    event: CreEvent
    params: PhysicalParams

    @property
    def t_dissipate_cycles(self) -> float:
        """Cycles after t0 at which the front reaches r_max and dissipates."""
        per_cycle = self.params.mm_per_cycle
        if per_cycle == 0:
            return math.inf
        return self.params.r_max_mm / per_cycle


def phonon_radius(front: PhononFront, t: float) -> float:
    """Front radius in mm at cycle t. Zero once the front has dissipated."""
    dt = t - front.event.t0_cycles
    if dt < 0:
        raise ValueError(f"t={t} precedes event time {front.event.t0_cycles}")
    if dt > front.t_dissipate_cycles:
        return 0.0
    return min(front.params.mm_per_cycle * dt, front.params.r_max_mm)


def compromised_count(front: PhononFront, q: LogicalQubit, t: float) -> int:
    """Number of string data qubits strictly inside the front's disc at cycle t."""
    r = phonon_radius(front, t)
    if r <= 0:
        return 0
    ex, ey = front.event.epicenter_mm
    l = front.params.l_mm
    n = 0
    for p in q.string_points():
        px, py = p.physical(l)
        if math.hypot(px - ex, py - ey) < r:
            n += 1
    return n


def string_overwhelmed(front: PhononFront, q: LogicalQubit, t: float) -> bool:
    """True iff at least d - 1 string qubits are inside the disc."""
    return compromised_count(front, q, t) >= q.code_distance - 1


def hole_consumed(front: PhononFront, hole: Hole, t: float) -> bool:
    """True iff the hole's entire footprint lies strictly inside the disc."""
    r = phonon_radius(front, t)
    if r <= 0:
        return False
    return hole.farthest_corner_distance_mm(front.event.epicenter_mm,
                                            front.params.l_mm) < r


def is_destroyed(front: PhononFront, q: LogicalQubit, t: float) -> bool:
    """Destruction predicate: the string is overwhelmed or a hole is swallowed."""
    return (string_overwhelmed(front, q, t)
            or hole_consumed(front, q.holes[0], t)
            or hole_consumed(front, q.holes[1], t))
