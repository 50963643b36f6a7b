"""Failure-probability model for cosmic-ray strikes, plus a Monte Carlo

estimator that cross-checks it.

The analytic model: a logical qubit is lost if the strike lands inside
one of its two holes (probability ``p_hole_hit``), or if d - 1 or more
strikes arrive while the qubit is still in flight. Strike arrivals are
Poisson with mean lambda * tau, so

    P(failure) = 1 - (1 - p_hole_hit) * P[N <= d - 2]
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Tuple

import numpy as np

from .mapping import Mapping
from .model import CreEvent, PhysicalParams
from .simulate import UnescapableError, plan_flight, simulate

# Reference frame for the hole-hit probability: a region 10 cells wide by
# 5 cells tall, each cell d/4 on a side, holding one two-hole qubit.
FRAME_WIDTH_CELLS = 10
FRAME_HEIGHT_CELLS = 5

ANALYTIC_PREDICATE = "analytic"
SIMULATOR_PREDICATE = "simulator"


@dataclass(frozen=True)
class ReliabilityParams:
    lambda_per_s: float   # chip CRE rate
    tau_s: float          # time to move the logical qubit to safety
    d: int                # code distance
    p_hole_hit: float = 2.0 / (FRAME_WIDTH_CELLS * FRAME_HEIGHT_CELLS)

    def __post_init__(self) -> None:
        if self.lambda_per_s < 0:
            raise ValueError(f"lambda_per_s must be >= 0, got {self.lambda_per_s}")
        if self.tau_s < 0:
            raise ValueError(f"tau_s must be >= 0, got {self.tau_s}")
        if self.d < 2:
            raise ValueError(f"d must be >= 2, got {self.d}")
        if not 0 <= self.p_hole_hit <= 1:
            raise ValueError(f"p_hole_hit must be in [0, 1], got {self.p_hole_hit}")


def p_hole_hit_frame(d: int, width_cells: int = FRAME_WIDTH_CELLS,
                     height_cells: int = FRAME_HEIGHT_CELLS) -> float:
    """Probability a uniform strike lands inside one of the qubit's two

    hole cells. 2/50 for the canonical 10x5-cell frame.
    """
    if d < 2:
        raise ValueError(f"d must be >= 2, got {d}")
    cells = width_cells * height_cells
    if cells < 2:
        raise ValueError(f"frame must have at least 2 cells, got {cells}")
    return 2.0 / cells


def p_few_hits(d: int, lambda_per_s: float, tau_s: float) -> float:
    """P[N <= d - 2] for N ~ Poisson(lambda * tau).

    Computed with the stable term recurrence term_{k+1} = term_k * m/(k+1).
    """
    if d < 2:
        raise ValueError(f"d must be >= 2, got {d}")
    m = lambda_per_s * tau_s
    if m < 0:
        raise ValueError("lambda * tau must be >= 0")
    term = math.exp(-m)
    total = term
    for k in range(1, d - 1):
        term *= m / k
        total += term
    return min(total, 1.0)


def failure_probability(r: ReliabilityParams) -> float:
    """Chance the logical qubit is lost despite fleeing."""
    return 1.0 - (1.0 - r.p_hole_hit) * p_few_hits(r.d, r.lambda_per_s, r.tau_s)


def _trial_rng(seed: int, trial: int) -> np.random.Generator:
    # Stream depends only on (seed, trial), so trials are schedule-independent.
    return np.random.default_rng((seed, trial))


def _frame_geometry_mm(d: int, l_mm: float):
    """Canonical frame and its two hole cells, in mm."""
    cell = d * l_mm / 4.0
    width = FRAME_WIDTH_CELLS * cell
    height = FRAME_HEIGHT_CELLS * cell
    # One horizontal qubit centered in the frame, holes d apart.
    cy = height / 2.0
    cx = width / 2.0
    near = (cx - d * l_mm / 2.0, cy)
    far = (cx + d * l_mm / 2.0, cy)
    return width, height, cell, near, far


def _in_cell(x: float, y: float, center, cell: float) -> bool:
    return (abs(x - center[0]) < cell / 2.0) and (abs(y - center[1]) < cell / 2.0)


def monte_carlo_failure(m: Mapping, p: PhysicalParams, r: ReliabilityParams,
                        n_trials: int, seed: int,
                        predicate: str = ANALYTIC_PREDICATE
                        ) -> Tuple[float, float]:
    """Failure fraction and 95% binomial half-width over seeded trials.

    ``analytic`` mirrors the analytic model's assumptions: a uniform
    epicenter over the reference frame (failure if inside a hole cell)
    plus a Poisson count of strikes during tau (failure at d - 1 or
    more). ``simulator`` instead runs the flee simulator on the supplied
    mapping for each sampled strike.
    """
    if n_trials < 1:
        raise ValueError(f"n_trials must be >= 1, got {n_trials}")
    if predicate not in (ANALYTIC_PREDICATE, SIMULATOR_PREDICATE):
        raise ValueError(f"unknown predicate {predicate!r}")

    mean = r.lambda_per_s * r.tau_s
    failures = 0
    if predicate == ANALYTIC_PREDICATE:
        width, height, cell, near, far = _frame_geometry_mm(r.d, p.l_mm)
        for i in range(n_trials):
            rng = _trial_rng(seed, i)
            x = rng.uniform(0.0, width)
            y = rng.uniform(0.0, height)
            in_hole = _in_cell(x, y, near, cell) or _in_cell(x, y, far, cell)
            n_events = rng.poisson(mean)
            if in_hole or n_events >= r.d - 1:
                failures += 1
    else:
        for i in range(n_trials):
            rng = _trial_rng(seed, i)
            x = rng.uniform(0.0, m.width_mm)
            y = rng.uniform(0.0, m.height_mm)
            n_events = rng.poisson(mean)
            event = CreEvent(x, y, 0.0)
            try:
                plan = plan_flight(m, event, p)
                outcome = simulate(m, event, p, plan)
                lost = not all(outcome.survived.values())
            except UnescapableError:
                lost = True
            if lost or n_events >= r.d - 1:
                failures += 1

    estimate = failures / n_trials
    halfwidth = 1.96 * math.sqrt(max(estimate * (1.0 - estimate), 0.0) / n_trials)
    return estimate, halfwidth
