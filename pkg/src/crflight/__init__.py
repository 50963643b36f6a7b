"""Cosmic-ray strike modeling on a two-hole surface-code lattice:

phonon-front geometry, flee feasibility solving, discrete-time flight
simulation, and failure-probability estimation.
"""

from .model import (CreEvent, Hole, LatticePoint, LogicalQubit, PhononFront,
                    PhysicalParams, compromised_count, hole_consumed,
                    is_destroyed, phonon_radius, string_overwhelmed)
from .solver import (AT_HOLE, HALFWAY, FeasibilityVerdict, StrikeScenario,
                     SweepResult, SweepRow, check_condition1, check_condition2,
                     check_feasibility, min_code_distance, sweep)
from .mapping import Mapping, build_mapping, single_qubit_mapping
from .simulate import (MovePlan, MoveStep, SimOutcome, UnescapableError,
                       detect, displacement_plan, is_safe_position,
                       plan_flight, simulate)
from .reliability import (ReliabilityParams, failure_probability,
                          monte_carlo_failure, p_few_hits, p_hole_hit_frame)

__version__ = "0.1.0"

__all__ = [
    "AT_HOLE", "HALFWAY", "CreEvent", "FeasibilityVerdict", "Hole",
    "LatticePoint", "LogicalQubit", "Mapping", "MovePlan", "MoveStep",
    "PhononFront", "PhysicalParams", "ReliabilityParams", "SimOutcome",
    "StrikeScenario", "SweepResult", "SweepRow", "UnescapableError",
    "build_mapping", "check_condition1", "check_condition2",
    "check_feasibility", "compromised_count", "detect", "displacement_plan",
    "failure_probability", "hole_consumed", "is_destroyed",
    "is_safe_position", "min_code_distance",
    "monte_carlo_failure", "p_few_hits", "p_hole_hit_frame", "phonon_radius",
    "plan_flight", "simulate", "single_qubit_mapping", "string_overwhelmed",
    "sweep",
]
