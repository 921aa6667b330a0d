"""
Numerical cross-check for the closed-form synthesis
Minimizes J = d(U(+f), V)^2 + d(U(-f), V)^2 over pulse angles with a seeded coarse grid
followed by Nelder-Mead restarts. Restarts run in fixed batches and the search stops after
the first batch that reaches the convergence threshold with at least one converged restart
on the cos(phi1 - phi2) = (1 - f^2) / 2 relation, so results do not depend on the number of
worker threads. Every converged restart is kept on the result.
"""
import itertools
import math
from dataclasses import dataclass, field
from typing import Dict, List, Optional, Sequence, Tuple

import numpy as np
from scipy.optimize import minimize

from rotor.errors import DomainError
from rotor.pulse import (
    TWO_PI,
    CompositeSequence,
    Pulse,
    ideal_propagator,
    pulses_propagator,
    sequence_propagator,
)
from rotor.rotation import Rotation, distance_up_to_phase
from utils.parallel import ordered_map

SYMMETRIC = "symmetric"
GENERAL = "general"
MIN_BUDGET = 1000


@dataclass(frozen=True)
class OracleSettings:
    restarts: int = 32
    restart_batch: int = 4
    grid_points_symmetric: int = 6
    grid_points_general: int = 4
    coarse_share: float = 0.25
    convergence_threshold: float = 1e-9
    family_tolerance: float = 1e-6
    xatol: float = 1e-10
    fatol: float = 1e-20


@dataclass(frozen=True)
class OptimizationProblem:
    """
    Target rotation (theta, phi) in radians, tailoring offset and parameterization.
    symmetric params: (theta1, theta2, phi1, phi2) with pulse 3 = pulse 1
    general params:   (theta1, theta2, theta3, phi1, phi2, phi3)
    """
    theta: float
    phi: float
    f_star: float
    parameterization: str = SYMMETRIC
    _target: Rotation = field(init=False, repr=False, compare=False)

    def __post_init__(self):
        if self.parameterization not in (SYMMETRIC, GENERAL):
            raise DomainError(f"unknown parameterization {self.parameterization!r}")
        object.__setattr__(self, "_target", ideal_propagator(self.theta, self.phi))

    @property
    def dimension(self) -> int:
        return 4 if self.parameterization == SYMMETRIC else 6

    @property
    def target_rotation(self) -> Rotation:
        return self._target

    def pulses(self, params: Sequence[float]) -> List[Pulse]:
        # nominal angles enter as |theta|: a pulse cannot run for negative time
        if self.parameterization == SYMMETRIC:
            t1, t2, p1, p2 = params
            outer = Pulse(abs(t1), p1)
            return [outer, Pulse(abs(t2), p2), outer]
        t1, t2, t3, p1, p2, p3 = params
        return [Pulse(abs(t1), p1), Pulse(abs(t2), p2), Pulse(abs(t3), p3)]

    def objective(self, params: Sequence[float]) -> float:
        pulses = self.pulses(params)
        plus = distance_up_to_phase(pulses_propagator(pulses, self.f_star), self._target)
        minus = distance_up_to_phase(pulses_propagator(pulses, -self.f_star), self._target)
        return plus * plus + minus * minus

    def phase_residual(self, params: Sequence[float]) -> float:
        """|cos(phi1 - phi2) - (1 - f^2) / 2| for the first two pulses"""
        first, second = self.pulses(params)[:2]
        return abs(math.cos(first.phi - second.phi) - (1.0 - self.f_star ** 2) / 2.0)

    def canonical(self, params: Sequence[float]) -> Tuple[float, ...]:
        """|theta| for the angle slots and phases wrapped into [0, 2pi)"""
        half = len(params) // 2
        return tuple(
            abs(float(v)) if i < half else Pulse(0.0, float(v)).phi
            for i, v in enumerate(params)
        )


@dataclass(frozen=True)
class Solution:
    """One restart that reached the convergence threshold"""
    params: Tuple[float, ...]
    objective_value: float
    restart_index: int
    phase_residual: float
    pulses: Tuple[Pulse, ...]


@dataclass(frozen=True)
class OptimizationResult:
    params: Tuple[float, ...]
    objective_value: float
    iterations: int
    converged: bool
    restart_index: int
    pulses: Tuple[Pulse, ...]
    solutions: Tuple[Solution, ...] = ()

    def family_member(self) -> Optional[Solution]:
        """
        Converged solution closest to the cos(phi1 - phi2) = (1 - f^2) / 2 family.
        Ties go to the lowest restart index; None when nothing converged.
        """
        if not self.solutions:
            return None
        return min(self.solutions, key=lambda s: (s.phase_residual, s.restart_index))


def coarse_points(dimension: int, points_per_axis: int, cap: int, rng: np.random.Generator) -> np.ndarray:
    """Jittered regular grid over [0, 2pi)^dimension, subsampled to at most cap points"""
    spacing = TWO_PI / points_per_axis
    offset = rng.uniform(0.0, spacing, size=dimension)
    ticks = np.arange(points_per_axis) * spacing
    grid = np.array(list(itertools.product(ticks, repeat=dimension))) + offset
    if len(grid) > cap:
        keep = np.sort(rng.choice(len(grid), size=cap, replace=False))
        grid = grid[keep]
    return grid


def solve(
    problem: OptimizationProblem,
    seed: int = 0,
    budget: int = 40000,
    settings: Optional[OracleSettings] = None,
    threads: int = 1,
) -> OptimizationResult:
    """
    Search for pulse angles that make the sequence an exact rotor at +/- f_star.

    Args:
        problem: target, offset and parameterization
        seed: seeds the coarse grid jitter and subsampling
        budget: objective evaluations to spend, at least 1000; a restart may overrun its
                share by one simplex step
        settings: restart and tolerance configuration
        threads: worker cap for restarts within a batch

    Returns:
        OptimizationResult; converged=False with the best point found when the budget runs out
    """
    settings = settings or OracleSettings()
    if budget < MIN_BUDGET:
        raise DomainError(f"budget must be at least {MIN_BUDGET} evaluations, got {budget}")

    rng = np.random.default_rng(seed)
    per_axis = (settings.grid_points_symmetric if problem.parameterization == SYMMETRIC
                else settings.grid_points_general)
    cap = max(1, int(budget * settings.coarse_share))
    grid = coarse_points(problem.dimension, per_axis, cap, rng)
    coarse_values = np.array([problem.objective(x) for x in grid])
    used = len(grid)

    order = np.argsort(coarse_values, kind="stable")[:settings.restarts]
    starts = [(i, grid[j]) for i, j in enumerate(order)]
    per_restart = max(1, (budget - used) // max(1, len(starts)))

    def run_restart(item):
        index, x0 = item
        res = minimize(
            problem.objective,
            x0,
            method="Nelder-Mead",
            options={"maxfev": per_restart, "xatol": settings.xatol, "fatol": settings.fatol},
        )
        return index, res

    best_index = -1
    best_x = grid[order[0]]
    best_value = float(coarse_values[order[0]])
    solutions: List[Solution] = []
    for lo in range(0, len(starts), settings.restart_batch):
        batch = starts[lo:lo + settings.restart_batch]
        for index, res in ordered_map(run_restart, batch, threads=threads):
            used += int(res.nfev)
            if float(res.fun) < best_value:
                best_index, best_x, best_value = index, res.x, float(res.fun)
            if float(res.fun) < settings.convergence_threshold:
                solutions.append(_solution(problem, res.x, index))
        # other exact families exist; keep going until one restart lands on the phase relation
        if any(s.phase_residual < settings.family_tolerance for s in solutions):
            break

    # spend what is left of the budget refining the winner
    remaining = budget - used
    if best_value < settings.convergence_threshold and remaining > 0:
        res = minimize(
            problem.objective,
            best_x,
            method="Nelder-Mead",
            options={"maxfev": remaining, "xatol": settings.xatol, "fatol": settings.fatol},
        )
        used += int(res.nfev)
        if float(res.fun) <= best_value:
            best_x, best_value = res.x, float(res.fun)

    params = problem.canonical(best_x)
    value = problem.objective(params)
    return OptimizationResult(
        params=params,
        objective_value=value,
        iterations=used,
        converged=value < settings.convergence_threshold,
        restart_index=best_index,
        pulses=tuple(problem.pulses(params)),
        solutions=tuple(solutions),
    )


def _solution(problem: OptimizationProblem, x: Sequence[float], index: int) -> Solution:
    params = problem.canonical(x)
    return Solution(
        params=params,
        objective_value=problem.objective(params),
        restart_index=index,
        phase_residual=problem.phase_residual(params),
        pulses=tuple(problem.pulses(params)),
    )


def compare_with_sequence(result: OptimizationResult, seq: CompositeSequence) -> Dict:
    """
    Propagator-level agreement between an oracle result and a sequence at +/- f_star.
    """
    plus = distance_up_to_phase(
        pulses_propagator(result.pulses, seq.f_star), sequence_propagator(seq, seq.f_star))
    minus = distance_up_to_phase(
        pulses_propagator(result.pulses, -seq.f_star), sequence_propagator(seq, -seq.f_star))
    return {"distance_at_plus_f": plus, "distance_at_minus_f": minus, "max_distance": max(plus, minus)}


if __name__ == "__main__":
    problem = OptimizationProblem(theta=math.pi / 2, phi=0.0, f_star=math.sqrt(3.0))
    result = solve(problem, seed=0)
    print(result.converged, result.objective_value, [round(math.degrees(v), 4) for v in result.params])
