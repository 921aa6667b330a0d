"""
Rotor fidelity and off-resonance scans
lambda = |Tr(T^dagger A)| / 2 = |<a, t>|, which ignores overall phase and is 1 only for identical rotors
"""
import math
from dataclasses import dataclass
from typing import Iterator, List, Optional, Sequence, Tuple

import numpy as np

from rotor.errors import DomainError
from rotor.pulse import (
    CompositeSequence,
    Pulse,
    ideal_propagator,
    pulse_propagator,
    sequence_propagator,
)
from rotor.rotation import Rotation, quaternion_overlap
from rotor.synthesis import SynthesisRequest, synthesize
from utils.parallel import ordered_map

ANCHOR_TOLERANCE = 1e-12


def rotor_fidelity(actual: Rotation, target: Rotation) -> float:
    return quaternion_overlap(actual, target)


@dataclass(frozen=True)
class FidelityScan:
    """
    Fidelity of the plain pulse and of the ROTTEN sequence over a grid of offsets.
    """
    f_values: np.ndarray
    lambda_simple: np.ndarray
    lambda_composite: np.ndarray
    target: Tuple[float, float]
    f_star: float
    sequence: CompositeSequence
    anchors_inserted: Tuple[float, ...] = ()

    def index_of(self, f: float) -> Optional[int]:
        """Grid index holding exactly this offset, or None"""
        hits = np.flatnonzero(np.abs(self.f_values - f) <= ANCHOR_TOLERANCE)
        return int(hits[0]) if hits.size else None

    def rows(self) -> Iterator[Tuple[float, float, float]]:
        for f, simple, composite in zip(self.f_values, self.lambda_simple, self.lambda_composite):
            yield float(f), float(simple), float(composite)


def missing_anchors(grid: np.ndarray, anchors: Sequence[float], f_min: float, f_max: float) -> List[float]:
    """Anchors inside [f_min, f_max] that no grid point hits exactly"""
    extra = [a for a in anchors
             if f_min <= a <= f_max and not np.any(np.abs(grid - a) <= ANCHOR_TOLERANCE)]
    return [float(a) for a in np.unique(extra)]


def scan_grid(f_min: float, f_max: float, n_points: int, anchors: Sequence[float] = ()) -> np.ndarray:
    """Uniform grid plus any anchors inside the range that are not already on it"""
    grid = np.linspace(f_min, f_max, n_points)
    extra = missing_anchors(grid, anchors, f_min, f_max)
    if extra:
        grid = np.sort(np.concatenate([grid, extra]))
    return grid


def scan(
    target: Tuple[float, float],
    f_star: float,
    f_range: Tuple[float, float],
    n_points: int,
    threads: int = 1,
    include_anchors: bool = True,
) -> FidelityScan:
    """
    Compare a simple pulse with the ROTTEN sequence tailored once at f_star.

    Args:
        target: (theta, phi) of the ideal rotation, radians
        f_star: tailoring offset
        f_range: (f_min, f_max)
        n_points: uniform grid size, at least 2
        threads: worker cap for evaluating grid points
        include_anchors: also sample -f_star, 0 and +f_star exactly

    Raises:
        DomainError: n_points < 2 or f_min >= f_max
        OffsetOutOfRange: |f_star| > sqrt(3)
    """
    theta, phi = target
    f_min, f_max = f_range
    if n_points < 2:
        raise DomainError(f"a scan needs at least 2 points, got {n_points}")
    if not (math.isfinite(f_min) and math.isfinite(f_max) and f_min < f_max):
        raise DomainError(f"scan range must satisfy f_min < f_max, got [{f_min}, {f_max}]")

    seq = synthesize(SynthesisRequest(theta=theta, phi=phi, f_star=f_star))
    anchors = (-seq.f_star, 0.0, seq.f_star) if include_anchors else ()
    grid = scan_grid(f_min, f_max, n_points, anchors)
    inserted = missing_anchors(np.linspace(f_min, f_max, n_points), anchors, f_min, f_max)

    ideal = ideal_propagator(theta, phi)
    simple = Pulse(theta, phi)

    def evaluate(f: float) -> Tuple[float, float]:
        return (
            rotor_fidelity(pulse_propagator(simple, f), ideal),
            rotor_fidelity(sequence_propagator(seq, f), ideal),
        )

    values = ordered_map(evaluate, [float(f) for f in grid], threads=threads)
    lambdas = np.array(values, dtype=float).reshape(len(grid), 2)
    return FidelityScan(
        f_values=grid,
        lambda_simple=lambdas[:, 0],
        lambda_composite=lambdas[:, 1],
        target=(float(theta), float(phi)),
        f_star=seq.f_star,
        sequence=seq,
        anchors_inserted=tuple(inserted),
    )


if __name__ == "__main__":
    result = scan((math.pi / 2, 0.0), math.sqrt(3.0), (-3.0, 3.0), 601)
    for f in (0.0, -result.f_star, result.f_star):
        i = result.index_of(f)
        print(f"f={f:+.6f}  simple={result.lambda_simple[i]:.6f}  rotten={result.lambda_composite[i]:.12f}")
