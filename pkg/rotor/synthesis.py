"""
Closed-form ROTTEN synthesis
For a target theta_phi rotation tailored to offsets +/- f:
    theta1 = theta3 = pi / sqrt(1 + f^2)
    theta2 = theta / sqrt(1 + f^2)
    phi1 = phi3 = +/- arccos(sqrt(1 + f^2) / 2)
    phi2 = pi - phi1
with the target phase added to every pulse. Real phases exist only for |f| <= sqrt(3).
"""
import math
from dataclasses import dataclass
from typing import Dict

from rotor.errors import DomainError, OffsetOutOfRange
from rotor.pulse import (
    SQRT3,
    TWO_PI,
    CompositeSequence,
    Pulse,
    sequence_propagator,
    wrap_phase,
)
from rotor.rotation import distance_up_to_phase

RANGE_SLACK = 1e-12
VERIFY_TOLERANCE = 1e-10


@dataclass(frozen=True)
class SynthesisRequest:
    """Target rotation (radians), tailoring fraction and the sign of the phi1 solution"""
    theta: float
    phi: float = 0.0
    f_star: float = SQRT3
    branch: int = 1


def canonical_offset(f_star: float) -> float:
    """
    |f_star|, snapped onto sqrt(3) when it is within rounding of the bound.

    Raises:
        OffsetOutOfRange: if |f_star| exceeds sqrt(3)
    """
    if not math.isfinite(f_star):
        raise DomainError(f"f_star must be finite, got {f_star!r}")
    f = abs(f_star)
    if f > SQRT3 + RANGE_SLACK:
        raise OffsetOutOfRange(
            f"f_star={f_star!r} is outside |f| <= sqrt(3) ~ {SQRT3:.6f}; "
            f"the phase equations have no real solution there"
        )
    if f >= SQRT3 - RANGE_SLACK:
        return SQRT3
    return f


def synthesize(req: SynthesisRequest) -> CompositeSequence:
    """
    Build the symmetric three-pulse sequence that is an exact rotor at +/- f_star.

    Args:
        req: target angle in (0, 2pi), target phase, f_star and branch (+1 or -1)

    Returns:
        CompositeSequence with pulses [(theta1, phi1+phi), (theta2, phi2+phi), (theta1, phi1+phi)]

    Raises:
        OffsetOutOfRange: |f_star| > sqrt(3)
        DomainError: theta outside (0, 2pi) or a branch other than +1/-1
    """
    theta = float(req.theta)
    if not (math.isfinite(theta) and 0.0 < theta < TWO_PI):
        raise DomainError(f"target angle must lie in (0, 2pi), got {theta!r} rad")
    if not math.isfinite(req.phi):
        raise DomainError(f"target phase must be finite, got {req.phi!r}")
    if req.branch not in (1, -1):
        raise DomainError(f"branch must be +1 or -1, got {req.branch!r}")

    f = canonical_offset(req.f_star)
    if f == SQRT3:
        scale = 2.0
        cos_phi1 = 1.0
    else:
        scale = math.sqrt(1.0 + f * f)
        cos_phi1 = min(1.0, scale / 2.0)

    theta1 = math.pi / scale
    theta2 = theta / scale
    phi1 = req.branch * math.acos(cos_phi1)
    phi2 = math.pi - phi1

    outer = Pulse(theta1, phi1 + req.phi)
    middle = Pulse(theta2, phi2 + req.phi)
    return CompositeSequence(pulses=(outer, middle, outer), f_star=f, target=(theta, wrap_phase(req.phi)))


def eq3_residual(seq: CompositeSequence) -> float:
    """|cos(phi1 - phi2) - (1 - f^2) / 2|"""
    p1, p2, _ = seq.pulses
    return abs(math.cos(p1.phi - p2.phi) - (1.0 - seq.f_star ** 2) / 2.0)


def verify(seq: CompositeSequence) -> Dict:
    """
    Self-check a sequence against its own target at +/- f_star.

    Returns:
        {
            "distance_at_plus_f": float,
            "distance_at_minus_f": float,
            "eq3_residual": float,
            "passed": bool  (all three below 1e-10)
        }
    """
    target = seq.target_rotation
    plus = distance_up_to_phase(sequence_propagator(seq, seq.f_star), target)
    minus = distance_up_to_phase(sequence_propagator(seq, -seq.f_star), target)
    residual = eq3_residual(seq)
    return {
        "distance_at_plus_f": plus,
        "distance_at_minus_f": minus,
        "eq3_residual": residual,
        "passed": max(plus, minus, residual) < VERIFY_TOLERANCE,
    }


if __name__ == "__main__":
    seq = synthesize(SynthesisRequest(theta=math.pi / 2, phi=0.0, f_star=SQRT3))
    for p in seq.pulses:
        print(f"theta={math.degrees(p.theta):.4f}  phi={math.degrees(p.phi):.4f}")
    print(verify(seq))
