"""
Hard RF pulses with resonance offset
A pulse of nominal angle theta and phase phi seen at off-resonance fraction f = delta / nu1
rotates by theta * sqrt(1 + f^2) about (cos phi, sin phi, f) / sqrt(1 + f^2).
"""
import math
from dataclasses import dataclass
from typing import Iterable, List, Optional, Sequence, Tuple, Union

from rotor.errors import DomainError
from rotor.rotation import Rotation, compose, from_axis_angle, identity

TWO_PI = 2.0 * math.pi
SQRT3 = math.sqrt(3.0)
SEQUENCE_MATCH_TOLERANCE = 1e-12


def wrap_phase(phi: float) -> float:
    """Map a phase into [0, 2pi)"""
    wrapped = math.fmod(phi, TWO_PI)
    if wrapped < 0.0:
        wrapped += TWO_PI
    # fmod of a tiny negative number can round up to exactly 2pi
    if wrapped >= TWO_PI:
        wrapped = 0.0
    return wrapped


def phase_difference(a: float, b: float) -> float:
    """Smallest signed difference a - b on the circle, in (-pi, pi]"""
    d = math.fmod(a - b, TWO_PI)
    if d > math.pi:
        d -= TWO_PI
    elif d <= -math.pi:
        d += TWO_PI
    return d


@dataclass(frozen=True)
class Pulse:
    """Nominal nutation angle and phase, both in radians"""
    theta: float
    phi: float = 0.0

    def __post_init__(self):
        theta = float(self.theta)
        phi = float(self.phi)
        if not (math.isfinite(theta) and math.isfinite(phi)):
            raise DomainError(f"pulse angles must be finite, got theta={theta!r}, phi={phi!r}")
        # a negative nominal angle is played as a positive one with the phase flipped
        if theta < 0.0:
            theta = -theta
            phi += math.pi
        object.__setattr__(self, "theta", theta)
        object.__setattr__(self, "phi", wrap_phase(phi))

    def matches(self, other: "Pulse", tolerance: float = SEQUENCE_MATCH_TOLERANCE) -> bool:
        return (abs(self.theta - other.theta) <= tolerance
                and abs(phase_difference(self.phi, other.phi)) <= tolerance)

    def shifted(self, dphi: float) -> "Pulse":
        return Pulse(self.theta, self.phi + dphi)


@dataclass(frozen=True)
class OffResonance:
    """
    Off-resonance fraction f = delta / nu1. The frequencies are optional metadata.
    """
    f: float
    delta_hz: Optional[float] = None
    nu1_hz: Optional[float] = None

    def __post_init__(self):
        if not math.isfinite(self.f):
            raise DomainError(f"off-resonance fraction must be finite, got {self.f!r}")

    @classmethod
    def from_frequencies(cls, delta_hz: float, nu1_hz: float) -> "OffResonance":
        """
        Build from a resonance offset and a nutation rate, both in Hz.

        Raises:
            DomainError: if nu1_hz is not positive
        """
        if not nu1_hz > 0.0:
            raise DomainError(f"nutation rate must be positive, got {nu1_hz!r} Hz")
        return cls(f=delta_hz / nu1_hz, delta_hz=float(delta_hz), nu1_hz=float(nu1_hz))

    @property
    def tilt_angle(self) -> float:
        """RF tilt angle from the z axis, tan(tilt) = 1 / f, in (0, pi)"""
        return math.atan2(1.0, self.f)

    def mirrored(self) -> "OffResonance":
        delta = None if self.delta_hz is None else -self.delta_hz
        return OffResonance(-self.f, delta, self.nu1_hz)


OffsetLike = Union[OffResonance, float, int]


def as_offset(off: OffsetLike) -> OffResonance:
    if isinstance(off, OffResonance):
        return off
    return OffResonance(float(off))


def required_nu1(delta_hz: float, f: float) -> float:
    """Nutation rate that places a line at offset delta_hz at off-resonance fraction f"""
    if not f > 0.0:
        raise DomainError(f"target off-resonance fraction must be positive, got {f!r}")
    return abs(delta_hz) / f


@dataclass(frozen=True)
class CompositeSequence:
    """
    Three pulses whose first and last pulse are identical, tailored for offsets +/- f_star.
    target is the (theta, phi) of the ideal rotation the sequence stands in for.
    """
    pulses: Tuple[Pulse, Pulse, Pulse]
    f_star: float
    target: Tuple[float, float]

    def __post_init__(self):
        pulses = tuple(self.pulses)
        if len(pulses) != 3:
            raise DomainError(f"a composite sequence has exactly 3 pulses, got {len(pulses)}")
        if not pulses[0].matches(pulses[2]):
            raise DomainError(f"first and last pulses differ: {pulses[0]} vs {pulses[2]}")
        object.__setattr__(self, "pulses", pulses)
        object.__setattr__(self, "target", (float(self.target[0]), float(self.target[1])))

    @property
    def target_rotation(self) -> Rotation:
        return ideal_propagator(*self.target)


def pulse_propagator(p: Pulse, off: OffsetLike) -> Rotation:
    """
    Propagator exp(-i theta (Ix cos phi + Iy sin phi + Iz f)) of one pulse.
    """
    f = as_offset(off).f
    scale = math.sqrt(1.0 + f * f)
    axis = (math.cos(p.phi) / scale, math.sin(p.phi) / scale, f / scale)
    return from_axis_angle(axis, p.theta * scale)


def ideal_propagator(theta: float, phi: float) -> Rotation:
    """Rotation by theta about the in-plane axis (cos phi, sin phi, 0)"""
    return from_axis_angle((math.cos(phi), math.sin(phi), 0.0), theta)


def pulses_propagator(pulses: Iterable[Pulse], off: OffsetLike) -> Rotation:
    """Overall propagator of pulses played back to back in the given order"""
    off = as_offset(off)
    total = identity()
    for p in pulses:
        total = compose(pulse_propagator(p, off), total)
    return total


def sequence_propagator(s: CompositeSequence, off: OffsetLike) -> Rotation:
    """U = U3 U2 U1 evaluated at any offset, not only the tailored one"""
    u1, u2, u3 = (pulse_propagator(p, off) for p in s.pulses)
    return compose(u3, compose(u2, u1))


def pulses_from_degrees(pairs: Sequence[Sequence[float]]) -> List[Pulse]:
    return [Pulse(math.radians(t), math.radians(p)) for t, p in pairs]


if __name__ == "__main__":
    from rotor.rotation import apply, Z_AXIS

    tilted = pulse_propagator(Pulse(math.pi / 2, 0.0), SQRT3)
    print("90x at f=sqrt3 on z:", apply(tilted, Z_AXIS))
