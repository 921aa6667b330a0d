"""
Two-line excitation experiment at desk scale
Lines at +/- delta are excited by a simple pulse or a ROTTEN sequence, a noiseless FID is
synthesized from the transverse magnetization, Fourier transformed, and the phase of each line
is read relative to a pure absorption line at the same position.
"""
import math
import warnings
from dataclasses import dataclass
from typing import List, Sequence, Tuple

import numpy as np

from rotor.errors import DomainError, UndefinedPhase
from rotor.pulse import (
    SQRT3,
    Pulse,
    pulse_propagator,
    required_nu1,
    sequence_propagator,
)
from rotor.rotation import Z_AXIS, apply
from rotor.synthesis import SynthesisRequest, canonical_offset, synthesize
from utils.parallel import ordered_map

DEFAULT_OFFSET_HZ = 9240.0
DEFAULT_T2_S = 0.03
DEFAULT_DWELL_S = 20e-6
DEFAULT_POINTS = 8192

# receiver phase that makes a line tipped onto -y pure absorption
RECEIVER_PHASE = 1j
MODES = ("simple", "rotten")


@dataclass(frozen=True)
class SpectralLine:
    offset_hz: float
    amplitude: float = 1.0


@dataclass(frozen=True)
class SpinSystem:
    """
    Singlet lines, RF nutation rate, T2 decay and acquisition (dwell, points).
    """
    lines: Tuple[SpectralLine, ...]
    nu1_hz: float
    t2_s: float = DEFAULT_T2_S
    dwell_s: float = DEFAULT_DWELL_S
    points: int = DEFAULT_POINTS

    def __post_init__(self):
        lines = tuple(self.lines)
        object.__setattr__(self, "lines", lines)
        if not lines:
            raise DomainError("a spin system needs at least one line")
        if not self.nu1_hz > 0.0:
            raise DomainError(f"nu1_hz must be positive, got {self.nu1_hz!r}")
        if not self.t2_s > 0.0:
            raise DomainError(f"t2_s must be positive, got {self.t2_s!r}")
        if not self.dwell_s > 0.0:
            raise DomainError(f"dwell_s must be positive, got {self.dwell_s!r}")
        if int(self.points) != self.points or self.points < 2:
            raise DomainError(f"points must be an integer >= 2, got {self.points!r}")
        nyquist = 0.5 / self.dwell_s
        for k, line in enumerate(lines):
            if not line.amplitude > 0.0:
                raise DomainError(f"line {k + 1} amplitude must be positive, got {line.amplitude!r}")
            if abs(line.offset_hz) >= nyquist:
                raise DomainError(
                    f"line {k + 1} offset {line.offset_hz} Hz is outside the +/-{nyquist:g} Hz window")
        if self.acquisition_time < 5.0 * self.t2_s:
            warnings.warn(
                f"acquisition time {self.acquisition_time:g} s is shorter than 5*T2 = {5 * self.t2_s:g} s; "
                f"lines will show truncation wiggles",
                RuntimeWarning,
                stacklevel=3,
            )

    @classmethod
    def glycine_like(cls, offset_hz: float = DEFAULT_OFFSET_HZ, f: float = SQRT3, **kwargs) -> "SpinSystem":
        """Two equal lines at +/- offset_hz with nu1 chosen so that |delta / nu1| = f"""
        lines = (SpectralLine(offset_hz), SpectralLine(-offset_hz))
        return cls(lines=lines, nu1_hz=required_nu1(offset_hz, f), **kwargs)

    @property
    def acquisition_time(self) -> float:
        return self.dwell_s * self.points

    def offset_fraction(self, k: int) -> float:
        return self.lines[k].offset_hz / self.nu1_hz

    def time_axis(self) -> np.ndarray:
        return np.arange(self.points) * self.dwell_s

    def frequency_axis(self) -> np.ndarray:
        return np.fft.fftshift(np.fft.fftfreq(self.points, self.dwell_s))


@dataclass(frozen=True)
class Spectrum:
    freq_hz: np.ndarray
    values: np.ndarray
    line_offsets_hz: Tuple[float, ...]
    line_bins: Tuple[int, ...]
    line_references: Tuple[complex, ...]
    phases_deg: Tuple[float, ...]


def excite(sys: SpinSystem, mode: str, target_theta: float = math.pi / 2, threads: int = 1) -> List[np.ndarray]:
    """
    Bloch vector of every line after the excitation pulse, starting from equilibrium (0, 0, 1).

    Args:
        sys: spin system
        mode: "simple" for a single target_theta x pulse, "rotten" for the sequence
              tailored at f* = |delta_1| / nu1
        target_theta: nominal flip angle in radians
        threads: worker cap for per-line propagation

    Raises:
        OffsetOutOfRange: in rotten mode when any line has |delta / nu1| > sqrt(3)
    """
    if mode not in MODES:
        raise DomainError(f"unknown excitation mode {mode!r}; expected one of {MODES}")
    fractions = [sys.offset_fraction(k) for k in range(len(sys.lines))]

    if mode == "simple":
        pulse = Pulse(target_theta, 0.0)

        def propagate(f):
            return apply(pulse_propagator(pulse, f), Z_AXIS)
    else:
        for f in fractions:
            canonical_offset(f)
        seq = synthesize(SynthesisRequest(theta=target_theta, phi=0.0, f_star=fractions[0]))

        def propagate(f):
            return apply(sequence_propagator(seq, f), Z_AXIS)

    return ordered_map(propagate, fractions, threads=threads)


def line_fid(sys: SpinSystem, line: SpectralLine, vector: Sequence[float]) -> np.ndarray:
    t = sys.time_axis()
    transverse = vector[0] + 1j * vector[1]
    return line.amplitude * transverse * np.exp(2j * np.pi * line.offset_hz * t) * np.exp(-t / sys.t2_s)


def absorption_reference(sys: SpinSystem, line: SpectralLine, freq_hz: float) -> complex:
    """Spectrum value at freq_hz of the same line when it shows zero phase"""
    t = sys.time_axis()
    fid = line.amplitude * np.exp(2j * np.pi * (line.offset_hz - freq_hz) * t) * np.exp(-t / sys.t2_s)
    return complex(np.sum(fid))


def acquire(sys: SpinSystem, post_pulse: Sequence[Sequence[float]]) -> Spectrum:
    """
    Synthesize the FID of all lines and transform it.

    Args:
        sys: spin system
        post_pulse: one Bloch vector per line, in line order

    Returns:
        Spectrum with per-line phases (NaN where a line carries no signal)
    """
    if len(post_pulse) != len(sys.lines):
        raise DomainError(f"expected {len(sys.lines)} Bloch vectors, got {len(post_pulse)}")
    fid = np.zeros(sys.points, dtype=complex)
    for line, vector in zip(sys.lines, post_pulse):
        fid += line_fid(sys, line, vector)

    values = np.fft.fftshift(np.fft.fft(RECEIVER_PHASE * fid))
    freq = sys.frequency_axis()
    bins = tuple(int(np.argmin(np.abs(freq - line.offset_hz))) for line in sys.lines)
    references = tuple(absorption_reference(sys, line, float(freq[b])) for line, b in zip(sys.lines, bins))

    spectrum = Spectrum(
        freq_hz=freq,
        values=values,
        line_offsets_hz=tuple(line.offset_hz for line in sys.lines),
        line_bins=bins,
        line_references=references,
        phases_deg=(),
    )
    phases = []
    for k in range(len(sys.lines)):
        try:
            phases.append(phase_error(spectrum, k))
        except UndefinedPhase:
            phases.append(float("nan"))
    object.__setattr__(spectrum, "phases_deg", tuple(phases))
    return spectrum


def phase_error(spec: Spectrum, line_index: int) -> float:
    """
    Phase of a line in degrees, in (-180, 180], relative to pure absorption.

    Raises:
        UndefinedPhase: the line's bin has no signal
    """
    if not 0 <= line_index < len(spec.line_bins):
        raise DomainError(f"no line {line_index}; spectrum has {len(spec.line_bins)}")
    value = complex(spec.values[spec.line_bins[line_index]])
    reference = spec.line_references[line_index]
    if abs(value) <= 1e-12 * abs(reference):
        raise UndefinedPhase(f"line {line_index + 1} has no signal at its peak bin")
    degrees = math.degrees(float(np.angle(value / reference)))
    return 180.0 if degrees <= -180.0 else degrees


if __name__ == "__main__":
    system = SpinSystem.glycine_like()
    for mode in MODES:
        spectrum = acquire(system, excite(system, mode))
        print(mode, [round(p, 3) for p in spectrum.phases_deg])
