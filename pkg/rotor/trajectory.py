"""
Magnetization trajectories during pulses ("grapefruit" plots)
Each pulse is a fixed-axis rotation, so every sample is computed as an exact partial rotation
of the state at the start of that pulse; there is no integration step.
"""
import math
from dataclasses import dataclass
from typing import Dict, List, Optional, Sequence, Tuple, Union

import numpy as np

from rotor.errors import DomainError
from rotor.pulse import SQRT3, CompositeSequence, OffResonance, OffsetLike, Pulse, as_offset
from rotor.rotation import X_AXIS, Y_AXIS, Z_AXIS, BlochVector, apply, from_axis_angle
from rotor.synthesis import SynthesisRequest, synthesize
from utils.svg_canvas import SvgCanvas

DEFAULT_SAMPLES_PER_PULSE = 256

INITIAL_STATES: Dict[str, np.ndarray] = {"Ix": X_AXIS, "Iy": Y_AXIS, "Iz": Z_AXIS}

PROJECTIONS: Dict[str, Tuple[int, int]] = {
    "orthographic-xy": (0, 1),
    "orthographic-xz": (0, 2),
    "orthographic-yz": (1, 2),
}

PULSE_COLORS = ["#1f77b4", "#d62728", "#2ca02c", "#9467bd", "#ff7f0e"]
AXIS_NAMES = "xyz"


@dataclass(frozen=True)
class Trajectory:
    """
    progress: cumulative nominal nutation angle (radians) at each sample
    vectors: (n, 3) Bloch vectors, row 0 is the initial state
    boundaries: index of the last sample of each pulse
    """
    progress: np.ndarray
    vectors: np.ndarray
    initial_state: np.ndarray
    boundaries: Tuple[int, ...]
    pulses: Tuple[Pulse, ...]
    off: OffResonance

    @property
    def samples(self) -> List[Tuple[float, np.ndarray]]:
        return [(float(p), v) for p, v in zip(self.progress, self.vectors)]

    @property
    def endpoint(self) -> np.ndarray:
        return self.vectors[-1].copy()

    def __len__(self) -> int:
        return len(self.progress)


PulsesLike = Union[CompositeSequence, Sequence[Pulse]]


def trace(
    seq: PulsesLike,
    off: OffsetLike,
    initial: BlochVector,
    samples_per_pulse: int = DEFAULT_SAMPLES_PER_PULSE,
) -> Trajectory:
    """
    Follow the Bloch vector through pulses played back to back.

    Args:
        seq: a CompositeSequence or a list of pulses
        off: off-resonance fraction the pulses are played at
        initial: starting Bloch vector, 0 < |v| <= 1
        samples_per_pulse: steps per pulse; pulse j contributes fractions i/n for i = 1..n

    Returns:
        Trajectory with 1 + n * len(pulses) samples

    Raises:
        DomainError: on fewer than 2 steps per pulse, no pulses, or a bad initial vector
    """
    pulses = tuple(seq.pulses if isinstance(seq, CompositeSequence) else seq)
    if not pulses:
        raise DomainError("a trajectory needs at least one pulse")
    if samples_per_pulse < 2:
        raise DomainError(f"samples_per_pulse must be at least 2, got {samples_per_pulse}")
    v0 = np.asarray(initial, dtype=float)
    norm = float(np.linalg.norm(v0)) if v0.shape == (3,) else -1.0
    if not 0.0 < norm <= 1.0 + 1e-12:
        raise DomainError(f"initial Bloch vector must have 0 < |v| <= 1, got {initial!r}")

    off = as_offset(off)
    f = off.f
    scale = math.sqrt(1.0 + f * f)
    n = samples_per_pulse

    progress = [0.0]
    vectors = [v0.copy()]
    boundaries = []
    done = 0.0
    start = v0
    for p in pulses:
        axis = (math.cos(p.phi) / scale, math.sin(p.phi) / scale, f / scale)
        full = p.theta * scale
        for i in range(1, n + 1):
            s = i / n
            vectors.append(apply(from_axis_angle(axis, s * full), start))
            progress.append(done + s * p.theta)
        done += p.theta
        start = vectors[-1]
        boundaries.append(len(vectors) - 1)

    return Trajectory(
        progress=np.array(progress),
        vectors=np.array(vectors),
        initial_state=v0.copy(),
        boundaries=tuple(boundaries),
        pulses=pulses,
        off=off,
    )


def resolve_projection(projection: str) -> Tuple[str, Tuple[int, int]]:
    key = projection if projection.startswith("orthographic-") else f"orthographic-{projection}"
    if key not in PROJECTIONS:
        raise DomainError(f"unknown projection {projection!r}; choose from {sorted(PROJECTIONS)}")
    return key, PROJECTIONS[key]


def draw_grapefruit(t: Trajectory, projection: str, title: str = "",
                    comment: Optional[str] = None) -> SvgCanvas:
    """
    Lay out one projection of a trajectory: unit circle, axes, the full path as a single
    polyline (one point per sample), per-pulse coloured segments, open start and filled end markers.
    """
    if len(t) == 0:
        raise DomainError("cannot draw an empty trajectory")
    _, (i, j) = resolve_projection(projection)
    canvas = SvgCanvas()
    if comment:
        canvas.set_comment(comment)

    canvas.circle(0.0, 0.0, 1.0, stroke="#333333", css_class="outline")
    canvas.line((-1.1, 0.0), (1.1, 0.0), css_class="axis", dash=True)
    canvas.line((0.0, -1.1), (0.0, 1.1), css_class="axis", dash=True)
    canvas.text(1.18, -0.02, AXIS_NAMES[i])
    canvas.text(0.0, 1.15, AXIS_NAMES[j])
    if title:
        canvas.text(0.0, -1.2, title, size=12, css_class="title")

    points = [(float(v[i]), float(v[j])) for v in t.vectors]
    canvas.polyline(points, color="#bbbbbb", width=0.75, css_class="trajectory")
    first = 0
    for k, last in enumerate(t.boundaries):
        color = PULSE_COLORS[k % len(PULSE_COLORS)]
        canvas.polyline(points[first:last + 1], color=color, css_class="pulse",
                        extra=f'data-pulse="{k + 1}"')
        first = last

    canvas.marker(*points[0], radius_px=5.0, stroke="#000000", fill="none", css_class="start")
    canvas.marker(*points[-1], radius_px=5.0, stroke="#000000", fill="#000000", css_class="end")
    return canvas


def export_grapefruit(t: Trajectory, projection: str, out, title: str = "",
                      comment: Optional[str] = None):
    """
    Write one projection of a trajectory as an SVG document.

    Raises:
        DomainError: empty trajectory or unknown projection
        OSError: the file cannot be written
    """
    return draw_grapefruit(t, projection, title=title, comment=comment).save(out)


def pulses_for_mode(mode: str, theta: float, phi: float, f_star: Optional[float] = None) -> List[Pulse]:
    """One pulse in simple mode, the synthesized three-pulse sequence in rotten mode"""
    if mode == "simple":
        return [Pulse(theta, phi)]
    if mode == "rotten":
        if f_star is None:
            raise DomainError("rotten mode needs a tailoring offset f_star")
        return list(synthesize(SynthesisRequest(theta=theta, phi=phi, f_star=f_star)).pulses)
    raise DomainError(f"unknown mode {mode!r}; expected 'simple' or 'rotten'")


@dataclass(frozen=True)
class Panel:
    label: str
    mode: str
    f_eval: float
    initial: str


def figure_panels(f_star: float = SQRT3) -> List[Panel]:
    """
    The twelve grapefruit panels: simple pulses at f=0 and f=f_star, ROTTEN pulses at
    +f_star and -f_star, each from Ix, Iy and Iz.
    """
    rows = [("simple", 0.0), ("simple", f_star), ("rotten", f_star), ("rotten", -f_star)]
    panels = []
    for r, (mode, f_eval) in enumerate(rows):
        for c, initial in enumerate(("Ix", "Iy", "Iz")):
            panels.append(Panel(label="abcdefghijkl"[3 * r + c], mode=mode, f_eval=f_eval, initial=initial))
    return panels


if __name__ == "__main__":
    rotten = pulses_for_mode("rotten", math.pi / 2, 0.0, SQRT3)
    for name, state in INITIAL_STATES.items():
        end = trace(rotten, SQRT3, state, samples_per_pulse=32).endpoint
        print(name, "->", np.round(end, 12))
