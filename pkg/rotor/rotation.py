"""
Rotation algebra for a single spin-1/2
Rotations are unit quaternions (w, x, y, z) with w = cos(a/2) and (x, y, z) = sin(a/2) * n,
equivalent to the SU(2) matrix exp(-i a (n . sigma) / 2) = w*1 - i (x sx + y sy + z sz).
q and -q describe the same rotor, which is the overall phase the pulse algebra ignores.
"""
import math
from typing import Iterable, Sequence

import numpy as np

from rotor.errors import NormalizationError

AXIS_TOLERANCE = 1e-9

# Bloch vectors are plain float arrays of shape (3,)
BlochVector = np.ndarray

X_AXIS = np.array([1.0, 0.0, 0.0])
Y_AXIS = np.array([0.0, 1.0, 0.0])
Z_AXIS = np.array([0.0, 0.0, 1.0])


class Rotation:
    """Immutable unit quaternion acting on Bloch vectors"""

    __slots__ = ("_q",)

    def __init__(self, w: float, x: float, y: float, z: float):
        q = np.array([w, x, y, z], dtype=float)
        norm = math.sqrt(float(q @ q))
        if norm == 0.0 or not math.isfinite(norm):
            raise NormalizationError(f"cannot normalize quaternion {q.tolist()}")
        q /= norm
        q.flags.writeable = False
        self._q = q

    @classmethod
    def from_quaternion(cls, q: Iterable[float], tolerance: float = 1e-9) -> "Rotation":
        """
        Build a rotation from an explicit quaternion.

        Args:
            q: (w, x, y, z)
            tolerance: how far from unit length the input may be

        Returns:
            Rotation with the quaternion renormalized
        """
        q = np.asarray(list(q), dtype=float)
        if q.shape != (4,):
            raise NormalizationError(f"quaternion must have 4 components, got {q.shape}")
        norm = float(np.linalg.norm(q))
        if abs(norm - 1.0) > tolerance:
            raise NormalizationError(f"quaternion norm {norm!r} is not 1")
        return cls(*q)

    @classmethod
    def from_matrix(cls, u: np.ndarray) -> "Rotation":
        """
        Build a rotation from a 2x2 unitary. Any overall phase is divided out first.
        """
        u = np.asarray(u, dtype=complex)
        if u.shape != (2, 2):
            raise NormalizationError(f"expected a 2x2 matrix, got {u.shape}")
        det = u[0, 0] * u[1, 1] - u[0, 1] * u[1, 0]
        if abs(det) < 1e-12:
            raise NormalizationError("matrix is singular")
        u = u / np.sqrt(det)
        w = (u[0, 0] + u[1, 1]).real / 2
        x = -(u[0, 1] + u[1, 0]).imag / 2
        y = (u[1, 0] - u[0, 1]).real / 2
        z = -(u[0, 0] - u[1, 1]).imag / 2
        return cls(w, x, y, z)

    @property
    def w(self) -> float:
        return float(self._q[0])

    @property
    def x(self) -> float:
        return float(self._q[1])

    @property
    def y(self) -> float:
        return float(self._q[2])

    @property
    def z(self) -> float:
        return float(self._q[3])

    @property
    def quaternion(self) -> np.ndarray:
        return self._q.copy()

    @property
    def angle(self) -> float:
        """Rotation angle in [0, 2pi] for this sign of the quaternion"""
        return 2.0 * math.atan2(float(np.linalg.norm(self._q[1:])), float(self._q[0]))

    @property
    def axis(self) -> np.ndarray:
        """Unit rotation axis; the x axis for the identity"""
        v = self._q[1:]
        norm = float(np.linalg.norm(v))
        if norm < 1e-15:
            return X_AXIS.copy()
        return v / norm

    def negated(self) -> "Rotation":
        return Rotation(*(-self._q))

    def to_matrix(self) -> np.ndarray:
        w, x, y, z = self._q
        return np.array([
            [w - 1j * z, -1j * x - y],
            [-1j * x + y, w + 1j * z],
        ], dtype=complex)

    def __repr__(self) -> str:
        w, x, y, z = self._q
        return f"Rotation(w={w:.12g}, x={x:.12g}, y={y:.12g}, z={z:.12g})"


def identity() -> Rotation:
    return Rotation(1.0, 0.0, 0.0, 0.0)


def bloch_vector(vx: float, vy: float, vz: float) -> BlochVector:
    return np.array([vx, vy, vz], dtype=float)


def from_axis_angle(axis: Sequence[float], angle: float) -> Rotation:
    """
    Rotation exp(-i angle (n . sigma) / 2) about a unit axis.

    Args:
        axis: unit 3-vector n
        angle: rotation angle in radians

    Returns:
        Rotation

    Raises:
        NormalizationError: if |axis| differs from 1 by more than 1e-9
    """
    n = np.asarray(axis, dtype=float)
    if n.shape != (3,):
        raise NormalizationError(f"axis must have 3 components, got {n.shape}")
    norm = float(np.linalg.norm(n))
    if abs(norm - 1.0) > AXIS_TOLERANCE:
        raise NormalizationError(f"axis {n.tolist()} has norm {norm!r}, expected 1")
    half = 0.5 * angle
    s = math.sin(half)
    return Rotation(math.cos(half), s * n[0], s * n[1], s * n[2])


def compose(second: Rotation, first: Rotation) -> Rotation:
    """
    Rotation that applies `first` and then `second` (matrix product second @ first).
    """
    w1, x1, y1, z1 = second._q
    w2, x2, y2, z2 = first._q
    return Rotation(
        w1 * w2 - x1 * x2 - y1 * y2 - z1 * z2,
        w1 * x2 + x1 * w2 + y1 * z2 - z1 * y2,
        w1 * y2 - x1 * z2 + y1 * w2 + z1 * x2,
        w1 * z2 + x1 * y2 - y1 * x2 + z1 * w2,
    )


def compose_all(rotations: Iterable[Rotation]) -> Rotation:
    """Compose rotations given in the order they act"""
    total = identity()
    for r in rotations:
        total = compose(r, total)
    return total


def apply(r: Rotation, v: Sequence[float]) -> BlochVector:
    """
    Rotate a Bloch vector. Matches U (v . sigma) U^dagger, so a 90 degree x rotation sends z to -y.
    """
    v = np.asarray(v, dtype=float)
    w = r._q[0]
    u = r._q[1:]
    t = 2.0 * np.cross(u, v)
    return v + w * t + np.cross(u, t)


def quaternion_overlap(a: Rotation, b: Rotation) -> float:
    """|<a, b>| clipped to [0, 1]; equals |Tr(B^dagger A)| / 2"""
    return min(1.0, abs(float(a._q @ b._q)))


def distance_up_to_phase(a: Rotation, b: Rotation) -> float:
    """1 - |<a, b>|; zero exactly when a = +b or a = -b"""
    return 1.0 - quaternion_overlap(a, b)


if __name__ == "__main__":
    quarter_x = from_axis_angle(X_AXIS, math.pi / 2)
    print("90x on z:", apply(quarter_x, Z_AXIS))
    print("90x then 90x:", compose(quarter_x, quarter_x))
