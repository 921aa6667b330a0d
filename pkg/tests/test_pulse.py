import math

import numpy as np
import pytest
from scipy.linalg import expm

from rotor.errors import DomainError
from rotor.pulse import (
    SQRT3,
    CompositeSequence,
    OffResonance,
    Pulse,
    ideal_propagator,
    pulse_propagator,
    pulses_from_degrees,
    pulses_propagator,
    required_nu1,
    sequence_propagator,
    wrap_phase,
)
from rotor.rotation import Z_AXIS, Rotation, apply, distance_up_to_phase, identity

IX = np.array([[0, 0.5], [0.5, 0]], dtype=complex)
IY = np.array([[0, -0.5j], [0.5j, 0]], dtype=complex)
IZ = np.array([[0.5, 0], [0, -0.5]], dtype=complex)


def hamiltonian_propagator(theta, phi, f):
    return expm(-1j * theta * (IX * math.cos(phi) + IY * math.sin(phi) + IZ * f))


def test_on_resonance_quarter_pulse():
    r = pulse_propagator(Pulse(math.pi / 2, 0.0), 0.0)
    np.testing.assert_allclose(apply(r, Z_AXIS), [0.0, -1.0, 0.0], atol=1e-15)


def test_tilted_quarter_pulse_is_half_turn_about_tilted_axis():
    r = pulse_propagator(Pulse(math.pi / 2, 0.0), SQRT3)
    assert r.angle == pytest.approx(math.pi, abs=1e-12)
    np.testing.assert_allclose(r.axis, [0.5, 0.0, SQRT3 / 2], atol=1e-12)
    np.testing.assert_allclose(apply(r, Z_AXIS), [SQRT3 / 2, 0.0, 0.5], atol=1e-12)


def test_pulse_propagator_matches_hamiltonian_exponential(rng):
    for _ in range(1000):
        theta = rng.uniform(0, 2 * math.pi)
        phi = rng.uniform(0, 2 * math.pi)
        f = rng.uniform(-3, 3)
        r = pulse_propagator(Pulse(theta, phi), f)
        assert distance_up_to_phase(r, Rotation.from_matrix(hamiltonian_propagator(theta, phi, f))) < 1e-12


def test_generator_norm_law(rng):
    for _ in range(1000):
        theta = rng.uniform(0, math.pi)
        f = rng.uniform(-1.5, 1.5)
        r = pulse_propagator(Pulse(theta, rng.uniform(0, 2 * math.pi)), f)
        # theta * sqrt(1 + f^2) stays below 2pi here, so the angle is unambiguous
        assert r.angle == pytest.approx(theta * math.sqrt(1 + f * f), abs=1e-10)


def test_zero_offset_reduces_to_ideal_rotation(rng):
    for _ in range(200):
        p = Pulse(rng.uniform(0, 2 * math.pi), rng.uniform(0, 2 * math.pi))
        assert distance_up_to_phase(pulse_propagator(p, 0.0), ideal_propagator(p.theta, p.phi)) < 1e-12


def test_negative_angle_flips_phase():
    p = Pulse(-math.pi / 2, 0.0)
    assert p.theta == pytest.approx(math.pi / 2)
    assert p.phi == pytest.approx(math.pi)


def test_wrap_phase_range():
    assert 0.0 <= wrap_phase(-1e-18) < 2 * math.pi
    assert wrap_phase(5 * math.pi) == pytest.approx(math.pi)
    assert wrap_phase(-math.pi / 2) == pytest.approx(1.5 * math.pi)


def test_non_finite_pulse_is_rejected():
    with pytest.raises(DomainError):
        Pulse(float("nan"), 0.0)


def test_offset_from_frequencies():
    off = OffResonance.from_frequencies(9240.0, 9240.0 / SQRT3)
    assert off.f == pytest.approx(SQRT3, rel=1e-15)
    assert off.tilt_angle == pytest.approx(math.pi / 6)
    assert off.mirrored().f == pytest.approx(-SQRT3, rel=1e-15)
    assert off.mirrored().delta_hz == -9240.0
    with pytest.raises(DomainError):
        OffResonance.from_frequencies(100.0, 0.0)


def test_required_nu1():
    assert required_nu1(-9240.0, SQRT3) == pytest.approx(9240.0 / SQRT3)
    with pytest.raises(DomainError):
        required_nu1(9240.0, 0.0)


def test_zero_angle_sequence_is_identity():
    zero = Pulse(0.0, 0.0)
    seq = CompositeSequence(pulses=(zero, zero, zero), f_star=1.0, target=(0.0, 0.0))
    for f in (-2.0, 0.0, 0.7):
        assert distance_up_to_phase(sequence_propagator(seq, f), identity()) == 0.0


def test_sequence_requires_matching_outer_pulses():
    with pytest.raises(DomainError):
        CompositeSequence(pulses=(Pulse(1.0), Pulse(0.5), Pulse(1.1)), f_star=1.0, target=(1.0, 0.0))
    with pytest.raises(DomainError):
        CompositeSequence(pulses=(Pulse(1.0), Pulse(1.0)), f_star=1.0, target=(1.0, 0.0))


def test_sequence_propagator_matches_pulse_product(rotten_90x):
    for f in (-2.5, -SQRT3, 0.0, 0.4, SQRT3):
        assert distance_up_to_phase(
            sequence_propagator(rotten_90x, f), pulses_propagator(rotten_90x.pulses, f)) < 1e-14


def test_pulses_from_degrees():
    pulses = pulses_from_degrees([(90, 0), (45, 180)])
    assert pulses[0].theta == pytest.approx(math.pi / 2)
    assert pulses[1].phi == pytest.approx(math.pi)
