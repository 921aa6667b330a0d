import math

import numpy as np
import pytest
from scipy.linalg import expm

from conftest import random_unit_vector
from rotor.errors import NormalizationError
from rotor.rotation import (
    X_AXIS,
    Y_AXIS,
    Z_AXIS,
    Rotation,
    apply,
    compose,
    compose_all,
    distance_up_to_phase,
    from_axis_angle,
    identity,
    quaternion_overlap,
)

SIGMA = (
    np.array([[0, 1], [1, 0]], dtype=complex),
    np.array([[0, -1j], [1j, 0]], dtype=complex),
    np.array([[1, 0], [0, -1]], dtype=complex),
)


def expm_rotation(axis, angle):
    generator = sum(n * s for n, s in zip(axis, SIGMA))
    return expm(-0.5j * angle * generator)


def bloch_from_matrix(u, v):
    rho = sum(c * s for c, s in zip(v, SIGMA))
    out = u @ rho @ u.conj().T
    return np.array([np.trace(out @ s).real / 2 for s in SIGMA])


def test_quarter_turn_about_x_sends_z_to_minus_y():
    r = from_axis_angle(X_AXIS, math.pi / 2)
    np.testing.assert_allclose(apply(r, Z_AXIS), [0.0, -1.0, 0.0], atol=1e-15)


def test_composing_quarter_turns_gives_half_turn():
    q = from_axis_angle(X_AXIS, math.pi / 2)
    half = from_axis_angle(X_AXIS, math.pi)
    assert distance_up_to_phase(compose(q, q), half) < 1e-15


def test_full_turn_equals_identity_up_to_phase():
    r = from_axis_angle(Y_AXIS, 2 * math.pi)
    assert r.w == pytest.approx(-1.0)
    assert distance_up_to_phase(r, identity()) < 1e-15


def test_axis_must_be_unit_length():
    with pytest.raises(NormalizationError):
        from_axis_angle((1.0, 1.0, 0.0), 0.3)
    with pytest.raises(NormalizationError):
        from_axis_angle((1.0, 0.0), 0.3)


def test_from_quaternion_checks_norm():
    with pytest.raises(NormalizationError):
        Rotation.from_quaternion([1.0, 0.1, 0.0, 0.0])
    r = Rotation.from_quaternion([0.0, 0.0, 0.0, 1.0])
    assert r.angle == pytest.approx(math.pi)
    np.testing.assert_allclose(r.axis, Z_AXIS)


def test_zero_quaternion_is_rejected():
    with pytest.raises(NormalizationError):
        Rotation(0.0, 0.0, 0.0, 0.0)


def test_distance_ignores_sign():
    r = from_axis_angle(random_unit_vector(np.random.default_rng(1)), 1.1)
    assert distance_up_to_phase(r, r.negated()) < 1e-15
    assert quaternion_overlap(r, r) == pytest.approx(1.0, abs=1e-15)


def test_compose_all_applies_in_order():
    a = from_axis_angle(X_AXIS, math.pi / 2)
    b = from_axis_angle(Z_AXIS, math.pi / 2)
    np.testing.assert_allclose(apply(compose_all([a, b]), Z_AXIS), apply(b, apply(a, Z_AXIS)), atol=1e-15)


def test_quaternion_matches_matrix_exponential(rng):
    for _ in range(1000):
        axis = random_unit_vector(rng)
        angle = rng.uniform(-4 * math.pi, 4 * math.pi)
        r = from_axis_angle(axis, angle)
        np.testing.assert_allclose(r.to_matrix(), expm_rotation(axis, angle), atol=1e-12)


def test_composition_agrees_with_matrix_product(rng):
    for _ in range(1000):
        a = from_axis_angle(random_unit_vector(rng), rng.uniform(0, 2 * math.pi))
        b = from_axis_angle(random_unit_vector(rng), rng.uniform(0, 2 * math.pi))
        product = b.to_matrix() @ a.to_matrix()
        np.testing.assert_allclose(compose(b, a).to_matrix(), product, atol=1e-12)
        assert distance_up_to_phase(Rotation.from_matrix(product), compose(b, a)) < 1e-12


def test_apply_matches_conjugation_and_preserves_norm(rng):
    for _ in range(1000):
        r = from_axis_angle(random_unit_vector(rng), rng.uniform(0, 2 * math.pi))
        v = random_unit_vector(rng) * rng.uniform(0.1, 1.0)
        out = apply(r, v)
        assert np.linalg.norm(out) == pytest.approx(np.linalg.norm(v), abs=1e-12)
        np.testing.assert_allclose(out, bloch_from_matrix(r.to_matrix(), v), atol=1e-12)


def test_from_matrix_divides_out_global_phase():
    r = from_axis_angle(Y_AXIS, 0.7)
    phased = np.exp(0.4j) * r.to_matrix()
    assert distance_up_to_phase(Rotation.from_matrix(phased), r) < 1e-14
