import math
import warnings

import numpy as np
import pytest

from rotor.errors import DomainError, OffsetOutOfRange, UndefinedPhase
from rotor.pulse import SQRT3
from rotor.spectrum import SpectralLine, SpinSystem, acquire, excite, phase_error

OFFSET = 9240.0


@pytest.fixture(scope="module")
def glycine():
    return SpinSystem.glycine_like()


def single_line(offset_hz=OFFSET, nu1_hz=OFFSET / SQRT3):
    return SpinSystem(lines=(SpectralLine(offset_hz),), nu1_hz=nu1_hz)


def test_default_system(glycine):
    assert [line.offset_hz for line in glycine.lines] == [OFFSET, -OFFSET]
    assert glycine.offset_fraction(0) == pytest.approx(SQRT3, rel=1e-15)
    assert glycine.acquisition_time >= 5 * glycine.t2_s


def test_simple_excitation_vectors(glycine):
    plus, minus = excite(glycine, "simple")
    np.testing.assert_allclose(plus, [SQRT3 / 2, 0.0, 0.5], atol=1e-12)
    np.testing.assert_allclose(minus, [-SQRT3 / 2, 0.0, 0.5], atol=1e-12)


def test_rotten_excitation_vectors(glycine):
    for v in excite(glycine, "rotten"):
        np.testing.assert_allclose(v, [0.0, -1.0, 0.0], atol=1e-9)


def test_on_resonance_line():
    system = SpinSystem(lines=(SpectralLine(0.0),), nu1_hz=5000.0)
    (v,) = excite(system, "simple")
    np.testing.assert_allclose(v, [0.0, -1.0, 0.0], atol=1e-15)


def test_simple_pulse_phase_errors(glycine):
    spectrum = acquire(glycine, excite(glycine, "simple"))
    assert spectrum.phases_deg[0] == pytest.approx(90.0, abs=1.0)
    assert spectrum.phases_deg[1] == pytest.approx(-90.0, abs=1.0)


def test_rotten_pulse_phase_errors(glycine):
    spectrum = acquire(glycine, excite(glycine, "rotten"))
    for phase in spectrum.phases_deg:
        assert abs(phase) < 0.1


@pytest.mark.parametrize("f", [0.05, 0.4, 1.0, 1.5, SQRT3])
def test_rotten_compensates_any_offset_up_to_bound(f):
    system = SpinSystem.glycine_like(f=f)
    spectrum = acquire(system, excite(system, "rotten"))
    assert max(abs(p) for p in spectrum.phases_deg) < 0.1


def test_rotten_refuses_lines_beyond_bound():
    system = SpinSystem.glycine_like(f=2.0)
    with pytest.raises(OffsetOutOfRange):
        excite(system, "rotten")


def test_rotten_checks_every_line():
    system = SpinSystem(lines=(SpectralLine(1000.0), SpectralLine(-2500.0)), nu1_hz=1000.0)
    with pytest.raises(OffsetOutOfRange):
        excite(system, "rotten")


def test_phase_round_trip_on_grid():
    system = single_line()
    for alpha_deg in range(-165, 181, 15):
        alpha = math.radians(alpha_deg)
        spectrum = acquire(system, [(math.sin(alpha), -math.cos(alpha), 0.0)])
        error = (spectrum.phases_deg[0] - alpha_deg + 180.0) % 360.0 - 180.0
        assert abs(error) < 0.5
        assert -180.0 < spectrum.phases_deg[0] <= 180.0


@pytest.mark.parametrize("vector, expected", [
    ((0.0, -1.0, 0.0), 0.0),
    ((1.0, 0.0, 0.0), 90.0),
    ((-1.0, 0.0, 0.0), -90.0),
])
def test_reference_phase_convention(vector, expected):
    spectrum = acquire(single_line(), [vector])
    assert phase_error(spectrum, 0) == pytest.approx(expected, abs=0.5)


def test_two_line_spectrum_is_sum_of_single_lines(glycine):
    vectors = excite(glycine, "simple")
    both = acquire(glycine, vectors)
    parts = [
        acquire(SpinSystem(lines=(line,), nu1_hz=glycine.nu1_hz), [v]).values
        for line, v in zip(glycine.lines, vectors)
    ]
    total = parts[0] + parts[1]
    scale = np.max(np.abs(total))
    np.testing.assert_allclose(both.values, total, atol=1e-9 * scale)


def test_axes(glycine):
    spectrum = acquire(glycine, excite(glycine, "simple"))
    assert len(spectrum.values) == glycine.points
    nyquist = 0.5 / glycine.dwell_s
    assert spectrum.freq_hz[0] == pytest.approx(-nyquist)
    assert spectrum.freq_hz[-1] < nyquist
    assert np.all(np.diff(spectrum.freq_hz) > 0)


def test_line_without_transverse_signal_has_no_phase():
    spectrum = acquire(single_line(), [(0.0, 0.0, 1.0)])
    assert math.isnan(spectrum.phases_deg[0])
    with pytest.raises(UndefinedPhase):
        phase_error(spectrum, 0)


def test_threads_do_not_change_excitation(glycine):
    one = excite(glycine, "rotten")
    many = excite(glycine, "rotten", threads=2)
    for a, b in zip(one, many):
        np.testing.assert_array_equal(a, b)


def test_short_window_warns():
    with pytest.warns(RuntimeWarning, match="5\\*T2"):
        SpinSystem(lines=(SpectralLine(100.0),), nu1_hz=1000.0, t2_s=0.05)


def test_default_window_is_quiet():
    with warnings.catch_warnings():
        warnings.simplefilter("error")
        SpinSystem.glycine_like()


@pytest.mark.parametrize("kwargs", [
    {"nu1_hz": 0.0},
    {"t2_s": -1.0},
    {"dwell_s": 0.0},
    {"points": 1},
    {"lines": ()},
    {"lines": (SpectralLine(30000.0),)},
    {"lines": (SpectralLine(10.0, amplitude=0.0),)},
])
def test_invalid_spin_systems(kwargs):
    args = {"lines": (SpectralLine(OFFSET),), "nu1_hz": 5000.0}
    args.update(kwargs)
    with pytest.raises(DomainError):
        SpinSystem(**args)


def test_mismatched_vector_count(glycine):
    with pytest.raises(DomainError):
        acquire(glycine, [(0.0, -1.0, 0.0)])


def test_unknown_mode(glycine):
    with pytest.raises(DomainError):
        excite(glycine, "adiabatic")
