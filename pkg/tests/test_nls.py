"""Split-step evolution, conservation, structure counting, frame IO."""
import io

import numpy as np
import pytest

from zs_spectrum import (
    EvolutionSetup,
    NumericError,
    count_structures,
    custom,
    evolve,
    mass,
    read_frames_binary,
    satsuma_yajima,
    sech,
    write_frames_binary,
    write_frames_csv,
)
from zs_spectrum.nls import ZSEV_MAGIC


def _setup(spec, **kw):
    defaults = dict(half_width=20.0, m=512, t_end=2.0, dt=1e-3,
                    frame_stride=50)
    defaults.update(kw)
    return EvolutionSetup(spec, **defaults)


# ---------------------------------------------------------------- mass

def test_mass_of_zero_field():
    assert mass(np.zeros(64), 0.1) == 0.0


def test_mass_of_sech_profile():
    x = -20.0 + 40.0 * np.arange(512) / 512
    assert np.isclose(mass(sech(x), 40.0 / 512), 2.0, atol=1e-6)


# ---------------------------------------------------------------- evolve

def test_single_soliton_modulus_is_stationary():
    result = evolve(_setup(satsuma_yajima(1.0)))
    dev = np.max(np.abs(np.abs(result.field[-1]) - np.abs(result.field[0])))
    assert dev <= 1e-6


def test_breather_oscillates_and_conserves_mass():
    result = evolve(_setup(satsuma_yajima(1.8)))
    center = np.abs(result.field[:, 256])
    assert center.max() > 2.5
    assert center.min() < 1.9
    drift = abs(result.mass_series[-1] - result.mass_series[0])
    assert drift <= 1e-8 * result.mass_series[0]
    assert len(count_structures(result.field[-1])) == 1


def test_conjugation_reverses_the_flow():
    fwd = evolve(_setup(satsuma_yajima(1.8), half_width=15.0, m=256,
                        t_end=1.0, frame_stride=1000))
    grid = fwd.x
    final = np.conj(fwd.field[-1])

    def _interp(x):
        x = np.asarray(x, dtype=float)
        return np.interp(x, grid, final.real) + 1j * np.interp(
            x, grid, final.imag
        )

    back = evolve(_setup(custom(_interp, 0j, 0j), half_width=15.0, m=256,
                         t_end=1.0, frame_stride=1000))
    dev = np.max(np.abs(back.field[-1] - np.conj(fwd.field[0])))
    assert dev <= 1e-6


def test_frame_schedule():
    quick = _setup(satsuma_yajima(1.0), half_width=10.0, m=32, dt=0.01,
                   frame_stride=2)
    r = evolve(EvolutionSetup(quick.initial, 10.0, 32, t_end=0.05, dt=0.01,
                              frame_stride=2))
    assert np.allclose(r.times, [0.0, 0.02, 0.04, 0.05], atol=1e-12)
    r2 = evolve(EvolutionSetup(quick.initial, 10.0, 32, t_end=0.04, dt=0.01,
                               frame_stride=2))
    assert np.allclose(r2.times, [0.0, 0.02, 0.04], atol=1e-12)
    assert r2.field.shape == (3, 32)
    assert r2.mass_series.shape == (3,)


def test_setup_validation():
    spec = satsuma_yajima(1.0)
    with pytest.raises(ValueError):
        evolve(EvolutionSetup(spec, half_width=0.0))
    with pytest.raises(ValueError):
        evolve(EvolutionSetup(spec, m=1))
    with pytest.raises(ValueError):
        evolve(EvolutionSetup(spec, dt=0.0))
    with pytest.raises(ValueError):
        evolve(EvolutionSetup(spec, t_end=-1.0))
    with pytest.raises(ValueError):
        evolve(EvolutionSetup(spec, frame_stride=0))


def test_non_finite_initial_profile_rejected():
    bad = custom(lambda x: np.full(x.shape, np.nan, complex), 0j, 0j)
    with pytest.raises(ValueError, match="finite"):
        evolve(EvolutionSetup(bad, 5.0, 16, t_end=0.1, dt=0.05))


@pytest.mark.filterwarnings("ignore:overflow")
@pytest.mark.filterwarnings("ignore:invalid value")
def test_overflowing_field_reports_time():
    huge = custom(lambda x: np.full(x.shape, 1e200, complex), 0j, 0j)
    with pytest.raises(NumericError, match="t=0.1"):
        evolve(EvolutionSetup(huge, 5.0, 16, t_end=0.3, dt=0.1))


# ---------------------------------------------------------------- counting

def test_count_structures_cases():
    idx = np.arange(64)
    assert count_structures(np.zeros(64)) == []
    single = np.exp(-0.1 * (idx - 20.0) ** 2)
    assert count_structures(single) == [20]
    double = single + np.exp(-0.1 * (idx - 48.0) ** 2)
    assert count_structures(double) == [20, 48]


def test_count_structures_wraps_around_the_box_edge():
    idx = np.arange(64)
    cyclic = np.minimum(idx, 64 - idx)
    assert count_structures(1.0 / np.cosh(0.3 * cyclic)) == [0]


def test_count_structures_suppresses_near_side_lobes():
    idx = np.arange(64)
    amp = np.exp(-0.1 * (idx - 20.0) ** 2)
    amp[24] = 0.6  # secondary local maximum 4 cells away
    assert count_structures(amp) == [20]
    assert count_structures(amp, min_separation=2) == [20, 24]


def test_count_structures_threshold():
    idx = np.arange(64)
    amp = np.exp(-0.1 * (idx - 20.0) ** 2)
    amp = amp + 0.2 * np.exp(-0.5 * (idx - 45.0) ** 2)
    assert count_structures(amp) == [20]
    assert count_structures(amp, threshold_frac=0.1) == [20, 45]


# ---------------------------------------------------------------- frame IO

@pytest.fixture()
def small_run():
    return evolve(EvolutionSetup(satsuma_yajima(1.0), 10.0, 32, t_end=0.05,
                                 dt=0.01, frame_stride=2))


def test_csv_frames(small_run):
    buf = io.StringIO()
    write_frames_csv(small_run, buf)
    lines = buf.getvalue().splitlines()
    assert lines[0].startswith("t,")
    assert len(lines[0].split(",")) == 33
    assert len(lines) == 1 + 4
    cells = lines[1].split(",")
    assert float(cells[0]) == 0.0
    z = complex(cells[5])
    assert np.isclose(z, small_run.field[0, 4], atol=1e-15)


def test_binary_round_trip_via_file(small_run, tmp_path):
    path = tmp_path / "frames.zsev"
    with open(path, "wb") as fh:
        write_frames_binary(small_run, fh)
    assert path.read_bytes()[:4] == ZSEV_MAGIC
    back = read_frames_binary(path)
    assert np.array_equal(back.times, small_run.times)
    assert np.array_equal(back.x, small_run.x)
    assert np.array_equal(back.field, small_run.field)
    assert np.allclose(back.mass_series, small_run.mass_series, atol=1e-15)


def test_binary_round_trip_via_buffer(small_run):
    buf = io.BytesIO()
    write_frames_binary(small_run, buf)
    buf.seek(0)
    back = read_frames_binary(buf)
    assert np.array_equal(back.field, small_run.field)


def test_binary_rejects_wrong_magic(tmp_path):
    path = tmp_path / "junk.bin"
    path.write_bytes(b"JUNKxxxxxxxxxxxxxxxx")
    with pytest.raises(ValueError, match="magic"):
        read_frames_binary(path)


def test_dx_property(small_run):
    assert np.isclose(small_run.dx, 20.0 / 32, atol=1e-15)
