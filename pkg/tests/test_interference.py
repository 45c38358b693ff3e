import cmath
import math

import numpy as np
import pytest

from mesoweyl import fockbench, interference, specfun, verify
from mesoweyl.exceptions import IncommensurateError
from mesoweyl.harmonics import HarmonicSeries
from mesoweyl.states import (
    ChargeCoupling,
    CoherentState,
    ModeParams,
    NumberState,
    SqueezedState,
    ThermalState,
    match_mean_photons,
    weyl,
)

Q = 0.2143
COUPLING = ChargeCoupling(Q)
MODE = ModeParams(1.0e-4)
PERIOD = 2.0 * math.pi / MODE.omega


def test_static_fringe():
    assert interference.intensity_static(0.7, 0.7) == pytest.approx(2.0)
    assert interference.intensity_static(0.7 + math.pi, 0.7) == pytest.approx(0.0, abs=1e-15)
    xs = np.linspace(-math.pi, math.pi, 101)
    vals = [interference.intensity_static(x, 0.3) for x in xs]
    vis = (max(vals) - min(vals)) / (max(vals) + min(vals))
    assert vis == pytest.approx(1.0, abs=1e-3)  # grid resolution only


def test_intensity_quantum_examples():
    # vacuum at x = 0
    got = interference.intensity_quantum(NumberState(0), COUPLING, MODE, 0.0, 0.0)
    assert got == pytest.approx(1.0 + math.exp(-Q * Q / 2.0), rel=1e-14)
    # thermal drive: no time dependence
    th = ThermalState(1.0)
    vals = [interference.intensity_quantum(th, COUPLING, MODE, 0.4, t) for t in np.linspace(0, PERIOD, 7)]
    assert max(vals) - min(vals) <= 1e-14
    # number drive at x = 0: 1 + e^{-q^2/2} L_n(q^2), time-independent
    for n in (0, 3, 17):
        ref = 1.0 + math.exp(-Q * Q / 2.0) * specfun.laguerre(n, 0, Q * Q)
        for t in (0.0, 0.31 * PERIOD):
            got = interference.intensity_quantum(NumberState(n), COUPLING, MODE, 0.0, t)
            assert got == pytest.approx(ref, rel=1e-13)


@pytest.mark.parametrize(
    "state",
    [NumberState(2), CoherentState(1.1 + 0.2j), SqueezedState(0.4, 1.2, 0.5), ThermalState(0.9)],
)
def test_intensity_two_formula_paths_agree(state):
    for x in (-2.0, 0.0, 1.3):
        for t in (0.0, 0.27 * PERIOD, 0.8 * PERIOD):
            a = interference.intensity_quantum(state, COUPLING, MODE, x, t)
            b = interference.intensity_quantum_from_trace(state, COUPLING, MODE, x, t)
            assert abs(a - b) <= 1e-12
            w = abs(weyl(state, 1j * Q * cmath.exp(1j * MODE.omega * t)))
            assert 1.0 - w - 1e-12 <= a <= 1.0 + w + 1e-12


def test_intensity_screen_periodicity():
    st = CoherentState(0.9)
    for x in (0.0, 1.1, -2.7):
        a = interference.intensity_quantum(st, COUPLING, MODE, x, 0.2 * PERIOD)
        b = interference.intensity_quantum(st, COUPLING, MODE, x + 2.0 * math.pi, 0.2 * PERIOD)
        assert abs(a - b) <= 1e-12


def test_visibility_examples():
    for t in (0.0, 0.13 * PERIOD):
        assert interference.visibility(CoherentState(2.0), COUPLING, MODE, t) == pytest.approx(
            math.exp(-Q * Q / 2.0), rel=1e-14
        )
    assert interference.visibility(NumberState(0), COUPLING, MODE, 0.0) == pytest.approx(
        math.exp(-Q * Q / 2.0), rel=1e-14
    )
    got = interference.visibility(ThermalState(1.0), ChargeCoupling(0.25), MODE, 0.5 * PERIOD)
    ref = math.exp(-0.25 ** 2 / 2.0 / math.tanh(0.5))
    assert got == pytest.approx(ref, rel=1e-14)
    assert got == pytest.approx(0.9346, abs=5e-5)


# ---------------------------------------------------------------------------
# classical drive

def test_classical_intensity_basics():
    assert interference.classical_intensity(3.0, MODE.omega, 0.0) == pytest.approx(2.0)
    for t in np.linspace(0.0, PERIOD, 9):
        assert interference.classical_intensity(0.0, MODE.omega, t) == pytest.approx(2.0)


def test_classical_intensity_even_harmonics_only():
    e_phi1 = 3.7
    n = 256
    ts = np.arange(n) / n * PERIOD
    vals = np.array([interference.classical_intensity(e_phi1, MODE.omega, t) for t in ts])
    spec = np.fft.fft(vals) / n
    odd = np.abs(spec[1::2]).max()
    assert odd <= 1e-12 * np.abs(spec).max()


def test_classical_autocorrelation_against_numeric_time_average():
    e_phi1 = math.sqrt(34.0)
    taus = np.array([0.0, 0.11, 0.37, 0.5]) * PERIOD
    series = interference.autocorrelation_classical(e_phi1, MODE.omega, taus)
    n = 4096
    ts = np.arange(n) / n * PERIOD  # whole-period average of a periodic signal
    i_t = np.array([interference.classical_intensity(e_phi1, MODE.omega, t) for t in ts])
    for tau, got in zip(taus, series.values):
        i_tau = np.array([interference.classical_intensity(e_phi1, MODE.omega, t + tau) for t in ts])
        ref = np.mean(i_t * i_tau)
        assert abs(got - ref) <= 1e-8
    assert np.max(np.abs(series.values.imag)) == 0.0


def test_classical_autocorrelation_flat_without_drive():
    taus = np.linspace(0.0, PERIOD, 17)
    series = interference.autocorrelation_classical(0.0, MODE.omega, taus)
    assert np.allclose(series.values, 4.0, atol=1e-14)


def test_classical_gamma_at_zero_lag():
    e_phi1 = 2.0
    j0 = specfun.bessel_j(0, e_phi1)
    ref = (1.0 + j0) ** 2 + 2.0 * sum(
        specfun.bessel_j(2 * k, e_phi1) ** 2 for k in range(1, 40)
    )
    series = interference.autocorrelation_classical(e_phi1, MODE.omega, [0.0])
    assert series.gamma0 == pytest.approx(ref, rel=1e-12)


# ---------------------------------------------------------------------------
# quantum drive

def test_quantum_gamma_zero_lag_vacuum_expansion():
    got = interference.autocorrelation_quantum(NumberState(0), COUPLING, MODE, [0.0]).gamma0
    q = Q
    ref = 1.0 + 2.0 * math.exp(-q * q / 2.0) + 0.5 + 0.5 * math.exp(-2.0 * q * q)
    assert got == pytest.approx(ref, rel=1e-14)


@pytest.mark.parametrize(
    "state",
    [
        NumberState(0),
        NumberState(2),
        CoherentState(1.0 + 0j),
        ThermalState(1.0),
        SqueezedState(0.4, 1.1, 0.3),
    ],
)
def test_quantum_gamma_against_window_oracle(state):
    dim = max(64, fockbench.default_dim(state))
    for tau in (0.0, 0.23 * PERIOD, 0.61 * PERIOD):
        exact = interference.autocorrelation_quantum(state, COUPLING, MODE, [tau]).values[0]
        window = verify.gamma_window_oracle(state, COUPLING, MODE, tau, dim)
        assert abs(exact - window) <= 1e-6


def test_quantum_gamma_properties_and_number_im():
    taus = np.arange(64) / 64.0 * 2.0 * PERIOD
    st = NumberState(17)
    series = interference.autocorrelation_quantum(st, COUPLING, MODE, taus)
    neg = interference.autocorrelation_quantum(st, COUPLING, MODE, -taus)
    assert np.max(np.abs(neg.values - series.values.conj())) <= 1e-12
    assert series.gamma0 >= 0.0
    assert np.max(np.abs(series.values)) <= series.gamma0 * (1.0 + 1e-12)
    gamma = interference.normalized_gamma(series)
    assert np.max(np.abs(gamma.values)) <= 1.0 + 1e-12
    assert abs(gamma.values[0] - 1.0) <= 1e-14
    assert np.max(np.abs(gamma.values.imag)) >= 1e-4


def test_normalized_gamma_rejects_degenerate():
    series = interference.CorrelationSeries(np.array([0.0]), np.array([0j]), 0.0)
    with pytest.raises(ValueError):
        interference.normalized_gamma(series)


# ---------------------------------------------------------------------------
# spectral density

def test_classical_spectral_density_exact_and_quadrature():
    e_phi1 = math.sqrt(34.0)
    kmax = 24
    series = interference.classical_gamma_series(e_phi1, MODE.omega)
    spec = interference.spectral_density(series, 2.0 * MODE.omega, kmax)
    j0 = specfun.bessel_j(0, e_phi1)
    assert spec.values[kmax] == pytest.approx((1.0 + j0) ** 2, rel=1e-12)
    for k in range(1, kmax + 1):
        ref = specfun.bessel_j(2 * k, e_phi1) ** 2
        assert spec.values[kmax + k] == pytest.approx(ref, abs=1e-14)
        assert spec.values[kmax - k] == spec.values[kmax + k]

    n = 4096
    taus = np.arange(n) / n * (2.0 * math.pi / (2.0 * MODE.omega))
    sampled = interference.autocorrelation_classical(e_phi1, MODE.omega, taus)
    quad = interference.spectral_density(sampled, 2.0 * MODE.omega, kmax)
    assert np.max(np.abs(quad.values - spec.values)) <= 1e-8


def test_quantum_spectral_asymmetry_and_reconstruction():
    st = NumberState(17)
    kmax = 40
    n = 4096
    taus = np.arange(n) / n * PERIOD
    series = interference.autocorrelation_quantum(st, COUPLING, MODE, taus)
    spec = interference.spectral_density(series, MODE.omega, kmax)
    asym = max(
        abs(spec.values[kmax + k] - spec.values[kmax - k]) for k in range(1, kmax + 1)
    )
    assert asym >= 1e-4  # a complex Gamma shows up as spectral asymmetry
    recon = interference.reconstruct_gamma(spec, taus)
    assert np.max(np.abs(recon - series.values)) <= 1e-8 * series.gamma0


def test_spectral_density_incommensurate_rejected():
    series = HarmonicSeries(1.0, {1: 1.0 + 0j})
    with pytest.raises(IncommensurateError):
        interference.spectral_density(series, 0.7, 4)


def test_spectral_quadrature_validation():
    taus = np.array([0.0, 0.3, 0.9])
    series = interference.CorrelationSeries(taus, np.ones(3, dtype=complex), 1.0)
    with pytest.raises(ValueError):
        interference.spectral_density(series, 1.0, 4)


def test_squeezed_vacuum_intensity_even_harmonics():
    for r in (0.5, 4.2):
        st = SqueezedState(0j, r)
        n = 512
        ts = np.arange(n) / n * PERIOD
        vals = np.array(
            [interference.intensity_quantum(st, COUPLING, MODE, 0.0, t) for t in ts]
        )
        spec = np.fft.fft(vals) / n
        odd = np.abs(spec[1::2]).max()
        assert odd <= 1e-10 * np.abs(spec).max()


def test_coherent_intensity_has_odd_harmonics_too():
    # at x = pi/2 the fringe picks up sin(2q|A| cos wt), which carries the
    # odd multiples of omega a squeezed vacuum can never produce
    st = match_mean_photons("coherent", 17.0)
    n = 512
    ts = np.arange(n) / n * PERIOD
    vals = np.array(
        [interference.intensity_quantum(st, COUPLING, MODE, math.pi / 2.0, t) for t in ts]
    )
    spec = np.fft.fft(vals) / n
    assert np.abs(spec[1::2]).max() >= 1e-3 * np.abs(spec).max()

    sq = SqueezedState(0j, 1.5)
    vals = np.array(
        [interference.intensity_quantum(sq, COUPLING, MODE, math.pi / 2.0, t) for t in ts]
    )
    spec = np.fft.fft(vals) / n
    assert np.abs(spec[1::2]).max() <= 1e-10 * np.abs(spec).max()
