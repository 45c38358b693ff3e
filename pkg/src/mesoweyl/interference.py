"""Single-device electron interference under classical and quantum driving.

The screen coordinate x is the phase difference between the two paths, with
equal splitting assumed, so the static fringe is 1 + cos(x - e*flux).  With a
quantized drive the fringe becomes 1 + |W(lam)| cos(x - arg W(lam)) with
lam = i q e^{iwt}; intensity autocorrelations reduce, via the displacement
composition law D(z1)D(z2) = e^{i Im(z1 z2*)} D(z1+z2), to Weyl-function
evaluations whose infinite-time averages are taken exactly (harmonic
bookkeeping), never by long numeric windows.
"""

import cmath
import math
from dataclasses import dataclass

import numpy as np

from . import specfun
from .exceptions import IncommensurateError
from .harmonics import HarmonicSeries
from .states import ChargeCoupling, ModeParams, weyl, weyl_time_average

__all__ = [
    "CorrelationSeries",
    "SpectrumCoeffs",
    "intensity_static",
    "intensity_quantum",
    "intensity_quantum_from_trace",
    "visibility",
    "classical_intensity",
    "classical_gamma_series",
    "autocorrelation_classical",
    "autocorrelation_quantum",
    "normalized_gamma",
    "spectral_density",
    "reconstruct_gamma",
]


@dataclass(frozen=True)
class CorrelationSeries:
    """Sampled intensity autocorrelation Gamma(tau)."""

    taus: np.ndarray
    values: np.ndarray  # complex Gamma(tau)
    gamma0: float       # Gamma(0)


@dataclass(frozen=True)
class SpectrumCoeffs:
    """Real spectral-density coefficients S_K on base frequency Omega."""

    omega: float
    k: np.ndarray
    values: np.ndarray


def intensity_static(x: float, flux_phase: float) -> float:
    """1 + cos(x - e*Phi) for a magnetostatic flux; visibility one."""
    return 1.0 + math.cos(x - flux_phase)


def _lam(coupling: ChargeCoupling, mode: ModeParams, t: float) -> complex:
    return 1j * coupling.q * cmath.exp(1j * mode.omega * t)


def intensity_quantum(state, coupling: ChargeCoupling, mode: ModeParams, x: float, t: float) -> float:
    """1 + |W(lam)| cos(x - arg W(lam)), lam = i q e^{iwt}."""
    w = weyl(state, _lam(coupling, mode, t))
    return 1.0 + abs(w) * math.cos(x - cmath.phase(w))


def intensity_quantum_from_trace(state, coupling: ChargeCoupling, mode: ModeParams, x: float, t: float) -> float:
    """Same fringe from the displacement half-sum Tr[rho cos(x - e flux)]."""
    lam = _lam(coupling, mode, t)
    val = 1.0 + 0.5 * (
        cmath.exp(1j * x) * weyl(state, -lam) + cmath.exp(-1j * x) * weyl(state, lam)
    )
    return val.real


def visibility(state, coupling: ChargeCoupling, mode: ModeParams, t: float) -> float:
    """(I_max - I_min)/(I_max + I_min) over x, equal to |W(lam)|."""
    return abs(weyl(state, _lam(coupling, mode, t)))


# ---------------------------------------------------------------------------
# classical drive

def classical_intensity(e_phi1: float, omega: float, t: float) -> float:
    """1 + cos[e phi_1 sin(wt)] at the central fringe x = 0."""
    return 1.0 + math.cos(e_phi1 * math.sin(omega * t))


def _classical_kmax(e_phi1: float) -> int:
    k = 1
    while specfun.bessel_j(2 * k, e_phi1) ** 2 >= 1e-16:
        k += 1
        if k > 400:
            break
    return k


def classical_gamma_series(e_phi1: float, omega: float) -> HarmonicSeries:
    """Exact harmonic form of the classical intensity autocorrelation:
    [1+J_0]^2 at zero frequency plus J_{2K}^2 at +-2K omega."""
    coeffs = {0: complex((1.0 + specfun.bessel_j(0, e_phi1)) ** 2)}
    for k in range(1, _classical_kmax(e_phi1) + 1):
        c = specfun.bessel_j(2 * k, e_phi1) ** 2
        if c == 0.0:
            continue
        coeffs[k] = complex(c)
        coeffs[-k] = complex(c)
    return HarmonicSeries(2.0 * omega, coeffs)


def autocorrelation_classical(e_phi1: float, omega: float, taus) -> CorrelationSeries:
    """Gamma_cl(tau) sampled on the given lags."""
    series = classical_gamma_series(e_phi1, omega)
    taus = np.asarray(taus, dtype=float)
    vals = series.evaluate(taus)
    g0 = complex(series.evaluate(0.0))
    return CorrelationSeries(taus=taus, values=np.asarray(vals, dtype=complex), gamma0=g0.real)


# ---------------------------------------------------------------------------
# quantum drive

def _gamma_quantum_point(state, q: float, omega: float, tau: float, singles: complex) -> complex:
    e = cmath.exp(1j * omega * tau)
    quad = 0j
    for sa in (1.0, -1.0):
        for sb in (1.0, -1.0):
            phase = cmath.exp(-1j * sa * sb * q * q * math.sin(omega * tau))
            quad += phase * weyl_time_average(state, q * (sa + sb * e))
    return 1.0 + singles + 0.25 * quad


def autocorrelation_quantum(state, coupling: ChargeCoupling, mode: ModeParams, taus) -> CorrelationSeries:
    """Operator autocorrelation of I(t) = 1 + cos[e flux(t)] at x = 0.

    cos is expanded into displacements D(+-lam); products collapse through the
    composition law, and the t-average keeps only zero-frequency harmonics.
    """
    q, omega = coupling.q, mode.omega
    singles = (weyl_time_average(state, q) + weyl_time_average(state, -q)).real
    taus = np.asarray(taus, dtype=float)
    vals = np.array(
        [_gamma_quantum_point(state, q, omega, tau, singles) for tau in taus],
        dtype=complex,
    )
    g0 = _gamma_quantum_point(state, q, omega, 0.0, singles)
    return CorrelationSeries(taus=taus, values=vals, gamma0=g0.real)


def normalized_gamma(series: CorrelationSeries) -> CorrelationSeries:
    """gamma(tau) = Gamma(tau)/Gamma(0)."""
    if series.gamma0 <= 0.0:
        raise ValueError("Gamma(0) must be positive to normalize")
    return CorrelationSeries(
        taus=series.taus, values=series.values / series.gamma0, gamma0=1.0
    )


# ---------------------------------------------------------------------------
# spectral density

def spectral_density(source, omega_base: float, kmax: int) -> SpectrumCoeffs:
    """Coefficients S_K of Gamma(tau) = sum_K S_K e^{iK Omega tau}.

    Exact path: ``source`` is a HarmonicSeries whose frequencies must be
    integer multiples of Omega.  Quadrature path: ``source`` is a
    CorrelationSeries sampled uniformly over exactly one period 2 pi / Omega
    (periodic trapezoid; spectrally accurate).
    """
    ks = np.arange(-kmax, kmax + 1)
    if isinstance(source, HarmonicSeries):
        vals = np.zeros(len(ks), dtype=complex)
        for idx, amp in source.coeffs.items():
            freq = idx * source.base
            kk = freq / omega_base
            k = int(round(kk))
            if abs(freq - k * omega_base) > 1e-9 * max(abs(freq), omega_base):
                raise IncommensurateError(
                    f"series frequency {freq!r} incommensurate with Omega = {omega_base!r}"
                )
            if abs(k) <= kmax:
                vals[k + kmax] += amp
        return _as_spectrum(omega_base, ks, vals, scale=max(abs(vals).max(), 1.0))
    if isinstance(source, CorrelationSeries):
        taus = source.taus
        m = len(taus)
        if m < 2:
            raise ValueError("need at least two samples for the quadrature path")
        dt = taus[1] - taus[0]
        if not np.allclose(np.diff(taus), dt, rtol=1e-9, atol=0.0):
            raise ValueError("quadrature path needs uniformly spaced lags")
        period = 2.0 * math.pi / omega_base
        if abs(m * dt - period) > 1e-9 * period:
            raise ValueError("lags must cover exactly one period 2 pi / Omega")
        vals = np.array(
            [np.sum(source.values * np.exp(-1j * k * omega_base * taus)) / m for k in ks]
        )
        return _as_spectrum(omega_base, ks, vals, scale=abs(source.gamma0))
    raise TypeError("source must be a HarmonicSeries or a CorrelationSeries")


def _as_spectrum(omega_base, ks, vals, scale) -> SpectrumCoeffs:
    resid = float(np.max(np.abs(vals.imag)))
    if resid > 1e-10 * max(scale, 1e-300):
        raise ValueError(f"spectral coefficients not real (residue {resid:g})")
    return SpectrumCoeffs(omega=omega_base, k=ks, values=vals.real.copy())


def reconstruct_gamma(spec: SpectrumCoeffs, taus) -> np.ndarray:
    """Gamma(tau) rebuilt from its spectral coefficients."""
    taus = np.asarray(taus, dtype=float)
    out = np.zeros(taus.shape, dtype=complex)
    for k, s in zip(spec.k, spec.values):
        out += s * np.exp(1j * k * spec.omega * taus)
    return out
