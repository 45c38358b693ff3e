"""Mesoscopic SQUID rings under classical and nonclassical microwaves.

The junction phase is driven by a charge-scaled flux, so every drive
parameter enters pre-multiplied by the Cooper-pair charge: ``phase0`` is the
static phase offset, ``omega_a`` the linear-ramp (Josephson) frequency and
``u_phase`` the classical sinusoid's phase amplitude.  Quantum drives couple
through qprime = 2q and reduce, exactly as in the interference case, to Weyl
function evaluations at sigma = i qprime e^{i w1 t}.

dc currents are extracted by exact harmonic averaging (the zero-frequency
coefficient); finite-window numeric averages exist only as test oracles.

Two distant rings couple to the swapped two-mode families
(|n1 n2>, |n2 n1>) and (|a1 a2>, |a2 a1>); number-pair moments have closed
forms, coherent-pair products and second moments are computed with the
Fock-space oracle, which is how they were obtained originally.
"""

import cmath
import math
from dataclasses import dataclass
from typing import NamedTuple

import numpy as np

from . import fockbench, specfun
from .exceptions import SingularPointError
from .harmonics import HarmonicSeries
from .states import (
    ChargeCoupling,
    CoherentState,
    NumberState,
    TwoModeProductSuperposition,
    TwoModeSeparableMixture,
    weyl,
    weyl_drive_coeffs,
)

__all__ = [
    "SquidDrive",
    "StepScan",
    "TwoSquidMoments",
    "classical_current",
    "classical_current_expansion",
    "classical_shapiro",
    "quantum_current",
    "quantum_shapiro",
    "step_scan",
    "two_squid_currents_number",
    "two_squid_currents_coherent",
    "cross_term_frequencies",
    "ratio_c",
    "ratio_c2",
    "ratio_c_sep_number",
    "ratio_c_ent_number",
]


@dataclass(frozen=True)
class SquidDrive:
    """Charge-scaled drive of one ring: static offset, ramp frequency,
    sinusoid amplitude, microwave frequency, critical current."""

    phase0: float = 0.0     # 2e * phi_0
    omega_a: float = 0.0    # 2e * V, the Josephson frequency
    u_phase: float = 0.0    # 2e * u
    omega1: float = 1.0     # microwave drive frequency
    i_crit: float = 1.0

    def __post_init__(self):
        if self.i_crit <= 0:
            raise ValueError("critical current must be positive")
        if self.omega1 <= 0:
            raise ValueError("microwave frequency must be positive")


@dataclass(frozen=True)
class StepScan:
    """dc current versus Shapiro step index; ratio = omega_a / omega1 = n."""

    steps: tuple  # of (n, ratio, i_dc)


class TwoSquidMoments(NamedTuple):
    ia: float
    ib: float
    ia2: float
    ib2: float
    ia_ib: float
    ia2_ib2: float


# ---------------------------------------------------------------------------
# single ring, classical drive

def classical_current(drive: SquidDrive, t: float) -> float:
    """I = I_c sin(phase0 + omega_a t + u_phase sin(omega1 t))."""
    return drive.i_crit * math.sin(
        drive.phase0 + drive.omega_a * t + drive.u_phase * math.sin(drive.omega1 * t)
    )


def _drive_bessel_coeffs(u_phase: float) -> dict:
    """Harmonics of exp(i u sin theta) = sum_n J_n(u) e^{i n theta}."""
    if u_phase == 0.0:
        return {0: 1.0 + 0j}
    nmax = int(abs(u_phase) + 16.0 + 10.0 * abs(u_phase) ** 0.4) + 2
    js = specfun.bessel_j_all(nmax, abs(u_phase))
    sign = 1.0 if u_phase > 0 else -1.0
    out = {}
    for n in range(-nmax, nmax + 1):
        v = js[abs(n)]
        if n < 0 and n & 1:
            v = -v
        if sign < 0 and n & 1:
            v = -v
        if abs(v) > 1e-18:
            out[n] = complex(v)
    return out


def classical_current_expansion(drive: SquidDrive, t: float) -> float:
    """Bessel-expanded current I_c sum_n J_n(u) sin[(omega_a + n omega1)t + phase0]."""
    total = 0.0
    for n, jn in _drive_bessel_coeffs(drive.u_phase).items():
        total += jn.real * math.sin((drive.omega_a + n * drive.omega1) * t + drive.phase0)
    return drive.i_crit * total


def classical_shapiro(drive: SquidDrive, n_step: int) -> float:
    """dc current on step n (resonance omega_a = n omega1 imposed):
    I_c J_{-n}(u_phase) sin(phase0)."""
    return drive.i_crit * specfun.bessel_j(-n_step, drive.u_phase) * math.sin(drive.phase0)


# ---------------------------------------------------------------------------
# single ring, quantum drive

def quantum_current(state, coupling: ChargeCoupling, omega_a: float, omega1: float,
                    t: float, i_crit: float = 1.0, phase0: float = 0.0) -> float:
    """<I> = I_c Im[e^{i(omega_a t + phase0)} W(sigma)], sigma = i q' e^{i w1 t}."""
    sigma = 1j * coupling.qprime * cmath.exp(1j * omega1 * t)
    val = cmath.exp(1j * (omega_a * t + phase0)) * weyl(state, sigma)
    return i_crit * val.imag


def _quantum_drive_series(state, drive: SquidDrive, n_step: int, coupling: ChargeCoupling) -> HarmonicSeries:
    """e^{i omega_a t} e^{i u sin(w1 t)} W(sigma(t)) as one harmonic series in w1."""
    w1 = drive.omega1
    ramp = HarmonicSeries(w1, {n_step: 1.0 + 0j})
    classical = HarmonicSeries(w1, _drive_bessel_coeffs(drive.u_phase))
    wseries = HarmonicSeries(w1, weyl_drive_coeffs(state, coupling.qprime))
    return ramp * classical * wseries


def quantum_shapiro(state, drive: SquidDrive, n_step: int, coupling: ChargeCoupling) -> float:
    """dc current on step n for a classical sinusoid plus a quantum mode.

    Exact zero-frequency extraction of I_c Im[e^{i phase0} x (ramp x drive x
    Weyl) harmonics].  A phase-matched coherent state (amplitude u/sqrt2 at
    arg A = pi/2) reproduces every classical step scaled by e^{-q'^2/2};
    squeezed vacuum leaves even steps only.
    """
    series = _quantum_drive_series(state, drive, n_step, coupling)
    return drive.i_crit * (cmath.exp(1j * drive.phase0) * series.time_average()).imag


def step_scan(drive: SquidDrive, steps, coupling: ChargeCoupling = None, state=None) -> StepScan:
    """Shapiro scan over step indices; quantum when a state is supplied."""
    rows = []
    for n in steps:
        if state is None:
            idc = classical_shapiro(drive, n)
        else:
            idc = quantum_shapiro(state, drive, n, coupling)
        rows.append((int(n), float(n), idc))
    return StepScan(steps=tuple(rows))


# ---------------------------------------------------------------------------
# two distant rings, number pair (closed forms)

def two_squid_currents_number(n1: int, n2: int, entangled: bool, coupling: ChargeCoupling,
                              omega_a: float, omega_b: float, omega1: float, omega2: float,
                              t: float, i1: float = 1.0, i2: float = 1.0) -> TwoSquidMoments:
    """Current moments of two rings driven by the swapped number pair.

    Separable moments depend only on the occupations; entanglement adds a
    cross term oscillating at Omega = (n1 - n2)(omega1 - omega2).
    """
    qp2 = coupling.qprime ** 2
    l1 = specfun.laguerre(n1, 0, qp2)
    l2 = specfun.laguerre(n2, 0, qp2)
    l1_4 = specfun.laguerre(n1, 0, 4.0 * qp2)
    l2_4 = specfun.laguerre(n2, 0, 4.0 * qp2)
    c0 = 0.5 * math.exp(-qp2 / 2.0) * (l1 + l2)
    c1 = 0.5 * math.exp(-2.0 * qp2) * (l1_4 + l2_4)
    c2 = math.exp(-qp2) * l1 * l2
    d2 = math.exp(-4.0 * qp2) * l1_4 * l2_4

    ia = i1 * c0 * math.sin(omega_a * t)
    ib = i2 * c0 * math.sin(omega_b * t)
    ia2 = 0.5 * i1 * i1 * (1.0 - c1 * math.cos(2.0 * omega_a * t))
    ib2 = 0.5 * i2 * i2 * (1.0 - c1 * math.cos(2.0 * omega_b * t))
    ia_ib = i1 * i2 * c2 * math.sin(omega_a * t) * math.sin(omega_b * t)
    ia2_ib2 = 0.25 * i1 * i1 * i2 * i2 * (
        1.0
        - c1 * math.cos(2.0 * omega_a * t)
        - c1 * math.cos(2.0 * omega_b * t)
        + d2 * math.cos(2.0 * omega_a * t) * math.cos(2.0 * omega_b * t)
    )

    if entangled and n1 != n2:
        d = n1 - n2
        omega_big = d * (omega1 - omega2)
        c3 = 0.5 * math.exp(-qp2) * specfun.laguerre(n1, n2 - n1, qp2) * specfun.laguerre(n2, n1 - n2, qp2)
        parity = -1.0 if d & 1 else 1.0
        i_cross = -i1 * i2 * c3 * (
            math.cos((omega_a + omega_b) * t) - parity * math.cos((omega_a - omega_b) * t)
        ) * math.cos(omega_big * t)
        ia_ib += i_cross
        g3 = 0.5 * math.exp(-4.0 * qp2) * specfun.laguerre(n1, n2 - n1, 4.0 * qp2) * specfun.laguerre(n2, n1 - n2, 4.0 * qp2)
        ia2_ib2 += 0.25 * i1 * i1 * i2 * i2 * g3 * (
            math.cos(2.0 * (omega_a + omega_b) * t) + parity * math.cos(2.0 * (omega_a - omega_b) * t)
        ) * math.cos(omega_big * t)

    return TwoSquidMoments(ia, ib, ia2, ib2, ia_ib, ia2_ib2)


def cross_term_frequencies(n1: int, n2: int, omega_a: float, omega_b: float,
                           omega1: float, omega2: float):
    """|omega_a +- omega_b +- Omega| carried by the entangled-minus-separable
    product difference, Omega = (n1 - n2)(omega1 - omega2)."""
    omega_big = (n1 - n2) * (omega1 - omega2)
    freqs = {
        abs(omega_a + omega_b + omega_big),
        abs(omega_a + omega_b - omega_big),
        abs(omega_a - omega_b + omega_big),
        abs(omega_a - omega_b - omega_big),
    }
    return sorted(freqs)


# ---------------------------------------------------------------------------
# two distant rings, coherent pair

def _coherent_sep_current(a1, a2, qp: float, omega_ramp: float, omega_mw: float,
                          t: float, i_c: float) -> float:
    """Separable-pair ring current: mean of the two single-amplitude drives."""
    th1, th2 = cmath.phase(complex(a1)), cmath.phase(complex(a2))
    r1, r2 = abs(complex(a1)), abs(complex(a2))
    pref = 0.5 * i_c * math.exp(-qp * qp / 2.0)
    return pref * (
        math.sin(omega_ramp * t + 2.0 * qp * r1 * math.cos(omega_mw * t - th1))
        + math.sin(omega_ramp * t + 2.0 * qp * r2 * math.cos(omega_mw * t - th2))
    )


def _coherent_ent_current(a1, a2, qp: float, omega_ramp: float, omega_mw: float,
                          t: float, i_c: float) -> float:
    """Entangled-pair ring current: 2N^2 I_sep + N^2 E F e^{-q'^2/2} I_c."""
    a1, a2 = complex(a1), complex(a2)
    th1, th2 = cmath.phase(a1), cmath.phase(a2)
    r1, r2 = abs(a1), abs(a2)
    norm2 = 1.0 / (2.0 + 2.0 * math.exp(-abs(a1 - a2) ** 2))
    e_fac = math.exp(-r1 * r1 - r2 * r2 + 2.0 * r1 * r2 * math.cos(th1 - th2))
    s1 = math.sin(omega_mw * t - th1)
    s2 = math.sin(omega_mw * t - th2)
    c1 = math.cos(omega_mw * t - th1)
    c2 = math.cos(omega_mw * t - th2)
    g = qp * (r1 * s1 - r2 * s2)
    f_fac = (math.exp(g) + math.exp(-g)) * math.sin(omega_ramp * t + qp * (r1 * c1 + r2 * c2))
    sep = _coherent_sep_current(a1, a2, qp, omega_ramp, omega_mw, t, i_c)
    return 2.0 * norm2 * sep + norm2 * e_fac * f_fac * math.exp(-qp * qp / 2.0) * i_c


def _sin_phase_matrix(dim: int, qp: float, omega_mw: float, omega_ramp: float, t: float) -> np.ndarray:
    """sin(omega_ramp t + q'[e^{i w t} a^dag + e^{-i w t} a]) on the truncated basis."""
    d = fockbench.displacement_matrix(1j * qp * cmath.exp(1j * omega_mw * t), dim)
    ph = cmath.exp(1j * omega_ramp * t)
    return (ph * d - np.conj(ph) * d.conj().T) / 2j


def _coherent_pair_state(a1, a2, entangled: bool):
    if entangled:
        norm = (2.0 + 2.0 * math.exp(-abs(complex(a1) - complex(a2)) ** 2)) ** -0.5
        return TwoModeProductSuperposition(
            ((norm, CoherentState(a1), CoherentState(a2)),
             (norm, CoherentState(a2), CoherentState(a1)))
        )
    return TwoModeSeparableMixture(
        ((0.5, CoherentState(a1), CoherentState(a2)),
         (0.5, CoherentState(a2), CoherentState(a1)))
    )


def two_squid_currents_coherent(a1, a2, entangled: bool, coupling: ChargeCoupling,
                                omega_a: float, omega_b: float, omega1: float, omega2: float,
                                t: float, i1: float = 1.0, i2: float = 1.0,
                                policy: fockbench.TruncationPolicy = None,
                                with_info: bool = False):
    """Current moments for the swapped coherent pair.

    First moments use the closed forms; products and second moments are
    evaluated with the two-mode Fock oracle under its truncation policy.
    With ``with_info`` the converged truncation diagnostics are returned too.
    """
    qp = coupling.qprime
    state2 = _coherent_pair_state(a1, a2, entangled)
    policy = policy or fockbench.TruncationPolicy(tol=1e-11)

    if entangled:
        ia = _coherent_ent_current(a1, a2, qp, omega_a, omega1, t, i1)
        ib = _coherent_ent_current(a1, a2, qp, omega_b, omega2, t, i2)
    else:
        ia = _coherent_sep_current(a1, a2, qp, omega_a, omega1, t, i1)
        ib = _coherent_sep_current(a1, a2, qp, omega_b, omega2, t, i2)

    def sin_a(dim):
        return _sin_phase_matrix(dim, qp, omega1, omega_a, t)

    def sin_b(dim):
        return _sin_phase_matrix(dim, qp, omega2, omega_b, t)

    def sin2_a(dim):
        s = sin_a(dim)
        return s @ s

    def sin2_b(dim):
        s = sin_b(dim)
        return s @ s

    eye = lambda dim: np.eye(dim, dtype=complex)
    ia2, _ = fockbench.converged_two_mode_expectation(state2, sin2_a, eye, policy)
    ib2, _ = fockbench.converged_two_mode_expectation(state2, eye, sin2_b, policy)
    ia_ib, _ = fockbench.converged_two_mode_expectation(state2, sin_a, sin_b, policy)
    ia2_ib2, info = fockbench.converged_two_mode_expectation(state2, sin2_a, sin2_b, policy)

    moments = TwoSquidMoments(
        ia, ib,
        i1 * i1 * ia2.real, i2 * i2 * ib2.real,
        i1 * i2 * ia_ib.real, i1 * i1 * i2 * i2 * ia2_ib2.real,
    )
    if with_info:
        return moments, info
    return moments


# ---------------------------------------------------------------------------
# correlation ratios

_RATIO_EPS = 1e-12


def ratio_c(moments: TwoSquidMoments) -> float:
    """R^(c) = <I_A I_B> / (<I_A><I_B>); unity for factorizable drives."""
    den = moments.ia * moments.ib
    if abs(den) < _RATIO_EPS:
        raise SingularPointError("a ring current vanishes; R^(c) is undefined here")
    return moments.ia_ib / den


def ratio_c2(moments: TwoSquidMoments) -> float:
    """R^(c2) = <I_A^2 I_B^2> / (<I_A^2><I_B^2>)."""
    den = moments.ia2 * moments.ib2
    if abs(den) < _RATIO_EPS:
        raise SingularPointError("a squared ring current vanishes; R^(c2) is undefined here")
    return moments.ia2_ib2 / den


def ratio_c_sep_number(n1: int, n2: int, coupling: ChargeCoupling) -> float:
    """Time-independent separable ratio 4 L_{n1} L_{n2} / (L_{n1} + L_{n2})^2."""
    qp2 = coupling.qprime ** 2
    l1 = specfun.laguerre(n1, 0, qp2)
    l2 = specfun.laguerre(n2, 0, qp2)
    den = (l1 + l2) ** 2
    if abs(den) < _RATIO_EPS:
        raise SingularPointError("vanishing Laguerre sum; separable ratio undefined")
    return 4.0 * l1 * l2 / den


def ratio_c_ent_number(n1: int, n2: int, coupling: ChargeCoupling, t: float,
                       omega1: float, omega2: float,
                       omega_a: float = None, omega_b: float = None,
                       pole_margin: float = 1e-6) -> float:
    """Entangled ratio; even occupation differences oscillate around the
    separable value at Omega, odd differences carry tan-poles at the ramp
    zeros (points inside ``pole_margin`` of a zero are refused)."""
    qp2 = coupling.qprime ** 2
    l1 = specfun.laguerre(n1, 0, qp2)
    l2 = specfun.laguerre(n2, 0, qp2)
    lc1 = specfun.laguerre(n1, n2 - n1, qp2)
    lc2 = specfun.laguerre(n2, n1 - n2, qp2)
    base = ratio_c_sep_number(n1, n2, coupling)
    d = n1 - n2
    omega_big = d * (omega1 - omega2)
    if d % 2 == 0:
        return base + 4.0 * lc1 * lc2 / (l1 + l2) ** 2 * math.cos(omega_big * t)
    if omega_a is None or omega_b is None:
        raise ValueError("odd occupation difference needs omega_a and omega_b")
    sa, sb = math.sin(omega_a * t), math.sin(omega_b * t)
    if abs(sa) < pole_margin or abs(sb) < pole_margin:
        raise SingularPointError("tan-pole of the odd-difference entangled ratio")
    tt = math.tan(omega_a * t) * math.tan(omega_b * t)
    return base - 4.0 * lc1 * lc2 / (l1 + l2) ** 2 * math.cos(omega_big * t) / tt
